#include "fog2c/config.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "fog2c/catalog.hpp"
#include "fog2c/errors.hpp"
#include "fog2c/rng.hpp"
#include "fog2c/units.hpp"

namespace fog2c {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using units::Quantity;

using Issues = std::vector<std::string>;

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class Reader {
public:
  Reader(const json* j, std::string path, Issues& issues)
      : j_(j), path_(std::move(path)), issues_(&issues) {
    if (j_ && !j_->is_object()) {
      fail("", "expected an object");
      j_ = nullptr;
    }
  }

  bool ok() const noexcept { return j_ != nullptr; }
  const std::string& path() const noexcept { return path_; }

  bool has(const std::string& key) const { return j_ && j_->contains(key); }

  const json* raw(const std::string& key, bool required) {
    if (!j_) return nullptr;
    used_.insert(key);
    auto it = j_->find(key);
    if (it == j_->end()) {
      if (required) fail(key, "missing required key");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> quantity(const std::string& key, Quantity q, bool required) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    return quantity_of(*v, key, q);
  }

  std::optional<double> quantity_of(const json& v, const std::string& key, Quantity q) {
    if (!v.is_string()) {
      fail(key, "expected a unit-tagged string such as \"1 " + std::string(units::si_unit(q)) + "\"");
      return std::nullopt;
    }
    try {
      return units::parse(v.get<std::string>(), q);
    } catch (const ConfigError& e) {
      fail(key, e.what());
      return std::nullopt;
    }
  }

  std::optional<double> number(const std::string& key, bool required) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      fail(key, "expected a plain number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::uint64_t> integer(const std::string& key, bool required) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
      fail(key, "expected a non-negative integer");
      return std::nullopt;
    }
    return v->get<std::uint64_t>();
  }

  std::optional<std::string> string(const std::string& key, bool required) {
    const json* v = raw(key, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(key, "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* v = raw(key, false);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      fail(key, "expected true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  const json* array(const std::string& key, bool required) {
    const json* v = raw(key, required);
    if (v && !v->is_array()) {
      fail(key, "expected an array");
      return nullptr;
    }
    return v;
  }

  Reader child(const std::string& key, bool required) {
    return Reader(raw(key, required), join(key), *issues_);
  }

  /// Reader for an element of an array read from this object.
  Reader element(const json& j, const std::string& key, std::size_t index) {
    return Reader(&j, join(key + "[" + std::to_string(index) + "]"), *issues_);
  }

  std::string join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void fail(const std::string& key, const std::string& what) {
    const std::string where = key.empty() ? path_ : join(key);
    issues_->push_back((where.empty() ? std::string("<root>") : where) + ": " + what);
  }

  /// Reports keys that were never read.
  void finish() {
    if (!j_) return;
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      if (!used_.count(it.key())) fail(it.key(), "unknown key");
    }
  }

private:
  const json* j_;
  std::string path_;
  Issues* issues_;
  std::set<std::string> used_;
};

std::optional<ComputeModel> read_compute(Reader r) {
  if (!r.ok()) return std::nullopt;
  ComputeModel m;
  auto f_max = r.quantity("f_max", Quantity::frequency, true);
  auto f_min = r.quantity("f_min", Quantity::frequency, true);
  auto opc = r.number("ops_per_cycle", false);
  auto ps = r.quantity("p_static", Quantity::power, true);
  auto kappa = r.quantity("kappa", Quantity::kappa, true);
  auto alpha = r.number("alpha", false);
  r.finish();
  if (!f_max || !f_min || !ps || !kappa) return std::nullopt;
  m.f_max = *f_max;
  m.f_min = *f_min;
  m.ops_per_cycle = opc.value_or(1.0);
  m.p_static = *ps;
  m.kappa = *kappa;
  m.alpha = alpha.value_or(3.0);
  return m;
}

std::optional<LinkModel> read_wired(Reader r) {
  WiredHopModel m;
  bool from_preset = false;
  if (auto preset = r.string("preset", false)) {
    if (const auto* e = catalog::find_wired(*preset)) {
      m = catalog::wired_model(*e);
      from_preset = true;
    } else {
      r.fail("preset", "unknown wired preset '" + *preset + "'");
    }
  }
  auto eps = r.quantity("eps", Quantity::energy_per_bit, !from_preset);
  auto cap = r.quantity("capacity", Quantity::bit_rate, !from_preset);
  auto prop = r.quantity("prop_delay", Quantity::time, !from_preset);
  auto proc = r.quantity("proc_delay", Quantity::time, false);
  r.finish();
  if (eps) m.eps = *eps;
  if (cap) m.capacity = *cap;
  if (prop) m.prop_delay = *prop;
  if (proc) m.proc_delay = *proc;
  if (!from_preset && (!eps || !cap || !prop)) return std::nullopt;
  return m;
}

std::optional<LinkModel> read_catalog(Reader r) {
  WirelessCatalogModel m;
  bool from_preset = false;
  if (auto preset = r.string("preset", false)) {
    if (const auto* e = catalog::find_wireless(*preset)) {
      m = catalog::wireless_model(*e);
      from_preset = true;
    } else {
      r.fail("preset", "unknown wireless preset '" + *preset + "'");
    }
  }
  auto tx = r.quantity("eps_tx", Quantity::energy_per_bit, !from_preset);
  auto rx = r.quantity("eps_rx", Quantity::energy_per_bit, !from_preset);
  auto rate = r.quantity("rate", Quantity::bit_rate, !from_preset);
  auto base = r.quantity("base_latency", Quantity::time, false);
  auto mac = r.quantity("mac_mean_delay", Quantity::time, false);
  r.finish();
  if (tx) m.eps_tx = *tx;
  if (rx) m.eps_rx = *rx;
  if (rate) m.rate = *rate;
  if (base) m.base_latency = *base;
  if (mac) m.mac_mean_delay = *mac;
  if (!from_preset && (!tx || !rx || !rate)) return std::nullopt;
  return m;
}

std::optional<LinkModel> read_parametric(Reader r) {
  WirelessParametricModel m;
  auto bw = r.quantity("bandwidth", Quantity::frequency, true);
  auto n0 = r.quantity("noise_density", Quantity::noise_density, false);
  auto pl = r.quantity("path_loss", Quantity::path_loss, true);
  auto eta = r.number("pa_efficiency", false);
  auto ctx = r.quantity("circuit_power_tx", Quantity::power, false);
  auto crx = r.quantity("circuit_power_rx", Quantity::power, false);
  auto rmax = r.quantity("rate_max", Quantity::bit_rate, true);
  r.finish();
  if (!bw || !pl || !rmax) return std::nullopt;
  m.bandwidth = *bw;
  m.noise_density = n0.value_or(kBoltzmann * kReferenceTemperature);
  m.path_loss_db = *pl;
  m.pa_efficiency = eta.value_or(1.0);
  m.circuit_power_tx = ctx.value_or(0.0);
  m.circuit_power_rx = crx.value_or(0.0);
  m.rate_max = *rmax;
  return m;
}

std::optional<Distribution> read_distribution(Reader r, Quantity q) {
  if (!r.ok()) return std::nullopt;
  auto kind = r.string("dist", true);
  std::optional<Distribution> d;
  if (!kind) {
    // reported already
  } else if (*kind == "constant") {
    if (auto v = r.quantity("value", q, true)) d = Distribution::constant(*v);
  } else if (*kind == "uniform") {
    auto lo = r.quantity("min", q, true);
    auto hi = r.quantity("max", q, true);
    if (lo && hi) d = Distribution::uniform(*lo, *hi);
  } else if (*kind == "lognormal") {
    auto median = r.quantity("median", q, true);
    auto sigma = r.number("sigma", true);
    if (median && sigma) d = Distribution::lognormal(*median, *sigma);
  } else {
    r.fail("dist", "expected constant, uniform or lognormal (got '" + *kind + "')");
  }
  r.finish();
  if (d) {
    for (const auto& e : d->check()) r.fail("", e);
  }
  return d;
}

void read_topology(Reader r, Topology& topo, Issues& issues) {
  if (!r.ok()) return;
  if (const json* nodes = r.array("nodes", true)) {
    for (std::size_t i = 0; i < nodes->size(); ++i) {
      Reader n = r.element((*nodes)[i], "nodes", i);
      if (!n.ok()) continue;
      NodeSpec spec;
      auto id = n.string("id", true);
      auto tier = n.string("tier", true);
      if (n.has("compute")) spec.compute = read_compute(n.child("compute", true));
      spec.collocated = n.string("collocated", false);
      n.finish();
      if (!id || !tier) continue;
      spec.id = *id;
      if (auto t = parse_tier(*tier)) {
        spec.tier = *t;
      } else {
        n.fail("tier", "expected device, access_point, fog or cloud (got '" + *tier + "')");
        continue;
      }
      topo.add_node(std::move(spec));
    }
  }
  if (const json* links = r.array("links", true)) {
    for (std::size_t i = 0; i < links->size(); ++i) {
      Reader l = r.element((*links)[i], "links", i);
      if (!l.ok()) continue;
      auto from = l.string("from", true);
      auto to = l.string("to", true);
      const bool both = l.boolean("bidirectional").value_or(false);
      std::optional<LinkModel> model;
      int kinds = 0;
      if (l.has("wired")) {
        ++kinds;
        model = read_wired(l.child("wired", true));
      }
      if (l.has("wireless_catalog")) {
        ++kinds;
        model = read_catalog(l.child("wireless_catalog", true));
      }
      if (l.has("wireless_parametric")) {
        ++kinds;
        model = read_parametric(l.child("wireless_parametric", true));
      }
      if (kinds != 1) {
        l.fail("", "exactly one of wired, wireless_catalog, wireless_parametric is required");
      }
      l.finish();
      if (!from || !to || !model || kinds != 1) continue;
      if (both) topo.add_undirected(*from, *to, *model);
      else topo.add_link(*from, *to, *model);
    }
  }
  r.finish();
  for (const auto& e : topo.validate()) issues.push_back("topology: " + e);
}

void read_workload(Reader r, WorkloadConfig& w, const Topology& topo) {
  if (!r.ok()) return;
  if (r.has("periodic")) {
    Reader p = r.child("periodic", true);
    auto src = p.string("source", true);
    auto size = p.quantity("size", Quantity::data_size, true);
    auto intensity = p.quantity("intensity", Quantity::intensity, true);
    p.finish();
    if (src && size && intensity) {
      w.periodic = PeriodicSource{*src, *size, *intensity};
      const NodeSpec* n = topo.find(*src);
      if (!n || n->tier != Tier::device) p.fail("source", "'" + *src + "' is not a device node");
      if (!(*size > 0)) p.fail("size", "must be > 0");
      if (!(*intensity > 0)) p.fail("intensity", "must be > 0");
    }
  }
  if (r.has("requests") || r.has("size") || r.has("intensity") || r.has("deadline") ||
      r.has("sources")) {
    RequestDistribution d;
    auto count = r.integer("requests", true);
    auto size = read_distribution(r.child("size", true), Quantity::data_size);
    auto intensity = read_distribution(r.child("intensity", true), Quantity::intensity);
    auto deadline = read_distribution(r.child("deadline", true), Quantity::time);
    auto result = r.quantity("result_size", Quantity::data_size, false);
    if (const json* sources = r.array("sources", true)) {
      for (std::size_t i = 0; i < sources->size(); ++i) {
        Reader s = r.element((*sources)[i], "sources", i);
        if (!s.ok()) continue;
        auto dev = s.string("device", true);
        auto weight = s.number("weight", false);
        auto ap = s.string("ap", false);
        s.finish();
        if (!dev) continue;
        const NodeSpec* n = topo.find(*dev);
        if (!n || n->tier != Tier::device) s.fail("device", "'" + *dev + "' is not a device node");
        if (ap) {
          const NodeSpec* a = topo.find(*ap);
          if (!a || a->tier != Tier::access_point) s.fail("ap", "'" + *ap + "' is not an access point");
          else if (!topo.link_between(*dev, *ap)) s.fail("ap", "no wireless link from '" + *dev + "' to '" + *ap + "'");
        }
        d.sources.push_back({*dev, weight.value_or(1.0), ap});
      }
    }
    if (result) {
      if (!(*result >= 0)) r.fail("result_size", "must be >= 0");
      d.result_size = *result;
    }
    if (count && size && intensity && deadline) {
      d.size = *size;
      d.intensity = *intensity;
      d.deadline = *deadline;
      for (const auto& e : d.check()) r.fail("", e);
      w.request_count = *count;
      w.distribution = std::move(d);
    }
  }
  r.finish();
  if (!w.periodic && !w.distribution) {
    r.fail("", "needs either a request distribution or a periodic source");
  }
}

std::vector<Strategy> default_strategies(ScenarioKind k) {
  if (k == ScenarioKind::b) {
    return {Strategy::full_opt, Strategy::nearest_opt_freq, Strategy::nearest_max_freq,
            Strategy::collocated};
  }
  return {Strategy::full_opt, Strategy::nearest_opt_freq, Strategy::nearest_max_freq};
}

std::optional<AccountingScope> parse_scope(std::string_view s) {
  if (s == "fog_cloud") return AccountingScope::fog_cloud();
  if (s == "all") return AccountingScope::all();
  if (s == "device") return AccountingScope{true, false};
  return std::nullopt;
}

std::string_view scope_name(AccountingScope s) {
  if (s.include_device_energy && s.include_fog_cloud_energy) return "all";
  if (s.include_device_energy) return "device";
  return "fog_cloud";
}

std::vector<double> read_grid(Reader& r, const std::string& key, Quantity q, bool required) {
  std::vector<double> out;
  const json* arr = r.array(key, required);
  if (!arr) return out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const std::string k = key + "[" + std::to_string(i) + "]";
    if (auto v = r.quantity_of((*arr)[i], k, q)) {
      if (!(*v > 0)) r.fail(k, "must be > 0");
      out.push_back(*v);
    }
  }
  if (required && arr->empty()) r.fail(key, "must not be empty");
  return out;
}

void read_experiment(Reader r, ExperimentConfig& x, const WorkloadConfig& w,
                     const Topology& topo) {
  if (!r.ok()) return;
  auto scenario = r.string("scenario", true);
  if (scenario) {
    if (*scenario == "a") x.scenario = ScenarioKind::a;
    else if (*scenario == "b") x.scenario = ScenarioKind::b;
    else if (*scenario == "c") x.scenario = ScenarioKind::c;
    else r.fail("scenario", "expected a, b or c (got '" + *scenario + "')");
  }
  x.seed = r.integer("seed", false).value_or(0);

  x.strategies = default_strategies(x.scenario);
  if (const json* arr = r.array("strategies", false)) {
    x.strategies.clear();
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const auto& v = (*arr)[i];
      const std::string k = "strategies[" + std::to_string(i) + "]";
      if (!v.is_string()) {
        r.fail(k, "expected a strategy name");
        continue;
      }
      if (auto s = parse_strategy(v.get<std::string>())) x.strategies.push_back(*s);
      else r.fail(k, "unknown strategy '" + v.get<std::string>() + "'");
    }
  }
  x.scope = x.scenario == ScenarioKind::a ? AccountingScope::fog_cloud() : AccountingScope::all();
  if (auto s = r.string("scope", false)) {
    if (auto sc = parse_scope(*s)) x.scope = *sc;
    else r.fail("scope", "expected fog_cloud, all or device (got '" + *s + "')");
  }

  const bool is_b = x.scenario == ScenarioKind::b;
  const bool is_c = x.scenario == ScenarioKind::c;
  x.size_grid = read_grid(r, "size_grid", Quantity::data_size, is_b);
  x.rate_grid = read_grid(r, "rate_grid", Quantity::request_rate, is_c);
  x.slot_duration = r.quantity("slot_duration", Quantity::time, is_c).value_or(0.0);
  x.horizon = r.quantity("horizon", Quantity::time, is_c).value_or(0.0);
  x.warmup = r.quantity("warmup", Quantity::time, false).value_or(0.1 * x.horizon);
  x.fog = r.string("fog", false);
  x.aoi_max = r.quantity("aoi_max", Quantity::time, false);
  x.idle_power_tx = r.quantity("idle_power_tx", Quantity::power, false).value_or(0.0);
  x.idle_power_cpu = r.quantity("idle_power_cpu", Quantity::power, false).value_or(0.0);
  r.finish();

  if (!scenario) return;
  if (is_c) {
    if (!w.periodic) r.fail("scenario", "scenario c needs workload.periodic");
    if (x.horizon > 0 && !(x.warmup >= 0 && x.warmup < x.horizon)) {
      r.fail("warmup", "must satisfy 0 <= warmup < horizon");
    }
    if (x.fog) {
      const NodeSpec* n = topo.find(*x.fog);
      if (!n || !n->compute || n->tier == Tier::device) r.fail("fog", "'" + *x.fog + "' is not a compute node");
    }
  } else {
    if (!w.distribution) r.fail("scenario", "scenarios a and b need a request distribution");
    if (x.strategies.empty()) r.fail("strategies", "must not be empty");
  }
}

ojson emit_compute(const ComputeModel& m) {
  ojson j;
  j["f_max"] = units::format(m.f_max, Quantity::frequency);
  j["f_min"] = units::format(m.f_min, Quantity::frequency);
  j["ops_per_cycle"] = m.ops_per_cycle;
  j["p_static"] = units::format(m.p_static, Quantity::power);
  j["kappa"] = units::format(m.kappa, Quantity::kappa);
  j["alpha"] = m.alpha;
  return j;
}

ojson emit_link_model(const LinkModel& model) {
  ojson j;
  std::visit([&](const auto& m) {
    using M = std::decay_t<decltype(m)>;
    if constexpr (std::is_same_v<M, WiredHopModel>) {
      ojson w;
      w["eps"] = units::format(m.eps, Quantity::energy_per_bit);
      w["capacity"] = units::format(m.capacity, Quantity::bit_rate);
      w["prop_delay"] = units::format(m.prop_delay, Quantity::time);
      w["proc_delay"] = units::format(m.proc_delay, Quantity::time);
      j["wired"] = w;
    } else if constexpr (std::is_same_v<M, WirelessCatalogModel>) {
      ojson w;
      w["eps_tx"] = units::format(m.eps_tx, Quantity::energy_per_bit);
      w["eps_rx"] = units::format(m.eps_rx, Quantity::energy_per_bit);
      w["rate"] = units::format(m.rate, Quantity::bit_rate);
      w["base_latency"] = units::format(m.base_latency, Quantity::time);
      w["mac_mean_delay"] = units::format(m.mac_mean_delay, Quantity::time);
      j["wireless_catalog"] = w;
    } else {
      ojson w;
      w["bandwidth"] = units::format(m.bandwidth, Quantity::frequency);
      w["noise_density"] = units::format(m.noise_density, Quantity::noise_density);
      w["path_loss"] = units::format(m.path_loss_db, Quantity::path_loss);
      w["pa_efficiency"] = m.pa_efficiency;
      w["circuit_power_tx"] = units::format(m.circuit_power_tx, Quantity::power);
      w["circuit_power_rx"] = units::format(m.circuit_power_rx, Quantity::power);
      w["rate_max"] = units::format(m.rate_max, Quantity::bit_rate);
      j["wireless_parametric"] = w;
    }
  }, model);
  return j;
}

ojson emit_distribution(const Distribution& d, Quantity q) {
  ojson j;
  switch (d.kind) {
    case Distribution::Kind::constant:
      j["dist"] = "constant";
      j["value"] = units::format(d.a, q);
      break;
    case Distribution::Kind::uniform:
      j["dist"] = "uniform";
      j["min"] = units::format(d.a, q);
      j["max"] = units::format(d.b, q);
      break;
    case Distribution::Kind::lognormal:
      j["dist"] = "lognormal";
      j["median"] = units::format(d.a, q);
      j["sigma"] = d.b;
      break;
  }
  return j;
}

ojson emit_semantic(const ScenarioConfig& c) {
  ojson root;
  ojson nodes = ojson::array();
  for (const auto& n : c.topology.nodes()) {
    ojson j;
    j["id"] = n.id;
    j["tier"] = std::string(to_string(n.tier));
    if (n.compute) j["compute"] = emit_compute(*n.compute);
    if (n.collocated) j["collocated"] = *n.collocated;
    nodes.push_back(j);
  }
  ojson links = ojson::array();
  for (const auto& l : c.topology.links()) {
    if (l.collocation) continue;
    ojson j;
    j["from"] = l.from;
    j["to"] = l.to;
    const ojson model = emit_link_model(l.model);
    for (auto it = model.begin(); it != model.end(); ++it) j[it.key()] = it.value();
    links.push_back(j);
  }
  root["topology"]["nodes"] = nodes;
  root["topology"]["links"] = links;

  ojson w = ojson::object();
  if (const auto& d = c.workload.distribution) {
    w["requests"] = c.workload.request_count;
    w["size"] = emit_distribution(d->size, Quantity::data_size);
    w["intensity"] = emit_distribution(d->intensity, Quantity::intensity);
    w["deadline"] = emit_distribution(d->deadline, Quantity::time);
    w["result_size"] = units::format(d->result_size, Quantity::data_size);
    ojson sources = ojson::array();
    for (const auto& s : d->sources) {
      ojson j;
      j["device"] = s.device;
      j["weight"] = s.weight;
      if (s.ap) j["ap"] = *s.ap;
      sources.push_back(j);
    }
    w["sources"] = sources;
  }
  if (const auto& p = c.workload.periodic) {
    w["periodic"]["source"] = p->source;
    w["periodic"]["size"] = units::format(p->size, Quantity::data_size);
    w["periodic"]["intensity"] = units::format(p->intensity, Quantity::intensity);
  }
  root["workload"] = w;

  const ExperimentConfig& x = c.experiment;
  ojson e;
  e["scenario"] = std::string(to_string(x.scenario));
  e["seed"] = x.seed;
  ojson strategies = ojson::array();
  for (Strategy s : x.strategies) strategies.push_back(std::string(to_string(s)));
  e["strategies"] = strategies;
  e["scope"] = std::string(scope_name(x.scope));
  ojson sizes = ojson::array();
  for (double v : x.size_grid) sizes.push_back(units::format(v, Quantity::data_size));
  e["size_grid"] = sizes;
  ojson rates = ojson::array();
  for (double v : x.rate_grid) rates.push_back(units::format(v, Quantity::request_rate));
  e["rate_grid"] = rates;
  e["slot_duration"] = units::format(x.slot_duration, Quantity::time);
  e["horizon"] = units::format(x.horizon, Quantity::time);
  e["warmup"] = units::format(x.warmup, Quantity::time);
  if (x.fog) e["fog"] = *x.fog;
  if (x.aoi_max) e["aoi_max"] = units::format(*x.aoi_max, Quantity::time);
  e["idle_power_tx"] = units::format(x.idle_power_tx, Quantity::power);
  e["idle_power_cpu"] = units::format(x.idle_power_cpu, Quantity::power);
  root["experiment"] = e;
  return root;
}

}  // namespace

std::string_view to_string(ScenarioKind k) noexcept {
  switch (k) {
    case ScenarioKind::a: return "a";
    case ScenarioKind::b: return "b";
    case ScenarioKind::c: return "c";
  }
  return "a";
}

ScenarioConfig parse_config(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ConfigError("empty configuration: missing required sections topology, workload, experiment");
  }
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("syntax error: ") + e.what());
  }

  Issues issues;
  ScenarioConfig cfg;
  Reader r(&root, "", issues);
  if (!r.ok()) throw ConfigError(std::move(issues));

  read_topology(r.child("topology", true), cfg.topology, issues);
  read_workload(r.child("workload", true), cfg.workload, cfg.topology);
  read_experiment(r.child("experiment", true), cfg.experiment, cfg.workload, cfg.topology);
  if (r.has("output")) {
    Reader o = r.child("output", true);
    if (auto dir = o.string("directory", false)) cfg.output.directory = *dir;
    cfg.output.plot = o.boolean("plot").value_or(false);
    o.finish();
  }
  r.finish();

  if (issues.empty() && cfg.experiment.scenario == ScenarioKind::c) {
    try {
      const AoiScenario s = build_aoi_scenario(cfg);
      for (double rate : cfg.experiment.rate_grid) {
        AoiScenario at = s;
        at.rate = rate;
        for (const auto& e : at.check()) issues.push_back("experiment: " + e);
      }
    } catch (const ConfigError& e) {
      for (const auto& i : e.issues()) issues.push_back("experiment: " + i);
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

std::string emit_config(const ScenarioConfig& config) {
  ojson root = emit_semantic(config);
  root["output"]["directory"] = config.output.directory;
  root["output"]["plot"] = config.output.plot;
  return root.dump(2) + "\n";
}

std::string config_digest(const ScenarioConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(emit_semantic(config).dump()));
  return buf;
}

AoiScenario build_aoi_scenario(const ScenarioConfig& config) {
  const auto& p = config.workload.periodic;
  if (!p) throw ConfigError("scenario c needs a periodic source");
  const Topology& topo = config.topology;
  const ExperimentConfig& x = config.experiment;

  AoiScenario s;
  s.rate = x.rate_grid.empty() ? 1.0 : x.rate_grid.front();
  s.slot_duration = x.slot_duration;
  s.size = p->size;
  s.intensity = p->intensity;
  s.horizon = x.horizon;
  s.warmup = x.warmup;
  s.idle_power_tx = x.idle_power_tx;
  s.idle_power_cpu = x.idle_power_cpu;

  std::optional<std::string> ap;
  for (const auto& candidate : topo.access_points_of(p->source)) {
    const auto l = topo.link_between(p->source, candidate);
    if (const auto* m = std::get_if<WirelessParametricModel>(&topo.links()[*l].model)) {
      s.wireless = *m;
      ap = candidate;
      break;
    }
  }
  if (!ap) throw ConfigError("source '" + p->source + "' has no parametric wireless link");

  std::string fog;
  if (x.fog) fog = *x.fog;
  else if (const auto& c = topo.node(*ap).collocated) fog = *c;
  else throw ConfigError("no fog node given and access point '" + *ap + "' is not collocated");

  const NodeSpec& node = topo.node(fog);
  if (!node.compute) throw ConfigError("node '" + fog + "' has no compute model");
  s.compute = *node.compute;

  Path path;
  try {
    path = topo.shortest_path(*ap, fog, p->size, Metric::latency);
  } catch (const UnreachableError& e) {
    throw ConfigError(e.what());
  }
  for (std::size_t l : path.links) {
    const LinkSpec& link = topo.links()[l];
    if (link.collocation) continue;
    s.wired.push_back(std::get<WiredHopModel>(link.model));
  }
  return s;
}

}  // namespace fog2c
