#include "fog2c/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

#include "fog2c/errors.hpp"

namespace fog2c {
namespace {

constexpr std::array<std::string_view, 4> kTierNames{"device", "access_point", "fog", "cloud"};

bool is_infra(Tier t) noexcept { return t != Tier::device; }

struct Label {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t hops = 0;
  std::vector<std::string> nodes;
  std::vector<std::size_t> links;
  bool reached = false;
  bool settled = false;
};

bool better(const Label& a, const Label& b) {
  if (!b.reached) return a.reached;
  if (!a.reached) return false;
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.hops != b.hops) return a.hops < b.hops;
  return a.nodes < b.nodes;
}

}  // namespace

std::string_view to_string(Tier t) noexcept { return kTierNames[static_cast<std::size_t>(t)]; }

std::optional<Tier> parse_tier(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kTierNames.size(); ++i) {
    if (kTierNames[i] == s) return static_cast<Tier>(i);
  }
  return std::nullopt;
}

bool is_wireless(const LinkModel& m) noexcept {
  return !std::holds_alternative<WiredHopModel>(m);
}

Topology::Topology() : cache_(std::make_unique<Cache>()) {}
Topology::Topology(const Topology& other)
    : nodes_(other.nodes_), links_(other.links_), cache_(std::make_unique<Cache>()) {}
Topology& Topology::operator=(const Topology& other) {
  if (this != &other) {
    nodes_ = other.nodes_;
    links_ = other.links_;
    cache_ = std::make_unique<Cache>();
  }
  return *this;
}
Topology::Topology(Topology&&) noexcept = default;
Topology& Topology::operator=(Topology&&) noexcept = default;
Topology::~Topology() = default;

void Topology::add_node(NodeSpec node) {
  if (node.tier == Tier::access_point && node.collocated) {
    const WiredHopModel site{0.0, std::numeric_limits<double>::infinity(), 0.0, 0.0};
    links_.push_back({node.id, *node.collocated, site, true});
    links_.push_back({*node.collocated, node.id, site, true});
  }
  nodes_.push_back(std::move(node));
  cache_ = std::make_unique<Cache>();
}

void Topology::add_link(std::string from, std::string to, LinkModel model) {
  links_.push_back({std::move(from), std::move(to), std::move(model), false});
  cache_ = std::make_unique<Cache>();
}

void Topology::add_undirected(const std::string& a, const std::string& b,
                              const LinkModel& model) {
  add_link(a, b, model);
  add_link(b, a, model);
}

const NodeSpec* Topology::find(std::string_view id) const noexcept {
  for (const auto& n : nodes_) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const NodeSpec& Topology::node(std::string_view id) const {
  const NodeSpec* n = find(id);
  if (!n) throw DomainError("unknown node '" + std::string(id) + "'");
  return *n;
}

std::vector<std::string> Topology::validate() const {
  std::vector<std::string> errors;
  if (nodes_.empty()) {
    errors.emplace_back("topology has no nodes");
    return errors;
  }

  std::set<std::string> seen;
  for (const auto& n : nodes_) {
    const std::string where = "node '" + n.id + "'";
    if (n.id.empty()) errors.emplace_back("node with empty id");
    if (!seen.insert(n.id).second) errors.push_back(where + ": duplicate id");
    const bool needs_compute = n.tier == Tier::fog || n.tier == Tier::cloud;
    if (needs_compute && !n.compute) errors.push_back(where + ": fog/cloud node needs a compute model");
    if (n.tier == Tier::access_point && n.compute) errors.push_back(where + ": access point cannot carry a compute model");
    if (n.compute) {
      for (const auto& v : check(*n.compute)) errors.push_back(where + ": compute " + v);
    }
    if (n.collocated) {
      if (n.tier != Tier::access_point) {
        errors.push_back(where + ": only access points can be collocated");
      } else {
        const NodeSpec* f = find(*n.collocated);
        if (!f) errors.push_back(where + ": collocated node '" + *n.collocated + "' does not exist");
        else if (f->tier != Tier::fog) errors.push_back(where + ": collocated node '" + *n.collocated + "' is not a fog node");
      }
    }
  }

  for (std::size_t i = 0; i < links_.size(); ++i) {
    const auto& l = links_[i];
    if (l.collocation) continue;
    const std::string where = "link " + l.from + "->" + l.to;
    const NodeSpec* a = find(l.from);
    const NodeSpec* b = find(l.to);
    if (!a) errors.push_back(where + ": unknown endpoint '" + l.from + "'");
    if (!b) errors.push_back(where + ": unknown endpoint '" + l.to + "'");
    if (l.from == l.to) errors.push_back(where + ": self loop");
    if (a && b) {
      if (is_wireless(l.model)) {
        const bool ok = (a->tier == Tier::device && b->tier == Tier::access_point) ||
                        (a->tier == Tier::access_point && b->tier == Tier::device);
        if (!ok) errors.push_back(where + ": wireless links must join a device and an access point");
      } else if (!is_infra(a->tier) || !is_infra(b->tier)) {
        errors.push_back(where + ": wired links must join access point, fog or cloud nodes");
      }
    }
    std::visit([&](const auto& m) {
      for (const auto& v : check(m)) errors.push_back(where + ": " + v);
    }, l.model);
  }

  // Every fog node must be reachable (ignoring direction) from an AP or device.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& l : links_) {
    adj[l.from].push_back(l.to);
    adj[l.to].push_back(l.from);
  }
  std::set<std::string> reached;
  std::vector<std::string> stack;
  for (const auto& n : nodes_) {
    if (n.tier == Tier::device || n.tier == Tier::access_point) {
      if (reached.insert(n.id).second) stack.push_back(n.id);
    }
  }
  while (!stack.empty()) {
    const std::string cur = stack.back();
    stack.pop_back();
    for (const auto& nb : adj[cur]) {
      if (reached.insert(nb).second) stack.push_back(nb);
    }
  }
  for (const auto& n : nodes_) {
    if (n.tier == Tier::fog && !reached.count(n.id)) {
      errors.push_back("node '" + n.id + "': fog node not connected to any access point or device");
    }
  }
  return errors;
}

std::optional<std::size_t> Topology::link_between(std::string_view from,
                                                  std::string_view to) const {
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (links_[i].from == from && links_[i].to == to) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Topology::access_points_of(std::string_view device) const {
  std::vector<std::string> aps;
  for (const auto& l : links_) {
    if (l.from != device || !is_wireless(l.model)) continue;
    const NodeSpec* n = find(l.to);
    if (n && n->tier == Tier::access_point) aps.push_back(l.to);
  }
  std::sort(aps.begin(), aps.end());
  aps.erase(std::unique(aps.begin(), aps.end()), aps.end());
  return aps;
}

std::vector<std::string> Topology::compute_nodes() const {
  std::vector<std::string> out;
  for (const auto& n : nodes_) {
    if ((n.tier == Tier::fog || n.tier == Tier::cloud) && n.compute) out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cost Topology::link_cost(std::size_t link, double bits) const {
  return std::visit([&](const auto& m) -> Cost {
    using M = std::decay_t<decltype(m)>;
    if constexpr (std::is_same_v<M, WirelessCatalogModel>) {
      return wireless_cost_catalog_fixed(m, bits, LinkSide::both);
    } else if constexpr (std::is_same_v<M, WirelessParametricModel>) {
      return {parametric_link_energy(m, bits, m.rate_max), bits / m.rate_max};
    } else {
      return wired_path_cost(std::span<const WiredHopModel>(&m, 1), bits);
    }
  }, links_.at(link).model);
}

Cost Topology::path_cost(const Path& path, double bits) const {
  Cost total;
  for (std::size_t l : path.links) total += link_cost(l, bits);
  return total;
}

Cost Topology::path_cost(const Path& path, double bits, Rng& rng) const {
  Cost total;
  for (std::size_t l : path.links) {
    if (const auto* m = std::get_if<WirelessCatalogModel>(&links_.at(l).model)) {
      total += wireless_cost_catalog(*m, bits, LinkSide::both, rng);
    } else {
      total += link_cost(l, bits);
    }
  }
  return total;
}

std::vector<std::string> Topology::path_nodes(const Path& path) const {
  std::vector<std::string> out{path.src};
  for (std::size_t l : path.links) out.push_back(links_.at(l).to);
  return out;
}

Path Topology::shortest_path(const std::string& src, const std::string& dst, double bits,
                             Metric metric) const {
  CacheKey key{src, dst, static_cast<int>(metric), bits};
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->paths.find(key); it != cache_->paths.end()) return it->second;
  }
  Path p = compute_shortest_path(src, dst, bits, metric);
  std::lock_guard lock(cache_->mutex);
  cache_->paths.emplace(std::move(key), p);
  return p;
}

Path Topology::compute_shortest_path(const std::string& src, const std::string& dst,
                                     double bits, Metric metric) const {
  if (!find(src)) throw DomainError("shortest_path: unknown source '" + src + "'");
  if (!find(dst)) throw DomainError("shortest_path: unknown destination '" + dst + "'");
  if (src == dst) return {src, dst, {}};

  std::map<std::string, Label> labels;
  for (const auto& n : nodes_) labels[n.id];
  Label& start = labels[src];
  start.cost = 0.0;
  start.reached = true;
  start.nodes = {src};

  std::map<std::string, std::vector<std::size_t>> out_links;
  for (std::size_t i = 0; i < links_.size(); ++i) out_links[links_[i].from].push_back(i);

  for (;;) {
    Label* best = nullptr;
    std::string best_id;
    for (auto& [id, label] : labels) {
      if (label.settled || !label.reached) continue;
      if (!best || better(label, *best)) {
        best = &label;
        best_id = id;
      }
    }
    if (!best) break;
    best->settled = true;
    if (best_id == dst) break;
    // End devices originate and sink traffic but never relay it.
    if (best_id != src && node(best_id).tier == Tier::device) continue;

    for (std::size_t li : out_links[best_id]) {
      const LinkSpec& l = links_[li];
      auto it = labels.find(l.to);
      if (it == labels.end() || it->second.settled) continue;
      const Cost c = link_cost(li, bits);
      const double w = metric == Metric::latency ? c.latency : c.energy;
      if (!std::isfinite(w)) continue;
      Label cand;
      cand.reached = true;
      cand.cost = best->cost + w;
      cand.hops = best->hops + 1;
      cand.nodes = best->nodes;
      cand.nodes.push_back(l.to);
      cand.links = best->links;
      cand.links.push_back(li);
      if (better(cand, it->second)) it->second = std::move(cand);
    }
  }

  const Label& end = labels[dst];
  if (!end.reached) throw UnreachableError("no path from '" + src + "' to '" + dst + "'");
  return {src, dst, end.links};
}

}  // namespace fog2c
