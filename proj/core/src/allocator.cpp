#include "fog2c/allocator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "fog2c/errors.hpp"
#include "fog2c/parallel.hpp"

namespace fog2c {
namespace {

constexpr std::array<std::string_view, 5> kStrategyNames{
    "full_opt", "nearest_opt_freq", "nearest_max_freq", "collocated", "local_device"};

enum class FreqMode { optimize, max };

// One MAC delay per (AP, direction), drawn up front in AP order so every
// candidate sharing an AP sees the same draw.
struct MacDraws {
  std::map<std::string, double> up;
  std::map<std::string, double> down;

  static double get(const std::map<std::string, double>& m, const std::string& ap) {
    auto it = m.find(ap);
    return it == m.end() ? 0.0 : it->second;
  }
};

// Variable part of a candidate: uplink rate and clock.
struct Plan {
  double rate = 0.0;
  double frequency = 0.0;
  double device_energy = 0.0;
  double fog_energy = 0.0;
  double time = 0.0;  // uplink time (parametric only) plus compute time
};

double scoped(const Plan& p, AccountingScope scope) {
  return EnergyBreakdown{p.device_energy, p.fog_energy}.scoped(scope);
}

bool plan_better(const Plan& a, const Plan& b, AccountingScope scope) {
  const double ea = scoped(a, scope);
  const double eb = scoped(b, scope);
  if (ea != eb) return ea < eb;
  return a.time < b.time;
}

bool exceeds(double value, double limit) { return value > limit * (1.0 + kRelativeSlack); }

std::vector<std::string> candidate_aps(const Request& r, const Topology& t) {
  if (!r.assigned_ap) return t.access_points_of(r.source);
  const NodeSpec* ap = t.find(*r.assigned_ap);
  if (!ap || ap->tier != Tier::access_point) {
    throw ConfigError("request " + std::to_string(r.id) + ": assigned AP '" + *r.assigned_ap +
                      "' is not an access point");
  }
  return {*r.assigned_ap};
}

MacDraws draw_mac(const Request& r, const Topology& t, const std::vector<std::string>& aps,
                  Rng& rng) {
  MacDraws d;
  for (const auto& ap : aps) {
    if (auto l = t.link_between(r.source, ap)) {
      if (const auto* m = std::get_if<WirelessCatalogModel>(&t.links()[*l].model)) {
        d.up[ap] = sample_mac_delay(*m, rng);
      }
    }
    if (r.result_size > 0) {
      if (auto l = t.link_between(ap, r.source)) {
        if (const auto* m = std::get_if<WirelessCatalogModel>(&t.links()[*l].model)) {
          d.down[ap] = sample_mac_delay(*m, rng);
        }
      }
    }
  }
  return d;
}

std::optional<Plan> plan_compute(const ComputeModel& cm, double n_ops, double budget,
                                 FreqMode mode) {
  const double t_min = n_ops / (cm.ops_per_cycle * cm.f_max);
  if (exceeds(t_min, budget)) return std::nullopt;
  const ComputeCost at_max = compute_cost(cm, n_ops, cm.f_max);
  Plan fastest{0.0, cm.f_max, 0.0, at_max.energy, at_max.time};
  if (mode == FreqMode::max) return fastest;
  const FrequencyChoice fc = optimal_frequency(cm, n_ops, budget);
  Plan best{0.0, fc.frequency, 0.0, fc.energy, fc.time};
  // The closed form is exact; keeping f_max as a candidate only guards rounding.
  return at_max.energy < fc.energy ? fastest : best;
}

std::optional<Plan> plan_parametric(const WirelessParametricModel& wm, double bits,
                                    const ComputeModel& cm, double n_ops, double budget,
                                    FreqMode mode, AccountingScope scope) {
  const double tw_min = bits / wm.rate_max;
  const double tc_min = n_ops / (cm.ops_per_cycle * cm.f_max);
  if (exceeds(tw_min + tc_min, budget)) return std::nullopt;
  const double tw_max = std::max(tw_min, budget - tc_min);

  const auto plan_at = [&](double tw, bool at_fmax) {
    const RateChoice rc = optimal_rate(wm, bits, tw);
    Plan p;
    p.rate = rc.rate;
    p.device_energy = rc.energy;
    if (at_fmax) {
      const ComputeCost cc = compute_cost(cm, n_ops, cm.f_max);
      p.frequency = cm.f_max;
      p.fog_energy = cc.energy;
      p.time = rc.latency + cc.time;
    } else {
      const FrequencyChoice fc = optimal_frequency(cm, n_ops, std::max(budget - tw, tc_min));
      p.frequency = fc.frequency;
      p.fog_energy = fc.energy;
      p.time = rc.latency + fc.time;
    }
    return p;
  };

  Plan fastest_cpu = plan_at(tw_max, true);
  if (mode == FreqMode::max) return fastest_cpu;

  // Both inner minima are convex and non-increasing in their own time
  // budget, so the scoped energy is convex in the uplink share tw.
  const auto objective = [&](double tw) { return scoped(plan_at(tw, false), scope); };
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = tw_min;
  double hi = tw_max;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = objective(x2);
    }
  }

  Plan best = plan_at(0.5 * (lo + hi), false);
  for (const Plan& p : {plan_at(tw_min, false), plan_at(tw_max, false), fastest_cpu}) {
    if (plan_better(p, best, scope)) best = p;
  }
  return best;
}

Allocation evaluate(const Request& r, const Topology& t, const std::string& ap,
                    const std::string& node_id, FreqMode mode, AccountingScope scope,
                    const MacDraws& mac) {
  Allocation a;
  a.request_id = r.id;
  a.chosen_ap = ap;
  a.compute_node = node_id;

  const auto up = t.link_between(r.source, ap);
  if (!up || !is_wireless(t.links()[*up].model)) return a;
  const NodeSpec& node = t.node(node_id);
  if (!node.compute) return a;

  double fixed_latency = 0.0;
  EnergyBreakdown energy;
  try {
    a.forward_path = t.shortest_path(ap, node_id, r.size, Metric::latency);
    if (r.result_size > 0) a.return_path = t.shortest_path(node_id, ap, r.result_size, Metric::latency);
  } catch (const UnreachableError&) {
    return a;
  }
  const Cost fwd = t.path_cost(a.forward_path, r.size);
  fixed_latency += fwd.latency;
  energy.fog_cloud += fwd.energy;

  if (r.result_size > 0) {
    const Cost back = t.path_cost(a.return_path, r.result_size);
    fixed_latency += back.latency;
    energy.fog_cloud += back.energy;
    const auto down = t.link_between(ap, r.source);
    if (!down || !is_wireless(t.links()[*down].model)) return a;
    const Cost dl = t.link_cost(*down, r.result_size);
    fixed_latency += dl.latency + MacDraws::get(mac.down, ap);
    energy.device += dl.energy;
  }

  const ComputeModel& cm = *node.compute;
  const double n_ops = r.n_ops();
  const LinkModel& uplink = t.links()[*up].model;

  std::optional<Plan> plan;
  double budget = 0.0;
  if (const auto* pm = std::get_if<WirelessParametricModel>(&uplink)) {
    budget = r.deadline - fixed_latency;
    if (budget > 0) plan = plan_parametric(*pm, r.size, cm, n_ops, budget, mode, scope);
  } else {
    const auto& cat = std::get<WirelessCatalogModel>(uplink);
    const Cost ul = wireless_cost_catalog_fixed(cat, r.size, LinkSide::both);
    fixed_latency += ul.latency + MacDraws::get(mac.up, ap);
    energy.device += ul.energy;
    budget = r.deadline - fixed_latency;
    if (budget > 0) {
      plan = plan_compute(cm, n_ops, budget, mode);
      if (plan) plan->rate = cat.rate;
    }
  }
  if (!plan) return a;

  energy.device += plan->device_energy;
  energy.fog_cloud += plan->fog_energy;
  a.wireless_rate = plan->rate;
  a.frequency = plan->frequency;
  a.breakdown = energy;
  a.energy = energy.scoped(scope);
  a.latency = fixed_latency + plan->time;
  a.feasible = true;
  return a;
}

bool allocation_better(const Allocation& a, const Allocation& b) {
  if (!b.feasible) return a.feasible;
  if (!a.feasible) return false;
  if (*a.energy != *b.energy) return *a.energy < *b.energy;
  if (*a.latency != *b.latency) return *a.latency < *b.latency;
  if (a.compute_node != b.compute_node) return a.compute_node < b.compute_node;
  return a.chosen_ap < b.chosen_ap;
}

Allocation infeasible(const Request& r) {
  Allocation a;
  a.request_id = r.id;
  return a;
}

Allocation full(const Request& r, const Topology& t, AccountingScope scope,
                const std::vector<std::string>& aps, const MacDraws& mac) {
  Allocation best = infeasible(r);
  for (const auto& ap : aps) {
    for (const auto& node : t.compute_nodes()) {
      Allocation cand = evaluate(r, t, ap, node, FreqMode::optimize, scope, mac);
      if (allocation_better(cand, best)) best = std::move(cand);
    }
  }
  return best;
}

struct Route {
  std::string ap;
  std::string node;
};

// Arrival node of the nearest strategies: the fog node closest in latency
// to the device (through its assigned AP when there is one).
std::optional<Route> nearest_route(const Request& r, const Topology& t,
                                   const std::vector<std::string>& aps) {
  if (r.assigned_ap) {
    const NodeSpec& ap = t.node(*r.assigned_ap);
    if (ap.collocated) return Route{ap.id, *ap.collocated};
  }

  std::optional<Route> best;
  double best_latency = std::numeric_limits<double>::infinity();
  std::size_t best_hops = 0;
  for (const auto& fog : t.compute_nodes()) {
    if (t.node(fog).tier != Tier::fog) continue;
    for (const auto& ap : aps) {
      Path p;
      try {
        p = t.shortest_path(ap, fog, r.size, Metric::latency);
      } catch (const UnreachableError&) {
        continue;
      }
      const auto up = t.link_between(r.source, ap);
      if (!up) continue;
      const double latency = t.link_cost(*up, r.size).latency + t.path_cost(p, r.size).latency;
      const std::size_t hops = p.links.size() + 1;
      // Candidates arrive in (fog, ap) order, so strict comparison keeps the
      // lexicographically smallest ids on ties.
      if (!best || latency < best_latency || (latency == best_latency && hops < best_hops)) {
        best = Route{ap, fog};
        best_latency = latency;
        best_hops = hops;
      }
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(Strategy s) noexcept {
  return kStrategyNames[static_cast<std::size_t>(s)];
}

std::optional<Strategy> parse_strategy(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
    if (kStrategyNames[i] == s) return static_cast<Strategy>(i);
  }
  return std::nullopt;
}

Allocation optimize_full(const Request& request, const Topology& topology,
                         AccountingScope scope, Rng& rng) {
  const auto aps = candidate_aps(request, topology);
  const MacDraws mac = draw_mac(request, topology, aps, rng);
  return full(request, topology, scope, aps, mac);
}

Allocation allocate(const Request& request, const Topology& topology, Strategy strategy,
                    AccountingScope scope, Rng& rng) {
  if (!scope.valid()) throw ConfigError("accounting scope must include at least one tier");

  if (strategy == Strategy::local_device) {
    const NodeSpec& dev = topology.node(request.source);
    if (!dev.compute) {
      throw ConfigError("local_device needs a compute model on device '" + request.source + "'");
    }
    Allocation a = infeasible(request);
    a.compute_node = request.source;
    try {
      const FrequencyChoice fc = optimal_frequency(*dev.compute, request.n_ops(), request.deadline);
      a.frequency = fc.frequency;
      a.breakdown.device = fc.energy;
      a.energy = a.breakdown.scoped(scope);
      a.latency = fc.time;
      a.feasible = true;
    } catch (const InfeasibleError&) {
    }
    return a;
  }

  const auto aps = candidate_aps(request, topology);
  const MacDraws mac = draw_mac(request, topology, aps, rng);

  switch (strategy) {
    case Strategy::full_opt:
      return full(request, topology, scope, aps, mac);

    case Strategy::nearest_opt_freq:
    case Strategy::nearest_max_freq: {
      const auto route = nearest_route(request, topology, aps);
      if (!route) return infeasible(request);
      const FreqMode mode =
          strategy == Strategy::nearest_max_freq ? FreqMode::max : FreqMode::optimize;
      return evaluate(request, topology, route->ap, route->node, mode, scope, mac);
    }

    case Strategy::collocated: {
      Allocation best = infeasible(request);
      bool any = false;
      for (const auto& ap : aps) {
        const NodeSpec& n = topology.node(ap);
        if (!n.collocated) continue;
        any = true;
        Allocation cand = evaluate(request, topology, ap, *n.collocated, FreqMode::optimize, scope, mac);
        if (allocation_better(cand, best)) best = std::move(cand);
      }
      if (!any) {
        throw ConfigError("collocated strategy: no access point of '" + request.source +
                          "' has a collocated fog node");
      }
      return best;
    }

    case Strategy::local_device:
      break;
  }
  return infeasible(request);
}

std::vector<CdfPoint> energy_cdf(std::span<const Allocation> allocations) {
  std::vector<double> e;
  for (const auto& a : allocations) {
    if (a.feasible) e.push_back(*a.energy);
  }
  std::sort(e.begin(), e.end());
  std::vector<CdfPoint> out;
  out.reserve(e.size());
  const double n = static_cast<double>(allocations.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    out.push_back({e[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

std::optional<double> median_energy(std::span<const Allocation> allocations) {
  if (allocations.empty()) return std::nullopt;
  std::vector<double> e;
  e.reserve(allocations.size());
  for (const auto& a : allocations) {
    e.push_back(a.feasible ? *a.energy : std::numeric_limits<double>::infinity());
  }
  std::sort(e.begin(), e.end());
  const std::size_t n = e.size();
  const std::size_t upper = n / 2;
  if (std::isinf(e[upper])) return std::nullopt;
  if (n % 2 == 1) return e[upper];
  return 0.5 * (e[upper - 1] + e[upper]);
}

double success_rate(std::span<const Allocation> allocations) noexcept {
  if (allocations.empty()) return 0.0;
  const auto ok = std::count_if(allocations.begin(), allocations.end(),
                                [](const Allocation& a) { return a.feasible; });
  return static_cast<double>(ok) / static_cast<double>(allocations.size());
}

std::vector<StrategyStats> run_scenario(std::span<const Request> requests,
                                        const Topology& topology,
                                        std::span<const Strategy> strategies,
                                        AccountingScope scope, std::uint64_t seed,
                                        unsigned threads) {
  if (!scope.valid()) throw ConfigError("accounting scope must include at least one tier");
  std::vector<StrategyStats> out;
  out.reserve(strategies.size());
  for (Strategy s : strategies) {
    StrategyStats st;
    st.strategy = s;
    st.allocations.resize(requests.size());
    parallel_for(requests.size(), threads, [&](std::size_t i) {
      // Same channel draws for every strategy, so strategies are compared
      // on identical conditions.
      Rng rng = make_rng(seed, "channel", requests[i].id);
      st.allocations[i] = allocate(requests[i], topology, s, scope, rng);
    });
    for (const auto& a : st.allocations) {
      if (!a.feasible) continue;
      ++st.feasible;
      st.total_energy += *a.energy;
    }
    st.cdf = energy_cdf(st.allocations);
    st.median = median_energy(st.allocations);
    st.success_rate = success_rate(st.allocations);
    out.push_back(std::move(st));
  }
  return out;
}

std::optional<double> savings_percent(std::optional<double> candidate,
                                      std::optional<double> baseline) {
  if (!candidate || !baseline || !(*baseline > 0)) return std::nullopt;
  return 100.0 * (*baseline - *candidate) / *baseline;
}

}  // namespace fog2c
