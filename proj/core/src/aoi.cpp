#include "fog2c/aoi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <queue>
#include <sstream>

#include "fog2c/errors.hpp"
#include "fog2c/parallel.hpp"

namespace fog2c {
namespace {

enum class EventKind { arrive, start, done };

struct Event {
  double time;
  std::uint64_t seq;
  EventKind kind;
  std::size_t stage;
  std::size_t request;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct Server {
  std::deque<std::size_t> fifo;
  bool busy = false;  // also set while a slotted start is pending
};

struct Interval {
  double begin;
  double end;
};

// Internal per-request record; AoiSample is its public projection.
struct Record {
  AoiSample sample;
  std::vector<Interval> waits;      // time spent queued in any FIFO
  std::vector<Interval> hop_busy;   // serialization on each wired hop
  std::vector<double> stage_arrival;
};

double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

// Energy of an activity spread uniformly over [a, b] that falls in [lo, hi).
double prorated(double energy, double a, double b, double lo, double hi) {
  if (energy == 0.0) return 0.0;
  if (b <= a) return (a >= lo && a < hi) ? energy : 0.0;
  return energy * overlap(a, b, lo, hi) / (b - a);
}

class Simulator {
public:
  explicit Simulator(const AoiScenario& s)
      : s_(s),
        hops_(s.wired.size()),
        cpu_stage_(hops_ + 1),
        servers_(hops_ + 2),
        frequency_(aoi_cpu_frequency(s)) {
    tx_energy_ = parametric_link_energy(s.wireless, s.size, s.size / s.slot_duration);
    const ComputeCost cc = compute_cost(s.compute, s.n_ops(), frequency_);
    compute_time_ = cc.time;
    compute_energy_ = cc.energy;
  }

  AoiTrace run() {
    const double limit = s_.rate * s_.horizon;
    auto count = static_cast<std::size_t>(std::ceil(limit - 1e-9 * std::max(1.0, limit)));
    count = std::max<std::size_t>(count, 1);
    records_.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      Record& r = records_[k];
      r.sample.gen_time = static_cast<double>(k) / s_.rate;
      r.stage_arrival.assign(hops_ + 2, 0.0);
      r.hop_busy.resize(hops_);
      push(r.sample.gen_time, EventKind::arrive, 0, k);
    }
    while (!events_.empty()) {
      const Event e = events_.top();
      events_.pop();
      dispatch(e);
    }
    return summarize();
  }

private:
  void push(double t, EventKind kind, std::size_t stage, std::size_t req) {
    events_.push({t, seq_++, kind, stage, req});
  }

  double next_slot(double now) const {
    const double T = s_.slot_duration;
    // Arrivals within rounding of a boundary take that slot.
    const double x = now / T;
    const double k = std::ceil(x - 1e-9 * std::max(1.0, x));
    return std::max(now, k * T);
  }

  double service_time(std::size_t stage) const {
    if (stage == 0) return s_.slot_duration;
    if (stage == cpu_stage_) return compute_time_;
    return s_.size / s_.wired[stage - 1].capacity;
  }

  void try_start(std::size_t stage, double now) {
    Server& srv = servers_[stage];
    if (srv.busy || srv.fifo.empty()) return;
    srv.busy = true;
    const double at = stage == 0 ? next_slot(now) : now;
    push(at, EventKind::start, stage, 0);
  }

  void dispatch(const Event& e) {
    Server& srv = servers_[e.stage];
    switch (e.kind) {
      case EventKind::arrive:
        records_[e.request].stage_arrival[e.stage] = e.time;
        srv.fifo.push_back(e.request);
        try_start(e.stage, e.time);
        break;

      case EventKind::start: {
        const std::size_t req = srv.fifo.front();
        srv.fifo.pop_front();
        Record& r = records_[req];
        r.waits.push_back({r.stage_arrival[e.stage], e.time});
        const double end = e.time + service_time(e.stage);
        if (e.stage == 0) {
          r.sample.tx_start = e.time;
          r.sample.tx_end = end;
          r.sample.tx_energy = tx_energy_;
        } else if (e.stage == cpu_stage_) {
          r.sample.compute_start = e.time;
          r.sample.compute_end = end;
          r.sample.compute_energy = compute_energy_;
        } else {
          r.hop_busy[e.stage - 1] = {e.time, end};
          r.sample.wired_energy += s_.wired[e.stage - 1].eps * s_.size;
        }
        push(end, EventKind::done, e.stage, req);
        break;
      }

      case EventKind::done: {
        srv.busy = false;
        if (e.stage == cpu_stage_) {
          records_[e.request].sample.completion = e.time;
        } else {
          double delay = 0.0;
          if (e.stage > 0) {
            const WiredHopModel& hop = s_.wired[e.stage - 1];
            delay = hop.prop_delay + hop.proc_delay;
          }
          push(e.time + delay, EventKind::arrive, e.stage + 1, e.request);
        }
        try_start(e.stage, e.time);
        break;
      }
    }
  }

  // Smallest number of generated-but-unfinished requests over [a, b].
  std::size_t min_backlog(double a, double b) const {
    std::vector<std::pair<double, int>> steps;
    long long backlog = 0;
    for (const Record& r : records_) {
      const double g = r.sample.gen_time;
      const double c = r.sample.completion;
      if (g <= a) ++backlog;
      if (c <= a) --backlog;
      if (g > a && g <= b) steps.emplace_back(g, +1);
      if (c > a && c <= b) steps.emplace_back(c, -1);
    }
    std::sort(steps.begin(), steps.end());
    long long lowest = backlog;
    for (const auto& [t, d] : steps) {
      backlog += d;
      lowest = std::min(lowest, backlog);
    }
    return static_cast<std::size_t>(std::max(0LL, lowest));
  }

  AoiTrace summarize() const {
    const double lo = s_.warmup;
    const double hi = s_.horizon;
    const double window = hi - lo;

    AoiTrace trace;
    AoiResult& res = trace.result;
    res.frequency = frequency_;
    res.generated = records_.size();

    // Exact integral of the sawtooth t - g(t), where g(t) is the newest
    // generation time among results delivered by t. Before the first
    // delivery the reference is t = 0.
    double area = 0.0;
    double ref = 0.0;
    double prev = 0.0;
    const auto integrate = [&](double a, double b) {
      a = std::max(a, lo);
      b = std::min(b, hi);
      if (b > a) area += 0.5 * (b - a) * (a + b) - ref * (b - a);
    };
    for (const Record& r : records_) {
      const double c = r.sample.completion;
      integrate(prev, c);
      prev = std::max(prev, c);
      ref = std::max(ref, r.sample.gen_time);
    }
    integrate(prev, hi);
    res.mean_aoi = area / window;

    double energy = 0.0;
    double tx_busy = 0.0;
    double cpu_busy = 0.0;
    for (const Record& r : records_) {
      const AoiSample& x = r.sample;
      energy += prorated(x.tx_energy, x.tx_start, x.tx_end, lo, hi);
      energy += prorated(x.compute_energy, x.compute_start, x.compute_end, lo, hi);
      for (std::size_t h = 0; h < hops_; ++h) {
        energy += prorated(s_.wired[h].eps * s_.size, r.hop_busy[h].begin, r.hop_busy[h].end, lo, hi);
      }
      tx_busy += overlap(x.tx_start, x.tx_end, lo, hi);
      cpu_busy += overlap(x.compute_start, x.compute_end, lo, hi);

      if (x.completion <= hi) {
        ++res.completed;
      } else {
        // Runs finish every request, so all FIFO waits are on record.
        const bool waiting = std::any_of(r.waits.begin(), r.waits.end(), [&](const Interval& w) {
          return hi >= w.begin && hi < w.end;
        });
        (waiting ? res.queued : res.in_flight) += 1;
      }
    }
    energy += s_.idle_power_tx * (window - tx_busy) + s_.idle_power_cpu * (window - cpu_busy);
    res.mean_power = energy / window;
    res.tx_utilization = tx_busy / window;
    res.cpu_utilization = cpu_busy / window;

    const double mid = lo + 0.5 * window;
    const double probe = 0.1 * window;
    const std::size_t early = min_backlog(mid - probe, mid);
    const std::size_t late = min_backlog(hi - probe, hi);
    res.diverged = late >= early + 2;

    trace.samples.reserve(records_.size());
    for (const Record& r : records_) trace.samples.push_back(r.sample);
    return trace;
  }

  const AoiScenario& s_;
  std::size_t hops_;
  std::size_t cpu_stage_;
  std::vector<Server> servers_;
  double frequency_;
  double tx_energy_ = 0.0;
  double compute_time_ = 0.0;
  double compute_energy_ = 0.0;
  std::vector<Record> records_;
  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::uint64_t seq_ = 0;
};

}  // namespace

std::vector<std::string> AoiScenario::check() const {
  std::vector<std::string> v;
  const auto need = [&](bool ok, const char* what) {
    if (!ok) v.emplace_back(what);
  };
  need(rate > 0 && std::isfinite(rate), "rate must be > 0");
  need(slot_duration > 0, "slot_duration must be > 0");
  need(horizon > warmup && warmup >= 0, "need horizon > warmup >= 0");
  need(size > 0, "request size must be > 0");
  need(intensity > 0, "intensity must be > 0");
  need(idle_power_tx >= 0 && idle_power_cpu >= 0, "idle powers must be >= 0");
  for (const auto& e : fog2c::check(wireless)) v.push_back("wireless: " + e);
  for (const auto& e : fog2c::check(compute)) v.push_back("compute: " + e);
  for (const auto& hop : wired) {
    for (const auto& e : fog2c::check(hop)) v.push_back("wired: " + e);
  }
  if (slot_duration > 0 && size / slot_duration > wireless.rate_max * (1.0 + kRelativeSlack)) {
    std::ostringstream os;
    os << "request of " << size << " b does not fit one " << slot_duration
       << " s slot at rate_max " << wireless.rate_max << " b/s";
    v.push_back(os.str());
  }
  return v;
}

double aoi_cpu_frequency(const AoiScenario& s) {
  double throughput = std::min(s.rate, 1.0 / s.slot_duration);
  for (const auto& hop : s.wired) throughput = std::min(throughput, hop.capacity / s.size);
  const ComputeModel& cm = s.compute;
  const double floor = throughput * s.n_ops() / cm.ops_per_cycle;
  const double lo = std::min(std::max(cm.f_min, floor), cm.f_max);
  return std::clamp(energy_optimal_frequency(cm), lo, cm.f_max);
}

AoiTrace simulate_trace(const AoiScenario& scenario) {
  if (auto issues = scenario.check(); !issues.empty()) throw ConfigError(std::move(issues));
  return Simulator(scenario).run();
}

AoiResult simulate(const AoiScenario& scenario) { return simulate_trace(scenario).result; }

std::vector<std::pair<double, AoiResult>> sweep_rate(const AoiScenario& scenario,
                                                     std::span<const double> rates,
                                                     unsigned threads) {
  if (rates.empty()) throw DomainError("sweep_rate: empty rate list");
  std::vector<double> sorted(rates.begin(), rates.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, AoiResult>> out(sorted.size());
  parallel_for(sorted.size(), threads, [&](std::size_t i) {
    AoiScenario s = scenario;
    s.rate = sorted[i];
    out[i] = {sorted[i], simulate(s)};
  });
  return out;
}

std::optional<double> optimal_rate_for_aoi(const AoiScenario& scenario, double aoi_max,
                                           std::span<const double> rate_grid,
                                           unsigned threads) {
  std::optional<double> best;
  double best_power = std::numeric_limits<double>::infinity();
  for (const auto& [rate, res] : sweep_rate(scenario, rate_grid, threads)) {
    if (res.mean_aoi <= aoi_max && res.mean_power < best_power) {
      best = rate;
      best_power = res.mean_power;
    }
  }
  return best;
}

}  // namespace fog2c
