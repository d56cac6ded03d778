#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "fog2c/models.hpp"

namespace fog2c {

enum class Tier { device, access_point, fog, cloud };

std::string_view to_string(Tier t) noexcept;
std::optional<Tier> parse_tier(std::string_view s) noexcept;

struct NodeSpec {
  std::string id;
  Tier tier = Tier::fog;
  // Processor of a fog/cloud node, or the local CPU of a device.
  std::optional<ComputeModel> compute;
  // Access points only: the fog node sharing the AP's site.
  std::optional<std::string> collocated;
};

using LinkModel = std::variant<WirelessCatalogModel, WirelessParametricModel, WiredHopModel>;

bool is_wireless(const LinkModel& m) noexcept;

/// A directed link. Collocation links are synthesized for APs that share a
/// site with a fog node: zero energy, zero delay, unlimited capacity.
struct LinkSpec {
  std::string from;
  std::string to;
  LinkModel model;
  bool collocation = false;
};

/// Ordered link indices from `src` to `dst`. Empty when src == dst.
struct Path {
  std::string src;
  std::string dst;
  std::vector<std::size_t> links;

  bool empty() const noexcept { return links.empty(); }
  friend bool operator==(const Path&, const Path&) = default;
};

enum class Metric { latency, energy };

/// The fog network graph. Immutable once built; shortest-path results are
/// memoized behind a mutex, so concurrent readers are safe.
class Topology {
public:
  Topology();
  Topology(const Topology& other);
  Topology& operator=(const Topology& other);
  Topology(Topology&&) noexcept;
  Topology& operator=(Topology&&) noexcept;
  ~Topology();

  void add_node(NodeSpec node);
  void add_link(std::string from, std::string to, LinkModel model);
  /// Emits the link in both directions.
  void add_undirected(const std::string& a, const std::string& b, const LinkModel& model);

  /// Every violated invariant; empty means valid.
  std::vector<std::string> validate() const;

  const std::vector<NodeSpec>& nodes() const noexcept { return nodes_; }
  const std::vector<LinkSpec>& links() const noexcept { return links_; }
  const NodeSpec* find(std::string_view id) const noexcept;
  const NodeSpec& node(std::string_view id) const;

  /// First link from `from` to `to`, if any.
  std::optional<std::size_t> link_between(std::string_view from, std::string_view to) const;

  /// Access points the device reaches over one wireless link, sorted by id.
  std::vector<std::string> access_points_of(std::string_view device) const;

  /// Fog and cloud nodes carrying a compute model, sorted by id.
  std::vector<std::string> compute_nodes() const;

  /// Least-cost loop-free path for a payload of `bits`. MAC randomness is
  /// excluded from the metric. Ties: fewer hops, then lexicographic node ids.
  Path shortest_path(const std::string& src, const std::string& dst, double bits,
                     Metric metric) const;

  /// Deterministic cost (no MAC draws) of a path.
  Cost path_cost(const Path& path, double bits) const;
  /// Path cost with one MAC delay draw per catalog link that has one.
  Cost path_cost(const Path& path, double bits, Rng& rng) const;

  /// Deterministic cost of a single link.
  Cost link_cost(std::size_t link, double bits) const;

  /// Node ids along a path, src first.
  std::vector<std::string> path_nodes(const Path& path) const;

private:
  using CacheKey = std::tuple<std::string, std::string, int, double>;
  struct Cache {
    std::mutex mutex;
    std::map<CacheKey, Path> paths;
  };

  Path compute_shortest_path(const std::string& src, const std::string& dst, double bits,
                             Metric metric) const;

  std::vector<NodeSpec> nodes_;
  std::vector<LinkSpec> links_;
  std::unique_ptr<Cache> cache_;
};

}  // namespace fog2c
