#include "hwa/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace hwa {
namespace {

// Caps 1/distance so zero distances stay finite and comparable.
constexpr double kMaxLambda = 1e12;

double lambda_of(double distance) {
  if (distance <= 1.0 / kMaxLambda) return kMaxLambda;
  return 1.0 / distance;
}

using EdgeKey = std::tuple<double, std::uint32_t, std::uint32_t>;

EdgeKey edge_key(double w, std::uint32_t a, std::uint32_t b) {
  return {w, std::min(a, b), std::max(a, b)};
}

}  // namespace

std::vector<double> core_distances(const DistanceMatrix& d, std::uint32_t k) {
  const std::size_t n = d.size();
  std::vector<double> core(n, 0.0);
  std::vector<double> row;
  for (std::size_t p = 0; p < n; ++p) {
    row.clear();
    for (std::size_t q = 0; q < n; ++q) {
      if (q != p) row.push_back(d(p, q));
    }
    if (row.empty()) continue;
    std::sort(row.begin(), row.end());
    const std::size_t idx = std::min<std::size_t>(k, row.size()) - 1;
    core[p] = k >= 1 ? row[idx] : 0.0;
  }
  return core;
}

DistanceMatrix mutual_reachability(const DistanceMatrix& d,
                                   const std::vector<double>& core) {
  const std::size_t n = d.size();
  DistanceMatrix mr(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double v = std::max({core[a], core[b], d(a, b)});
      mr.at(a, b) = v;
      mr.at(b, a) = v;
    }
  }
  return mr;
}

Dendrogram build_hierarchy(const DistanceMatrix& mr) {
  const std::size_t n = mr.size();
  Dendrogram dendro;
  dendro.num_points = n;
  if (n < 2) return dendro;

  // Prim over the dense matrix.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<bool> in_tree(n, false);
  std::vector<double> best_dist(n, kInf);
  std::vector<std::uint32_t> best_from(n, 0);
  struct Edge {
    std::uint32_t a, b;
    double w;
  };
  std::vector<Edge> edges;
  edges.reserve(n - 1);

  in_tree[0] = true;
  for (std::size_t v = 1; v < n; ++v) {
    best_dist[v] = mr(0, v);
    best_from[v] = 0;
  }
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = 0;
    bool have = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (!have || edge_key(best_dist[v], best_from[v], static_cast<std::uint32_t>(v)) <
                       edge_key(best_dist[pick], best_from[pick],
                                static_cast<std::uint32_t>(pick))) {
        pick = v;
        have = true;
      }
    }
    in_tree[pick] = true;
    edges.push_back({best_from[pick], static_cast<std::uint32_t>(pick), best_dist[pick]});
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (edge_key(mr(pick, v), static_cast<std::uint32_t>(pick),
                   static_cast<std::uint32_t>(v)) <
          edge_key(best_dist[v], best_from[v], static_cast<std::uint32_t>(v))) {
        best_dist[v] = mr(pick, v);
        best_from[v] = static_cast<std::uint32_t>(pick);
      }
    }
  }

  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return edge_key(x.w, x.a, x.b) < edge_key(y.w, y.a, y.b);
  });

  // Union-find over dendrogram nodes; node ids < n are points.
  std::vector<std::uint32_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::uint32_t> node_of(2 * n - 1);
  std::iota(node_of.begin(), node_of.end(), 0);
  std::vector<std::uint32_t> sizes(2 * n - 1, 1);

  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  dendro.merges.reserve(n - 1);
  for (const Edge& e : edges) {
    const std::uint32_t ra = find(e.a);
    const std::uint32_t rb = find(e.b);
    const std::uint32_t node_a = node_of[ra];
    const std::uint32_t node_b = node_of[rb];
    const auto new_node = static_cast<std::uint32_t>(n + dendro.merges.size());
    DendrogramMerge merge;
    merge.left = std::min(node_a, node_b);
    merge.right = std::max(node_a, node_b);
    merge.distance = e.w;
    merge.size = sizes[ra] + sizes[rb];
    dendro.merges.push_back(merge);
    parent[rb] = ra;
    node_of[ra] = new_node;
    sizes[ra] = merge.size;
  }
  return dendro;
}

namespace {

struct CondensedPoint {
  std::uint32_t cluster;  // condensed cluster the point fell out of
  std::uint32_t point;
  double lambda;
};

struct CondensedCluster {
  std::int32_t parent = -1;
  double birth_lambda = 0.0;
  std::uint32_t num_points = 0;  // points under the cluster at birth
  double stability = 0.0;
  std::vector<std::uint32_t> children;  // condensed child clusters
};

class Condenser {
 public:
  Condenser(const Dendrogram& dendro, std::uint32_t min_cluster_size)
      : dendro_(dendro), mcs_(min_cluster_size) {}

  void run() {
    const auto n = static_cast<std::uint32_t>(dendro_.num_points);
    const std::uint32_t root_node = n + static_cast<std::uint32_t>(dendro_.merges.size()) - 1;
    clusters_.push_back({-1, 0.0, node_size(root_node), 0.0, {}});
    walk(root_node, 0);
    for (const auto& p : points_) {
      clusters_[p.cluster].stability +=
          (p.lambda - clusters_[p.cluster].birth_lambda);
    }
  }

  std::vector<CondensedPoint>& points() { return points_; }
  std::vector<CondensedCluster>& clusters() { return clusters_; }

 private:
  std::uint32_t node_size(std::uint32_t node) const {
    const auto n = static_cast<std::uint32_t>(dendro_.num_points);
    return node < n ? 1u : dendro_.merges[node - n].size;
  }

  void collect_points(std::uint32_t node, std::vector<std::uint32_t>& out) const {
    const auto n = static_cast<std::uint32_t>(dendro_.num_points);
    if (node < n) {
      out.push_back(node);
      return;
    }
    collect_points(dendro_.merges[node - n].left, out);
    collect_points(dendro_.merges[node - n].right, out);
  }

  void shed(std::uint32_t node, std::uint32_t cluster, double lambda) {
    std::vector<std::uint32_t> pts;
    collect_points(node, pts);
    for (const std::uint32_t p : pts) points_.push_back({cluster, p, lambda});
  }

  void walk(std::uint32_t node, std::uint32_t cluster) {
    const auto n = static_cast<std::uint32_t>(dendro_.num_points);
    const DendrogramMerge& merge = dendro_.merges[node - n];
    const double lambda = lambda_of(merge.distance);
    const std::uint32_t left_size = node_size(merge.left);
    const std::uint32_t right_size = node_size(merge.right);

    const bool left_ok = left_size >= mcs_;
    const bool right_ok = right_size >= mcs_;
    if (left_ok && right_ok) {
      // True split: all points leave `cluster` here and the children are
      // born as new condensed clusters.
      clusters_[cluster].stability +=
          (lambda - clusters_[cluster].birth_lambda) *
          static_cast<double>(left_size + right_size);
      const auto cl = static_cast<std::uint32_t>(clusters_.size());
      clusters_.push_back({static_cast<std::int32_t>(cluster), lambda, left_size, 0.0, {}});
      const auto cr = static_cast<std::uint32_t>(clusters_.size());
      clusters_.push_back({static_cast<std::int32_t>(cluster), lambda, right_size, 0.0, {}});
      clusters_[cluster].children.push_back(cl);
      clusters_[cluster].children.push_back(cr);
      walk(merge.left, cl);
      walk(merge.right, cr);
    } else if (left_ok) {
      shed(merge.right, cluster, lambda);
      walk(merge.left, cluster);
    } else if (right_ok) {
      shed(merge.left, cluster, lambda);
      walk(merge.right, cluster);
    } else {
      shed(merge.left, cluster, lambda);
      shed(merge.right, cluster, lambda);
    }
  }

  const Dendrogram& dendro_;
  std::uint32_t mcs_;
  std::vector<CondensedPoint> points_;
  std::vector<CondensedCluster> clusters_;
};

}  // namespace

Clustering extract_clusters(const Dendrogram& dendrogram, const HdbscanParams& params) {
  if (params.min_cluster_size < 2) {
    throw std::invalid_argument("min_cluster_size must be at least 2");
  }
  Clustering result;
  const std::size_t n = dendrogram.num_points;
  result.labels.assign(n, Clustering::kNoise);
  if (n == 0 || n < params.min_cluster_size) return result;

  Condenser condenser(dendrogram, params.min_cluster_size);
  condenser.run();
  auto& clusters = condenser.clusters();

  // Excess of mass, bottom-up. Later ids are deeper, so a reverse scan
  // visits children before parents. The root competes like any cluster;
  // its birth lambda is 0.
  const std::size_t m = clusters.size();
  std::vector<double> subtree(m, 0.0);
  std::vector<bool> selected(m, false);
  for (std::size_t i = m; i-- > 0;) {
    const auto& c = clusters[i];
    if (c.children.empty()) {
      subtree[i] = c.stability;
      selected[i] = true;
      continue;
    }
    double child_sum = 0.0;
    for (const std::uint32_t ch : c.children) child_sum += subtree[ch];
    if (c.stability >= child_sum) {
      subtree[i] = c.stability;
      selected[i] = true;
    } else {
      subtree[i] = child_sum;
      selected[i] = false;
    }
  }

  // Keep only the shallowest selected clusters on each root path.
  std::vector<bool> final_cluster(m, false);
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const std::uint32_t c = stack.back();
    stack.pop_back();
    if (selected[c]) {
      final_cluster[c] = true;
      continue;
    }
    for (const std::uint32_t ch : clusters[c].children) stack.push_back(ch);
  }

  // A point belongs to the nearest final ancestor of the cluster it fell
  // out of; everything else is noise.
  std::vector<std::int32_t> final_of(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    if (final_cluster[i]) {
      final_of[i] = static_cast<std::int32_t>(i);
    } else if (clusters[i].parent >= 0) {
      final_of[i] = final_of[static_cast<std::size_t>(clusters[i].parent)];
    }
  }

  std::vector<std::vector<std::size_t>> members(m);
  for (const auto& p : condenser.points()) {
    const std::int32_t f = final_of[p.cluster];
    if (f >= 0) members[static_cast<std::size_t>(f)].push_back(p.point);
  }

  // Deterministic ids: clusters ordered by their smallest member point.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < m; ++i) {
    if (final_cluster[i] && !members[i].empty()) order.push_back(i);
  }
  for (std::size_t i : order) std::sort(members[i].begin(), members[i].end());
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return members[a][0] < members[b][0]; });

  for (std::size_t id = 0; id < order.size(); ++id) {
    const std::size_t c = order[id];
    for (const std::size_t p : members[c]) {
      result.labels[p] = static_cast<std::int32_t>(id);
    }
    result.clusters.push_back(std::move(members[c]));
    result.stabilities.push_back(clusters[c].stability);
  }
  return result;
}

Clustering hdbscan(const DistanceMatrix& d, const HdbscanParams& params) {
  const auto core = core_distances(d, params.effective_min_samples());
  const auto mr = mutual_reachability(d, core);
  return extract_clusters(build_hierarchy(mr), params);
}

}  // namespace hwa
