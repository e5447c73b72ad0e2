#pragma once

#include <cstdint>
#include <vector>

#include "hwa/embedding.hpp"

// Density clustering over a precomputed distance matrix: core distances,
// mutual reachability, an exact Prim MST turned into a single-linkage
// dendrogram, and condensed-tree cluster extraction by excess of mass.

namespace hwa {

struct HdbscanParams {
  std::uint32_t min_cluster_size = 5;
  std::uint32_t min_samples = 0;  // 0 means "use min_cluster_size"

  std::uint32_t effective_min_samples() const {
    return min_samples == 0 ? min_cluster_size : min_samples;
  }
};

// Distance to the k-th nearest neighbor (self excluded); when k exceeds the
// neighbor count this degrades to the farthest row entry.
std::vector<double> core_distances(const DistanceMatrix& d, std::uint32_t k);

// max(core(a), core(b), d(a,b)) off the diagonal; the diagonal stays 0.
DistanceMatrix mutual_reachability(const DistanceMatrix& d,
                                   const std::vector<double>& core);

struct DendrogramMerge {
  // Node ids: < n are points, n + i is the cluster created by merge i.
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double distance = 0.0;
  std::uint32_t size = 0;  // points under the merged node
};

struct Dendrogram {
  std::size_t num_points = 0;
  std::vector<DendrogramMerge> merges;  // ascending by merge distance
};

// MST by exact O(n^2) Prim with the (weight, min id, max id) lexicographic
// tie-break, then edges sorted by the same key and merged union-find style
// into a single-linkage dendrogram.
Dendrogram build_hierarchy(const DistanceMatrix& mr);

struct Clustering {
  static constexpr std::int32_t kNoise = -1;
  std::vector<std::int32_t> labels;              // per point, kNoise or cluster id
  std::vector<std::vector<std::size_t>> clusters;  // members per cluster id
  std::vector<double> stabilities;               // per cluster id

  std::size_t num_clusters() const { return clusters.size(); }
};

// Condenses the hierarchy by min_cluster_size (splits smaller than it shed
// their points), scores each condensed cluster by summed point persistence,
// and keeps the excess-of-mass selection. Fewer points than
// min_cluster_size means everything is noise.
Clustering extract_clusters(const Dendrogram& dendrogram, const HdbscanParams& params);

Clustering hdbscan(const DistanceMatrix& d, const HdbscanParams& params);

}  // namespace hwa
