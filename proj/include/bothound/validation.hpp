#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bothound {

/// Immutable clustering of points into k non-empty clusters with ids
/// 0..k-1. Centroids are the per-cluster arithmetic means, computed at
/// construction.
class ClusterPartition {
public:
    static ClusterPartition create(std::vector<std::vector<double>> points,
                                   std::vector<int> labels);

    std::size_t n() const { return points_.size(); }
    int k() const { return k_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::vector<double>>& points() const { return points_; }
    int label_of(std::size_t i) const { return labels_[i]; }
    const std::vector<std::size_t>& cluster_members(int cluster) const;
    const std::vector<double>& centroid(int cluster) const;
    std::size_t cluster_size(int cluster) const { return cluster_members(cluster).size(); }

private:
    ClusterPartition() = default;

    std::vector<std::vector<double>> points_;
    std::vector<int> labels_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<std::vector<double>> centroids_;
    int k_ = 0;
    std::size_t dim_ = 0;
};

/// Max pairwise Euclidean distance inside the cluster; 0 for singletons.
double cluster_diameter(const ClusterPartition& p, int cluster);

/// Min Euclidean distance across the two clusters' point pairs.
double cluster_dissimilarity(const ClusterPartition& p, int i, int j);

/// Mean over clusters of the worst (diam_i + diam_j) / |z_i - z_j| ratio.
/// Coincident centroids raise "degenerate centroids" instead of blowing
/// up to infinity.
double davies_bouldin_index(const ClusterPartition& p);

/// Mean over points of (b - a) / max(a, b), where a is the mean distance
/// to the point's own cluster (0 for singletons) and b the minimum over
/// other clusters of the mean distance to that cluster. 0/0 counts as 0.
double silhouette_index(const ClusterPartition& p);

struct ValidationReport {
    double davies_bouldin = 0.0;
    double silhouette = 0.0;
    std::vector<double> per_cluster_diameter;
    int k = 0;
    std::size_t n = 0;
};

ValidationReport validation_report(const ClusterPartition& p);

}  // namespace bothound
