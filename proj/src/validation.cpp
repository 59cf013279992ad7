#include "bothound/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bothound {

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

void check_cluster_id(const ClusterPartition& p, int cluster) {
    if (cluster < 0 || cluster >= p.k())
        throw std::invalid_argument("unknown cluster id " + std::to_string(cluster));
}

}  // namespace

ClusterPartition ClusterPartition::create(std::vector<std::vector<double>> points,
                                          std::vector<int> labels) {
    if (points.empty()) throw std::invalid_argument("partition needs at least one point");
    if (points.size() != labels.size())
        throw std::invalid_argument("points/labels length mismatch");

    ClusterPartition p;
    p.dim_ = points.front().size();
    for (const auto& pt : points) {
        if (pt.size() != p.dim_) throw std::invalid_argument("inconsistent point dimensions");
    }

    int k = 0;
    for (int label : labels) {
        if (label < 0) throw std::invalid_argument("cluster ids must be non-negative");
        k = std::max(k, label + 1);
    }
    p.k_ = k;
    p.members_.resize(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        p.members_[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    for (int c = 0; c < k; ++c) {
        if (p.members_[static_cast<std::size_t>(c)].empty())
            throw std::invalid_argument("cluster " + std::to_string(c) + " is empty");
    }

    p.centroids_.assign(static_cast<std::size_t>(k), std::vector<double>(p.dim_, 0.0));
    for (int c = 0; c < k; ++c) {
        auto& centroid = p.centroids_[static_cast<std::size_t>(c)];
        const auto& members = p.members_[static_cast<std::size_t>(c)];
        for (std::size_t idx : members) {
            for (std::size_t d = 0; d < p.dim_; ++d) centroid[d] += points[idx][d];
        }
        for (double& v : centroid) v /= static_cast<double>(members.size());
    }

    p.points_ = std::move(points);
    p.labels_ = std::move(labels);
    return p;
}

const std::vector<std::size_t>& ClusterPartition::cluster_members(int cluster) const {
    check_cluster_id(*this, cluster);
    return members_[static_cast<std::size_t>(cluster)];
}

const std::vector<double>& ClusterPartition::centroid(int cluster) const {
    check_cluster_id(*this, cluster);
    return centroids_[static_cast<std::size_t>(cluster)];
}

double cluster_diameter(const ClusterPartition& p, int cluster) {
    const auto& members = p.cluster_members(cluster);
    double best = 0.0;
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            best = std::max(best, euclidean(p.points()[members[a]], p.points()[members[b]]));
        }
    }
    return best;
}

double cluster_dissimilarity(const ClusterPartition& p, int i, int j) {
    if (i == j) throw std::invalid_argument("dissimilarity requires two distinct clusters");
    const auto& left = p.cluster_members(i);
    const auto& right = p.cluster_members(j);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a : left) {
        for (std::size_t b : right) {
            best = std::min(best, euclidean(p.points()[a], p.points()[b]));
        }
    }
    return best;
}

double davies_bouldin_index(const ClusterPartition& p) {
    const int k = p.k();
    if (k < 2) throw std::invalid_argument("davies_bouldin_index requires k >= 2");

    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (euclidean(p.centroid(i), p.centroid(j)) == 0.0)
                throw std::runtime_error("degenerate centroids: clusters " + std::to_string(i) +
                                         " and " + std::to_string(j) + " coincide");
        }
    }

    std::vector<double> diam(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) diam[static_cast<std::size_t>(i)] = cluster_diameter(p, i);

    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        double worst = 0.0;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            const double ratio =
                (diam[static_cast<std::size_t>(i)] + diam[static_cast<std::size_t>(j)]) /
                euclidean(p.centroid(i), p.centroid(j));
            worst = std::max(worst, ratio);
        }
        sum += worst;
    }
    return sum / static_cast<double>(k);
}

double silhouette_index(const ClusterPartition& p) {
    if (p.k() < 2) throw std::invalid_argument("silhouette_index requires k >= 2");
    if (p.n() < 2) throw std::invalid_argument("silhouette_index requires n >= 2");

    double sum = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        const int own = p.label_of(i);
        const auto& own_members = p.cluster_members(own);

        double a = 0.0;
        if (own_members.size() > 1) {
            for (std::size_t idx : own_members) {
                if (idx != i) a += euclidean(p.points()[i], p.points()[idx]);
            }
            a /= static_cast<double>(own_members.size() - 1);
        }

        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < p.k(); ++c) {
            if (c == own) continue;
            const auto& members = p.cluster_members(c);
            double mean = 0.0;
            for (std::size_t idx : members) mean += euclidean(p.points()[i], p.points()[idx]);
            mean /= static_cast<double>(members.size());
            b = std::min(b, mean);
        }

        const double denom = std::max(a, b);
        sum += denom == 0.0 ? 0.0 : (b - a) / denom;
    }
    return sum / static_cast<double>(p.n());
}

ValidationReport validation_report(const ClusterPartition& p) {
    ValidationReport r;
    r.k = p.k();
    r.n = p.n();
    r.per_cluster_diameter.reserve(static_cast<std::size_t>(p.k()));
    for (int c = 0; c < p.k(); ++c) r.per_cluster_diameter.push_back(cluster_diameter(p, c));
    r.davies_bouldin = davies_bouldin_index(p);
    r.silhouette = silhouette_index(p);
    return r;
}

}  // namespace bothound
