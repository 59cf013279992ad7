#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bothound/features.hpp"

namespace bothound {

inline constexpr int kGridSchemaVersion = 1;

struct SomConfig {
    int rows = 8;
    int cols = 8;
    int epochs = 50;
    double initial_learning_rate = 0.3;
    double initial_radius = 4.0;
    std::uint64_t seed = 1;
};

/// Throws std::invalid_argument when the config violates its contract
/// (rows*cols >= 2, learning rate in (0,1], 0 < radius <= max(rows,cols)).
void validate_som_config(const SomConfig& cfg);

struct GridPos {
    int row = 0;
    int col = 0;

    bool operator==(const GridPos&) const = default;
};

/// 2-D lattice of unit weight vectors; each unit is one traffic cluster.
struct SomGrid {
    SomConfig config;
    int dim = 0;
    bool trained = false;
    std::vector<std::vector<double>> weights;  // row-major, rows*cols entries

    const std::vector<double>& unit(int row, int col) const {
        return weights[static_cast<std::size_t>(row) * static_cast<std::size_t>(config.cols) +
                       static_cast<std::size_t>(col)];
    }
    std::size_t unit_count() const { return weights.size(); }
};

struct BmuResult {
    GridPos unit;
    double distance = 0.0;
};

struct ClusterAssignment {
    std::size_t record_id = 0;
    GridPos unit;
    double distance = 0.0;
};

/// Unit weights drawn uniformly from [-1,1] per component; deterministic
/// per config seed.
SomGrid init_grid(const SomConfig& cfg, int dim);

/// Unit with minimal Euclidean distance to v; ties go to the smallest
/// (row, col) in row-major order.
BmuResult best_matching_unit(const SomGrid& g, const std::vector<double>& v);

/// One online update: every unit within grid-coordinate Euclidean distance
/// sigma of the BMU moves toward v with Gaussian falloff
/// exp(-d^2 / (2 sigma^2)). sigma == 0 moves only the BMU at full alpha.
void apply_som_update(SomGrid& g, const std::vector<double>& v, GridPos bmu, double alpha,
                      double sigma);

/// Classic online SOM training. Learning rate and radius decay as
/// value * exp(-epoch / tau) with tau = epochs / ln(radius0 + 1); sample
/// order reshuffles each epoch from the seeded generator.
SomGrid train_som(SomGrid g, const std::vector<FeatureVector>& vectors);

std::vector<ClusterAssignment> assign_clusters(const SomGrid& g,
                                               const std::vector<FeatureVector>& vectors);

/// Mean BMU distance across vectors.
double quantization_error(const SomGrid& g, const std::vector<FeatureVector>& vectors);

/// Grid persistence. The optional scaler travels with the grid so saved
/// maps keep the normalization they were trained under.
struct SavedGrid {
    SomGrid grid;
    std::optional<FeatureScaler> scaler;
};

void save_grid(const SomGrid& g, const std::optional<FeatureScaler>& scaler,
               const std::string& path);
SavedGrid load_grid(const std::string& path);

}  // namespace bothound
