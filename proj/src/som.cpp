#include "bothound/som.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "bothound/errors.hpp"
#include "bothound/rng.hpp"
#include "json.hpp"

namespace bothound {

namespace {

using nlohmann::json;

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

void check_dim(const SomGrid& g, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != g.dim)
        throw std::invalid_argument("vector dimension " + std::to_string(v.size()) +
                                    " does not match grid dimension " + std::to_string(g.dim));
}

}  // namespace

void validate_som_config(const SomConfig& cfg) {
    if (cfg.rows < 1 || cfg.cols < 1)
        throw std::invalid_argument("som config: rows and cols must be positive");
    if (static_cast<std::int64_t>(cfg.rows) * cfg.cols < 2)
        throw std::invalid_argument("som config: grid needs at least two units");
    if (cfg.epochs < 1) throw std::invalid_argument("som config: epochs must be positive");
    if (cfg.initial_learning_rate <= 0.0 || cfg.initial_learning_rate > 1.0)
        throw std::invalid_argument("som config: learning rate must be in (0,1]");
    if (cfg.initial_radius <= 0.0 ||
        cfg.initial_radius > static_cast<double>(std::max(cfg.rows, cfg.cols)))
        throw std::invalid_argument("som config: radius must be in (0, max(rows, cols)]");
}

SomGrid init_grid(const SomConfig& cfg, int dim) {
    validate_som_config(cfg);
    if (dim < 1) throw std::invalid_argument("init_grid: dimension must be >= 1");

    SomGrid g;
    g.config = cfg;
    g.dim = dim;
    g.weights.resize(static_cast<std::size_t>(cfg.rows) * static_cast<std::size_t>(cfg.cols));
    Rng rng(cfg.seed);
    for (auto& unit : g.weights) {
        unit.resize(static_cast<std::size_t>(dim));
        for (double& w : unit) w = uniform_real(rng, -1.0, 1.0);
    }
    return g;
}

BmuResult best_matching_unit(const SomGrid& g, const std::vector<double>& v) {
    check_dim(g, v);
    std::size_t best = 0;
    double best_sq = squared_distance(g.weights[0], v);
    for (std::size_t i = 1; i < g.weights.size(); ++i) {
        const double sq = squared_distance(g.weights[i], v);
        if (sq < best_sq) {
            best_sq = sq;
            best = i;
        }
    }
    const int cols = g.config.cols;
    return BmuResult{GridPos{static_cast<int>(best) / cols, static_cast<int>(best) % cols},
                     std::sqrt(best_sq)};
}

void apply_som_update(SomGrid& g, const std::vector<double>& v, GridPos bmu, double alpha,
                      double sigma) {
    check_dim(g, v);
    for (int r = 0; r < g.config.rows; ++r) {
        for (int c = 0; c < g.config.cols; ++c) {
            const double dr = r - bmu.row;
            const double dc = c - bmu.col;
            const double grid_sq = dr * dr + dc * dc;
            double h;
            if (sigma <= 0.0) {
                if (grid_sq > 0.0) continue;
                h = 1.0;
            } else {
                if (grid_sq > sigma * sigma) continue;
                h = std::exp(-grid_sq / (2.0 * sigma * sigma));
            }
            auto& w = g.weights[static_cast<std::size_t>(r) *
                                    static_cast<std::size_t>(g.config.cols) +
                                static_cast<std::size_t>(c)];
            for (int k = 0; k < g.dim; ++k) {
                w[static_cast<std::size_t>(k)] +=
                    alpha * h * (v[static_cast<std::size_t>(k)] - w[static_cast<std::size_t>(k)]);
            }
        }
    }
}

SomGrid train_som(SomGrid g, const std::vector<FeatureVector>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("train_som: empty input");
    for (const auto& v : vectors) check_dim(g, v.values);

    const SomConfig& cfg = g.config;
    const double tau =
        static_cast<double>(cfg.epochs) / std::log(cfg.initial_radius + 1.0);

    // Separate stream from init_grid so retraining stays reproducible.
    Rng rng(~cfg.seed);
    std::vector<std::size_t> order(vectors.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double decay = std::exp(-static_cast<double>(epoch) / tau);
        const double alpha = cfg.initial_learning_rate * decay;
        const double sigma = cfg.initial_radius * decay;
        deterministic_shuffle(order, rng);
        for (std::size_t idx : order) {
            const auto& v = vectors[idx].values;
            const BmuResult bmu = best_matching_unit(g, v);
            apply_som_update(g, v, bmu.unit, alpha, sigma);
        }
    }
    g.trained = true;
    return g;
}

std::vector<ClusterAssignment> assign_clusters(const SomGrid& g,
                                               const std::vector<FeatureVector>& vectors) {
    if (!g.trained) throw std::runtime_error("assign_clusters: untrained grid");
    std::vector<ClusterAssignment> out;
    out.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const BmuResult bmu = best_matching_unit(g, vectors[i].values);
        out.push_back(ClusterAssignment{i, bmu.unit, bmu.distance});
    }
    return out;
}

double quantization_error(const SomGrid& g, const std::vector<FeatureVector>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("quantization_error: empty input");
    double sum = 0.0;
    for (const auto& v : vectors) sum += best_matching_unit(g, v.values).distance;
    return sum / static_cast<double>(vectors.size());
}

void save_grid(const SomGrid& g, const std::optional<FeatureScaler>& scaler,
               const std::string& path) {
    json obj;
    obj["schema_version"] = kGridSchemaVersion;
    obj["config"] = {{"rows", g.config.rows},
                     {"cols", g.config.cols},
                     {"epochs", g.config.epochs},
                     {"learning_rate", g.config.initial_learning_rate},
                     {"radius", g.config.initial_radius},
                     {"seed", g.config.seed}};
    obj["dim"] = g.dim;
    obj["trained"] = g.trained;
    obj["weights"] = g.weights;
    if (scaler) {
        obj["scaler"] = {{"mean", scaler->mean}, {"stddev", scaler->stddev}};
    }

    std::ofstream out(path);
    if (!out) throw InputError("cannot write grid file: " + path);
    out << obj.dump(2) << "\n";
}

SavedGrid load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open grid file: " + path);
    json obj;
    try {
        in >> obj;
    } catch (const json::parse_error& e) {
        throw InputError(std::string("corrupt grid file: ") + e.what());
    }

    SavedGrid out;
    try {
        const int version = obj.at("schema_version").get<int>();
        if (version != kGridSchemaVersion)
            throw InputError("unsupported grid schema version " + std::to_string(version));
        const json& c = obj.at("config");
        out.grid.config.rows = c.at("rows").get<int>();
        out.grid.config.cols = c.at("cols").get<int>();
        out.grid.config.epochs = c.at("epochs").get<int>();
        out.grid.config.initial_learning_rate = c.at("learning_rate").get<double>();
        out.grid.config.initial_radius = c.at("radius").get<double>();
        out.grid.config.seed = c.at("seed").get<std::uint64_t>();
        out.grid.dim = obj.at("dim").get<int>();
        out.grid.trained = obj.at("trained").get<bool>();
        out.grid.weights = obj.at("weights").get<std::vector<std::vector<double>>>();
        if (obj.contains("scaler")) {
            FeatureScaler s;
            s.mean = obj["scaler"].at("mean").get<std::vector<double>>();
            s.stddev = obj["scaler"].at("stddev").get<std::vector<double>>();
            out.scaler = std::move(s);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("corrupt grid file: ") + e.what());
    }

    validate_som_config(out.grid.config);
    const std::size_t expected =
        static_cast<std::size_t>(out.grid.config.rows) *
        static_cast<std::size_t>(out.grid.config.cols);
    if (out.grid.weights.size() != expected)
        throw InputError("corrupt grid file: unit count mismatch");
    for (const auto& unit : out.grid.weights) {
        if (static_cast<int>(unit.size()) != out.grid.dim)
            throw InputError("corrupt grid file: unit dimension mismatch");
        for (double w : unit) {
            if (!std::isfinite(w)) throw InputError("corrupt grid file: non-finite weight");
        }
    }
    return out;
}

}  // namespace bothound
