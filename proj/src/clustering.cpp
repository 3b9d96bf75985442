#include "bfpm/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace bfpm {

namespace {

// Seeded Fisher-Yates with raw engine draws; std::shuffle's draw pattern is
// implementation-defined, this one reproduces everywhere.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(order[i], order[j]);
    }
    return order;
}

bool rows_equal(const Matrix& m, std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(a, c) != m(b, c)) return false;
    return true;
}

void check_soft_params(double m) {
    if (!(m > 1.0)) throw ComputeError("clustering", "fuzzifier must exceed 1");
}

// Shared column pass: writes FCM ratios (sum 1) into fcm_col, the zero-set
// rule handled by the caller through the returned zero positions.
struct ColumnRatios {
    std::vector<double> fcm;
    std::vector<std::size_t> zeros;
};

void column_ratios(const Matrix& d, std::size_t j, double m, ColumnRatios& out) {
    const std::size_t c = d.rows();
    out.fcm.assign(c, 0.0);
    out.zeros.clear();
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c; ++i) {
        double v = d(i, j);
        if (v < 0.0 || !std::isfinite(v))
            throw ComputeError("clustering", "invalid distance for object " + std::to_string(j));
        if (v == 0.0) out.zeros.push_back(i);
        if (v < dmin) dmin = v;
    }
    if (!out.zeros.empty()) return;
    const double t = 2.0 / (m - 1.0);
    double total = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        double w = std::pow(dmin / d(i, j), t);
        out.fcm[i] = w;
        total += w;
    }
    for (std::size_t i = 0; i < c; ++i) out.fcm[i] /= total;
}

Prototypes reseed_prototype(const Dataset& ds, Prototypes v, std::size_t cluster,
                            const DistanceSpec& spec) {
    // Farthest object from its nearest prototype becomes the new center.
    Matrix d = distance_matrix(ds, v, spec);
    std::size_t best = 0;
    double best_gap = -1.0;
    for (std::size_t j = 0; j < ds.size(); ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d.rows(); ++i) nearest = std::min(nearest, d(i, j));
        if (nearest > best_gap) {
            best_gap = nearest;
            best = j;
        }
    }
    for (std::size_t f = 0; f < ds.dim(); ++f) v.centers(cluster, f) = ds.objects(best, f);
    return v;
}

PartitionMatrix memberships_for(Method method, const Matrix& d, double m) {
    switch (method) {
        case Method::Bfpm: return bfpm_membership_update(d, m);
        case Method::Fcm: return fcm_membership_update(d, m);
        case Method::CrispKMeans: return crisp_membership_update(d);
    }
    throw ComputeError("clustering", "unknown method");
}

struct SingleRun {
    RunResult result;
    double score = std::numeric_limits<double>::infinity();
};

SingleRun run_single(const Dataset& ds, const RunConfig& cfg, std::uint64_t seed,
                     const IterationObserver& observer) {
    const bool soft = cfg.method != Method::CrispKMeans;
    const double m = soft ? cfg.fuzzifier : 1.0;

    Prototypes v = initialize_prototypes(ds, cfg.clusters, seed);
    PartitionMatrix u = memberships_for(cfg.method, distance_matrix(ds, v, cfg.distance), m);

    RunResult res;
    res.converged = false;
    res.seed_used = seed;

    for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
        // A membership row that summed to zero would leave its prototype
        // undefined; reseed such clusters before the update.
        for (std::size_t i = 0; i < cfg.clusters; ++i) {
            double row_sum = 0.0;
            for (std::size_t j = 0; j < ds.size(); ++j) row_sum += u.values(i, j);
            if (row_sum == 0.0) {
                v = reseed_prototype(ds, std::move(v), i, cfg.distance);
                u = memberships_for(cfg.method, distance_matrix(ds, v, cfg.distance), m);
            }
        }

        Prototypes v_new = update_prototypes(ds, u, m);
        double shift = 0.0;
        for (std::size_t i = 0; i < cfg.clusters; ++i) {
            double sq = 0.0;
            for (std::size_t f = 0; f < ds.dim(); ++f) {
                double delta = v_new.centers(i, f) - v.centers(i, f);
                sq += delta * delta;
            }
            shift = std::max(shift, sq);
        }
        v = std::move(v_new);
        u = memberships_for(cfg.method, distance_matrix(ds, v, cfg.distance), m);
        res.iterations = it;
        if (soft) res.objective_trace.push_back(objective(ds, u, v, m, cfg.distance));
        if (observer) observer(IterationState{u, v, it, shift});
        if (shift <= cfg.epsilon) {
            res.converged = true;
            break;
        }
    }

    SingleRun out;
    out.score = soft ? res.objective_trace.back() : objective(ds, u, v, 1.0, cfg.distance);
    res.partition = std::move(u);
    res.prototypes = std::move(v);
    out.result = std::move(res);
    return out;
}

}  // namespace

Prototypes initialize_prototypes(const Dataset& dataset, std::size_t clusters,
                                 std::uint64_t seed) {
    const std::size_t n = dataset.size();
    if (clusters == 0) throw ComputeError("clustering", "need at least one cluster");
    if (clusters > n) throw ComputeError("clustering", "clusters exceed objects");

    auto order = shuffled_indices(n, seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(clusters);
    for (std::size_t idx : order) {
        bool dup = false;
        for (std::size_t prev : chosen)
            if (rows_equal(dataset.objects, idx, prev)) {
                dup = true;
                break;
            }
        if (!dup) {
            chosen.push_back(idx);
            if (chosen.size() == clusters) break;
        }
    }
    if (chosen.size() < clusters)
        throw ComputeError("clustering", "too few distinct objects for " +
                                             std::to_string(clusters) + " clusters");

    Prototypes v{Matrix(clusters, dataset.dim())};
    for (std::size_t i = 0; i < clusters; ++i)
        for (std::size_t f = 0; f < dataset.dim(); ++f)
            v.centers(i, f) = dataset.objects(chosen[i], f);
    return v;
}

PartitionMatrix bfpm_membership_update(const Matrix& distances, double m) {
    check_soft_params(m);
    PartitionMatrix result{Matrix(distances.rows(), distances.cols()), PartitionClass::Bfpm};
    ColumnRatios col;
    for (std::size_t j = 0; j < distances.cols(); ++j) {
        column_ratios(distances, j, m, col);
        if (!col.zeros.empty()) {
            for (std::size_t i : col.zeros) result.values(i, j) = 1.0;
            continue;
        }
        // The ratio sum equals fcm_u^{-1}, so the -1/m root is fcm_u^{1/m}.
        for (std::size_t i = 0; i < distances.rows(); ++i)
            result.values(i, j) = std::pow(col.fcm[i], 1.0 / m);
    }
    return result;
}

PartitionMatrix fcm_membership_update(const Matrix& distances, double m) {
    check_soft_params(m);
    PartitionMatrix result{Matrix(distances.rows(), distances.cols()), PartitionClass::Fuzzy};
    ColumnRatios col;
    for (std::size_t j = 0; j < distances.cols(); ++j) {
        column_ratios(distances, j, m, col);
        if (!col.zeros.empty()) {
            double share = 1.0 / static_cast<double>(col.zeros.size());
            for (std::size_t i : col.zeros) result.values(i, j) = share;
            continue;
        }
        for (std::size_t i = 0; i < distances.rows(); ++i) result.values(i, j) = col.fcm[i];
    }
    return result;
}

PartitionMatrix crisp_membership_update(const Matrix& distances) {
    PartitionMatrix result{Matrix(distances.rows(), distances.cols()), PartitionClass::Crisp};
    for (std::size_t j = 0; j < distances.cols(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < distances.rows(); ++i)
            if (distances(i, j) < distances(best, j)) best = i;
        result.values(best, j) = 1.0;
    }
    return result;
}

Prototypes update_prototypes(const Dataset& dataset, const PartitionMatrix& partition,
                             double m) {
    const Matrix& u = partition.values;
    if (u.cols() != dataset.size())
        throw ComputeError("clustering", "partition and dataset sizes differ");
    Prototypes v{Matrix(u.rows(), dataset.dim())};
    for (std::size_t i = 0; i < u.rows(); ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < u.cols(); ++j) {
            double w = std::pow(u(i, j), m);
            total += w;
            for (std::size_t f = 0; f < dataset.dim(); ++f)
                v.centers(i, f) += w * dataset.objects(j, f);
        }
        if (total == 0.0)
            throw ComputeError("clustering", "empty cluster " + std::to_string(i));
        for (std::size_t f = 0; f < dataset.dim(); ++f) v.centers(i, f) /= total;
    }
    return v;
}

double objective(const Dataset& dataset, const PartitionMatrix& partition,
                 const Prototypes& prototypes, double m, const DistanceSpec& spec) {
    Matrix d = distance_matrix(dataset, prototypes, spec);
    double j_m = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            j_m += std::pow(partition.values(i, j), m) * d(i, j) * d(i, j);
    return j_m;
}

RunResult run(const Dataset& dataset, const RunConfig& config,
              const IterationObserver& observer) {
    if (config.clusters == 0) throw ComputeError("clustering", "need at least one cluster");
    if (config.clusters > dataset.size())
        throw ComputeError("clustering", "clusters exceed objects");
    if (config.method != Method::CrispKMeans) check_soft_params(config.fuzzifier);
    if (!(config.epsilon > 0.0)) throw ComputeError("clustering", "epsilon must be positive");
    if (config.max_iter == 0) throw ComputeError("clustering", "max_iter must be positive");
    if (config.restarts == 0) throw ComputeError("clustering", "restarts must be positive");

    SingleRun best;
    bool have_best = false;
    for (std::size_t r = 0; r < config.restarts; ++r) {
        SingleRun attempt = run_single(dataset, config, config.seed + r, observer);
        if (!have_best || attempt.score < best.score) {
            best = std::move(attempt);
            have_best = true;
        }
    }
    return std::move(best.result);
}

double accuracy(const PartitionMatrix& partition, const std::vector<std::string>& labels) {
    if (labels.empty()) throw ComputeError("clustering", "labels required for accuracy");
    if (labels.size() != partition.size())
        throw ComputeError("clustering", "labels and partition sizes differ");

    auto assigned = hardened_assignment(partition);
    std::map<std::string, std::size_t> label_ids;
    for (const auto& l : labels) label_ids.emplace(l, label_ids.size());
    // std::map iteration is sorted, so re-id labels in lexical order for a
    // deterministic contingency table.
    std::size_t next = 0;
    for (auto& [_, id] : label_ids) id = next++;

    const std::size_t c = partition.clusters();
    const std::size_t l_count = label_ids.size();
    if (std::max(c, l_count) > 8)
        throw ComputeError("clustering", "too many clusters or labels to enumerate mappings");

    std::vector<std::vector<std::size_t>> counts(c, std::vector<std::size_t>(l_count, 0));
    for (std::size_t j = 0; j < labels.size(); ++j)
        ++counts[assigned[j]][label_ids.at(labels[j])];

    // Best injective mapping from the smaller side into the larger one.
    std::size_t big = std::max(c, l_count);
    std::vector<std::size_t> perm(big);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t best = 0;
    do {
        std::size_t score = 0;
        if (c <= l_count)
            for (std::size_t i = 0; i < c; ++i) score += counts[i][perm[i]];
        else
            for (std::size_t l = 0; l < l_count; ++l) score += counts[perm[l]][l];
        best = std::max(best, score);
    } while (std::next_permutation(perm.begin(), perm.end()));

    return static_cast<double>(best) / static_cast<double>(labels.size());
}

}  // namespace bfpm
