#include "bfpm/validity.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace bfpm {

namespace {

double sq_euclid(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) {
        double d = a[f] - b[f];
        acc += d * d;
    }
    return acc;
}

void check_sizes(const Dataset& ds, const PartitionMatrix& u) {
    if (u.size() != ds.size())
        throw ComputeError("validity", "partition and dataset sizes differ");
    if (u.size() == 0) throw ComputeError("validity", "empty partition");
}

// Hardened clusters with their member lists; errors if any cluster ends up
// empty, since the scatter terms below are means over members.
std::vector<std::vector<std::size_t>> hardened_members(const PartitionMatrix& u) {
    auto assigned = hardened_assignment(u);
    std::vector<std::vector<std::size_t>> members(u.clusters());
    for (std::size_t j = 0; j < assigned.size(); ++j) members[assigned[j]].push_back(j);
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i].empty())
            throw ComputeError("validity", "empty cluster " + std::to_string(i) +
                                               " after hardening");
    return members;
}

Matrix prototype_gaps(const Prototypes& v) {
    Matrix d(v.clusters(), v.clusters());
    for (std::size_t i = 0; i < v.clusters(); ++i)
        for (std::size_t k = i + 1; k < v.clusters(); ++k) {
            double dist = std::sqrt(sq_euclid(v.centers.row(i), v.centers.row(k)));
            if (dist == 0.0)
                throw ComputeError("validity", "degenerate prototypes " + std::to_string(i) +
                                                   " and " + std::to_string(k));
            d(i, k) = d(k, i) = dist;
        }
    return d;
}

}  // namespace

double vpc(const PartitionMatrix& partition) {
    const Matrix& u = partition.values;
    if (u.cols() == 0) throw ComputeError("validity", "empty partition");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) acc += u(i, j) * u(i, j);
    return acc / static_cast<double>(u.cols());
}

double vpe(const PartitionMatrix& partition) {
    const Matrix& u = partition.values;
    if (u.cols() == 0) throw ComputeError("validity", "empty partition");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) {
            double v = u(i, j);
            if (v > 0.0) acc += v * std::log(v);
        }
    return -acc / static_cast<double>(u.cols()) + 0.0;  // avoid -0 for crisp input
}

double db_index(const Dataset& dataset, const PartitionMatrix& partition,
                const Prototypes& prototypes) {
    check_sizes(dataset, partition);
    const std::size_t c = partition.clusters();
    if (c < 2) throw ComputeError("validity", "at least two clusters required");

    auto members = hardened_members(partition);
    Matrix gaps = prototype_gaps(prototypes);

    // e_i: mean squared distance of cluster i's members to its prototype.
    std::vector<double> scatter(c, 0.0);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j : members[i])
            scatter[i] += sq_euclid(dataset.objects.row(j), prototypes.centers.row(i));
        scatter[i] /= static_cast<double>(members[i].size());
    }

    double total = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        double worst = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            if (k == i) continue;
            worst = std::max(worst, (scatter[i] + scatter[k]) / gaps(i, k));
        }
        total += worst;
    }
    return total / static_cast<double>(c);
}

double cs_index(const Dataset& dataset, const PartitionMatrix& partition,
                const Prototypes& prototypes, const ValidityOptions& options) {
    check_sizes(dataset, partition);
    const std::size_t c = partition.clusters();
    if (c < 2) throw ComputeError("validity", "at least two clusters required");

    auto members = hardened_members(partition);
    Matrix gaps = prototype_gaps(prototypes);

    double numer = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        double mean_span = 0.0;
        for (std::size_t j : members[i]) {
            double farthest = 0.0;
            for (std::size_t k : members[i])
                farthest = std::max(
                    farthest, std::sqrt(sq_euclid(dataset.objects.row(j),
                                                  dataset.objects.row(k))));
            mean_span += farthest;
        }
        numer += mean_span / static_cast<double>(members[i].size());
    }

    double denom = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        double pick = options.cs_gap == CsPrototypeGap::Nearest
                          ? std::numeric_limits<double>::infinity()
                          : 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            if (k == i) continue;
            pick = options.cs_gap == CsPrototypeGap::Nearest ? std::min(pick, gaps(i, k))
                                                             : std::max(pick, gaps(i, k));
        }
        denom += pick;
    }
    if (denom == 0.0) throw ComputeError("validity", "degenerate prototypes");
    return numer / denom;
}

double g_index(const Dataset& dataset, const PartitionMatrix& partition,
               const ValidityOptions& options) {
    check_sizes(dataset, partition);
    const Matrix& u = partition.values;
    const std::size_t n = u.cols();
    const std::size_t c = u.rows();
    if (n < 2) throw ComputeError("validity", "degenerate partition");

    // Peak membership per object; under the ClusterPeak reading the weight
    // is the peak of the object's hardened cluster row instead.
    auto assigned = hardened_assignment(partition);
    std::vector<double> peak(n, 0.0);
    if (options.g_weight == GSeparationWeight::ObjectPeak) {
        for (std::size_t j = 0; j < n; ++j) peak[j] = u(assigned[j], j);
    } else {
        std::vector<double> row_peak(c, 0.0);
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < n; ++j) row_peak[i] = std::max(row_peak[i], u(i, j));
        for (std::size_t j = 0; j < n; ++j) peak[j] = row_peak[assigned[j]];
    }

    double separation = 0.0;  // (1/n^2) sum over ordered pairs of d^2 * min(peaks)
    double compact = 0.0;     // pair-mean of per-cluster min membership mass
    for (std::size_t j1 = 0; j1 < n; ++j1) {
        for (std::size_t j2 = j1 + 1; j2 < n; ++j2) {
            double d2 = sq_euclid(dataset.objects.row(j1), dataset.objects.row(j2));
            separation += 2.0 * d2 * std::min(peak[j1], peak[j2]);
            double shared = 0.0;
            for (std::size_t i = 0; i < c; ++i) shared += std::min(u(i, j1), u(i, j2));
            compact += d2 * shared;
        }
    }
    separation /= static_cast<double>(n) * static_cast<double>(n);
    compact *= 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    if (compact == 0.0) throw ComputeError("validity", "degenerate partition");
    return separation / compact;
}

ValidityReport validity_report(const Dataset& dataset, const PartitionMatrix& partition,
                               const Prototypes& prototypes, const ValidityOptions& options) {
    ValidityReport report;
    auto guard = [](IndexValue& slot, auto&& fn) {
        try {
            slot.value = fn();
        } catch (const Error& e) {
            slot.error = e.what();
        }
    };
    guard(report.vpc, [&] { return vpc(partition); });
    guard(report.vpe, [&] { return vpe(partition); });
    guard(report.db, [&] { return db_index(dataset, partition, prototypes); });
    guard(report.cs, [&] { return cs_index(dataset, partition, prototypes, options); });
    guard(report.g, [&] { return g_index(dataset, partition, options); });
    return report;
}

}  // namespace bfpm
