#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bfpm/core.hpp"
#include "bfpm/distance.hpp"

namespace bfpm {

struct RunConfig {
    Method method = Method::Bfpm;
    std::size_t clusters = 2;
    double fuzzifier = 2.0;  // m > 1; ignored by CrispKMeans
    double epsilon = 1e-6;   // threshold on max_k ||V_k_new - V_k_old||^2
    std::size_t max_iter = 300;
    DistanceSpec distance = DistanceSpec::minkowski(2.0);
    std::uint64_t seed = 1;
    std::size_t restarts = 10;
};

struct RunResult {
    PartitionMatrix partition;
    Prototypes prototypes;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // J_m per iteration; empty for CrispKMeans
    std::uint64_t seed_used = 0;          // restart seed that won
};

// Snapshot passed to an observer once per iteration, after the prototype
// update and the membership refresh; references are valid only during the
// callback. max_proto_shift is max_k ||V_k_new - V_k_old||^2.
struct IterationState {
    const PartitionMatrix& partition;
    const Prototypes& prototypes;
    std::size_t iteration;
    double max_proto_shift;
};

using IterationObserver = std::function<void(const IterationState&)>;

// Forgy-style seeding: a seeded shuffle of object indices, keeping the first
// c pairwise-distinct rows as prototypes. Same seed, same result.
Prototypes initialize_prototypes(const Dataset& dataset, std::size_t clusters,
                                 std::uint64_t seed);

// u_ij = [sum_k (d_ij / d_kj)^(2/(m-1))]^(-1/m) from a clusters x objects
// distance matrix. Zero distances take membership 1 in those clusters.
// Column means always land in (0, 1]: every column satisfies the bfpm class.
PartitionMatrix bfpm_membership_update(const Matrix& distances, double m);

// Classical FCM memberships: same ratio sum without the outer -1/m root, so
// each column sums to 1. Zero distances split the column's unit mass evenly.
PartitionMatrix fcm_membership_update(const Matrix& distances, double m);

// Hard nearest-prototype assignment, ties to the lowest cluster index.
PartitionMatrix crisp_membership_update(const Matrix& distances);

// V_i = sum_j u_ij^m x_j / sum_j u_ij^m. Errors on an all-zero row.
Prototypes update_prototypes(const Dataset& dataset, const PartitionMatrix& partition,
                             double m);

// J_m = sum_i sum_j u_ij^m d(x_j, v_i)^2.
double objective(const Dataset& dataset, const PartitionMatrix& partition,
                 const Prototypes& prototypes, double m, const DistanceSpec& spec);

// Alternates membership and prototype updates from a Forgy start until the
// squared prototype shift drops to epsilon or max_iter is hit, independently
// for restarts seeds (seed, seed+1, ...), keeping the run with the lowest
// final objective (within-cluster sum of squares for CrispKMeans). A cluster
// whose membership row collapses to zero is reseeded to the object farthest
// from its nearest prototype. The observer, when given, sees every iteration
// of every restart.
RunResult run(const Dataset& dataset, const RunConfig& config,
              const IterationObserver& observer = {});

// Fraction of objects whose hardened cluster matches their label under the
// best injective cluster-to-label mapping (enumerated; max(c, labels) <= 8).
double accuracy(const PartitionMatrix& partition, const std::vector<std::string>& labels);

}  // namespace bfpm
