#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "bfpm/core.hpp"

namespace bfpm {

// One violated constraint. cluster/object are -1 when the constraint spans a
// whole column/row (e.g. a column sum names the object but no cluster).
struct Violation {
    std::string constraint;
    std::ptrdiff_t cluster = -1;
    std::ptrdiff_t object = -1;
    double value = 0.0;
};

struct PartitionClassReport {
    PartitionClass class_tested = PartitionClass::Bfpm;
    bool satisfied = false;
    std::vector<Violation> violations;
};

// Checks the constraint family named by partition.partition_class:
//   crisp          entries in {0,1}, column sums 1, row sums in (0, n)
//   fuzzy          entries in [0,1], column sums 1, row sums in (0, n)
//   possibilistic  entries in [0,1], column max > 0, row sums in (0, n]
//   bfpm           entries in [0,1], column means in (0, 1], row sums in (0, n]
// Row sums strictly below n for crisp/fuzzy follow the classical partition
// sets (proper subsets), which makes those families empty for c = 1.
PartitionClassReport validate_partition(const PartitionMatrix& partition, double tol = 1e-9);

// Every class whose constraints the values satisfy, ignoring the stored tag.
std::set<PartitionClass> class_hierarchy_check(const PartitionMatrix& partition);

// Piecewise-linear membership against a support radius d_delta:
// 1 at distance 0, falling linearly to 0 at d_delta, 0 beyond.
double static_membership(double distance, double d_delta);

// Builds a partition from a clusters x objects distance matrix without any
// iteration. Bfpm applies static_membership as is; Fuzzy splits each
// object's unit mass evenly across the clusters whose support radius covers
// it (error if a column is entirely outside support); Crisp assigns each
// object to its argmin-distance cluster, ties to the lowest index. Columns
// outside all supports are legal for Bfpm and surface later as validation
// failures (the must-belong condition).
PartitionMatrix assign_static(const Matrix& distances, double d_delta, PartitionClass cls);

struct CrossingLines {
    Dataset dataset;        // all lines' samples concatenated, labels = line names
    Matrix line_distances;  // lines x objects, point-to-line Euclidean distance
};

// Samples points_per_line points along each homogeneous line a . x = 0 in the
// plane (coefficients is lines x 2), at offsets t * spacing for
// t = -(h)..h with h = (points_per_line - 1) / 2, so the origin is always
// included and shared by all lines. Point-to-line distance is |a . x| / |a|.
CrossingLines generate_crossing_lines(const Matrix& coefficients, std::size_t points_per_line,
                                      double spacing);

}  // namespace bfpm
