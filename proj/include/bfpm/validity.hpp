#pragma once

#include <optional>
#include <string>

#include "bfpm/core.hpp"

namespace bfpm {

// Readings for the two index details the source formulas leave ambiguous.
// Defaults are the normative choices; the alternatives are kept selectable
// for comparison runs.
enum class CsPrototypeGap { Nearest, Farthest };
enum class GSeparationWeight { ObjectPeak, ClusterPeak };

struct ValidityOptions {
    CsPrototypeGap cs_gap = CsPrototypeGap::Nearest;
    GSeparationWeight g_weight = GSeparationWeight::ObjectPeak;
};

// Partition coefficient, (1/n) sum_ij u_ij^2. In [1/c, 1] for fuzzy
// partitions; higher means crisper.
double vpc(const PartitionMatrix& partition);

// Partition entropy, -(1/n) sum_ij u_ij ln u_ij with 0 ln 0 = 0. In
// [0, ln c] for fuzzy partitions; lower means crisper.
double vpe(const PartitionMatrix& partition);

// Davies-Bouldin: mean over clusters of max_{j != i} (e_i + e_j) / D_ij,
// where e_i is the mean squared member-to-prototype distance of hardened
// cluster i and D_ij the prototype-to-prototype distance. Lower is better.
// Errors: fewer than two clusters, an empty hardened cluster, coincident
// prototypes.
double db_index(const Dataset& dataset, const PartitionMatrix& partition,
                const Prototypes& prototypes);

// CS index: sum over clusters of the mean farthest-member distance, over the
// sum of each prototype's gap to the other prototypes (nearest by default).
// Lower is better. Same error conditions as db_index.
double cs_index(const Dataset& dataset, const PartitionMatrix& partition,
                const Prototypes& prototypes, const ValidityOptions& options = {});

// Separation/compactness ratio G = D / C over squared object distances: D
// weights each ordered pair by the smaller of the two objects' peak
// memberships, C averages pairs' shared membership minima within each
// cluster. Higher is better. Errors when the compactness term vanishes
// (e.g. fully crisp singleton pairs) or n < 2.
double g_index(const Dataset& dataset, const PartitionMatrix& partition,
               const ValidityOptions& options = {});

// Value or the module-qualified error message that prevented it.
struct IndexValue {
    std::optional<double> value;
    std::string error;
};

// All five indices, each independently computed; an index that errors leaves
// its value empty and carries the message instead of failing the bundle.
struct ValidityReport {
    IndexValue vpc;
    IndexValue vpe;
    IndexValue db;
    IndexValue cs;
    IndexValue g;
};

ValidityReport validity_report(const Dataset& dataset, const PartitionMatrix& partition,
                               const Prototypes& prototypes, const ValidityOptions& options = {});

}  // namespace bfpm
