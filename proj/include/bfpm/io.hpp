#pragma once

#include <string>
#include <vector>

#include "bfpm/core.hpp"

namespace bfpm {

// label_column may be a header name or a 0-based column index (as text);
// empty means no labels.
struct CsvSpec {
    std::string path;
    bool has_header = true;
    std::string label_column;
    char delimiter = ',';
};

Dataset load_csv(const CsvSpec& spec);

// Per-feature min-max scaling to [0, 1]; constant features map to 0.
Dataset normalize_min_max(const Dataset& dataset);

// Shortest round-trippable decimal with the given significant digits.
std::string format_sig(double value, int digits = 12);
double round_sig(double value, int digits = 12);

// Membership CSV layout: header "object,cluster_0,...", one row per object.
void write_membership_csv(const PartitionMatrix& partition, const std::string& path);
PartitionMatrix read_membership_csv(const std::string& path,
                                    PartitionClass cls = PartitionClass::Bfpm);

// Prototype CSV layout: header "cluster,<feature names>", one row per cluster.
void write_prototypes_csv(const Prototypes& prototypes,
                          const std::vector<std::string>& feature_names,
                          const std::string& path);
Prototypes read_prototypes_csv(const std::string& path);

}  // namespace bfpm
