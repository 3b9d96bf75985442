#pragma once

#include <cstddef>
#include <vector>

#include "bfpm/core.hpp"

namespace bfpm {

// Mobility snapshot for one object: where it sits, the strongest competing
// cluster, and how close the two memberships are.
struct MovementRecord {
    std::size_t object_index = 0;
    std::size_t assigned_cluster = 0;
    std::size_t runner_up_cluster = 0;
    double u_assigned = 0.0;
    double u_runner_up = 0.0;
    double gap = 0.0;  // u_assigned - u_runner_up
    bool critical = false;
};

struct MovementReport {
    std::vector<MovementRecord> records;  // one per object, in object order
    double threshold = 0.5;
    std::size_t critical_count = 0;
    std::vector<std::size_t> critical_per_cluster;  // by assigned cluster
};

// Flags objects whose runner-up membership reaches the threshold: strong
// candidates to migrate under a small prototype move. Ties resolve to lower
// cluster indices for both assigned and runner-up. Needs >= 2 clusters.
MovementReport movement_report(const PartitionMatrix& partition, double threshold = 0.5);

enum class MovementSort { ByIndex, ByGap };

// Paired series for plotting: objects ordered by index or ascending gap
// (least stable first), with the assigned and runner-up membership values.
struct MovementSeries {
    std::vector<std::size_t> order;
    std::vector<double> upper;  // u_assigned, following order
    std::vector<double> lower;  // u_runner_up, following order
};

MovementSeries movement_plot_data(const MovementReport& report, MovementSort sort);

}  // namespace bfpm
