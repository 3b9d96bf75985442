#include "bfpm/analysis.hpp"

#include <algorithm>
#include <numeric>

namespace bfpm {

MovementReport movement_report(const PartitionMatrix& partition, double threshold) {
    const Matrix& u = partition.values;
    if (u.rows() < 2)
        throw ComputeError("analysis", "movement undefined for fewer than two clusters");
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw ComputeError("analysis", "threshold must lie in [0, 1]");

    MovementReport report;
    report.threshold = threshold;
    report.critical_per_cluster.assign(u.rows(), 0);
    report.records.reserve(u.cols());

    for (std::size_t j = 0; j < u.cols(); ++j) {
        std::size_t first = 0;
        for (std::size_t i = 1; i < u.rows(); ++i)
            if (u(i, j) > u(first, j)) first = i;
        std::size_t second = first == 0 ? 1 : 0;
        for (std::size_t i = 0; i < u.rows(); ++i) {
            if (i == first) continue;
            if (u(i, j) > u(second, j)) second = i;
        }

        MovementRecord rec;
        rec.object_index = j;
        rec.assigned_cluster = first;
        rec.runner_up_cluster = second;
        rec.u_assigned = u(first, j);
        rec.u_runner_up = u(second, j);
        rec.gap = rec.u_assigned - rec.u_runner_up;
        rec.critical = rec.u_runner_up >= threshold;
        if (rec.critical) {
            ++report.critical_count;
            ++report.critical_per_cluster[first];
        }
        report.records.push_back(rec);
    }
    return report;
}

MovementSeries movement_plot_data(const MovementReport& report, MovementSort sort) {
    MovementSeries series;
    series.order.resize(report.records.size());
    std::iota(series.order.begin(), series.order.end(), std::size_t{0});
    if (sort == MovementSort::ByGap) {
        std::stable_sort(series.order.begin(), series.order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return report.records[a].gap < report.records[b].gap;
                         });
    }
    series.upper.reserve(report.records.size());
    series.lower.reserve(report.records.size());
    for (std::size_t k : series.order) {
        series.upper.push_back(report.records[k].u_assigned);
        series.lower.push_back(report.records[k].u_runner_up);
    }
    return series;
}

}  // namespace bfpm
