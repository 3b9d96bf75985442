#include "bfpm/partition.hpp"

#include <array>
#include <cmath>

namespace bfpm {

namespace {

bool finite(double v) { return std::isfinite(v); }

void check_entries(const Matrix& u, double tol, bool binary, std::vector<Violation>& out) {
    for (std::size_t i = 0; i < u.rows(); ++i) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            double v = u(i, j);
            if (!finite(v)) {
                out.push_back({"entry_finite", (std::ptrdiff_t)i, (std::ptrdiff_t)j, v});
                continue;
            }
            if (v < -tol || v > 1.0 + tol)
                out.push_back({"entry_range", (std::ptrdiff_t)i, (std::ptrdiff_t)j, v});
            else if (binary && std::fabs(v) > tol && std::fabs(v - 1.0) > tol)
                out.push_back({"entry_binary", (std::ptrdiff_t)i, (std::ptrdiff_t)j, v});
        }
    }
}

}  // namespace

PartitionClassReport validate_partition(const PartitionMatrix& partition, double tol) {
    const Matrix& u = partition.values;
    PartitionClassReport report;
    report.class_tested = partition.partition_class;
    const auto cls = partition.partition_class;
    const double n = static_cast<double>(u.cols());

    check_entries(u, tol, cls == PartitionClass::Crisp, report.violations);

    for (std::size_t j = 0; j < u.cols(); ++j) {
        double sum = 0.0, max = 0.0;
        for (std::size_t i = 0; i < u.rows(); ++i) {
            sum += u(i, j);
            if (u(i, j) > max) max = u(i, j);
        }
        switch (cls) {
            case PartitionClass::Crisp:
            case PartitionClass::Fuzzy:
                if (std::fabs(sum - 1.0) > tol)
                    report.violations.push_back({"column_sum", -1, (std::ptrdiff_t)j, sum});
                break;
            case PartitionClass::Possibilistic:
                if (!(max > 0.0))
                    report.violations.push_back({"column_max", -1, (std::ptrdiff_t)j, max});
                break;
            case PartitionClass::Bfpm: {
                double mean = sum / static_cast<double>(u.rows());
                if (!(mean > 0.0) || mean > 1.0 + tol)
                    report.violations.push_back({"column_mean", -1, (std::ptrdiff_t)j, mean});
                break;
            }
        }
    }

    for (std::size_t i = 0; i < u.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < u.cols(); ++j) sum += u(i, j);
        bool strict_upper = cls == PartitionClass::Crisp || cls == PartitionClass::Fuzzy;
        bool bad = strict_upper ? (!(sum > 0.0) || sum >= n) : (!(sum > 0.0) || sum > n + tol);
        if (bad) report.violations.push_back({"row_sum", (std::ptrdiff_t)i, -1, sum});
    }

    report.satisfied = report.violations.empty();
    return report;
}

std::set<PartitionClass> class_hierarchy_check(const PartitionMatrix& partition) {
    std::set<PartitionClass> satisfied;
    for (auto cls : {PartitionClass::Crisp, PartitionClass::Fuzzy, PartitionClass::Possibilistic,
                     PartitionClass::Bfpm}) {
        PartitionMatrix probe{partition.values, cls};
        if (validate_partition(probe).satisfied) satisfied.insert(cls);
    }
    return satisfied;
}

double static_membership(double distance, double d_delta) {
    if (distance < 0.0) throw ComputeError("partition", "negative distance");
    if (!(d_delta > 0.0)) throw ComputeError("partition", "support radius must be positive");
    if (distance == 0.0) return 1.0;
    if (distance <= d_delta) return 1.0 - distance / d_delta;
    return 0.0;
}

PartitionMatrix assign_static(const Matrix& distances, double d_delta, PartitionClass cls) {
    if (distances.rows() == 0 || distances.cols() == 0)
        throw ComputeError("partition", "empty distance matrix");

    PartitionMatrix result{Matrix(distances.rows(), distances.cols()), cls};
    Matrix& u = result.values;

    if (cls == PartitionClass::Crisp) {
        for (std::size_t j = 0; j < distances.cols(); ++j) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < distances.rows(); ++i)
                if (distances(i, j) < distances(best, j)) best = i;
            u(best, j) = 1.0;
        }
        return result;
    }

    for (std::size_t i = 0; i < distances.rows(); ++i)
        for (std::size_t j = 0; j < distances.cols(); ++j)
            u(i, j) = static_membership(distances(i, j), d_delta);

    if (cls == PartitionClass::Fuzzy) {
        // The unit mass splits evenly across the clusters whose support
        // contains the object: two supporting lines give 0.5 each, c give
        // 1/c, regardless of how deep inside each support the object sits.
        for (std::size_t j = 0; j < distances.cols(); ++j) {
            std::size_t supports = 0;
            for (std::size_t i = 0; i < u.rows(); ++i)
                if (u(i, j) > 0.0) ++supports;
            if (supports == 0)
                throw ComputeError("partition", "object outside all supports (object " +
                                                    std::to_string(j) + ")");
            double share = 1.0 / static_cast<double>(supports);
            for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = u(i, j) > 0.0 ? share : 0.0;
        }
    }
    return result;
}

CrossingLines generate_crossing_lines(const Matrix& coefficients, std::size_t points_per_line,
                                      double spacing) {
    if (coefficients.rows() == 0 || coefficients.cols() != 2)
        throw ComputeError("partition", "coefficients must be lines x 2");
    if (points_per_line % 2 == 0 || points_per_line == 0)
        throw ComputeError("partition", "points_per_line must be odd");
    if (!(spacing > 0.0)) throw ComputeError("partition", "spacing must be positive");

    const std::size_t lines = coefficients.rows();
    const std::size_t half = (points_per_line - 1) / 2;
    const std::size_t n = lines * points_per_line;

    Dataset ds;
    ds.objects = Matrix(n, 2);
    ds.feature_names = {"x1", "x2"};
    ds.labels.resize(n);

    std::vector<std::array<double, 2>> dirs(lines);
    for (std::size_t l = 0; l < lines; ++l) {
        double a = coefficients(l, 0), b = coefficients(l, 1);
        double norm = std::hypot(a, b);
        if (norm == 0.0) throw ComputeError("partition", "degenerate line " + std::to_string(l));
        // Direction along the line a*x1 + b*x2 = 0, oriented so the first
        // nonzero coordinate is positive, which fixes the sample order.
        double dx = -b / norm, dy = a / norm;
        if (dx < 0.0 || (dx == 0.0 && dy < 0.0)) {
            dx = -dx;
            dy = -dy;
        }
        dirs[l] = {dx, dy};
    }

    for (std::size_t l = 0; l < lines; ++l) {
        std::string name = lines <= 26 ? std::string(1, char('A' + l)) : "L" + std::to_string(l);
        for (std::size_t p = 0; p < points_per_line; ++p) {
            double t = (static_cast<double>(p) - static_cast<double>(half)) * spacing;
            std::size_t row = l * points_per_line + p;
            // + 0.0 rewrites the -0.0 that t * 0 can produce, so coordinates
            // print without a stray sign.
            ds.objects(row, 0) = t * dirs[l][0] + 0.0;
            ds.objects(row, 1) = t * dirs[l][1] + 0.0;
            ds.labels[row] = name;
        }
    }

    Matrix dist(lines, n);
    for (std::size_t l = 0; l < lines; ++l) {
        double a = coefficients(l, 0), b = coefficients(l, 1);
        double norm = std::hypot(a, b);
        for (std::size_t j = 0; j < n; ++j)
            dist(l, j) = std::fabs(a * ds.objects(j, 0) + b * ds.objects(j, 1)) / norm;
    }
    return {std::move(ds), std::move(dist)};
}

}  // namespace bfpm
