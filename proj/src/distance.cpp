#include "bfpm/distance.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace bfpm {

namespace {

void check_dims(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw ComputeError("distance", "dimension mismatch: " + std::to_string(x.size()) +
                                           " vs " + std::to_string(y.size()));
}

double parse_param(std::string_view text, std::string_view whole) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw DataError("distance",
                        "unrecognized distance spec '" + std::string(whole) + "'");
    return value;
}

}  // namespace

DistanceSpec DistanceSpec::minkowski(double k) {
    if (k < 1.0) throw ComputeError("distance", "not a metric order: k = " + std::to_string(k));
    return {Kind::Minkowski, k};
}

DistanceSpec DistanceSpec::kernel_gaussian(double sigma) {
    if (!(sigma > 0.0))
        throw ComputeError("distance", "kernel width must be positive");
    return {Kind::KernelGaussian, sigma};
}

DistanceSpec DistanceSpec::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw DataError("distance", "unrecognized distance spec '" + std::string(text) + "'");
    std::string_view name = text.substr(0, colon);
    double param = parse_param(text.substr(colon + 1), text);
    if (name == "minkowski") return minkowski(param);
    if (name == "kernel-gaussian") return kernel_gaussian(param);
    throw DataError("distance", "unrecognized distance spec '" + std::string(text) + "'");
}

std::string DistanceSpec::to_string() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s:%g",
                  kind == Kind::Minkowski ? "minkowski" : "kernel-gaussian", param);
    return buf;
}

double minkowski(std::span<const double> x, std::span<const double> y, double k) {
    check_dims(x, y);
    if (k < 1.0) throw ComputeError("distance", "not a metric order: k = " + std::to_string(k));
    double acc = 0.0;
    if (k == 2.0) {
        for (std::size_t f = 0; f < x.size(); ++f) {
            double d = x[f] - y[f];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    if (k == 1.0) {
        for (std::size_t f = 0; f < x.size(); ++f) acc += std::fabs(x[f] - y[f]);
        return acc;
    }
    for (std::size_t f = 0; f < x.size(); ++f) acc += std::pow(std::fabs(x[f] - y[f]), k);
    return std::pow(acc, 1.0 / k);
}

double gaussian_kernel(std::span<const double> x, std::span<const double> y, double sigma) {
    check_dims(x, y);
    if (!(sigma > 0.0))
        throw ComputeError("distance", "kernel width must be positive");
    double sq = 0.0;
    for (std::size_t f = 0; f < x.size(); ++f) {
        double d = x[f] - y[f];
        sq += d * d;
    }
    return std::exp(-sq / (2.0 * sigma * sigma));
}

double kernel_distance(std::span<const double> x, std::span<const double> y, double sigma) {
    return 2.0 - 2.0 * gaussian_kernel(x, y, sigma);
}

double evaluate(const DistanceSpec& spec, std::span<const double> x, std::span<const double> y) {
    return spec.kind == DistanceSpec::Kind::Minkowski ? minkowski(x, y, spec.param)
                                                      : kernel_distance(x, y, spec.param);
}

Matrix distance_matrix(const Dataset& dataset, const Prototypes& prototypes,
                       const DistanceSpec& spec) {
    if (dataset.dim() != prototypes.dim())
        throw ComputeError("distance",
                           "dimension mismatch: " + std::to_string(prototypes.dim()) + " vs " +
                               std::to_string(dataset.dim()));
    Matrix d(prototypes.clusters(), dataset.size());
    for (std::size_t i = 0; i < prototypes.clusters(); ++i)
        for (std::size_t j = 0; j < dataset.size(); ++j)
            d(i, j) = evaluate(spec, prototypes.centers.row(i), dataset.objects.row(j));
    return d;
}

}  // namespace bfpm
