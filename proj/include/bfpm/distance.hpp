#pragma once

#include <span>
#include <string>
#include <string_view>

#include "bfpm/core.hpp"

namespace bfpm {

// Distance family selector, parseable from "minkowski:<k>" or
// "kernel-gaussian:<sigma>". param is the Minkowski order k (>= 1) or the
// kernel width sigma (> 0).
struct DistanceSpec {
    enum class Kind { Minkowski, KernelGaussian };

    Kind kind = Kind::Minkowski;
    double param = 2.0;

    static DistanceSpec minkowski(double k);
    static DistanceSpec kernel_gaussian(double sigma);
    static DistanceSpec parse(std::string_view text);
    std::string to_string() const;
};

// (sum_f |x_f - y_f|^k)^(1/k); k = 2 is Euclidean, k = 1 Manhattan.
double minkowski(std::span<const double> x, std::span<const double> y, double k);

// exp(-||x - y||^2 / (2 sigma^2)), in (0, 1], equal to 1 iff x == y.
double gaussian_kernel(std::span<const double> x, std::span<const double> y, double sigma);

// Induced distance 2 - 2 k(x, y); zero iff x == y, approaches 2 far apart.
double kernel_distance(std::span<const double> x, std::span<const double> y, double sigma);

double evaluate(const DistanceSpec& spec, std::span<const double> x, std::span<const double> y);

// clusters x objects matrix of evaluate(spec, prototype_i, object_j).
Matrix distance_matrix(const Dataset& dataset, const Prototypes& prototypes,
                       const DistanceSpec& spec);

}  // namespace bfpm
