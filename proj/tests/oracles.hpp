#pragma once

// Naive loop transcriptions of the formulas under test. These deliberately
// avoid the library's computation paths (no shared ratios, no hardening
// helper) so agreement is meaningful.

#include <cmath>
#include <cstddef>
#include <vector>

#include "bfpm/core.hpp"

namespace oracle {

inline double euclid(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) acc += (a[f] - b[f]) * (a[f] - b[f]);
    return std::sqrt(acc);
}

inline double minkowski(std::span<const double> a, std::span<const double> b, double k) {
    double acc = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) acc += std::pow(std::fabs(a[f] - b[f]), k);
    return std::pow(acc, 1.0 / k);
}

// u_i = [sum_k (d_i/d_k)^(2/(m-1))]^(-1/m), zero distances owning the column.
inline std::vector<double> bfpm_column(const std::vector<double>& d, double m) {
    std::vector<double> u(d.size(), 0.0);
    bool any_zero = false;
    for (double v : d) any_zero |= v == 0.0;
    if (any_zero) {
        for (std::size_t i = 0; i < d.size(); ++i) u[i] = d[i] == 0.0 ? 1.0 : 0.0;
        return u;
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k)
            s += std::pow(d[i] / d[k], 2.0 / (m - 1.0));
        u[i] = std::pow(s, -1.0 / m);
    }
    return u;
}

// Classical FCM column: u_i = 1 / sum_k (d_i/d_k)^(2/(m-1)).
inline std::vector<double> fcm_column(const std::vector<double>& d, double m) {
    std::vector<double> u(d.size(), 0.0);
    std::size_t zeros = 0;
    for (double v : d) zeros += v == 0.0;
    if (zeros > 0) {
        for (std::size_t i = 0; i < d.size(); ++i)
            u[i] = d[i] == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
        return u;
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k)
            s += std::pow(d[i] / d[k], 2.0 / (m - 1.0));
        u[i] = 1.0 / s;
    }
    return u;
}

inline std::vector<std::size_t> argmax_assignment(const bfpm::Matrix& u) {
    std::vector<std::size_t> a(u.cols(), 0);
    for (std::size_t j = 0; j < u.cols(); ++j)
        for (std::size_t i = 1; i < u.rows(); ++i)
            if (u(i, j) > u(a[j], j)) a[j] = i;
    return a;
}

inline double vpc(const bfpm::Matrix& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) s += u(i, j) * u(i, j);
    return s / static_cast<double>(u.cols());
}

inline double vpe(const bfpm::Matrix& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            if (u(i, j) > 0.0) s += u(i, j) * std::log(u(i, j));
    return -s / static_cast<double>(u.cols());
}

inline double db(const bfpm::Matrix& x, const bfpm::Matrix& u, const bfpm::Matrix& v) {
    auto assigned = argmax_assignment(u);
    const std::size_t c = u.rows();
    std::vector<double> e(c, 0.0);
    std::vector<std::size_t> count(c, 0);
    for (std::size_t j = 0; j < x.rows(); ++j) {
        std::size_t i = assigned[j];
        double d = euclid(x.row(j), v.row(i));
        e[i] += d * d;
        ++count[i];
    }
    for (std::size_t i = 0; i < c; ++i) e[i] /= static_cast<double>(count[i]);
    double total = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        double worst = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            if (k == i) continue;
            worst = std::max(worst, (e[i] + e[k]) / euclid(v.row(i), v.row(k)));
        }
        total += worst;
    }
    return total / static_cast<double>(c);
}

inline double cs(const bfpm::Matrix& x, const bfpm::Matrix& u, const bfpm::Matrix& v,
                 bool nearest_gap = true) {
    auto assigned = argmax_assignment(u);
    const std::size_t c = u.rows();
    double numer = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        double mean_span = 0.0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < x.rows(); ++j) {
            if (assigned[j] != i) continue;
            double far = 0.0;
            for (std::size_t k = 0; k < x.rows(); ++k)
                if (assigned[k] == i) far = std::max(far, euclid(x.row(j), x.row(k)));
            mean_span += far;
            ++count;
        }
        numer += mean_span / static_cast<double>(count);
    }
    double denom = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        double pick = nearest_gap ? 1e300 : 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            if (k == i) continue;
            double d = euclid(v.row(i), v.row(k));
            pick = nearest_gap ? std::min(pick, d) : std::max(pick, d);
        }
        denom += pick;
    }
    return numer / denom;
}

inline double g(const bfpm::Matrix& x, const bfpm::Matrix& u) {
    const std::size_t n = u.cols();
    const std::size_t c = u.rows();
    std::vector<double> peak(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < c; ++i) peak[j] = std::max(peak[j], u(i, j));

    double sep = 0.0;
    for (std::size_t j1 = 0; j1 < n; ++j1)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
            double d = euclid(x.row(j1), x.row(j2));
            sep += d * d * std::min(peak[j1], peak[j2]);
        }
    sep /= static_cast<double>(n) * static_cast<double>(n);

    double comp = 0.0;
    for (std::size_t j1 = 0; j1 < n; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < n; ++j2) {
            double d = euclid(x.row(j1), x.row(j2));
            for (std::size_t i = 0; i < c; ++i)
                comp += d * d * std::min(u(i, j1), u(i, j2));
        }
    comp *= 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    return sep / comp;
}

}  // namespace oracle
