#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfpm {

// Module-qualified errors. DataError covers malformed input (files, specs),
// ComputeError covers violated preconditions and degenerate numerics.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}
    const std::string& module() const { return module_; }

private:
    std::string module_;
};

class DataError : public Error {
public:
    using Error::Error;
};

class ComputeError : public Error {
public:
    using Error::Error;
};

// Dense row-major matrix of doubles. Deliberately minimal: the algorithms in
// this library are all explicit loops, so only element access is needed.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class PartitionClass { Crisp, Fuzzy, Possibilistic, Bfpm };
enum class Method { Bfpm, Fcm, CrispKMeans };

std::string to_string(PartitionClass cls);
std::string to_string(Method method);
PartitionClass partition_class_from_string(const std::string& text);
Method method_from_string(const std::string& text);

// n objects with d features each. labels, when present, carry one string per
// object (class names for benchmarks, line names for generated geometry).
struct Dataset {
    Matrix objects;  // n x d
    std::vector<std::string> feature_names;  // empty or size d
    std::vector<std::string> labels;         // empty or size n
    bool normalized = false;

    std::size_t size() const { return objects.rows(); }
    std::size_t dim() const { return objects.cols(); }
    bool has_labels() const { return !labels.empty(); }
};

// Membership matrix, clusters x objects: values(i, j) = u_ij, the membership
// of object j in cluster i. partition_class records which constraint family
// the producer intended; validation is separate (see partition.hpp).
struct PartitionMatrix {
    Matrix values;  // c x n
    PartitionClass partition_class = PartitionClass::Bfpm;

    std::size_t clusters() const { return values.rows(); }
    std::size_t size() const { return values.cols(); }
};

struct Prototypes {
    Matrix centers;  // c x d

    std::size_t clusters() const { return centers.rows(); }
    std::size_t dim() const { return centers.cols(); }
};

// Per-object argmax cluster, ties to the lowest cluster index.
std::vector<std::size_t> hardened_assignment(const PartitionMatrix& partition);

}  // namespace bfpm
