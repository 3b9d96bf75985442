#include "bfpm/core.hpp"

namespace bfpm {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols())
            throw DataError("core", "ragged rows: row " + std::to_string(r) + " has " +
                                        std::to_string(rows[r].size()) + " values, expected " +
                                        std::to_string(m.cols()));
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

std::string to_string(PartitionClass cls) {
    switch (cls) {
        case PartitionClass::Crisp: return "crisp";
        case PartitionClass::Fuzzy: return "fuzzy";
        case PartitionClass::Possibilistic: return "possibilistic";
        case PartitionClass::Bfpm: return "bfpm";
    }
    return "?";
}

std::string to_string(Method method) {
    switch (method) {
        case Method::Bfpm: return "bfpm";
        case Method::Fcm: return "fcm";
        case Method::CrispKMeans: return "kmeans";
    }
    return "?";
}

PartitionClass partition_class_from_string(const std::string& text) {
    if (text == "crisp") return PartitionClass::Crisp;
    if (text == "fuzzy") return PartitionClass::Fuzzy;
    if (text == "possibilistic") return PartitionClass::Possibilistic;
    if (text == "bfpm") return PartitionClass::Bfpm;
    throw DataError("core", "unknown partition class '" + text + "'");
}

Method method_from_string(const std::string& text) {
    if (text == "bfpm") return Method::Bfpm;
    if (text == "fcm") return Method::Fcm;
    if (text == "kmeans") return Method::CrispKMeans;
    throw DataError("core", "unknown method '" + text + "'");
}

std::vector<std::size_t> hardened_assignment(const PartitionMatrix& partition) {
    const Matrix& u = partition.values;
    if (u.rows() == 0) throw ComputeError("core", "empty partition");
    std::vector<std::size_t> assigned(u.cols(), 0);
    for (std::size_t j = 0; j < u.cols(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < u.rows(); ++i)
            if (u(i, j) > u(best, j)) best = i;
        assigned[j] = best;
    }
    return assigned;
}

}  // namespace bfpm
