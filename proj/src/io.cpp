#include "bfpm/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bfpm {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream stream(line);
    while (std::getline(stream, cell, delim)) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == delim) cells.push_back("");
    return cells;
}

// row/column are 1-based file coordinates, header line included.
double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw DataError("io", "row " + std::to_string(row) + ", column " + std::to_string(col) +
                                  ": cannot parse '" + cell + "' as a finite number");
    return value;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("io", "cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(file, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    return lines;
}

}  // namespace

Dataset load_csv(const CsvSpec& spec) {
    auto lines = read_lines(spec.path);
    if (lines.empty()) throw DataError("io", "empty dataset in '" + spec.path + "'");

    std::size_t first_data = 0;
    std::vector<std::string> header;
    if (spec.has_header) {
        header = split_line(lines[0], spec.delimiter);
        first_data = 1;
        if (lines.size() == 1) throw DataError("io", "empty dataset in '" + spec.path + "'");
    }

    std::size_t width = split_line(lines[first_data], spec.delimiter).size();
    if (spec.has_header && header.size() != width)
        throw DataError("io", "header has " + std::to_string(header.size()) +
                                  " cells but row 2 has " + std::to_string(width));
    if (!spec.has_header)
        for (std::size_t c = 0; c < width; ++c) header.push_back("f" + std::to_string(c));

    // Resolve the label column: a header name first, else a 0-based index.
    std::ptrdiff_t label_at = -1;
    if (!spec.label_column.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == spec.label_column) label_at = static_cast<std::ptrdiff_t>(c);
        if (label_at < 0) {
            const std::string& t = spec.label_column;
            std::size_t idx = 0;
            auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), idx);
            if (ec == std::errc{} && ptr == t.data() + t.size() && idx < width)
                label_at = static_cast<std::ptrdiff_t>(idx);
        }
        if (label_at < 0)
            throw DataError("io", "label column '" + spec.label_column + "' not found");
    }

    Dataset ds;
    const std::size_t n = lines.size() - first_data;
    const std::size_t d = width - (label_at >= 0 ? 1 : 0);
    if (d == 0) throw DataError("io", "no feature columns in '" + spec.path + "'");
    ds.objects = Matrix(n, d);
    if (label_at >= 0) ds.labels.resize(n);

    for (std::size_t c = 0; c < header.size(); ++c)
        if (static_cast<std::ptrdiff_t>(c) != label_at) ds.feature_names.push_back(header[c]);

    for (std::size_t r = 0; r < n; ++r) {
        auto cells = split_line(lines[first_data + r], spec.delimiter);
        std::size_t file_row = first_data + r + 1;
        if (cells.size() != width)
            throw DataError("io", "row " + std::to_string(file_row) + ": expected " +
                                      std::to_string(width) + " cells, got " +
                                      std::to_string(cells.size()));
        std::size_t f = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (static_cast<std::ptrdiff_t>(c) == label_at)
                ds.labels[r] = cells[c];
            else
                ds.objects(r, f++) = parse_cell(cells[c], file_row, c + 1);
        }
    }
    return ds;
}

Dataset normalize_min_max(const Dataset& dataset) {
    Dataset out = dataset;
    for (std::size_t f = 0; f < dataset.dim(); ++f) {
        double lo = dataset.objects(0, f), hi = lo;
        for (std::size_t r = 1; r < dataset.size(); ++r) {
            lo = std::min(lo, dataset.objects(r, f));
            hi = std::max(hi, dataset.objects(r, f));
        }
        double span = hi - lo;
        for (std::size_t r = 0; r < dataset.size(); ++r)
            out.objects(r, f) = span == 0.0 ? 0.0 : (dataset.objects(r, f) - lo) / span;
    }
    out.normalized = true;
    return out;
}

std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

double round_sig(double value, int digits) {
    return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

void write_membership_csv(const PartitionMatrix& partition, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("io", "cannot write '" + path + "'");
    file << "object";
    for (std::size_t i = 0; i < partition.clusters(); ++i) file << ",cluster_" << i;
    file << "\n";
    for (std::size_t j = 0; j < partition.size(); ++j) {
        file << j;
        for (std::size_t i = 0; i < partition.clusters(); ++i)
            file << ',' << format_sig(partition.values(i, j));
        file << "\n";
    }
}

PartitionMatrix read_membership_csv(const std::string& path, PartitionClass cls) {
    CsvSpec spec;
    spec.path = path;
    spec.label_column = "object";
    Dataset table = load_csv(spec);
    PartitionMatrix partition{Matrix(table.dim(), table.size()), cls};
    for (std::size_t j = 0; j < table.size(); ++j)
        for (std::size_t i = 0; i < table.dim(); ++i)
            partition.values(i, j) = table.objects(j, i);
    return partition;
}

void write_prototypes_csv(const Prototypes& prototypes,
                          const std::vector<std::string>& feature_names,
                          const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("io", "cannot write '" + path + "'");
    file << "cluster";
    for (std::size_t f = 0; f < prototypes.dim(); ++f)
        file << ',' << (f < feature_names.size() ? feature_names[f] : "f" + std::to_string(f));
    file << "\n";
    for (std::size_t i = 0; i < prototypes.clusters(); ++i) {
        file << i;
        for (std::size_t f = 0; f < prototypes.dim(); ++f)
            file << ',' << format_sig(prototypes.centers(i, f));
        file << "\n";
    }
}

Prototypes read_prototypes_csv(const std::string& path) {
    CsvSpec spec;
    spec.path = path;
    spec.label_column = "cluster";
    Dataset table = load_csv(spec);
    return {table.objects};
}

}  // namespace bfpm
