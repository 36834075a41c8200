#include "dspca/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "dspca/errors.hpp"

namespace dspca::io {

namespace {

constexpr char kMagic[8] = {'D', 'S', 'P', 'C', 'A', 'C', 'O', 'V'};
constexpr std::uint32_t kVersion = 1;

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) {
        throw InvalidInputError("cannot open '" + path + "' for writing");
    }
    return out;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
        out.back().pop_back();
    }
    return out;
}

bool parse_double(const std::string& cell, double& value) {
    const char* first = cell.data();
    const char* last = first + cell.size();
    while (first != last && (*first == ' ' || *first == '\t')) {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) {
        return false;
    }
    for (const char* p = ptr; p != last; ++p) {
        if (*p != ' ' && *p != '\t') {
            return false;
        }
    }
    return true;
}

void put_u32(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) {
        b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    }
    return v;
}

void put_f64(std::ofstream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) {
        b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    }
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_factor_csv(const std::string& path,
                      const std::vector<RankedFeature>& rows) {
    std::ofstream out = open_out(path);
    out << "index,gene_id,loading\n";
    for (const RankedFeature& r : rows) {
        out << r.index << ',' << r.gene_id << ',' << format_double(r.loading)
            << '\n';
    }
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace) {
    std::ofstream out = open_out(path);
    out << "iteration,gap,eigs_used,elapsed_seconds\n";
    for (const TraceRecord& t : trace) {
        out << t.iteration << ',' << format_double(t.gap) << ',' << t.eigs_used
            << ',' << format_double(t.elapsed_seconds) << '\n';
    }
}

void write_embedding_csv(const std::string& path, const Embedding& embedding,
                         const std::vector<std::string>& labels) {
    const std::size_t s = embedding.coordinates.rows();
    const std::size_t f = embedding.coordinates.cols();
    if (!labels.empty() && labels.size() != s) {
        throw InvalidInputError("embedding csv: label count != sample count");
    }
    std::ofstream out = open_out(path);
    out << "sample_id";
    for (std::size_t j = 0; j < f; ++j) {
        out << ",coord_" << (j + 1);
    }
    if (!labels.empty()) {
        out << ",label";
    }
    out << '\n';
    for (std::size_t i = 0; i < s; ++i) {
        out << (i + 1);
        for (std::size_t j = 0; j < f; ++j) {
            out << ',' << format_double(embedding.coordinates(i, j));
        }
        if (!labels.empty()) {
            out << ',' << labels[i];
        }
        out << '\n';
    }
}

void write_expression_csv(const std::string& path, const ExpressionDataset& d,
                          char delimiter) {
    const std::size_t s = d.samples();
    const std::size_t g = d.genes();
    const bool labeled = !d.sample_labels.empty();
    if (labeled && d.sample_labels.size() != s) {
        throw InvalidInputError("expression csv: label count != sample count");
    }
    std::ofstream out = open_out(path);
    for (std::size_t j = 0; j < g; ++j) {
        if (j > 0) {
            out << delimiter;
        }
        out << d.gene_ids[j];
    }
    if (labeled) {
        out << delimiter << "label";
    }
    out << '\n';
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            if (j > 0) {
                out << delimiter;
            }
            out << format_double(d.values(i, j));
        }
        if (labeled) {
            out << delimiter << d.sample_labels[i];
        }
        out << '\n';
    }
}

void write_assignments_csv(const std::string& path, const Partition& p) {
    std::ofstream out = open_out(path);
    out << "sample_id,cluster\n";
    for (std::size_t i = 0; i < p.assignments.size(); ++i) {
        out << (i + 1) << ',' << p.assignments[i] << '\n';
    }
}

void write_covariance_csv(const std::string& path, const SymmetricMatrix& A,
                          const std::vector<std::string>& gene_ids) {
    const std::size_t n = A.dim();
    if (!gene_ids.empty() && gene_ids.size() != n) {
        throw InvalidInputError("covariance csv: id count != dimension");
    }
    std::ofstream out = open_out(path);
    if (!gene_ids.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            out << (j > 0 ? "," : "") << gene_ids[j];
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out << (j > 0 ? "," : "") << format_double(A(i, j));
        }
        out << '\n';
    }
}

void save_covariance_binary(const std::string& path, const SymmetricMatrix& A) {
    std::ofstream out = open_out(path, true);
    out.write(kMagic, 8);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(A.dim()));
    const std::size_t n = A.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            put_f64(out, A(i, j));
        }
    }
    if (!out) {
        throw InvalidInputError("covariance binary: write to '" + path +
                                "' failed");
    }
}

SymmetricMatrix load_covariance_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInputError("covariance binary: cannot open '" + path +
                                "'");
    }
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0) {
        throw InvalidInputError("covariance binary: '" + path +
                                "' has wrong magic");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kVersion) {
        throw InvalidInputError("covariance binary: unsupported version " +
                                std::to_string(version));
    }
    const std::uint32_t n = get_u32(in);
    if (!in || n == 0) {
        throw InvalidInputError("covariance binary: bad dimension");
    }
    SymmetricMatrix A(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            A.set(i, j, get_f64(in));
        }
    }
    if (!in) {
        throw InvalidInputError("covariance binary: '" + path +
                                "' is truncated");
    }
    return A;
}

bool is_covariance_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return false;
    }
    char magic[8];
    in.read(magic, 8);
    return in && std::memcmp(magic, kMagic, 8) == 0;
}

CovarianceInput load_covariance_csv(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("covariance csv: cannot open '" + path + "'");
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) {
            break;
        }
        rows.push_back(split(line, delimiter));
    }
    if (rows.empty()) {
        throw InvalidInputError("covariance csv: '" + path + "' is empty");
    }

    CovarianceInput out;
    std::size_t first_data = 0;
    double probe;
    if (!parse_double(rows[0][0], probe)) {
        out.gene_ids = rows[0];
        first_data = 1;
    }
    const std::size_t n = rows.size() - first_data;
    if (n == 0) {
        throw InvalidInputError("covariance csv: no data rows");
    }
    if (!out.gene_ids.empty() && out.gene_ids.size() != n) {
        throw InvalidInputError("covariance csv: header width " +
                                std::to_string(out.gene_ids.size()) +
                                " != row count " + std::to_string(n));
    }
    Matrix dense(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& cells = rows[first_data + i];
        if (cells.size() != n) {
            throw InvalidInputError(
                "covariance csv: row " + std::to_string(i + 1) + " has " +
                std::to_string(cells.size()) + " fields, expected " +
                std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            double v;
            if (!parse_double(cells[j], v) || !std::isfinite(v)) {
                throw InvalidInputError("covariance csv: bad value '" +
                                        cells[j] + "' at row " +
                                        std::to_string(i + 1) + ", column " +
                                        std::to_string(j + 1));
            }
            dense(i, j) = v;
        }
    }
    out.matrix = SymmetricMatrix::from_dense(dense);
    return out;
}

CovarianceInput load_covariance_auto(const std::string& path, char delimiter) {
    if (is_covariance_binary(path)) {
        return {load_covariance_binary(path), {}};
    }
    return load_covariance_csv(path, delimiter);
}

EmbeddingInput load_embedding_csv(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("embedding csv: cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidInputError("embedding csv: '" + path + "' is empty");
    }
    const std::vector<std::string> header = split(line, delimiter);
    if (header.empty() || header[0] != "sample_id") {
        throw InvalidInputError(
            "embedding csv: header must start with 'sample_id'");
    }
    const bool has_label = header.back() == "label";
    const std::size_t f = header.size() - 1 - (has_label ? 1 : 0);
    if (f == 0) {
        throw InvalidInputError("embedding csv: no coordinate columns");
    }
    for (std::size_t j = 0; j < f; ++j) {
        if (header[1 + j] != "coord_" + std::to_string(j + 1)) {
            throw InvalidInputError("embedding csv: unexpected column '" +
                                    header[1 + j] + "'");
        }
    }

    std::vector<double> body;
    std::vector<std::string> labels;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) {
            break;
        }
        const std::vector<std::string> cells = split(line, delimiter);
        if (cells.size() != header.size()) {
            throw InvalidInputError(
                "embedding csv: data row " + std::to_string(rows + 1) +
                " has " + std::to_string(cells.size()) + " fields, expected " +
                std::to_string(header.size()));
        }
        for (std::size_t j = 0; j < f; ++j) {
            double v;
            if (!parse_double(cells[1 + j], v) || !std::isfinite(v)) {
                throw InvalidInputError(
                    "embedding csv: bad value '" + cells[1 + j] +
                    "' at data row " + std::to_string(rows + 1));
            }
            body.push_back(v);
        }
        if (has_label) {
            labels.push_back(cells.back());
        }
        ++rows;
    }
    if (rows == 0) {
        throw InvalidInputError("embedding csv: '" + path + "' has no rows");
    }
    EmbeddingInput out;
    out.coordinates = Matrix(rows, f, std::move(body));
    out.labels = std::move(labels);
    return out;
}

std::vector<std::string> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("labels: cannot open '" + path + "'");
    }
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() && in.eof()) {
            break;
        }
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> load_ranked_ids_csv(const std::string& path,
                                             char delimiter) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("rank csv: cannot open '" + path + "'");
    }
    std::vector<std::pair<double, std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) {
            break;
        }
        const std::vector<std::string> cells = split(line, delimiter);
        if (cells.size() < 2) {
            throw InvalidInputError("rank csv: row needs rank and gene_id");
        }
        double rank;
        if (!parse_double(cells[0], rank)) {
            if (first) {
                first = false;
                continue; // header row
            }
            throw InvalidInputError("rank csv: bad rank '" + cells[0] + "'");
        }
        first = false;
        rows.emplace_back(rank, cells[1]);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) {
                         return a.first < b.first;
                     });
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (auto& r : rows) {
        out.push_back(std::move(r.second));
    }
    return out;
}

} // namespace dspca::io
