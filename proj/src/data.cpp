#include "dspca/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dspca/errors.hpp"
#include "dspca/kernels.hpp"

namespace dspca {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
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
    // Tolerate trailing carriage returns from CRLF files.
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
        out.back().pop_back();
    }
    return out;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    const char* first = cell.data();
    const char* last = first + cell.size();
    while (first != last && (*first == ' ' || *first == '\t')) {
        ++first;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    bool trailing_ok = true;
    for (const char* p = ptr; p != last; ++p) {
        if (*p != ' ' && *p != '\t') {
            trailing_ok = false;
        }
    }
    if (ec != std::errc{} || ptr == first || !trailing_ok ||
        !std::isfinite(value)) {
        throw InvalidInputError("expression csv: non-numeric value '" + cell +
                                "' at data row " + std::to_string(row + 1) +
                                ", column " + std::to_string(col + 1));
    }
    return value;
}

} // namespace

ExpressionDataset load_expression_csv(const std::string& path,
                                      const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("expression csv: cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidInputError("expression csv: '" + path + "' is empty");
    }
    std::vector<std::string> header = split_line(line, options.delimiter);
    const bool has_labels = !header.empty() && header.back() == "label";
    if (has_labels) {
        header.pop_back();
    }
    if (header.empty()) {
        throw InvalidInputError("expression csv: header has no gene ids");
    }
    const std::size_t genes = header.size();
    const std::size_t width = genes + (has_labels ? 1 : 0);

    std::vector<double> body;
    std::vector<std::string> labels;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) {
            break;
        }
        const std::vector<std::string> cells = split_line(line, options.delimiter);
        if (cells.size() != width) {
            throw InvalidInputError(
                "expression csv: data row " + std::to_string(rows + 1) +
                " has " + std::to_string(cells.size()) + " fields, expected " +
                std::to_string(width));
        }
        for (std::size_t j = 0; j < genes; ++j) {
            body.push_back(parse_cell(cells[j], rows, j));
        }
        if (has_labels) {
            labels.push_back(cells.back());
        }
        ++rows;
    }
    if (rows == 0) {
        throw InvalidInputError("expression csv: '" + path + "' has no samples");
    }

    ExpressionDataset d;
    d.values = Matrix(rows, genes, std::move(body));
    d.gene_ids = std::move(header);
    d.sample_labels = std::move(labels);
    d.provenance = path;
    return d;
}

ExpressionDataset preprocess_log_zscore(const ExpressionDataset& d) {
    const std::size_t s = d.samples();
    const std::size_t g = d.genes();
    ExpressionDataset out = d;
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            const double v = d.values(i, j);
            if (!(v > 0.0)) {
                throw InvalidInputError(
                    "preprocess: nonpositive value " + std::to_string(v) +
                    " at sample " + std::to_string(i + 1) + ", gene '" +
                    d.gene_ids[j] + "' (log requires positive intensities)");
            }
            out.values(i, j) = std::log(v);
        }
    }
    for (std::size_t i = 0; i < s; ++i) {
        double* row = out.values.row(i);
        const double mean =
            std::accumulate(row, row + g, 0.0) / static_cast<double>(g);
        double var = 0.0;
        for (std::size_t j = 0; j < g; ++j) {
            const double c = row[j] - mean;
            var += c * c;
        }
        var /= static_cast<double>(g); // population convention
        if (var <= 0.0) {
            throw DegenerateInputError(
                "preprocess: sample " + std::to_string(i + 1) +
                " is constant (zero standard deviation)");
        }
        const double inv_sd = 1.0 / std::sqrt(var);
        for (std::size_t j = 0; j < g; ++j) {
            row[j] = (row[j] - mean) * inv_sd;
        }
    }
    return out;
}

ExpressionDataset select_top_variance_genes(const ExpressionDataset& d,
                                            std::size_t m) {
    const std::size_t g = d.genes();
    const std::size_t s = d.samples();
    if (m < 1 || m > g) {
        throw InvalidInputError("select_top_variance_genes: m out of range");
    }
    std::vector<double> var(g, 0.0);
    for (std::size_t j = 0; j < g; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            mean += d.values(i, j);
        }
        mean /= static_cast<double>(s);
        double acc = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            const double c = d.values(i, j) - mean;
            acc += c * c;
        }
        var[j] = s > 1 ? acc / static_cast<double>(s - 1) : 0.0;
    }
    std::vector<std::size_t> order(g);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return var[a] > var[b]; // ties keep lower index first
                     });
    std::vector<std::size_t> keep(order.begin(),
                                  order.begin() + static_cast<long>(m));
    std::sort(keep.begin(), keep.end());

    ExpressionDataset out;
    out.values = Matrix(s, m);
    out.gene_ids.reserve(m);
    for (std::size_t jj = 0; jj < m; ++jj) {
        out.gene_ids.push_back(d.gene_ids[keep[jj]]);
        for (std::size_t i = 0; i < s; ++i) {
            out.values(i, jj) = d.values(i, keep[jj]);
        }
    }
    out.sample_labels = d.sample_labels;
    out.provenance = d.provenance;
    return out;
}

SymmetricMatrix covariance(const ExpressionDataset& d) {
    const std::size_t s = d.samples();
    const std::size_t g = d.genes();
    if (s < 2) {
        throw InvalidInputError("covariance: needs at least two samples");
    }
    Matrix centered = d.values;
    for (std::size_t j = 0; j < g; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            mean += centered(i, j);
        }
        mean /= static_cast<double>(s);
        for (std::size_t i = 0; i < s; ++i) {
            centered(i, j) -= mean;
        }
    }
    SymmetricMatrix out(g);
    kernels::syrk_tn(centered.data(), s, g, out.data());
    kernels::scale(1.0 / static_cast<double>(s - 1), out.data(), g * g);
    return out;
}

Embedding project(const ExpressionDataset& d,
                  const std::vector<SparseFactor>& factors) {
    const std::size_t g = d.genes();
    const std::size_t s = d.samples();
    const std::size_t f = factors.size();
    if (f == 0) {
        throw InvalidInputError("project: no factors given");
    }
    for (const SparseFactor& factor : factors) {
        if (factor.loadings.size() != g) {
            throw InvalidInputError(
                "project: factor length " +
                std::to_string(factor.loadings.size()) +
                " does not match gene count " + std::to_string(g));
        }
    }
    Embedding e;
    e.coordinates = Matrix(s, f);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < f; ++j) {
            e.coordinates(i, j) =
                kernels::dot(d.values.row(i), factors[j].loadings.data(), g);
        }
    }
    e.factor_refs = factors;
    return e;
}

} // namespace dspca
