#pragma once

#include <string>
#include <vector>

#include "dspca/analysis.hpp"
#include "dspca/data.hpp"
#include "dspca/solver.hpp"
#include "dspca/types.hpp"

namespace dspca::io {

// Doubles are written with %.17g: round-trippable and locale-independent.
std::string format_double(double v);

void write_factor_csv(const std::string& path,
                      const std::vector<RankedFeature>& rows);
void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace);
void write_embedding_csv(const std::string& path, const Embedding& embedding,
                         const std::vector<std::string>& labels);
void write_expression_csv(const std::string& path, const ExpressionDataset& d,
                          char delimiter = ',');
void write_assignments_csv(const std::string& path, const Partition& p);
void write_covariance_csv(const std::string& path, const SymmetricMatrix& A,
                          const std::vector<std::string>& gene_ids = {});

// Flat binary cache: magic "DSPCACOV", u32 version, u32 n, then the
// row-major lower triangle as little-endian doubles.
void save_covariance_binary(const std::string& path, const SymmetricMatrix& A);
SymmetricMatrix load_covariance_binary(const std::string& path);
bool is_covariance_binary(const std::string& path);

struct CovarianceInput {
    SymmetricMatrix matrix;
    std::vector<std::string> gene_ids; // empty when the source has none
};

// Square numeric CSV with an optional gene-id header row.
CovarianceInput load_covariance_csv(const std::string& path,
                                    char delimiter = ',');
// Sniffs the binary magic, then falls back to CSV.
CovarianceInput load_covariance_auto(const std::string& path,
                                     char delimiter = ',');

struct EmbeddingInput {
    Matrix coordinates;
    std::vector<std::string> labels; // empty when the file has no label column
};

// Reads the embedding wire format back: sample_id, coord_1..coord_f, and an
// optional trailing label column.
EmbeddingInput load_embedding_csv(const std::string& path,
                                  char delimiter = ',');

// One label per line.
std::vector<std::string> load_labels(const std::string& path);

// Two-column CSV (rank, gene_id), optional header; returns ids by ascending
// rank. Published gene rankings from other methods arrive in this shape.
std::vector<std::string> load_ranked_ids_csv(const std::string& path,
                                             char delimiter = ',');

} // namespace dspca::io
