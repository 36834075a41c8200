#pragma once

#include <string>
#include <vector>

#include "dspca/spca.hpp"
#include "dspca/types.hpp"

namespace dspca {

struct ExpressionDataset {
    Matrix values; // samples x genes
    std::vector<std::string> gene_ids;
    std::vector<std::string> sample_labels; // empty when unlabeled
    std::string provenance;

    std::size_t samples() const { return values.rows(); }
    std::size_t genes() const { return values.cols(); }
};

struct CsvOptions {
    char delimiter = ',';
};

// First row: gene ids, optionally ending in a literal `label` column; body:
// numeric expression values, one sample per row.
ExpressionDataset load_expression_csv(const std::string& path,
                                      const CsvOptions& options = {});

// Natural log followed by per-sample standardization (population sd).
ExpressionDataset preprocess_log_zscore(const ExpressionDataset& d);

// Keeps the m genes with largest cross-sample variance, original order.
ExpressionDataset select_top_variance_genes(const ExpressionDataset& d,
                                            std::size_t m);

// Gene-by-gene sample covariance with divisor s-1, columns centered.
SymmetricMatrix covariance(const ExpressionDataset& d);

struct Embedding {
    Matrix coordinates; // samples x factors
    std::vector<SparseFactor> factor_refs;
};

// coordinates[i][j] = <values row i, loadings of factor j>.
Embedding project(const ExpressionDataset& d,
                  const std::vector<SparseFactor>& factors);

} // namespace dspca
