#pragma once

#include <cstdint>
#include <string>

#include "mmgf/matrix.hpp"

namespace mmgf {

enum class GraphSource { interaction, modality };

/// Symmetric nonnegative item-item similarity graph.
struct ItemGraph {
    std::size_t n_items = 0;
    DenseMatrix adjacency;
    GraphSource source = GraphSource::interaction;
    std::string modality_name;  // empty for the interaction graph
    double alpha = 0.5;
    double s = 1.0;
};

struct ModalityConfig {
    std::uint32_t k_neighbors = 20;
    std::string modality_name;
};

/**
 * Item graph from implicit feedback: degree-normalize the rating matrix
 * asymmetrically (user degrees to -alpha, item degrees to alpha-1), form
 * the item-side Gram product, then raise entries to the elementwise
 * power s. Every user and item must have degree >= 1.
 */
ItemGraph build_interaction_graph(const SparseMatrix& ratings, double alpha,
                                  double s, std::size_t dense_cap = kDefaultDenseCap);

/// Pairwise cosine similarity of feature rows; bitwise symmetric,
/// diagonal 1 within rounding. Zero-norm rows are rejected.
DenseMatrix cosine_similarity(const DenseMatrix& features);

/// Per row, keep the k largest entries (value desc, then lower column
/// index) as unweighted edges. Exactly k stored entries per row; the
/// output is generally not symmetric.
SparseMatrix topk_binarize(const DenseMatrix& similarity, std::uint32_t k);

/// Item graph from per-modality features: cosine similarity, top-k
/// binarization, asymmetric degree normalization, row-side Gram
/// (S~ S~^T), elementwise power s.
ItemGraph build_modality_graph(const DenseMatrix& features, const ModalityConfig& cfg,
                               double alpha, double s,
                               std::size_t dense_cap = kDefaultDenseCap);

}  // namespace mmgf
