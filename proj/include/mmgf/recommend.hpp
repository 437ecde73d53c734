#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mmgf/matrix.hpp"
#include "mmgf/spectral.hpp"

namespace mmgf {

struct FusionWeights {
    double beta = 0.0;   // textual graph weight
    double gamma = 0.0;  // visual graph weight
};

/// Top-K items for one user: scores non-increasing, ties broken by the
/// lower item index, training items never included.
struct RecommendationList {
    std::uint32_t user = 0;
    std::vector<std::uint32_t> items;
    std::vector<double> scores;
};

/// Weighted sum of filtered graphs. Absent modalities require a zero
/// weight; zero weights skip the addition entirely.
DenseMatrix fuse(const FilteredGraph& interaction, const FilteredGraph* txt,
                 const FilteredGraph* img, const FusionWeights& w);

/// Memory-lean alternative to materializing the fused matrix: scores are
/// accumulated per part, matching the fused path within 1e-9 relative.
struct FusedParts {
    const DenseMatrix* interaction = nullptr;
    const DenseMatrix* txt = nullptr;
    const DenseMatrix* img = nullptr;
    FusionWeights w;
};

/// s_u = r_u * P for a sparse user row given as (indices, values).
std::vector<double> score_user(std::span<const std::uint32_t> item_idx,
                               std::span<const double> item_val,
                               const DenseMatrix& fused);
std::vector<double> score_user(std::span<const std::uint32_t> item_idx,
                               std::span<const double> item_val,
                               const FusedParts& parts);

/// Highest-scoring items excluding the (sorted) training set; returns
/// fewer than k_rec only when fewer candidates exist.
RecommendationList recommend_topk(std::uint32_t user, std::span<const double> scores,
                                  std::span<const std::uint32_t> train_items_sorted,
                                  std::size_t k_rec);

std::vector<RecommendationList> batch_recommend(const SparseMatrix& train,
                                                const DenseMatrix& fused,
                                                std::span<const std::uint32_t> users,
                                                std::size_t k_rec);
std::vector<RecommendationList> batch_recommend(const SparseMatrix& train,
                                                const FusedParts& parts,
                                                std::span<const std::uint32_t> users,
                                                std::size_t k_rec);

/// Tab-separated export: user, item, rank (1-based), score.
void write_recommendations(std::ostream& out, std::span<const RecommendationList> lists);

}  // namespace mmgf
