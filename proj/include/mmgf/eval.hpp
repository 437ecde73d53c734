#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mmgf/matrix.hpp"
#include "mmgf/recommend.hpp"

namespace mmgf {

struct SplitRatios {
    double train = 0.8;
    double valid = 0.1;
    double test = 0.1;
};

/// Disjoint per-user partition of the interaction set; every user keeps
/// at least one training interaction.
struct DatasetSplit {
    SparseMatrix train;
    SparseMatrix valid;
    SparseMatrix test;
    std::uint64_t seed = 0;
};

struct EvalReport {
    std::map<std::size_t, double> recall_at;
    std::map<std::size_t, double> ndcg_at;
    std::size_t n_users_evaluated = 0;
    std::size_t n_recs_skipped = 0;  // rec lists for users without test items
    double wall_time_seconds = 0.0;
};

struct NoiseLevel {
    int level = 0;
    double sigma_scale = 0.0;
    // levels 0..5 map to scales {0, 0.1, 0.575, 1.05, 1.525, 2.0}
    static NoiseLevel from_level(int level);
};

/// Per-user random split at the given ratios; validation/test counts are
/// floored so leftovers go to training. Deterministic given the seed.
DatasetSplit split_dataset(const SparseMatrix& ratings, SplitRatios ratios,
                           std::uint64_t seed);

/// Recall@K (hits / |user's test items|) and NDCG@K (binary relevance,
/// 1/log2(rank+1) discount, ideal truncated at min(K, |test items|)),
/// averaged over users with at least one test interaction.
EvalReport evaluate(std::span<const RecommendationList> recs, const SparseMatrix& test,
                    std::span<const std::size_t> ks);

/// Users whose training degree is <= threshold (inclusive).
std::vector<std::uint32_t> cold_start_users(const SparseMatrix& train,
                                            std::size_t threshold = 5);

/// Additive Gaussian feature noise with per-dimension (per-column)
/// sample-std scaling; constant columns stay untouched. Level 0 returns
/// the input bitwise. Each level draws from its own substream of seed.
DenseMatrix inject_noise(const DenseMatrix& features, NoiseLevel level,
                         std::uint64_t seed, bool per_column = true);

struct SyntheticDataset {
    SparseMatrix ratings;
    DenseMatrix txt;
    DenseMatrix img;
};

/**
 * Synthetic implicit-feedback dataset with modality features that
 * correlate with co-interaction. Interactions: cover every item first
 * (preferring still-uncovered users), then cover remaining users while
 * the budget lasts, then fill uniformly without replacement — so degrees
 * are >= 1 whenever n_interactions >= max(n_users, n_items). Features:
 * 16-dim item latents built from random per-user vectors aggregated over
 * each item's users, projected to the target dimension with additive
 * noise. Deterministic given the seed.
 */
SyntheticDataset generate_synthetic(std::uint32_t n_users, std::uint32_t n_items,
                                    std::size_t n_interactions, std::size_t d_txt = 384,
                                    std::size_t d_img = 4096, std::uint64_t seed = 0);

}  // namespace mmgf
