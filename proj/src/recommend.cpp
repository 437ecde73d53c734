#include "mmgf/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "mmgf/errors.hpp"
#include "mmgf/parallel.hpp"

namespace mmgf {

namespace {

void check_part(const FilteredGraph* part, double weight, std::size_t n, const char* name) {
    if (part == nullptr) {
        if (weight != 0.0) {
            throw InputError(std::string(name) +
                             " graph is absent but its fusion weight is nonzero");
        }
        return;
    }
    if (part->adjacency.rows() != n || part->adjacency.cols() != n) {
        throw InputError(std::string(name) + " graph dimension mismatch in fusion");
    }
}

void accumulate_row(std::span<const std::uint32_t> item_idx,
                    std::span<const double> item_val, const DenseMatrix& m,
                    double weight, std::vector<double>& acc) {
    std::vector<double> part(m.cols(), 0.0);
    for (std::size_t k = 0; k < item_idx.size(); ++k) {
        const double v = item_val[k];
        const double* row = m.row_data(item_idx[k]);
        for (std::size_t j = 0; j < m.cols(); ++j) part[j] += v * row[j];
    }
    for (std::size_t j = 0; j < m.cols(); ++j) acc[j] += weight * part[j];
}

}  // namespace

DenseMatrix fuse(const FilteredGraph& interaction, const FilteredGraph* txt,
                 const FilteredGraph* img, const FusionWeights& w) {
    const std::size_t n = interaction.adjacency.rows();
    if (interaction.adjacency.cols() != n) {
        throw InputError("interaction graph must be square");
    }
    check_part(txt, w.beta, n, "textual");
    check_part(img, w.gamma, n, "visual");

    DenseMatrix fused = interaction.adjacency;
    if (txt != nullptr && w.beta != 0.0) add_scaled(fused, txt->adjacency, w.beta);
    if (img != nullptr && w.gamma != 0.0) add_scaled(fused, img->adjacency, w.gamma);
    return fused;
}

std::vector<double> score_user(std::span<const std::uint32_t> item_idx,
                               std::span<const double> item_val,
                               const DenseMatrix& fused) {
    std::vector<double> scores(fused.cols(), 0.0);
    for (std::size_t k = 0; k < item_idx.size(); ++k) {
        if (item_idx[k] >= fused.rows()) {
            throw InputError("user row index " + std::to_string(item_idx[k]) +
                             " outside the item space");
        }
        const double v = item_val[k];
        const double* row = fused.row_data(item_idx[k]);
        for (std::size_t j = 0; j < scores.size(); ++j) scores[j] += v * row[j];
    }
    return scores;
}

std::vector<double> score_user(std::span<const std::uint32_t> item_idx,
                               std::span<const double> item_val,
                               const FusedParts& parts) {
    if (parts.interaction == nullptr) {
        throw InputError("fused scoring needs the interaction graph");
    }
    std::vector<double> scores = score_user(item_idx, item_val, *parts.interaction);
    if (parts.txt != nullptr && parts.w.beta != 0.0) {
        accumulate_row(item_idx, item_val, *parts.txt, parts.w.beta, scores);
    } else if (parts.txt == nullptr && parts.w.beta != 0.0) {
        throw InputError("textual graph is absent but its fusion weight is nonzero");
    }
    if (parts.img != nullptr && parts.w.gamma != 0.0) {
        accumulate_row(item_idx, item_val, *parts.img, parts.w.gamma, scores);
    } else if (parts.img == nullptr && parts.w.gamma != 0.0) {
        throw InputError("visual graph is absent but its fusion weight is nonzero");
    }
    return scores;
}

RecommendationList recommend_topk(std::uint32_t user, std::span<const double> scores,
                                  std::span<const std::uint32_t> train_items_sorted,
                                  std::size_t k_rec) {
    if (k_rec < 1) throw InputError("k_rec must be at least 1");
    std::vector<std::uint32_t> candidates;
    candidates.reserve(scores.size());
    for (std::uint32_t j = 0; j < scores.size(); ++j) {
        if (!std::binary_search(train_items_sorted.begin(), train_items_sorted.end(), j)) {
            candidates.push_back(j);
        }
    }
    const std::size_t k = std::min(k_rec, candidates.size());
    auto better = [&scores](std::uint32_t a, std::uint32_t b) {
        return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
    };
    if (k > 0 && k < candidates.size()) {
        std::nth_element(candidates.begin(), candidates.begin() + (k - 1),
                         candidates.end(), better);
        candidates.resize(k);
    }
    std::sort(candidates.begin(), candidates.end(), better);

    RecommendationList out;
    out.user = user;
    out.items = std::move(candidates);
    out.scores.reserve(out.items.size());
    for (std::uint32_t j : out.items) out.scores.push_back(scores[j]);
    return out;
}

namespace {

template <typename Scorer>
std::vector<RecommendationList> batch_recommend_impl(const SparseMatrix& train,
                                                     std::span<const std::uint32_t> users,
                                                     std::size_t k_rec, Scorer&& scorer) {
    if (k_rec < 1) throw InputError("k_rec must be at least 1");
    for (std::uint32_t u : users) {
        if (u >= train.rows()) {
            throw InputError("user index " + std::to_string(u) +
                             " outside the training matrix");
        }
    }
    std::vector<RecommendationList> out(users.size());
    parallel_for(users.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const std::uint32_t u = users[k];
            std::vector<double> scores = scorer(train.row_cols(u), train.row_vals(u));
            out[k] = recommend_topk(u, scores, train.row_cols(u), k_rec);
        }
    });
    return out;
}

}  // namespace

std::vector<RecommendationList> batch_recommend(const SparseMatrix& train,
                                                const DenseMatrix& fused,
                                                std::span<const std::uint32_t> users,
                                                std::size_t k_rec) {
    if (train.cols() != fused.rows()) {
        throw InputError("training matrix and fused graph disagree on item count");
    }
    return batch_recommend_impl(train, users, k_rec,
                                [&](auto idx, auto val) { return score_user(idx, val, fused); });
}

std::vector<RecommendationList> batch_recommend(const SparseMatrix& train,
                                                const FusedParts& parts,
                                                std::span<const std::uint32_t> users,
                                                std::size_t k_rec) {
    if (parts.interaction == nullptr || train.cols() != parts.interaction->rows()) {
        throw InputError("training matrix and fused graph disagree on item count");
    }
    return batch_recommend_impl(train, users, k_rec,
                                [&](auto idx, auto val) { return score_user(idx, val, parts); });
}

void write_recommendations(std::ostream& out, std::span<const RecommendationList> lists) {
    out << "user\titem\trank\tscore\n";
    out.precision(17);
    for (const RecommendationList& rec : lists) {
        for (std::size_t r = 0; r < rec.items.size(); ++r) {
            out << rec.user << '\t' << rec.items[r] << '\t' << (r + 1) << '\t'
                << rec.scores[r] << '\n';
        }
    }
}

}  // namespace mmgf
