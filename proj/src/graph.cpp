#include "mmgf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Core>

#include "mmgf/errors.hpp"
#include "mmgf/parallel.hpp"

namespace mmgf {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_alpha_s(double alpha, double s) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InputError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    if (!(s > 0.0)) {
        throw InputError("adjustment power s must be positive, got " + std::to_string(s));
    }
}

std::string format_index_list(const std::vector<std::uint32_t>& idx) {
    std::ostringstream out;
    const std::size_t shown = std::min<std::size_t>(idx.size(), 8);
    for (std::size_t k = 0; k < shown; ++k) {
        if (k) out << ", ";
        out << idx[k];
    }
    if (idx.size() > shown) out << ", ... (" << idx.size() - shown << " more)";
    return out.str();
}

}  // namespace

ItemGraph build_interaction_graph(const SparseMatrix& ratings, double alpha,
                                  double s, std::size_t dense_cap) {
    check_alpha_s(alpha, s);
    if (ratings.rows() == 0 || ratings.cols() == 0 || ratings.nnz() == 0) {
        throw InputError("interaction matrix is empty");
    }
    DegreeVector user_deg = row_degrees(ratings);
    DegreeVector item_deg = col_degrees(ratings);
    std::vector<std::uint32_t> dead_users, dead_items;
    for (std::uint32_t u = 0; u < ratings.rows(); ++u) {
        if (user_deg[u] == 0.0) dead_users.push_back(u);
    }
    for (std::uint32_t i = 0; i < ratings.cols(); ++i) {
        if (item_deg[i] == 0.0) dead_items.push_back(i);
    }
    if (!dead_users.empty() || !dead_items.empty()) {
        std::ostringstream msg;
        msg << "degree normalization undefined:";
        if (!dead_users.empty()) {
            msg << " users with zero interactions [" << format_index_list(dead_users) << "]";
        }
        if (!dead_items.empty()) {
            msg << " items with zero interactions [" << format_index_list(dead_items) << "]";
        }
        throw SingularityError(msg.str());
    }

    SparseMatrix normalized =
        scale_rows_cols(ratings, user_deg, item_deg, -alpha, alpha - 1.0);
    DenseMatrix adj = gram(normalized, GramMode::transpose_first, dense_cap);
    hadamard_power_inplace(adj, s);

    ItemGraph g;
    g.n_items = ratings.cols();
    g.adjacency = std::move(adj);
    g.source = GraphSource::interaction;
    g.alpha = alpha;
    g.s = s;
    return g;
}

DenseMatrix cosine_similarity(const DenseMatrix& features) {
    const std::size_t n = features.rows();
    const std::size_t d = features.cols();
    if (n == 0 || d == 0) throw InputError("feature matrix is empty");

    // One Gram product, then normalize from its upper triangle so both
    // halves are written from the same value (bitwise symmetric output).
    DenseMatrix g(n, n);
    {
        Eigen::Map<const RowMajorMatrix> x(features.data().data(),
                                           static_cast<Eigen::Index>(n),
                                           static_cast<Eigen::Index>(d));
        Eigen::Map<RowMajorMatrix> go(g.data().data(), static_cast<Eigen::Index>(n),
                                      static_cast<Eigen::Index>(n));
        go.noalias() = x * x.transpose();
    }
    std::vector<double> inv_norm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sq = g(i, i);
        if (sq <= 0.0) {
            throw SingularityError("item " + std::to_string(i) +
                                   " has a zero-norm feature row");
        }
        inv_norm[i] = 1.0 / std::sqrt(sq);
    }
    DenseMatrix sim(n, n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            sim(i, i) = g(i, i) * (inv_norm[i] * inv_norm[i]);
            for (std::size_t j = i + 1; j < n; ++j) {
                sim(i, j) = g(i, j) * (inv_norm[i] * inv_norm[j]);
            }
        }
    });
    // mirror the upper triangle
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = 0; j < i; ++j) sim(i, j) = sim(j, i);
        }
    });
    return sim;
}

SparseMatrix topk_binarize(const DenseMatrix& similarity, std::uint32_t k) {
    const std::size_t n = similarity.rows();
    if (similarity.cols() != n) {
        throw InputError("top-k binarization requires a square similarity matrix");
    }
    if (k < 1 || k > n) {
        throw InputError("k must lie in [1, " + std::to_string(n) + "], got " +
                         std::to_string(k));
    }
    std::vector<std::size_t> row_ptr(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) row_ptr[i] = i * k;
    std::vector<std::uint32_t> col(n * k);
    std::vector<double> val(n * k, 1.0);

    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint32_t> idx(n);
        for (std::size_t i = begin; i < end; ++i) {
            const double* row = similarity.row_data(i);
            std::iota(idx.begin(), idx.end(), 0u);
            auto better = [row](std::uint32_t a, std::uint32_t b) {
                return row[a] != row[b] ? row[a] > row[b] : a < b;
            };
            std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(), better);
            std::sort(idx.begin(), idx.begin() + k);  // CSR wants ascending columns
            std::copy(idx.begin(), idx.begin() + k, col.begin() + i * k);
        }
    });
    return SparseMatrix(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n),
                        std::move(row_ptr), std::move(col), std::move(val));
}

ItemGraph build_modality_graph(const DenseMatrix& features, const ModalityConfig& cfg,
                               double alpha, double s, std::size_t dense_cap) {
    check_alpha_s(alpha, s);
    const std::size_t n = features.rows();
    if (n > dense_cap) {
        throw CapacityError("modality graph of dimension " + std::to_string(n) +
                            " exceeds the dense cap of " + std::to_string(dense_cap));
    }

    SparseMatrix knn;
    {
        DenseMatrix sim = cosine_similarity(features);
        knn = topk_binarize(sim, cfg.k_neighbors);
    }
    DegreeVector out_deg = row_degrees(knn);  // = k for every row
    DegreeVector in_deg = col_degrees(knn);
    if (alpha - 1.0 < 0.0) {
        std::vector<std::uint32_t> dead;
        for (std::uint32_t j = 0; j < knn.cols(); ++j) {
            if (in_deg[j] == 0.0) dead.push_back(j);
        }
        if (!dead.empty()) {
            throw SingularityError("items never selected as neighbors [" +
                                   format_index_list(dead) + "]");
        }
    }

    SparseMatrix normalized = scale_rows_cols(knn, out_deg, in_deg, -alpha, alpha - 1.0);
    // Row-side Gram here: the kNN matrix is row-stochastic in structure,
    // so the similarity of items i and j aggregates over their shared
    // neighbor selections.
    DenseMatrix adj = gram(normalized, GramMode::transpose_second, dense_cap);
    hadamard_power_inplace(adj, s);

    ItemGraph g;
    g.n_items = n;
    g.adjacency = std::move(adj);
    g.source = GraphSource::modality;
    g.modality_name = cfg.modality_name;
    g.alpha = alpha;
    g.s = s;
    return g;
}

}  // namespace mmgf
