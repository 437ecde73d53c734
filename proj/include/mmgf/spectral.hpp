#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmgf/graph.hpp"
#include "mmgf/matrix.hpp"

namespace mmgf {

// Spectral spans below this are treated as degenerate: the shifted
// matrix is numerically zero and the filter output is the zero matrix.
inline constexpr double kDegenerateSpectrumEps = 1e-9;

enum class BoundsMethod { dense, iterative };

struct SpectralBounds {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double lambda_star = 0.0;  // lambda_max - lambda_min
    BoundsMethod method = BoundsMethod::dense;
    double residual = 0.0;     // 0 for the dense method
};

struct EigOptions {
    double tol = 1e-7;
    std::size_t max_iter = 5000;
    std::size_t dense_threshold = 2048;  // full eigendecomposition up to here
};

enum class FilterKind { polynomial, linear_lpf };

struct FilterSpec {
    FilterKind kind = FilterKind::linear_lpf;
    std::vector<double> coefficients;  // a_1..a_K (polynomial only)

    static FilterSpec linear() { return {FilterKind::linear_lpf, {}}; }
    static FilterSpec polynomial(std::vector<double> coeffs) {
        return {FilterKind::polynomial, std::move(coeffs)};
    }
    std::size_t order() const { return coefficients.size(); }
    bool operator==(const FilterSpec&) const = default;
};

struct FilteredGraph {
    std::size_t n_items = 0;
    DenseMatrix adjacency;
    SpectralBounds bounds;
    FilterSpec spec;
    bool degenerate = false;  // lambda_star below eps: adjacency is all zero
};

/**
 * Extreme eigenvalues of a symmetric item graph. Below dense_threshold a
 * full symmetric eigendecomposition is used. Above it, lambda_max comes
 * from power iteration on P shifted to a nonnegative spectrum (Gershgorin
 * shift), and lambda_min from power iteration on lambda_max*I - P. Both
 * iterations start from the normalized all-ones vector and perturb it
 * deterministically if the residual stagnates; failure to reach
 * tol*max(1, |lambda|) within max_iter raises ConvergenceError carrying
 * the residual.
 */
SpectralBounds extreme_eigenvalues(const ItemGraph& graph, const EigOptions& opts = {});

/**
 * Shift-normalized polynomial filter
 *   sum_{k=1..K} a_k / lambda_star^{k-1} * (P - lambda_min*I)^k,
 * accumulated from iterated products of the shifted matrix (each power
 * is re-symmetrized; the exact result is symmetric). A degenerate
 * spectral span yields the zero matrix with the degenerate flag set.
 */
FilteredGraph apply_polynomial_filter(const ItemGraph& graph, const SpectralBounds& bounds,
                                      const FilterSpec& spec);

/// The first-order special case P - lambda_min*I; identical to
/// apply_polynomial_filter with K=1, a_1=1.
FilteredGraph apply_linear_lpf(const ItemGraph& graph, const SpectralBounds& bounds);

/// Frequency response h(lambda) = sum_k a_k (lambda_star - lambda)^k /
/// lambda_star^{k-1} for lambda in [0, lambda_star].
double filter_response(const FilterSpec& spec, const SpectralBounds& bounds, double lambda);

struct SpectrumHistogram {
    std::vector<double> edges;        // bins + 1 ascending edges
    std::vector<std::size_t> counts;  // one per bin, summing to n
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

/// Full-spectrum histogram (dense path only; larger graphs raise
/// CapacityError suggesting subsampling).
SpectrumHistogram spectrum_histogram(const ItemGraph& graph, std::size_t bins,
                                     std::size_t dense_threshold = 2048);

/// Quadratic-form smoothness sum_{i,j} A_ij (x_i - x_j)^2.
double smoothness(std::span<const double> x, const DenseMatrix& adjacency);

}  // namespace mmgf
