#include "mmgf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mmgf/errors.hpp"
#include "mmgf/parallel.hpp"

namespace mmgf {

namespace {

constexpr double kSymmetryTol = 1e-10;

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_symmetric(const DenseMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw InputError(std::string(what) + " requires a square matrix");
    }
    if (max_abs_asymmetry(m) > kSymmetryTol) {
        throw InputError(std::string(what) + " requires a symmetric matrix");
    }
}

std::pair<double, double> dense_extremes(const DenseMatrix& m) {
    Eigen::Map<const RowMajorMatrix> map(m.data().data(),
                                         static_cast<Eigen::Index>(m.rows()),
                                         static_cast<Eigen::Index>(m.cols()));
    Eigen::SelfAdjointEigenSolver<RowMajorMatrix> solver(map, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

// Lower Gershgorin bound min_i (P_ii - sum_{j != i} |P_ij|).
double gershgorin_lower(const DenseMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<double> per_row(n, 0.0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double* row = m.row_data(i);
            double radius = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) radius += std::abs(row[j]);
            }
            per_row[i] = row[i] - radius;
        }
    });
    double lo = per_row[0];
    for (double v : per_row) lo = std::min(lo, v);
    return lo;
}

struct PowerResult {
    double theta = 0.0;     // dominant eigenvalue of the iterated operator
    double residual = 0.0;
    std::size_t iterations = 0;
};

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

/**
 * Power iteration on op(v) = P v + shift * v with the deterministic
 * all-ones start. `scale` converts the shifted estimate back to the
 * eigenvalue of interest for the stopping test: convergence requires
 * residual <= tol * max(1, |theta - shift|).
 */
PowerResult power_iteration(const DenseMatrix& p, double shift, bool negate,
                            double tol, std::size_t max_iter) {
    const std::size_t n = p.rows();
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double theta = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    double best_residual = residual;
    std::size_t since_progress = 0;
    bool perturbed = false;

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        // w = (negate ? shift*v - P v : P v + shift*v)
        std::vector<double> w = symv(p, v);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = negate ? shift * v[i] - w[i] : w[i] + shift * v[i];
        }
        theta = dot(v, w);
        double res_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = w[i] - theta * v[i];
            res_sq += r * r;
        }
        residual = std::sqrt(res_sq);
        // stopping scale uses the eigenvalue actually reported, i.e.
        // lambda_max = theta - shift or lambda_min = shift - theta
        const double reported = negate ? shift - theta : theta - shift;
        const double nw = norm2(w);
        if (residual <= tol * std::max(1.0, std::abs(reported)) && (nw != 0.0 || perturbed)) {
            return {theta, residual, iter};
        }
        auto perturb = [&] {
            for (std::size_t i = 0; i < n; ++i) {
                v[i] += 1e-6 * std::sin(static_cast<double>(i) + 1.0);
            }
            const double nv = norm2(v);
            for (double& x : v) x /= nv;
            perturbed = true;
            since_progress = 0;
        };
        if (nw == 0.0) {
            // v is annihilated: either the all-ones start sits exactly in
            // the operator's kernel, or the operator itself is zero.
            if (perturbed) return {0.0, 0.0, iter};
            perturb();
            continue;
        }
        if (residual < best_residual * 0.999) {
            best_residual = residual;
            since_progress = 0;
        } else if (++since_progress >= 100 && !perturbed) {
            perturb();  // likely started orthogonal to the dominant eigenvector
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    throw ConvergenceError("power iteration did not reach tolerance " +
                               std::to_string(tol) + " within " +
                               std::to_string(max_iter) + " iterations (residual " +
                               std::to_string(residual) + ")",
                           residual);
}

}  // namespace

SpectralBounds extreme_eigenvalues(const ItemGraph& graph, const EigOptions& opts) {
    check_symmetric(graph.adjacency, "extreme_eigenvalues");
    const std::size_t n = graph.adjacency.rows();

    SpectralBounds bounds;
    if (n <= opts.dense_threshold) {
        auto [lo, hi] = dense_extremes(graph.adjacency);
        bounds.lambda_min = lo;
        bounds.lambda_max = hi;
        bounds.method = BoundsMethod::dense;
        bounds.residual = 0.0;
    } else {
        const double shift = std::max(0.0, -gershgorin_lower(graph.adjacency));
        PowerResult top =
            power_iteration(graph.adjacency, shift, /*negate=*/false, opts.tol, opts.max_iter);
        const double lambda_max = top.theta - shift;
        PowerResult bottom = power_iteration(graph.adjacency, lambda_max, /*negate=*/true,
                                             opts.tol, opts.max_iter);
        bounds.lambda_min = lambda_max - bottom.theta;
        bounds.lambda_max = lambda_max;
        bounds.method = BoundsMethod::iterative;
        bounds.residual = std::max(top.residual, bottom.residual);
    }
    bounds.lambda_star = bounds.lambda_max - bounds.lambda_min;
    return bounds;
}

namespace {

FilteredGraph filter_core(const ItemGraph& graph, const SpectralBounds& bounds,
                          FilterSpec spec_tag, std::span<const double> coeffs) {
    const std::size_t n = graph.adjacency.rows();
    FilteredGraph out;
    out.n_items = graph.n_items;
    out.bounds = bounds;
    out.spec = std::move(spec_tag);

    if (bounds.lambda_star <= kDegenerateSpectrumEps) {
        out.adjacency = DenseMatrix(n, n);
        out.degenerate = true;
        return out;
    }

    // shifted = P - lambda_min * I
    DenseMatrix shifted = graph.adjacency;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= bounds.lambda_min;

    DenseMatrix acc(n, n);
    DenseMatrix power;  // shifted^k for the current k
    double norm = 1.0;  // lambda_star^{k-1}
    for (std::size_t k = 1; k <= coeffs.size(); ++k) {
        if (k == 1) {
            power = shifted;
        } else {
            power = matmat(power, shifted);
            // the exact power is symmetric; fold out rounding asymmetry
            parallel_for(n, [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i) {
                    for (std::size_t j = i + 1; j < n; ++j) {
                        const double v = 0.5 * (power(i, j) + power(j, i));
                        power(i, j) = v;
                        power(j, i) = v;
                    }
                }
            });
            norm *= bounds.lambda_star;
        }
        const double weight = coeffs[k - 1] / norm;
        if (weight != 0.0) add_scaled(acc, power, weight);
        // remaining coefficients all zero: no need to grow the power chain
        bool rest_zero = true;
        for (std::size_t t = k; t < coeffs.size(); ++t) rest_zero &= coeffs[t] == 0.0;
        if (rest_zero) break;
    }
    out.adjacency = std::move(acc);
    return out;
}

}  // namespace

FilteredGraph apply_polynomial_filter(const ItemGraph& graph, const SpectralBounds& bounds,
                                      const FilterSpec& spec) {
    if (spec.kind != FilterKind::polynomial) {
        throw InputError("apply_polynomial_filter requires a polynomial filter spec");
    }
    if (spec.coefficients.empty()) {
        throw InputError("polynomial filter needs at least one coefficient");
    }
    check_symmetric(graph.adjacency, "apply_polynomial_filter");
    return filter_core(graph, bounds, spec, spec.coefficients);
}

FilteredGraph apply_linear_lpf(const ItemGraph& graph, const SpectralBounds& bounds) {
    check_symmetric(graph.adjacency, "apply_linear_lpf");
    static const double kOne[] = {1.0};
    return filter_core(graph, bounds, FilterSpec::linear(), std::span<const double>(kOne, 1));
}

double filter_response(const FilterSpec& spec, const SpectralBounds& bounds, double lambda) {
    const double star = bounds.lambda_star;
    if (lambda < 0.0 || lambda > star) {
        throw InputError("frequency " + std::to_string(lambda) + " outside [0, " +
                         std::to_string(star) + "]");
    }
    if (star <= kDegenerateSpectrumEps) return 0.0;
    std::span<const double> coeffs = spec.coefficients;
    static const double kOne[] = {1.0};
    if (spec.kind == FilterKind::linear_lpf) coeffs = std::span<const double>(kOne, 1);

    double h = 0.0;
    double term = 1.0;  // (star - lambda)^k / star^{k-1}
    for (std::size_t k = 1; k <= coeffs.size(); ++k) {
        term = k == 1 ? (star - lambda) : term * (star - lambda) / star;
        h += coeffs[k - 1] * term;
    }
    return h;
}

SpectrumHistogram spectrum_histogram(const ItemGraph& graph, std::size_t bins,
                                     std::size_t dense_threshold) {
    check_symmetric(graph.adjacency, "spectrum_histogram");
    if (bins == 0) throw InputError("histogram needs at least one bin");
    const std::size_t n = graph.adjacency.rows();
    if (n > dense_threshold) {
        throw CapacityError("spectrum histogram needs a full eigendecomposition; " +
                            std::to_string(n) + " items exceed the dense threshold of " +
                            std::to_string(dense_threshold) +
                            " (subsample the graph or raise the threshold)");
    }
    Eigen::Map<const RowMajorMatrix> map(graph.adjacency.data().data(),
                                         static_cast<Eigen::Index>(n),
                                         static_cast<Eigen::Index>(n));
    Eigen::SelfAdjointEigenSolver<RowMajorMatrix> solver(map, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();

    SpectrumHistogram hist;
    hist.lambda_min = ev(0);
    hist.lambda_max = ev(ev.size() - 1);
    double lo = hist.lambda_min;
    double hi = hist.lambda_max;
    if (hi - lo < 1e-12) {  // flat spectrum: widen so the single bin holds it
        lo -= 0.5;
        hi += 0.5;
    }
    hist.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        hist.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    }
    hist.counts.assign(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        auto b = static_cast<std::size_t>(
            std::clamp((ev(i) - lo) / width, 0.0, static_cast<double>(bins - 1)));
        hist.counts[b]++;
    }
    return hist;
}

double smoothness(std::span<const double> x, const DenseMatrix& adjacency) {
    check_symmetric(adjacency, "smoothness");
    if (adjacency.rows() != x.size()) {
        throw InputError("signal length " + std::to_string(x.size()) +
                         " does not match graph size " + std::to_string(adjacency.rows()));
    }
    const std::size_t n = x.size();
    std::vector<double> partial(n, 0.0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double* row = adjacency.row_data(i);
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = x[i] - x[j];
                sum += row[j] * d * d;
            }
            partial[i] = sum;
        }
    });
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

}  // namespace mmgf
