#include "mmgf/matrix.hpp"

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
using ConstMap = Eigen::Map<const RowMajorMatrix>;
using MutMap = Eigen::Map<RowMajorMatrix>;

bool is_integral(double s) { return std::isfinite(s) && s == std::floor(s); }

}  // namespace

// ============================================================
// SparseMatrix
// ============================================================

SparseMatrix::SparseMatrix(std::uint32_t rows, std::uint32_t cols,
                           std::vector<std::size_t> row_ptr,
                           std::vector<std::uint32_t> cols_idx,
                           std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)),
      col_(std::move(cols_idx)), val_(std::move(values)) {}

std::vector<Triple> SparseMatrix::to_triples() const {
    std::vector<Triple> out;
    out.reserve(nnz());
    for (std::uint32_t i = 0; i < rows_; ++i) {
        auto cols = row_cols(i);
        auto vals = row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            out.push_back({i, cols[k], vals[k]});
        }
    }
    return out;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SparseMatrix sparse_from_triples(std::span<const Triple> triples,
                                 std::uint32_t rows, std::uint32_t cols) {
    for (const Triple& t : triples) {
        if (t.row >= rows || t.col >= cols) {
            std::ostringstream msg;
            msg << "triple (" << t.row << ", " << t.col << ", " << t.value
                << ") out of range for a " << rows << "x" << cols << " matrix";
            throw InputError(msg.str());
        }
    }
    std::vector<std::size_t> order(triples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Triple& ta = triples[a];
        const Triple& tb = triples[b];
        return ta.row != tb.row ? ta.row < tb.row : ta.col < tb.col;
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        const Triple& prev = triples[order[k - 1]];
        const Triple& cur = triples[order[k]];
        if (prev.row == cur.row && prev.col == cur.col) {
            std::ostringstream msg;
            msg << "duplicate entry at (" << cur.row << ", " << cur.col << ")";
            throw InputError(msg.str());
        }
    }

    std::vector<std::size_t> row_ptr(rows + 1, 0);
    std::vector<std::uint32_t> col;
    std::vector<double> val;
    col.reserve(triples.size());
    val.reserve(triples.size());
    for (std::size_t k : order) {
        const Triple& t = triples[k];
        if (t.value == 0.0) continue;  // explicit zeros are dropped
        row_ptr[t.row + 1]++;
        col.push_back(t.col);
        val.push_back(t.value);
    }
    for (std::uint32_t i = 0; i < rows; ++i) row_ptr[i + 1] += row_ptr[i];
    return SparseMatrix(rows, cols, std::move(row_ptr), std::move(col), std::move(val));
}

DegreeVector row_degrees(const SparseMatrix& m) {
    DegreeVector deg(m.rows(), 0.0);
    parallel_for(m.rows(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double sum = 0.0;
            for (double v : m.row_vals(static_cast<std::uint32_t>(i))) sum += v;
            deg[i] = sum;
        }
    });
    return deg;
}

DegreeVector col_degrees(const SparseMatrix& m) {
    DegreeVector deg(m.cols(), 0.0);
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        auto cols = m.row_cols(i);
        auto vals = m.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) deg[cols[k]] += vals[k];
    }
    return deg;
}

SparseMatrix scale_rows_cols(const SparseMatrix& m,
                             const DegreeVector& row_scale,
                             const DegreeVector& col_scale,
                             double row_exp, double col_exp) {
    if (row_scale.size() != m.rows() || col_scale.size() != m.cols()) {
        throw InputError("scale vector lengths do not match matrix dimensions");
    }
    std::vector<double> row_pow(m.rows()), col_pow(m.cols());
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        if (row_scale[i] == 0.0 && row_exp < 0.0 && m.row_nnz(i) > 0) {
            throw SingularityError("zero degree at row " + std::to_string(i) +
                                   " under negative exponent");
        }
        row_pow[i] = row_exp == 0.0 ? 1.0 : std::pow(row_scale[i], row_exp);
    }
    std::vector<bool> col_used(m.cols(), false);
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        for (std::uint32_t c : m.row_cols(i)) col_used[c] = true;
    }
    for (std::uint32_t j = 0; j < m.cols(); ++j) {
        if (col_scale[j] == 0.0 && col_exp < 0.0 && col_used[j]) {
            throw SingularityError("zero degree at column " + std::to_string(j) +
                                   " under negative exponent");
        }
        col_pow[j] = col_exp == 0.0 ? 1.0 : std::pow(col_scale[j], col_exp);
    }

    std::vector<Triple> triples = m.to_triples();
    std::vector<std::size_t> row_ptr(m.rows() + 1, 0);
    std::vector<std::uint32_t> col(m.nnz());
    std::vector<double> val(m.nnz());
    std::size_t k = 0;
    for (const Triple& t : triples) {
        row_ptr[t.row + 1]++;
        col[k] = t.col;
        val[k] = row_pow[t.row] * t.value * col_pow[t.col];
        ++k;
    }
    for (std::uint32_t i = 0; i < m.rows(); ++i) row_ptr[i + 1] += row_ptr[i];
    return SparseMatrix(m.rows(), m.cols(), std::move(row_ptr), std::move(col),
                        std::move(val));
}

SparseMatrix transpose(const SparseMatrix& m) {
    std::vector<std::size_t> row_ptr(m.cols() + 1, 0);
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        for (std::uint32_t c : m.row_cols(i)) row_ptr[c + 1]++;
    }
    for (std::uint32_t j = 0; j < m.cols(); ++j) row_ptr[j + 1] += row_ptr[j];
    std::vector<std::uint32_t> col(m.nnz());
    std::vector<double> val(m.nnz());
    std::vector<std::size_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        auto cols = m.row_cols(i);
        auto vals = m.row_vals(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            std::size_t pos = cursor[cols[k]]++;
            col[pos] = i;
            val[pos] = vals[k];
        }
    }
    return SparseMatrix(m.cols(), m.rows(), std::move(row_ptr), std::move(col),
                        std::move(val));
}

/**
 * Dense Gram product. transpose_first computes M^T M by expanding, for
 * output row a, the stored rows of M that touch column a (via the
 * transpose), in ascending row order. Entry (a, b) and entry (b, a)
 * therefore accumulate the same products in the same order, which makes
 * the output bitwise symmetric.
 */
DenseMatrix gram(const SparseMatrix& m, GramMode mode, std::size_t dense_cap) {
    const SparseMatrix* a = &m;
    SparseMatrix storage;
    if (mode == GramMode::transpose_second) {
        storage = transpose(m);
        a = &storage;
    }
    const std::size_t n = a->cols();
    if (n > dense_cap) {
        throw CapacityError("gram output of dimension " + std::to_string(n) +
                            " exceeds the dense cap of " + std::to_string(dense_cap));
    }
    SparseMatrix at = transpose(*a);
    DenseMatrix g(n, n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t out_row = begin; out_row < end; ++out_row) {
            double* dst = g.row_data(out_row);
            auto rows = at.row_cols(static_cast<std::uint32_t>(out_row));
            auto weights = at.row_vals(static_cast<std::uint32_t>(out_row));
            for (std::size_t k = 0; k < rows.size(); ++k) {
                const double w = weights[k];
                auto cols = a->row_cols(rows[k]);
                auto vals = a->row_vals(rows[k]);
                for (std::size_t t = 0; t < cols.size(); ++t) {
                    dst[cols[t]] += w * vals[t];
                }
            }
        }
    });
    return g;
}

void hadamard_power_inplace(DenseMatrix& m, double s) {
    if (s == 1.0) return;
    const bool integral = is_integral(s);
    // validate the domain before touching any value
    for (double v : m.data()) {
        if (v < 0.0 && !integral) {
            throw DomainError("negative entry under non-integer exponent " +
                              std::to_string(s));
        }
        if (v == 0.0 && s <= 0.0) {
            throw DomainError("zero entry under non-positive exponent " +
                              std::to_string(s));
        }
    }
    auto& data = m.data();
    parallel_for(data.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            data[i] = data[i] == 0.0 ? 0.0 : std::pow(data[i], s);
        }
    });
}

DenseMatrix hadamard_power(const DenseMatrix& m, double s) {
    DenseMatrix out = m;
    hadamard_power_inplace(out, s);
    return out;
}

std::vector<double> symv(const DenseMatrix& m, std::span<const double> x) {
    if (m.cols() != x.size()) {
        throw InputError("symv dimension mismatch: matrix has " +
                         std::to_string(m.cols()) + " columns, vector has " +
                         std::to_string(x.size()));
    }
    std::vector<double> y(m.rows(), 0.0);
    parallel_for(m.rows(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double* row = m.row_data(i);
            double sum = 0.0;
            for (std::size_t j = 0; j < m.cols(); ++j) sum += row[j] * x[j];
            y[i] = sum;
        }
    });
    return y;
}

std::vector<double> spmv(const SparseMatrix& m, std::span<const double> x) {
    if (m.cols() != x.size()) {
        throw InputError("spmv dimension mismatch: matrix has " +
                         std::to_string(m.cols()) + " columns, vector has " +
                         std::to_string(x.size()));
    }
    std::vector<double> y(m.rows(), 0.0);
    parallel_for(m.rows(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto cols = m.row_cols(static_cast<std::uint32_t>(i));
            auto vals = m.row_vals(static_cast<std::uint32_t>(i));
            double sum = 0.0;
            for (std::size_t k = 0; k < cols.size(); ++k) sum += vals[k] * x[cols[k]];
            y[i] = sum;
        }
    });
    return y;
}

DenseMatrix matmat(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InputError("matmat dimension mismatch: " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    DenseMatrix out(a.rows(), b.cols());
    ConstMap ma(a.data().data(), static_cast<Eigen::Index>(a.rows()),
                static_cast<Eigen::Index>(a.cols()));
    ConstMap mb(b.data().data(), static_cast<Eigen::Index>(b.rows()),
                static_cast<Eigen::Index>(b.cols()));
    MutMap mo(out.data().data(), static_cast<Eigen::Index>(out.rows()),
              static_cast<Eigen::Index>(out.cols()));
    mo.noalias() = ma * mb;
    return out;
}

void add_scaled(DenseMatrix& acc, const DenseMatrix& m, double c) {
    if (acc.rows() != m.rows() || acc.cols() != m.cols()) {
        throw InputError("add_scaled shape mismatch");
    }
    auto& dst = acc.data();
    const auto& src = m.data();
    parallel_for(dst.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) dst[i] += c * src[i];
    });
}

double max_abs_asymmetry(const DenseMatrix& m) {
    if (m.rows() != m.cols()) {
        throw InputError("asymmetry check requires a square matrix");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
        }
    }
    return worst;
}

}  // namespace mmgf
