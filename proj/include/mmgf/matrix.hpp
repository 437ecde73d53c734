#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mmgf {

// Dense Gram materializations above this many rows/columns raise a
// CapacityError (an n x n f64 matrix at the cap is ~8 GiB).
inline constexpr std::size_t kDefaultDenseCap = 32768;

struct Triple {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    double value = 0.0;
};

/**
 * Compressed-row sparse matrix with strictly increasing column indices
 * per row and no explicitly stored zeros. Values are immutable after
 * construction; every kernel that reduces over a row accumulates in
 * ascending column order, so results are bit-identical across runs and
 * worker counts.
 */
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::uint32_t rows, std::uint32_t cols,
                 std::vector<std::size_t> row_ptr,
                 std::vector<std::uint32_t> cols_idx,
                 std::vector<double> values);

    std::uint32_t rows() const noexcept { return rows_; }
    std::uint32_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return col_.size(); }

    std::span<const std::uint32_t> row_cols(std::uint32_t i) const {
        return {col_.data() + row_ptr_[i], col_.data() + row_ptr_[i + 1]};
    }
    std::span<const double> row_vals(std::uint32_t i) const {
        return {val_.data() + row_ptr_[i], val_.data() + row_ptr_[i + 1]};
    }
    std::size_t row_nnz(std::uint32_t i) const { return row_ptr_[i + 1] - row_ptr_[i]; }

    std::vector<Triple> to_triples() const;

    bool operator==(const SparseMatrix&) const = default;

private:
    std::uint32_t rows_ = 0;
    std::uint32_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> col_;
    std::vector<double> val_;
};

/// Row-major dense matrix of 64-bit reals.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row_data(std::size_t i) { return data_.data() + i * cols_; }
    const double* row_data(std::size_t i) const { return data_.data() + i * cols_; }

    std::vector<double>& data() noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

using DegreeVector = std::vector<double>;

enum class GramMode { transpose_first, transpose_second };

// Construction. Duplicate (row, col) pairs are an input error; triples
// with value 0 are dropped.
SparseMatrix sparse_from_triples(std::span<const Triple> triples,
                                 std::uint32_t rows, std::uint32_t cols);

DegreeVector row_degrees(const SparseMatrix& m);
DegreeVector col_degrees(const SparseMatrix& m);

// M'_ij = row_scale[i]^row_exp * M_ij * col_scale[j]^col_exp. A zero
// scale touching a stored entry under a negative exponent is a
// SingularityError; untouched zero scales are fine.
SparseMatrix scale_rows_cols(const SparseMatrix& m,
                             const DegreeVector& row_scale,
                             const DegreeVector& col_scale,
                             double row_exp, double col_exp);

SparseMatrix transpose(const SparseMatrix& m);

// Dense M^T M (transpose_first) or M M^T (transpose_second). Output is
// bitwise symmetric by construction.
DenseMatrix gram(const SparseMatrix& m, GramMode mode,
                 std::size_t dense_cap = kDefaultDenseCap);

// Elementwise power with 0^s = 0 for s > 0. Negative entries under a
// non-integer exponent and zero entries under s <= 0 raise DomainError.
DenseMatrix hadamard_power(const DenseMatrix& m, double s);
void hadamard_power_inplace(DenseMatrix& m, double s);

std::vector<double> symv(const DenseMatrix& m, std::span<const double> x);
std::vector<double> spmv(const SparseMatrix& m, std::span<const double> x);
DenseMatrix matmat(const DenseMatrix& a, const DenseMatrix& b);

/// acc += c * m (elementwise, same shape).
void add_scaled(DenseMatrix& acc, const DenseMatrix& m, double c);

double max_abs_asymmetry(const DenseMatrix& m);

}  // namespace mmgf
