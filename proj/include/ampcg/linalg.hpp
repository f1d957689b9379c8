#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ampcg {

// Minimal dense matrix helpers for the small symmetric systems that appear in
// partial-correlation tests and Gaussian sampling. Sizes stay in the low
// hundreds, so plain O(n^3) routines are fine.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Gauss-Jordan inverse with partial pivoting. Throws on singular input.
Matrix inverse(Matrix a);

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
Matrix cholesky(const Matrix& a);

Matrix matmul(const Matrix& a, const Matrix& b);

}  // namespace ampcg
