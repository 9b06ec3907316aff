#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace xdio {

// Dense row-major matrix of doubles. The workhorse container for batches,
// weights and gradients.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0.0) {
        if (r < 0 || c < 0) throw std::invalid_argument("Matrix: negative dimension");
    }
    Matrix(int r, int c, std::vector<double> d) : rows(r), cols(c), data(std::move(d)) {
        if (std::size_t(r) * c != data.size()) throw std::invalid_argument("Matrix: size mismatch");
    }

    double& operator()(int r, int c) { return data[std::size_t(r) * cols + c]; }
    double operator()(int r, int c) const { return data[std::size_t(r) * cols + c]; }

    const double* row_ptr(int r) const { return data.data() + std::size_t(r) * cols; }
    double* row_ptr(int r) { return data.data() + std::size_t(r) * cols; }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }

    void fill(double v) { std::fill(data.begin(), data.end(), v); }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Matrix from_row(const std::vector<double>& v) { return Matrix(1, int(v.size()), v); }
};

// C = A * B
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A * B^T
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// C = A^T * B
Matrix matmul_tn(const Matrix& a, const Matrix& b);

// y = A * x (vector forms used by spectral normalization)
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);
std::vector<double> matvec_t(const Matrix& a, const std::vector<double>& x);

Matrix hcat(const Matrix& a, const Matrix& b);
// Split [a | b] columns back apart.
void hsplit(const Matrix& ab, int cols_a, Matrix& a, Matrix& b);

Matrix gather_rows(const Matrix& src, const std::vector<int>& idx);

void add_inplace(Matrix& a, const Matrix& b, double scale = 1.0);

bool all_finite(const Matrix& m);

double l2_norm(const std::vector<double>& v);

void require_shape(const Matrix& m, int rows, int cols, const std::string& what);

}  // namespace xdio
