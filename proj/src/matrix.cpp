#include "xdio/matrix.hpp"

#include <Eigen/Core>

#include <cmath>

namespace xdio {

namespace {
using EMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CMap = Eigen::Map<const EMat>;
using MMap = Eigen::Map<EMat>;
}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions disagree");
    Matrix c(a.rows, b.cols);
    MMap(c.data.data(), c.rows, c.cols).noalias() =
        CMap(a.data.data(), a.rows, a.cols) * CMap(b.data.data(), b.rows, b.cols);
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols != b.cols) throw std::invalid_argument("matmul_nt: inner dimensions disagree");
    Matrix c(a.rows, b.rows);
    MMap(c.data.data(), c.rows, c.cols).noalias() =
        CMap(a.data.data(), a.rows, a.cols) * CMap(b.data.data(), b.rows, b.cols).transpose();
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("matmul_tn: inner dimensions disagree");
    Matrix c(a.cols, b.cols);
    MMap(c.data.data(), c.rows, c.cols).noalias() =
        CMap(a.data.data(), a.rows, a.cols).transpose() * CMap(b.data.data(), b.rows, b.cols);
    return c;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols != int(x.size())) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(a.rows, 0.0);
    for (int r = 0; r < a.rows; ++r) {
        const double* ar = a.row_ptr(r);
        double s = 0.0;
        for (int c = 0; c < a.cols; ++c) s += ar[c] * x[c];
        y[r] = s;
    }
    return y;
}

std::vector<double> matvec_t(const Matrix& a, const std::vector<double>& x) {
    if (a.rows != int(x.size())) throw std::invalid_argument("matvec_t: dimension mismatch");
    std::vector<double> y(a.cols, 0.0);
    for (int r = 0; r < a.rows; ++r) {
        const double* ar = a.row_ptr(r);
        const double xr = x[r];
        for (int c = 0; c < a.cols; ++c) y[c] += ar[c] * xr;
    }
    return y;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("hcat: row counts disagree");
    Matrix c(a.rows, a.cols + b.cols);
    for (int r = 0; r < a.rows; ++r) {
        double* cr = c.row_ptr(r);
        const double* ar = a.row_ptr(r);
        const double* br = b.row_ptr(r);
        for (int i = 0; i < a.cols; ++i) cr[i] = ar[i];
        for (int i = 0; i < b.cols; ++i) cr[a.cols + i] = br[i];
    }
    return c;
}

void hsplit(const Matrix& ab, int cols_a, Matrix& a, Matrix& b) {
    if (cols_a < 0 || cols_a > ab.cols) throw std::invalid_argument("hsplit: bad column split");
    a = Matrix(ab.rows, cols_a);
    b = Matrix(ab.rows, ab.cols - cols_a);
    for (int r = 0; r < ab.rows; ++r) {
        const double* src = ab.row_ptr(r);
        double* ar = a.row_ptr(r);
        double* br = b.row_ptr(r);
        for (int i = 0; i < cols_a; ++i) ar[i] = src[i];
        for (int i = 0; i < b.cols; ++i) br[i] = src[cols_a + i];
    }
}

Matrix gather_rows(const Matrix& src, const std::vector<int>& idx) {
    Matrix out(int(idx.size()), src.cols);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        if (idx[r] < 0 || idx[r] >= src.rows) throw std::out_of_range("gather_rows: index out of range");
        const double* s = src.row_ptr(idx[r]);
        double* d = out.row_ptr(int(r));
        for (int c = 0; c < src.cols; ++c) d[c] = s[c];
    }
    return out;
}

void add_inplace(Matrix& a, const Matrix& b, double scale) {
    if (!a.same_shape(b)) throw std::invalid_argument("add_inplace: shape mismatch");
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += scale * b.data[i];
}

bool all_finite(const Matrix& m) {
    for (double v : m.data)
        if (!std::isfinite(v)) return false;
    return true;
}

double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void require_shape(const Matrix& m, int rows, int cols, const std::string& what) {
    if (m.rows != rows || m.cols != cols)
        throw std::invalid_argument(what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                                    ", got " + std::to_string(m.rows) + "x" + std::to_string(m.cols));
}

}  // namespace xdio
