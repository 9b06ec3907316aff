#include "xdio/losses.hpp"

#include <cmath>

namespace xdio {

namespace {
constexpr double kProbClamp = 1e-7;

double clamp_prob(double p) {
    if (p < kProbClamp) return kProbClamp;
    if (p > 1.0 - kProbClamp) return 1.0 - kProbClamp;
    return p;
}

void require_column(const Matrix& m, const char* what) {
    if (m.cols != 1) throw std::invalid_argument(std::string(what) + ": expected a Bx1 matrix");
    if (m.rows == 0) throw std::invalid_argument(std::string(what) + ": empty batch");
}
}  // namespace

double mse(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("mse: shape mismatch");
    if (a.rows == 0) throw std::invalid_argument("mse: empty batch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return s / double(a.rows);
}

Matrix mse_grad(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("mse_grad: shape mismatch");
    Matrix g(a.rows, a.cols);
    double inv = 2.0 / double(a.rows);
    for (std::size_t i = 0; i < a.data.size(); ++i) g.data[i] = inv * (a.data[i] - b.data[i]);
    return g;
}

LsqAdvLosses lsq_adv_losses(const Matrix& d_real, const Matrix& d_fake) {
    require_column(d_real, "lsq_adv_losses(real)");
    require_column(d_fake, "lsq_adv_losses(fake)");
    double sr = 0.0, sf = 0.0, sg = 0.0;
    for (double v : d_real.data) sr += (v - 1.0) * (v - 1.0);
    for (double v : d_fake.data) {
        sf += v * v;
        sg += (v - 1.0) * (v - 1.0);
    }
    return {sr / d_real.rows + sf / d_fake.rows, sg / d_fake.rows};
}

Matrix lsq_disc_grad_real(const Matrix& d_real) {
    require_column(d_real, "lsq_disc_grad_real");
    Matrix g(d_real.rows, 1);
    for (int i = 0; i < d_real.rows; ++i) g.data[i] = 2.0 * (d_real.data[i] - 1.0) / d_real.rows;
    return g;
}

Matrix lsq_disc_grad_fake(const Matrix& d_fake) {
    require_column(d_fake, "lsq_disc_grad_fake");
    Matrix g(d_fake.rows, 1);
    for (int i = 0; i < d_fake.rows; ++i) g.data[i] = 2.0 * d_fake.data[i] / d_fake.rows;
    return g;
}

Matrix lsq_gen_grad(const Matrix& d_fake) {
    require_column(d_fake, "lsq_gen_grad");
    Matrix g(d_fake.rows, 1);
    for (int i = 0; i < d_fake.rows; ++i) g.data[i] = 2.0 * (d_fake.data[i] - 1.0) / d_fake.rows;
    return g;
}

double bce(const Matrix& pred_prob, const Matrix& label) {
    require_column(pred_prob, "bce");
    if (!pred_prob.same_shape(label)) throw std::invalid_argument("bce: shape mismatch");
    double s = 0.0;
    for (int i = 0; i < pred_prob.rows; ++i) {
        double p = clamp_prob(pred_prob.data[i]);
        double y = label.data[i];
        s += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    }
    return s / pred_prob.rows;
}

double bce(const Matrix& pred_prob, double label) {
    Matrix y(pred_prob.rows, 1);
    y.fill(label);
    return bce(pred_prob, y);
}

Matrix bce_grad(const Matrix& pred_prob, const Matrix& label) {
    require_column(pred_prob, "bce_grad");
    if (!pred_prob.same_shape(label)) throw std::invalid_argument("bce_grad: shape mismatch");
    Matrix g(pred_prob.rows, 1);
    for (int i = 0; i < pred_prob.rows; ++i) {
        double p = clamp_prob(pred_prob.data[i]);
        double y = label.data[i];
        // Zero beyond the clamp boundary, matching the clamped forward.
        bool clamped = pred_prob.data[i] < kProbClamp || pred_prob.data[i] > 1.0 - kProbClamp;
        g.data[i] = clamped ? 0.0 : (-(y / p) + (1.0 - y) / (1.0 - p)) / pred_prob.rows;
    }
    return g;
}

Matrix bce_grad(const Matrix& pred_prob, double label) {
    Matrix y(pred_prob.rows, 1);
    y.fill(label);
    return bce_grad(pred_prob, y);
}

}  // namespace xdio
