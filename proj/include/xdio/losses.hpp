#pragma once

#include "xdio/matrix.hpp"

namespace xdio {

// Mean over rows of the squared L2 distance between matching rows.
double mse(const Matrix& a, const Matrix& b);
// d(mse)/da; d/db is its negation.
Matrix mse_grad(const Matrix& a, const Matrix& b);

// Least-squares adversarial losses on raw (linear) discriminator heads.
// disc_loss = mean((d_real-1)^2) + mean(d_fake^2)
// gen_loss  = mean((d_fake-1)^2)
struct LsqAdvLosses {
    double disc_loss;
    double gen_loss;
};
LsqAdvLosses lsq_adv_losses(const Matrix& d_real, const Matrix& d_fake);
Matrix lsq_disc_grad_real(const Matrix& d_real);
Matrix lsq_disc_grad_fake(const Matrix& d_fake);
Matrix lsq_gen_grad(const Matrix& d_fake);

// Binary cross-entropy on sigmoid probabilities; probabilities clamped to
// [1e-7, 1-1e-7]. label is a [Bx1] matrix of {0,1} (or a scalar broadcast).
double bce(const Matrix& pred_prob, const Matrix& label);
double bce(const Matrix& pred_prob, double label);
Matrix bce_grad(const Matrix& pred_prob, const Matrix& label);
Matrix bce_grad(const Matrix& pred_prob, double label);

}  // namespace xdio
