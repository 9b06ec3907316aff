#pragma once

#include "xdio/mlp.hpp"
#include "xdio/trajectory.hpp"

namespace xdio {

// Regressor of normalized temporal position gamma^(H-t) over normalized
// non-goal states. Frozen once trained; alignment only reads it.
struct PositionEstimator {
    Mlp net;  // hidden [200,128], scalar output
    Domain domain = Domain::Expert;
    std::string task_id;
    double gamma_pos = 0.95;
    bool trained = false;
};

// labels[t] = gamma^(H-t), t = 1..H (terminal label exactly 1). The
// trajectory must have reached its goal.
std::vector<double> position_labels(const Trajectory& traj, double gamma_pos);

struct PositionTrainReport {
    double train_mse = 0.0;
    double holdout_mse = 0.0;
};

// Squared-error regression via Adam on (state, label) pairs from the
// goal-reaching trajectories. Last tenth of the trajectories held out.
PositionEstimator train_position_estimator(const std::vector<Trajectory>& trajs, Domain domain,
                                           const std::string& task_id, double gamma_pos,
                                           const Normalizer& norm, int steps, int batch_size, double lr,
                                           std::uint64_t seed, PositionTrainReport* report = nullptr);

double estimate_position(const PositionEstimator& est, const Matrix& normalized_states,
                         Matrix* out = nullptr);

// Eq.-style sum over both directions of mean squared position mismatch.
// psi_of_e / phi_of_a are the mapped batches; estimators stay frozen.
double pos_consistency_loss(const PositionEstimator& p_e, const PositionEstimator& p_a,
                            const Matrix& batch_e, const Matrix& psi_of_e, const Matrix& batch_a,
                            const Matrix& phi_of_a);

// || P_z(Enc_E(s)) - P_E_T(s) ||^2 averaged over the batch; target frozen.
double latent_pos_loss(const Mlp& p_z, const Matrix& latents, const PositionEstimator& p_e_inf,
                       const Matrix& batch_e_inf);

}  // namespace xdio
