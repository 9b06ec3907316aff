#include "xdio/temporal.hpp"

#include "xdio/losses.hpp"

#include <cmath>

namespace xdio {

std::vector<double> position_labels(const Trajectory& traj, double gamma_pos) {
    if (!(gamma_pos > 0.0 && gamma_pos < 1.0))
        throw std::invalid_argument("position_labels: gamma must lie in (0,1)");
    if (!traj.reached_goal)
        throw std::invalid_argument("position_labels: trajectory did not reach its goal");
    int h = traj.length();
    std::vector<double> labels(h);
    for (int t = 1; t <= h; ++t) labels[t - 1] = std::pow(gamma_pos, double(h - t));
    labels[h - 1] = 1.0;
    return labels;
}

PositionEstimator train_position_estimator(const std::vector<Trajectory>& trajs, Domain domain,
                                           const std::string& task_id, double gamma_pos,
                                           const Normalizer& norm, int steps, int batch_size, double lr,
                                           std::uint64_t seed, PositionTrainReport* report) {
    if (!(gamma_pos > 0.0 && gamma_pos < 1.0))
        throw std::invalid_argument("train_position_estimator: gamma must lie in (0,1)");
    std::vector<const Trajectory*> reaching;
    for (const Trajectory& t : trajs)
        if (t.reached_goal) reaching.push_back(&t);
    if (reaching.empty())
        throw std::runtime_error("train_position_estimator: no goal-reaching trajectories for task " +
                                 task_id);

    int holdout_from = std::max(1, int(reaching.size()) - int(reaching.size()) / 10);
    std::vector<std::vector<double>> xs, xs_hold;
    std::vector<double> ys, ys_hold;
    for (std::size_t i = 0; i < reaching.size(); ++i) {
        std::vector<double> labels = position_labels(*reaching[i], gamma_pos);
        bool hold = int(i) >= holdout_from;
        for (int t = 0; t < reaching[i]->length(); ++t) {
            std::vector<double> s = norm.apply(reaching[i]->states[t]);
            s.resize(norm.nongoal_dim());
            (hold ? xs_hold : xs).push_back(std::move(s));
            (hold ? ys_hold : ys).push_back(labels[t]);
        }
    }

    int ng = norm.nongoal_dim();
    Matrix x_all(int(xs.size()), ng);
    Matrix y_all(int(ys.size()), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (int c = 0; c < ng; ++c) x_all(int(i), c) = xs[i][c];
        y_all(int(i), 0) = ys[i];
    }

    PositionEstimator est;
    est.domain = domain;
    est.task_id = task_id;
    est.gamma_pos = gamma_pos;
    Rng rng = make_rng(seed);
    est.net = make_mlp({ng, 200, 128, 1}, Activation::LeakyRelu, Activation::Identity, false, rng);
    AdamState adam = make_adam(est.net, lr);

    std::uniform_int_distribution<int> pick(0, x_all.rows - 1);
    double last_loss = 0.0;
    for (int step = 0; step < steps; ++step) {
        std::vector<int> idx(std::min(batch_size, x_all.rows));
        for (int& i : idx) i = pick(rng);
        Matrix xb = gather_rows(x_all, idx);
        Matrix yb = gather_rows(y_all, idx);
        ForwardTrace trace = mlp_forward_traced(est.net, xb);
        last_loss = mse(trace.output(), yb);
        Gradients g = zero_gradients(est.net);
        mlp_backward(est.net, trace, mse_grad(trace.output(), yb), g);
        adam_step(est.net, g, adam);
    }
    est.trained = true;

    if (report) {
        report->train_mse = last_loss;
        if (!xs_hold.empty()) {
            Matrix xh(int(xs_hold.size()), ng);
            Matrix yh(int(ys_hold.size()), 1);
            for (std::size_t i = 0; i < xs_hold.size(); ++i) {
                for (int c = 0; c < ng; ++c) xh(int(i), c) = xs_hold[i][c];
                yh(int(i), 0) = ys_hold[i];
            }
            report->holdout_mse = mse(mlp_forward(est.net, xh), yh);
        } else {
            report->holdout_mse = last_loss;
        }
    }
    return est;
}

double estimate_position(const PositionEstimator& est, const Matrix& normalized_states, Matrix* out) {
    if (!est.trained) throw std::runtime_error("estimate_position: estimator not trained");
    Matrix p = mlp_forward(est.net, normalized_states);
    double mean = 0.0;
    for (double v : p.data) mean += v;
    mean /= std::max(1, p.rows);
    if (out) *out = std::move(p);
    return mean;
}

double pos_consistency_loss(const PositionEstimator& p_e, const PositionEstimator& p_a,
                            const Matrix& batch_e, const Matrix& psi_of_e, const Matrix& batch_a,
                            const Matrix& phi_of_a) {
    if (!p_e.trained || !p_a.trained)
        throw std::runtime_error("pos_consistency_loss: estimators must be trained");
    Matrix pa_psi = mlp_forward(p_a.net, psi_of_e);
    Matrix pe_e = mlp_forward(p_e.net, batch_e);
    Matrix pe_phi = mlp_forward(p_e.net, phi_of_a);
    Matrix pa_a = mlp_forward(p_a.net, batch_a);
    return mse(pa_psi, pe_e) + mse(pe_phi, pa_a);
}

double latent_pos_loss(const Mlp& p_z, const Matrix& latents, const PositionEstimator& p_e_inf,
                       const Matrix& batch_e_inf) {
    if (!p_e_inf.trained) throw std::runtime_error("latent_pos_loss: target estimator must be trained");
    Matrix pred = mlp_forward(p_z, latents);
    Matrix target = mlp_forward(p_e_inf.net, batch_e_inf);
    return mse(pred, target);
}

}  // namespace xdio
