#include "xdio/expert.hpp"

#include <cmath>

namespace xdio {

namespace {
constexpr double kPi = 3.14159265358979323846;

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

std::vector<double> two_link_ik(const std::array<double, 2>& goal, const ArmConfig& config) {
    double l1 = config.link_lengths[0], l2 = config.link_lengths[1];
    double x = goal[0], y = goal[1];
    double d2 = x * x + y * y;
    double c2 = (d2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
    c2 = clamp(c2, -1.0, 1.0);
    // Elbow-down branch: negative elbow angle.
    double t2 = -std::acos(c2);
    double k1 = l1 + l2 * std::cos(t2);
    double k2 = l2 * std::sin(t2);
    double t1 = std::atan2(y, x) - std::atan2(k2, k1);
    return {wrap_angle(t1), wrap_angle(t2)};
}

std::vector<double> jacobian_transpose_ik(const std::array<double, 2>& goal, const ArmConfig& config) {
    std::vector<double> theta(config.num_links, 0.0);
    const double alpha = 0.8;  // damped step size
    for (int it = 0; it < 500; ++it) {
        auto ee = forward_kinematics(theta, config);
        double ex = goal[0] - ee[0], ey = goal[1] - ee[1];
        if (std::sqrt(ex * ex + ey * ey) < 1e-3) break;
        // J[0][i] = d(x)/d(theta_i) = -sum_{m>=i} l_m sin(cum_m); J[1][i] symmetric.
        double cum = 0.0;
        std::vector<double> cums(config.num_links);
        for (int i = 0; i < config.num_links; ++i) {
            cum += theta[i];
            cums[i] = cum;
        }
        for (int i = 0; i < config.num_links; ++i) {
            double jx = 0.0, jy = 0.0;
            for (int m = i; m < config.num_links; ++m) {
                jx -= config.link_lengths[m] * std::sin(cums[m]);
                jy += config.link_lengths[m] * std::cos(cums[m]);
            }
            theta[i] += alpha * (jx * ex + jy * ey);
        }
    }
    for (double& t : theta) t = wrap_angle(t);
    return theta;
}

}  // namespace

std::vector<double> inverse_kinematics(const std::array<double, 2>& goal, const ArmConfig& config) {
    double r = std::sqrt(goal[0] * goal[0] + goal[1] * goal[1]);
    if (r > config.total_reach() + 1e-12)
        throw std::invalid_argument("inverse_kinematics: goal out of reach");
    if (config.num_links == 1) return {wrap_angle(std::atan2(goal[1], goal[0]))};
    if (config.num_links == 2) return two_link_ik(goal, config);
    return jacobian_transpose_ik(goal, config);
}

Action expert_action(const ArmState& state, const PdExpert& expert, const ArmConfig& config) {
    std::vector<double> target = inverse_kinematics(state.goal, config);
    Action tau(config.num_links);
    for (int i = 0; i < config.num_links; ++i) {
        double e = wrap_angle(target[i] - state.angles[i]);
        tau[i] = clamp(expert.kp * e - expert.kd * state.velocities[i], -config.torque_limit,
                       config.torque_limit);
    }
    return tau;
}

std::vector<Trajectory> generate_demos(const DemoRequest& request, const ArmConfig& config,
                                       const PdExpert& expert) {
    if (request.num_trajectories < 1)
        throw std::invalid_argument("generate_demos: num_trajectories must be >= 1");
    std::vector<Trajectory> out;
    out.reserve(request.num_trajectories);
    int reached = 0;
    for (int ep = 0; ep < request.num_trajectories; ++ep) {
        ArmEnv env(config, request.task);
        env.reset(derive_seed(request.seed, std::uint64_t(ep)));
        Trajectory traj;
        traj.domain = request.domain;
        traj.task_id = request.task.task_id;
        if (request.record_actions) traj.actions.emplace();
        traj.states.push_back(observe(env.state(), config));
        while (!env.done()) {
            Action a = expert_action(env.state(), expert, config);
            StepOutcome step = env.step(a);
            if (request.record_actions) traj.actions->push_back(a);
            traj.states.push_back(observe(step.state, config));
            if (step.task_complete) traj.reached_goal = true;
        }
        if (traj.reached_goal) ++reached;
        out.push_back(std::move(traj));
    }
    double rate = double(reached) / double(request.num_trajectories);
    if (rate < 0.95)
        throw std::runtime_error("generate_demos: expert success rate " + std::to_string(rate) +
                                 " below 0.95 on task " + request.task.task_id + " (mis-tuned expert)");
    return out;
}

double random_policy_return(const ArmConfig& config, const TaskSpec& task, int episodes,
                            std::uint64_t seed) {
    double total = 0.0;
    for (int ep = 0; ep < episodes; ++ep) {
        ArmEnv env(config, task);
        std::uint64_t s = derive_seed(seed, std::uint64_t(ep));
        env.reset(s);
        Rng rng = make_rng(mix64(s));
        std::uniform_real_distribution<double> dist(-config.torque_limit, config.torque_limit);
        double ret = 0.0;
        while (!env.done()) {
            Action a(config.num_links);
            for (double& t : a) t = dist(rng);
            ret += env.step(a).reward;
        }
        total += ret;
    }
    return total / episodes;
}

double expert_return(const ArmConfig& config, const TaskSpec& task, const PdExpert& expert, int episodes,
                     std::uint64_t seed) {
    double total = 0.0;
    for (int ep = 0; ep < episodes; ++ep) {
        ArmEnv env(config, task);
        env.reset(derive_seed(seed, std::uint64_t(ep)));
        double ret = 0.0;
        while (!env.done()) ret += env.step(expert_action(env.state(), expert, config)).reward;
        total += ret;
    }
    return total / episodes;
}

}  // namespace xdio
