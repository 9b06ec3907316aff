#include "xdio/arm_env.hpp"

#include <algorithm>
#include <cmath>

namespace xdio {

namespace {
constexpr double kPi = 3.14159265358979323846;

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }
}  // namespace

double ArmConfig::total_reach() const {
    double s = 0.0;
    for (double l : link_lengths) s += l;
    return s;
}

void ArmConfig::validate() const {
    if (num_links < 1) throw std::invalid_argument("ArmConfig: num_links must be >= 1");
    if (int(link_lengths.size()) != num_links)
        throw std::invalid_argument("ArmConfig: link_lengths size does not match num_links");
    if (total_reach() <= 0.0) throw std::invalid_argument("ArmConfig: total reach must be positive");
    if (damping < 0.0) throw std::invalid_argument("ArmConfig: damping must be >= 0");
    if (torque_limit <= 0.0) throw std::invalid_argument("ArmConfig: torque_limit must be positive");
    if (dt <= 0.0) throw std::invalid_argument("ArmConfig: dt must be positive");
    if (goal_radius >= total_reach()) throw std::invalid_argument("ArmConfig: goal_radius exceeds reach");
}

double wrap_angle(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

std::array<double, 2> forward_kinematics(const std::vector<double>& angles, const ArmConfig& config) {
    if (int(angles.size()) != config.num_links)
        throw std::invalid_argument("forward_kinematics: angle count != num_links");
    double x = 0.0, y = 0.0, cum = 0.0;
    for (int i = 0; i < config.num_links; ++i) {
        cum += angles[i];
        x += config.link_lengths[i] * std::cos(cum);
        y += config.link_lengths[i] * std::sin(cum);
    }
    return {x, y};
}

ArmState reset_state(const TaskSpec& task, const ArmConfig& config, std::uint64_t rng_seed) {
    if (task.goals.empty()) throw std::invalid_argument("reset_state: task has no goals");
    Rng rng = make_rng(rng_seed);
    std::uniform_real_distribution<double> dist(-kPi, kPi);
    ArmState s;
    s.angles.resize(config.num_links);
    s.velocities.assign(config.num_links, 0.0);
    for (double& a : s.angles) a = wrap_angle(dist(rng));
    s.goal = task.goals.front();
    return s;
}

ArmState dynamics_step(const ArmState& state, const Action& action, const ArmConfig& config) {
    if (int(action.size()) != config.num_links)
        throw std::invalid_argument("dynamics_step: action size != num_links");
    for (double a : action)
        if (!std::isfinite(a)) throw std::invalid_argument("dynamics_step: non-finite action");
    ArmState next = state;
    for (int i = 0; i < config.num_links; ++i) {
        double tau = clamp(action[i], -config.torque_limit, config.torque_limit);
        double v = state.velocities[i] + config.dt * (tau - config.damping * state.velocities[i]);
        next.velocities[i] = v;
        next.angles[i] = wrap_angle(state.angles[i] + config.dt * v);
    }
    return next;
}

std::vector<double> observe(const ArmState& state, const ArmConfig& config) {
    std::vector<double> o;
    o.reserve(config.state_dim());
    for (int i = 0; i < config.num_links; ++i) {
        double a = state.angles[i];
        if (i == 0 && config.viewpoint_offset != 0.0) a = wrap_angle(a + config.viewpoint_offset);
        o.push_back(a);
    }
    for (double v : state.velocities) o.push_back(v);
    if (config.viewpoint_offset != 0.0) {
        o.push_back(-state.goal[0]);
        o.push_back(-state.goal[1]);
    } else {
        o.push_back(state.goal[0]);
        o.push_back(state.goal[1]);
    }
    return o;
}

double eval_reward(const ArmState& state, const Action& action, const ArmConfig& config,
                   TaskSpec::Kind kind, bool reached_vertex) {
    if (kind == TaskSpec::Kind::SequentialReach) return reached_vertex ? 100.0 : -1.0;
    auto ee = forward_kinematics(state.angles, config);
    double dx = ee[0] - state.goal[0];
    double dy = ee[1] - state.goal[1];
    double dist = std::sqrt(dx * dx + dy * dy);
    double ctrl = 0.0;
    for (double a : action) {
        double t = clamp(a, -config.torque_limit, config.torque_limit);
        ctrl += t * t;
    }
    return -dist - 0.01 * ctrl;
}

ArmEnv::ArmEnv(ArmConfig config, TaskSpec task) : config_(std::move(config)), task_(std::move(task)) {
    config_.validate();
    if (task_.kind == TaskSpec::Kind::Reach && task_.goals.size() != 1)
        throw std::invalid_argument("ArmEnv: reach task needs exactly one goal");
    if (task_.kind == TaskSpec::Kind::SequentialReach && task_.goals.size() < 2)
        throw std::invalid_argument("ArmEnv: sequential task needs at least two goals");
}

const ArmState& ArmEnv::reset(std::uint64_t seed) {
    state_ = reset_state(task_, config_, seed);
    goal_index_ = 0;
    steps_ = 0;
    done_ = false;
    return state_;
}

StepOutcome ArmEnv::step(const Action& action) {
    StepOutcome out;
    ArmState next = dynamics_step(state_, action, config_);
    auto ee = forward_kinematics(next.angles, config_);
    double dx = ee[0] - next.goal[0];
    double dy = ee[1] - next.goal[1];
    bool reached = std::sqrt(dx * dx + dy * dy) < config_.goal_radius;
    out.reached_goal = reached;
    out.reward = eval_reward(next, action, config_, task_.kind, reached);
    if (reached) {
        if (task_.kind == TaskSpec::Kind::SequentialReach && goal_index_ + 1 < int(task_.goals.size())) {
            ++goal_index_;
            next.goal = task_.goals[goal_index_];
        } else {
            done_ = true;
        }
    }
    ++steps_;
    if (steps_ >= config_.max_steps) done_ = true;
    out.task_complete = done_ && reached;
    state_ = std::move(next);
    out.state = state_;
    out.goal_index = goal_index_;
    return out;
}

namespace {

TaskSpec reach_task(const std::string& id, double radius, double angle_deg) {
    TaskSpec t;
    t.kind = TaskSpec::Kind::Reach;
    double a = angle_deg * kPi / 180.0;
    t.goals = {{radius * std::cos(a), radius * std::sin(a)}};
    t.task_id = id;
    return t;
}

// Letter C: six vertices on a 240-degree arc opening to the right, traced
// from the top end.
TaskSpec letter_c_task(double radius) {
    TaskSpec t;
    t.kind = TaskSpec::Kind::SequentialReach;
    t.task_id = "inf_c";
    for (int i = 0; i < 6; ++i) {
        double a = (60.0 + 48.0 * i) * kPi / 180.0;
        t.goals.push_back({radius * std::cos(a), radius * std::sin(a)});
    }
    return t;
}

}  // namespace

Scenario make_scenario(const std::string& name) {
    ArmConfig base;  // the 2-link agent arm
    base.num_links = 2;
    base.link_lengths = {0.1, 0.1};
    base.damping = 0.5;
    base.torque_limit = 1.0;
    base.dt = 0.05;
    base.max_steps = 100;
    base.goal_radius = 0.02;

    Scenario sc;
    sc.name = name;
    sc.agent_config = base;
    sc.expert_config = base;
    if (name == "self") {
        // expert identical to agent
    } else if (name == "v-r2r" || name == "v-r2w") {
        sc.expert_config.viewpoint_offset = kPi;
        sc.goal_rotation = true;
    } else if (name == "d-r2r") {
        sc.expert_config.damping = 2.0 * base.damping;
    } else if (name == "m-r2r") {
        sc.expert_config.num_links = 3;
        sc.expert_config.link_lengths = {0.2 / 3.0, 0.2 / 3.0, 0.2 / 3.0};
    } else {
        throw std::invalid_argument("make_scenario: unknown scenario '" + name + "'");
    }

    const double kGoalRadius = 0.18;
    for (int i = 0; i < 4; ++i)
        sc.proxy_tasks.push_back(reach_task("proxy_" + std::to_string(i), kGoalRadius, 90.0 * i));
    if (name == "v-r2w") {
        sc.inference_tasks.push_back(letter_c_task(0.15));
        // Sequential reach needs room for six settles per episode.
        sc.expert_config.max_steps = 300;
        sc.agent_config.max_steps = 300;
    } else {
        for (int i = 0; i < 4; ++i)
            sc.inference_tasks.push_back(reach_task("inf_" + std::to_string(i), kGoalRadius, 45.0 + 90.0 * i));
    }
    return sc;
}

}  // namespace xdio
