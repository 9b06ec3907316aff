#pragma once

#include "xdio/common.hpp"

#include <array>
#include <string>
#include <vector>

namespace xdio {

// Planar k-link arm: unit-inertia joints with viscous damping, torque
// control, semi-implicit Euler integration.
struct ArmConfig {
    int num_links = 2;
    std::vector<double> link_lengths = {0.1, 0.1};
    double damping = 0.5;
    double torque_limit = 1.0;
    double dt = 0.05;
    double viewpoint_offset = 0.0;  // 0 or pi
    int max_steps = 100;
    double goal_radius = 0.02;

    int state_dim() const { return 2 * num_links + 2; }
    int nongoal_dim() const { return 2 * num_links; }
    double total_reach() const;
    void validate() const;
    bool operator==(const ArmConfig&) const = default;
};

struct ArmState {
    std::vector<double> angles;      // wrapped to (-pi, pi]
    std::vector<double> velocities;  // rad/s
    std::array<double, 2> goal = {0.0, 0.0};
};

using Action = std::vector<double>;  // torques, length k

struct TaskSpec {
    enum class Kind { Reach, SequentialReach };
    Kind kind = Kind::Reach;
    std::vector<std::array<double, 2>> goals;
    std::string task_id;
};

double wrap_angle(double a);  // into (-pi, pi]

std::array<double, 2> forward_kinematics(const std::vector<double>& angles, const ArmConfig& config);

// Initial state: angles uniform in (-pi, pi], zero velocities, goal = first
// goal of the task.
ArmState reset_state(const TaskSpec& task, const ArmConfig& config, std::uint64_t rng_seed);

// Pure dynamics: clamp torques, integrate, wrap angles. Goal untouched.
ArmState dynamics_step(const ArmState& state, const Action& action, const ArmConfig& config);

// Observation of length 2k+2. With viewpoint_offset pi the first joint angle
// is reported as wrap(w1+pi) and the goal rotated 180 degrees about the
// origin; otherwise the state verbatim.
std::vector<double> observe(const ArmState& state, const ArmConfig& config);

// Evaluation-only rewards. Reach: -|EE-goal| - 0.01*|tau|^2. Sequential
// reach: +100 when a vertex was reached on this step, -1 otherwise.
double eval_reward(const ArmState& state, const Action& action, const ArmConfig& config,
                   TaskSpec::Kind kind, bool reached_vertex);

struct StepOutcome {
    ArmState state;
    bool reached_goal = false;    // current goal entered this step
    int goal_index = 0;           // index of the active goal after the step
    bool task_complete = false;   // reach: goal hit; sequential: all vertices hit
    double reward = 0.0;
};

// Episode wrapper owning goal-advance bookkeeping for sequential tasks.
class ArmEnv {
  public:
    ArmEnv(ArmConfig config, TaskSpec task);

    const ArmState& reset(std::uint64_t seed);
    StepOutcome step(const Action& action);

    const ArmState& state() const { return state_; }
    const ArmConfig& config() const { return config_; }
    const TaskSpec& task() const { return task_; }
    int steps_taken() const { return steps_; }
    int goal_index() const { return goal_index_; }
    bool done() const { return done_; }

  private:
    ArmConfig config_;
    TaskSpec task_;
    ArmState state_;
    int goal_index_ = 0;
    int steps_ = 0;
    bool done_ = false;
};

// A cross-domain scenario: expert/agent configs plus proxy and inference
// task sets. The goal_rotation flag records the known frame relation used
// when transferring goal dimensions (true = 180 degree rotation).
struct Scenario {
    std::string name;
    ArmConfig expert_config;
    ArmConfig agent_config;
    std::vector<TaskSpec> proxy_tasks;
    std::vector<TaskSpec> inference_tasks;
    bool goal_rotation = false;
};

// Names: v-r2r, v-r2w, d-r2r, m-r2r, self.
Scenario make_scenario(const std::string& name);

}  // namespace xdio
