#pragma once

#include "xdio/arm_env.hpp"
#include "xdio/trajectory.hpp"

namespace xdio {

// PD controller toward an inverse-kinematics target. Stands in for the
// paper-setting's trained experts.
struct PdExpert {
    double kp = 5.0;
    double kd = 1.0;
};

// k=2: closed-form elbow-down branch. k>=3: damped Jacobian-transpose
// iteration from the zero pose (EE error < 1e-3 or 500 iterations).
std::vector<double> inverse_kinematics(const std::array<double, 2>& goal, const ArmConfig& config);

// tau = clamp(kp * wrap(theta* - w) - kd * w_dot)
Action expert_action(const ArmState& state, const PdExpert& expert, const ArmConfig& config);

struct DemoRequest {
    Domain domain = Domain::Expert;
    TaskSpec task;
    int num_trajectories = 1;
    bool record_actions = false;
    std::uint64_t seed = 0;
};

// Batch generation of observed-state demonstrations. Episodes end at
// goal-reach (task completion) or max_steps. Fails if the expert reaches
// the goal in fewer than 95% of episodes.
std::vector<Trajectory> generate_demos(const DemoRequest& request, const ArmConfig& config,
                                       const PdExpert& expert);

// Uniform-torque policy rollouts, used for the normalization anchor.
double random_policy_return(const ArmConfig& config, const TaskSpec& task, int episodes,
                            std::uint64_t seed);
// Scripted-expert mean return on a task.
double expert_return(const ArmConfig& config, const TaskSpec& task, const PdExpert& expert, int episodes,
                     std::uint64_t seed);

}  // namespace xdio
