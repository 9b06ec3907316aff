#pragma once

#include "xdio/common.hpp"
#include "xdio/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace xdio {

enum class Domain { Expert, Agent };

inline char domain_tag(Domain d) { return d == Domain::Expert ? 'E' : 'A'; }
Domain domain_from_tag(const std::string& s);

// One episode's observed state sequence; actions optional and only ever
// present on data that never enters alignment.
struct Trajectory {
    Domain domain = Domain::Agent;
    std::string task_id;
    std::vector<std::vector<double>> states;
    std::optional<std::vector<std::vector<double>>> actions;
    bool reached_goal = false;

    int length() const { return int(states.size()); }
    int state_dim() const { return states.empty() ? 0 : int(states.front().size()); }
    void validate() const;
};

// JSON-Lines corpus: one trajectory per line. Numbers carry 17 significant
// digits so load(save(x)) == x exactly.
void save_corpus(const std::vector<Trajectory>& trajs, const std::string& path);
std::vector<Trajectory> load_corpus(const std::string& path);

// Per-dimension statistics over the non-goal dimensions; goal dims pass
// through untouched. Stds floored at 1e-6.
struct Normalizer {
    std::vector<double> mean;  // size = non-goal dim
    std::vector<double> stddev;
    int goal_dims = 2;  // trailing dims passed through

    int nongoal_dim() const { return int(mean.size()); }
    std::vector<double> apply(const std::vector<double>& state) const;
    std::vector<double> unapply(const std::vector<double>& state) const;
    // Matrix forms operate on non-goal columns only (cols == nongoal_dim()).
    Matrix apply_nongoal(const Matrix& m) const;
    Matrix unapply_nongoal(const Matrix& m) const;
};

Normalizer fit_normalizer(const std::vector<Trajectory>& trajs, int goal_dims);

std::string normalizer_to_json(const Normalizer& n);
Normalizer normalizer_from_json(const std::string& text);

// All consecutive (s_t, s_{t+1}) pairs of one (task, domain) corpus, with
// only the normalized non-goal dimensions retained.
struct TransitionTable {
    Matrix s;       // [n x nongoal]
    Matrix s_next;  // [n x nongoal]
    int count() const { return s.rows; }
};

TransitionTable build_transition_table(const std::vector<Trajectory>& trajs, const Normalizer& norm);

// Matrix of all (normalized, non-goal) states across a corpus.
Matrix states_matrix(const std::vector<Trajectory>& trajs, const Normalizer& norm);

struct TransitionBatch {
    Matrix s;
    Matrix s_next;
    Domain domain = Domain::Agent;
    int task_index = 0;
};

// B pairs uniform with replacement over all consecutive pairs.
TransitionBatch sample_transitions(const TransitionTable& table, Domain domain, int task_index,
                                   int batch_size, Rng& rng);

// Proxy-task corpora for both domains plus prebuilt transition tables.
// Construction enforces the state-only contract: expert trajectories that
// carry actions are rejected.
struct ProxyDataset {
    int num_tasks = 0;
    std::vector<std::vector<Trajectory>> expert;  // per task
    std::vector<std::vector<Trajectory>> agent;
    std::vector<TransitionTable> expert_tables;
    std::vector<TransitionTable> agent_tables;

    static ProxyDataset build(std::vector<std::vector<Trajectory>> expert_per_task,
                              std::vector<std::vector<Trajectory>> agent_per_task,
                              const Normalizer& expert_norm, const Normalizer& agent_norm);
};

}  // namespace xdio
