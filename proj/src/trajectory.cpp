#include "xdio/trajectory.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace xdio {

using nlohmann::json;

Domain domain_from_tag(const std::string& s) {
    if (s == "E") return Domain::Expert;
    if (s == "A") return Domain::Agent;
    throw std::runtime_error("unknown domain tag: " + s);
}

void Trajectory::validate() const {
    if (states.size() < 2) throw std::runtime_error("trajectory: needs at least 2 states");
    std::size_t dim = states.front().size();
    for (const auto& s : states) {
        if (s.size() != dim) throw std::runtime_error("trajectory: inconsistent state dimensionality");
        for (double v : s)
            if (!std::isfinite(v)) throw std::runtime_error("trajectory: non-finite state entry");
    }
    if (actions && actions->size() + 1 != states.size())
        throw std::runtime_error("trajectory: action count must be length-1");
}

namespace {

void append_vector(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_g17(v[i]);
    }
    out += ']';
}

}  // namespace

void save_corpus(const std::vector<Trajectory>& trajs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_corpus: cannot open " + path);
    for (const Trajectory& t : trajs) {
        t.validate();
        std::string line = "{\"domain\":\"";
        line += domain_tag(t.domain);
        line += "\",\"task_id\":";
        line += json(t.task_id).dump();
        line += ",\"reached_goal\":";
        line += t.reached_goal ? "true" : "false";
        line += ",\"states\":[";
        for (std::size_t i = 0; i < t.states.size(); ++i) {
            if (i) line += ',';
            append_vector(line, t.states[i]);
        }
        line += ']';
        if (t.actions) {
            line += ",\"actions\":[";
            for (std::size_t i = 0; i < t.actions->size(); ++i) {
                if (i) line += ',';
                append_vector(line, (*t.actions)[i]);
            }
            line += ']';
        }
        line += "}\n";
        out << line;
    }
}

std::vector<Trajectory> load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_corpus: cannot open " + path);
    std::vector<Trajectory> trajs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
            Trajectory t;
            t.domain = domain_from_tag(j.at("domain").get<std::string>());
            t.task_id = j.at("task_id").get<std::string>();
            if (j.contains("reached_goal")) t.reached_goal = j.at("reached_goal").get<bool>();
            t.states = j.at("states").get<std::vector<std::vector<double>>>();
            if (j.contains("actions"))
                t.actions = j.at("actions").get<std::vector<std::vector<double>>>();
            t.validate();
            trajs.push_back(std::move(t));
        } catch (const std::exception& e) {
            throw std::runtime_error("load_corpus: " + path + " line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return trajs;
}

std::vector<double> Normalizer::apply(const std::vector<double>& state) const {
    if (int(state.size()) != nongoal_dim() + goal_dims)
        throw std::invalid_argument("Normalizer::apply: state dimension mismatch");
    std::vector<double> out = state;
    for (int i = 0; i < nongoal_dim(); ++i) out[i] = (state[i] - mean[i]) / stddev[i];
    return out;
}

std::vector<double> Normalizer::unapply(const std::vector<double>& state) const {
    if (int(state.size()) != nongoal_dim() + goal_dims)
        throw std::invalid_argument("Normalizer::unapply: state dimension mismatch");
    std::vector<double> out = state;
    for (int i = 0; i < nongoal_dim(); ++i) out[i] = state[i] * stddev[i] + mean[i];
    return out;
}

Matrix Normalizer::apply_nongoal(const Matrix& m) const {
    if (m.cols != nongoal_dim()) throw std::invalid_argument("Normalizer: non-goal width mismatch");
    Matrix out = m;
    for (int r = 0; r < m.rows; ++r) {
        double* p = out.row_ptr(r);
        for (int c = 0; c < m.cols; ++c) p[c] = (p[c] - mean[c]) / stddev[c];
    }
    return out;
}

Matrix Normalizer::unapply_nongoal(const Matrix& m) const {
    if (m.cols != nongoal_dim()) throw std::invalid_argument("Normalizer: non-goal width mismatch");
    Matrix out = m;
    for (int r = 0; r < m.rows; ++r) {
        double* p = out.row_ptr(r);
        for (int c = 0; c < m.cols; ++c) p[c] = p[c] * stddev[c] + mean[c];
    }
    return out;
}

Normalizer fit_normalizer(const std::vector<Trajectory>& trajs, int goal_dims) {
    if (trajs.empty()) throw std::invalid_argument("fit_normalizer: empty corpus");
    int dim = trajs.front().state_dim();
    int ng = dim - goal_dims;
    if (ng <= 0) throw std::invalid_argument("fit_normalizer: no non-goal dimensions");
    Normalizer n;
    n.goal_dims = goal_dims;
    n.mean.assign(ng, 0.0);
    n.stddev.assign(ng, 0.0);
    std::size_t count = 0;
    for (const Trajectory& t : trajs) {
        if (t.state_dim() != dim) throw std::invalid_argument("fit_normalizer: mixed state dims");
        for (const auto& s : t.states) {
            for (int i = 0; i < ng; ++i) n.mean[i] += s[i];
            ++count;
        }
    }
    for (int i = 0; i < ng; ++i) n.mean[i] /= double(count);
    for (const Trajectory& t : trajs)
        for (const auto& s : t.states)
            for (int i = 0; i < ng; ++i) {
                double d = s[i] - n.mean[i];
                n.stddev[i] += d * d;
            }
    for (int i = 0; i < ng; ++i) n.stddev[i] = std::max(std::sqrt(n.stddev[i] / double(count)), 1e-6);
    return n;
}

std::string normalizer_to_json(const Normalizer& n) {
    json j;
    j["mean"] = doubles_to_base64(n.mean);
    j["stddev"] = doubles_to_base64(n.stddev);
    j["goal_dims"] = n.goal_dims;
    return j.dump();
}

Normalizer normalizer_from_json(const std::string& text) {
    json j = json::parse(text);
    Normalizer n;
    n.mean = doubles_from_base64(j.at("mean").get<std::string>());
    n.stddev = doubles_from_base64(j.at("stddev").get<std::string>());
    n.goal_dims = j.at("goal_dims").get<int>();
    if (n.mean.size() != n.stddev.size()) throw std::runtime_error("normalizer: mean/std size mismatch");
    return n;
}

TransitionTable build_transition_table(const std::vector<Trajectory>& trajs, const Normalizer& norm) {
    int ng = norm.nongoal_dim();
    int n = 0;
    for (const Trajectory& t : trajs) n += std::max(0, t.length() - 1);
    TransitionTable table;
    table.s = Matrix(n, ng);
    table.s_next = Matrix(n, ng);
    int r = 0;
    for (const Trajectory& t : trajs) {
        if (t.state_dim() != ng + norm.goal_dims)
            throw std::invalid_argument("build_transition_table: state dim mismatch");
        for (int i = 0; i + 1 < t.length(); ++i) {
            for (int c = 0; c < ng; ++c) {
                table.s(r, c) = (t.states[i][c] - norm.mean[c]) / norm.stddev[c];
                table.s_next(r, c) = (t.states[i + 1][c] - norm.mean[c]) / norm.stddev[c];
            }
            ++r;
        }
    }
    return table;
}

Matrix states_matrix(const std::vector<Trajectory>& trajs, const Normalizer& norm) {
    int ng = norm.nongoal_dim();
    int n = 0;
    for (const Trajectory& t : trajs) n += t.length();
    Matrix m(n, ng);
    int r = 0;
    for (const Trajectory& t : trajs)
        for (const auto& s : t.states) {
            for (int c = 0; c < ng; ++c) m(r, c) = (s[c] - norm.mean[c]) / norm.stddev[c];
            ++r;
        }
    return m;
}

TransitionBatch sample_transitions(const TransitionTable& table, Domain domain, int task_index,
                                   int batch_size, Rng& rng) {
    if (table.count() == 0) throw std::runtime_error("sample_transitions: task has no transitions");
    if (batch_size < 1) throw std::invalid_argument("sample_transitions: batch_size must be >= 1");
    std::uniform_int_distribution<int> pick(0, table.count() - 1);
    std::vector<int> idx(batch_size);
    for (int& i : idx) i = pick(rng);
    TransitionBatch b;
    b.s = gather_rows(table.s, idx);
    b.s_next = gather_rows(table.s_next, idx);
    b.domain = domain;
    b.task_index = task_index;
    return b;
}

ProxyDataset ProxyDataset::build(std::vector<std::vector<Trajectory>> expert_per_task,
                                 std::vector<std::vector<Trajectory>> agent_per_task,
                                 const Normalizer& expert_norm, const Normalizer& agent_norm) {
    if (expert_per_task.size() != agent_per_task.size())
        throw std::invalid_argument("ProxyDataset: task count mismatch between domains");
    ProxyDataset d;
    d.num_tasks = int(expert_per_task.size());
    for (int j = 0; j < d.num_tasks; ++j) {
        if (expert_per_task[j].empty() || agent_per_task[j].empty())
            throw std::invalid_argument("ProxyDataset: empty trajectory set for task " + std::to_string(j));
        // State-only contract: alignment never sees expert actions.
        for (const Trajectory& t : expert_per_task[j])
            if (t.actions)
                throw std::runtime_error("ProxyDataset: expert trajectory carries actions (state-only contract)");
        d.expert_tables.push_back(build_transition_table(expert_per_task[j], expert_norm));
        d.agent_tables.push_back(build_transition_table(agent_per_task[j], agent_norm));
    }
    d.expert = std::move(expert_per_task);
    d.agent = std::move(agent_per_task);
    return d;
}

}  // namespace xdio
