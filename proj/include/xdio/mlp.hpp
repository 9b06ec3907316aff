#pragma once

#include "xdio/common.hpp"
#include "xdio/matrix.hpp"

#include <string>
#include <vector>

namespace xdio {

enum class Activation { Identity, Relu, LeakyRelu, Tanh, Sigmoid };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& s);

// One dense layer: y = act(x W^T + b), W stored out x in.
struct Layer {
    Matrix w;
    std::vector<double> b;
    Activation act = Activation::Identity;
    // Persistent power-iteration vector (left singular direction), present iff
    // the owning net has spectral_norm set.
    std::vector<double> sn_u;

    int in_dim() const { return w.cols; }
    int out_dim() const { return w.rows; }
};

// Feedforward MLP. Values are plain structs; copying makes an independent
// snapshot.
struct Mlp {
    std::vector<Layer> layers;
    bool spectral_norm = false;

    int input_dim() const { return layers.empty() ? 0 : layers.front().in_dim(); }
    int output_dim() const { return layers.empty() ? 0 : layers.back().out_dim(); }
    std::vector<int> layer_dims() const;
    std::size_t param_count() const;
};

// layer_dims = {in, hidden..., out}. Hidden layers use `hidden`, the last
// layer uses `output`. Weights init uniform +-sqrt(6/(fan_in+fan_out)),
// biases zero.
Mlp make_mlp(const std::vector<int>& layer_dims, Activation hidden, Activation output, bool spectral_norm,
             Rng& rng);

// Cached intermediates from one forward pass, consumed by mlp_backward.
struct ForwardTrace {
    std::vector<Matrix> inputs;       // input to each layer
    std::vector<Matrix> activations;  // post-activation output of each layer
    std::vector<Matrix> w_eff;        // weights actually used (normalized when SN)
    std::vector<double> sn_sigma;     // sigma per layer (1.0 when SN off)
    std::vector<std::vector<double>> sn_u_used;
    std::vector<std::vector<double>> sn_v_used;

    const Matrix& output() const { return activations.back(); }
};

// Forward pass. When the net uses spectral normalization and
// update_power_iteration is true, one power iteration refreshes each layer's
// persisted u before the normalized weight is formed (hence non-const net).
Matrix mlp_forward(Mlp& net, const Matrix& batch, bool update_power_iteration = true);
// Const variant: never touches power-iteration state.
Matrix mlp_forward(const Mlp& net, const Matrix& batch);

ForwardTrace mlp_forward_traced(Mlp& net, const Matrix& batch, bool update_power_iteration = true);
ForwardTrace mlp_forward_traced(const Mlp& net, const Matrix& batch);

// Per-parameter gradients mirroring an Mlp's layers.
struct Gradients {
    std::vector<Matrix> dw;
    std::vector<std::vector<double>> db;

    void add_scaled(const Gradients& o, double scale);
    bool all_finite() const;
};

Gradients zero_gradients(const Mlp& net);

// Reverse-mode pass: dloss_dout is dL/d(output); returns dL/d(input) and
// accumulates parameter gradients into accum. Exact for the recorded forward.
Matrix mlp_backward(const Mlp& net, const ForwardTrace& trace, const Matrix& dloss_dout, Gradients& accum);
// Input gradient only (frozen nets on the path of a larger graph).
Matrix mlp_input_gradient(const Mlp& net, const ForwardTrace& trace, const Matrix& dloss_dout);

// Power-iteration estimate of the top singular value; W is divided by it.
// u is updated in place for reuse. Guarded by eps=1e-12 near zero.
Matrix spectral_normalize(const Matrix& w, std::vector<double>& u, int n_iters);
double spectral_sigma(const Matrix& w, std::vector<double>& u, int n_iters);

struct AdamState {
    double lr = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    std::vector<Matrix> m_w, v_w;
    std::vector<std::vector<double>> m_b, v_b;
};

AdamState make_adam(const Mlp& net, double lr);
void adam_step(Mlp& net, const Gradients& grads, AdamState& state);

// Deterministic content hash of all parameters (tests use it to prove
// updates touched nothing they should not have).
std::uint64_t param_hash(const Mlp& net);

}  // namespace xdio
