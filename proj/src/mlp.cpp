#include "xdio/mlp.hpp"

#include <cmath>

namespace xdio {

namespace {

constexpr double kLeakySlope = 0.2;
constexpr double kSnEps = 1e-12;

void apply_activation(Matrix& z, Activation act) {
    switch (act) {
        case Activation::Identity:
            return;
        case Activation::Relu:
            for (double& v : z.data) v = v > 0.0 ? v : 0.0;
            return;
        case Activation::LeakyRelu:
            for (double& v : z.data) v = v > 0.0 ? v : kLeakySlope * v;
            return;
        case Activation::Tanh:
            for (double& v : z.data) v = std::tanh(v);
            return;
        case Activation::Sigmoid:
            for (double& v : z.data) v = 1.0 / (1.0 + std::exp(-v));
            return;
    }
}

// Derivative expressed through the post-activation value a.
inline double activation_deriv_from_output(double a, Activation act) {
    switch (act) {
        case Activation::Identity:
            return 1.0;
        case Activation::Relu:
            return a > 0.0 ? 1.0 : 0.0;
        case Activation::LeakyRelu:
            return a > 0.0 ? 1.0 : kLeakySlope;
        case Activation::Tanh:
            return 1.0 - a * a;
        case Activation::Sigmoid:
            return a * (1.0 - a);
    }
    return 1.0;
}

void normalize_or_keep(std::vector<double>& v) {
    double n = l2_norm(v);
    if (n < kSnEps) return;
    for (double& x : v) x /= n;
}

// One forward pass shared by the traced/untraced variants.
template <bool kTraced>
ForwardTrace forward_impl(const Mlp& net, std::vector<double>* persist_u, const Matrix& batch,
                          bool update_power_iteration) {
    if (net.layers.empty()) throw std::invalid_argument("mlp_forward: empty network");
    if (batch.cols != net.input_dim())
        throw std::invalid_argument("mlp_forward: batch has " + std::to_string(batch.cols) +
                                    " columns, network expects " + std::to_string(net.input_dim()));
    ForwardTrace t;
    Matrix x = batch;
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        const Layer& layer = net.layers[li];
        const Matrix* w_ptr = &layer.w;
        Matrix w_norm;
        double sigma = 1.0;
        std::vector<double> u_used, v_used;
        if (net.spectral_norm) {
            std::vector<double> u = persist_u ? persist_u[li] : layer.sn_u;
            if (update_power_iteration) {
                std::vector<double> v = matvec_t(layer.w, u);
                normalize_or_keep(v);
                u = matvec(layer.w, v);
                normalize_or_keep(u);
            }
            std::vector<double> v = matvec_t(layer.w, u);
            sigma = l2_norm(v);
            if (sigma > kSnEps) {
                for (double& x2 : v) x2 /= sigma;
            }
            double denom = std::max(sigma, kSnEps);
            w_norm = layer.w;
            for (double& wv : w_norm.data) wv /= denom;
            w_ptr = &w_norm;
            if (persist_u && update_power_iteration) persist_u[li] = u;
            u_used = std::move(u);
            v_used = std::move(v);
        }
        Matrix z = matmul_nt(x, *w_ptr);
        for (int r = 0; r < z.rows; ++r) {
            double* zr = z.row_ptr(r);
            for (int c = 0; c < z.cols; ++c) zr[c] += layer.b[c];
        }
        apply_activation(z, layer.act);
        if constexpr (kTraced) {
            t.inputs.push_back(std::move(x));
            t.w_eff.push_back(std::move(w_norm));
            t.sn_sigma.push_back(sigma);
            t.sn_u_used.push_back(std::move(u_used));
            t.sn_v_used.push_back(std::move(v_used));
            t.activations.push_back(z);
        }
        x = std::move(z);
    }
    if constexpr (!kTraced) {
        t.activations.push_back(std::move(x));
    }
    return t;
}

}  // namespace

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::Relu: return "relu";
        case Activation::LeakyRelu: return "leaky_relu";
        case Activation::Tanh: return "tanh";
        case Activation::Sigmoid: return "sigmoid";
    }
    return "identity";
}

Activation activation_from_name(const std::string& s) {
    if (s == "identity") return Activation::Identity;
    if (s == "relu") return Activation::Relu;
    if (s == "leaky_relu") return Activation::LeakyRelu;
    if (s == "tanh") return Activation::Tanh;
    if (s == "sigmoid") return Activation::Sigmoid;
    throw std::invalid_argument("unknown activation: " + s);
}

std::vector<int> Mlp::layer_dims() const {
    std::vector<int> dims;
    if (layers.empty()) return dims;
    dims.push_back(layers.front().in_dim());
    for (const Layer& l : layers) dims.push_back(l.out_dim());
    return dims;
}

std::size_t Mlp::param_count() const {
    std::size_t n = 0;
    for (const Layer& l : layers) n += l.w.data.size() + l.b.size();
    return n;
}

Mlp make_mlp(const std::vector<int>& layer_dims, Activation hidden, Activation output, bool spectral_norm,
             Rng& rng) {
    if (layer_dims.size() < 2) throw std::invalid_argument("make_mlp: need at least input and output dims");
    for (int d : layer_dims)
        if (d < 1) throw std::invalid_argument("make_mlp: layer dims must be positive");
    Mlp net;
    net.spectral_norm = spectral_norm;
    for (std::size_t i = 0; i + 1 < layer_dims.size(); ++i) {
        Layer layer;
        int fan_in = layer_dims[i];
        int fan_out = layer_dims[i + 1];
        layer.w = Matrix(fan_out, fan_in);
        double bound = std::sqrt(6.0 / double(fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (double& v : layer.w.data) v = dist(rng);
        layer.b.assign(fan_out, 0.0);
        layer.act = (i + 2 == layer_dims.size()) ? output : hidden;
        if (spectral_norm) {
            layer.sn_u.resize(fan_out);
            std::normal_distribution<double> nd(0.0, 1.0);
            for (double& v : layer.sn_u) v = nd(rng);
            normalize_or_keep(layer.sn_u);
        }
        net.layers.push_back(std::move(layer));
    }
    return net;
}

Matrix mlp_forward(Mlp& net, const Matrix& batch, bool update_power_iteration) {
    if (net.spectral_norm && update_power_iteration) {
        std::vector<std::vector<double>> us(net.layers.size());
        for (std::size_t i = 0; i < net.layers.size(); ++i) us[i] = net.layers[i].sn_u;
        ForwardTrace t = forward_impl<false>(net, us.data(), batch, true);
        for (std::size_t i = 0; i < net.layers.size(); ++i) net.layers[i].sn_u = std::move(us[i]);
        return t.activations.back();
    }
    return forward_impl<false>(net, nullptr, batch, false).activations.back();
}

Matrix mlp_forward(const Mlp& net, const Matrix& batch) {
    return forward_impl<false>(net, nullptr, batch, false).activations.back();
}

ForwardTrace mlp_forward_traced(Mlp& net, const Matrix& batch, bool update_power_iteration) {
    if (net.spectral_norm && update_power_iteration) {
        std::vector<std::vector<double>> us(net.layers.size());
        for (std::size_t i = 0; i < net.layers.size(); ++i) us[i] = net.layers[i].sn_u;
        ForwardTrace t = forward_impl<true>(net, us.data(), batch, true);
        for (std::size_t i = 0; i < net.layers.size(); ++i) net.layers[i].sn_u = std::move(us[i]);
        return t;
    }
    return forward_impl<true>(net, nullptr, batch, false);
}

ForwardTrace mlp_forward_traced(const Mlp& net, const Matrix& batch) {
    return forward_impl<true>(net, nullptr, batch, false);
}

void Gradients::add_scaled(const Gradients& o, double scale) {
    if (dw.size() != o.dw.size()) throw std::invalid_argument("Gradients::add_scaled: layer count mismatch");
    for (std::size_t i = 0; i < dw.size(); ++i) {
        add_inplace(dw[i], o.dw[i], scale);
        for (std::size_t k = 0; k < db[i].size(); ++k) db[i][k] += scale * o.db[i][k];
    }
}

bool Gradients::all_finite() const {
    for (const Matrix& m : dw)
        if (!xdio::all_finite(m)) return false;
    for (const auto& v : db)
        for (double x : v)
            if (!std::isfinite(x)) return false;
    return true;
}

Gradients zero_gradients(const Mlp& net) {
    Gradients g;
    for (const Layer& l : net.layers) {
        g.dw.emplace_back(l.w.rows, l.w.cols);
        g.db.emplace_back(l.b.size(), 0.0);
    }
    return g;
}

namespace {

Matrix backward_impl(const Mlp& net, const ForwardTrace& trace, const Matrix& dloss_dout, Gradients* accum) {
    if (trace.inputs.size() != net.layers.size())
        throw std::invalid_argument("mlp_backward: trace does not match network (no forward recorded?)");
    if (!dloss_dout.same_shape(trace.activations.back()))
        throw std::invalid_argument("mlp_backward: upstream gradient shape mismatch");
    Matrix g = dloss_dout;
    for (int li = int(net.layers.size()) - 1; li >= 0; --li) {
        const Layer& layer = net.layers[li];
        const Matrix& a = trace.activations[li];
        // dL/dz = dL/da * act'(z), derivative recovered from a.
        Matrix gz = g;
        for (std::size_t i = 0; i < gz.data.size(); ++i)
            gz.data[i] *= activation_deriv_from_output(a.data[i], layer.act);
        if (accum) {
            Matrix dweff = matmul_tn(gz, trace.inputs[li]);  // [out x in]
            if (net.spectral_norm) {
                // W_eff = W / sigma, sigma = u^T W v = |W^T u| with u, v buffers.
                // dL/dW = (dL/dW_eff - (dL/dW_eff . W_eff) u v^T) / sigma
                double sigma = std::max(trace.sn_sigma[li], kSnEps);
                const Matrix& weff = trace.w_eff[li];
                double dot = 0.0;
                for (std::size_t i = 0; i < dweff.data.size(); ++i) dot += dweff.data[i] * weff.data[i];
                const std::vector<double>& u = trace.sn_u_used[li];
                const std::vector<double>& v = trace.sn_v_used[li];
                Matrix dw(dweff.rows, dweff.cols);
                for (int r = 0; r < dw.rows; ++r)
                    for (int c = 0; c < dw.cols; ++c)
                        dw(r, c) = (dweff(r, c) - dot * u[r] * v[c]) / sigma;
                add_inplace(accum->dw[li], dw);
            } else {
                add_inplace(accum->dw[li], dweff);
            }
            for (int r = 0; r < gz.rows; ++r) {
                const double* gr = gz.row_ptr(r);
                for (int c = 0; c < gz.cols; ++c) accum->db[li][c] += gr[c];
            }
        }
        const Matrix& w_used = net.spectral_norm ? trace.w_eff[li] : layer.w;
        g = matmul(gz, w_used);
    }
    return g;
}

}  // namespace

Matrix mlp_backward(const Mlp& net, const ForwardTrace& trace, const Matrix& dloss_dout, Gradients& accum) {
    return backward_impl(net, trace, dloss_dout, &accum);
}

Matrix mlp_input_gradient(const Mlp& net, const ForwardTrace& trace, const Matrix& dloss_dout) {
    return backward_impl(net, trace, dloss_dout, nullptr);
}

Matrix spectral_normalize(const Matrix& w, std::vector<double>& u, int n_iters) {
    double sigma = spectral_sigma(w, u, n_iters);
    Matrix out = w;
    double denom = std::max(sigma, kSnEps);
    for (double& v : out.data) v /= denom;
    return out;
}

double spectral_sigma(const Matrix& w, std::vector<double>& u, int n_iters) {
    if (n_iters < 1) throw std::invalid_argument("spectral_sigma: n_iters must be >= 1");
    if (int(u.size()) != w.rows) throw std::invalid_argument("spectral_sigma: u has wrong dimension");
    if (l2_norm(u) < kSnEps) throw std::invalid_argument("spectral_sigma: u must be nonzero");
    normalize_or_keep(u);
    for (int i = 0; i < n_iters; ++i) {
        std::vector<double> v = matvec_t(w, u);
        normalize_or_keep(v);
        std::vector<double> u2 = matvec(w, v);
        double n = l2_norm(u2);
        if (n < kSnEps) return 0.0;  // zero matrix: sigma ~ 0, caller guards division
        for (double& x : u2) x /= n;
        u = std::move(u2);
    }
    return l2_norm(matvec_t(w, u));
}

AdamState make_adam(const Mlp& net, double lr) {
    AdamState st;
    st.lr = lr;
    for (const Layer& l : net.layers) {
        st.m_w.emplace_back(l.w.rows, l.w.cols);
        st.v_w.emplace_back(l.w.rows, l.w.cols);
        st.m_b.emplace_back(l.b.size(), 0.0);
        st.v_b.emplace_back(l.b.size(), 0.0);
    }
    return st;
}

void adam_step(Mlp& net, const Gradients& grads, AdamState& state) {
    if (grads.dw.size() != net.layers.size() || state.m_w.size() != net.layers.size())
        throw std::invalid_argument("adam_step: shape mismatch");
    state.step += 1;
    double bc1 = 1.0 - std::pow(state.beta1, double(state.step));
    double bc2 = 1.0 - std::pow(state.beta2, double(state.step));
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        Layer& layer = net.layers[li];
        if (!grads.dw[li].same_shape(layer.w) || grads.db[li].size() != layer.b.size())
            throw std::invalid_argument("adam_step: gradient shape mismatch at layer " + std::to_string(li));
        Matrix& mw = state.m_w[li];
        Matrix& vw = state.v_w[li];
        for (std::size_t i = 0; i < layer.w.data.size(); ++i) {
            double g = grads.dw[li].data[i];
            mw.data[i] = state.beta1 * mw.data[i] + (1.0 - state.beta1) * g;
            vw.data[i] = state.beta2 * vw.data[i] + (1.0 - state.beta2) * g * g;
            double mhat = mw.data[i] / bc1;
            double vhat = vw.data[i] / bc2;
            layer.w.data[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
        }
        for (std::size_t i = 0; i < layer.b.size(); ++i) {
            double g = grads.db[li][i];
            state.m_b[li][i] = state.beta1 * state.m_b[li][i] + (1.0 - state.beta1) * g;
            state.v_b[li][i] = state.beta2 * state.v_b[li][i] + (1.0 - state.beta2) * g * g;
            double mhat = state.m_b[li][i] / bc1;
            double vhat = state.v_b[li][i] / bc2;
            layer.b[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
        }
    }
}

std::uint64_t param_hash(const Mlp& net) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const double* p, std::size_t n) {
        h ^= fnv1a64(p, n * sizeof(double));
        h = mix64(h);
    };
    for (const Layer& l : net.layers) {
        mix(l.w.data.data(), l.w.data.size());
        mix(l.b.data(), l.b.size());
    }
    return h;
}

}  // namespace xdio
