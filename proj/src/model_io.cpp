#include "xdio/model_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace xdio {

using nlohmann::json;

std::string mlp_to_json(const Mlp& net, const std::map<std::string, std::string>& meta) {
    json j;
    j["layer_dims"] = net.layer_dims();
    std::vector<std::string> acts;
    for (const Layer& l : net.layers) acts.push_back(activation_name(l.act));
    j["activations"] = acts;
    j["spectral_norm"] = net.spectral_norm;
    json layers = json::array();
    for (const Layer& l : net.layers) {
        json jl;
        jl["w"] = doubles_to_base64(l.w.data);
        jl["b"] = doubles_to_base64(l.b);
        if (net.spectral_norm) jl["u"] = doubles_to_base64(l.sn_u);
        layers.push_back(std::move(jl));
    }
    j["layers"] = std::move(layers);
    if (!meta.empty()) j["meta"] = meta;
    return j.dump();
}

Mlp mlp_from_json(const std::string& text, std::map<std::string, std::string>* meta) {
    json j = json::parse(text);
    std::vector<int> dims = j.at("layer_dims").get<std::vector<int>>();
    std::vector<std::string> acts = j.at("activations").get<std::vector<std::string>>();
    if (dims.size() < 2) throw std::runtime_error("model: layer_dims must list input and output");
    if (acts.size() + 1 != dims.size()) throw std::runtime_error("model: activation count mismatch");
    Mlp net;
    net.spectral_norm = j.at("spectral_norm").get<bool>();
    const json& layers = j.at("layers");
    if (layers.size() != acts.size()) throw std::runtime_error("model: layer count mismatch");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        Layer l;
        int in = dims[i], out = dims[i + 1];
        std::vector<double> w = doubles_from_base64(layers[i].at("w").get<std::string>());
        if (int(w.size()) != in * out)
            throw std::runtime_error("model: weight array size does not match layer_dims");
        l.w = Matrix(out, in, std::move(w));
        l.b = doubles_from_base64(layers[i].at("b").get<std::string>());
        if (int(l.b.size()) != out) throw std::runtime_error("model: bias array size does not match layer_dims");
        l.act = activation_from_name(acts[i]);
        if (net.spectral_norm) {
            l.sn_u = doubles_from_base64(layers[i].at("u").get<std::string>());
            if (int(l.sn_u.size()) != out) throw std::runtime_error("model: power-iteration vector size mismatch");
        }
        net.layers.push_back(std::move(l));
    }
    if (meta) {
        meta->clear();
        if (j.contains("meta"))
            for (auto& [k, v] : j.at("meta").items()) (*meta)[k] = v.get<std::string>();
    }
    return net;
}

void save_mlp(const Mlp& net, const std::string& path, const std::map<std::string, std::string>& meta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_mlp: cannot open " + path);
    out << mlp_to_json(net, meta) << "\n";
}

Mlp load_mlp(const std::string& path, std::map<std::string, std::string>* meta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_mlp: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return mlp_from_json(text, meta);
}

}  // namespace xdio
