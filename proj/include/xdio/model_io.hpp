#pragma once

#include "xdio/mlp.hpp"

#include <map>
#include <string>

namespace xdio {

// Model checkpoint: one JSON document with layer dims, activation names,
// flags and base64-encoded little-endian f64 parameter arrays. An optional
// string->string metadata block rides along (position estimators use it).
std::string mlp_to_json(const Mlp& net, const std::map<std::string, std::string>& meta = {});
Mlp mlp_from_json(const std::string& text, std::map<std::string, std::string>* meta = nullptr);

void save_mlp(const Mlp& net, const std::string& path, const std::map<std::string, std::string>& meta = {});
Mlp load_mlp(const std::string& path, std::map<std::string, std::string>* meta = nullptr);

}  // namespace xdio
