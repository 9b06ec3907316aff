#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace xdio {

// splitmix64: cheap avalanche mix for deriving child seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

// Child seed for a named substream: deterministic in (root, name).
inline std::uint64_t derive_seed(std::uint64_t root, const std::string& name) {
    return mix64(root ^ fnv1a64(name));
}
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return mix64(root ^ mix64(index + 1));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

std::string base64_encode(const void* data, std::size_t n);
std::vector<unsigned char> base64_decode(const std::string& s);

// Doubles <-> base64 of little-endian 64-bit IEEE words.
std::string doubles_to_base64(const std::vector<double>& v);
std::vector<double> doubles_from_base64(const std::string& s);

// Shortest text form that round-trips a double exactly ("%.17g").
std::string format_g17(double x);

std::uint64_t hash_file(const std::string& path);
std::string to_hex(std::uint64_t h);

}  // namespace xdio
