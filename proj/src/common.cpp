#include "xdio/common.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace xdio {

namespace {
const char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_index(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}
}  // namespace

std::string base64_encode(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::string out;
    out.reserve((n + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= n) {
        std::uint32_t w = (std::uint32_t(p[i]) << 16) | (std::uint32_t(p[i + 1]) << 8) | p[i + 2];
        out += kB64Alphabet[(w >> 18) & 63];
        out += kB64Alphabet[(w >> 12) & 63];
        out += kB64Alphabet[(w >> 6) & 63];
        out += kB64Alphabet[w & 63];
        i += 3;
    }
    if (i + 1 == n) {
        std::uint32_t w = std::uint32_t(p[i]) << 16;
        out += kB64Alphabet[(w >> 18) & 63];
        out += kB64Alphabet[(w >> 12) & 63];
        out += "==";
    } else if (i + 2 == n) {
        std::uint32_t w = (std::uint32_t(p[i]) << 16) | (std::uint32_t(p[i + 1]) << 8);
        out += kB64Alphabet[(w >> 18) & 63];
        out += kB64Alphabet[(w >> 12) & 63];
        out += kB64Alphabet[(w >> 6) & 63];
        out += '=';
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& s) {
    if (s.size() % 4 != 0) throw std::invalid_argument("base64: length not a multiple of 4");
    std::vector<unsigned char> out;
    out.reserve(s.size() / 4 * 3);
    for (std::size_t i = 0; i < s.size(); i += 4) {
        int pad = 0;
        std::uint32_t w = 0;
        for (int k = 0; k < 4; ++k) {
            char c = s[i + k];
            if (c == '=') {
                ++pad;
                w <<= 6;
            } else {
                int v = b64_index(c);
                if (v < 0 || pad > 0) throw std::invalid_argument("base64: invalid character");
                w = (w << 6) | std::uint32_t(v);
            }
        }
        out.push_back((w >> 16) & 0xff);
        if (pad < 2) out.push_back((w >> 8) & 0xff);
        if (pad < 1) out.push_back(w & 0xff);
    }
    return out;
}

std::string doubles_to_base64(const std::vector<double>& v) {
    std::vector<unsigned char> bytes(v.size() * 8);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::uint64_t bits;
        std::memcpy(&bits, &v[i], 8);
        for (int k = 0; k < 8; ++k) bytes[i * 8 + k] = (bits >> (8 * k)) & 0xff;
    }
    return base64_encode(bytes.data(), bytes.size());
}

std::vector<double> doubles_from_base64(const std::string& s) {
    std::vector<unsigned char> bytes = base64_decode(s);
    if (bytes.size() % 8 != 0) throw std::invalid_argument("base64: payload not a multiple of 8 bytes");
    std::vector<double> v(bytes.size() / 8);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::uint64_t bits = 0;
        for (int k = 0; k < 8; ++k) bits |= std::uint64_t(bytes[i * 8 + k]) << (8 * k);
        std::memcpy(&v[i], &bits, 8);
    }
    return v;
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::uint64_t hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("hash_file: cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

std::string to_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace xdio
