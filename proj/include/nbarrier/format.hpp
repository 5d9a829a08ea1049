#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace nbarrier {

/// Shortest decimal representation that round-trips the double exactly.
/// Used everywhere a number is printed outside JSON so that identical
/// inputs produce byte-identical CSV and SVG artifacts.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// FNV-1a 64-bit hash, used to fingerprint configuration bytes in run
/// manifests and profile sidecars.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[19] = "0x";
    static const char* digits = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) {
        buf[2 + i] = digits[(h >> (60 - 4 * i)) & 0xf];
    }
    return std::string(buf, 18);
}

} // namespace nbarrier
