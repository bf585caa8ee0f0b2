#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eqalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Thrown on malformed input (documents, incompatible arguments). CLI exit 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& m) : std::runtime_error(m) {}
};

/// Thrown when a size cap is exceeded. CLI exit 3.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& m) : std::runtime_error(m) {}
};

/// Thrown when a mathematical invariant that must hold fails at runtime,
/// e.g. a non-integral solution of a marks system. CLI exit 1.
struct verify_error : std::runtime_error {
    explicit verify_error(const std::string& m) : std::runtime_error(m) {}
};

// Hard sanity caps; operation-level caps are passed explicitly.
inline constexpr int kMaxGroupoidObjects = 64;
inline constexpr int kMaxGroupoidMorphisms = 4096;
inline constexpr int kMaxPoints = 4096;

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw input_error(msg);
}

inline void check_capacity(bool cond, const std::string& msg) {
    if (!cond) throw capacity_error(msg);
}

/// FNV-1a over a string; content hashes in interchange documents.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline std::string join_ints(const std::vector<int>& v, char sep = ' ') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out.push_back(sep);
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace eqalg
