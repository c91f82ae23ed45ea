#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace detkit {

inline constexpr const char* kVersion = "0.1.0";

// A subset of a ground set of at most 24 elements, one bit per element.
using Mask = std::uint32_t;

inline int popcount(Mask x) { return std::popcount(x); }
inline Mask bit(int e) { return Mask{1} << e; }
inline bool has(Mask x, int e) { return (x >> e) & 1u; }
inline Mask full_mask(int n) { return (n >= 32) ? ~Mask{0} : ((Mask{1} << n) - 1); }
inline int lowest(Mask x) { return std::countr_zero(x); }   // undefined for 0

// Calls f(e) for each element of x in increasing order.
template <typename F>
inline void for_each_bit(Mask x, F&& f) {
    while (x) {
        int e = std::countr_zero(x);
        f(e);
        x &= x - 1;
    }
}

inline std::vector<int> elements_of(Mask x) {
    std::vector<int> out;
    for_each_bit(x, [&](int e) { out.push_back(e); });
    return out;
}

inline Mask mask_of(const std::vector<int>& elems) {
    Mask m = 0;
    for (int e : elems) m |= bit(e);
    return m;
}

// Enumerates k-subsets of {0..n-1} via Gosper's hack; f(mask) per subset.
template <typename F>
inline void for_each_ksubset(int n, int k, F&& f) {
    if (k == 0) { f(Mask{0}); return; }
    if (k > n) return;
    Mask x = full_mask(k);
    Mask limit = Mask{1} << n;
    while (x < limit) {
        f(x);
        Mask c = x & -x;
        Mask r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
        if (r == 0) break;  // overflow guard for k == n
    }
}

// Errors ----------------------------------------------------------------

// Invalid argument to an operation (wrong cardinality, out-of-range element, ...).
struct ArgError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Ground set exceeds the table cap.
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input; offset/line locate the problem.
struct ParseError : std::runtime_error {
    std::size_t where;
    ParseError(const std::string& msg, std::size_t where_)
        : std::runtime_error(msg), where(where_) {}
};

// A construction precondition failed (non-circuit relaxation target,
// invalid bases list, family parameters out of range, ...).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace detkit
