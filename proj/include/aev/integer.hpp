#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace aev {

/// Unbounded signed integer, the value domain of program states and Int-sorted terms.
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Integer & value) { return value.str(); }

/// Euclidean division as in the SMT-LIB Int theory: a = b * q + r with 0 <= r < |b|.
/// Throws DivisionByZero when b == 0.
Integer euclid_div(const Integer & a, const Integer & b);
Integer euclid_mod(const Integer & a, const Integer & b);

/// Closed integer interval [lo, hi] used as a finite enumeration domain.
struct IntRange {
    Integer lo;
    Integer hi;

    IntRange() = default;
    IntRange(Integer lo_, Integer hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {}

    bool empty() const { return hi < lo; }
    bool contains(const Integer & v) const { return lo <= v && v <= hi; }
    std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(hi - lo + 1); }
    std::vector<Integer> values() const;

    /// Parses "lo..hi"; throws aev::Error on malformed text or an empty range.
    static IntRange parse(const std::string & text);
};

std::string to_string(const IntRange & range);

} // namespace aev
