#include "aev/integer.hpp"

#include "aev/error.hpp"

namespace aev {

Integer euclid_div(const Integer & a, const Integer & b) {
    if (b == 0) { throw DivisionByZero(); }
    Integer q = a / b; // truncates toward zero
    Integer r = a - b * q;
    if (r < 0) { q += (b > 0) ? -1 : 1; }
    return q;
}

Integer euclid_mod(const Integer & a, const Integer & b) {
    Integer q = euclid_div(a, b);
    return a - b * q;
}

std::vector<Integer> IntRange::values() const {
    std::vector<Integer> out;
    for (Integer v = lo; v <= hi; ++v) { out.push_back(v); }
    return out;
}

IntRange IntRange::parse(const std::string & text) {
    auto sep = text.find("..");
    if (sep == std::string::npos) { throw Error("range must be written lo..hi, got '" + text + "'"); }
    IntRange r;
    try {
        r = IntRange{Integer(text.substr(0, sep)), Integer(text.substr(sep + 2))};
    } catch (const std::runtime_error &) {
        throw Error("malformed range '" + text + "'");
    }
    if (r.empty()) { throw Error("empty range '" + text + "'"); }
    return r;
}

std::string to_string(const IntRange & range) { return range.lo.str() + ".." + range.hi.str(); }

} // namespace aev
