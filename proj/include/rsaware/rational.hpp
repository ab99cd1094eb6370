#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rsaware {

// Exact arithmetic used on every theorem-checking path. Factorizability is
// an equality test, so it must not depend on float tolerances.
using Rat = boost::multiprecision::cpp_rational;

// Doubles are dyadic rationals; the conversion is exact.
inline Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite input");
    return Rat(x);
}

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

inline std::vector<double> rat_to_double(const std::vector<Rat>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const Rat& r : v) out.push_back(rat_to_double(r));
    return out;
}

}  // namespace rsaware
