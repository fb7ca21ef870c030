#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace lensgrid {

// Exact rationals for every grading value. Denominators stay tiny (they divide
// 4pq products from the d-invariant recursion), so 64-bit limbs are plenty.
using Rational = boost::rational<std::int64_t>;

// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

}  // namespace lensgrid
