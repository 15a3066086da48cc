#pragma once

#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace divlat {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Exact nonnegative integer with an optional factorization attached.
struct ExactDisc {
  BigInt value{1};
  std::vector<std::pair<BigInt, int>> factorization;
};

// Natural log of a positive big integer, accurate to double precision even
// when the value itself overflows double range.
double log_bigint(const BigInt& v);

} // namespace divlat
