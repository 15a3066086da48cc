#include "divlat/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace divlat {

double log_bigint(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("log_bigint: argument must be > 0");
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits <= 900) return std::log(v.convert_to<double>());
  double top = 0.0; // leading 53 bits
  for (unsigned i = bits + 1; i-- > bits - 52;)
    top = 2.0 * top + (boost::multiprecision::bit_test(v, i) ? 1.0 : 0.0);
  return std::log(top) + (static_cast<double>(bits) - 52.0) * std::log(2.0);
}

} // namespace divlat
