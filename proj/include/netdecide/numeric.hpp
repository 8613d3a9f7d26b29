#pragma once

#include <cassert>

namespace netdecide::detail {

// base^k for k >= 0 by square-and-multiply. Uses only IEEE multiplies, so
// results are reproducible across libm implementations, unlike std::pow.
inline double pow_int(double base, long long k) {
  assert(k >= 0);
  double result = 1.0;
  double square = base;
  auto e = static_cast<unsigned long long>(k);
  while (e != 0) {
    if (e & 1ull) result *= square;
    e >>= 1;
    if (e != 0) square *= square;
  }
  return result;
}

}  // namespace netdecide::detail
