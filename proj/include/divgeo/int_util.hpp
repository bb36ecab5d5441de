#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace divgeo {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sgn(const Int& v) { return v.sign(); }

/** Exact fraction num/den; normalizes the sign into the numerator, since the
 *  two-component cpp_rational constructor rejects negative denominators. */
inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(std::move(num), std::move(den));
}
inline int sgn(long long v) { return (v > 0) - (v < 0); }

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

/** Floor of sqrt for non-negative integers. */
inline Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt_floor: negative argument");
  if (n == 0) return 0;
  return boost::multiprecision::sqrt(n);
}

inline long long isqrt_floor(long long n) {
  if (n < 0) throw std::domain_error("isqrt_floor: negative argument");
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/** Exact divisibility; returns true and sets q = a/b when b | a. */
inline bool divides_exact(const Int& b, const Int& a, Int& q) {
  if (b == 0) return false;
  Int r;
  boost::multiprecision::divide_qr(a, b, q, r);
  return r == 0;
}

inline bool divides_exact(const Int& b, const Int& a) {
  Int q;
  return divides_exact(b, a, q);
}

/** Divisors of n > 0 from a factorization list [(p, e), ...]. */
inline std::vector<long long> divisors_from_factors(
    const std::vector<std::pair<long long, int>>& fac) {
  std::vector<long long> divs{1};
  for (const auto& [p, e] : fac) {
    const std::size_t base = divs.size();
    long long pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

/** Trial-division factorization for small n > 0. */
inline std::vector<std::pair<long long, int>> factorize_small(long long n) {
  if (n <= 0) throw std::domain_error("factorize_small: argument must be positive");
  std::vector<std::pair<long long, int>> fac;
  for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      fac.emplace_back(p, e);
    }
  }
  if (n > 1) fac.emplace_back(n, 1);
  return fac;
}

inline bool is_squarefree(long long n) {
  n = n < 0 ? -n : n;
  if (n == 0) return false;
  for (const auto& [p, e] : factorize_small(n))
    if (e > 1) return false;
  return true;
}

/** Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g. */
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  long long x1, y1;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

/** Kronecker symbol (a|n), defined for all integers. */
inline int kronecker(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int tz = 0;
  while (n % 2 == 0) { n /= 2; ++tz; }
  if (tz > 0) {
    if (a % 2 == 0) return 0;
    long long am8 = ((a % 8) + 8) % 8;
    if (tz % 2 == 1 && (am8 == 3 || am8 == 5)) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    int z = 0;
    while (a % 2 == 0) { a /= 2; ++z; }
    if (z % 2 == 1) {
      long long nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    long long t = a;
    a = n % t;
    n = t;
  }
  return n == 1 ? result : 0;
}

inline long long powmod(long long b, long long e, long long m) {
  unsigned __int128 r = 1, bb = static_cast<unsigned __int128>(b % m);
  while (e > 0) {
    if (e & 1) r = r * bb % m;
    bb = bb * bb % m;
    e >>= 1;
  }
  return static_cast<long long>(r);
}

}  // namespace divgeo
