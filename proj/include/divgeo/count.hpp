#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "constants.hpp"
#include "divisor.hpp"
#include "hgeo.hpp"

namespace divgeo {

/**
 * Length threshold for perpendicular counts. Either a plain real s, or an
 * exact rational value of cosh(s) so that integer thresholds such as
 * floor((cosh s - 1)/2) are computed without rounding.
 */
struct LengthParam {
  double s = 0;
  std::optional<Rat> cosh_exact;

  static LengthParam from_s(double s) {
    if (s <= 0) throw std::invalid_argument("LengthParam: s must be positive");
    LengthParam p;
    p.s = s;
    return p;
  }
  static LengthParam from_cosh(const Rat& c) {
    if (c <= 1) throw std::invalid_argument("LengthParam: cosh s must exceed 1");
    LengthParam p;
    p.cosh_exact = c;
    p.s = acosh_stable(static_cast<double>(c));
    return p;
  }

  double cosh_value() const {
    return cosh_exact ? static_cast<double>(*cosh_exact) : std::cosh(s);
  }

  /** floor((cosh s - offset) / scale), exactly when cosh is exact. */
  long long floor_cosh_linear(long long offset, long long scale) const {
    if (cosh_exact) {
      const Rat v = (*cosh_exact - offset) / scale;
      Int q = boost::multiprecision::numerator(v) / boost::multiprecision::denominator(v);
      if (q * boost::multiprecision::denominator(v) > boost::multiprecision::numerator(v)) --q;
      return q.convert_to<long long>();
    }
    return static_cast<long long>(std::floor((std::cosh(s) - offset) / scale));
  }

  /** floor(mul * cosh s - offset), exactly when cosh is exact. */
  long long floor_scaled(long long mul, long long offset) const {
    if (cosh_exact) {
      const Rat v = *cosh_exact * mul - offset;
      Int q = boost::multiprecision::numerator(v) / boost::multiprecision::denominator(v);
      if (q * boost::multiprecision::denominator(v) > boost::multiprecision::numerator(v)) --q;
      return q.convert_to<long long>();
    }
    return static_cast<long long>(std::floor(mul * std::cosh(s) - offset));
  }
};

/** One Gamma_Z-translate of a divergent geodesic with its perpendicular data. */
struct PerpRecord {
  long long a, b, c, d;   // matrix entries, all positive
  Int cosh_lambda_num;    // exact numerator of cosh(lambda) (denominator 1 or 2)
  Int cosh_lambda_den;
  double lambda;
};

/**
 * All Gamma_Z-translates of ]0, inf[ on the positive side with unique
 * positive-entry representatives (a b; c d), ad - bc = 1, generated via
 * divisor pairs b c = k, a d = k + 1 for k = 1..max_bc.
 * cosh(lambda) = 1 + 2 b c.
 */
inline std::vector<PerpRecord> enumerate_delta_translates(long long max_bc) {
  if (max_bc < 1) throw std::invalid_argument("enumerate_delta_translates: max_bc < 1");
  std::vector<PerpRecord> out;
  for (long long k = 1; k <= max_bc; ++k) {
    std::vector<std::pair<long long, long long>> bc, ad;
    for (long long b = 1; b * b <= k; ++b) {
      if (k % b) continue;
      bc.emplace_back(b, k / b);
      if (b != k / b) bc.emplace_back(k / b, b);
    }
    for (long long a = 1; a * a <= k + 1; ++a) {
      if ((k + 1) % a) continue;
      ad.emplace_back(a, (k + 1) / a);
      if (a != (k + 1) / a) ad.emplace_back((k + 1) / a, a);
    }
    for (const auto& [b, c] : bc)
      for (const auto& [a, d] : ad) {
        PerpRecord r;
        r.a = a; r.b = b; r.c = c; r.d = d;
        r.cosh_lambda_num = 1 + 2 * k;
        r.cosh_lambda_den = 1;
        r.lambda = acosh_stable(static_cast<double>(1 + 2 * k));
        out.push_back(r);
      }
  }
  return out;
}

struct CountReport {
  std::string pair;
  double s = 0;
  Int count = 0;
  double main_term = 0;  // leading asymptotic evaluated at s
  double ratio = 0;      // count / main_term
};

/**
 * Perp(Delta, Delta; s): translates of ]0, inf[ at perpendicular distance
 * <= s from itself. Computed two ways -- divisor sum over k <= floor((cosh
 * s - 1)/2) and direct enumeration -- which must agree exactly.
 */
inline CountReport count_perp_delta_delta(const LengthParam& p) {
  const long long kmax = p.floor_cosh_linear(1, 2);
  Int by_sum = 0;
  if (kmax >= 1) {
    SieveTableZ t = sieve_d(kmax + 1);
    unsigned long long acc = 0;
    for (long long k = 1; k <= kmax; ++k) {
      acc += static_cast<unsigned long long>(t.counts[k]) * t.counts[k + 1];
      if (acc > (1ULL << 62)) { by_sum += acc; acc = 0; }
    }
    by_sum += acc;
  }
  // Independent route: direct pair enumeration without the sieve.
  Int by_enum = 0;
  for (long long k = 1; k <= kmax; ++k) {
    long long dk = 0, dk1 = 0;
    for (long long i = 1; i * i <= k; ++i)
      if (k % i == 0) dk += (i * i == k) ? 1 : 2;
    for (long long i = 1; i * i <= k + 1; ++i)
      if ((k + 1) % i == 0) dk1 += (i * i == k + 1) ? 1 : 2;
    by_enum += Int(dk) * dk1;
  }
  if (by_sum != by_enum)
    throw std::runtime_error("count_perp_delta_delta: sieve and enumeration disagree");
  CountReport r;
  r.pair = "delta-delta";
  r.s = p.s;
  r.count = by_sum;
  r.main_term = 3.0 / (2.0 * M_PI * M_PI) * p.s * p.s * std::exp(p.s);
  r.ratio = r.main_term > 0 ? static_cast<double>(r.count) / r.main_term : 0.0;
  return r;
}

/**
 * Perp(Delta, Delta_1; s) with Delta_1~ = ]0, 2[: parametrized by b >= 1,
 * w = 2c + d >= 1 with cosh(lambda) = 1 + b w, and for each (b, w) the
 * admissible d > 0 divide b w + 2; endpoints must stay positive.
 * Validated against a naive entry-bounded enumeration in the tests.
 */
inline CountReport count_perp_delta_delta1(const LengthParam& p) {
  const long long kmax = p.floor_cosh_linear(1, 1);  // b w <= cosh s - 1
  Int total = 0;
  std::vector<long long> spf;  // smallest prime factor for k + 2
  const long long fmax = kmax + 2;
  if (fmax >= 2) {
    spf.assign(static_cast<std::size_t>(fmax) + 1, 0);
    for (long long i = 2; i <= fmax; ++i) {
      if (spf[i]) continue;
      for (long long j = i; j <= fmax; j += i)
        if (!spf[j]) spf[j] = i;
    }
  }
  auto divisors_of = [&](long long v) {
    std::vector<std::pair<long long, int>> fac;
    while (v > 1) {
      long long pr = spf[static_cast<std::size_t>(v)];
      int e = 0;
      while (v % pr == 0) { v /= pr; ++e; }
      fac.emplace_back(pr, e);
    }
    return divisors_from_factors(fac);
  };
  for (long long k = 1; k <= kmax; ++k) {
    const auto divs = divisors_of(k + 2);
    for (long long b = 1; b * b <= k; ++b) {
      if (k % b) continue;
      for (int swap = 0; swap < ((b * b == k) ? 1 : 2); ++swap) {
        const long long bb = swap ? k / b : b;
        const long long w = k / bb;
        for (long long d : divs) {
          if ((w - d) % 2 != 0) continue;
          const long long c = (w - d) / 2;
          const long long num = 1 + bb * c;
          if (num % d != 0) continue;
          const long long a = num / d;
          if (a * d - bb * c != 1) continue;
          if (2 * a + bb <= 0) continue;
          total += 1;
        }
      }
    }
  }
  CountReport r;
  r.pair = "delta-delta1";
  r.s = p.s;
  r.count = total;
  r.main_term = 3.0 / (2.0 * M_PI * M_PI) * p.s * p.s * std::exp(p.s);
  r.ratio = r.main_term > 0 ? static_cast<double>(r.count) / r.main_term : 0.0;
  return r;
}

/**
 * Perp(Delta_1, Delta_1; s): conjugate ]0, 2[ to ]0, inf[ by h = (2 0; -1 2)
 * (fraction-free). The conjugated group elements (a', b', c', d') =
 * (a + b/2, b, (4c + 2d - 2a - b)/4, (2d - b)/2) have cosh(lambda) =
 * 1 + 2 b' c' = 1 + m/2 with m = b (4c + 2d - 2a - b), and
 * (2a + b)(2d - b) = m + 4. Enumerates factorization pairs of m and m + 4
 * with the integrality congruences of (a, c, d).
 */
inline CountReport count_perp_delta1_delta1(const LengthParam& p) {
  // m = b W <= 2 (cosh s - 1)
  const long long mmax = p.floor_scaled(2, 2);
  Int total = 0;
  for (long long m = 1; m <= mmax; ++m) {
    // factor pairs of m and of m + 4
    std::vector<std::pair<long long, long long>> bw, ap;
    for (long long b = 1; b * b <= m; ++b) {
      if (m % b) continue;
      bw.emplace_back(b, m / b);
      if (b != m / b) bw.emplace_back(m / b, b);
    }
    for (long long A = 1; A * A <= m + 4; ++A) {
      if ((m + 4) % A) continue;
      ap.emplace_back(A, (m + 4) / A);
      if (A != (m + 4) / A) ap.emplace_back((m + 4) / A, A);
    }
    for (const auto& [b, W] : bw)
      for (const auto& [A, P] : ap) {
        // A = 2a + b, P = 2d - b, W = 4c + 2d - 2a - b
        if ((A - b) % 2 != 0 || (P + b) % 2 != 0) continue;
        const long long a = (A - b) / 2;
        const long long d = (P + b) / 2;
        const long long cnum = W + 2 * a - 2 * d + b;
        if (cnum % 4 != 0) continue;
        const long long c = cnum / 4;
        if (a * d - b * c != 1) continue;
        total += 1;
      }
  }
  CountReport r;
  r.pair = "delta1-delta1";
  r.s = p.s;
  r.count = total;
  r.main_term = 3.0 / (2.0 * M_PI * M_PI) * p.s * p.s * std::exp(p.s);
  r.ratio = r.main_term > 0 ? static_cast<double>(r.count) / r.main_term : 0.0;
  return r;
}

/**
 * Factorizations of x^2 + 1 for x in [lo, hi] via a root-of-minus-one
 * sieve: for every prime p = 2 or 1 mod 4 up to hi, divide out p at the
 * positions x = +-r mod p with r^2 = -1 mod p. The leftover cofactor is
 * prime. Callback receives (x, factors).
 */
inline void for_each_x2p1_factorization(
    long long lo, long long hi,
    const std::function<void(long long, const std::vector<std::pair<long long, int>>&)>& cb) {
  if (lo > hi) return;
  const long long bound = std::max(std::llabs(lo), std::llabs(hi));
  // Primes up to bound via simple sieve.
  std::vector<bool> comp(static_cast<std::size_t>(bound) + 1, false);
  std::vector<long long> primes;
  for (long long i = 2; i <= bound; ++i) {
    if (comp[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (long long j = i * i; j <= bound; j += i) comp[static_cast<std::size_t>(j)] = true;
  }
  struct PRoot { long long p, r; };
  std::vector<PRoot> roots;
  for (long long p : primes) {
    if (p == 2) { roots.push_back({2, 1}); continue; }
    if (p % 4 != 1) continue;
    // find sqrt(-1) mod p
    long long r = 0;
    for (long long a = 2; a < p; ++a) {
      r = powmod(a, (p - 1) / 4, p);
      if (static_cast<unsigned __int128>(r) * r % p == p - 1) break;
      r = 0;
    }
    if (r == 0) throw std::logic_error("for_each_x2p1_factorization: no root found");
    roots.push_back({p, r});
  }
  const long long block = 1 << 16;
  std::vector<unsigned long long> rem(block);
  std::vector<std::vector<std::pair<long long, int>>> fac(block);
  for (long long base = lo; base <= hi; base += block) {
    const long long top = std::min(hi, base + block - 1);
    const long long len = top - base + 1;
    for (long long i = 0; i < len; ++i) {
      const long long x = base + i;
      rem[i] = static_cast<unsigned long long>(x) * x + 1;
      fac[i].clear();
    }
    for (const auto& [p, r] : roots) {
      for (long long sgn2 = 0; sgn2 < (p == 2 ? 1 : 2); ++sgn2) {
        const long long root = sgn2 ? p - r : r;
        const long long x0 = base + (((root - base) % p) + p) % p;
        for (long long x = x0; x <= top; x += p) {
          const long long i = x - base;
          int e = 0;
          while (rem[i] % static_cast<unsigned long long>(p) == 0) {
            rem[i] /= static_cast<unsigned long long>(p);
            ++e;
          }
          if (e) fac[i].emplace_back(p, e);
        }
      }
    }
    for (long long i = 0; i < len; ++i) {
      if (rem[i] > 1) fac[i].emplace_back(static_cast<long long>(rem[i]), 1);
      cb(base + i, fac[i]);
    }
  }
}

/**
 * Perp(Delta, {Gamma i}; s): perpendiculars from the vertical axis to the
 * orbit of i, modulo the stabilizers {id, iota} on both sides. The orbit
 * points at distance arcosh(sqrt(x^2 + 1)) give the closed count
 *   sum_{x = 1}^{X} d(x^2 + 1),   X = floor(sqrt(cosh^2 s - 1)).
 * Validated against brute-force matrix enumeration in the tests.
 */
inline CountReport count_perp_delta_iorbit(const LengthParam& p) {
  // X = floor(sinh s) computed through cosh^2 - 1.
  long long X;
  if (p.cosh_exact) {
    const Rat c2 = *p.cosh_exact * *p.cosh_exact - 1;
    const Int num = boost::multiprecision::numerator(c2);
    const Int den = boost::multiprecision::denominator(c2);
    // floor(sqrt(num/den))
    Int lo = isqrt_floor(num / den);
    while ((lo + 1) * (lo + 1) * den <= num) ++lo;
    while (lo * lo * den > num) --lo;
    X = lo.convert_to<long long>();
  } else {
    const double c = std::cosh(p.s);
    X = static_cast<long long>(std::floor(std::sqrt(c * c - 1.0)));
  }
  Int total = 0;
  if (X >= 1) {
    unsigned long long acc = 0;
    for_each_x2p1_factorization(1, X, [&](long long, const auto& fac) {
      unsigned long long dcount = 1;
      for (const auto& [pr, e] : fac) dcount *= static_cast<unsigned long long>(e + 1);
      acc += dcount;
    });
    total = acc;
  }
  CountReport r;
  r.pair = "delta-iorbit";
  r.s = p.s;
  r.count = total;
  r.main_term = 3.0 / (2.0 * M_PI) * p.s * std::exp(p.s);
  r.ratio = r.main_term > 0 ? static_cast<double>(r.count) / r.main_term : 0.0;
  return r;
}

/**
 * Perp(Delta_1, {Gamma i}; s): orbit points (x + i)/q, q | x^2 + 1, at
 * distance d from ]0, 2[ with
 *   cosh^2 d = (x^2 + 1)((2q - x)^2 + 1) / (4 q^2),
 * excluding the on-geodesic point (x, q) = (1, 1), modulo the order-two
 * stabilizer of ]0, 2[ (a free action here), hence divided by 2.
 */
inline CountReport count_perp_delta1_iorbit(const LengthParam& p) {
  const double C = p.cosh_value();
  // |x| <= 2 sinh^2 s + |near-endpoint slack|; see the two cusp branches.
  const long long Xb = static_cast<long long>(std::ceil(2.0 * C * C + 2.0 * C + 4.0));
  Int raw = 0;
  const Rat C2 = p.cosh_exact ? (*p.cosh_exact * *p.cosh_exact)
                              : Rat(0);  // exact threshold when available
  for_each_x2p1_factorization(-Xb, Xb, [&](long long x, const auto& fac) {
    const auto divs = divisors_from_factors(fac);
    const unsigned long long n2 = static_cast<unsigned long long>(x) * x + 1;
    for (long long q : divs) {
      if (x == 1 && q == 1) continue;
      // cosh^2 d = n2 * ((2q - x)^2 + 1) / (4 q^2) <= C^2 ?
      const long long rterm = 2 * q - x;
      const double lhs = static_cast<double>(n2) *
                         (static_cast<double>(rterm) * rterm + 1.0);
      const double rhs = 4.0 * static_cast<double>(q) * q * C * C;
      if (lhs > rhs * (1 + 1e-9)) continue;
      if (p.cosh_exact) {
        const Int lhs_i = Int(n2) * (Int(rterm) * rterm + 1);
        const Rat rhs_r = Rat(4) * q * q * C2;
        if (Rat(lhs_i) > rhs_r) continue;
      } else if (lhs > rhs) {
        continue;
      }
      raw += 1;
    }
  });
  if (raw % 2 != 0)
    throw std::runtime_error("count_perp_delta1_iorbit: stabilizer action not free");
  CountReport r;
  r.pair = "delta1-iorbit";
  r.s = p.s;
  r.count = raw / 2;
  r.main_term = 3.0 / (2.0 * M_PI) * p.s * std::exp(p.s);
  r.ratio = r.main_term > 0 ? static_cast<double>(r.count) / r.main_term : 0.0;
  return r;
}

/** Quadratic least-squares fit of y e^{-delta s} against (s^2, s, 1). */
struct AsymptoticFit {
  double c2, c1, c0;
};

inline AsymptoticFit asymptotic_fit(const std::vector<double>& s,
                                    const std::vector<double>& counts, double delta) {
  if (s.size() != counts.size() || s.size() < 3)
    throw std::invalid_argument("asymptotic_fit: need >= 3 matching samples");
  // Normal equations for the 3-parameter model.
  double m[3][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double y = counts[i] * std::exp(-delta * s[i]);
    const double basis[3] = {s[i] * s[i], s[i], 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
      m[r][3] += basis[r] * y;
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    if (std::abs(m[col][col]) < 1e-14)
      throw std::runtime_error("asymptotic_fit: singular system");
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

/** Bianchi divisor-pair count with its main term and ratio R(N). */
struct BianchiReport {
  long long radius = 0;
  Int raw_sum = 0;           // sum of d_K(k) d_K(k-1), naive unit-counting
  Int unit_normalized_num = 0;  // raw_sum (numerator over |units|^2)
  long long units_sq = 1;
  double main_term = 0;  // 32 pi^3 / (|D|^{3/2} zeta_K(2)) N^2 (ln N)^2 for the raw sum
  double ratio = 0;      // R(N)
};

inline BianchiReport bianchi_count(Discriminant disc, long long radius, int bands = 1,
                                   std::size_t memory_cap_bytes = 512ull << 20) {
  BianchiReport rep;
  rep.radius = radius;
  rep.raw_sum = divisor_sum_quadratic(disc, radius, bands, memory_cap_bytes);
  const long long u = static_cast<long long>(units(disc).size());
  rep.units_sq = u * u;
  rep.unit_normalized_num = rep.raw_sum;
  const double N = static_cast<double>(radius);
  rep.main_term = bianchi_main_coeff(disc) * N * N * std::log(N) * std::log(N);
  rep.ratio = static_cast<double>(rep.raw_sum) / rep.main_term;
  return rep;
}

/** Ratio diagnostics for the rational divisor-pair sum at cutoff n. */
struct RationalRatioReport {
  long long n = 0;
  Int sum = 0;
  double leading_ratio = 0;   // sum / ((6/pi^2) n (ln n)^2)
  double two_term_ratio = 0;  // sum / ((6/pi^2) n (ln n)^2 + a1 n ln n)
};

inline RationalRatioReport rational_ratio_report(long long n, double a1 = 1.574) {
  RationalRatioReport rep;
  rep.n = n;
  rep.sum = divisor_sum_rational(n);
  const double x = static_cast<double>(n);
  const double lead = 6.0 / (M_PI * M_PI) * x * std::log(x) * std::log(x);
  rep.leading_ratio = static_cast<double>(rep.sum) / lead;
  rep.two_term_ratio = static_cast<double>(rep.sum) / (lead + a1 * x * std::log(x));
  return rep;
}

/** Two-term ratio for the Gaussian-integer sum at radius N with the
 *  secondary coefficient A1 (ideal-normalized sum). */
inline double bianchi_two_term_ratio(const BianchiReport& rep, Discriminant disc,
                                     double A1 = 8.37) {
  const double N = static_cast<double>(rep.radius);
  const double lead = M_PI * M_PI * M_PI / (4.0 * zeta_K_2(disc)) * N * N *
                      std::log(N) * std::log(N);
  const double second = A1 * N * N * std::log(N);
  const double ideal_sum =
      static_cast<double>(rep.raw_sum) / static_cast<double>(rep.units_sq);
  return ideal_sum / (lead + second);
}

}  // namespace divgeo
