#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "ring.hpp"

namespace divgeo {

/** Divisor-count table for 1..n_max over the rational integers. */
struct SieveTableZ {
  long long n_max = 0;
  std::vector<std::uint16_t> counts;  // counts[k], 1-indexed; counts[0] unused

  std::uint16_t d(long long k) const {
    if (k < 1 || k > n_max) throw std::out_of_range("SieveTableZ::d: index out of range");
    return counts[static_cast<std::size_t>(k)];
  }
};

inline SieveTableZ sieve_d(long long n_max) {
  if (n_max < 1) throw std::invalid_argument("sieve_d: n_max must be >= 1");
  SieveTableZ t;
  t.n_max = n_max;
  t.counts.assign(static_cast<std::size_t>(n_max) + 1, 0);
  for (long long d = 1; d <= n_max; ++d)
    for (long long m = d; m <= n_max; m += d) ++t.counts[static_cast<std::size_t>(m)];
  return t;
}

/** Sum over 1 <= k <= n of d(k) d(k+1). */
inline Int divisor_sum_rational(long long n) {
  if (n < 1) throw std::invalid_argument("divisor_sum_rational: n must be >= 1");
  SieveTableZ t = sieve_d(n + 1);
  unsigned long long acc = 0;
  Int total = 0;
  for (long long k = 1; k <= n; ++k) {
    acc += static_cast<unsigned long long>(t.counts[k]) * t.counts[k + 1];
    if (acc > (1ULL << 62)) { total += acc; acc = 0; }
  }
  total += acc;
  return total;
}

/**
 * Divisor-count table over O_K for all nonzero x with qnorm(x) <= N^2.
 * Entries are counted over all divisors including unit multiples, so each
 * count is |O_K^x| times the ideal-divisor count on principal rings.
 *
 * Storage: one row per omega-coordinate y, each row a contiguous range of
 * x-coordinates. Rows carry their own offsets. Counts are 16-bit.
 */
class SieveTableK {
 public:
  SieveTableK(Discriminant disc, long long radius, int bands = 1,
              std::size_t memory_cap_bytes = 512ull << 20)
      : disc_(disc), radius_(radius) {
    if (disc.is_rational())
      throw std::invalid_argument("SieveTableK: quadratic discriminant required");
    if (radius < 1) throw std::invalid_argument("SieveTableK: radius must be >= 1");
    if (bands < 1) throw std::invalid_argument("SieveTableK: bands must be >= 1");
    build_rows(memory_cap_bytes);
    mark(bands);
  }

  Discriminant disc() const { return disc_; }
  long long radius() const { return radius_; }
  Int norm_bound() const { return Int(radius_) * radius_; }

  /** Count for the element x + y*omega; 0 for the zero element or outside. */
  std::uint32_t count(long long x, long long y) const {
    if (x == 0 && y == 0) return 0;
    if (y < ymin_ || y > ymax_) return 0;
    const Row& r = rows_[static_cast<std::size_t>(y - ymin_)];
    if (x < r.x0 || x >= r.x0 + static_cast<long long>(r.counts.size())) return 0;
    return r.counts[static_cast<std::size_t>(x - r.x0)];
  }

  long long qnorm_ll(long long x, long long y) const {
    const long long D = disc_.value();
    const long long c = disc_.omega_norm();
    return x * x + D * x * y + c * y * y;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (long long y = ymin_; y <= ymax_; ++y) {
      const Row& r = rows_[static_cast<std::size_t>(y - ymin_)];
      for (long long x = r.x0; x < r.x0 + static_cast<long long>(r.counts.size()); ++x) {
        if (x == 0 && y == 0) continue;
        f(x, y, r.counts[static_cast<std::size_t>(x - r.x0)]);
      }
    }
  }

 private:
  struct Row {
    long long x0 = 0;
    std::vector<std::uint16_t> counts;
  };

  static long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
  }
  static long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

  /** Exact x range of the row: (2x + D y)^2 <= 4 N^2 + D y^2. */
  static bool row_span(long long D, long long N2, long long y, long long& lo,
                       long long& hi) {
    const long long rhs = 4 * N2 + D * y * y;
    if (rhs < 0) return false;
    const long long h = isqrt_floor(rhs);
    lo = ceil_div(-h - D * y, 2);
    hi = floor_div(h - D * y, 2);
    return lo <= hi;
  }

  void build_rows(std::size_t memory_cap_bytes) {
    const long long D = disc_.value();
    const long long N2 = radius_ * radius_;
    ymax_ = isqrt_floor(4 * N2 / (-D));
    while (4 * N2 + D * ymax_ * ymax_ < 0) --ymax_;
    ymin_ = -ymax_;
    rows_.resize(static_cast<std::size_t>(ymax_ - ymin_) + 1);
    std::size_t total = 0;
    for (long long y = ymin_; y <= ymax_; ++y) {
      long long lo, hi;
      if (row_span(D, N2, y, lo, hi))
        total += static_cast<std::size_t>(hi - lo + 1);
    }
    const std::size_t bytes = total * sizeof(std::uint16_t);
    if (bytes > memory_cap_bytes)
      throw std::runtime_error(
          "SieveTableK: table needs " + std::to_string(bytes) +
          " bytes, exceeding the cap of " + std::to_string(memory_cap_bytes) +
          "; raise the cap or reduce the radius");
    for (long long y = ymin_; y <= ymax_; ++y) {
      Row& r = rows_[static_cast<std::size_t>(y - ymin_)];
      long long lo, hi;
      if (!row_span(D, N2, y, lo, hi)) { r.x0 = 0; continue; }
      r.x0 = lo;
      r.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    }
  }

  /**
   * Mark multiples: for every nonzero divisor d and multiple m with
   * qnorm(d m) <= N^2, increment the cell of d*m. Bands split the target
   * y-range; results are independent of the number of bands.
   */
  void mark(int bands) {
    const long long D = disc_.value();
    const long long c = disc_.omega_norm();
    const long long N2 = radius_ * radius_;
    std::vector<std::pair<long long, long long>> band_ranges;
    const long long span = ymax_ - ymin_ + 1;
    for (int b = 0; b < bands; ++b) {
      long long lo = ymin_ + span * b / bands;
      long long hi = ymin_ + span * (b + 1) / bands - 1;
      if (lo <= hi) band_ranges.emplace_back(lo, hi);
    }
    for (const auto& [band_lo, band_hi] : band_ranges) {
      for (long long dy = ymin_; dy <= ymax_; ++dy) {
        const Row& drow = rows_[static_cast<std::size_t>(dy - ymin_)];
        for (long long dx = drow.x0;
             dx < drow.x0 + static_cast<long long>(drow.counts.size()); ++dx) {
          if (dx == 0 && dy == 0) continue;
          const long long nd = qnorm_ll(dx, dy);
          if (nd == 0 || nd > N2) continue;
          const long long q = N2 / nd;  // multiples m need qnorm(m) <= q
          // Enumerate m with qnorm(m) <= q row by row.
          const long long mymax = isqrt_floor(4 * q / (-D));
          for (long long my = -mymax; my <= mymax; ++my) {
            long long mlo, mhi;
            if (!row_span(D, q, my, mlo, mhi)) continue;
            // p = d * m stepped incrementally in mx.
            long long px = dx * mlo - c * dy * my;
            long long py = dx * my + dy * mlo + D * dy * my;
            for (long long mx = mlo; mx <= mhi; ++mx, px += dx, py += dy) {
              if (mx == 0 && my == 0) continue;
              if (py < band_lo || py > band_hi) continue;
              Row& pr = rows_[static_cast<std::size_t>(py - ymin_)];
              ++pr.counts[static_cast<std::size_t>(px - pr.x0)];
            }
          }
        }
      }
    }
  }

  Discriminant disc_;
  long long radius_;
  long long ymin_ = 0, ymax_ = 0;
  std::vector<Row> rows_;
};

inline SieveTableK sieve_dK(Discriminant disc, long long radius, int bands = 1,
                            std::size_t memory_cap_bytes = 512ull << 20) {
  return SieveTableK(disc, radius, bands, memory_cap_bytes);
}

/** Number of nonzero divisors of x in O_K, by direct enumeration. */
inline long long dK_direct(const QuadInt& x) {
  if (x.is_zero()) throw std::invalid_argument("dK_direct: zero argument");
  if (x.disc.is_rational()) {
    long long n = 0;
    const Int ax = abs_int(x.x);
    for (Int d = 1; d <= ax; ++d)
      if (x.x % d == 0) n += 2;  // +/- d
    return n;
  }
  const long long D = x.disc.value();
  const Int nx = qnorm(x);
  long long count = 0;
  const Int ymax_i = isqrt_floor(Int(4) * nx / (-D));
  const long long ymax = ymax_i.convert_to<long long>();
  for (long long y = -ymax; y <= ymax; ++y) {
    const Int rhs = Int(4) * nx + D * Int(y) * y;
    if (rhs < 0) continue;
    const Int h = isqrt_floor(rhs);
    // 2x in [-h - Dy, h - Dy]
    const Int lo2 = -h - Int(D) * y, hi2 = h - Int(D) * y;
    Int lo = (lo2 >= 0) ? Int((lo2 + 1) / 2) : Int(-((-lo2) / 2));
    Int hi = (hi2 >= 0) ? Int(hi2 / 2) : Int(-((-hi2 + 1) / 2));
    for (Int xx = lo; xx <= hi; ++xx) {
      QuadInt d{xx, Int(y), x.disc};
      if (d.is_zero()) continue;
      if (qnorm(d) > nx) continue;
      if (divides(d, x)) ++count;
    }
  }
  return count;
}

/**
 * Sum of d_K(k) d_K(k-1) over k in O_K with qnorm(k) <= N^2, k != 0, 1.
 * The internal table extends to radius N+1 so that k-1 is always covered.
 */
inline Int divisor_sum_quadratic(Discriminant disc, long long radius, int bands = 1,
                                 std::size_t memory_cap_bytes = 512ull << 20) {
  SieveTableK table(disc, radius + 1, bands, memory_cap_bytes);
  const long long N2 = radius * radius;
  unsigned long long acc = 0;
  Int total = 0;
  table.for_each([&](long long x, long long y, std::uint32_t cnt) {
    if (cnt == 0) return;
    if (x == 1 && y == 0) return;
    if (table.qnorm_ll(x, y) > N2) return;
    const std::uint32_t prev = table.count(x - 1, y);
    if (prev == 0) return;
    acc += static_cast<unsigned long long>(cnt) * prev;
    if (acc > (1ULL << 62)) { total += acc; acc = 0; }
  });
  total += acc;
  return total;
}

/**
 * zeta_K(2) = zeta(2) L(2, chi_D) computed two ways: a character Dirichlet
 * series with a period-block tail bound, and an Euler product over rational
 * primes. Throws if the methods disagree beyond 1e-9.
 */
inline double zeta_K_2(Discriminant disc) {
  static std::map<long long, double> cache;
  static std::mutex mu;
  const long long D = disc.value();
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(D);
    if (it != cache.end()) return it->second;
  }
  const long long period = -D;
  std::vector<int> chi(static_cast<std::size_t>(period));
  for (long long r = 0; r < period; ++r)
    chi[static_cast<std::size_t>(r)] = kronecker(D, r);

  // Method 1: Dirichlet series. Character sums over any interval are bounded
  // by |D|, so Abel summation bounds the tail beyond M by 2|D|/M^2.
  const long long M = 10'000'000;
  long double series = 0.0L;
  for (long long n = 1; n <= M; ++n) {
    const int c = chi[static_cast<std::size_t>(n % period)];
    if (c != 0) series += static_cast<long double>(c) / (static_cast<long double>(n) * n);
  }
  const long double zeta2 = 1.6449340668482264364724151666460251892L;  // pi^2/6
  const double by_series = static_cast<double>(zeta2 * series);

  // Method 2: Euler product over primes up to P.
  const long long P = 100'000'000;
  std::vector<bool> composite(static_cast<std::size_t>(P / 2 + 1), false);
  long double logprod = 0.0L;
  auto add_prime = [&](long long p) {
    const int c = chi[static_cast<std::size_t>(p % period)];
    const long double ip2 = 1.0L / (static_cast<long double>(p) * p);
    logprod += -std::log1p(-ip2);  // zeta(2) local factor
    if (c != 0) logprod += -std::log1p(-static_cast<long double>(c) * ip2);
  };
  add_prime(2);
  for (long long i = 1; 2 * i + 1 <= P; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    const long long p = 2 * i + 1;
    add_prime(p);
    for (long long j = (p * p - 1) / 2; 2 * j + 1 <= P; j += p)
      composite[static_cast<std::size_t>(j)] = true;
  }
  const double by_euler = static_cast<double>(std::exp(logprod));

  if (std::abs(by_series - by_euler) > 1e-9)
    throw std::runtime_error("zeta_K_2: series and Euler product disagree beyond 1e-9");
  std::lock_guard<std::mutex> lk(mu);
  cache[D] = by_series;
  return by_series;
}

}  // namespace divgeo
