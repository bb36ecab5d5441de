#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "divgeo/ambiguous.hpp"
#include "divgeo/count.hpp"
#include "divgeo/hgeo.hpp"
#include "oracles.hpp"

using namespace divgeo;

TEST_CASE("length parameter: exact cosh thresholds and validation") {
  const auto p = LengthParam::from_cosh(Rat(201));
  CHECK(p.floor_cosh_linear(1, 2) == 100);  // (201 - 1) / 2
  CHECK(p.floor_cosh_linear(1, 1) == 200);
  CHECK(p.floor_scaled(2, 2) == 400);
  // Boundary exactness: cosh = 3 gives k <= 1, not 0.
  CHECK(LengthParam::from_cosh(Rat(3)).floor_cosh_linear(1, 2) == 1);
  // Just below the threshold.
  CHECK(LengthParam::from_cosh(Rat(599, 200)).floor_cosh_linear(1, 2) == 0);
  CHECK_THROWS(LengthParam::from_s(0.0));
  CHECK_THROWS(LengthParam::from_cosh(Rat(1)));
}

TEST_CASE("translates of the vertical axis: closed form and geometry") {
  const auto recs = enumerate_delta_translates(40);
  Int direct = 0;
  for (long long k = 1; k <= 40; ++k)
    direct += Int(oracle::divisors_naive(k)) * oracle::divisors_naive(k + 1);
  CHECK(Int(recs.size()) == direct);
  for (const auto& r : recs) {
    CHECK(r.a * r.d - r.b * r.c == 1);
    CHECK(r.a > 0);
    CHECK(r.b > 0);
    CHECK(r.c > 0);
    CHECK(r.d > 0);
    // cosh(lambda) = 1 + 2bc, and it matches the geometric perpendicular
    // between ]0, inf[ and its image ]b/d, a/c[.
    CHECK(r.cosh_lambda_num == 1 + 2 * r.b * r.c);
    const double geom =
        perp_vertical_to_nested(static_cast<double>(r.b) / r.d,
                                static_cast<double>(r.a) / r.c)
            .length;
    CHECK(std::cosh(geom) == doctest::Approx(1.0 + 2.0 * r.b * r.c).epsilon(1e-10));
    CHECK(r.lambda == doctest::Approx(geom).epsilon(1e-10));
  }
}

TEST_CASE("divisor-sum identity for the self-pair count") {
  // N(s) = sum_{k <= floor((cosh s - 1)/2)} d(k) d(k+1) equals the number of
  // enumerated translates, for exact and inexact length parameters.
  for (long long B : {1, 2, 7, 50, 1000}) {
    const auto p = LengthParam::from_cosh(Rat(1 + 2 * B));
    const auto rep = count_perp_delta_delta(p);
    CHECK(rep.count == Int(enumerate_delta_translates(B).size()));
  }
  const auto ps = LengthParam::from_s(6.0);
  const auto reps = count_perp_delta_delta(ps);
  const long long B = static_cast<long long>(std::floor((std::cosh(6.0) - 1) / 2));
  CHECK(reps.count == Int(enumerate_delta_translates(B).size()));
}

TEST_CASE("frozen counts for all five pair types") {
  struct Row {
    double s;
    long long dd, dd1, d1d1, di, d1i;
  };
  // Dual-verified values: each count function was checked against an
  // independent element-by-element enumeration when frozen.
  const std::vector<Row> rows = {{3.0, 18, 36, 54, 32, 38},
                                 {4.5, 236, 340, 448, 206, 234},
                                 {6.0, 2006, 2572, 3240, 1208, 1342}};
  for (const auto& row : rows) {
    const auto p = LengthParam::from_s(row.s);
    CHECK(count_perp_delta_delta(p).count == Int(row.dd));
    CHECK(count_perp_delta_delta1(p).count == Int(row.dd1));
    CHECK(count_perp_delta1_delta1(p).count == Int(row.d1d1));
    CHECK(count_perp_delta_iorbit(p).count == Int(row.di));
    CHECK(count_perp_delta1_iorbit(p).count == Int(row.d1i));
    // The group-element constructors must produce one element per
    // perpendicular (twice as many for the unquotiented d1-iorbit family).
    CHECK(Int(perp_elements_delta_delta(p).size()) == Int(row.dd));
    CHECK(Int(perp_elements_delta_delta1(p).size()) == Int(row.dd1));
    CHECK(Int(perp_elements_delta1_delta1(p).size()) == Int(row.d1d1));
    CHECK(Int(perp_elements_delta_iorbit(p).size()) == Int(row.di));
    CHECK(Int(perp_elements_delta1_iorbit(p).size()) == Int(2 * row.d1i));
  }
}

TEST_CASE("orbit-point count against a trial-division recount") {
  // Perp(]0,inf[, orbit of i; s) = sum_{x <= floor(sinh s)} d(x^2 + 1).
  for (long long coshv : {5, 20, 101}) {
    const auto p = LengthParam::from_cosh(Rat(coshv));
    const long long X = static_cast<long long>(
        std::floor(std::sqrt(static_cast<double>(coshv) * coshv - 1.0)));
    Int expect = 0;
    for (long long x = 1; x <= X; ++x)
      expect += Int(oracle::divisors_naive(x * x + 1));
    CHECK(count_perp_delta_iorbit(p).count == expect);
  }
  // Geometric witness: the orbit point (x + i)/q = (x/q, 1/q) sits at
  // distance arcosh(sqrt(x^2 + 1)) from the vertical axis for every
  // divisor q, since sinh(dist) = (x/q)/(1/q) = x. Verify by direct
  // minimization over the axis.
  for (long long x = 1; x <= 6; ++x) {
    std::vector<long long> divs;
    for (long long q = 1; q <= x * x + 1; ++q)
      if ((x * x + 1) % q == 0) divs.push_back(q);
    for (long long q : divs) {
      double best = 1e18;
      for (double t = -4.0; t <= 4.0; t += 1e-4) {
        best = std::min(best, oracle::dist_h2(
                                  {static_cast<double>(x) / q, 1.0 / q},
                                  {0.0, std::exp(t)}));
      }
      CHECK(std::cosh(best) ==
            doctest::Approx(std::sqrt(x * x + 1.0)).epsilon(1e-6));
    }
  }
}

TEST_CASE("asymptotic fit recovers an exact quadratic model") {
  const double delta = 1.0;
  const std::vector<double> s = {2, 3, 4, 5, 6, 7};
  std::vector<double> counts;
  for (double x : s) counts.push_back((0.3 * x * x - 1.2 * x + 0.7) * std::exp(x));
  const auto fit = asymptotic_fit(s, counts, delta);
  CHECK(fit.c2 == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(fit.c1 == doctest::Approx(-1.2).epsilon(1e-9));
  CHECK(fit.c0 == doctest::Approx(0.7).epsilon(1e-9));
  CHECK_THROWS(asymptotic_fit({1, 2}, {1, 2}, 1.0));
}

TEST_CASE("rational ratio report at a small frozen cutoff") {
  const auto rep = rational_ratio_report(10000);
  Int direct = 0;
  {
    SieveTableZ t = sieve_d(10001);
    for (long long k = 1; k <= 10000; ++k)
      direct += Int(t.counts[k]) * t.counts[k + 1];
  }
  CHECK(rep.sum == direct);
  CHECK(rep.leading_ratio > 1.0);
  CHECK(rep.leading_ratio < 1.6);
  // The two-term normalization must sit closer to 1 than the leading one.
  CHECK(std::abs(rep.two_term_ratio - 1.0) < std::abs(rep.leading_ratio - 1.0));
}

TEST_CASE("Gaussian divisor-pair count: band split is a pure optimization") {
  const auto disc = Discriminant::quadratic(-4);
  const auto r1 = bianchi_count(disc, 60, 1);
  const auto r3 = bianchi_count(disc, 60, 3);
  const auto r5 = bianchi_count(disc, 60, 5);
  CHECK(r1.raw_sum == r3.raw_sum);
  CHECK(r1.raw_sum == r5.raw_sum);
  CHECK(r1.units_sq == 16);
  CHECK(r1.ratio == doctest::Approx(static_cast<double>(r1.raw_sum) /
                                    r1.main_term));
}
