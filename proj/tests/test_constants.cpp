#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "divgeo/ambiguous.hpp"
#include "divgeo/constants.hpp"
#include "divgeo/divisor.hpp"

using namespace divgeo;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gamma_half matches tgamma at half-integers") {
  for (int m = 1; m <= 20; ++m) {
    CHECK(gamma_half(m) == doctest::Approx(std::tgamma(m / 2.0)).epsilon(1e-13));
  }
  CHECK(gamma_half(1) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(gamma_half(2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_half(3) == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-14));
}

TEST_CASE("sphere and ball volumes: small dimensions and recursion") {
  // sphere_volume(m) is the boundary sphere of the unit ball in R^m.
  CHECK(sphere_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sphere_volume(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(sphere_volume(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(sphere_volume(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK_THROWS(sphere_volume(0));
  // Vol(B^1)=2, Vol(B^2)=pi, Vol(B^3)=4pi/3.
  CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  // Boundary relation: sphere_volume(m) = m * ball_volume(m).
  for (int m = 1; m <= 13; ++m) {
    CHECK(sphere_volume(m) == doctest::Approx(m * ball_volume(m)).epsilon(1e-13));
  }
}

TEST_CASE("critical exponent delta = d(n+1) - 2") {
  CHECK(critical_exponent(ScalarField::real, 2) == 1);
  CHECK(critical_exponent(ScalarField::real, 3) == 2);
  CHECK(critical_exponent(ScalarField::complex, 2) == 4);
  CHECK(critical_exponent(ScalarField::complex, 3) == 6);
  CHECK(critical_exponent(ScalarField::quaternion, 2) == 10);
  CHECK(critical_exponent(ScalarField::quaternion, 3) == 14);
  CHECK_THROWS(critical_exponent(ScalarField::real, 1));
}

TEST_CASE("xi closed forms: real values and Gamma-vs-spheres agreement") {
  // Real: 2^{n-1} Vol(B^{n-1}); n=2 gives 2*2=4, n=3 gives 4*pi.
  CHECK(xi_real(2) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(xi_real(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(xi_constant(ScalarField::real, 2) == doctest::Approx(4.0).epsilon(1e-14));
  // C, n=2: 2 pi^{3/2} / (Gamma(1/2) * 0!) = 2 pi.
  CHECK(xi_constant(ScalarField::complex, 2) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-13));
  // The Gamma form and the half-product-of-sphere-volumes form must agree.
  for (int n = 2; n <= 4; ++n) {
    CHECK(xi_constant(ScalarField::complex, n) ==
          doctest::Approx(xi_constant_spheres(ScalarField::complex, n))
              .epsilon(1e-12));
  }
  for (int n = 2; n <= 3; ++n) {
    CHECK(xi_constant(ScalarField::quaternion, n) ==
          doctest::Approx(xi_constant_spheres(ScalarField::quaternion, n))
              .epsilon(1e-12));
  }
  CHECK_THROWS(xi_constant_spheres(ScalarField::real, 2));
}

TEST_CASE("theorem coefficients reduce to the generic proof-pipeline forms") {
  const std::vector<OrbifoldData> cases = {
      {1.0, 2.0, 1, 1}, {kPi / 3.0, 2.0 * kPi, 2, 1}, {2.5, 0.7, 3, 2}};
  for (const auto& data : cases) {
    for (int n = 2; n <= 6; ++n) {
      CHECK(thm5_coeff(n, data) ==
            doctest::Approx(generic_coeff_one_sided(ScalarField::real, n, data))
                .epsilon(1e-12));
    }
  }
  for (int n = 2; n <= 6; ++n) {
    CHECK(thm6_coeff(n, 1.7, 2.0, 3.0, 2, 5) ==
          doctest::Approx(generic_coeff_two_sided(ScalarField::real, n, 1.7, 2.0,
                                                  3.0, 2, 5))
              .epsilon(1e-12));
  }
  for (auto f : {ScalarField::complex, ScalarField::quaternion}) {
    const int nmax = f == ScalarField::complex ? 4 : 3;
    for (int n = 2; n <= nmax; ++n) {
      CHECK(thm9_coeff_two_sided(f, n, 1.3, 2.0, 3.0, 2, 5) ==
            doctest::Approx(generic_coeff_two_sided(f, n, 1.3, 2.0, 3.0, 2, 5))
                .epsilon(1e-12));
      const OrbifoldData data{0.9, 1.4, 2, 3};
      CHECK(thm9_coeff_one_sided(f, n, data) ==
            doctest::Approx(generic_coeff_one_sided(f, n, data)).epsilon(1e-12));
    }
  }
  CHECK_THROWS(thm9_coeff_one_sided(ScalarField::real, 2, OrbifoldData{1, 1, 1, 1}));
}

TEST_CASE("displayed two-sided product form over C and H") {
  // Independent evaluation of
  //   (d(n+1)-2) pi^{nd/2-1} prod_{i<=d/2}(nd/2-i) i- i+ /
  //   (2^{d(n+3)-4} Gamma((d-1)/2)^2 (d(n-1)/2-1)! m- m+ vol)
  // against the assembled generic coefficient.
  const double vol = 1.7, im = 2.0, ip = 3.0, mm = 2.0, mp = 5.0;
  for (auto f : {ScalarField::complex, ScalarField::quaternion}) {
    const int d = field_dim(f);
    const int nmax = f == ScalarField::complex ? 4 : 3;
    for (int n = 2; n <= nmax; ++n) {
      double prod = 1.0;
      for (int i = 1; i <= d / 2; ++i) prod *= (n * d / 2.0 - i);
      double fact = 1.0;
      for (int m = 2; m <= d * (n - 1) / 2 - 1; ++m) fact *= m;
      const double g = gamma_half(d - 1);
      const double displayed = (d * (n + 1) - 2) *
                               std::pow(kPi, n * d / 2.0 - 1.0) * prod * im * ip /
                               (std::pow(2.0, d * (n + 3) - 4) * g * g * fact * mm *
                                mp * vol);
      CHECK(thm9_coeff_two_sided(f, n, vol, im, ip, mm, mp) ==
            doctest::Approx(displayed).epsilon(1e-12));
    }
  }
}

TEST_CASE("Bowen-Margulis norm over C and H: both printed forms of the paper") {
  for (auto f : {ScalarField::complex, ScalarField::quaternion}) {
    const int d = field_dim(f);
    for (int n = 2; n <= 4; ++n) {
      double fact = 1.0;
      for (int m = 2; m <= n * d / 2 - 1; ++m) fact *= m;
      const double alt =
          std::pow(kPi, n * d / 2.0) / (std::pow(2.0, d * (n - 1) - 1) * fact);
      CHECK(bm_mass(f, n, 1.0) == doctest::Approx(alt).epsilon(1e-12));
    }
  }
  // C, n=2: Vol(S^3)/4 = pi^2/2.
  CHECK(bm_mass(ScalarField::complex, 2, 1.0) ==
        doctest::Approx(kPi * kPi / 2.0).epsilon(1e-13));
}

TEST_CASE("modular-surface specializations of the coefficients") {
  // Two divergent geodesics on the modular surface: 3/(2 pi^2).
  CHECK(thm6_coeff(2, kPi / 3.0, 1, 1, 1, 1) ==
        doctest::Approx(3.0 / (2.0 * kPi * kPi)).epsilon(1e-12));
  // Geodesic against the cusp neighborhood family: 3/(2 pi).
  CHECK(thm5_coeff(2, OrbifoldData{kPi / 3.0, 2.0 * kPi, 2, 1}) ==
        doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-12));
  // Ambiguous-class main terms: 3/(4 pi^2) s^2 e^{s/2} and 3/(8 pi) s e^{s/4}.
  CHECK(ambiguous_main_coeff() ==
        doctest::Approx(3.0 / (4.0 * kPi * kPi)).epsilon(1e-12));
  CHECK(ambiguous_reciprocal_main_coeff() ==
        doctest::Approx(3.0 / (8.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("Bowen-Margulis mass: real closed form") {
  // n=2: 2 Vol(S^1) vol = 4 pi vol.
  CHECK(bm_mass_real(2, 1.0) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(bm_mass(ScalarField::real, 2, kPi / 3.0) ==
        doctest::Approx(4.0 * kPi * kPi / 3.0).epsilon(1e-13));
  CHECK_THROWS(bm_mass_real(2, 0.0));
}

TEST_CASE("imaginary quadratic constants are mutually consistent") {
  for (int d : {-3, -4, -7, -8, -11}) {
    const Discriminant disc = Discriminant::quadratic(d);
    // humbert_volume * thm2_coeff = 2 pi, independent of the field.
    CHECK(humbert_volume(disc) * thm2_coeff(disc) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-12));
    // bianchi_main_coeff = 32 |units|^2 c_K = 4 thm2_coeff.
    const double u = static_cast<double>(units(disc).size());
    CHECK(bianchi_main_coeff(disc) ==
          doctest::Approx(32.0 * u * u * c_K_constant(disc)).epsilon(1e-12));
    CHECK(bianchi_main_coeff(disc) ==
          doctest::Approx(4.0 * thm2_coeff(disc)).epsilon(1e-12));
  }
}

TEST_CASE("zeta_K(2) frozen values for the Gaussian and Eisenstein fields") {
  // zeta_{Q(i)}(2) = (pi^2/6) * Catalan.
  const double catalan = 0.91596559417721901505;
  CHECK(zeta_K_2(Discriminant::quadratic(-4)) ==
        doctest::Approx(kPi * kPi / 6.0 * catalan).epsilon(1e-9));
  // Humbert volume of the Gaussian Bianchi orbifold, frozen via Catalan.
  CHECK(humbert_volume(Discriminant::quadratic(-4)) ==
        doctest::Approx(8.0 * catalan * kPi * kPi / 6.0 / (4.0 * kPi * kPi))
            .epsilon(1e-9));
}
