#pragma once

#include <cmath>
#include <stdexcept>

#include "divisor.hpp"
#include "heis.hpp"

namespace divgeo {

/** Gamma(k/2) for positive integer k, exact up to rounding: integer and
 *  half-integer factorial forms. */
inline double gamma_half(int twice_arg) {
  if (twice_arg <= 0) throw std::domain_error("gamma_half: argument must be positive");
  if (twice_arg % 2 == 0) {
    double v = 1.0;
    for (int m = 2; m < twice_arg / 2 + 1; ++m) v *= (m - 1);
    return v;  // (k/2 - 1)!
  }
  // Gamma(1/2) = sqrt(pi); Gamma(x + 1) = x Gamma(x).
  double v = std::sqrt(M_PI);
  for (int t = 1; t < twice_arg; t += 2) v *= t / 2.0;
  return v;
}

/** Volume of the unit sphere S^{m-1} in R^m: 2 pi^{m/2} / Gamma(m/2). */
inline double sphere_volume(int m) {
  if (m < 1) throw std::domain_error("sphere_volume: dimension must be >= 1");
  return 2.0 * std::pow(M_PI, m / 2.0) / gamma_half(m);
}

/** Volume of the unit ball in R^m. */
inline double ball_volume(int m) {
  if (m < 0) throw std::domain_error("ball_volume: dimension must be >= 0");
  return std::pow(M_PI, m / 2.0) / gamma_half(m + 2);
}

/** Critical exponent of the lattice: delta = d(n+1) - 2, d = dim_R K. */
inline int critical_exponent(ScalarField f, int n) {
  if (n < 2) throw std::invalid_argument("critical_exponent: n must be >= 2");
  return field_dim(f) * (n + 1) - 2;
}

/** Xi for the real field: 2^{n-1} Vol(B^{n-1}). */
inline double xi_real(int n) {
  if (n < 2) throw std::invalid_argument("xi_real: n must be >= 2");
  return std::pow(2.0, n - 1) * ball_volume(n - 1);
}

/** Xi for K in {C, H}: 2 pi^{(nd-1)/2} / (Gamma((d-1)/2) (d(n-1)/2 - 1)!). */
inline double xi_constant(ScalarField f, int n) {
  if (f == ScalarField::real) return xi_real(n);
  if (n < 2) throw std::invalid_argument("xi_constant: n must be >= 2");
  const int d = field_dim(f);
  double fact = 1.0;
  for (int m = 2; m <= d * (n - 1) / 2 - 1; ++m) fact *= m;
  return 2.0 * std::pow(M_PI, (n * d - 1) / 2.0) / (gamma_half(d - 1) * fact);
}

/** Product-of-spheres form of Xi: (1/2) Vol(S^{d-2}) Vol(S^{d(n-1)-1}). */
inline double xi_constant_spheres(ScalarField f, int n) {
  if (f == ScalarField::real)
    throw std::invalid_argument("xi_constant_spheres: defined for C and H only");
  const int d = field_dim(f);
  return 0.5 * sphere_volume(d - 1) * sphere_volume(d * (n - 1));
}

/**
 * Bowen-Margulis measure norm for a finite-covolume real hyperbolic
 * orbifold of dimension n: ||m_BM|| = 2^{n-1} Vol(S^{n-1}) vol.
 */
inline double bm_mass_real(int n, double vol) {
  if (vol <= 0) throw std::domain_error("bm_mass_real: volume must be positive");
  return std::pow(2.0, n - 1) * sphere_volume(n) * vol;
}

/** Bowen-Margulis norm over K in {C, H}: 2^{-d(n-1)} Vol(S^{nd-1}) vol. */
inline double bm_mass(ScalarField f, int n, double vol) {
  if (vol <= 0) throw std::domain_error("bm_mass: volume must be positive");
  if (f == ScalarField::real) return bm_mass_real(n, vol);
  const int d = field_dim(f);
  return sphere_volume(n * d) * vol / std::pow(2.0, d * (n - 1));
}

/** Geometric data of one counting problem: orbifold volume, skinning mass
 *  of the target, multiplicity and reciprocity weights. */
struct OrbifoldData {
  double vol = 0;        // orbifold volume
  double sigma = 0;      // skinning measure norm of the target
  double mult = 1;       // multiplicity weight m(D)
  double iota = 1;       // reciprocity index iota(D)
};

/**
 * Coefficient of s^2 e^{delta s} ... for counting perpendiculars between two
 * divergent geodesics in a real hyperbolic n-orbifold (two-cusp form):
 *   Gamma(n/2) iota^- iota^+ sqrt(pi)^{-1} (n-1) pi^{n/2-1} / ...
 * Displayed form: (n-1) pi^{n/2 - 1} Gamma(n/2) iota^- iota^+ /
 *                 (2^{n+1} Gamma((n+1)/2)^2 m^- m^+ vol).
 */
inline double thm6_coeff(int n, double vol, double iota_minus, double iota_plus,
                         double m_minus, double m_plus) {
  if (n < 2 || vol <= 0) throw std::invalid_argument("thm6_coeff: bad parameters");
  return (n - 1) * std::pow(M_PI, n / 2.0 - 1.0) * gamma_half(n) * iota_minus *
         iota_plus /
         (std::pow(2.0, n + 1) * gamma_half(n + 1) * gamma_half(n + 1) * m_minus *
          m_plus * vol);
}

/**
 * Coefficient for one divergent geodesic against a finite-mass target:
 *   Gamma(n/2) iota ||sigma|| / (2^n sqrt(pi) Gamma((n+1)/2) m vol).
 */
inline double thm5_coeff(int n, const OrbifoldData& data) {
  if (n < 2 || data.vol <= 0) throw std::invalid_argument("thm5_coeff: bad parameters");
  return gamma_half(n) * data.iota * data.sigma /
         (std::pow(2.0, n) * std::sqrt(M_PI) * gamma_half(n + 1) * data.mult *
          data.vol);
}

/** Generic assembly iota ||sigma|| Xi / (2^delta m ||m_BM||) (one-sided). */
inline double generic_coeff_one_sided(ScalarField f, int n, const OrbifoldData& data) {
  const int delta = critical_exponent(f, n);
  return data.iota * data.sigma * xi_constant(f, n) /
         (std::pow(2.0, delta) * data.mult * bm_mass(f, n, data.vol));
}

/** Generic assembly delta iota^- iota^+ Xi^2 / (2^{2 delta + 1} m^- m^+ ||m_BM||). */
inline double generic_coeff_two_sided(ScalarField f, int n, double vol,
                                      double iota_minus, double iota_plus,
                                      double m_minus, double m_plus) {
  const int delta = critical_exponent(f, n);
  const double xi = xi_constant(f, n);
  return delta * iota_minus * iota_plus * xi * xi /
         (std::pow(2.0, 2 * delta + 1) * m_minus * m_plus * bm_mass(f, n, vol));
}

/**
 * Displayed coefficients for counting in a K-hyperbolic orbifold
 * (K in {C, H}), n >= 2, d = dim_R K:
 *  one-sided:  prod_{i=1}^{d/2} (nd/2 - i) * iota ||sigma|| /
 *              (4^{d-1} sqrt(pi) Gamma((d-1)/2) m vol)
 *  two-sided assembled from the generic form.
 */
inline double thm9_coeff_one_sided(ScalarField f, int n, const OrbifoldData& data) {
  if (f == ScalarField::real) throw std::invalid_argument("thm9_coeff_one_sided: use C or H");
  const int d = field_dim(f);
  double prod = 1.0;
  for (int i = 1; i <= d / 2; ++i) prod *= (n * d / 2.0 - i);
  return prod * data.iota * data.sigma /
         (std::pow(4.0, d - 1) * std::sqrt(M_PI) * gamma_half(d - 1) * data.mult *
          data.vol);
}

inline double thm9_coeff_two_sided(ScalarField f, int n, double vol, double iota_minus,
                                   double iota_plus, double m_minus, double m_plus) {
  if (f == ScalarField::real) throw std::invalid_argument("thm9_coeff_two_sided: use C or H");
  return generic_coeff_two_sided(f, n, vol, iota_minus, iota_plus, m_minus, m_plus);
}

/** Volume of the Humbert-type modular surface piece: |D|^{3/2} zeta_K(2) / (4 pi^2). */
inline double humbert_volume(Discriminant disc) {
  const double aD = static_cast<double>(-disc.value());
  return std::pow(aD, 1.5) * zeta_K_2(disc) / (4.0 * M_PI * M_PI);
}

/** Leading coefficient 8 pi^3 / (|D|^{3/2} zeta_K(2)) of the quadratic
 *  divisor-pair average (X (ln X)^2 normalization). */
inline double thm2_coeff(Discriminant disc) {
  const double aD = static_cast<double>(-disc.value());
  return 8.0 * std::pow(M_PI, 3.0) / (std::pow(aD, 1.5) * zeta_K_2(disc));
}

/** c_K = pi^3 / (|units|^2 |D|^{3/2} zeta_K(2)). */
inline double c_K_constant(Discriminant disc) {
  const double u = static_cast<double>(units(disc).size());
  const double aD = static_cast<double>(-disc.value());
  return std::pow(M_PI, 3.0) / (u * u * std::pow(aD, 1.5) * zeta_K_2(disc));
}

/** Raw-sum main-term coefficient 32 pi^3 / (|D|^{3/2} zeta_K(2)) = 32 |units|^2 c_K. */
inline double bianchi_main_coeff(Discriminant disc) {
  const double aD = static_cast<double>(-disc.value());
  return 32.0 * std::pow(M_PI, 3.0) / (std::pow(aD, 1.5) * zeta_K_2(disc));
}

}  // namespace divgeo
