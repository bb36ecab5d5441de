#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "ring.hpp"

namespace divgeo {

/** arcosh on [1, inf), via log1p near 1 for full relative accuracy. */
inline double acosh_stable(double x) {
  if (x < 1.0) {
    if (x > 1.0 - 1e-12) return 0.0;
    throw std::domain_error("acosh_stable: argument below 1");
  }
  const double t = x - 1.0;
  if (t < 1e-8) return std::sqrt(2.0 * t) * (1.0 - t / 12.0 + 3.0 * t * t / 160.0);
  return std::log1p(t + std::sqrt(t * (x + 1.0)));
}

/** Distance in the upper half-plane. */
inline double dist_h2(std::complex<double> z1, std::complex<double> z2) {
  if (z1.imag() <= 0 || z2.imag() <= 0)
    throw std::domain_error("dist_h2: points must have positive imaginary part");
  const double dx = z1.real() - z2.real();
  const double dy = z1.imag() - z2.imag();
  return acosh_stable(1.0 + (dx * dx + dy * dy) / (2.0 * z1.imag() * z2.imag()));
}

/** Distance in upper half-space H^3, points (z, t) with t > 0. */
inline double dist_h3(std::complex<double> z1, double t1, std::complex<double> z2,
                      double t2) {
  if (t1 <= 0 || t2 <= 0) throw std::domain_error("dist_h3: heights must be positive");
  const double dz = std::norm(z1 - z2);
  const double dt = (t1 - t2) * (t1 - t2);
  return acosh_stable(1.0 + (dz + dt) / (2.0 * t1 * t2));
}

/** Distance from z to the vertical geodesic through 0: arcosh(|z| / Im z). */
inline double dist_to_vertical_axis_h2(std::complex<double> z) {
  if (z.imag() <= 0)
    throw std::domain_error("dist_to_vertical_axis_h2: point not in upper half-plane");
  return acosh_stable(std::abs(z) / z.imag());
}

inline double dist_to_vertical_axis_h3(std::complex<double> z, double t) {
  if (t <= 0) throw std::domain_error("dist_to_vertical_axis_h3: height must be positive");
  return acosh_stable(std::sqrt(std::norm(z) + t * t) / t);
}

/** Geodesic of the upper half-plane given by boundary endpoints; one may be
 *  infinite. Endpoints are exact rationals (projective over Z). */
struct GeodesicBP {
  ProjPointI e1, e2;

  GeodesicBP(ProjPointI a, ProjPointI b) : e1(a), e2(b) {
    if (e1 == e2) throw std::invalid_argument("GeodesicBP: endpoints must differ");
  }

  static GeodesicBP vertical_axis() { return {{Int(0), Int(1)}, {Int(1), Int(0)}}; }
};

struct PerpendicularH2 {
  double length;                  // > 0
  std::complex<double> foot1;     // on the first geodesic
  std::complex<double> foot2;     // on the second geodesic
};

/** Rational value p/q as double (q != 0). */
inline double proj_value(const ProjPointI& p) {
  return static_cast<double>(make_rat(p.p, p.q));
}

namespace detail {

/** Sign of the rational endpoint image (a p + b q) / (c p + d q), as the sign
 *  of the product of numerator and denominator; endpoint at 0 or infinity
 *  gives 0. Exact. */
inline int image_sign(const Mat2i& m, const ProjPointI& z) {
  const Int num = m.a * z.p + m.b * z.q;
  const Int den = m.c * z.p + m.d * z.q;
  return sgn(num) * sgn(den);
}

}  // namespace detail

/**
 * Do the two geodesics have linked endpoint pairs on the boundary circle?
 * Exact sign test on the cross-ratio-like product. Sharing an endpoint
 * counts as neither linked nor disjoint; the caller must check equality.
 */
inline bool geodesics_linked(const GeodesicBP& g1, const GeodesicBP& g2) {
  // Map g1 to ]0, infinity[ by f(z) = (q1 z - p1)/(q2 z - p2); g2 endpoints
  // are linked with g1 iff their images have opposite signs.
  const Mat2i f{g1.e1.q, -g1.e1.p, g1.e2.q, -g1.e2.p};
  const int s1 = detail::image_sign(f, g2.e1);
  const int s2 = detail::image_sign(f, g2.e2);
  if (s1 == 0 || s2 == 0)
    throw std::invalid_argument("geodesics_linked: shared endpoint");
  return s1 != s2;
}

/**
 * Common perpendicular between the vertical axis ]0, inf[ and the nested
 * geodesic ]x, y[ with 0 < x < y: length arcosh((y+x)/(y-x)), feet at
 * height sqrt(x y) on the axis and at the top of the circle over [x, y].
 */
inline PerpendicularH2 perp_vertical_to_nested(double x, double y) {
  if (!(0 < x && x < y))
    throw std::invalid_argument("perp_vertical_to_nested: need 0 < x < y");
  PerpendicularH2 p;
  p.length = acosh_stable((y + x) / (y - x));
  p.foot1 = {0.0, std::sqrt(x * y)};
  const double c = (x + y) / 2.0, r = (y - x) / 2.0;
  // Intersection of the circle |z| = sqrt(xy) with the circle over [x, y].
  const double re = x * y / c;
  const double im2 = r * r - (re - c) * (re - c);
  p.foot2 = {re, std::sqrt(std::max(0.0, im2))};
  return p;
}

/**
 * Common perpendicular between two disjoint geodesics with rational
 * endpoints. Normalizes g1 to ]0, inf[ by an explicit Mobius map, applies
 * the nested closed form, and maps the feet back. Throws if the geodesics
 * are linked or share an endpoint.
 */
inline PerpendicularH2 perp_between_geodesics(const GeodesicBP& g1, const GeodesicBP& g2) {
  if (geodesics_linked(g1, g2))
    throw std::invalid_argument("perp_between_geodesics: geodesics are linked");
  // f maps g1.e1 -> 0, g1.e2 -> infinity; f = (q1 z - p1) / (q2 z - p2).
  Mat2i f{g1.e1.q, -g1.e1.p, g1.e2.q, -g1.e2.p};
  if (f.det() == 0) throw std::invalid_argument("perp_between_geodesics: degenerate map");
  if (sgn(f.det()) < 0) f = Mat2i{-f.a, -f.b, f.c, f.d};  // keep orientation on H^2
  ProjPointI u = mobius_apply(f, g2.e1);
  ProjPointI v = mobius_apply(f, g2.e2);
  Rat ur = make_rat(u.p, u.q), vr = make_rat(v.p, v.q);  // finite, nonzero: no shared endpoints
  bool flipped = false;
  if (ur < 0) {  // images on the negative side: reflect z -> -z
    ur = -ur;
    vr = -vr;
    flipped = true;
  }
  if (vr < ur) std::swap(ur, vr);
  const double x = static_cast<double>(ur), y = static_cast<double>(vr);
  PerpendicularH2 nested = perp_vertical_to_nested(x, y);
  if (flipped) {
    nested.foot1 = {-nested.foot1.real(), nested.foot1.imag()};
    nested.foot2 = {-nested.foot2.real(), nested.foot2.imag()};
  }
  // Map feet back through f^{-1} (det +-1 after normalization is not
  // guaranteed; use the full inverse as a Mobius map on H^2).
  const double det = static_cast<double>(f.det());
  const double fa = static_cast<double>(f.a), fb = static_cast<double>(f.b);
  const double fc = static_cast<double>(f.c), fd = static_cast<double>(f.d);
  auto pull_back = [&](std::complex<double> w) {
    // inverse of (fa z + fb)/(fc z + fd): z = (fd w - fb) / (-fc w + fa)
    std::complex<double> num = fd * w - fb;
    std::complex<double> den = -fc * w + fa;
    std::complex<double> z = num / den;
    (void)det;
    return z;
  };
  PerpendicularH2 out;
  out.length = nested.length;
  out.foot1 = pull_back(nested.foot1);
  out.foot2 = pull_back(nested.foot2);
  return out;
}

struct ComplexLength {
  double lambda;  // distance, > 0
  double theta;   // rotation angle in [0, pi]
};

/**
 * Complex distance from the vertical axis ]0, inf[ of H^3 to the geodesic
 * with boundary endpoints p (image of 0) and q (image of infinity):
 * cosh(lambda + i theta) = (q + p) / (q - p), so that
 * cosh(lambda) + cos(theta) = 2 |q| / |q - p|.
 */
inline ComplexLength complex_length_from_axis(std::complex<double> p,
                                              std::complex<double> q) {
  if (p == q) throw std::invalid_argument("complex_length_from_axis: equal endpoints");
  if (p == std::complex<double>(0, 0) || q == std::complex<double>(0, 0))
    throw std::invalid_argument("complex_length_from_axis: endpoint meets the axis");
  const std::complex<double> w = (q + p) / (q - p);
  const std::complex<double> mu = std::acosh(w);
  ComplexLength out;
  out.lambda = std::abs(mu.real());
  out.theta = std::abs(mu.imag());
  return out;
}

/** Complex half-length data for gamma in SL2 over C acting on H^3:
 *  endpoints p = b/d, q = a/c of the image of the vertical axis. */
inline ComplexLength complex_length_h3(std::complex<double> a, std::complex<double> b,
                                       std::complex<double> c, std::complex<double> d) {
  if (a * d - b * c == std::complex<double>(0, 0))
    throw std::invalid_argument("complex_length_h3: singular matrix");
  if (a == std::complex<double>(0, 0) || b == std::complex<double>(0, 0) ||
      c == std::complex<double>(0, 0) || d == std::complex<double>(0, 0))
    throw std::invalid_argument("complex_length_h3: a zero entry puts an endpoint on the axis");
  return complex_length_from_axis(b / d, a / c);
}

/**
 * Hamenstadt distance between points of the unit horosphere centered at
 * infinity: the boundary Euclidean distance |x1 - x2|.
 */
inline double hamenstadt_dist_real(double x1, double x2) { return std::abs(x1 - x2); }

/** Truncated limit form e^{d((x1, e^{-T}), (x2, e^{-T}))/2 - T}; converges
 *  to hamenstadt_dist_real(x1, x2) as T grows. */
inline double hamenstadt_truncated(double x1, double x2, double T) {
  const double d = dist_h2({x1, std::exp(-T)}, {x2, std::exp(-T)});
  return std::exp(d / 2.0 - T);
}

/**
 * Residual of the distance asymptotics between the ray t -> (a, e^{-t})
 * (upper horoball ray above a > 0) and the vertical axis:
 * d(ell'(t), ell) - (t + ln a + ln 2), computed in cancellation-free form.
 */
inline double lemma4_residual(double a, double t) {
  if (a <= 0) throw std::domain_error("lemma4_residual: a must be positive");
  // d = arcosh(sqrt(a^2 + e^{-2t}) / e^{-t}) = arcosh(sqrt(a^2 e^{2t} + 1)).
  // residual = ln((1 + sqrt(1 + eps^2)) / 2), eps = e^{-t} / a.
  const double eps = std::exp(-t) / a;
  const double s = (eps * eps) / (1.0 + std::sqrt(1.0 + eps * eps));  // sqrt(1+e^2)-1
  return std::log1p(s / 2.0);
}

/** Direct check that d(ell'(t), ell) equals arcosh(sqrt(a^2 e^{2t} + 1)). */
inline double lemma4_distance(double a, double t) {
  if (a <= 0) throw std::domain_error("lemma4_distance: a must be positive");
  return dist_to_vertical_axis_h2({a, std::exp(-t)});
}

/**
 * Horospherical comparison: for points x, y on the height-1 horosphere
 * (coordinates x, y on the boundary line), the Hamenstadt distance is
 * bounded by the exponential of the distance from (x, 1) to the vertical
 * geodesic through y.  Returns whether the inequality holds (it always
 * does: the left side is sinh of the distance to the full vertical line).
 */
inline bool lemma3_check(double x, double y) {
  const double dh = hamenstadt_dist_real(x, y);
  const double d = dist_to_vertical_axis_h2({x - y, 1.0});
  return dh <= std::exp(d);
}

}  // namespace divgeo
