// Independent numeric oracles used by the test suites: brute-force divisor
// counting, geodesic-distance minimization in H^2 and H^3, and parallel
// transport along a geodesic of H^3 by direct integration of the connection.
// Nothing here shares code paths with the library's closed forms.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

/** Divisor count by trial division. */
inline long long divisors_naive(long long n) {
  if (n <= 0) throw std::invalid_argument("divisors_naive: n must be positive");
  long long c = 0;
  for (long long d = 1; d * d <= n; ++d)
    if (n % d == 0) c += (d * d == n) ? 1 : 2;
  return c;
}

/** Hyperbolic distance in the upper half-plane, direct formula. */
inline double dist_h2(std::complex<double> z, std::complex<double> w) {
  const double num = std::norm(z - w);
  return std::acosh(1.0 + num / (2.0 * z.imag() * w.imag()));
}

/** Point of the H^2 geodesic with real endpoints x1 < x2 at parameter t. */
inline std::complex<double> geo_point_h2(double x1, double x2, double t) {
  const double c = (x1 + x2) / 2.0, r = std::abs(x2 - x1) / 2.0;
  return {c + r * std::tanh(t), r / std::cosh(t)};
}

/**
 * Minimum of a smooth strictly convex-ish function of two variables by
 * alternating golden-section searches followed by Newton polishing on the
 * central-difference gradient.  Returns the argmin.
 */
inline std::array<double, 2> minimize2(const std::function<double(double, double)>& f,
                                       double lo1, double hi1, double lo2, double hi2) {
  auto line_min = [&](const std::function<double(double)>& g, double lo, double hi) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int i = 0; i < 120; ++i) {
      if (f1 < f2) {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - phi * (b - a); f1 = g(x1);
      } else {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + phi * (b - a); f2 = g(x2);
      }
    }
    return (a + b) / 2.0;
  };
  double u = (lo1 + hi1) / 2.0, v = (lo2 + hi2) / 2.0;
  for (int round = 0; round < 4; ++round) {
    u = line_min([&](double x) { return f(x, v); }, lo1, hi1);
    v = line_min([&](double y) { return f(u, y); }, lo2, hi2);
  }
  // Newton on the gradient with central differences.
  const double h = 1e-5;
  for (int it = 0; it < 8; ++it) {
    const double fu = (f(u + h, v) - f(u - h, v)) / (2 * h);
    const double fv = (f(u, v + h) - f(u, v - h)) / (2 * h);
    const double fuu = (f(u + h, v) - 2 * f(u, v) + f(u - h, v)) / (h * h);
    const double fvv = (f(u, v + h) - 2 * f(u, v) + f(u, v - h)) / (h * h);
    const double fuv =
        (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) /
        (4 * h * h);
    const double det = fuu * fvv - fuv * fuv;
    if (std::abs(det) < 1e-18) break;
    const double du = (fv * fuv - fu * fvv) / det;
    const double dv = (fu * fuv - fv * fuu) / det;
    u += du; v += dv;
    if (std::abs(du) + std::abs(dv) < 1e-13) break;
  }
  return {u, v};
}

/** Distance between two disjoint H^2 geodesics with real endpoints,
 *  by numeric minimization. */
inline double perp_length_h2(double a1, double a2, double b1, double b2) {
  auto f = [&](double t, double u) {
    return dist_h2(geo_point_h2(a1, a2, t), geo_point_h2(b1, b2, u));
  };
  const auto m = minimize2(f, -20, 20, -20, 20);
  return f(m[0], m[1]);
}

// ---- H^3 upper half-space: points (z, h), z in C, h > 0 ----

struct PtH3 {
  std::complex<double> z;
  double h;
};

inline double dist_h3(const PtH3& a, const PtH3& b) {
  const double num = std::norm(a.z - b.z) + (a.h - b.h) * (a.h - b.h);
  return std::acosh(1.0 + num / (2.0 * a.h * b.h));
}

/** Point at parameter t of the H^3 geodesic with boundary endpoints p, q. */
inline PtH3 geo_point_h3(std::complex<double> p, std::complex<double> q, double t) {
  const std::complex<double> c = (p + q) / 2.0;
  const double r = std::abs(q - p) / 2.0;
  const std::complex<double> u = (q - p) / std::abs(q - p);
  return {c + u * (r * std::tanh(t)), r / std::cosh(t)};
}

/** Velocity (dz/dt, dh/dt) of geo_point_h3 at parameter t. */
inline std::array<double, 3> geo_velocity_h3(std::complex<double> p,
                                             std::complex<double> q, double t) {
  const double r = std::abs(q - p) / 2.0;
  const std::complex<double> u = (q - p) / std::abs(q - p);
  const double sech = 1.0 / std::cosh(t);
  const std::complex<double> dz = u * (r * sech * sech);
  const double dh = -r * sech * std::tanh(t);
  return {dz.real(), dz.imag(), dh};
}

struct ComplexDistOracle {
  double lambda;
  double theta;
};

/**
 * Complex distance (length + transport angle) from the vertical axis
 * ]0, oo[ of H^3 to the geodesic with boundary endpoints p (minus end) and
 * q (plus end), computed without the cross-ratio formula: the length by
 * 2-variable minimization, the angle by parallel transport of the axis
 * direction along the common perpendicular (RK4 on the Levi-Civita
 * connection of the conformal metric).
 */
inline ComplexDistOracle complex_distance_oracle(std::complex<double> p,
                                                 std::complex<double> q) {
  auto f = [&](double t, double u) {
    const PtH3 axis{{0.0, 0.0}, std::exp(t)};
    return dist_h3(axis, geo_point_h3(p, q, u));
  };
  const auto m = minimize2(f, -25, 25, -25, 25);
  const double lambda = f(m[0], m[1]);

  const PtH3 x1{{0.0, 0.0}, std::exp(m[0])};
  const PtH3 x2 = geo_point_h3(p, q, m[1]);

  // The common perpendicular lies in the vertical plane through x1 and x2
  // (x1 sits over the origin).  Plane coordinates: (s, h), position
  // z = s * e with e the horizontal unit vector toward x2.
  const double s2 = std::abs(x2.z);
  if (s2 < 1e-12)
    throw std::runtime_error("complex_distance_oracle: degenerate configuration");
  const std::complex<double> e = x2.z / s2;
  // Semicircle (c + r cos(phi), r sin(phi)) through (0, h1) and (s2, h2).
  const double c = (s2 * s2 + x2.h * x2.h - x1.h * x1.h) / (2.0 * s2);
  const double r = std::sqrt(c * c + x1.h * x1.h);
  const double phi1 = std::atan2(x1.h, -c);
  const double phi2 = std::atan2(x2.h, s2 - c);

  // Transport the upward axis direction from x1 to x2.  Conformal metric:
  // the transport equations in coordinates (x, y, h) are
  //   v_x' = (x' v_h + h' v_x)/h,  v_y' = (y' v_h + h' v_y)/h,
  //   v_h' = (h' v_h - x' v_x - y' v_y)/h.
  std::array<double, 3> v{0.0, 0.0, 1.0};  // tangent of the axis at x1
  auto deriv = [&](double phi, const std::array<double, 3>& w) {
    const double px = c + r * std::cos(phi), ph = r * std::sin(phi);
    const double dxs = -r * std::sin(phi), dh = r * std::cos(phi);
    const double dx = dxs * e.real(), dy = dxs * e.imag();
    (void)px;
    return std::array<double, 3>{(dx * w[2] + dh * w[0]) / ph,
                                 (dy * w[2] + dh * w[1]) / ph,
                                 (dh * w[2] - dx * w[0] - dy * w[1]) / ph};
  };
  const int steps = 6000;
  const double dphi = (phi2 - phi1) / steps;
  double phi = phi1;
  for (int i = 0; i < steps; ++i) {
    const auto k1 = deriv(phi, v);
    std::array<double, 3> w2, w3, w4;
    for (int j = 0; j < 3; ++j) w2[j] = v[j] + 0.5 * dphi * k1[j];
    const auto k2 = deriv(phi + 0.5 * dphi, w2);
    for (int j = 0; j < 3; ++j) w3[j] = v[j] + 0.5 * dphi * k2[j];
    const auto k3 = deriv(phi + 0.5 * dphi, w3);
    for (int j = 0; j < 3; ++j) w4[j] = v[j] + dphi * k3[j];
    const auto k4 = deriv(phi + dphi, w4);
    for (int j = 0; j < 3; ++j)
      v[j] += dphi / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    phi += dphi;
  }

  // Angle at x2 between the transported direction and the target tangent
  // (toward q).  Both are orthogonal to the perpendicular, and the metric is
  // conformal, so the Euclidean angle is the hyperbolic one.
  const auto w = geo_velocity_h3(p, q, m[1]);
  const double dot = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
  const double nv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  const double nw = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  double cosang = dot / (nv * nw);
  cosang = std::clamp(cosang, -1.0, 1.0);
  return {lambda, std::acos(cosang)};
}

}  // namespace oracle
