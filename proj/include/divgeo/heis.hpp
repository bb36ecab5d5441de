#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hgeo.hpp"
#include "ring.hpp"

namespace divgeo {

/**
 * Element (zeta, u) of the Heisenberg group Heis_{2n-1} over K (complex or
 * quaternionic scalars): zeta in K^{n-1}, u purely imaginary in Im K.
 * Group law (z', u')(z, u) = (z' + z, u' + u + 2 Im<z', z>) with the
 * Hermitian form <z', z> = sum conj(z'_i) z_i.
 */
template <typename K>
struct HeisElement {
  std::vector<K> zeta;
  K u{};  // purely imaginary

  std::size_t rank() const { return zeta.size(); }  // n - 1
};

template <typename K>
K herm_product(const std::vector<K>& a, const std::vector<K>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("herm_product: size mismatch");
  K s{};
  for (std::size_t i = 0; i < a.size(); ++i) s = s + conj_val(a[i]) * b[i];
  return s;
}

template <typename K>
double zeta_norm_sq(const std::vector<K>& z) {
  double s = 0;
  for (const K& c : z) s += abs_val(c) * abs_val(c);
  return s;
}

template <typename K>
HeisElement<K> heis_mul(const HeisElement<K>& g1, const HeisElement<K>& g2) {
  if (g1.rank() != g2.rank()) throw std::invalid_argument("heis_mul: rank mismatch");
  HeisElement<K> out;
  out.zeta.resize(g1.rank());
  for (std::size_t i = 0; i < g1.rank(); ++i) out.zeta[i] = g1.zeta[i] + g2.zeta[i];
  K cross = herm_product(g1.zeta, g2.zeta);
  out.u = g1.u + g2.u + (imag_part(cross) + imag_part(cross));
  return out;
}

template <typename K>
HeisElement<K> heis_inverse(const HeisElement<K>& g) {
  HeisElement<K> out;
  out.zeta.resize(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) out.zeta[i] = K{} - g.zeta[i];
  out.u = K{} - g.u;
  return out;
}

/** Heisenberg dilation by t > 0: (zeta, u) -> (t zeta, t^2 u). */
template <typename K>
HeisElement<K> heis_dilate(const HeisElement<K>& g, double t) {
  if (t <= 0) throw std::domain_error("heis_dilate: factor must be positive");
  HeisElement<K> out;
  out.zeta.resize(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) out.zeta[i] = g.zeta[i] * t;
  out.u = g.u * (t * t);
  return out;
}

/** Cygan gauge: d'(g) = (|zeta|^4 + |u|^2)^{1/4}. */
template <typename K>
double cygan_gauge(const HeisElement<K>& g) {
  const double z2 = zeta_norm_sq(g.zeta);
  const double uu = abs_val(g.u);
  return std::pow(z2 * z2 + uu * uu, 0.25);
}

template <typename K>
double cygan_dist(const HeisElement<K>& g1, const HeisElement<K>& g2) {
  return cygan_gauge(heis_mul(heis_inverse(g1), g2));
}

/** Modified Cygan gauge: sqrt(|zeta|^2 + | |zeta|^2 + u |). */
template <typename K>
double cygan_mod_gauge(const HeisElement<K>& g) {
  const double z2 = zeta_norm_sq(g.zeta);
  K w = g.u;
  // |zeta|^2 + u is an element of K with real part |zeta|^2.
  const double m = std::sqrt(z2 * z2 + abs_val(w) * abs_val(w));
  return std::sqrt(z2 + m);
}

template <typename K>
double cygan_mod_dist(const HeisElement<K>& g1, const HeisElement<K>& g2) {
  return cygan_mod_gauge(heis_mul(heis_inverse(g1), g2));
}

/**
 * Distance in the Siegel-domain model from the point with horospherical
 * coordinates (zeta, u, t), t > 0, to the vertical axis {(0, 0, s)}:
 *   d = (1/2) arcosh((|zeta|^2 + | |zeta|^2 + t + u |) / t),
 * with closest-point projection (0, 0, | |zeta|^2 + t + u |).
 */
struct AxisDistance {
  double dist;
  double foot_height;
};

template <typename K>
AxisDistance dist_to_vertical_axis(const HeisElement<K>& g, double t) {
  if (t <= 0) throw std::domain_error("dist_to_vertical_axis: height must be positive");
  const double z2 = zeta_norm_sq(g.zeta);
  const double re = z2 + t;              // real part of |zeta|^2 + t + u
  const double im = abs_val(g.u);        // imaginary magnitude
  const double mod = std::sqrt(re * re + im * im);
  AxisDistance out;
  out.dist = 0.5 * acosh_stable((z2 + mod) / t);
  out.foot_height = mod;
  return out;
}

/**
 * Residual of the Heisenberg distance asymptotics: for g != id and the ray
 * ell'(s) with horospherical coordinates (zeta, u, e^{-2s}),
 *   d(ell'(s), ell) - (s + ln d'_H(g) + ln 2),   d'_H = cygan_mod_gauge / sqrt 2.
 */
template <typename K>
double lemma8_residual(const HeisElement<K>& g, double s) {
  const double dprime = cygan_mod_gauge(g) / std::sqrt(2.0);
  if (dprime <= 0) throw std::domain_error("lemma8_residual: g must differ from the identity");
  const double t = std::exp(-2.0 * s);
  const double d = dist_to_vertical_axis(g, t).dist;
  return d - (s + std::log(dprime) + std::log(2.0));
}

/**
 * Scaling relation between horospherical Hamenstadt distances at heights
 * t' and t'': d_{H_{t'}} = sqrt(t''/t') d_{H_{t''}}. With the height-one
 * distance equal to the Cygan distance, returns the two sides for a pair.
 */
template <typename K>
std::pair<double, double> horosphere_scaling_check(const HeisElement<K>& g1,
                                                   const HeisElement<K>& g2,
                                                   double t1, double t2) {
  if (t1 <= 0 || t2 <= 0)
    throw std::domain_error("horosphere_scaling_check: heights must be positive");
  const double base = cygan_dist(g1, g2);
  const double d_t1 = base / std::sqrt(t1);
  const double d_t2 = base / std::sqrt(t2);
  return {d_t1, std::sqrt(t2 / t1) * d_t2};
}

/** Siegel-domain coordinates: (w0, w) with 2 Re w0 - |w|^2 > 0. */
template <typename K>
struct SiegelPoint {
  K w0{};
  std::vector<K> w;
};

/** Horospherical coordinates (zeta, u, t), u purely imaginary, t > 0. */
template <typename K>
struct HoroPoint {
  HeisElement<K> g;
  double t = 1.0;
};

template <typename K>
SiegelPoint<K> siegel_from_horo(const HoroPoint<K>& h) {
  SiegelPoint<K> out;
  out.w = h.g.zeta;
  const double re = (h.t + zeta_norm_sq(h.g.zeta)) / 2.0;
  out.w0 = K(re) + h.g.u * 0.5;
  return out;
}

template <typename K>
HoroPoint<K> horo_from_siegel(const SiegelPoint<K>& s) {
  HoroPoint<K> out;
  out.g.zeta = s.w;
  out.t = 2.0 * real_part(s.w0) - zeta_norm_sq(s.w);
  if (out.t <= 0) throw std::domain_error("horo_from_siegel: point outside the domain");
  out.g.u = imag_part(s.w0) + imag_part(s.w0);
  return out;
}

/**
 * Cayley-type map from the unit ball model (z_1, ..., z_n) to the Siegel
 * domain: (w0, w) = ((1 - z_n)/2, z_1, ..., z_{n-1}) (1 + z_n)^{-1},
 * components multiplied on the right.
 */
template <typename K>
SiegelPoint<K> siegel_from_ball(const std::vector<K>& z) {
  if (z.empty()) throw std::invalid_argument("siegel_from_ball: empty point");
  const K zn = z.back();
  const K denom = inv_val(K(1) + zn);
  SiegelPoint<K> out;
  out.w0 = (K(1) - zn) * 0.5 * denom;
  out.w.assign(z.begin(), z.end() - 1);
  for (K& c : out.w) c = c * denom;
  return out;
}

template <typename K>
std::vector<K> ball_from_siegel(const SiegelPoint<K>& s) {
  const K two_w0 = s.w0 + s.w0;
  // z_n solves 2 w0 (1 + z_n) = 1 - z_n.
  const K zn = inv_val(two_w0 + K(1)) * (K(1) - two_w0);
  std::vector<K> z = s.w;
  const K scale = K(1) + zn;
  for (K& c : z) c = c * scale;
  z.push_back(zn);
  return z;
}

/** Dimension of K as a real algebra. */
enum class ScalarField { real = 1, complex = 2, quaternion = 4 };

inline int field_dim(ScalarField f) { return static_cast<int>(f); }

/**
 * Monte Carlo estimate of the cusp-measure mass of the region
 *   {(zeta, u): |zeta|^2 + sqrt(|zeta|^4 + |u|^2) <= 2}
 * in R^{d(n-1)} x R^{d-1} for d = dim_R K, equivalently
 * {|u| <= 2 sqrt(1 - |zeta|^2), |zeta| <= 1}.  The measure is not Lebesgue:
 * both radial directions carry the weight rho d rho (d zeta =
 * rho d rho d vol_{S^{d(n-1)-1}}, d u = rho d rho d vol_{S^{d-2}}), so the
 * exact mass is (1/2) Vol(S^{d-2}) Vol(S^{d(n-1)-1}).  Stratified in |zeta|,
 * deterministic for a fixed seed, sharded with ordered reduction.
 */
inline double xi_monte_carlo(ScalarField f, int n, long long samples,
                             std::uint64_t seed, int threads = 1) {
  if (n < 2) throw std::invalid_argument("xi_monte_carlo: n must be >= 2");
  if (f == ScalarField::real) throw std::invalid_argument("xi_monte_carlo: use C or H");
  if (samples < 1000) throw std::invalid_argument("xi_monte_carlo: too few samples");
  const int d = field_dim(f);
  const int mz = d * (n - 1);  // real dimension of the zeta block
  const int mu = d - 1;        // real dimension of the u block
  threads = std::max(1, threads);
  const int shards = 64;
  std::vector<double> shard_fraction(shards, 0.0);
  auto run_shard = [&](int shard) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (shard + 1));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const long long lo = samples * shard / shards;
    const long long hi = samples * (shard + 1) / shards;
    const int strata = 128;
    double inside = 0;
    for (long long i = lo; i < hi; ++i) {
      // |zeta| sampled from the weight rho d rho on [0, 1] (CDF rho^2),
      // stratified in the CDF variable; |u| from rho d rho on [0, 2].
      const int stratum = static_cast<int>(i % strata);
      const double v = (stratum + unif(rng)) / strata;  // = |zeta|^2
      const double ru = 2.0 * std::sqrt(unif(rng));     // = |u|
      // Directions are irrelevant: membership only involves the two radii.
      if (ru * ru <= 4.0 * (1.0 - v)) inside += 1.0;
    }
    shard_fraction[shard] = inside / static_cast<double>(samples);
  };
  if (threads <= 1) {
    for (int s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int s = next.fetch_add(1); s < shards; s = next.fetch_add(1)) run_shard(s);
      });
    for (auto& th : pool) th.join();
  }
  double fraction = 0.0;
  for (int s = 0; s < shards; ++s) fraction += shard_fraction[s];  // ordered
  // Total sampling mass: (1/2) Vol(S^{mz-1}) for the zeta block times
  // 2 Vol(S^{mu-1}) for the u block.
  auto sphere_vol = [](int m) {
    return 2.0 * std::pow(M_PI, (m + 1) / 2.0) / std::tgamma((m + 1) / 2.0);
  };
  return sphere_vol(mz - 1) * sphere_vol(mu - 1) * fraction;
}

}  // namespace divgeo
