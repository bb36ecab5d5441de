#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "count.hpp"
#include "hgeo.hpp"

namespace divgeo {

// Fundamental-domain folding for PSL_2(Z) with the generators T: z -> z + 1
// and S: z -> -1/z, geodesic sampling, and deterministic SVG emission.

/** One applied generator: a translation T^n (n != 0) or the inversion S. */
struct FoldMove {
  char op;       // 'T' or 'S'
  long long n;   // translation amount for 'T', unused for 'S'

  bool operator==(const FoldMove& o) const { return op == o.op && n == o.n; }
};

using FoldWord = std::vector<FoldMove>;

inline std::complex<double> apply_move(const FoldMove& m, std::complex<double> z) {
  if (m.op == 'T') return z + static_cast<double>(m.n);
  return -1.0 / z;
}

inline std::complex<double> apply_word(const FoldWord& w, std::complex<double> z) {
  for (const FoldMove& m : w) z = apply_move(m, z);
  return z;
}

inline std::complex<double> apply_word_inverse(const FoldWord& w,
                                               std::complex<double> z) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->op == 'T') z -= static_cast<double>(it->n);
    else z = -1.0 / z;
  }
  return z;
}

inline std::string word_string(const FoldWord& w) {
  std::string out;
  for (const FoldMove& m : w) {
    if (!out.empty()) out += ' ';
    if (m.op == 'S') out += 'S';
    else out += "T^" + std::to_string(m.n);
  }
  return out.empty() ? "e" : out;
}

struct FoldedPoint {
  std::complex<double> z;  // in the closed fundamental domain
  FoldWord word;           // word applied to the input to reach z
};

/**
 * Reduce z (Im z > 0) to the fundamental domain -1/2 <= Re <= 1/2, |z| >= 1.
 * Ties: Re = 1/2 is mapped to -1/2, and points with |z| = 1, Re > 0 are
 * inverted, so the representative is unique. Records the applied word.
 */
inline FoldedPoint fold_point(std::complex<double> z) {
  if (!(z.imag() > 0)) throw std::invalid_argument("fold_point: need Im z > 0");
  FoldedPoint out;
  for (int step = 0; step < 10000; ++step) {
    const long long n = -static_cast<long long>(std::floor(z.real() + 0.5));
    if (n != 0) {
      z += static_cast<double>(n);
      out.word.push_back({'T', n});
    }
    if (z.real() >= 0.5) {  // landed exactly on the right edge
      z -= 1.0;
      out.word.push_back({'T', -1});
    }
    // Epsilon band around |z| = 1 so corner points cannot cycle between
    // the two inversion-translation branches.
    const double nrm = std::norm(z);
    constexpr double eps = 1e-12;
    if (nrm < 1.0 - eps || (nrm < 1.0 + eps && z.real() > eps)) {
      z = -1.0 / z;
      out.word.push_back({'S', 0});
      continue;
    }
    out.z = z;
    return out;
  }
  throw std::runtime_error("fold_point: reduction did not terminate");
}

/** A maximal run of consecutive folded samples sharing one folding word. */
struct FoldedPolyline {
  std::vector<std::complex<double>> points;
  FoldWord word;
};

/**
 * Arclength-uniform sample of the geodesic with the given ideal endpoints:
 * m + R(tanh t + i sech t) for a half-circle, x + i e^{-t} for a vertical
 * line (so t increases toward the rational endpoint).
 */
inline std::complex<double> geodesic_point(const GeodesicBP& g, double t) {
  if (g.e1.is_infinity() || g.e2.is_infinity()) {
    const double x = proj_value(g.e1.is_infinity() ? g.e2 : g.e1);
    return {x, std::exp(-t)};
  }
  const double x1 = proj_value(g.e1), x2 = proj_value(g.e2);
  const double m = 0.5 * (x1 + x2), R = 0.5 * std::abs(x2 - x1);
  return {m + R * std::tanh(t), R / std::cosh(t)};
}

/**
 * Fold a sampled stretch of a geodesic, splitting the polyline wherever the
 * folding word changes (a crossing of the domain boundary).
 */
inline std::vector<FoldedPolyline> fold_geodesic(const GeodesicBP& g, double t0,
                                                 double t1, int samples = 512) {
  if (samples < 2) throw std::invalid_argument("fold_geodesic: samples < 2");
  std::vector<FoldedPolyline> out;
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + (t1 - t0) * i / (samples - 1);
    const FoldedPoint f = fold_point(geodesic_point(g, t));
    if (out.empty() || !(out.back().word == f.word)) {
      FoldedPolyline next;
      next.word = f.word;
      if (!out.empty() && !out.back().points.empty())
        next.points.push_back(out.back().points.back());  // visual continuity
      out.push_back(std::move(next));
    }
    out.back().points.push_back(f.z);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Figure assembly.
// ---------------------------------------------------------------------------

struct FigureSeries {
  std::vector<std::vector<std::complex<double>>> polylines;
  std::string label;
};

struct FigureSpec {
  double xmin = -0.5, xmax = 0.5, ymin = 0.0, ymax = 2.5;
  bool draw_domain = true;  // fundamental-domain boundary
  std::vector<FigureSeries> series;
  std::vector<std::complex<double>> markers;
};

/**
 * Common perpendiculars from the vertical axis to itself, folded into the
 * fundamental domain, for all translates with bc <= max_bc whose doubled
 * axis half-width sqrt(ab/cd) lies in [lo_num/lo_den, hi_num/hi_den]
 * (filtered exactly: the bounds are compared as squared rationals).
 */
inline FigureSpec figure_perp_family(long long max_bc = 300, long long lo_num = 41,
                                     long long lo_den = 20, long long hi_num = 21,
                                     long long hi_den = 10, int samples = 512) {
  FigureSpec fig;
  FigureSeries ser;
  ser.label = "perp";
  for (const PerpRecord& r : enumerate_delta_translates(max_bc)) {
    // lo^2 <= ab/cd <= hi^2, exactly in integers
    const Int ab = Int(r.a) * r.b, cd = Int(r.c) * r.d;
    if (ab * lo_den * lo_den < cd * lo_num * lo_num) continue;
    if (ab * hi_den * hi_den > cd * hi_num * hi_num) continue;
    // The doubled geodesic is ]-rad, rad[, rad = sqrt(ab/cd); the
    // perpendicular runs from i*rad along it for length arcosh(1 + 2bc).
    const double rad = std::sqrt(static_cast<double>(ab) / static_cast<double>(cd));
    const double lambda = r.lambda;
    // sample directly: z(t) = rad (tanh t + i sech t), t in [0, lambda]
    std::vector<FoldedPolyline> parts;
    for (int i = 0; i < samples; ++i) {
      const double t = lambda * i / (samples - 1);
      const FoldedPoint f =
          fold_point({rad * std::tanh(t), rad / std::cosh(t)});
      if (parts.empty() || !(parts.back().word == f.word)) {
        FoldedPolyline next;
        next.word = f.word;
        if (!parts.empty() && !parts.back().points.empty())
          next.points.push_back(parts.back().points.back());
        parts.push_back(std::move(next));
      }
      parts.back().points.push_back(f.z);
    }
    for (auto& pl : parts) ser.polylines.push_back(std::move(pl.points));
  }
  fig.series.push_back(std::move(ser));
  return fig;
}

/** Divergent geodesics ending at rationals p/q, 0 < q <= max_den, |p/q| <= 1/2,
 *  folded into the fundamental domain. */
inline FigureSpec figure_divergent(long long max_den = 6, double t_max = 7.0,
                                   int samples = 512) {
  FigureSpec fig;
  for (long long q = 1; q <= max_den; ++q) {
    for (long long p = -q / 2; 2 * p <= q; ++p) {
      if (std::gcd(std::abs(p), q) != 1) continue;
      FigureSeries ser;
      ser.label = std::to_string(p) + "/" + std::to_string(q);
      const GeodesicBP g{{Int(p), Int(q)}, {Int(1), Int(0)}};
      for (auto& pl : fold_geodesic(g, -2.0, t_max, samples))
        ser.polylines.push_back(std::move(pl.points));
      fig.series.push_back(std::move(ser));
    }
  }
  return fig;
}

/** A single divergent geodesic Re = p/q. */
inline FigureSpec figure_divergent_single(long long p, long long q,
                                          double t_max = 9.0, int samples = 512) {
  if (q == 0) throw std::invalid_argument("figure_divergent_single: q = 0");
  FigureSpec fig;
  FigureSeries ser;
  ser.label = std::to_string(p) + "/" + std::to_string(q);
  const GeodesicBP g{{Int(p), Int(q)}, {Int(1), Int(0)}};
  for (auto& pl : fold_geodesic(g, -2.0, t_max, samples))
    ser.polylines.push_back(std::move(pl.points));
  fig.series.push_back(std::move(ser));
  return fig;
}

namespace detail {

inline void svg_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  out += buf;
}

}  // namespace detail

/**
 * Deterministic SVG 1.1 document: fixed viewBox over the window, the
 * fundamental-domain boundary when requested, series polylines in a fixed
 * palette, and point markers. Byte-identical for identical inputs.
 */
inline std::string emit_svg(const FigureSpec& fig, int width = 640) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const double w = fig.xmax - fig.xmin, h = fig.ymax - fig.ymin;
  if (!(w > 0) || !(h > 0)) throw std::invalid_argument("emit_svg: bad window");
  const double scale = width / w;
  const int height = static_cast<int>(std::lround(h * scale));
  auto mapx = [&](double x) { return (x - fig.xmin) * scale; };
  auto mapy = [&](double y) { return (fig.ymax - y) * scale; };
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  if (fig.draw_domain) {
    // Vertical edges Re = +-1/2 from sqrt(3)/2, and the unit-circle arc.
    const double y0 = std::sqrt(3.0) / 2.0;
    for (double x : {-0.5, 0.5}) {
      out += "<path fill=\"none\" stroke=\"#000000\" stroke-width=\"1\" d=\"M ";
      detail::svg_num(out, mapx(x));
      out += ' ';
      detail::svg_num(out, mapy(y0));
      out += " L ";
      detail::svg_num(out, mapx(x));
      out += ' ';
      detail::svg_num(out, mapy(fig.ymax));
      out += "\"/>\n";
    }
    out += "<path fill=\"none\" stroke=\"#000000\" stroke-width=\"1\" d=\"";
    const int arcn = 64;
    for (int i = 0; i <= arcn; ++i) {
      const double th = M_PI * 2.0 / 3.0 - M_PI / 3.0 * i / arcn;  // 120..60 deg
      out += (i == 0) ? "M " : " L ";
      detail::svg_num(out, mapx(std::cos(th)));
      out += ' ';
      detail::svg_num(out, mapy(std::sin(th)));
    }
    out += "\"/>\n";
  }
  for (std::size_t s = 0; s < fig.series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    for (const auto& pl : fig.series[s].polylines) {
      if (pl.size() < 2) continue;
      out += "<path fill=\"none\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1\" d=\"";
      for (std::size_t i = 0; i < pl.size(); ++i) {
        out += (i == 0) ? "M " : " L ";
        detail::svg_num(out, mapx(pl[i].real()));
        out += ' ';
        detail::svg_num(out, mapy(pl[i].imag()));
      }
      out += "\"/>\n";
    }
  }
  for (const auto& m : fig.markers) {
    out += "<circle fill=\"#d62728\" stroke=\"none\" r=\"3\" cx=\"";
    detail::svg_num(out, mapx(m.real()));
    out += "\" cy=\"";
    detail::svg_num(out, mapy(m.imag()));
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace divgeo
