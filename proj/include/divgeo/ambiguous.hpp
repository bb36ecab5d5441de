#pragma once

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "count.hpp"
#include "ring.hpp"

namespace divgeo {

// Classification of hyperbolic elements of PSL_2(Z) that are symmetric with
// respect to the reflections in ]0, inf[ ("first kind": a = d) or ]0, 2[
// ("second kind": a + b = d), or whose axis passes through the orbit of i
// ("reciprocal"), together with desk-scale counts of the corresponding
// conjugacy classes assembled from the perpendicular enumerations.

inline void require_unimodular(const Mat2i& g) {
  if (g.det() != 1) throw std::invalid_argument("expected determinant one");
}

inline void require_hyperbolic(const Mat2i& g) {
  require_unimodular(g);
  if (abs_int(g.trace()) <= 2)
    throw std::invalid_argument("expected hyperbolic element (|trace| > 2)");
}

/** True iff the axis of g has a common perpendicular with ]0, inf[, i.e.
 *  abcd != 0 (the axis neither meets nor shares an endpoint with it). */
inline bool has_common_perp_with_delta(const Mat2i& g) {
  require_unimodular(g);
  return g.a != 0 && g.b != 0 && g.c != 0 && g.d != 0;
}

inline bool is_first_kind(const Mat2i& g) {
  require_unimodular(g);
  return g.a == g.d;  // invariant under negating the representative
}

inline bool is_second_kind(const Mat2i& g) {
  require_unimodular(g);
  return g.a + g.b == g.d;
}

/** First-kind test through the involution identity: diag(1,-1) g diag(1,-1)
 *  equals g^{-1} in PSL. */
inline bool is_first_kind_by_involution(const Mat2i& g) {
  require_unimodular(g);
  const Mat2i conj{g.a, -g.b, -g.c, g.d};
  return psl_equal(conj, g.inverse_unimodular());
}

/** Second-kind test through the involution (1 0; 1 -1). */
inline bool is_second_kind_by_involution(const Mat2i& g) {
  require_unimodular(g);
  const Mat2i w1{1, 0, 1, -1};
  return psl_equal(w1 * g * w1, g.inverse_unimodular());
}

// ---------------------------------------------------------------------------
// Indefinite binary quadratic forms. A hyperbolic (a b; c d) with trace t has
// axis {c z^2 + (d - a) z - b = 0}, giving the form (A, B, C) = (c, d-a, -b)
// of discriminant t^2 - 4 > 0 (nonsquare for t >= 3). Conjugation in SL_2(Z)
// corresponds to proper equivalence of forms at fixed trace, so conjugacy
// questions reduce to Gauss reduction cycles.
// ---------------------------------------------------------------------------

struct QForm {
  Int A, B, C;

  Int disc() const { return B * B - 4 * A * C; }
  QForm operator-() const { return {-A, -B, -C}; }
  bool operator==(const QForm& o) const { return A == o.A && B == o.B && C == o.C; }
  bool operator<(const QForm& o) const {
    return std::tie(A, B, C) < std::tie(o.A, o.B, o.C);
  }
};

inline QForm axis_form(const Mat2i& g) { return {g.c, g.d - g.a, -g.b}; }

/** The trace-t matrix whose axis form is f (always det 1 when disc f =
 *  t^2 - 4 and t = B mod 2). */
inline Mat2i form_matrix(const QForm& f, const Int& t) {
  if ((t - f.B) % 2 != 0)
    throw std::invalid_argument("form_matrix: parity mismatch");
  if (f.disc() != t * t - 4)
    throw std::invalid_argument("form_matrix: discriminant mismatch");
  return {(t - f.B) / 2, -f.C, f.A, (t + f.B) / 2};
}

/** Reduced indefinite form: 0 < B < sqrt(disc) and |sqrt(disc) - 2|A|| < B. */
inline bool is_reduced_form(const QForm& f) {
  const Int D = f.disc();
  if (D <= 0) throw std::invalid_argument("is_reduced_form: not indefinite");
  if (f.B <= 0 || f.B * f.B >= D) return false;
  const Int twoA = 2 * abs_int(f.A);
  if (D >= (twoA + f.B) * (twoA + f.B)) return false;         // sqrt D >= 2|A| + B
  if (twoA > f.B && (twoA - f.B) * (twoA - f.B) >= D) return false;
  return true;
}

/** One step of Gauss reduction: (A, B, C) -> (C, r, (r^2 - D)/(4C)) with
 *  r = -B mod 2|C|, taken in (-|C|, |C|] while |C| > sqrt(D) and in
 *  (sqrt(D) - 2|C|, sqrt(D)) afterwards. Iterated, it reaches a reduced
 *  form and then walks its cycle. */
inline QForm reduction_step(const QForm& f) {
  const Int D = f.disc();
  if (D <= 0 || f.C == 0)
    throw std::invalid_argument("reduction_step: need indefinite, nonsquare form");
  const Int m = 2 * abs_int(f.C);
  const Int s = isqrt_floor(D);
  Int r;
  if (abs_int(f.C) > s) {
    r = ((-f.B) % m + m) % m;  // in [0, m)
    if (2 * r > m) r -= m;     // in (-|C|, |C|]
  } else {
    r = s - ((s + f.B) % m + m) % m;  // in (s - m, s]
  }
  return {f.C, r, (r * r - D) / (4 * f.C)};
}

inline QForm reduce_form(QForm f) {
  for (int guard = 0; guard < 100000; ++guard) {
    if (is_reduced_form(f)) return f;
    f = reduction_step(f);
  }
  throw std::runtime_error("reduce_form: reduction did not terminate");
}

/** The cycle of reduced forms through a reduced form. */
inline std::vector<QForm> form_cycle(const QForm& reduced) {
  if (!is_reduced_form(reduced))
    throw std::invalid_argument("form_cycle: input not reduced");
  std::vector<QForm> cycle{reduced};
  QForm f = reduction_step(reduced);
  while (!(f == reduced)) {
    cycle.push_back(f);
    if (cycle.size() > 1000000) throw std::runtime_error("form_cycle: runaway cycle");
    f = reduction_step(f);
  }
  return cycle;
}

/** Proper (SL_2(Z)) equivalence via cycle membership. */
inline bool forms_equivalent(const QForm& f, const QForm& g) {
  if (f.disc() != g.disc()) return false;
  const QForm gr = reduce_form(g);
  for (const QForm& h : form_cycle(reduce_form(f)))
    if (h == gr) return true;
  return false;
}

/** Conjugacy of hyperbolic elements in PSL_2(Z). */
inline bool are_conjugate(Mat2i g1, Mat2i g2) {
  require_hyperbolic(g1);
  require_hyperbolic(g2);
  if (g1.trace() < 0) g1 = -g1;
  if (g2.trace() < 0) g2 = -g2;
  if (g1.trace() != g2.trace()) return false;
  if (g1 == g2) return true;
  return forms_equivalent(axis_form(g1), axis_form(g2));
}

/**
 * True iff some rho in PSL_2(Z) conjugates g to g^{-1}. Any such rho is an
 * order-two rotation about a point of the axis of g, so this is equivalent
 * to the axis passing through the orbit of i. Since the axis form of g^{-1}
 * is the negative of the axis form of g, the test is one form equivalence.
 */
inline bool is_reciprocal(const Mat2i& g) {
  require_hyperbolic(g);
  const QForm f = axis_form(g);
  return forms_equivalent(f, -f);
}

namespace detail {

using Vec3 = std::array<Int, 3>;  // (p, q, r) with rho = (p q; r -p)

inline Int dot3(const Vec3& u, const Vec3& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline Int ext_gcd_int(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return abs_int(a);
  }
  Int x1, y1;
  Int g = ext_gcd_int(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

/** Nearest integer to a/b. */
inline Int round_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncated
  Int best = q;
  for (const Int& c : {Int(q - 1), Int(q + 1)})
    if (abs_int(a - c * b) < abs_int(a - best * b)) best = c;
  return best;
}

}  // namespace detail

/**
 * Bounded search for a trace-zero witness rho with rho g rho^{-1} = g^{-1}.
 * The linear condition p(a - d) + q c + r b = 0 cuts out a rank-2 lattice of
 * candidate (p, q, r); after Lagrange reduction of a basis, coefficients
 * (u, v) are scanned with v eliminated exactly through the determinant
 * condition -p^2 - q r = 1, which is quadratic in v. Returns the witness in
 * canonical PSL form if one lies in the box.
 */
inline std::optional<Mat2i> reciprocal_witness(const Mat2i& g, Int box = 0) {
  require_hyperbolic(g);
  const Int e = g.a - g.d, b = g.b, c = g.c;
  if (b == 0 && c == 0)
    throw std::logic_error("reciprocal_witness: diagonal hyperbolic element");
  using detail::Vec3;
  Int x, y;
  const Int g0 = detail::ext_gcd_int(c, b, x, y);  // c x + b y = g0
  Int g2 = boost::multiprecision::gcd(abs_int(e), g0);
  if (g2 == 0) g2 = g0;  // e = 0
  Vec3 v1{0, b / g0, -c / g0};
  Vec3 v2{g0 / g2, -(e / g2) * x, -(e / g2) * y};
  // Lagrange reduction in the Euclidean norm.
  for (int it = 0; it < 256; ++it) {
    if (detail::dot3(v1, v1) > detail::dot3(v2, v2)) std::swap(v1, v2);
    const Int t = detail::round_div(detail::dot3(v1, v2), detail::dot3(v1, v1));
    if (t == 0) break;
    for (int i = 0; i < 3; ++i) v2[i] -= t * v1[i];
  }
  if (box <= 0)
    box = 2 * (abs_int(g.a) + abs_int(g.b) + abs_int(g.c) + abs_int(g.d)) *
          abs_int(g.trace());
  if (box > 2000000) box = 2000000;
  const long long U = box.convert_to<long long>();
  // Q(u, v) = -p^2 - q r on the lattice; coefficients of v^2, v, 1 at fixed u.
  const Int al = -v2[0] * v2[0] - v2[1] * v2[2];
  const Mat2i ginv = g.inverse_unimodular();
  auto try_candidate = [&](const Int& u, const Int& v) -> std::optional<Mat2i> {
    const Mat2i rho{u * v1[0] + v * v2[0], u * v1[1] + v * v2[1],
                    u * v1[2] + v * v2[2], -(u * v1[0] + v * v2[0])};
    if (rho.det() != 1) return std::nullopt;
    if (!psl_equal(rho * g, ginv * rho)) return std::nullopt;
    return psl_canonicalize(rho);
  };
  for (long long uu = 0; uu <= U; ++uu) {
    for (int su = 0; su < (uu == 0 ? 1 : 2); ++su) {
      const Int u = su ? Int(-uu) : Int(uu);
      const Int be = u * (-2 * v1[0] * v2[0] - v1[1] * v2[2] - v1[2] * v2[1]);
      const Int c0 = u * u * (-v1[0] * v1[0] - v1[1] * v1[2]) - 1;
      // al v^2 + be v + c0 = 0
      if (al == 0) {
        if (be == 0) {
          if (c0 == 0)
            if (auto w = try_candidate(u, 0)) return w;
          continue;
        }
        if (c0 % be != 0) continue;
        if (auto w = try_candidate(u, -c0 / be)) return w;
        continue;
      }
      const Int dsc = be * be - 4 * al * c0;
      if (dsc < 0) continue;
      const Int rt = isqrt_floor(dsc);
      if (rt * rt != dsc) continue;
      for (int sr = 0; sr < (rt == 0 ? 1 : 2); ++sr) {
        const Int num = -be + (sr ? -rt : rt);
        if (num % (2 * al) != 0) continue;
        if (auto w = try_candidate(u, num / (2 * al))) return w;
      }
    }
  }
  return std::nullopt;
}

/**
 * All conjugates of g (trace normalized positive) that are first kind, found
 * through the finitely many forms (A, 0, C) of the right discriminant.
 */
inline std::vector<Mat2i> first_kind_conjugates(Mat2i g) {
  require_hyperbolic(g);
  if (g.trace() < 0) g = -g;
  const Int t = g.trace();
  std::vector<Mat2i> out;
  if (t % 2 != 0) return out;
  const Int n = (t * t - 4) / 4;  // A C = -n
  const QForm f0 = axis_form(g);
  const long long nn = n.convert_to<long long>();
  for (long long A = 1; A <= nn; ++A) {
    if (nn % A) continue;
    for (int sA = 0; sA < 2; ++sA) {
      const Int Ai = sA ? Int(-A) : Int(A);
      const QForm cand{Ai, 0, -n / Ai};
      if (forms_equivalent(cand, f0)) out.push_back(form_matrix(cand, t));
    }
  }
  return out;
}

/** All conjugates of g that are second kind, via the forms (A, B, -B). */
inline std::vector<Mat2i> second_kind_conjugates(Mat2i g) {
  require_hyperbolic(g);
  if (g.trace() < 0) g = -g;
  const Int t = g.trace();
  const Int n = t * t - 4;  // B (B + 4A) = n
  const QForm f0 = axis_form(g);
  std::vector<Mat2i> out;
  const long long nn = n.convert_to<long long>();
  for (long long B = 1; B <= nn; ++B) {
    if (nn % B) continue;
    for (int sB = 0; sB < 2; ++sB) {
      const Int Bi = sB ? Int(-B) : Int(B);
      const Int rem = n - Bi * Bi;
      if (rem % (4 * Bi) != 0) continue;
      const QForm cand{rem / (4 * Bi), Bi, -Bi};
      if (forms_equivalent(cand, f0)) out.push_back(form_matrix(cand, t));
    }
  }
  return out;
}

inline bool is_conjugate_to_first_kind(const Mat2i& g) {
  return !first_kind_conjugates(g).empty();
}

inline bool is_conjugate_to_second_kind(const Mat2i& g) {
  return !second_kind_conjugates(g).empty();
}

// ---------------------------------------------------------------------------
// Proper powers.
// ---------------------------------------------------------------------------

/**
 * If M = M0^k (up to sign, i.e. in PSL) for some k >= 2, returns (M0, k)
 * with k maximal (so M0 is primitive); otherwise nullopt. Uses the
 * half-trace Chebyshev recurrence u_0 = 1, u_1 = x, u_{j+1} = x u_j -
 * u_{j-1}: a root of trace x satisfies M = u_{k-1} M0 - u_{k-2} I, so
 * M0 = (M + u_{k-2} I) / u_{k-1} must be integral.
 */
inline std::optional<std::pair<Mat2i, int>> proper_root(Mat2i M) {
  require_hyperbolic(M);
  if (M.trace() < 0) M = -M;
  const Int t = M.trace();
  const double L2 = acosh_stable(static_cast<double>(t) / 2.0);  // L/2
  const int kmax = std::max(2, static_cast<int>(L2 / acosh_stable(1.5)) + 1);
  for (int k = kmax; k >= 2; --k) {
    const double xr = 2.0 * std::cosh(L2 / k);
    for (long long xray = -1; xray <= 1; ++xray) {
      const Int x = static_cast<long long>(std::llround(xr)) + xray;
      if (x < 3) continue;
      // u_{k-1}, u_{k-2} at x, and the trace of x-trace elements to power k
      Int um = 1, u = x;  // u_0, u_1
      for (int j = 2; j <= k - 1; ++j) {
        const Int next = x * u - um;
        um = u;
        u = next;
      }
      // now u = u_{k-1}, um = u_{k-2}; trace of power = x u_{k-1} - 2 u_{k-2}
      if (x * u - 2 * um != t) continue;
      if ((M.a + um) % u != 0 || M.b % u != 0 || M.c % u != 0 ||
          (M.d + um) % u != 0)
        continue;
      const Mat2i M0{(M.a + um) / u, M.b / u, M.c / u, (M.d + um) / u};
      if (M0.det() != 1) continue;
      Mat2i pw{1, 0, 0, 1};
      for (int j = 0; j < k; ++j) pw = pw * M0;
      if (psl_equal(pw, M)) return std::make_pair(psl_canonicalize(M0), k);
    }
  }
  return std::nullopt;
}

inline bool is_proper_power(const Mat2i& M) { return proper_root(M).has_value(); }

// ---------------------------------------------------------------------------
// Conjugacy classes at a fixed trace, for exhaustive cross-checks.
// ---------------------------------------------------------------------------

struct TraceClass {
  long long t = 0;
  QForm rep;  // a reduced representative
  bool primitive = false;
  bool reciprocal = false;
  bool conj_first = false;
  bool conj_second = false;
};

/** All conjugacy classes of trace-t hyperbolic elements with their flags. */
inline std::vector<TraceClass> classes_of_trace(long long t) {
  if (t <= 2) throw std::invalid_argument("classes_of_trace: need t > 2");
  const Int D = Int(t) * t - 4;
  const long long Dl = D.convert_to<long long>();
  // Enumerate reduced forms and group them into cycles.
  std::vector<QForm> reduced;
  const long long sD = isqrt_floor(Dl);
  for (long long B = 1; B <= sD; ++B) {
    if ((Dl - B * B) % 4 != 0) continue;
    const long long M = (Dl - B * B) / 4;  // -A C
    if (M <= 0) continue;
    for (long long A = 1; A * A <= M; ++A) {
      if (M % A) continue;
      for (const long long Aa : {A, M / A}) {
        for (int sA = 0; sA < 2; ++sA) {
          const QForm f{sA ? Int(-Aa) : Int(Aa), Int(B),
                        sA ? Int(M / Aa) : Int(-M / Aa)};
          if (is_reduced_form(f)) reduced.push_back(f);
        }
        if (Aa == M / A) break;
      }
    }
  }
  std::sort(reduced.begin(), reduced.end());
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  std::set<QForm> seen;
  std::vector<TraceClass> out;
  for (const QForm& f : reduced) {
    if (seen.count(f)) continue;
    const auto cycle = form_cycle(f);
    std::set<QForm> cset(cycle.begin(), cycle.end());
    for (const QForm& h : cycle) seen.insert(h);
    TraceClass cl;
    cl.t = t;
    cl.rep = f;
    cl.reciprocal = cset.count(reduce_form(-f)) > 0;
    if (t % 2 == 0) {
      const Int n = D / 4;
      const long long nn = n.convert_to<long long>();
      for (long long A = 1; A <= nn && !cl.conj_first; ++A) {
        if (nn % A) continue;
        for (int sA = 0; sA < 2; ++sA) {
          const Int Ai = sA ? Int(-A) : Int(A);
          if (cset.count(reduce_form({Ai, 0, -n / Ai}))) {
            cl.conj_first = true;
            break;
          }
        }
      }
    }
    for (long long B = 1; B <= Dl && !cl.conj_second; ++B) {
      if (Dl % B) continue;
      for (int sB = 0; sB < 2; ++sB) {
        const Int Bi = sB ? Int(-B) : Int(B);
        const Int rem = D - Bi * Bi;
        if (rem % (4 * Bi) != 0) continue;
        if (cset.count(reduce_form({rem / (4 * Bi), Bi, -Bi}))) {
          cl.conj_second = true;
          break;
        }
      }
    }
    // B always has the parity of t (B^2 = disc mod 4), so any cycle form
    // lifts to a trace-t matrix.
    cl.primitive = !is_proper_power(form_matrix(f, t));
    out.push_back(cl);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Doubling a perpendicular into a closed geodesic, and the perpendicular ->
// element maps used by the primitive counts.
// ---------------------------------------------------------------------------

/** The composition of the reflections in ]0, inf[ and its translate under g
 *  (all entries positive): (ad+bc, 2ab; 2cd, ad+bc), first kind, with
 *  translation length twice the perpendicular length arcosh(1 + 2bc). */
inline Mat2i double_perp(const Mat2i& g) {
  require_unimodular(g);
  if (g.a <= 0 || g.b <= 0 || g.c <= 0 || g.d <= 0)
    throw std::invalid_argument("double_perp: entries must be positive");
  return {g.a * g.d + g.b * g.c, 2 * g.a * g.b, 2 * g.c * g.d,
          g.a * g.d + g.b * g.c};
}

namespace detail {

inline const Mat2i kW{1, 0, 0, -1};    // reflection in ]0, inf[ (det -1)
inline const Mat2i kW1{1, 0, 1, -1};   // reflection in ]0, 2[  (det -1)

/** Order-two rotation about the orbit point (x + i)/q, q | x^2 + 1. */
inline Mat2i rotation_about_orbit_point(const Int& x, const Int& q) {
  return {x, -(x * x + 1) / q, q, -x};
}

}  // namespace detail

/** One closed-up element per perpendicular from ]0, inf[ to a translate of
 *  itself within length bound p: the double_perp elements. */
inline std::vector<Mat2i> perp_elements_delta_delta(const LengthParam& p) {
  std::vector<Mat2i> out;
  const long long kmax = p.floor_cosh_linear(1, 2);
  if (kmax < 1) return out;
  for (const PerpRecord& r : enumerate_delta_translates(kmax))
    out.push_back(double_perp({r.a, r.b, r.c, r.d}));
  return out;
}

/** One element per perpendicular from ]0, inf[ to a translate of ]0, 2[:
 *  (g w1 g^{-1}) w for the translating g. */
inline std::vector<Mat2i> perp_elements_delta_delta1(const LengthParam& p) {
  std::vector<Mat2i> out;
  const long long kmax = p.floor_cosh_linear(1, 1);
  for (long long k = 1; k <= kmax; ++k) {
    for (long long b = 1; b <= k; ++b) {
      if (k % b) continue;
      const long long w = k / b;
      for (long long d = 1; d <= k + 2; ++d) {
        if ((k + 2) % d) continue;
        if ((w - d) % 2 != 0) continue;
        const long long c = (w - d) / 2;
        const long long num = 1 + b * c;
        if (num % d != 0) continue;
        const long long a = num / d;
        if (a * d - b * c != 1) continue;
        if (2 * a + b <= 0) continue;
        const Mat2i g{a, b, c, d};
        out.push_back(psl_canonicalize(g * detail::kW1 * g.inverse_unimodular() *
                                       detail::kW));
      }
    }
  }
  return out;
}

/** One element per perpendicular from ]0, 2[ to a translate of itself:
 *  (g w1 g^{-1}) w1. */
inline std::vector<Mat2i> perp_elements_delta1_delta1(const LengthParam& p) {
  std::vector<Mat2i> out;
  const long long mmax = p.floor_scaled(2, 2);
  for (long long m = 1; m <= mmax; ++m) {
    for (long long b = 1; b <= m; ++b) {
      if (m % b) continue;
      const long long W = m / b;
      for (long long A = 1; A <= m + 4; ++A) {
        if ((m + 4) % A) continue;
        const long long P = (m + 4) / A;
        if ((A - b) % 2 != 0 || (P + b) % 2 != 0) continue;
        const long long a = (A - b) / 2;
        const long long d = (P + b) / 2;
        const long long cnum = W + 2 * a - 2 * d + b;
        if (cnum % 4 != 0) continue;
        const long long c = cnum / 4;
        if (a * d - b * c != 1) continue;
        const Mat2i g{a, b, c, d};
        out.push_back(psl_canonicalize(g * detail::kW1 * g.inverse_unimodular() *
                                       detail::kW1));
      }
    }
  }
  return out;
}

/** One element per perpendicular from ]0, inf[ to an orbit point of i:
 *  (rho w)^2 for the rotation rho about the point. */
inline std::vector<Mat2i> perp_elements_delta_iorbit(const LengthParam& p) {
  std::vector<Mat2i> out;
  long long X;
  {
    const double c = p.cosh_value();
    X = static_cast<long long>(std::floor(std::sqrt(c * c - 1.0)));
    if (p.cosh_exact) {
      const Rat c2 = *p.cosh_exact * *p.cosh_exact - 1;
      Int lo = isqrt_floor(boost::multiprecision::numerator(c2) /
                           boost::multiprecision::denominator(c2));
      while ((lo + 1) * (lo + 1) * boost::multiprecision::denominator(c2) <=
             boost::multiprecision::numerator(c2))
        ++lo;
      X = lo.convert_to<long long>();
    }
  }
  if (X >= 1) {
    for_each_x2p1_factorization(1, X, [&](long long x, const auto& fac) {
      for (long long q : divisors_from_factors(fac)) {
        const Mat2i rw = detail::rotation_about_orbit_point(x, q) * detail::kW;
        out.push_back(psl_canonicalize(rw * rw));
      }
    });
  }
  return out;
}

/**
 * One element per *unquotiented* perpendicular from ]0, 2[ to an orbit point
 * of i: (rho w1)^2. The order-two stabilizer of ]0, 2[ pairs these up, so
 * there are exactly twice as many entries as perpendiculars.
 */
inline std::vector<Mat2i> perp_elements_delta1_iorbit(const LengthParam& p) {
  std::vector<Mat2i> out;
  const double C = p.cosh_value();
  const long long Xb = static_cast<long long>(std::ceil(2.0 * C * C + 2.0 * C + 4.0));
  const Rat C2 = p.cosh_exact ? (*p.cosh_exact * *p.cosh_exact) : Rat(0);
  for_each_x2p1_factorization(-Xb, Xb, [&](long long x, const auto& fac) {
    const Int n2 = Int(x) * x + 1;
    for (long long q : divisors_from_factors(fac)) {
      if (x == 1 && q == 1) continue;
      const long long rterm = 2 * q - x;
      const double lhs = static_cast<double>(n2) *
                         (static_cast<double>(rterm) * rterm + 1.0);
      const double rhs = 4.0 * static_cast<double>(q) * q * C * C;
      if (lhs > rhs * (1 + 1e-9)) continue;
      if (p.cosh_exact) {
        if (Rat(n2 * (Int(rterm) * rterm + 1)) > Rat(4) * q * q * C2) continue;
      } else if (lhs > rhs) {
        continue;
      }
      const Mat2i rw = detail::rotation_about_orbit_point(x, q) * detail::kW1;
      out.push_back(psl_canonicalize(rw * rw));
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Counts of ambiguous and ambiguous-reciprocal conjugacy classes.
// ---------------------------------------------------------------------------

struct AmbiguousReport {
  double s = 0;
  bool primitive = false;
  Rat count;
  double main_term = 0;
  double ratio = 0;
};

/** Leading coefficient 3/(4 pi^2) of the ambiguous-class count, assembled
 *  from the perpendicular main terms at shifted length s/2. */
inline double ambiguous_main_coeff() {
  const double per_pair = 3.0 / (2.0 * M_PI * M_PI);
  return (0.5 + 0.5 + 1.0) * per_pair * 0.25;  // three pair counts at s/2
}

/** Leading coefficient 3/(8 pi) of the ambiguous-reciprocal count. */
inline double ambiguous_reciprocal_main_coeff() {
  const double per_pair = 3.0 / (2.0 * M_PI);
  return (0.5 + 0.5) * per_pair * 0.25;  // two pair counts at s/4
}

/**
 * Number of ambiguous-and-reciprocal conjugacy classes of translation length
 * <= s: half the perpendicular counts from each reflection line to the orbit
 * of i at length s/4. The default keeps non-primitive classes (a lower-order
 * contamination); primitive = true filters through proper_root on the
 * doubled-up elements.
 */
inline AmbiguousReport count_ambiguous_reciprocal(double s, bool primitive = false) {
  const LengthParam q = LengthParam::from_s(s / 4);
  AmbiguousReport rep;
  rep.s = s;
  rep.primitive = primitive;
  if (!primitive) {
    rep.count = Rat(count_perp_delta_iorbit(q).count) / 2 +
                Rat(count_perp_delta1_iorbit(q).count) / 2;
  } else {
    Int na = 0, nb = 0;
    for (const Mat2i& g : perp_elements_delta_iorbit(q))
      if (!is_proper_power(g)) ++na;
    for (const Mat2i& g : perp_elements_delta1_iorbit(q))
      if (!is_proper_power(g)) ++nb;
    rep.count = Rat(na) / 2 + Rat(nb) / 4;  // second list is unquotiented
  }
  rep.main_term = ambiguous_reciprocal_main_coeff() * s * std::exp(s / 4.0);
  rep.ratio = static_cast<double>(rep.count) / rep.main_term;
  return rep;
}

/**
 * Number of ambiguous conjugacy classes of translation length <= s:
 *   1/2 Perp(D, D, s/2) + 1/2 Perp(D1, D1, s/2) + Perp(D, D1, s/2)
 * plus the ambiguous-reciprocal correction (reciprocal classes fall out of
 * the 2-to-1 perpendicular correspondences and re-enter separately).
 */
inline AmbiguousReport count_ambiguous(double s, bool primitive = false) {
  const LengthParam h = LengthParam::from_s(s / 2);
  AmbiguousReport rep;
  rep.s = s;
  rep.primitive = primitive;
  if (!primitive) {
    rep.count = Rat(count_perp_delta_delta(h).count) / 2 +
                Rat(count_perp_delta1_delta1(h).count) / 2 +
                Rat(count_perp_delta_delta1(h).count) +
                count_ambiguous_reciprocal(s, false).count;
  } else {
    Int ndd = 0, nd1d1 = 0, ndd1 = 0;
    for (const Mat2i& g : perp_elements_delta_delta(h))
      if (!is_proper_power(g) && !is_reciprocal(g)) ++ndd;
    for (const Mat2i& g : perp_elements_delta1_delta1(h))
      if (!is_proper_power(g) && !is_reciprocal(g)) ++nd1d1;
    for (const Mat2i& g : perp_elements_delta_delta1(h))
      if (!is_proper_power(g)) ++ndd1;
    rep.count = Rat(ndd) / 2 + Rat(nd1d1) / 2 + Rat(ndd1) +
                count_ambiguous_reciprocal(s, true).count;
  }
  rep.main_term = ambiguous_main_coeff() * s * s * std::exp(s / 2.0);
  rep.ratio = static_cast<double>(rep.count) / rep.main_term;
  return rep;
}

/** Classification record for one element. */
struct AmbiguityTag {
  bool first_kind = false;
  bool second_kind = false;
  bool reciprocal = false;
  bool proper_power = false;
};

inline AmbiguityTag classify(const Mat2i& g) {
  AmbiguityTag tag;
  tag.first_kind = is_first_kind(g);
  tag.second_kind = is_second_kind(g);
  if (abs_int(g.trace()) > 2) {
    tag.reciprocal = is_reciprocal(g);
    tag.proper_power = is_proper_power(g);
  }
  return tag;
}

}  // namespace divgeo
