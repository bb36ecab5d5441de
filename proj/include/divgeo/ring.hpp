#pragma once

#include <array>
#include <complex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "int_util.hpp"

namespace divgeo {

/**
 * Base ring selector: either the rational integers, or the ring of integers
 * of an imaginary quadratic field of fundamental discriminant D < 0.
 * Integral basis {1, omega} with omega = (D + sqrt(D)) / 2.
 */
class Discriminant {
 public:
  static Discriminant rational() { return Discriminant(0); }

  static Discriminant quadratic(long long D) {
    if (D >= 0) throw std::invalid_argument("discriminant must be negative");
    long long m = ((D % 4) + 4) % 4;
    if (m != 0 && m != 1)
      throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
    if (m == 1) {
      if (!is_squarefree(D))
        throw std::invalid_argument("discriminant not fundamental");
    } else {
      long long q = D / 4;
      long long qm = ((q % 4) + 4) % 4;
      if (!is_squarefree(q) || (qm != 2 && qm != 3))
        throw std::invalid_argument("discriminant not fundamental");
    }
    return Discriminant(D);
  }

  bool is_rational() const { return d_ == 0; }
  long long value() const {
    if (is_rational()) throw std::logic_error("rational ring has no discriminant");
    return d_;
  }
  /** Norm of omega: D(D-1)/4; integral for D = 0,1 mod 4. */
  long long omega_norm() const { return d_ * (d_ - 1) / 4; }

  bool operator==(const Discriminant& o) const { return d_ == o.d_; }
  bool operator!=(const Discriminant& o) const { return d_ != o.d_; }

 private:
  explicit Discriminant(long long d) : d_(d) {}
  long long d_;
};

/**
 * Element x + y*omega of O_K, omega = (D + sqrt(D)) / 2.
 * For the rational ring, y must stay 0.
 */
struct QuadInt {
  Int x{0};
  Int y{0};
  Discriminant disc = Discriminant::rational();

  QuadInt() = default;
  QuadInt(Int x_, Int y_, Discriminant d_) : x(std::move(x_)), y(std::move(y_)), disc(d_) {
    if (disc.is_rational() && y != 0)
      throw std::invalid_argument("rational ring element with nonzero quadratic part");
  }

  bool is_zero() const { return x == 0 && y == 0; }

  QuadInt operator+(const QuadInt& o) const { return {x + o.x, y + o.y, disc}; }
  QuadInt operator-(const QuadInt& o) const { return {x - o.x, y - o.y, disc}; }
  QuadInt operator-() const { return {-x, -y, disc}; }

  QuadInt operator*(const QuadInt& o) const {
    if (disc.is_rational()) return {x * o.x, 0, disc};
    const long long D = disc.value();
    const long long c = disc.omega_norm();
    // (x1 + y1 w)(x2 + y2 w), w^2 = D w - c.
    return {x * o.x - c * (y * o.y), x * o.y + y * o.x + D * (y * o.y), disc};
  }

  QuadInt conj() const {
    if (disc.is_rational()) return *this;
    // conj(omega) = D - omega.
    return {x + disc.value() * y, -y, disc};
  }

  bool operator==(const QuadInt& o) const { return x == o.x && y == o.y; }
  bool operator!=(const QuadInt& o) const { return !(*this == o); }

  /** Real and imaginary parts of the complex embedding, doubled to stay integral:
   *  2*Re = 2x + Dy, and Im has the sign of y. */
  Int twice_re() const {
    return disc.is_rational() ? Int(2 * x) : Int(2 * x + disc.value() * y);
  }

  std::complex<double> embed() const {
    if (disc.is_rational()) return {static_cast<double>(x), 0.0};
    double D = static_cast<double>(disc.value());
    return {static_cast<double>(x) + D * static_cast<double>(y) / 2.0,
            std::sqrt(-D) * static_cast<double>(y) / 2.0};
  }
};

/** Field norm; non-negative, multiplicative. */
inline Int qnorm(const QuadInt& v) {
  if (v.disc.is_rational()) return v.x * v.x;
  const long long D = v.disc.value();
  return v.x * v.x + D * (v.x * v.y) + v.disc.omega_norm() * (v.y * v.y);
}

/** Exact divisibility test in O_K; sets q = a/b on success. */
inline bool divides(const QuadInt& b, const QuadInt& a, QuadInt& q) {
  if (b.is_zero()) return false;
  const QuadInt num = a * b.conj();
  const Int nb = qnorm(b);
  Int qx, qy{0};
  if (!divides_exact(nb, num.x, qx)) return false;
  if (!divides_exact(nb, num.y, qy)) return false;
  q = QuadInt(qx, qy, a.disc);
  return true;
}

inline bool divides(const QuadInt& b, const QuadInt& a) {
  QuadInt q;
  return divides(b, a, q);
}

/** The unit group of O_K: order 4 for D = -4, order 6 for D = -3, else {1,-1}. */
inline std::vector<QuadInt> units(const Discriminant& disc) {
  std::vector<QuadInt> out;
  if (disc.is_rational()) {
    out.emplace_back(Int(1), Int(0), disc);
    out.emplace_back(Int(-1), Int(0), disc);
    return out;
  }
  for (long long y = -2; y <= 2; ++y)
    for (long long x = -6; x <= 6; ++x) {
      QuadInt v{Int(x), Int(y), disc};
      if (!v.is_zero() && qnorm(v) == 1) out.push_back(v);
    }
  return out;
}

/** Sign key for the canonical projective representative: lexicographic
 *  (sign of Re, sign of Im) of the complex embedding. */
inline int sign_key(const QuadInt& v) {
  int s = sgn(v.twice_re());
  if (s != 0) return s;
  return sgn(v.y);
}
inline int sign_key(const Int& v) { return sgn(v); }

template <typename R>
struct Mat2 {
  R a, b, c, d;

  R det() const { return a * d - b * c; }
  R trace() const { return a + d; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }

  /** Inverse of a determinant-one matrix (the adjugate). */
  Mat2 inverse_unimodular() const { return {d, -b, -c, a}; }

  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const Mat2& o) const { return !(*this == o); }
};

using Mat2i = Mat2<Int>;
using Mat2q = Mat2<QuadInt>;

/**
 * Canonical representative of {M, -M}: the first nonzero entry in reading
 * order (a, b, c, d) gets positive real part, ties broken by positive
 * imaginary part.
 */
template <typename R>
Mat2<R> psl_canonicalize(const Mat2<R>& m) {
  for (const R* e : {&m.a, &m.b, &m.c, &m.d}) {
    int s = sign_key(*e);
    if (s > 0) return m;
    if (s < 0) return -m;
  }
  throw std::invalid_argument("psl_canonicalize: zero matrix");
}

template <typename R>
bool psl_equal(const Mat2<R>& m, const Mat2<R>& n) {
  return psl_canonicalize(m) == psl_canonicalize(n);
}

/** Point of P^1 over the fraction field: [p : q], not both zero. */
template <typename R>
struct ProjPoint {
  R p, q;

  bool is_infinity() const { return is_zero_elem(q); }

  bool operator==(const ProjPoint& o) const {
    return is_zero_elem(p * o.q - o.p * q);
  }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }

 private:
  static bool is_zero_elem(const Int& v) { return v == 0; }
  static bool is_zero_elem(const QuadInt& v) { return v.is_zero(); }
};

using ProjPointI = ProjPoint<Int>;
using ProjPointQ = ProjPoint<QuadInt>;

/** Fractional linear action [p:q] -> [a p + b q : c p + d q]. */
template <typename R>
ProjPoint<R> mobius_apply(const Mat2<R>& m, const ProjPoint<R>& z) {
  return {m.a * z.p + m.b * z.q, m.c * z.p + m.d * z.q};
}

/** Quaternion with double components; w + xi + yj + zk. */
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  Quaternion() = default;
  Quaternion(double w_, double x_ = 0, double y_ = 0, double z_ = 0)
      : w(w_), x(x_), y(y_), z(z_) {}

  Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }

  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  double norm_sq() const { return w * w + x * x + y * y + z * z; }
  Quaternion inverse() const {
    double n = norm_sq();
    if (n == 0) throw std::domain_error("quaternion inverse of zero");
    return conjugate() * (1.0 / n);
  }
};

inline double abs_val(const Quaternion& q) { return std::sqrt(q.norm_sq()); }
inline double real_part(const Quaternion& q) { return q.w; }
inline Quaternion conj_val(const Quaternion& q) { return q.conjugate(); }
inline Quaternion imag_part(const Quaternion& q) { return {0, q.x, q.y, q.z}; }

inline Quaternion inv_val(const Quaternion& q) { return q.inverse(); }

inline double abs_val(const std::complex<double>& c) { return std::abs(c); }
inline std::complex<double> inv_val(const std::complex<double>& c) { return 1.0 / c; }
inline double real_part(const std::complex<double>& c) { return c.real(); }
inline std::complex<double> conj_val(const std::complex<double>& c) { return std::conj(c); }
inline std::complex<double> imag_part(const std::complex<double>& c) {
  return {0.0, c.imag()};
}

}  // namespace divgeo
