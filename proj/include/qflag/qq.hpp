/**
 * @file qq.hpp
 * @brief Exact arithmetic in Q(q): integer Laurent polynomials and their quotients.
 *
 * Everything downstream (representation matrices, braidings, graded dimension
 * counts) runs over the field Q(q) with q transcendental.  An element is kept
 * as a reduced fraction
 *
 *     (num Laurent polynomial with integer coefficients) / (den polynomial)
 *
 * in a canonical form, so structural equality of the representation is
 * equality in the field.  No floating point is used anywhere.
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qflag {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero in Q(q)") {}
};
struct InvalidArgument : std::invalid_argument {
  explicit InvalidArgument(const std::string& m) : std::invalid_argument(m) {}
};
struct PoleAtPoint : std::domain_error {
  PoleAtPoint() : std::domain_error("denominator vanishes at evaluation point") {}
};
struct ZeroBase : std::domain_error {
  ZeroBase() : std::domain_error("cannot evaluate a Laurent polynomial at q = 0") {}
};

namespace detail {

// Dense coefficient vector, ascending exponents, no trailing (= leading) zeros.
// The empty vector is the zero polynomial.
using Poly = std::vector<Int>;

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool poly_is_zero(const Poly& p) { return p.empty(); }

inline int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly poly_one() { return Poly{Int(1)}; }

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  poly_trim(r);
  return r;
}

// dst += c * src * q^off   (off >= 0)
inline void poly_acc(Poly& dst, const Poly& src, const Int& c, int off) {
  if (src.empty() || c == 0) return;
  if (dst.size() < src.size() + off) dst.resize(src.size() + off, Int(0));
  for (std::size_t i = 0; i < src.size(); ++i) dst[i + off] += c * src[i];
  poly_trim(dst);
}

inline Int poly_content(const Poly& p) {  // nonnegative; 0 for the zero poly
  Int g = 0;
  for (const Int& c : p) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

inline Poly poly_div_int(Poly p, const Int& c) {  // exact division by a scalar
  for (Int& x : p) x /= c;
  return p;
}

inline Poly poly_primitive(const Poly& p) {
  if (p.empty()) return p;
  Int c = poly_content(p);
  if (p.back() < 0) c = -c;
  return poly_div_int(p, c);
}

// Pseudo-remainder: multiplies the dividend by lead(b) at each step so the
// arithmetic stays in Z[q].  Only used inside the gcd loop, where contents
// are stripped immediately afterwards.
inline Poly poly_prem(Poly a, const Poly& b) {
  const int db = poly_deg(b);
  const Int& lb = b.back();
  while (!a.empty() && poly_deg(a) >= db) {
    const int sh = poly_deg(a) - db;
    const Int la = a.back();
    for (Int& x : a) x *= lb;
    for (int i = 0; i <= db; ++i) a[i + sh] -= la * b[i];
    poly_trim(a);
  }
  return a;
}

// Primitive positive-leading gcd via the primitive PRS.
inline Poly poly_gcd(Poly a, Poly b) {
  if (a.empty()) return b.empty() ? b : poly_primitive(b);
  if (b.empty()) return poly_primitive(a);
  a = poly_primitive(a);
  b = poly_primitive(b);
  if (poly_deg(a) < poly_deg(b)) std::swap(a, b);
  while (!b.empty()) {
    Poly r = poly_prem(a, b);
    a = std::move(b);
    b = poly_primitive(r);
  }
  return a;  // already primitive with positive lead
}

// Exact division in Z[q]; aborts if the division is not exact.
inline Poly poly_divexact(Poly a, const Poly& b) {
  if (b.empty()) throw DivisionByZero{};
  if (a.empty()) return a;
  const int db = poly_deg(b);
  const Int& lb = b.back();
  Poly qout(a.size() - b.size() + 1, Int(0));
  while (!a.empty() && poly_deg(a) >= db) {
    const int sh = poly_deg(a) - db;
    Int c = a.back() / lb;
    if (c * lb != a.back()) throw InvalidArgument("inexact polynomial division");
    qout[sh] = c;
    for (int i = 0; i <= db; ++i) a[i + sh] -= c * b[i];
    poly_trim(a);
  }
  if (!a.empty()) throw InvalidArgument("inexact polynomial division");
  return qout;
}

inline Rat poly_eval(const Poly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

inline Poly poly_stretch(const Poly& p, int m) {  // p(q) -> p(q^m), m >= 1
  if (p.empty() || m == 1) return p;
  Poly r((p.size() - 1) * m + 1, Int(0));
  for (std::size_t i = 0; i < p.size(); ++i) r[i * m] = p[i];
  return r;
}

}  // namespace detail

/**
 * An element of Q(q), stored as  num(q) * q^shift / den(q)  with
 *   - num, den integer polynomials, num with nonzero constant term (or zero),
 *   - den with nonzero constant term and positive leading coefficient,
 *   - gcd(num, den) = 1 in Z[q]  (polynomial part and integer contents jointly),
 *   - zero canonically 0/1 with shift 0.
 *
 * Structural equality of this representation is equality in Q(q).
 */
class LaurentRat {
 public:
  LaurentRat() = default;
  LaurentRat(long long n) { num_.assign(1, Int(n)); normalize(); }  // NOLINT: implicit
  explicit LaurentRat(const Int& n) { num_.assign(1, n); normalize(); }
  explicit LaurentRat(const Rat& r) {
    num_.assign(1, boost::multiprecision::numerator(r));
    den_.assign(1, boost::multiprecision::denominator(r));
    normalize();
  }

  /// c * q^e
  static LaurentRat monomial(Int c, int e) {
    LaurentRat r;
    r.num_.assign(1, std::move(c));
    r.shift_ = e;
    r.normalize();
    return r;
  }
  static LaurentRat q_pow(int e) { return monomial(Int(1), e); }
  static LaurentRat zero() { return LaurentRat(); }
  static LaurentRat one() { return LaurentRat(1); }

  bool is_zero() const { return num_.empty(); }
  bool is_one() const {
    return num_.size() == 1 && num_[0] == 1 && shift_ == 0 && den_.size() == 1 && den_[0] == 1;
  }
  bool is_denominator_one() const { return den_.size() == 1 && den_[0] == 1; }

  /// True Laurent polynomial (denominator 1) accessors.
  int min_exp() const { return shift_; }
  int max_exp() const { return shift_ + detail::poly_deg(num_); }

  friend bool operator==(const LaurentRat& a, const LaurentRat& b) {
    return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const LaurentRat& a, const LaurentRat& b) { return !(a == b); }

  LaurentRat operator-() const {
    LaurentRat r = *this;
    for (Int& c : r.num_) c = -c;
    return r;
  }

  friend LaurentRat operator+(const LaurentRat& a, const LaurentRat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    LaurentRat r;
    const int s = std::min(a.shift_, b.shift_);
    if (a.den_ == b.den_) {
      detail::poly_acc(r.num_, a.num_, Int(1), a.shift_ - s);
      detail::poly_acc(r.num_, b.num_, Int(1), b.shift_ - s);
      r.den_ = a.den_;
    } else {
      Poly t = detail::poly_mul(a.num_, b.den_);
      detail::poly_acc(r.num_, t, Int(1), a.shift_ - s);
      t = detail::poly_mul(b.num_, a.den_);
      detail::poly_acc(r.num_, t, Int(1), b.shift_ - s);
      r.den_ = detail::poly_mul(a.den_, b.den_);
    }
    r.shift_ = s;
    r.normalize();
    return r;
  }
  friend LaurentRat operator-(const LaurentRat& a, const LaurentRat& b) { return a + (-b); }

  friend LaurentRat operator*(const LaurentRat& a, const LaurentRat& b) {
    if (a.is_zero() || b.is_zero()) return {};
    LaurentRat r;
    r.num_ = detail::poly_mul(a.num_, b.num_);
    r.den_ = detail::poly_mul(a.den_, b.den_);
    r.shift_ = a.shift_ + b.shift_;
    if (a.is_denominator_one() && b.is_denominator_one()) {
      // product of reduced integral elements is already reduced
      return r;
    }
    r.normalize();
    return r;
  }

  LaurentRat inv() const {
    if (is_zero()) throw DivisionByZero{};
    LaurentRat r;
    r.num_ = den_;
    r.den_ = num_;
    r.shift_ = -shift_;
    if (r.den_.back() < 0) {
      for (Int& c : r.num_) c = -c;
      for (Int& c : r.den_) c = -c;
    }
    return r;  // gcd and content conditions are symmetric in (num, den)
  }
  friend LaurentRat operator/(const LaurentRat& a, const LaurentRat& b) { return a * b.inv(); }

  LaurentRat& operator+=(const LaurentRat& o) { return *this = *this + o; }
  LaurentRat& operator-=(const LaurentRat& o) { return *this = *this - o; }
  LaurentRat& operator*=(const LaurentRat& o) { return *this = *this * o; }
  LaurentRat& operator/=(const LaurentRat& o) { return *this = *this / o; }

  /// Substitute q -> q^m (m >= 1).
  LaurentRat stretched(int m) const {
    if (m < 1) throw InvalidArgument("stretch factor must be positive");
    if (is_zero() || m == 1) return *this;
    LaurentRat r;
    r.num_ = detail::poly_stretch(num_, m);
    r.den_ = detail::poly_stretch(den_, m);
    r.shift_ = shift_ * m;
    return r;  // reducedness is preserved by q -> q^m
  }

  /// Substitute a nonzero rational for q.
  Rat evaluate_at(const Rat& q0) const {
    if (q0 == 0) throw ZeroBase{};
    const Rat dv = detail::poly_eval(den_, q0);
    if (dv == 0) throw PoleAtPoint{};
    Rat nv = detail::poly_eval(num_, q0);
    Rat p = 1;
    const int e = shift_ < 0 ? -shift_ : shift_;
    for (int i = 0; i < e; ++i) p *= q0;
    if (shift_ < 0) nv /= p; else nv *= p;
    return nv / dv;
  }

  /**
   * Wire format: "(num)/(den)" with numerator terms in descending exponent
   * order, e.g. "(q^2 - q^-2)/(1)".  Identical field elements render to
   * identical strings.
   */
  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    if (is_zero()) {
      os << '0';
    } else {
      bool first = true;
      for (int k = detail::poly_deg(num_); k >= 0; --k) {
        const Int& c = num_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        const bool neg = c < 0;
        if (first) {
          if (neg) os << '-';
          first = false;
        } else {
          os << (neg ? " - " : " + ");
        }
        render_term(os, neg ? Int(-c) : c, shift_ + k);
      }
    }
    os << ")/(";
    if (den_.size() == 1 && den_[0] == 1) {
      os << '1';
    } else {
      bool first = true;
      for (int k = detail::poly_deg(den_); k >= 0; --k) {
        const Int& c = den_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        const bool neg = c < 0;
        if (first) {
          if (neg) os << '-';
          first = false;
        } else {
          os << (neg ? " - " : " + ");
        }
        render_term(os, neg ? Int(-c) : c, k);
      }
    }
    os << ')';
    return os.str();
  }

  const std::vector<Int>& num_coeffs() const { return num_; }
  const std::vector<Int>& den_coeffs() const { return den_; }
  int num_shift() const { return shift_; }

 private:
  using Poly = detail::Poly;

  static void render_term(std::ostringstream& os, const Int& abs_c, int e) {
    if (e == 0) {
      os << abs_c;
      return;
    }
    if (abs_c != 1) os << abs_c << '*';
    os << 'q';
    if (e != 1) os << '^' << e;
  }

  void normalize() {
    detail::poly_trim(num_);
    if (num_.empty()) {
      shift_ = 0;
      den_ = detail::poly_one();
      return;
    }
    // strip low-order zeros of num into the shift
    std::size_t z = 0;
    while (num_[z] == 0) ++z;
    if (z) {
      num_.erase(num_.begin(), num_.begin() + static_cast<std::ptrdiff_t>(z));
      shift_ += static_cast<int>(z);
    }
    if (den_.empty()) throw DivisionByZero{};
    detail::poly_trim(den_);
    if (den_.empty()) throw DivisionByZero{};
    // q-power factors of den move into the shift
    z = 0;
    while (den_[z] == 0) ++z;
    if (z) {
      den_.erase(den_.begin(), den_.begin() + static_cast<std::ptrdiff_t>(z));
      shift_ -= static_cast<int>(z);
    }
    if (den_.size() == 1) {
      if (den_[0] < 0) {
        den_[0] = -den_[0];
        for (Int& c : num_) c = -c;
      }
      if (den_[0] != 1) {
        const Int g = boost::multiprecision::gcd(detail::poly_content(num_), den_[0]);
        if (g > 1) {
          num_ = detail::poly_div_int(std::move(num_), g);
          den_[0] /= g;
        }
      }
      return;
    }
    const Poly g = detail::poly_gcd(num_, den_);
    if (detail::poly_deg(g) > 0 || g[0] != 1) {
      num_ = detail::poly_divexact(std::move(num_), g);
      den_ = detail::poly_divexact(std::move(den_), g);
    }
    const Int cg = boost::multiprecision::gcd(detail::poly_content(num_), detail::poly_content(den_));
    if (cg > 1) {
      num_ = detail::poly_div_int(std::move(num_), cg);
      den_ = detail::poly_div_int(std::move(den_), cg);
    }
    if (den_.back() < 0) {
      for (Int& c : num_) c = -c;
      for (Int& c : den_) c = -c;
    }
  }

  Poly num_;       // ascending coefficients, nonzero constant term unless zero
  int shift_ = 0;  // exponent of the lowest numerator term
  Poly den_ = detail::poly_one();  // nonzero constant term, positive lead
};

/// Balanced q-integer [n]: q^{n-1} + q^{n-3} + ... + q^{1-n}; [-n] = -[n].
inline LaurentRat qint(long long n) {
  if (n == 0) return LaurentRat::zero();
  const long long a = n < 0 ? -n : n;
  LaurentRat out = LaurentRat::zero();
  for (long long j = 0; j < a; ++j)
    out += LaurentRat::q_pow(static_cast<int>(a - 1 - 2 * j));
  if (n < 0) out = -out;
  return out;
}

/// [n] in the variable q^d.
inline LaurentRat qint_base(long long n, int d) { return qint(n).stretched(d); }

/// Balanced q-binomial [n choose k] for integers 0 <= k <= n.
inline LaurentRat qbinom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) throw InvalidArgument("qbinom requires 0 <= k <= n");
  if (k > n - k) k = n - k;
  LaurentRat r = LaurentRat::one();
  for (long long j = 1; j <= k; ++j) r = r * qint(n - k + j) / qint(j);
  return r;
}

/// [n choose k] in the variable q^d.
inline LaurentRat qbinom_base(long long n, long long k, int d) {
  return qbinom(n, k).stretched(d);
}

}  // namespace qflag
