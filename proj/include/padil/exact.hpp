/**
 * Exact arithmetic on integer polynomials of arbitrary size: pseudo-division,
 * primitive gcd, Sturm sequences and real-root counting at rational points.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padil/polynomial.hpp"

namespace padil {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Ascending coefficients, no trailing zeros (the zero polynomial is empty).
using ZPoly = std::vector<Integer>;

namespace exact {

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline ZPoly from(const IntPolynomial& p) {
  ZPoly out;
  out.reserve(p.coeffs().size());
  for (Coeff c : p.coeffs()) out.emplace_back(c);
  return out;
}

inline ZPoly derivative(const ZPoly& p) {
  ZPoly out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * static_cast<long>(k));
  trim(out);
  return out;
}

/// p(-x).
inline ZPoly reflect(ZPoly p) {
  for (std::size_t k = 1; k < p.size(); k += 2) p[k] = -p[k];
  return p;
}

inline Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

/// Divides out the content, keeping the sign of every coefficient.
inline void make_primitive(ZPoly& p) {
  if (p.empty()) return;
  Integer g = content(p);
  if (g > 1)
    for (auto& c : p) c /= g;
}

/**
 * Remainder of a by b up to a positive factor: |lc(b)|^(deg a - deg b + 1) * a mod b.
 * The positive factor keeps Sturm sign patterns intact.
 */
inline ZPoly positive_pseudo_remainder(ZPoly a, const ZPoly& b) {
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  const int db = degree(b);
  const Integer lc = b.back();
  const Integer mag = lc < 0 ? Integer(-lc) : lc;
  const int sign = lc < 0 ? -1 : 1;
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    const Integer lead = a.back();
    for (auto& c : a) c *= mag;
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= sign * lead * b[static_cast<std::size_t>(k)];
    trim(a);
  }
  return a;
}

/// Primitive gcd with positive leading coefficient.
inline ZPoly gcd(ZPoly a, ZPoly b) {
  trim(a);
  trim(b);
  make_primitive(a);
  make_primitive(b);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = positive_pseudo_remainder(std::move(a), b);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() < 0)
    for (auto& c : a) c = -c;
  return a;
}

/// Exact quotient a / b; throws if b does not divide a over the rationals with integral result.
inline ZPoly exact_quotient(ZPoly a, const ZPoly& b) {
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  const int db = degree(b);
  if (degree(a) < db) {
    if (a.empty()) return {};
    throw std::domain_error("inexact polynomial division");
  }
  ZPoly q(static_cast<std::size_t>(degree(a) - db + 1));
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    if (a.back() % b.back() != 0) throw std::domain_error("inexact polynomial division");
    const Integer f = a.back() / b.back();
    q[static_cast<std::size_t>(shift)] = f;
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= f * b[static_cast<std::size_t>(k)];
    trim(a);
  }
  if (!a.empty()) throw std::domain_error("inexact polynomial division");
  trim(q);
  return q;
}

/// Sign of p at the rational num/den (den > 0).
inline int sign_at(const ZPoly& p, const Integer& num, const Integer& den) {
  if (p.empty()) return 0;
  Integer acc = 0;
  Integer den_pow = 1;
  // Horner in homogeneous form: sum c_k num^k den^(n-k).
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = acc * num + p[k] * den_pow;
    den_pow *= den;
  }
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

inline int sign_at(const ZPoly& p, const Rational& x) {
  return sign_at(p, boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

inline Rational eval(const ZPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + Rational(p[k]);
  return acc;
}

/// The Sturm sequence p, p', -rem(p, p'), ... up to positive factors.
class SturmSequence {
 public:
  explicit SturmSequence(ZPoly p) {
    trim(p);
    if (p.empty()) throw std::domain_error("Sturm sequence of the zero polynomial");
    seq_.push_back(std::move(p));
    ZPoly d = derivative(seq_.front());
    while (!d.empty()) {
      seq_.push_back(d);
      ZPoly r = positive_pseudo_remainder(seq_[seq_.size() - 2], d);
      for (auto& c : r) c = -c;
      make_primitive(r);
      d = std::move(r);
    }
  }

  const ZPoly& base() const { return seq_.front(); }

  int variations_at(const Rational& x) const {
    int count = 0;
    int last = 0;
    for (const auto& q : seq_) {
      const int s = sign_at(q, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  int variations_at_infinity(bool positive) const {
    int count = 0;
    int last = 0;
    for (const auto& q : seq_) {
      int s = q.back() > 0 ? 1 : -1;
      if (!positive && degree(q) % 2 != 0) s = -s;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Number of distinct real roots in (a, b]; requires a < b.
  int count(const Rational& a, const Rational& b) const { return variations_at(a) - variations_at(b); }
  int count_above(const Rational& a) const { return variations_at(a) - variations_at_infinity(true); }
  int count_below(const Rational& b) const { return variations_at_infinity(false) - variations_at(b); }

 private:
  std::vector<ZPoly> seq_;
};

/// 1 + max |c_k| bounds the modulus of every root (the leading coefficient is a nonzero integer).
inline Integer cauchy_bound(const ZPoly& p) {
  Integer m = 0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) m = std::max(m, Integer(boost::multiprecision::abs(p[k])));
  return m + 1;
}

}  // namespace exact
}  // namespace padil
