/**
 * Certified Perron roots.
 *
 * The largest real root is isolated by exact Sturm bisection on rational endpoints.
 * Strict dominance over every other complex root is settled with validated root clusters
 * (see roots.hpp); roots of exactly equal modulus are detected exactly, through -lambda
 * being a root or lambda^2 being a product of two other roots.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "padil/exact.hpp"
#include "padil/polynomial.hpp"
#include "padil/roots.hpp"

namespace padil {

enum class Ordering { less, equal, greater };

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
  }
  return "?";
}

/// The largest real root lambda > 1 of a polynomial, isolated in (lower, upper].
struct PerronData {
  Rational lower;
  Rational upper;
  bool is_simple = false;
  bool is_perron = false;
  std::string approx;

  double value() const { return ((lower + upper) / 2).convert_to<double>(); }
};

namespace exact {

/// p / gcd(p, p'): the same distinct roots, all simple.
inline ZPoly squarefree(const ZPoly& p) {
  ZPoly g = gcd(p, derivative(p));
  if (degree(g) < 1) {
    ZPoly q = p;
    make_primitive(q);
    return q;
  }
  ZPoly q = exact_quotient(p, g);
  make_primitive(q);
  return q;
}

/// Number of distinct real roots of f in (lo, hi].
inline int roots_in(const ZPoly& f, const Rational& lo, const Rational& hi) {
  if (degree(f) < 1) return 0;
  return SturmSequence(squarefree(f)).count(lo, hi);
}

/// Power sums s_1..s_count of the roots of a monic polynomial, in exact integers.
inline std::vector<Integer> power_sums(const ZPoly& p, int count) {
  const int n = degree(p);
  std::vector<Integer> s(static_cast<std::size_t>(count) + 1, 0);
  auto a = [&](int i) -> const Integer& { return p[static_cast<std::size_t>(n - i)]; };
  for (int m = 1; m <= count; ++m) {
    Integer acc = m <= n ? Integer(a(m) * m) : Integer(0);
    for (int i = 1; i <= std::min(m - 1, n); ++i) acc += a(i) * s[static_cast<std::size_t>(m - i)];
    s[static_cast<std::size_t>(m)] = -acc;
  }
  return s;
}

/// Monic polynomial from its power sums s_1..s_n (Newton's identities).
inline ZPoly from_power_sums(const std::vector<Integer>& s, int n) {
  std::vector<Integer> c(static_cast<std::size_t>(n) + 1, 0);  // c[i] = coefficient of x^(n-i)
  c[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Integer acc = 0;
    for (int i = 1; i <= k; ++i) acc += c[static_cast<std::size_t>(k - i)] * s[static_cast<std::size_t>(i)];
    if (acc % k != 0) throw std::logic_error("power sums are not those of an integer polynomial");
    c[static_cast<std::size_t>(k)] = -acc / k;
  }
  ZPoly out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out[static_cast<std::size_t>(n - i)] = c[static_cast<std::size_t>(i)];
  return out;
}

/// Monic polynomial whose roots are the products z_i z_j (i < j) of roots of p.
inline ZPoly pair_products(const ZPoly& p) {
  const int n = degree(p);
  const int big_n = n * (n - 1) / 2;
  const std::vector<Integer> s = power_sums(p, 2 * big_n);
  std::vector<Integer> e(static_cast<std::size_t>(big_n) + 1, 0);
  for (int m = 1; m <= big_n; ++m)
    e[static_cast<std::size_t>(m)] = (s[static_cast<std::size_t>(m)] * s[static_cast<std::size_t>(m)] - s[static_cast<std::size_t>(2 * m)]) / 2;
  return from_power_sums(e, big_n);
}

/// Monic polynomial whose roots are the squares z_i^2 of roots of p.
inline ZPoly graeffe(const ZPoly& p) {
  const int n = degree(p);
  const ZPoly neg = reflect(p);
  ZPoly prod(static_cast<std::size_t>(2 * n) + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < neg.size(); ++j) prod[i + j] += p[i] * neg[j];
  ZPoly out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out[static_cast<std::size_t>(k)] = n % 2 == 0 ? prod[static_cast<std::size_t>(2 * k)] : Integer(-prod[static_cast<std::size_t>(2 * k)]);
  return out;
}

}  // namespace exact

namespace detail {

/// Halves (lo, hi] keeping the unique root of the squarefree `sturm` base inside.
inline void bisect(const exact::SturmSequence& sturm, Rational& lo, Rational& hi) {
  const Rational mid = (lo + hi) / 2;
  if (sturm.count(mid, hi) > 0)
    lo = mid;
  else
    hi = mid;
}

inline std::string decimal_string(const Rational& x, int places) {
  Integer scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const Rational y = x * Rational(scale);
  const Integer num = boost::multiprecision::numerator(y);
  const Integer den = boost::multiprecision::denominator(y);
  Integer q = num / den;
  Integer r = num % den;
  if (r < 0) {
    r += den;
    q -= 1;
  }
  // Round half to even.
  const Integer twice = r * 2;
  if (twice > den || (twice == den && q % 2 != 0)) q += 1;
  const bool negative = q < 0;
  if (negative) q = -q;
  std::string digits = q.str();
  if (static_cast<int>(digits.size()) <= places) digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
  if (places > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(places));
  return out;
}

enum class Dominance { perron, not_perron, undecided };

inline Dominance numeric_dominance(const IntPolynomial& p, const std::vector<roots::RationalComplex>& z,
                                   const Rational& lo, const Rational& hi) {
  const roots::Inclusion inc = roots::cluster(roots::inclusion_disks(p, z));
  int touching = 0;
  bool lone_disk = false;
  bool others_inside = true;
  for (const auto& c : inc.clusters) {
    bool meets = false;
    bool all_outside = true;
    bool all_inside = true;
    for (std::size_t i : c.members) {
      const auto& d = inc.disks[i];
      meets = meets || roots::meets_segment(d, lo, hi);
      all_outside = all_outside && roots::outside_modulus(d, hi);
      all_inside = all_inside && roots::inside_modulus(d, lo);
    }
    if (all_outside) return Dominance::not_perron;
    if (meets) {
      ++touching;
      lone_disk = c.members.size() == 1;
    } else if (!all_inside) {
      others_inside = false;
    }
  }
  if (touching == 1 && lone_disk && others_inside) return Dominance::perron;
  return Dominance::undecided;
}

/// Some root other than lambda in (lo, hi] has modulus exactly lambda.
inline bool equal_modulus_root(const ZPoly& p, const exact::SturmSequence& sturm, Rational lo, Rational hi) {
  const ZPoly neg = exact::reflect(p);
  if (exact::roots_in(exact::gcd(p, neg), lo, hi) > 0) return true;
  // Shrink until p(-x) has no root in (lo, hi]; then lambda^2 is the only square of a root in (lo^2, hi^2].
  while (exact::roots_in(neg, lo, hi) > 0) bisect(sturm, lo, hi);
  const ZPoly d = exact::gcd(exact::pair_products(p), exact::graeffe(p));
  return exact::roots_in(d, lo * lo, hi * hi) > 0;
}

template <class Real>
std::optional<Dominance> try_precision(const IntPolynomial& p, std::vector<roots::RationalComplex>& seed, const Real& tol,
                                       const Rational& lo, const Rational& hi) {
  seed = roots::approximate_roots<Real>(p, seed.empty() ? nullptr : &seed, tol);
  const Dominance d = numeric_dominance(p, seed, lo, hi);
  if (d == Dominance::undecided) return std::nullopt;
  return d;
}

}  // namespace detail

/**
 * Decides whether the simple real root in (lower, upper] strictly dominates all other roots.
 * The interval must isolate the largest real root of p.
 */
inline bool certify_dominance(const IntPolynomial& p, Rational lower, Rational upper) {
  const ZPoly zp = exact::from(p);
  const exact::SturmSequence sturm(exact::squarefree(zp));
  std::vector<roots::RationalComplex> seed;
  using detail::Dominance;
  auto narrow = [&](int bits) {
    const Rational width = Rational(1) / Rational(Integer(1) << bits);
    while (upper - lower > width) detail::bisect(sturm, lower, upper);
  };
  narrow(40);
  if (auto d = detail::try_precision<long double>(p, seed, 1e-17L, lower, upper)) return *d == Dominance::perron;
  if (detail::equal_modulus_root(zp, sturm, lower, upper)) return false;
  narrow(140);
  if (auto d = detail::try_precision<roots::Float50>(p, seed, roots::Float50("1e-45"), lower, upper)) return *d == Dominance::perron;
  narrow(350);
  if (auto d = detail::try_precision<roots::Float120>(p, seed, roots::Float120("1e-110"), lower, upper)) return *d == Dominance::perron;
  narrow(900);
  seed.clear();
  if (auto d = detail::try_precision<roots::Float300>(p, seed, roots::Float300("1e-280"), lower, upper)) return *d == Dominance::perron;
  throw std::runtime_error("dominance undecided at maximum precision for " + to_string(p));
}

/// Decimal rendering of the root in (lower, upper], refining until both ends round alike.
inline std::string perron_approx(const IntPolynomial& p, Rational lower, Rational upper, int places = 5) {
  const exact::SturmSequence sturm(exact::squarefree(exact::from(p)));
  while (detail::decimal_string(lower, places) != detail::decimal_string(upper, places)) detail::bisect(sturm, lower, upper);
  return detail::decimal_string(upper, places);
}

/// Refines the isolating interval of `data` until its width is at most `width`.
inline PerronData refine(const IntPolynomial& p, PerronData data, const Rational& width) {
  const exact::SturmSequence sturm(exact::squarefree(exact::from(p)));
  while (data.upper - data.lower > width) detail::bisect(sturm, data.lower, data.upper);
  return data;
}

/**
 * The largest real root lambda > 1, if any, with its certification flags.
 * is_perron holds iff lambda is simple and strictly dominates every other root of p.
 */
inline std::optional<PerronData> perron_root(const IntPolynomial& p) {
  if (p.degree() < 1) throw std::invalid_argument("constant polynomial");
  const ZPoly zp = exact::from(p);
  const exact::SturmSequence sturm(exact::squarefree(zp));
  Rational lo = 1;
  if (sturm.count_above(lo) == 0) return std::nullopt;
  Rational hi{exact::cauchy_bound(zp)};
  while (sturm.count(lo, hi) > 1) {
    const Rational mid = (lo + hi) / 2;
    if (sturm.count_above(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  while (lo == 1) detail::bisect(sturm, lo, hi);  // keep 1 strictly outside
  PerronData out;
  out.lower = lo;
  out.upper = hi;
  out.is_simple = exact::roots_in(exact::gcd(zp, exact::derivative(zp)), lo, hi) == 0;
  out.is_perron = out.is_simple && certify_dominance(p, lo, hi);
  out.approx = perron_approx(p, lo, hi);
  return out;
}

/**
 * Exact comparison of the largest real roots above 1 of p and b.
 * Equality is witnessed by a common factor of p and b vanishing in both isolating intervals.
 */
inline Ordering compare_perron(const IntPolynomial& p, const PerronData& pd, const IntPolynomial& b, const PerronData& bd) {
  Rational plo = pd.lower, phi = pd.upper, blo = bd.lower, bhi = bd.upper;
  if (phi <= blo) return Ordering::less;
  if (bhi <= plo) return Ordering::greater;
  const ZPoly common = exact::gcd(exact::from(p), exact::from(b));
  const Rational lo = plo > blo ? plo : blo;
  const Rational hi = phi < bhi ? phi : bhi;
  if (exact::roots_in(common, lo, hi) > 0) return Ordering::equal;
  const exact::SturmSequence ps(exact::squarefree(exact::from(p)));
  const exact::SturmSequence bs(exact::squarefree(exact::from(b)));
  while (true) {
    if (phi <= blo) return Ordering::less;
    if (bhi <= plo) return Ordering::greater;
    detail::bisect(ps, plo, phi);
    detail::bisect(bs, blo, bhi);
  }
}

inline Ordering compare_perron(const IntPolynomial& p, const IntPolynomial& b) {
  const auto pd = perron_root(p);
  const auto bd = perron_root(b);
  if (!pd || !bd) throw std::invalid_argument("compare_perron needs a real root above 1 on both sides");
  return compare_perron(p, *pd, b, *bd);
}

}  // namespace padil
