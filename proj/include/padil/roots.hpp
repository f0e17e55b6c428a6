/**
 * Validated complex root clusters.
 *
 * Approximations come from Aberth-Ehrlich iteration (long double first, MPFR on demand).
 * They are then turned into exact dyadic rationals and the Braess-Hadeler inclusion
 * disks D(z_i, n |P(z_i)| / prod_{j != i} |z_i - z_j|) are computed in exact rational
 * arithmetic. The union of the disks holds every root, and a connected component of k
 * disks holds exactly k roots counted with multiplicity.
 */
#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <numeric>
#include <type_traits>
#include <vector>

#include "padil/exact.hpp"

namespace padil::roots {

template <class Real>
struct Complex {
  Real re{0}, im{0};
  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Real norm() const { return re * re + im * im; }
};

using Float50 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>>;
using Float120 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<120>>;
using Float300 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<300>>;

/// Aberth-Ehrlich simultaneous iteration on a monic polynomial, refining `z` in place.
template <class Real>
void aberth(const std::vector<Real>& coeffs, std::vector<Complex<Real>>& z, const Real& tolerance, int max_iter = 2000) {
  const std::size_t n = coeffs.size() - 1;
  for (int iter = 0; iter < max_iter; ++iter) {
    Real worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex<Real> p{coeffs[n], Real(0)};
      Complex<Real> dp{Real(0), Real(0)};
      for (std::size_t i = n; i-- > 0;) {
        dp = dp * z[k] + p;
        p = p * z[k] + Complex<Real>{coeffs[i], Real(0)};
      }
      if (p.norm() == 0) continue;
      Complex<Real> sum{Real(0), Real(0)};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex<Real> diff = z[k] - z[j];
        if (diff.norm() == 0) diff = Complex<Real>{tolerance, tolerance};
        sum = sum + Complex<Real>{Real(1), Real(0)} / diff;
      }
      Complex<Real> ratio = dp.norm() == 0 ? Complex<Real>{tolerance, Real(0)} : p / dp;
      Complex<Real> step = ratio / (Complex<Real>{Real(1), Real(0)} - ratio * sum);
      z[k] = z[k] - step;
      const Real scale = 1 + z[k].norm();
      const Real rel = step.norm() / scale;
      if (rel > worst) worst = rel;
    }
    if (worst < tolerance * tolerance) return;
  }
}

inline Rational to_rational(long double x) {
  if (x == 0) return Rational(0);
  int e = 0;
  long double m = std::frexp(x, &e);
  long double scaled = std::ldexp(m, 64);
  const bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  const auto hi = static_cast<unsigned long long>(scaled);
  Rational r{Integer(hi)};
  if (neg) r = -r;
  e -= 64;
  if (e >= 0)
    r *= Rational(Integer(1) << e);
  else
    r /= Rational(Integer(1) << -e);
  return r;
}

template <unsigned Digits>
Rational to_rational(const boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>>& x) {
  Integer mant;
  const long e = mpfr_get_z_2exp(mant.backend().data(), x.backend().data());
  Rational r{mant};
  if (e >= 0)
    r *= Rational(Integer(1) << e);
  else
    r /= Rational(Integer(1) << -e);
  return r;
}

struct RationalComplex {
  Rational re, im;
};

template <class Real>
Real to_real(const Rational& q) {
  if constexpr (std::is_floating_point_v<Real>) {
    return q.convert_to<Real>();
  } else {
    return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
  }
}

/// Approximate roots of a monic polynomial, returned as exact dyadic rationals.
template <class Real>
std::vector<RationalComplex> approximate_roots(const IntPolynomial& p, const std::vector<RationalComplex>* seed,
                                               const Real& tolerance) {
  const std::size_t n = static_cast<std::size_t>(p.degree());
  std::vector<Real> coeffs;
  for (Coeff c : p.coeffs()) coeffs.emplace_back(static_cast<long long>(c));
  std::vector<Complex<Real>> z(n);
  if (seed != nullptr && seed->size() == n) {
    for (std::size_t k = 0; k < n; ++k)
      z[k] = Complex<Real>{to_real<Real>((*seed)[k].re), to_real<Real>((*seed)[k].im)};
  } else {
    // Fujiwara-style radius; the phase offset keeps starting points off the real axis.
    double radius = 0;
    for (std::size_t k = 1; k <= n; ++k)
      radius = std::max(radius, std::pow(std::abs(static_cast<double>(p.newton_coeff(static_cast<int>(k)))), 1.0 / static_cast<double>(k)));
    radius = std::max(1.0, 2.0 * radius);
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
      z[k] = Complex<Real>{Real(radius * std::cos(angle)), Real(radius * std::sin(angle))};
    }
  }
  aberth(coeffs, z, tolerance);
  std::vector<RationalComplex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k].re = to_rational(z[k].re);
    out[k].im = to_rational(z[k].im);
  }
  return out;
}

/// Upper bound u >= sqrt(q), loose by roughly 1e-14 relative.
inline Rational sqrt_upper(const Rational& q) {
  if (q <= 0) return Rational(0);
  const double approx = std::sqrt(q.convert_to<double>());
  Rational hi = to_rational(static_cast<long double>(approx)) * Rational(1000000000000001LL, 1000000000000000LL);
  if (hi <= 0) hi = Rational(1, 1 << 30);
  while (hi * hi < q) hi *= 2;
  return hi;
}

/// Root-inclusion disk with exact center and rigorous radius bound.
struct Disk {
  RationalComplex center;
  Rational radius;
};

struct Cluster {
  std::vector<std::size_t> members;
};

struct Inclusion {
  std::vector<Disk> disks;
  std::vector<Cluster> clusters;
};

inline std::vector<Disk> inclusion_disks(const IntPolynomial& p, const std::vector<RationalComplex>& z) {
  const std::size_t n = z.size();
  const ZPoly zp = exact::from(p);
  std::vector<Disk> disks(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational re = 0, im = 0;
    for (std::size_t k = zp.size(); k-- > 0;) {
      Rational nr = re * z[i].re - im * z[i].im + Rational(zp[k]);
      im = re * z[i].im + im * z[i].re;
      re = std::move(nr);
    }
    Rational value_norm = re * re + im * im;
    Rational denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Rational dr = z[i].re - z[j].re;
      const Rational di = z[i].im - z[j].im;
      denom *= dr * dr + di * di;
    }
    disks[i].center = z[i];
    if (denom == 0) {
      disks[i].radius = Rational(Integer(1) << 20);
    } else {
      disks[i].radius = sqrt_upper(value_norm * Rational(static_cast<long>(n * n)) / denom);
    }
  }
  return disks;
}

inline bool provably_disjoint(const Disk& a, const Disk& b) {
  const Rational dr = a.center.re - b.center.re;
  const Rational di = a.center.im - b.center.im;
  const Rational sum = a.radius + b.radius;
  return dr * dr + di * di > sum * sum;
}

inline Inclusion cluster(std::vector<Disk> disks) {
  const std::size_t n = disks.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!provably_disjoint(disks[i], disks[j])) parent[find(i)] = find(j);
  Inclusion out;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.clusters.size());
      out.clusters.emplace_back();
    }
    out.clusters[static_cast<std::size_t>(slot[r])].members.push_back(i);
  }
  out.disks = std::move(disks);
  return out;
}

/// Every point of the disk has modulus < bound.
inline bool inside_modulus(const Disk& d, const Rational& bound) {
  if (d.radius >= bound) return false;
  const Rational room = bound - d.radius;
  return d.center.re * d.center.re + d.center.im * d.center.im < room * room;
}

/// Every point of the disk has modulus > bound.
inline bool outside_modulus(const Disk& d, const Rational& bound) {
  const Rational reach = bound + d.radius;
  return d.center.re * d.center.re + d.center.im * d.center.im > reach * reach;
}

/// The disk meets the real segment [lo, hi].
inline bool meets_segment(const Disk& d, const Rational& lo, const Rational& hi) {
  Rational dx = 0;
  if (d.center.re < lo)
    dx = lo - d.center.re;
  else if (d.center.re > hi)
    dx = d.center.re - hi;
  return dx * dx + d.center.im * d.center.im <= d.radius * d.radius;
}

}  // namespace padil::roots
