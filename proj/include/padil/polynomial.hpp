/**
 * Monic integer polynomials: reciprocity, sign flips, Newton power sums,
 * Lefschetz sequences, the trace-polynomial reduction and text I/O.
 */
#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace padil {

using Coeff = std::int64_t;

namespace detail {

inline Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in polynomial arithmetic");
  return r;
}

inline Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in polynomial arithmetic");
  return r;
}

}  // namespace detail

/**
 * A monic polynomial with integer coefficients, stored ascending by power.
 *
 * The leading coefficient is always exactly 1; constructing anything else throws.
 */
class IntPolynomial {
 public:
  IntPolynomial() : coeffs_{1} {}

  explicit IntPolynomial(std::vector<Coeff> ascending) : coeffs_(std::move(ascending)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty() || coeffs_.back() != 1) throw std::invalid_argument("polynomial is not monic");
  }

  /// Builds from coefficients listed from the leading term down, e.g. {1, -3, 1} for x^2-3x+1.
  static IntPolynomial from_descending(std::vector<Coeff> descending) {
    return IntPolynomial(std::vector<Coeff>(descending.rbegin(), descending.rend()));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  Coeff operator[](int power) const { return coeffs_[static_cast<std::size_t>(power)]; }

  /// Coefficient a_i of x^(degree - i); a_0 = 1.
  Coeff newton_coeff(int i) const { return coeffs_[static_cast<std::size_t>(degree() - i)]; }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
  friend auto operator<=>(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ <=> b.coeffs_; }

 private:
  std::vector<Coeff> coeffs_;
};

inline IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Coeff> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      out[i + j] = detail::checked_add(out[i + j], detail::checked_mul(a.coeffs()[i], b.coeffs()[j]));
  return IntPolynomial(std::move(out));
}

inline bool is_reciprocal(const IntPolynomial& p) {
  const auto& c = p.coeffs();
  for (std::size_t i = 0, j = c.size() - 1; i < j; ++i, --j)
    if (c[i] != c[j]) return false;
  return true;
}

/// Monic normalization of P(-x): substitute -x and multiply by (-1)^degree.
inline IntPolynomial negate_variable(const IntPolynomial& p) {
  std::vector<Coeff> c = p.coeffs();
  const int n = p.degree();
  for (int k = 0; k <= n; ++k)
    if ((n - k) % 2 != 0) c[static_cast<std::size_t>(k)] = -c[static_cast<std::size_t>(k)];
  return IntPolynomial(std::move(c));
}

/// Power sums p_1..p_M of the roots, i.e. the traces Tr(A^m) of any matrix with this characteristic polynomial.
struct TraceSequence {
  std::vector<Coeff> values;

  int horizon() const { return static_cast<int>(values.size()); }
  /// p_m for 1 <= m <= horizon.
  Coeff operator[](int m) const { return values[static_cast<std::size_t>(m - 1)]; }
};

/**
 * Newton's identities: p_m = -m a_m - sum_{i=1}^{m-1} a_i p_{m-i} for m <= n,
 * and the order-n linear recurrence beyond.
 */
inline TraceSequence trace_sequence(const IntPolynomial& p, int horizon) {
  if (horizon < 1) throw std::invalid_argument("trace horizon must be positive");
  const int n = p.degree();
  TraceSequence t;
  t.values.resize(static_cast<std::size_t>(horizon));
  for (int m = 1; m <= horizon; ++m) {
    Coeff s = m <= n ? detail::checked_mul(m, p.newton_coeff(m)) : 0;
    for (int i = 1; i <= std::min(m - 1, n); ++i) s = detail::checked_add(s, detail::checked_mul(p.newton_coeff(i), t[m - i]));
    t.values[static_cast<std::size_t>(m - 1)] = -s;
  }
  return t;
}

/// L(phi^m) = 2 - Tr(phi^m_*) for m = 1..M.
inline std::vector<Coeff> lefschetz_numbers(const IntPolynomial& p, int horizon) {
  const TraceSequence t = trace_sequence(p, horizon);
  std::vector<Coeff> out;
  out.reserve(t.values.size());
  for (Coeff v : t.values) out.push_back(2 - v);
  return out;
}

/**
 * The degree-g polynomial Q with x^g Q(x + 1/x) = P for a reciprocal P of degree 2g.
 * Roots of Q are the sums lambda + 1/lambda over the root pairs of P.
 */
inline IntPolynomial trace_reduction(const IntPolynomial& p) {
  if (p.degree() % 2 != 0) throw std::invalid_argument("trace reduction needs even degree");
  if (!is_reciprocal(p)) throw std::invalid_argument("trace reduction needs a reciprocal polynomial");
  const int g = p.degree() / 2;
  std::vector<Coeff> rest = p.coeffs();
  std::vector<Coeff> q(static_cast<std::size_t>(g) + 1, 0);
  // x^(g-k) (x^2+1)^k has support on powers g-k .. g+k.
  for (int k = g; k >= 0; --k) {
    const Coeff lead = rest[static_cast<std::size_t>(g + k)];
    q[static_cast<std::size_t>(k)] = lead;
    if (lead == 0) continue;
    Coeff binom = 1;
    for (int j = 0; j <= k; ++j) {
      auto& slot = rest[static_cast<std::size_t>(g - k + 2 * j)];
      slot = detail::checked_add(slot, -detail::checked_mul(lead, binom));
      binom = binom * (k - j) / (j + 1);
    }
  }
  for (Coeff c : rest)
    if (c != 0) throw std::invalid_argument("trace reduction left a remainder");
  return IntPolynomial(std::move(q));
}

/// Expands x^g Q(x + 1/x); the inverse of trace_reduction.
inline IntPolynomial trace_expansion(const IntPolynomial& q) {
  const int g = q.degree();
  std::vector<Coeff> out(static_cast<std::size_t>(2 * g) + 1, 0);
  for (int k = 0; k <= g; ++k) {
    Coeff binom = 1;
    for (int j = 0; j <= k; ++j) {
      auto& slot = out[static_cast<std::size_t>(g - k + 2 * j)];
      slot = detail::checked_add(slot, detail::checked_mul(q[k], binom));
      binom = binom * (k - j) / (j + 1);
    }
  }
  return IntPolynomial(std::move(out));
}

/// Renders as e.g. "x^4-2*x^3-2*x+1".
inline std::string to_string(const IntPolynomial& p) {
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Coeff c = p[k];
    if (c == 0) continue;
    const Coeff mag = c < 0 ? -c : c;
    if (c < 0)
      out += '-';
    else if (!out.empty())
      out += '+';
    if (k == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag) + "*";
    out += 'x';
    if (k > 1) out += '^' + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/**
 * Parses "x^4-2x^3-2*x+1" style text (the '*' is optional, terms may repeat and are summed,
 * 'X' is accepted for 'x'). The result must be monic.
 */
inline IntPolynomial parse_polynomial(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&](Coeff& out) {
    const std::size_t start = pos;
    Coeff v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = detail::checked_add(detail::checked_mul(v, 10), text[pos] - '0');
      ++pos;
    }
    if (pos == start) return false;
    out = v;
    return true;
  };

  std::vector<Coeff> acc;
  auto add_term = [&](int power, Coeff c) {
    if (acc.size() <= static_cast<std::size_t>(power)) acc.resize(static_cast<std::size_t>(power) + 1, 0);
    acc[static_cast<std::size_t>(power)] = detail::checked_add(acc[static_cast<std::size_t>(power)], c);
  };

  skip();
  if (pos == text.size()) throw ParseError("empty polynomial", pos);
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    Coeff sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", pos);
    }
    first = false;
    Coeff coeff = 1;
    const bool has_number = read_int(coeff);
    skip();
    if (has_number && pos < text.size() && text[pos] == '*') {
      ++pos;
      skip();
    }
    int power = 0;
    if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) {
      ++pos;
      power = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        Coeff e = 0;
        if (!read_int(e)) throw ParseError("expected exponent", pos);
        if (e > 4096) throw ParseError("exponent too large", pos);
        power = static_cast<int>(e);
      }
    } else if (!has_number) {
      throw ParseError("expected a term", pos);
    }
    add_term(power, sign * coeff);
  }
  while (acc.size() > 1 && acc.back() == 0) acc.pop_back();
  if (acc.empty() || acc.back() != 1) throw ParseError("polynomial is not monic", 0);
  return IntPolynomial(std::move(acc));
}

}  // namespace padil
