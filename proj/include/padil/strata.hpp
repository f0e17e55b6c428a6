/**
 * Singularity data on the punctured sphere and on its orientation double cover.
 *
 * Sphere notation: (k1; k^n, ...) with k1 the marked point. Surface notation:
 * (d^n, du^n, ...) where the suffix `u` marks groups whose points are swapped in
 * pairs by the covering involution.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "padil/polynomial.hpp"

namespace padil {

/// A violated defining relation of a stratum.
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SphereEntry {
  int degree = 0;
  int multiplicity = 1;
  friend bool operator==(const SphereEntry&, const SphereEntry&) = default;
};

struct SphereStratum {
  int marked_degree = -1;
  std::vector<SphereEntry> entries;

  /// Number of degree -1 points besides the marked point.
  int punctures() const {
    int n = 0;
    for (const auto& e : entries)
      if (e.degree == -1) n += e.multiplicity;
    return n;
  }
  friend bool operator==(const SphereStratum&, const SphereStratum&) = default;
};

enum class Provenance { marked, puncture, interior };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::marked: return "marked-lift";
    case Provenance::puncture: return "puncture-lift";
    case Provenance::interior: return "interior-lift";
  }
  return "?";
}

struct SurfaceGroup {
  int degree = 0;
  int count = 1;
  Provenance provenance = Provenance::interior;
  bool tau_paired = false;
  friend bool operator==(const SurfaceGroup&, const SurfaceGroup&) = default;
};

struct SurfaceStratum {
  std::vector<SurfaceGroup> groups;
  int genus = 1;
  friend bool operator==(const SurfaceStratum&, const SurfaceStratum&) = default;
};

inline void validate(const SphereStratum& s) {
  if (s.marked_degree < -1) throw ConstraintError("marked degree k1 must be >= -1");
  long sum = 0;
  for (const auto& e : s.entries) {
    if (e.degree < -1) throw ConstraintError("singularity degree must be >= -1");
    if (e.multiplicity < 1) throw ConstraintError("multiplicity must be positive");
    sum += static_cast<long>(e.degree) * e.multiplicity;
  }
  if (sum != -s.marked_degree - 4)
    throw ConstraintError("sum of n_i*k_i must equal -k1-4 (got " + std::to_string(sum) + ", expected " +
                          std::to_string(-s.marked_degree - 4) + ")");
}

/// g = (sum of degrees + 4) / 4.
inline int genus(const SurfaceStratum& s) {
  long sum = 0;
  for (const auto& g : s.groups) sum += static_cast<long>(g.degree) * g.count;
  if ((sum + 4) % 4 != 0 || sum + 4 < 4) throw ConstraintError("inconsistent singularity data");
  return static_cast<int>((sum + 4) / 4);
}

inline void validate(const SurfaceStratum& s) {
  for (const auto& g : s.groups) {
    if (g.degree < 0 || g.degree % 2 != 0) throw ConstraintError("surface singularity degrees must be even and >= 0");
    if (g.count < 1) throw ConstraintError("multiplicity must be positive");
    if (g.tau_paired && g.count % 2 != 0) throw ConstraintError("a tau-paired group must have even count");
  }
  if (genus(s) != s.genus) throw ConstraintError("recorded genus disagrees with sum of degrees = 4g-4");
}

namespace detail {

inline std::string power(const std::string& base, int n) { return n == 1 ? base : base + "^" + std::to_string(n); }

class StratumLexer {
 public:
  explicit StratumLexer(std::string_view text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ == text_.size();
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  int integer() {
    skip();
    const std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 100000) throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == digits) throw ParseError("expected an integer", start);
    return static_cast<int>(neg ? -v : v);
  }
  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string render(const SphereStratum& s) {
  std::string out = "(" + std::to_string(s.marked_degree) + ";";
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    if (i > 0) out += ",";
    out += detail::power(std::to_string(s.entries[i].degree), s.entries[i].multiplicity);
  }
  return out + ")";
}

inline std::string render(const SurfaceStratum& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    if (i > 0) out += ",";
    const auto& g = s.groups[i];
    out += detail::power(std::to_string(g.degree) + (g.tau_paired ? "u" : ""), g.count);
  }
  return out + ")";
}

inline SphereStratum parse_sphere_stratum(std::string_view text) {
  detail::StratumLexer lex(text);
  lex.expect('(');
  SphereStratum s;
  s.marked_degree = lex.integer();
  lex.expect(';');
  do {
    SphereEntry e;
    const std::size_t at = lex.position();
    e.degree = lex.integer();
    if (lex.accept('^')) {
      e.multiplicity = lex.integer();
      if (e.multiplicity < 1) throw ParseError("multiplicity must be positive", at);
    }
    s.entries.push_back(e);
  } while (lex.accept(','));
  lex.expect(')');
  if (!lex.at_end()) throw ParseError("trailing characters", lex.position());
  validate(s);
  return s;
}

/**
 * Parses surface notation and infers provenance: the puncture lifts are the largest
 * unpaired degree-0 group; the marked lift is the nearest eligible group (one unpaired
 * point or one tau-pair), looking first just before the punctures and then after them.
 */
inline SurfaceStratum parse_surface_stratum(std::string_view text) {
  detail::StratumLexer lex(text);
  lex.expect('(');
  SurfaceStratum s;
  do {
    SurfaceGroup g;
    const std::size_t at = lex.position();
    g.degree = lex.integer();
    g.tau_paired = lex.accept('u');
    if (lex.accept('^')) g.count = lex.integer();
    if (g.count < 1) throw ParseError("multiplicity must be positive", at);
    s.groups.push_back(g);
  } while (lex.accept(','));
  lex.expect(')');
  if (!lex.at_end()) throw ParseError("trailing characters", lex.position());

  long punct = -1;
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    const auto& g = s.groups[i];
    if (g.degree == 0 && !g.tau_paired && (punct < 0 || g.count > s.groups[static_cast<std::size_t>(punct)].count))
      punct = static_cast<long>(i);
  }
  auto eligible = [&](std::size_t i) {
    const auto& g = s.groups[i];
    return static_cast<long>(i) != punct && ((!g.tau_paired && g.count == 1) || (g.tau_paired && g.count == 2));
  };
  long marked = -1;
  if (punct > 0 && eligible(static_cast<std::size_t>(punct - 1))) marked = punct - 1;
  for (std::size_t i = static_cast<std::size_t>(punct + 1); marked < 0 && i < s.groups.size(); ++i)
    if (eligible(i)) marked = static_cast<long>(i);
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    if (static_cast<long>(i) == punct)
      s.groups[i].provenance = Provenance::puncture;
    else if (static_cast<long>(i) == marked)
      s.groups[i].provenance = Provenance::marked;
  }
  s.genus = genus(s);
  validate(s);
  return s;
}

/// Sphere notation if the text contains ';', surface notation otherwise.
inline std::variant<SphereStratum, SurfaceStratum> parse_stratum(std::string_view text) {
  if (text.find(';') != std::string_view::npos) return parse_sphere_stratum(text);
  return parse_surface_stratum(text);
}

/**
 * Lift to the orientation double cover. An odd degree k lifts to one point of degree 2k+2;
 * an even degree k lifts to a tau-swapped pair of points of degree k.
 */
inline SurfaceStratum lift_to_double_cover(const SphereStratum& s) {
  validate(s);
  auto lift = [](int k, int n, Provenance prov) {
    SurfaceGroup g;
    g.provenance = prov;
    if (k % 2 != 0) {
      g.degree = 2 * k + 2;
      g.count = n;
    } else {
      g.degree = k;
      g.count = 2 * n;
      g.tau_paired = true;
    }
    return g;
  };
  long punct = -1;
  for (std::size_t i = 0; i < s.entries.size(); ++i)
    if (s.entries[i].degree == -1 && (punct < 0 || s.entries[i].multiplicity > s.entries[static_cast<std::size_t>(punct)].multiplicity))
      punct = static_cast<long>(i);

  SurfaceStratum out;
  const SurfaceGroup marked = lift(s.marked_degree, 1, Provenance::marked);
  if (s.marked_degree == -1) out.groups.push_back(marked);
  if (punct >= 0) out.groups.push_back(lift(-1, s.entries[static_cast<std::size_t>(punct)].multiplicity, Provenance::puncture));
  if (s.marked_degree != -1) out.groups.push_back(marked);
  for (std::size_t i = 0; i < s.entries.size(); ++i)
    if (static_cast<long>(i) != punct) out.groups.push_back(lift(s.entries[i].degree, s.entries[i].multiplicity, Provenance::interior));
  out.genus = genus(out);
  return out;
}

/// Groups as a sorted multiset of (degree, count, paired), forgetting order and provenance.
inline std::vector<std::tuple<int, int, bool>> shape(const SurfaceStratum& s) {
  std::vector<std::tuple<int, int, bool>> out;
  for (const auto& g : s.groups) out.emplace_back(g.degree, g.count, g.tau_paired);
  std::sort(out.begin(), out.end());
  return out;
}

/// Canonical serialization: groups sorted by (provenance, degree, paired, count) with explicit tags.
inline std::string canonical_form(const SurfaceStratum& s) {
  std::vector<SurfaceGroup> g = s.groups;
  std::sort(g.begin(), g.end(), [](const SurfaceGroup& a, const SurfaceGroup& b) {
    return std::tuple(static_cast<int>(a.provenance), a.degree, a.tau_paired, a.count) <
           std::tuple(static_cast<int>(b.provenance), b.degree, b.tau_paired, b.count);
  });
  std::string out = "[";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0) out += ",";
    out += detail::power(std::to_string(g[i].degree) + (g[i].tau_paired ? "u" : ""), g[i].count) + ":" + to_string(g[i].provenance);
  }
  return out + "] genus=" + std::to_string(s.genus);
}

/**
 * All strata of the n-punctured disc whose punctures are regular points or poles:
 * (k1; -1^n, interior degrees >= 1) with interior sum n - 4 - k1. Ordered by number of
 * interior singularities, then by the ascending list of interior degrees.
 */
inline std::vector<SphereStratum> enumerate_disc_strata(int n) {
  if (n < 3) throw std::invalid_argument("disc strata need at least 3 punctures");
  std::vector<SphereStratum> out;
  std::vector<std::pair<std::vector<int>, SphereStratum>> keyed;
  for (int k1 = -1; k1 <= n - 4; ++k1) {
    const int total = n - 4 - k1;
    // Partitions of `total` as nondecreasing part lists.
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int min_part) -> void {
      if (rest == 0) {
        parts.push_back(cur);
        return;
      }
      for (int p = min_part; p <= rest; ++p) {
        cur.push_back(p);
        self(self, rest - p, p);
        cur.pop_back();
      }
    };
    rec(rec, total, 1);
    for (const auto& part : parts) {
      SphereStratum s;
      s.marked_degree = k1;
      s.entries.push_back({-1, n});
      std::map<int, int> grouped;
      for (int p : part) ++grouped[p];
      for (auto [k, m] : grouped) s.entries.push_back({k, m});
      keyed.emplace_back(part, s);
    }
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  for (auto& [k, s] : keyed) out.push_back(std::move(s));
  return out;
}

}  // namespace padil
