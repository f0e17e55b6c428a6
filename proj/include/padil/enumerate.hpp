/**
 * Enumeration of degree-2g monic reciprocal integer polynomials whose Perron root lies
 * strictly between 1 and the Perron root of a bound polynomial.
 *
 * A reciprocal P of degree 2g factors as prod (x^2 - t_i x + 1) with t_i = z_i + 1/z_i.
 * If every root has modulus at most B then |t_i| <= T = B + 1/B, which gives
 *   |p_m| <= g (B^m + B^-m)               for the power sums, and
 *   |a_k| <= [x^k] (1 + T x + x^2)^g      for the coefficients.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "padil/perron.hpp"
#include "padil/polynomial.hpp"

namespace padil {

enum class EnumerationMode { pruned, brute_force_oracle };

inline const char* to_string(EnumerationMode m) { return m == EnumerationMode::pruned ? "pruned" : "brute-force-oracle"; }

struct EnumerationQuery {
  int degree = 2;
  IntPolynomial bound;
  EnumerationMode mode = EnumerationMode::pruned;
};

struct PolynomialList {
  std::vector<IntPolynomial> entries;
  EnumerationQuery query;

  std::size_t count() const { return entries.size(); }
};

namespace detail {

struct SearchBounds {
  int g = 0;
  Rational b;                          // rational upper bound on the Perron root of the bound polynomial
  std::vector<std::int64_t> coeff;     // coeff[k]: bound on |a_k|, k = 0..g
  std::vector<std::int64_t> power;     // power[m]: bound on |p_m|, m = 0..horizon
};

inline std::int64_t floor_to_int(const Rational& q) {
  Integer f = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
  if (q < 0 && f * boost::multiprecision::denominator(q) != boost::multiprecision::numerator(q)) f -= 1;
  if (f > Integer(INT64_MAX / 4)) return INT64_MAX / 4;
  return f.convert_to<std::int64_t>();
}

/// Rational B >= rho(bound), tight to about 1e-9.
inline Rational bound_upper(const IntPolynomial& bound) {
  const auto bd = perron_root(bound);
  if (!bd || !bd->is_perron) throw std::invalid_argument("bound polynomial " + to_string(bound) + " has no certified Perron root");
  return refine(bound, *bd, Rational(1, 1000000000)).upper;
}

inline SearchBounds make_bounds(int degree, const IntPolynomial& bound, int horizon) {
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("degree must be even and positive");
  SearchBounds sb;
  sb.g = degree / 2;
  sb.b = bound_upper(bound);
  const Rational t = sb.b + 1 / sb.b;
  // (1 + T x + x^2)^g, coefficientwise.
  std::vector<Rational> poly{Rational(1)};
  for (int i = 0; i < sb.g; ++i) {
    std::vector<Rational> next(poly.size() + 2, Rational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k];
      next[k + 1] += poly[k] * t;
      next[k + 2] += poly[k];
    }
    poly = std::move(next);
  }
  for (int k = 0; k <= sb.g; ++k) sb.coeff.push_back(floor_to_int(poly[static_cast<std::size_t>(k)]));
  Rational bm = 1;
  sb.power.push_back(2 * sb.g);
  for (int m = 1; m <= horizon; ++m) {
    bm *= sb.b;
    sb.power.push_back(floor_to_int(Rational(sb.g) * (bm + 1 / bm)));
  }
  return sb;
}

/// Certified test: P is Perron with 1 < rho(P) < rho(bound).
inline bool below_bound(const IntPolynomial& p, const IntPolynomial& bound, const PerronData& bd) {
  const auto pd = perron_root(p);
  if (!pd || !pd->is_perron) return false;
  return compare_perron(p, *pd, bound, bd) == Ordering::less;
}

inline IntPolynomial reciprocal_from_half(const std::vector<std::int64_t>& a, int g) {
  // a[i] = coefficient of x^(2g-i), i = 0..g.
  std::vector<Coeff> asc(static_cast<std::size_t>(2 * g) + 1);
  for (int i = 0; i <= g; ++i) {
    asc[static_cast<std::size_t>(2 * g - i)] = a[static_cast<std::size_t>(i)];
    asc[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
  }
  return IntPolynomial(std::move(asc));
}

/// Power sums p_{g+1}..p_horizon stay within the bound (overflow counts as a violation).
inline bool tail_within(const std::vector<std::int64_t>& full, std::vector<std::int64_t>& p, const SearchBounds& sb) {
  const int n = static_cast<int>(full.size()) - 1;
  const int horizon = static_cast<int>(sb.power.size()) - 1;
  for (int m = static_cast<int>(p.size()); m <= horizon; ++m) {
    std::int64_t s = 0;
    if (m <= n && __builtin_mul_overflow(static_cast<std::int64_t>(m), full[static_cast<std::size_t>(m)], &s)) return false;
    for (int i = 1; i <= std::min(m - 1, n); ++i) {
      std::int64_t t;
      if (__builtin_mul_overflow(full[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(m - i)], &t)) return false;
      if (__builtin_add_overflow(s, t, &s)) return false;
    }
    s = -s;
    if (s > sb.power[static_cast<std::size_t>(m)] || s < -sb.power[static_cast<std::size_t>(m)]) return false;
    p.push_back(s);
  }
  return true;
}

/**
 * Depth-first search over (p_1, ..., p_g). At level m the integer p_m ranges over
 * |p_m| <= power[m] subject to m | (p_m + sum a_i p_{m-i}), which fixes a_m; the
 * coefficient box prunes a_m as well.
 */
class PowerSumSearch {
 public:
  PowerSumSearch(const SearchBounds& sb, const IntPolynomial& bound, const PerronData& bd)
      : sb_(sb), bound_(bound), bd_(bd), a_(static_cast<std::size_t>(sb.g) + 1, 0), p_(1, 2 * sb.g) {
    a_[0] = 1;
  }

  /// Runs the subtree with the given a_1.
  std::vector<IntPolynomial> run(std::int64_t a1) {
    out_.clear();
    const std::int64_t p1 = -a1;
    if (std::abs(p1) > sb_.power[1] || std::abs(a1) > sb_.coeff[1]) return {};
    a_[1] = a1;
    p_.resize(1);
    p_.push_back(p1);
    descend(2);
    return std::move(out_);
  }

  std::int64_t leaves() const { return leaves_; }

 private:
  void descend(int m) {
    if (m > sb_.g) {
      leaf();
      return;
    }
    std::int64_t s = 0;  // sum_{i=1}^{m-1} a_i p_{m-i}
    for (int i = 1; i < m; ++i) s += a_[static_cast<std::size_t>(i)] * p_[static_cast<std::size_t>(m - i)];
    // p_m = -m a_m - s with |p_m| <= P, so a_m in [(-P - s)/m, (P - s)/m].
    const std::int64_t big_p = sb_.power[static_cast<std::size_t>(m)];
    std::int64_t lo = ceil_div(-big_p - s, m);
    std::int64_t hi = floor_div(big_p - s, m);
    lo = std::max(lo, -sb_.coeff[static_cast<std::size_t>(m)]);
    hi = std::min(hi, sb_.coeff[static_cast<std::size_t>(m)]);
    for (std::int64_t am = lo; am <= hi; ++am) {
      a_[static_cast<std::size_t>(m)] = am;
      p_.resize(static_cast<std::size_t>(m));
      p_.push_back(-m * am - s);
      descend(m + 1);
    }
  }

  void leaf() {
    ++leaves_;
    const int g = sb_.g;
    std::vector<std::int64_t> full(static_cast<std::size_t>(2 * g) + 1);
    for (int i = 0; i <= g; ++i) full[static_cast<std::size_t>(i)] = full[static_cast<std::size_t>(2 * g - i)] = a_[static_cast<std::size_t>(i)];
    std::vector<std::int64_t> p = p_;
    if (!tail_within(full, p, sb_)) return;
    IntPolynomial cand = reciprocal_from_half(a_, g);
    if (below_bound(cand, bound_, bd_)) out_.push_back(std::move(cand));
  }

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

  const SearchBounds& sb_;
  const IntPolynomial& bound_;
  const PerronData& bd_;
  std::vector<std::int64_t> a_;
  std::vector<std::int64_t> p_;
  std::vector<IntPolynomial> out_;
  std::int64_t leaves_ = 0;
};

inline void canonical_sort(std::vector<IntPolynomial>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Runs `task(i)` for i in [0, count) on `workers` threads.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace detail

/// The pruned power-sum search; shards by a_1 over `workers` threads (0 = hardware concurrency).
inline PolynomialList enumerate_perron(const EnumerationQuery& query, unsigned workers = 0) {
  if (query.degree < 2 || query.degree % 2 != 0) throw std::invalid_argument("degree must be even and positive");
  const int g = query.degree / 2;
  const detail::SearchBounds sb = detail::make_bounds(query.degree, query.bound, 4 * g);
  const PerronData bd = *perron_root(query.bound);
  std::vector<std::int64_t> shards;
  for (std::int64_t a1 = -sb.coeff[1]; a1 <= sb.coeff[1]; ++a1) shards.push_back(a1);
  std::vector<std::vector<IntPolynomial>> found(shards.size());
  detail::parallel_for(shards.size(), workers == 0 ? detail::default_workers() : workers, [&](std::size_t i) {
    detail::PowerSumSearch search(sb, query.bound, bd);
    found[i] = search.run(shards[i]);
  });
  PolynomialList out;
  out.query = query;
  out.query.mode = EnumerationMode::pruned;
  for (auto& f : found) out.entries.insert(out.entries.end(), f.begin(), f.end());
  detail::canonical_sort(out.entries);
  return out;
}

/**
 * Independent oracle: every coefficient vector in the box |a_k| <= [x^k](1 + T x + x^2)^g,
 * a crude power-sum filter |p_m| <= 2g B^m, then per-candidate certification.
 */
inline PolynomialList brute_force_oracle(int degree, const IntPolynomial& bound, unsigned workers = 0) {
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("degree must be even and positive");
  if (degree > 8) throw std::invalid_argument("brute-force oracle supports degree <= 8");
  const int g = degree / 2;
  const detail::SearchBounds sb = detail::make_bounds(degree, bound, 0);
  const PerronData bd = *perron_root(bound);
  std::vector<std::int64_t> crude;
  {
    Rational bm = 1;
    for (int m = 0; m <= 2 * degree; ++m) {
      crude.push_back(detail::floor_to_int(Rational(2 * g) * bm));
      bm *= sb.b;
    }
  }
  std::vector<std::int64_t> shards;
  for (std::int64_t a1 = -sb.coeff[1]; a1 <= sb.coeff[1]; ++a1) shards.push_back(a1);
  std::vector<std::vector<IntPolynomial>> found(shards.size());
  detail::parallel_for(shards.size(), workers == 0 ? detail::default_workers() : workers, [&](std::size_t shard) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(g) + 1, 0);
    a[0] = 1;
    a[1] = shards[shard];
    std::vector<std::int64_t> full(static_cast<std::size_t>(degree) + 1);
    std::vector<std::int64_t> p(static_cast<std::size_t>(2 * degree) + 1);
    auto visit = [&] {
      for (int i = 0; i <= g; ++i) full[static_cast<std::size_t>(i)] = full[static_cast<std::size_t>(degree - i)] = a[static_cast<std::size_t>(i)];
      for (int m = 1; m <= 2 * degree; ++m) {
        std::int64_t s = m <= degree ? m * full[static_cast<std::size_t>(m)] : 0;
        for (int i = 1; i <= std::min(m - 1, degree); ++i) s += full[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(m - i)];
        p[static_cast<std::size_t>(m)] = -s;
        if (std::abs(p[static_cast<std::size_t>(m)]) > crude[static_cast<std::size_t>(m)]) return;
      }
      IntPolynomial cand = detail::reciprocal_from_half(a, g);
      if (detail::below_bound(cand, bound, bd)) found[shard].push_back(std::move(cand));
    };
    auto rec = [&](auto&& self, int k) -> void {
      if (k > g) {
        visit();
        return;
      }
      for (std::int64_t v = -sb.coeff[static_cast<std::size_t>(k)]; v <= sb.coeff[static_cast<std::size_t>(k)]; ++v) {
        a[static_cast<std::size_t>(k)] = v;
        self(self, k + 1);
      }
    };
    rec(rec, 2);
  });
  PolynomialList out;
  out.query = {degree, bound, EnumerationMode::brute_force_oracle};
  for (auto& f : found) out.entries.insert(out.entries.end(), f.begin(), f.end());
  detail::canonical_sort(out.entries);
  return out;
}

inline PolynomialList run_query(const EnumerationQuery& q, unsigned workers = 0) {
  return q.mode == EnumerationMode::pruned ? enumerate_perron(q, workers) : brute_force_oracle(q.degree, q.bound, workers);
}

// ---- cache ----

inline constexpr int kCacheFormatVersion = 1;

inline nlohmann::json to_json(const PolynomialList& list) {
  nlohmann::json j;
  j["format_version"] = kCacheFormatVersion;
  j["query"] = {{"degree", list.query.degree}, {"bound", list.query.bound.coeffs()}, {"mode", to_string(list.query.mode)}};
  j["count"] = list.count();
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : list.entries) entries.push_back(e.coeffs());
  j["entries"] = entries;
  return j;
}

inline PolynomialList list_from_json(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != kCacheFormatVersion) throw std::runtime_error("unsupported cache format version");
  PolynomialList out;
  out.query.degree = j.at("query").at("degree").get<int>();
  out.query.bound = IntPolynomial(j.at("query").at("bound").get<std::vector<Coeff>>());
  out.query.mode = j.at("query").at("mode").get<std::string>() == "pruned" ? EnumerationMode::pruned : EnumerationMode::brute_force_oracle;
  for (const auto& e : j.at("entries")) out.entries.emplace_back(e.get<std::vector<Coeff>>());
  if (out.entries.size() != j.at("count").get<std::size_t>()) throw std::runtime_error("cache entry count mismatch");
  return out;
}

/// File name keyed by degree and the bound's ascending coefficient array.
inline std::string cache_key(int degree, const IntPolynomial& bound) {
  std::string key = "perron_d" + std::to_string(degree) + "_b";
  for (std::size_t i = 0; i < bound.coeffs().size(); ++i) {
    if (i > 0) key += "_";
    key += std::to_string(bound.coeffs()[i]);
  }
  return key + ".json";
}

/// Pruned enumeration through an on-disk cache directory (empty = no cache).
inline PolynomialList enumerate_cached(const EnumerationQuery& query, const std::string& cache_dir, unsigned workers = 0) {
  if (cache_dir.empty()) return run_query(query, workers);
  namespace fs = std::filesystem;
  const fs::path file = fs::path(cache_dir) / cache_key(query.degree, query.bound);
  if (fs::exists(file)) {
    std::ifstream in(file);
    try {
      PolynomialList cached = list_from_json(nlohmann::json::parse(in));
      if (cached.query.degree == query.degree && cached.query.bound == query.bound) {
        cached.query.mode = query.mode;
        return cached;
      }
    } catch (const std::exception&) {
      // Unreadable cache files are recomputed and overwritten.
    }
  }
  PolynomialList list = run_query(query, workers);
  fs::create_directories(cache_dir);
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << to_json(list).dump(1) << "\n";
  }
  fs::rename(tmp, file);
  return list;
}

}  // namespace padil
