/**
 * Per-n reproduction: disc strata, lifts, polynomial lists below the candidate bound,
 * sieve verdicts, table rows and the minimum-dilatation certificate.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "padil/enumerate.hpp"
#include "padil/lefschetz.hpp"
#include "padil/perron.hpp"
#include "padil/polynomial.hpp"
#include "padil/strata.hpp"

namespace padil {

// ---- reference data ----

/// Braid words use s_i for sigma_i and D_k for sigma_1 ... sigma_k.
struct TheoremRow {
  int n = 0;
  std::string polynomial;
  std::string delta;
  std::string braid;
  std::string stratum;
  std::string note;
};

struct StratumMinimum {
  int n = 0;
  int case_index = 0;  // position in enumerate_disc_strata(n), from 1
  std::string delta;
  std::string polynomial;
  std::string braid;
  bool external = false;  // resolved by train tracks, outside the reach of the sieve
};

class CandidateRegistry {
 public:
  static const CandidateRegistry& reference() {
    static const CandidateRegistry r;
    return r;
  }

  const std::vector<TheoremRow>& theorem() const { return theorem_; }
  const std::vector<StratumMinimum>& minima() const { return minima_; }

  const TheoremRow& row(int n) const {
    for (const auto& r : theorem_)
      if (r.n == n) return r;
    throw std::invalid_argument("no candidate registered for n = " + std::to_string(n) + " (supported: 3..8)");
  }

  IntPolynomial candidate(int n) const { return parse_polynomial(row(n).polynomial); }

  std::vector<StratumMinimum> minima_for(int n) const {
    std::vector<StratumMinimum> out;
    for (const auto& m : minima_)
      if (m.n == n) out.push_back(m);
    return out;
  }

 private:
  CandidateRegistry() {
    theorem_ = {
        {3, "x^2-3x+1", "2.61803", "s1 s2^-1", "(-1;-1^3)", ""},
        {4, "x^4-2x^3-2x+1", "2.29663", "s1 s2 s3^-1", "(-1;-1^4,1)", ""},
        {5, "x^4-x^3-x^2-x+1", "1.72208", "s1 s2 s3 s1 s2 s3 s4 s3^-1", "(0;-1^5,1)", ""},
        {6, "x^4-x^3-x^2-x+1", "1.72208", "s2 s1 s2 s1 (s1 s2 s3 s4 s5)^2", "(0;-1^5,1)",
         "the n = 5 minimizer with its degree-1 singularity punctured"},
        {7, "x^7-2x^4-2x^3+1", "1.46557", "s4^-2 (s1 s2 s3 s4 s5 s6)^2", "(2;-1^7,1)", ""},
        {8, "x^8-2x^5-2x^3+1", "1.41345", "s2^-1 s1^-1 (s1 s2 s3 s4 s5 s6 s7)^5", "(3;-1^8,1)", ""},
    };
    minima_ = {
        {3, 1, "2.61803", "x^2-3x+1", "s1 s2^-1", false},
        {4, 1, "2.61803", "x^3-2x^2-2x+1", "s1 s2 s1 s2 s3^-1 D3", false},
        {4, 2, "2.29663", "x^4-2x^3-2x+1", "s1 s2 s3^-1", false},
        {5, 1, "1.72208", "x^4-x^3-x^2-x+1", "D3 D4 s3^-1", false},
        {5, 2, "1.72208", "x^5-2x^3-2x^2+1", "s1^2 D4^2", false},
        {5, 3, "2.15372", "x^5-2x^4-2x+1", "D3 s4^-1", false},
        {5, 4, "2.01536", "x^6-x^5-4x^3-x+1", "s1 s2 s4^-1 s3^-1", true},
        {6, 1, "1.88320", "x^5-x^4-x^3-x^2-x+1", "D5 s4 s5", false},
        {6, 2, "1.83929", "x^6-x^4-4x^3-x^2+1", "s5 s4^-1 D5^2", false},
        {6, 3, "1.88320", "x^6-2x^4-2x^3-2x^2+1", "s1^2 s4 D5^2", false},
        {6, 4, "2.08102", "x^6-2x^5-2x+1", "D4 s5^-1", true},
        {6, 5, "2.08102", "x^7-x^6-2x^5-2x^2-x+1", "s4 s5^2 s4 D5^2", true},
        {6, 6, "1.88320", "x^7-x^6-2x^4-2x^3-x+1", "D3 s5^-1 s4^-1", false},
        {6, 7, "2.17113", "x^8-2x^7+x^6-4x^5+4x^4-4x^3+x^2-2x+1", "D3 (s3 s4 s5)^-2", true},
        {7, 1, "1.55603", "x^6-x^5-x^4+x^3-x^2-x+1", "s3 s4 s5 s6 s2 s3 s4 D3 D6", false},
        {7, 2, "1.46557", "x^7-2x^4-2x^3+1", "s4^-2 D6^2", false},
        {7, 3, "1.46557", "x^7-2x^4-2x^3+1", "s6^2 D6^2", false},
        {7, 4, "1.55603", "x^7-2x^5-2x^2+1", "s5^2 D6^3", false},
        {7, 5, "2.04249", "x^7-2x^6-2x+1", "s4^-2 D6", true},
        {7, 6, "1.61094", "x^8-x^7-2x^5+2x^4-2x^3-x+1", "s2^-1 s3 s4 s5 D6^2", false},
        {7, 7, "2.47541", "x^8-3x^7+2x^6-2x^5+2x^3-2x^2+3x-1", "D3 s3 (s3 s4 s5 s6)^-1", true},
        {7, 8, "1.80979", "x^8-x^7-2x^5-2x^3-x+1", "D4 s6^-1 s5^-1", true},
        {7, 9, "1.75488", "x^8-x^7-4x^4-x+1", "D3 s6^-1 s5^-1 s4^-1", false},
        {7, 10, "1.61094", "x^9-x^7-2x^6-2x^3-x^2+1", "s5^-1 s4^-1 s3 s4 s5 s6 D6^3", false},
        {7, 11, "2.04249", "x^9-2x^8+x^7-2x^6-2x^3+x^2-2x+1", "s4 s5 s6 s3 s4 s5 s2^-1 s1^-1 D6^-1", true},
        {7, 12, "2.21497", "x^10-2x^9-x^7-x^3-2x+1", "s2 s1^2 s2 D6^-2", true},
    };
  }

  std::vector<TheoremRow> theorem_;
  std::vector<StratumMinimum> minima_;
};

// ---- reports ----

struct RunOptions {
  std::string cache_dir;  // empty: no cache
  unsigned workers = 1;
  int places = 5;
};

struct PolynomialVerdict {
  IntPolynomial polynomial;
  std::string perron;
  SieveVerdict verdict;
};

struct TableRow {
  std::string label;  // s'_i
  SphereStratum stratum;
  SurfaceStratum lifted;
  int genus = 0;
  SieveMode mode = SieveMode::pair;
  int horizon = 0;
  std::size_t polynomial_count = 0;
  std::size_t compatible_count = 0;
  std::vector<IntPolynomial> survivors;
  std::vector<IntPolynomial> pair_survivors;  // joint mode: survivors of the pair sieve
  std::vector<PolynomialVerdict> verdicts;
};

inline TableRow stratum_report(const SphereStratum& s, const IntPolynomial& bound, SieveMode mode, int horizon = 0,
                               const RunOptions& opt = {}) {
  TableRow row;
  row.stratum = s;
  row.lifted = lift_to_double_cover(s);
  row.genus = row.lifted.genus;
  row.mode = mode;
  row.horizon = horizon > 0 ? horizon : default_horizon(row.genus, mode);
  const PolynomialList list = enumerate_cached({2 * row.genus, bound, EnumerationMode::pruned}, opt.cache_dir, opt.workers);
  row.polynomial_count = list.count();
  row.verdicts.resize(list.count());
  detail::parallel_for(list.count(), opt.workers, [&](std::size_t i) {
    const IntPolynomial& p = list.entries[i];
    const auto pd = perron_root(p);
    row.verdicts[i] = {p, perron_approx(p, pd->lower, pd->upper, opt.places), sieve(p, row.lifted, mode, row.horizon)};
  });
  for (const auto& v : row.verdicts) {
    if (v.verdict.compatible) row.survivors.push_back(v.polynomial);
    if (mode == SieveMode::joint && check_pair(v.polynomial, row.lifted, row.horizon).compatible)
      row.pair_survivors.push_back(v.polynomial);
  }
  row.compatible_count = row.survivors.size();
  return row;
}

inline void check_supported(int n) {
  if (n < 3) throw std::invalid_argument("n must be at least 3 (got " + std::to_string(n) + ")");
}

/// One row per disc stratum, bounded by the registered candidate for n.
inline std::vector<TableRow> reproduce_tables(int n, SieveMode mode, int horizon = 0, const RunOptions& opt = {}) {
  check_supported(n);
  const IntPolynomial bound = CandidateRegistry::reference().candidate(n);
  std::vector<TableRow> rows;
  int index = 0;
  for (const auto& s : enumerate_disc_strata(n)) {
    TableRow row = stratum_report(s, bound, mode, horizon, opt);
    row.label = "s'" + std::to_string(++index);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Certificate {
  int n = 0;  // 0 for a single-stratum certificate
  IntPolynomial bound;
  std::string delta;
  SieveMode mode = SieveMode::pair;
  std::string status;  // "certified" or "conditional"
  std::vector<TableRow> rows;

  std::vector<IntPolynomial> survivors() const {
    std::vector<IntPolynomial> out;
    for (const auto& r : rows) out.insert(out.end(), r.survivors.begin(), r.survivors.end());
    return out;
  }
};

inline Certificate make_certificate(int n, const IntPolynomial& bound, SieveMode mode, std::vector<TableRow> rows, int places) {
  Certificate c;
  c.n = n;
  c.bound = bound;
  const auto bd = perron_root(bound);
  if (!bd || !bd->is_perron) throw std::invalid_argument("bound polynomial " + to_string(bound) + " has no certified Perron root");
  c.delta = perron_approx(bound, bd->lower, bd->upper, places);
  c.mode = mode;
  c.rows = std::move(rows);
  c.status = c.survivors().empty() ? "certified" : "conditional";
  return c;
}

/// delta_n >= rho(P_n) over all disc strata, or the list of polynomials the sieve cannot exclude.
inline Certificate certify_minimum(int n, SieveMode mode, int horizon = 0, const RunOptions& opt = {}) {
  auto rows = reproduce_tables(n, mode, horizon, opt);
  return make_certificate(n, CandidateRegistry::reference().candidate(n), mode, std::move(rows), opt.places);
}

/// The same certificate for one stratum against an arbitrary bound.
inline Certificate certify_stratum(const SphereStratum& s, const IntPolynomial& bound, SieveMode mode, int horizon = 0,
                                   const RunOptions& opt = {}) {
  std::vector<TableRow> rows{stratum_report(s, bound, mode, horizon, opt)};
  rows.front().label = "s";
  return make_certificate(0, bound, mode, std::move(rows), opt.places);
}

// ---- rendering ----

inline nlohmann::json to_json(const TableRow& r, bool with_verdicts = false) {
  nlohmann::json j;
  j["case"] = r.label;
  j["stratum"] = render(r.stratum);
  j["lifted"] = render(r.lifted);
  j["genus"] = r.genus;
  j["mode"] = to_string(r.mode);
  j["horizon"] = r.horizon;
  j["n_polys"] = r.polynomial_count;
  j["n_compatible"] = r.compatible_count;
  nlohmann::json surv = nlohmann::json::array();
  for (const auto& p : r.survivors) surv.push_back(p.coeffs());
  j["survivors"] = surv;
  if (r.mode == SieveMode::joint) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : r.pair_survivors) ps.push_back(p.coeffs());
    j["pair_survivors"] = ps;
  }
  if (with_verdicts) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : r.verdicts) {
      nlohmann::json e = to_json(r.lifted, v.verdict);
      e["polynomial"] = to_string(v.polynomial);
      e["coefficients"] = v.polynomial.coeffs();
      e["perron_root"] = v.perron;
      vs.push_back(e);
    }
    j["verdicts"] = vs;
  }
  return j;
}

inline constexpr int kReportFormatVersion = 1;

inline nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["format_version"] = kReportFormatVersion;
  if (c.n > 0) j["n"] = c.n;
  j["bound"] = to_string(c.bound);
  j["delta"] = c.delta;
  j["mode"] = to_string(c.mode);
  j["status"] = c.status;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : c.rows) rows.push_back(to_json(r));
  j["rows"] = rows;
  nlohmann::json surv = nlohmann::json::array();
  for (const auto& p : c.survivors()) surv.push_back(to_string(p));
  j["survivors"] = surv;
  return j;
}

inline std::string to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "stratum,lifted,genus,n_polys,n_compatible\n";
  for (const auto& r : rows)
    out << '"' << render(r.stratum) << "\",\"" << render(r.lifted) << "\"," << r.genus << ',' << r.polynomial_count << ','
        << r.compatible_count << '\n';
  return out.str();
}

inline std::string to_markdown(const Certificate& c) {
  std::ostringstream out;
  if (c.n > 0)
    out << "## Strata of the " << c.n << "-punctured disc\n\n";
  out << "Bound: " << to_string(c.bound) << " (" << c.delta << "), sieve: " << to_string(c.mode) << "\n\n";
  out << "| case | stratum on P^1 | stratum on S | genus of S | # polynomials | # compatible |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& r : c.rows)
    out << "| " << r.label << " | " << render(r.stratum) << " | " << render(r.lifted) << " | " << r.genus << " | "
        << r.polynomial_count << " | " << r.compatible_count << " |\n";
  out << "\nStatus: " << c.status << "\n";
  bool any = false;
  for (const auto& r : c.rows) {
    if (r.mode == SieveMode::joint)
      for (const auto& p : r.pair_survivors)
        if (std::find(r.survivors.begin(), r.survivors.end(), p) == r.survivors.end()) {
          if (!any) out << "\nEliminated by the joint sieve:\n\n";
          any = true;
          out << "- " << r.label << ": " << to_string(p) << "\n";
        }
  }
  const auto surv = c.survivors();
  if (!surv.empty()) {
    out << "\nSurvivors:\n\n";
    for (const auto& r : c.rows)
      for (const auto& v : r.verdicts)
        if (v.verdict.compatible) out << "- " << r.label << ": " << to_string(v.polynomial) << " (" << v.perron << ")\n";
  }
  return out.str();
}

}  // namespace padil
