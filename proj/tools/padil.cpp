// padil: enumeration, lifting, sieving and table reproduction from the command line.
//
// Exit status: 0 success, 1 internal error, 2 usage or validation error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "padil/pipeline.hpp"

namespace {

struct RunConfig {
  int horizon = 0;  // 0: per-genus default
  std::string mode = "pair";
  std::string format;  // empty: text, or md for reproduce
  std::string cache_dir;
  unsigned workers = 0;
  int precision = 5;
};

struct Inputs {
  int degree = 0;
  std::string bound;
  bool oracle = false;
  std::string stratum;
  int n = 0;
};

std::string pick_format(const RunConfig& cfg, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed)
    if (f == a) return f;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw std::invalid_argument("unsupported format '" + f + "' for this command (expected " + list + ")");
}

padil::RunOptions options(const RunConfig& cfg) {
  padil::RunOptions o;
  o.cache_dir = cfg.cache_dir;
  o.workers = cfg.workers == 0 ? padil::detail::default_workers() : cfg.workers;
  o.places = cfg.precision;
  return o;
}

std::string root_text(const padil::IntPolynomial& p, int places) {
  const auto pd = padil::perron_root(p);
  return padil::perron_approx(p, pd->lower, pd->upper, places);
}

void run_enumerate(const RunConfig& cfg, const Inputs& in, std::ostream& out) {
  const std::string format = pick_format(cfg, "text", {"text", "json"});
  const padil::IntPolynomial bound = padil::parse_polynomial(in.bound);
  const auto opt = options(cfg);
  const padil::PolynomialList list =
      in.oracle ? padil::brute_force_oracle(in.degree, bound, opt.workers)
                : padil::enumerate_cached({in.degree, bound, padil::EnumerationMode::pruned}, opt.cache_dir, opt.workers);
  if (format == "json") {
    out << padil::to_json(list).dump(1) << "\n";
    return;
  }
  for (const auto& p : list.entries) out << padil::to_string(p) << " " << root_text(p, cfg.precision) << "\n";
}

void run_lift(const RunConfig& cfg, const Inputs& in, std::ostream& out) {
  const std::string format = pick_format(cfg, "text", {"text", "json"});
  const padil::SphereStratum s = padil::parse_sphere_stratum(in.stratum);
  const padil::SurfaceStratum lifted = padil::lift_to_double_cover(s);
  if (format == "json") {
    out << nlohmann::json{{"stratum", padil::render(s)}, {"lifted", padil::render(lifted)}, {"genus", lifted.genus}}.dump(1)
        << "\n";
    return;
  }
  out << padil::render(lifted) << " genus=" << lifted.genus << "\n";
}

void run_sieve(const RunConfig& cfg, const Inputs& in, std::ostream& out) {
  const std::string format = pick_format(cfg, "text", {"text", "md", "csv", "json"});
  const padil::SphereStratum s = padil::parse_sphere_stratum(in.stratum);
  const padil::IntPolynomial bound = padil::parse_polynomial(in.bound);
  const padil::SieveMode mode = padil::parse_sieve_mode(cfg.mode);
  const padil::Certificate c = padil::certify_stratum(s, bound, mode, cfg.horizon, options(cfg));
  const padil::TableRow& row = c.rows.front();
  if (format == "json") {
    nlohmann::json j = padil::to_json(row, true);
    j["format_version"] = padil::kReportFormatVersion;
    j["bound"] = padil::to_string(bound);
    j["status"] = c.status;
    out << j.dump(1) << "\n";
  } else if (format == "csv") {
    out << padil::to_csv(c.rows);
  } else if (format == "md") {
    out << padil::to_markdown(c);
  } else {
    out << padil::render(row.stratum) << " -> " << padil::render(row.lifted) << " genus=" << row.genus
        << " mode=" << padil::to_string(row.mode) << " horizon=" << row.horizon << " polynomials=" << row.polynomial_count
        << " compatible=" << row.compatible_count << "\n";
    for (const auto& v : row.verdicts) {
      out << (v.verdict.compatible ? "compatible   " : "incompatible ") << padil::to_string(v.polynomial) << " " << v.perron;
      if (!v.verdict.compatible)
        out << " [sign " << (v.verdict.obstruction_sign > 0 ? "+" : "-") << ", " << v.verdict.obstruction << "]";
      out << "\n";
    }
  }
}

void run_reproduce(const RunConfig& cfg, const Inputs& in, std::ostream& out) {
  const std::string format = pick_format(cfg, "md", {"md", "csv", "json"});
  if (in.n < 3 || in.n > 8) throw std::invalid_argument("--n must be in 3..8 (got " + std::to_string(in.n) + ")");
  const padil::Certificate c = padil::certify_minimum(in.n, padil::parse_sieve_mode(cfg.mode), cfg.horizon, options(cfg));
  if (format == "json")
    out << padil::to_json(c).dump(1) << "\n";
  else if (format == "csv")
    out << padil::to_csv(c.rows);
  else
    out << padil::to_markdown(c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certification tools for minimum pseudo-Anosov braid dilatation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file; explicit flags take precedence");

  RunConfig cfg;
  Inputs in;
  app.add_option("--iters", cfg.horizon, "Lefschetz horizon M (0 = max(12, 2g+2))")->check(CLI::NonNegativeNumber);
  app.add_option("--mode", cfg.mode, "sieve mode")->check(CLI::IsMember({"basic", "pair", "joint"}));
  app.add_option("--format", cfg.format, "text, md, csv or json");
  app.add_option("--cache-dir", cfg.cache_dir, "enumeration cache directory")->envname("DILATATION_CACHE_DIR");
  app.add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
  app.add_option("--precision", cfg.precision, "decimal places for roots")->check(CLI::Range(1, 60));

  auto* enumerate = app.add_subcommand("enumerate", "list reciprocal Perron polynomials below a bound");
  enumerate->add_option("--degree", in.degree, "even degree 2g")->required();
  enumerate->add_option("--bound", in.bound, "bound polynomial")->required();
  enumerate->add_flag("--oracle", in.oracle, "use the brute-force box enumeration (degree <= 8)");

  auto* lift = app.add_subcommand("lift", "lift a sphere stratum to the orientation double cover");
  lift->add_option("--stratum", in.stratum, "stratum such as (-1;-1^6,1^3)")->required();

  auto* sieve = app.add_subcommand("sieve", "sieve every polynomial below a bound on one stratum");
  sieve->add_option("--stratum", in.stratum, "sphere stratum")->required();
  sieve->add_option("--bound", in.bound, "bound polynomial")->required();

  auto* reproduce = app.add_subcommand("reproduce", "tables and certificate for the n-punctured disc");
  reproduce->add_option("--n", in.n, "number of punctures (3..8)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream out;
  try {
    if (*enumerate)
      run_enumerate(cfg, in, out);
    else if (*lift)
      run_lift(cfg, in, out);
    else if (*sieve)
      run_sieve(cfg, in, out);
    else
      run_reproduce(cfg, in, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  std::cout << out.str() << std::flush;
  return 0;
}
