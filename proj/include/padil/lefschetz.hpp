/**
 * Lefschetz compatibility sieve.
 *
 * A candidate map acts on the tracked points of a surface stratum (lifts of the marked
 * point, the punctures and the interior singularities) by a permutation commuting with
 * the covering involution tau, and rotates the separatrices at each cycle. Every other
 * periodic point is anonymous and regular. For each iterate m the Lefschetz number of
 * phi^m must equal the index sum over its fixed points:
 *
 *   L_m = F_m + eps_m N_m,   N_m = sum_{p | m} p c_p,
 *
 * with F_m the forced contribution of the tracked points, c_p >= 0 the number of
 * anonymous orbits of exact period p, and eps_m = -1 when the m-th power has positive
 * dominant eigenvalue (regular index -1) and +1 otherwise (every index is +1).
 *
 * Rotations. A degree-2d point has 2(d+1) prongs alternating outgoing and incoming. The
 * first return map of a cycle turns them by s in Z_{2(d+1)}; s is even exactly when the
 * first return map preserves the orientation of the unstable foliation. When phi^m
 * preserves it, phi^m fixes the separatrices at a point of its cycle iff (m/c) s = 0
 * mod 2(d+1), and then the index is 1 - 2(d+1); otherwise it is +1.
 *
 * Tau-paired points. The 2k points of a paired group form k tau-orbits. A cycle of
 * length c on tau-orbits is either split (two phi-cycles of length c exchanged by tau)
 * or merged (one phi-cycle of length 2c with phi^c = tau on it). For a merged cycle the
 * rotation recorded is that of tau phi^c, whose orientation behaviour is opposite to
 * that of phi^c because tau reverses the foliation.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "padil/polynomial.hpp"
#include "padil/strata.hpp"

namespace padil {

enum class SieveMode { basic, pair, joint };

inline const char* to_string(SieveMode m) {
  switch (m) {
    case SieveMode::basic: return "basic";
    case SieveMode::pair: return "pair";
    case SieveMode::joint: return "joint";
  }
  return "?";
}

inline SieveMode parse_sieve_mode(const std::string& s) {
  if (s == "basic") return SieveMode::basic;
  if (s == "pair") return SieveMode::pair;
  if (s == "joint") return SieveMode::joint;
  throw std::invalid_argument("unknown sieve mode '" + s + "' (expected basic, pair or joint)");
}

/// max(12, 2g + 2); the joint sieve uses at least 14 from genus 5 on.
inline int default_horizon(int genus, SieveMode mode = SieveMode::pair) {
  int m = std::max(12, 2 * genus + 2);
  if (mode == SieveMode::joint && genus >= 5) m = std::max(m, 14);
  return m;
}

/**
 * Index of the k-th first return of a fixed point of half-degree d whose first return
 * map turns the outgoing separatrices by r in Z_{d+1}.
 */
inline int index_of_iterate(int d, int r, int k, bool sign_positive) {
  if (!sign_positive) return 1;
  const long turn = static_cast<long>(k) * r % (d + 1);
  return turn == 0 ? 1 - 2 * (d + 1) : 1;
}

/// One cycle of the action on tracked points.
struct CycleSpec {
  std::size_t group = 0;  // index into SurfaceStratum::groups
  int length = 1;         // on points for unpaired groups, on tau-orbits for paired groups
  bool merged = false;    // paired groups only
  int rotation = 0;       // in Z_{2(d+1)}
  friend auto operator<=>(const CycleSpec&, const CycleSpec&) = default;
};

struct SingularityAction {
  std::vector<CycleSpec> cycles;
};

/// counts[p - 1] = number of anonymous orbits of exact period p.
struct OrbitProfile {
  std::vector<std::int64_t> counts;
};

/// Joint witness: split[p - 1] tau-exchanged pairs of period-p orbits, invariant[p - 1] tau-invariant orbits.
struct TauOrbits {
  std::vector<std::int64_t> split;
  std::vector<std::int64_t> invariant;
};

struct Witness {
  int sign = 1;
  SingularityAction action;
  OrbitProfile orbits;
  std::optional<TauOrbits> tau;
};

struct SieveVerdict {
  bool compatible = false;
  SieveMode mode = SieveMode::basic;
  int horizon = 0;
  std::vector<Witness> witnesses;  // one per sign tested (basic: 1, pair: 2, joint: 3)
  int obstruction_iterate = 0;     // incompatible only
  int obstruction_sign = 0;
  std::string obstruction;
};

namespace detail {

inline int half_degree(const SurfaceGroup& g) { return g.degree / 2; }

inline int positive_mod(long a, long n) { return static_cast<int>(((a % n) + n) % n); }

/// Index of phi^m at a point of the cycle, given that phi^m fixes it and preserves orientation.
inline int oriented_index(int d, int rotation, int k) {
  const int prongs = 2 * (d + 1);
  const int turn = positive_mod(static_cast<long>(k) * rotation, prongs);
  return index_of_iterate(d, turn / 2, 1, true);
}

/// Forced contribution of one cycle to L(phi^m), m = 1..M, for a map of sign `sign`.
inline void add_cycle(const SurfaceGroup& g, const CycleSpec& c, int sign, int horizon, std::vector<std::int64_t>& phi) {
  const int d = half_degree(g);
  for (int m = 1; m <= horizon; ++m) {
    const bool positive = sign > 0 || m % 2 == 0;
    const std::size_t slot = static_cast<std::size_t>(m - 1);
    if (!g.tau_paired || !c.merged) {
      if (m % c.length != 0) continue;
      const int points = g.tau_paired ? 2 * c.length : c.length;
      const int idx = positive ? oriented_index(d, c.rotation, m / c.length) : 1;
      phi[slot] += static_cast<std::int64_t>(points) * idx;
    } else {
      if (m % (2 * c.length) != 0) continue;
      phi[slot] += static_cast<std::int64_t>(2 * c.length) * oriented_index(d, c.rotation, m / c.length);
    }
  }
}

/// Fixed tracked points of tau phi^m (all of index +1), m = 1..M.
inline void add_cycle_tau(const SurfaceGroup& g, const CycleSpec& c, int horizon, std::vector<std::int64_t>& psi) {
  for (int m = 1; m <= horizon; ++m) {
    if (m % c.length != 0) continue;
    const std::size_t slot = static_cast<std::size_t>(m - 1);
    if (!g.tau_paired)
      psi[slot] += c.length;
    else if (c.merged && (m / c.length) % 2 != 0)
      psi[slot] += 2 * c.length;
  }
}

/// Rotation parity: odd iff the first return map reverses the unstable orientation.
inline bool rotation_odd(const SurfaceGroup& g, const CycleSpec& c, int sign) {
  const bool first_return_negative = sign < 0 && c.length % 2 != 0;
  return g.tau_paired && c.merged ? !first_return_negative : first_return_negative;
}

}  // namespace detail

/// F_m for m = 1..M; tracked degree-0 points count like regular points of their cycle.
inline std::vector<std::int64_t> forced_contributions(const SurfaceStratum& s, const SingularityAction& a, int sign, int horizon) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(horizon), 0);
  for (const auto& c : a.cycles) detail::add_cycle(s.groups.at(c.group), c, sign, horizon, out);
  return out;
}

/// Fixed tracked points of tau phi^m, with phi of positive sign.
inline std::vector<std::int64_t> forced_tau_fixed(const SurfaceStratum& s, const SingularityAction& a, int horizon) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(horizon), 0);
  for (const auto& c : a.cycles) detail::add_cycle_tau(s.groups.at(c.group), c, horizon, out);
  return out;
}

/// The action covers every tracked point once, respects groups, parities and the marked point.
inline bool valid_action(const SurfaceStratum& s, const SingularityAction& a, int sign) {
  std::vector<int> used(s.groups.size(), 0);
  for (const auto& c : a.cycles) {
    if (c.group >= s.groups.size() || c.length < 1) return false;
    const auto& g = s.groups[c.group];
    if (!g.tau_paired && c.merged) return false;
    if (c.rotation < 0 || c.rotation >= 2 * (detail::half_degree(g) + 1)) return false;
    if ((c.rotation % 2 != 0) != detail::rotation_odd(g, c, sign)) return false;
    if (g.provenance == Provenance::marked && c.length != 1) return false;
    used[c.group] += g.tau_paired ? 2 * c.length : c.length;
  }
  for (std::size_t i = 0; i < s.groups.size(); ++i)
    if (used[i] != s.groups[i].count) return false;
  return true;
}

/// Cycle notation: group i's points are labelled by letter i; tau partners carry a prime.
inline std::string cycle_notation(const SurfaceStratum& s, const SingularityAction& a) {
  std::vector<int> next(s.groups.size(), 1);
  std::string out;
  for (const auto& c : a.cycles) {
    const std::string letter(1, static_cast<char>('A' + static_cast<int>(c.group % 26)));
    std::vector<std::string> pts;
    for (int i = 0; i < c.length; ++i) pts.push_back(letter + std::to_string(next[c.group]++));
    auto cyc = [](const std::vector<std::string>& v, const std::string& suffix) {
      std::string r = "(";
      for (std::size_t i = 0; i < v.size(); ++i) r += (i > 0 ? " " : "") + v[i] + suffix;
      return r + ")";
    };
    if (!s.groups[c.group].tau_paired) {
      out += cyc(pts, "");
    } else if (!c.merged) {
      out += cyc(pts, "") + cyc(pts, "'");
    } else {
      std::vector<std::string> both = pts;
      for (const auto& p : pts) both.push_back(p + "'");
      out += cyc(both, "");
    }
  }
  return out;
}

/**
 * Orbit counts from the fixed-point counts N_1..N_M of the iterates by Moebius inversion,
 * p c_p = sum_{q | p} mu(p/q) N_q. Absent unless every c_p is a nonnegative integer.
 */
inline std::optional<OrbitProfile> orbit_feasibility(const std::vector<std::int64_t>& fixed_counts);

namespace detail {

inline int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

/// p c_p for p = 1..M (no feasibility check).
inline std::vector<std::int64_t> moebius_invert(const std::vector<std::int64_t>& n) {
  const int horizon = static_cast<int>(n.size());
  std::vector<std::int64_t> out(n.size(), 0);
  for (int p = 1; p <= horizon; ++p)
    for (int q = 1; q <= p; ++q)
      if (p % q == 0) out[static_cast<std::size_t>(p - 1)] += moebius(p / q) * n[static_cast<std::size_t>(q - 1)];
  return out;
}

/// First p with p c_p negative or not divisible by p; 0 if none.
inline int first_orbit_failure(const std::vector<std::int64_t>& weighted) {
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    const auto p = static_cast<std::int64_t>(i + 1);
    if (weighted[i] < 0 || weighted[i] % p != 0) return static_cast<int>(p);
  }
  return 0;
}

}  // namespace detail

inline std::optional<OrbitProfile> orbit_feasibility(const std::vector<std::int64_t>& fixed_counts) {
  const auto weighted = detail::moebius_invert(fixed_counts);
  if (detail::first_orbit_failure(weighted) != 0) return std::nullopt;
  OrbitProfile out;
  for (std::size_t i = 0; i < weighted.size(); ++i) out.counts.push_back(weighted[i] / static_cast<std::int64_t>(i + 1));
  return out;
}

/**
 * All distinct forced-contribution vectors of a stratum at one sign and horizon, each with a
 * representative action. Joint models (sign +) also carry the tau phi fixed counts.
 */
class SieveModel {
 public:
  struct Entry {
    std::vector<std::int64_t> phi;
    std::vector<std::int64_t> psi;
    SingularityAction action;
  };

  SieveModel(const SurfaceStratum& s, int sign, int horizon, bool joint) : sign_(sign), horizon_(horizon), joint_(joint) {
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    if (joint && sign < 0) throw std::invalid_argument("joint model requires the positive sign");
    std::map<Key, SingularityAction> acc;
    acc.emplace(Key{zeros(), zeros()}, SingularityAction{});
    for (std::size_t gi = 0; gi < s.groups.size(); ++gi) {
      const auto options = group_options(s, gi);
      std::map<Key, SingularityAction> next;
      for (const auto& [key, action] : acc)
        for (const auto& [okey, oaction] : options) {
          Key sum = key;
          for (std::size_t i = 0; i < sum.first.size(); ++i) {
            sum.first[i] += okey.first[i];
            sum.second[i] += okey.second[i];
          }
          if (next.count(sum) != 0) continue;
          SingularityAction merged = action;
          merged.cycles.insert(merged.cycles.end(), oaction.cycles.begin(), oaction.cycles.end());
          next.emplace(std::move(sum), std::move(merged));
        }
      acc = std::move(next);
    }
    for (auto& [key, action] : acc) entries_.push_back({key.first, key.second, std::move(action)});
  }

  const std::vector<Entry>& entries() const { return entries_; }
  int sign() const { return sign_; }
  int horizon() const { return horizon_; }
  bool joint() const { return joint_; }

 private:
  using Key = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;

  std::vector<std::int64_t> zeros() const { return std::vector<std::int64_t>(static_cast<std::size_t>(horizon_), 0); }

  /// Candidate cycles (length, merged, rotation) for one group, in a fixed order.
  std::vector<CycleSpec> cycle_kinds(const SurfaceGroup& g, std::size_t gi, int max_length) const {
    std::vector<CycleSpec> out;
    const int prongs = 2 * (detail::half_degree(g) + 1);
    for (int c = 1; c <= max_length; ++c)
      for (int merged = 0; merged <= (g.tau_paired ? 1 : 0); ++merged)
        for (int r = 0; r < prongs; ++r) {
          CycleSpec spec{gi, c, merged == 1, r};
          if ((r % 2 != 0) == detail::rotation_odd(g, spec, sign_)) out.push_back(spec);
        }
    return out;
  }

  std::map<Key, SingularityAction> group_options(const SurfaceStratum& s, std::size_t gi) const {
    const SurfaceGroup& g = s.groups[gi];
    const int units = g.tau_paired ? g.count / 2 : g.count;
    const int max_length = g.provenance == Provenance::marked ? 1 : units;
    const auto kinds = cycle_kinds(g, gi, max_length);
    std::map<Key, SingularityAction> out;
    std::vector<CycleSpec> chosen;
    // Multisets of cycle kinds (nondecreasing index) covering exactly `units`.
    auto rec = [&](auto&& self, int rest, std::size_t from) -> void {
      if (rest == 0) {
        SingularityAction a{chosen};
        Key key{forced_contributions_local(g, a), zeros()};
        if (joint_)
          for (const auto& c : a.cycles) detail::add_cycle_tau(g, c, horizon_, key.second);
        out.emplace(std::move(key), std::move(a));
        return;
      }
      for (std::size_t k = from; k < kinds.size(); ++k) {
        if (kinds[k].length > rest) continue;
        chosen.push_back(kinds[k]);
        self(self, rest - kinds[k].length, k);
        chosen.pop_back();
      }
    };
    rec(rec, units, 0);
    return out;
  }

  std::vector<std::int64_t> forced_contributions_local(const SurfaceGroup& g, const SingularityAction& a) const {
    std::vector<std::int64_t> v = zeros();
    for (const auto& c : a.cycles) detail::add_cycle(g, c, sign_, horizon_, v);
    return v;
  }

  int sign_;
  int horizon_;
  bool joint_;
  std::vector<Entry> entries_;
};

namespace detail {

/// Process-wide memo of models keyed by (stratum, sign, horizon, joint).
inline std::shared_ptr<const SieveModel> cached_model(const SurfaceStratum& s, int sign, int horizon, bool joint) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const SieveModel>> cache;
  std::string key = canonical_form(s) + "|";
  for (const auto& g : s.groups) key += std::to_string(static_cast<int>(g.provenance)) + "," + std::to_string(g.degree) + "," +
                                        std::to_string(g.count) + "," + (g.tau_paired ? "u" : "") + ";";
  key += "|" + std::to_string(sign) + "|" + std::to_string(horizon) + "|" + (joint ? "j" : "s");
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto model = std::make_shared<const SieveModel>(s, sign, horizon, joint);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(model)).first->second;
}

inline void check_degree(const IntPolynomial& p, const SurfaceStratum& s) {
  if (p.degree() != 2 * s.genus)
    throw std::invalid_argument("polynomial degree " + std::to_string(p.degree()) + " does not match 2*genus = " +
                                std::to_string(2 * s.genus));
}

inline std::vector<std::int64_t> to_i64(const std::vector<Coeff>& v) { return {v.begin(), v.end()}; }

inline std::string balance_text(int m, std::int64_t lefschetz, std::int64_t forced, std::int64_t weighted) {
  return "m=" + std::to_string(m) + ": L=" + std::to_string(lefschetz) + ", forced=" + std::to_string(forced) + ", " +
         std::to_string(m) + "*c_" + std::to_string(m) + "=" + std::to_string(weighted) +
         (weighted < 0 ? " is negative" : " is not divisible by " + std::to_string(m));
}

/// Sieve of the Lefschetz numbers `lef` (of the map of sign model.sign()) against a model.
inline SieveVerdict run_single(const SieveModel& model, const SurfaceStratum& s, const std::vector<std::int64_t>& lef) {
  SieveVerdict v;
  v.mode = SieveMode::basic;
  v.horizon = model.horizon();
  const int sign = model.sign();
  int best = 0;
  std::string best_text = "no singularity action exists";
  std::vector<std::int64_t> n(lef.size());
  for (const auto& e : model.entries()) {
    for (std::size_t i = 0; i < lef.size(); ++i) {
      const int m = static_cast<int>(i + 1);
      const bool positive = sign > 0 || m % 2 == 0;
      n[i] = positive ? e.phi[i] - lef[i] : lef[i] - e.phi[i];
    }
    const auto weighted = moebius_invert(n);
    const int fail = first_orbit_failure(weighted);
    if (fail == 0) {
      v.compatible = true;
      Witness w{sign, e.action, {}, std::nullopt};
      for (std::size_t i = 0; i < weighted.size(); ++i) w.orbits.counts.push_back(weighted[i] / static_cast<std::int64_t>(i + 1));
      v.witnesses.push_back(std::move(w));
      return v;
    }
    if (fail > best) {
      best = fail;
      const std::size_t i = static_cast<std::size_t>(fail - 1);
      best_text = balance_text(fail, lef[i], e.phi[i], weighted[i]) + " for action " + cycle_notation(s, e.action);
    }
  }
  v.obstruction_iterate = best;
  v.obstruction_sign = sign;
  v.obstruction = best_text;
  return v;
}

/**
 * Coupled sieve of phi (sign +) and the other lifts tau phi^m. With R_m = F_m - L_m(P) the
 * anonymous fixed points of phi^m, W_p = (Moebius R)_p / p = 2 a_p + b_p where a_p counts
 * tau-exchanged orbit pairs and b_p tau-invariant orbits (p even, tau = phi^(p/2) on them).
 * The map tau phi^m has trace -p_m, so L = 2 + p_m, and every fixed point has index +1. Its
 * anonymous fixed points are the tau-invariant orbits of period 2q with q | m and m/q odd:
 *
 *   sum_{q | m, m/q odd} 2q b_{2q} = 2 + p_m - T_m,
 *
 * T_m the tracked fixed points of tau phi^m. Writing q = 2^e t with t odd, this inverts over
 * the odd divisors of t.
 */
inline SieveVerdict run_joint(const SieveModel& model, const SurfaceStratum& s, const std::vector<std::int64_t>& lef) {
  SieveVerdict v;
  v.mode = SieveMode::joint;
  v.horizon = model.horizon();
  const int horizon = model.horizon();
  const auto h = static_cast<std::size_t>(horizon);
  int best = 0;
  std::string best_text = "no singularity action exists";
  std::vector<std::int64_t> r(h), srem(h);
  for (const auto& e : model.entries()) {
    for (std::size_t i = 0; i < h; ++i) {
      r[i] = e.phi[i] - lef[i];
      srem[i] = (4 - lef[i]) - e.psi[i];
    }
    const auto w = moebius_invert(r);
    std::vector<std::int64_t> twice_b(h, 0);  // slot q-1 holds 2q b_{2q}
    for (int q = 1; q <= horizon; ++q) {
      int two = 1;
      while (q % (2 * two) == 0) two *= 2;
      const int t = q / two;
      for (int u = 1; u <= t; u += 2)
        if (t % u == 0) twice_b[static_cast<std::size_t>(q - 1)] += moebius(t / u) * srem[static_cast<std::size_t>(two * u - 1)];
    }
    int fail = 0;
    std::string text;
    for (int m = 1; m <= horizon && fail == 0; ++m) {
      const std::size_t i = static_cast<std::size_t>(m - 1);
      if (w[i] < 0 || w[i] % m != 0) {
        fail = m;
        text = balance_text(m, lef[i], e.phi[i], w[i]);
      } else if (m % 2 != 0 && (w[i] / m) % 2 != 0) {
        fail = m;
        text = "m=" + std::to_string(m) + ": " + std::to_string(w[i] / m) +
               " anonymous orbits of odd period cannot be exchanged in pairs by tau";
      } else if (twice_b[i] < 0 || twice_b[i] % (2 * m) != 0) {
        fail = m;
        text = "m=" + std::to_string(m) + ": L(tau phi^m)=" + std::to_string(4 - lef[i]) + ", tracked fixed=" +
               std::to_string(e.psi[i]) + " leaves " + std::to_string(twice_b[i]) +
               " points on tau-invariant orbits of period " + std::to_string(2 * m);
      } else if (m % 2 == 0) {
        const std::int64_t b = twice_b[static_cast<std::size_t>(m / 2 - 1)] / m;
        const std::int64_t total = w[i] / m;
        if (b > total || (total - b) % 2 != 0) {
          fail = m;
          text = "m=" + std::to_string(m) + ": " + std::to_string(b) + " tau-invariant orbits of period " + std::to_string(m) +
                 " do not fit among " + std::to_string(total) + " orbits";
        }
      }
    }
    if (fail == 0) {
      v.compatible = true;
      Witness wit{1, e.action, {}, TauOrbits{}};
      for (int p = 1; p <= 2 * horizon; ++p) {
        const std::int64_t b = p % 2 == 0 ? twice_b[static_cast<std::size_t>(p / 2 - 1)] / p : 0;
        wit.tau->invariant.push_back(b);
        if (p > horizon) continue;
        const std::int64_t total = w[static_cast<std::size_t>(p - 1)] / p;
        wit.orbits.counts.push_back(total);
        wit.tau->split.push_back((total - b) / 2);
      }
      v.witnesses.push_back(std::move(wit));
      return v;
    }
    if (fail > best) {
      best = fail;
      best_text = text + " for action " + cycle_notation(s, e.action);
    }
  }
  v.obstruction_iterate = best;
  v.obstruction_sign = 1;
  v.obstruction = best_text;
  return v;
}

}  // namespace detail

/// P tested as the homology characteristic polynomial of a map of sign `sign` (P(-x) if negative).
inline SieveVerdict is_compatible(const IntPolynomial& p, const SurfaceStratum& s, int sign, int horizon) {
  detail::check_degree(p, s);
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const auto model = detail::cached_model(s, sign, horizon, false);
  const auto lef = detail::to_i64(lefschetz_numbers(sign > 0 ? p : negate_variable(p), horizon));
  return detail::run_single(*model, s, lef);
}

/// Both P and the sign-flipped spectrum must pass.
inline SieveVerdict check_pair(const IntPolynomial& p, const SurfaceStratum& s, int horizon) {
  SieveVerdict plus = is_compatible(p, s, 1, horizon);
  plus.mode = SieveMode::pair;
  if (!plus.compatible) return plus;
  SieveVerdict minus = is_compatible(p, s, -1, horizon);
  minus.mode = SieveMode::pair;
  if (!minus.compatible) return minus;
  plus.witnesses.push_back(std::move(minus.witnesses.front()));
  return plus;
}

/// check_pair followed by the coupled phi / tau phi model.
inline SieveVerdict joint_tau_sieve(const IntPolynomial& p, const SurfaceStratum& s, int horizon) {
  SieveVerdict pair = check_pair(p, s, horizon);
  pair.mode = SieveMode::joint;
  if (!pair.compatible) return pair;
  const auto model = detail::cached_model(s, 1, horizon, true);
  const auto lef = detail::to_i64(lefschetz_numbers(p, horizon));
  SieveVerdict joint = detail::run_joint(*model, s, lef);
  if (!joint.compatible) return joint;
  pair.witnesses.push_back(std::move(joint.witnesses.front()));
  return pair;
}

inline SieveVerdict sieve(const IntPolynomial& p, const SurfaceStratum& s, SieveMode mode, int horizon) {
  switch (mode) {
    case SieveMode::basic: return is_compatible(p, s, 1, horizon);
    case SieveMode::pair: return check_pair(p, s, horizon);
    case SieveMode::joint: return joint_tau_sieve(p, s, horizon);
  }
  throw std::invalid_argument("unknown sieve mode");
}

/**
 * Replays a witness through the balance equations: L_m = F_m + eps_m sum_{p|m} p c_p for
 * m = 1..M, and for joint witnesses the fixed points of tau phi^m.
 */
inline bool replay_witness(const IntPolynomial& p, const SurfaceStratum& s, const Witness& w, int horizon) {
  if (!valid_action(s, w.action, w.sign)) return false;
  if (static_cast<int>(w.orbits.counts.size()) < horizon) return false;
  for (auto c : w.orbits.counts)
    if (c < 0) return false;
  const auto lef = lefschetz_numbers(w.sign > 0 ? p : negate_variable(p), horizon);
  const auto forced = forced_contributions(s, w.action, w.sign, horizon);
  for (int m = 1; m <= horizon; ++m) {
    std::int64_t n = 0;
    for (int q = 1; q <= m; ++q)
      if (m % q == 0) n += q * w.orbits.counts[static_cast<std::size_t>(q - 1)];
    const int eps = (w.sign > 0 || m % 2 == 0) ? -1 : 1;
    if (lef[static_cast<std::size_t>(m - 1)] != forced[static_cast<std::size_t>(m - 1)] + eps * n) return false;
  }
  if (!w.tau) return true;
  const auto& t = *w.tau;
  if (static_cast<int>(t.split.size()) < horizon || static_cast<int>(t.invariant.size()) < 2 * horizon) return false;
  for (int q = 1; q <= horizon; ++q) {
    const std::size_t i = static_cast<std::size_t>(q - 1);
    if (t.split[i] < 0 || t.invariant[i] < 0) return false;
    if (2 * t.split[i] + t.invariant[i] != w.orbits.counts[i]) return false;
  }
  for (std::size_t i = 0; i < t.invariant.size(); ++i)
    if (t.invariant[i] < 0 || (i % 2 == 0 && t.invariant[i] != 0)) return false;
  const auto tracked = forced_tau_fixed(s, w.action, horizon);
  for (int m = 1; m <= horizon; ++m) {
    std::int64_t anon = 0;
    for (int q = 1; q <= m; ++q)
      if (m % q == 0 && (m / q) % 2 != 0) anon += 2 * q * t.invariant[static_cast<std::size_t>(2 * q - 1)];
    if (4 - lef[static_cast<std::size_t>(m - 1)] != tracked[static_cast<std::size_t>(m - 1)] + anon) return false;
  }
  return true;
}

// ---- serialization ----

inline nlohmann::json to_json(const SurfaceStratum& s, const Witness& w) {
  nlohmann::json j;
  j["sign"] = w.sign > 0 ? "+" : "-";
  j["permutation"] = cycle_notation(s, w.action);
  nlohmann::json cycles = nlohmann::json::array();
  for (const auto& c : w.action.cycles)
    cycles.push_back({{"group", c.group}, {"length", c.length}, {"merged", c.merged}, {"rotation", c.rotation}});
  j["cycles"] = cycles;
  j["orbit_counts"] = w.orbits.counts;
  if (w.tau) j["tau"] = {{"split", w.tau->split}, {"invariant", w.tau->invariant}};
  return j;
}

inline nlohmann::json to_json(const SurfaceStratum& s, const SieveVerdict& v) {
  nlohmann::json j;
  j["status"] = v.compatible ? "compatible" : "incompatible";
  j["mode"] = to_string(v.mode);
  j["horizon"] = v.horizon;
  if (v.compatible) {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : v.witnesses) ws.push_back(to_json(s, w));
    j["witnesses"] = ws;
  } else {
    j["obstruction"] = {{"iterate", v.obstruction_iterate}, {"sign", v.obstruction_sign > 0 ? "+" : "-"}, {"detail", v.obstruction}};
  }
  return j;
}

}  // namespace padil
