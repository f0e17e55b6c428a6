#include <gtest/gtest.h>

#include "padil/lefschetz.hpp"

using namespace padil;

namespace {

IntPolynomial P(const char* s) { return parse_polynomial(s); }
SurfaceStratum lift(const char* s) { return lift_to_double_cover(parse_sphere_stratum(s)); }

const char* const kP1 = "x^6-3x^5+2x^4+2x^2-3x+1";
const char* const kP2 = "x^6-3x^5+4x^4-5x^3+4x^2-3x+1";
const char* const kP3 = "x^6-4x^5+6x^4-6x^3+6x^2-4x+1";

std::vector<std::int64_t> head(const std::vector<std::int64_t>& v, std::size_t n) { return {v.begin(), v.begin() + n}; }

}  // namespace

TEST(Lefschetz, IndexOfIterate) {
  EXPECT_EQ(index_of_iterate(1, 0, 1, true), -3);
  EXPECT_EQ(index_of_iterate(1, 1, 1, true), 1);
  EXPECT_EQ(index_of_iterate(1, 1, 2, true), -3);
  EXPECT_EQ(index_of_iterate(2, 1, 3, true), -5);
  EXPECT_EQ(index_of_iterate(2, 1, 2, true), 1);
  EXPECT_EQ(index_of_iterate(0, 0, 1, true), -1);
  EXPECT_EQ(index_of_iterate(3, 0, 1, false), 1);
}

TEST(Lefschetz, DefaultHorizon) {
  EXPECT_EQ(default_horizon(1), 12);
  EXPECT_EQ(default_horizon(5), 12);
  EXPECT_EQ(default_horizon(6), 14);
  EXPECT_EQ(default_horizon(5, SieveMode::joint), 14);
  EXPECT_EQ(default_horizon(4, SieveMode::joint), 12);
  EXPECT_EQ(default_horizon(10), 22);
}

TEST(Lefschetz, ModeNames) {
  EXPECT_EQ(parse_sieve_mode("joint"), SieveMode::joint);
  EXPECT_STREQ(to_string(SieveMode::basic), "basic");
  EXPECT_THROW(parse_sieve_mode("full"), std::invalid_argument);
}

TEST(Lefschetz, OrbitFeasibility) {
  const auto profile = orbit_feasibility({0, 4, 15, 44, 120});
  ASSERT_TRUE(profile.has_value());
  EXPECT_EQ(profile->counts, (std::vector<std::int64_t>{0, 2, 5, 10, 24}));
  EXPECT_FALSE(orbit_feasibility({1, 2}).has_value());   // 2 c_2 = 1
  EXPECT_FALSE(orbit_feasibility({3, 1}).has_value());   // 2 c_2 = -2
  EXPECT_FALSE(orbit_feasibility({-1}).has_value());
}

TEST(Lefschetz, AnosovTorus) {
  const SurfaceStratum s = lift("(-1;-1^3)");
  const IntPolynomial p = P("x^2-3x+1");
  EXPECT_EQ(lefschetz_numbers(p, 5), (std::vector<Coeff>{-1, -5, -16, -45, -121}));
  const SieveVerdict v = is_compatible(p, s, 1, 12);
  ASSERT_TRUE(v.compatible);
  ASSERT_EQ(v.witnesses.size(), 1u);
  const Witness& w = v.witnesses.front();
  // Marked point fixed, punctures permuted in a 3-cycle; the 3-orbit is tracked, not anonymous.
  EXPECT_EQ(cycle_notation(s, w.action), "(A1)(B1 B2 B3)");
  EXPECT_EQ(head(w.orbits.counts, 5), (std::vector<std::int64_t>{0, 2, 4, 10, 24}));
  EXPECT_TRUE(replay_witness(p, s, w, 12));
}

TEST(Lefschetz, SignFlipOfP2) {
  const SurfaceStratum s = lift("(-1;-1^5,1^2)");
  EXPECT_TRUE(is_compatible(P(kP2), s, 1, 12).compatible);
  const SieveVerdict minus = is_compatible(P(kP2), s, -1, 12);
  EXPECT_FALSE(minus.compatible);
  EXPECT_EQ(minus.obstruction_iterate, 2);
  EXPECT_NE(minus.obstruction.find("L=1, forced=-13"), std::string::npos) << minus.obstruction;
  const SieveVerdict pair = check_pair(P(kP2), s, 12);
  EXPECT_FALSE(pair.compatible);
  EXPECT_EQ(pair.obstruction_sign, -1);
}

TEST(Lefschetz, P1PassesEveryMode) {
  const SurfaceStratum s = lift("(-1;-1^5,1^2)");
  for (SieveMode mode : {SieveMode::basic, SieveMode::pair, SieveMode::joint}) {
    const SieveVerdict v = sieve(P(kP1), s, mode, 12);
    EXPECT_TRUE(v.compatible) << to_string(mode);
    for (const auto& w : v.witnesses) EXPECT_TRUE(replay_witness(P(kP1), s, w, 12));
  }
  EXPECT_EQ(sieve(P(kP1), s, SieveMode::joint, 12).witnesses.size(), 3u);
}

TEST(Lefschetz, P3FallsOnlyToTheJointModel) {
  const SurfaceStratum s = lift("(-1;-1^5,1^2)");
  EXPECT_TRUE(check_pair(P(kP3), s, 12).compatible);
  const SieveVerdict joint = joint_tau_sieve(P(kP3), s, 12);
  EXPECT_FALSE(joint.compatible);
  EXPECT_EQ(joint.mode, SieveMode::joint);
  EXPECT_GT(joint.obstruction_iterate, 0);
}

TEST(Lefschetz, FourPunctureCandidatesEliminated) {
  const SurfaceStratum s = lift("(-1;-1^4,1)");
  for (const char* text : {"x^4-x^3-x^2-x+1", "x^4-2x^3+x^2-2x+1", "x^4-x^3-2x^2-x+1", "x^4-3x^3+3x^2-3x+1"})
    EXPECT_FALSE(joint_tau_sieve(P(text), s, 12).compatible) << text;
}

TEST(Lefschetz, SixPunctureSurvivorsFallToJointModel) {
  const SurfaceStratum s = lift("(-1;-1^6,1^3)");
  for (const char* text : {"x^8-3x^7+4x^6-7x^5+10x^4-7x^3+4x^2-3x+1", "x^8-2x^7+2x^6-4x^5+5x^4-4x^3+2x^2-2x+1"}) {
    EXPECT_TRUE(check_pair(P(text), s, 12).compatible) << text;
    EXPECT_FALSE(joint_tau_sieve(P(text), s, 12).compatible) << text;
  }
}

TEST(Lefschetz, TamperedWitnessFailsReplay) {
  const SurfaceStratum s = lift("(-1;-1^5,1^2)");
  const SieveVerdict v = sieve(P(kP1), s, SieveMode::joint, 12);
  ASSERT_TRUE(v.compatible);
  Witness w = v.witnesses.front();
  w.orbits.counts[2] += 1;
  EXPECT_FALSE(replay_witness(P(kP1), s, w, 12));
  Witness t = v.witnesses.back();
  ASSERT_TRUE(t.tau.has_value());
  t.tau->invariant[1] += 1;
  EXPECT_FALSE(replay_witness(P(kP1), s, t, 12));
  EXPECT_FALSE(replay_witness(P(kP2), s, v.witnesses.front(), 12));
}

TEST(Lefschetz, ForcedContributionsOfFixedPoints) {
  const SurfaceStratum s = lift("(-1;-1^3)");
  SingularityAction all_fixed;
  for (std::size_t g = 0; g < s.groups.size(); ++g)
    for (int i = 0; i < s.groups[g].count; ++i) all_fixed.cycles.push_back({g, 1, false, 0});
  ASSERT_TRUE(valid_action(s, all_fixed, 1));
  // Four regular fixed points with unturned separatrices: index -1 at every iterate.
  EXPECT_EQ(forced_contributions(s, all_fixed, 1, 3), (std::vector<std::int64_t>{-4, -4, -4}));
}

TEST(Lefschetz, InputValidation) {
  const SurfaceStratum s = lift("(-1;-1^3)");
  EXPECT_THROW(is_compatible(P("x^4-x^3-x^2-x+1"), s, 1, 12), std::invalid_argument);
  EXPECT_THROW(is_compatible(P("x^2-3x+1"), s, 0, 12), std::invalid_argument);
}

TEST(Lefschetz, JsonReport) {
  const SurfaceStratum s = lift("(-1;-1^5,1^2)");
  const auto ok = to_json(s, check_pair(P(kP1), s, 12));
  EXPECT_EQ(ok.at("status"), "compatible");
  EXPECT_EQ(ok.at("witnesses").size(), 2u);
  EXPECT_EQ(ok.at("witnesses")[1].at("sign"), "-");
  const auto bad = to_json(s, check_pair(P(kP2), s, 12));
  EXPECT_EQ(bad.at("status"), "incompatible");
  EXPECT_EQ(bad.at("obstruction").at("iterate"), 2);
  EXPECT_EQ(bad.at("obstruction").at("sign"), "-");
}
