#include <gtest/gtest.h>

#include "padil/pipeline.hpp"
#include "support.hpp"

using namespace padil;

namespace {

IntPolynomial P(const char* s) { return parse_polynomial(s); }

RunOptions opts(unsigned workers = 1) {
  RunOptions o;
  o.cache_dir = test::cache_dir();
  o.workers = workers;
  return o;
}

}  // namespace

TEST(Registry, TheoremRowsRoundTripAndMatchRoots) {
  const auto& reg = CandidateRegistry::reference();
  ASSERT_EQ(reg.theorem().size(), 6u);
  for (const auto& row : reg.theorem()) {
    const IntPolynomial p = reg.candidate(row.n);
    const auto d = perron_root(p);
    ASSERT_TRUE(d && d->is_perron) << row.n;
    EXPECT_EQ(d->approx, row.delta) << row.n;
    EXPECT_NO_THROW(parse_sphere_stratum(row.stratum));
  }
  EXPECT_EQ(reg.candidate(5), reg.candidate(6));
  EXPECT_FALSE(reg.row(6).note.empty());
  EXPECT_EQ(to_string(reg.candidate(8)), "x^8-2*x^5-2*x^3+1");
  EXPECT_THROW(reg.row(9), std::invalid_argument);
}

TEST(Registry, StratumMinimaRoots) {
  const auto& reg = CandidateRegistry::reference();
  for (const auto& m : reg.minima()) {
    const auto d = perron_root(parse_polynomial(m.polynomial));
    ASSERT_TRUE(d && d->is_perron) << m.polynomial;
    EXPECT_EQ(d->approx, m.delta) << "n=" << m.n << " s" << m.case_index;
    EXPECT_LE(m.case_index, static_cast<int>(enumerate_disc_strata(m.n).size()));
  }
  EXPECT_EQ(reg.minima_for(7).size(), 12u);
  std::size_t external = 0;
  for (const auto& m : reg.minima()) external += m.external ? 1 : 0;
  EXPECT_EQ(external, 9u);
}

TEST(Registry, StratumOfEachTheoremRowLiftsToMatchingDegree) {
  // Odd-degree candidates carry a cyclotomic factor and are skipped.
  for (const auto& row : CandidateRegistry::reference().theorem()) {
    const IntPolynomial p = parse_polynomial(row.polynomial);
    if (p.degree() % 2 != 0) continue;
    EXPECT_EQ(lift_to_double_cover(parse_sphere_stratum(row.stratum)).genus, p.degree() / 2) << row.n;
  }
}

TEST(Pipeline, StratumReportExamples) {
  const TableRow a = stratum_report(parse_sphere_stratum("(-1;-1^6,1^3)"), P("x^4-x^3-x^2-x+1"), SieveMode::pair, 0, opts());
  EXPECT_EQ(a.genus, 4);
  EXPECT_EQ(a.compatible_count, 2u);
  EXPECT_EQ(a.polynomial_count, a.verdicts.size());
  EXPECT_EQ(a.compatible_count, a.survivors.size());
  EXPECT_EQ(a.horizon, 12);

  const TableRow b = stratum_report(parse_sphere_stratum("(-1;-1^8,5)"), P("x^8-2x^5-2x^3+1"), SieveMode::pair, 0, opts());
  EXPECT_EQ(b.genus, 4);
  EXPECT_EQ(b.polynomial_count, 15u);
  EXPECT_EQ(b.compatible_count, 1u);

  const TableRow c = stratum_report(parse_sphere_stratum("(-1;-1^5,1^2)"), P("x^4-x^3-x^2-x+1"), SieveMode::pair, 0, opts());
  EXPECT_EQ(c.polynomial_count, 9u);
  EXPECT_EQ(c.compatible_count, 0u);
}

TEST(Pipeline, JointModeListsPairSurvivors) {
  const TableRow r = stratum_report(parse_sphere_stratum("(-1;-1^5,1^2)"), P("x^6-x^5-4x^3-x+1"), SieveMode::joint, 0, opts());
  EXPECT_EQ(r.polynomial_count, 41u);
  EXPECT_EQ(r.pair_survivors, (std::vector<IntPolynomial>{P("x^6-4x^5+6x^4-6x^3+6x^2-4x+1"), P("x^6-3x^5+2x^4+2x^2-3x+1")}));
  EXPECT_EQ(r.survivors, (std::vector<IntPolynomial>{P("x^6-3x^5+2x^4+2x^2-3x+1")}));
}

TEST(Pipeline, SixPunctureTablePairMode) {
  const auto rows = reproduce_tables(6, SieveMode::pair, 0, opts());
  const auto& published = test::published_rows(6);
  ASSERT_EQ(rows.size(), 7u);
  std::vector<std::size_t> polys, compat;
  for (const auto& r : rows) {
    polys.push_back(r.polynomial_count);
    compat.push_back(r.compatible_count);
  }
  EXPECT_EQ(polys, (std::vector<std::size_t>{0, 9, 0, 9, 9, 9, 153}));
  EXPECT_EQ(compat, (std::vector<std::size_t>{0, 0, 0, 0, 0, 0, 2}));
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].genus, published[i].genus);
  EXPECT_EQ(rows[6].label, "s'7");
}

TEST(Pipeline, CertificatesForSmallN) {
  const Certificate three = certify_minimum(3, SieveMode::pair, 0, opts());
  EXPECT_EQ(three.status, "certified");
  ASSERT_EQ(three.rows.size(), 1u);
  EXPECT_EQ(three.rows[0].polynomial_count, 0u);

  const Certificate four = certify_minimum(4, SieveMode::joint, 0, opts());
  EXPECT_EQ(four.status, "certified");
  EXPECT_EQ(four.delta, "2.29663");

  const Certificate five = certify_minimum(5, SieveMode::pair, 0, opts());
  EXPECT_EQ(five.status, "certified");
  EXPECT_TRUE(five.survivors().empty());
}

TEST(Pipeline, SingleStratumCertificateIsConditional) {
  const Certificate c =
      certify_stratum(parse_sphere_stratum("(-1;-1^5,1^2)"), P("x^6-x^5-4x^3-x+1"), SieveMode::joint, 0, opts());
  EXPECT_EQ(c.status, "conditional");
  EXPECT_EQ(c.survivors(), (std::vector<IntPolynomial>{P("x^6-3x^5+2x^4+2x^2-3x+1")}));
  EXPECT_EQ(c.delta, "2.01536");
}

TEST(Pipeline, InvalidRequests) {
  EXPECT_THROW(reproduce_tables(2, SieveMode::pair, 0, opts()), std::invalid_argument);
  EXPECT_THROW(certify_minimum(9, SieveMode::pair, 0, opts()), std::invalid_argument);
  EXPECT_THROW(certify_stratum(parse_sphere_stratum("(-1;-1^3)"), P("x^2-x+1"), SieveMode::pair, 0, opts()),
               std::invalid_argument);
}

TEST(Reports, CsvColumnsAndMarkdownLayout) {
  const Certificate c = certify_minimum(5, SieveMode::pair, 0, opts());
  const std::string csv = to_csv(c.rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "stratum,lifted,genus,n_polys,n_compatible");
  EXPECT_NE(csv.find("\"(-1;-1^5,1^2)\",\"(0,0^5,4^2)\",3,9,0"), std::string::npos) << csv;
  const std::string md = to_markdown(c);
  EXPECT_NE(md.find("| case | stratum on P^1 | stratum on S | genus of S | # polynomials | # compatible |"), std::string::npos);
  EXPECT_NE(md.find("| s'4 | (-1;-1^5,1^2) | (0,0^5,4^2) | 3 | 9 | 0 |"), std::string::npos) << md;
  EXPECT_NE(md.find("Status: certified"), std::string::npos);
  const auto j = to_json(c);
  EXPECT_EQ(j.at("format_version"), kReportFormatVersion);
  EXPECT_EQ(j.at("n"), 5);
  EXPECT_EQ(j.at("rows").size(), 4u);
}

TEST(Reports, ByteIdenticalAcrossRunsAndWorkers) {
  const std::string a = to_json(certify_minimum(6, SieveMode::joint, 0, opts(1))).dump();
  const std::string b = to_json(certify_minimum(6, SieveMode::joint, 0, opts(3))).dump();
  const std::string c = to_json(certify_minimum(6, SieveMode::joint, 0, opts(1))).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(to_markdown(certify_minimum(6, SieveMode::pair, 0, opts(2))),
            to_markdown(certify_minimum(6, SieveMode::pair, 0, opts(1))));
}
