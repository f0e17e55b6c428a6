#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "padil/polynomial.hpp"

namespace padil::test {

inline std::string cache_dir() { return PADIL_TEST_CACHE_DIR; }
inline std::string data_path(const std::string& name) { return std::string(PADIL_TEST_DATA_DIR) + "/" + name; }

/// Oracle dump: a count line, then one "(c0, c1, ...)" tuple per line.
inline std::vector<IntPolynomial> load_oracle(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw std::runtime_error("missing test data " + name);
  std::size_t count = 0;
  in >> count;
  std::vector<IntPolynomial> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& c : line)
      if (c == '(' || c == ')' || c == ',') c = ' ';
    std::istringstream row(line);
    std::vector<Coeff> coeffs;
    for (Coeff v; row >> v;) coeffs.push_back(v);
    out.push_back(IntPolynomial::from_descending(coeffs));
  }
  if (out.size() != count) throw std::runtime_error("oracle file " + name + " is truncated");
  return out;
}

struct PublishedRow {
  const char* stratum;
  const char* lifted;
  int genus;
  int polynomials;
  int compatible;
};

// Rows of the published tables for n = 6, 7, 8; lifted strata with underlined degrees written as "2u".
inline const std::vector<PublishedRow>& published_rows(int n) {
  static const std::vector<PublishedRow> six = {
      {"(2;-1^6)", "(0^6,2u^2)", 2, 0, 0},
      {"(1;-1^6,1)", "(0^6,4,4)", 3, 9, 0},
      {"(0;-1^6,2)", "(0^6,0u^2,2u^2)", 2, 0, 0},
      {"(-1;-1^6,3)", "(0^6,0,8)", 3, 9, 0},
      {"(0;-1^6,1^2)", "(0^6,4^2,0u^2)", 3, 9, 0},
      {"(-1;-1^6,1,2)", "(0^6,0,4,2u^2)", 3, 9, 0},
      {"(-1;-1^6,1^3)", "(0^6,0,4^3)", 4, 148, 2},
  };
  static const std::vector<PublishedRow> seven = {
      {"(3;-1^7)", "(0^7,8)", 3, 2, 0},
      {"(2;-1^7,1)", "(0^7,4,2u^2)", 3, 2, 0},
      {"(1;-1^7,2)", "(0^7,4,2u^2)", 3, 2, 0},
      {"(0;-1^7,3)", "(0^7,8,0u^2)", 3, 2, 0},
      {"(-1;-1^7,4)", "(0^7,0,4u^2)", 3, 2, 0},
      {"(1;-1^7,1^2)", "(0^7,4^2,4)", 4, 21, 0},
      {"(0;-1^7,1,2)", "(0^7,4,0u^2,2u^2)", 3, 2, 0},
      {"(-1;-1^7,1,3)", "(0^7,0,4,8)", 4, 21, 0},
      {"(-1;-1^7,2^2)", "(0^7,0,2u^4)", 3, 2, 0},
      {"(0;-1^7,1^3)", "(0^7,0,4^3)", 4, 21, 0},
      {"(-1;-1^7,1^2,2)", "(0^7,0,4^2,2u^2)", 4, 21, 0},
      {"(-1;-1^7,1^4)", "(0^7,0,4^4)", 5, 227, 2},
  };
  static const std::vector<PublishedRow> eight = {
      {"(4;-1^8)", "(0^8,4u^2)", 3, 2, 0},
      {"(3;-1^8,1)", "(0^8,4,8)", 4, 15, 0},
      {"(2;-1^8,2)", "(0^8,2u^2,2u^2)", 3, 2, 0},
      {"(1;-1^8,3)", "(0^8,4,8)", 4, 15, 0},
      {"(0;-1^8,4)", "(0^8,0u^2,4u^2)", 3, 2, 0},
      {"(-1;-1^8,5)", "(0^8,0,12)", 4, 15, 1},
      {"(2;-1^8,1^2)", "(0^8,2u^2,4^2)", 4, 15, 0},
      {"(1;-1^8,1,2)", "(0^8,4,4,2u^2)", 4, 15, 0},
      {"(0;-1^8,1,3)", "(0^8,0u^2,4,8)", 4, 15, 0},
      {"(-1;-1^8,1,4)", "(0^8,0,4,4u^2)", 4, 15, 0},
      {"(0;-1^8,2^2)", "(0^8,0u^2,2u^4)", 3, 2, 0},
      {"(-1;-1^8,2,3)", "(0^8,0,2u^2,8)", 4, 15, 0},
      {"(1;-1^8,1^3)", "(0^8,4,4^3)", 5, 129, 2},
      {"(0;-1^8,1^2,2)", "(0^8,0u^2,4^2,2u^2)", 4, 15, 0},
      {"(-1;-1^8,1^2,3)", "(0^8,0,4^2,8)", 5, 129, 0},
      {"(-1;-1^8,1,2^2)", "(0^8,0,4,2u^4)", 4, 15, 0},
      {"(0;-1^8,1^4)", "(0^8,0u^2,4^4)", 5, 129, 2},
      {"(-1;-1^8,1^3,2)", "(0^8,0,4^3,2u^2)", 5, 129, 0},
      {"(-1;-1^8,1^5)", "(0^8,0,4^5)", 6, 1096, 0},
  };
  static const std::vector<PublishedRow> none;
  return n == 6 ? six : n == 7 ? seven : n == 8 ? eight : none;
}

/// Random monic reciprocal polynomial of degree 2g with middle coefficients in [-spread, spread].
inline IntPolynomial random_reciprocal(std::mt19937_64& rng, int g, int spread) {
  std::uniform_int_distribution<Coeff> d(-spread, spread);
  std::vector<Coeff> c(static_cast<std::size_t>(2 * g) + 1, 0);
  c.front() = c.back() = 1;
  for (int k = 1; k <= g; ++k) c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(2 * g - k)] = d(rng);
  return IntPolynomial(c);
}

}  // namespace padil::test
