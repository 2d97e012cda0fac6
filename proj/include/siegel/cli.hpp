#pragma once

#include "siegel/linalg.hpp"
#include "siegel/symplectic.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace siegel {

struct RunConfig {
  std::string command;
  int n = 1;
  std::string omega;  // "a,b,..."
  std::string mu = "1";
  std::string v = "hwv";  // "hwv" or a JSON array of numbers / [re, im] pairs
  std::string z;          // JSON matrix; defaults to iI
  long long n_min = 3;
  long long n_max = 200;
  std::uint64_t samples = 100000;
  std::uint64_t sample_cap = 100000000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out;
  std::string format = "json";

  // poincare / fourier
  int word_length = 3;
  long long level = 1;
  std::string symmetrize;  // "", "J" or a JSON integer matrix
  std::string t_matrix = "[[1]]";
  std::string y0;          // JSON real matrix; defaults to I
  int points = 64;

  // matcoef
  std::string g;  // JSON real matrix; random when empty
  double g_spread = 0.5;

  // kak-check
  std::string radii = "0.3,0.6,1.0";

  // selftest
  int draws = 20;
};

/// Exit codes: 0 ok, 1 failure (selftest), 2 config, 3 precondition,
/// 4 undecided, 5 resource cap.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
/// JSON matrix with entries given as numbers or [re, im] pairs.
CMatrix parse_complex_matrix(const std::string& text);
RMatrix parse_real_matrix(const std::string& text);
CVector parse_complex_vector(const std::string& text);

}  // namespace siegel
