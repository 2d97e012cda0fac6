#pragma once

#include "siegel/autoforms.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace siegel {

/// (rho, mu, v) with omega_n > 2n, mu != 0 and v != 0, plus sampling policy.
struct NonvanishingProblem {
  NonvanishingProblem(CuspSeed seed, McOptions mc = {}, std::uint64_t sample_cap = 100000000);

  CuspSeed seed;
  McOptions mc;
  std::uint64_t sample_cap;
};

/// (sqrt(1 + 4n/N^2) + sqrt(4n/N^2))^{-2}.
double m_of_n(long long big_n, int n);

/// |mu(u d_x^{1/2} u^T)| ||rho((I - d_x)^{1/2} u^T) v|| prod_{r<s}(x_r - x_s) / prod_r (1 - x_r)^{n+1}
/// for 1 > x_1 >= ... >= x_n >= 0. Returns +inf if some x_r >= 1.
double phi(const NonvanishingProblem& p, const UnitaryMatrix& u, const RVector& x);

/// Integral of phi over {t > x_1 > ... > x_n > 0} x U(n) (probability Haar measure).
IntegralEstimate integral_phi(const NonvanishingProblem& p, double t, const McOptions& opts);
IntegralEstimate integral_phi(const NonvanishingProblem& p, double t);

enum class Decision { Holds, Fails, Undecided };
std::string to_string(Decision d);

/// HOLDS iff lhs - 3 se(lhs) > total/2 + 1.5 se(total); FAILS iff
/// lhs + 3 se(lhs) < total/2 - 1.5 se(total).
Decision criterion_check(const IntegralEstimate& lhs, const IntegralEstimate& total);

struct LedgerRow {
  long long big_n = 0;
  double m = 0.0;
  IntegralEstimate lhs;
  double rhs_half = 0.0;
  double rhs_half_err = 0.0;
  double margin = 0.0;
  Decision decision = Decision::Undecided;
};

struct ThresholdResult {
  std::optional<long long> n0;
  /// Some N below n0 (or below N_max when n0 is empty) was left undecided.
  bool undecided_below = false;
  IntegralEstimate rhs;
  std::vector<LedgerRow> ledger;
};

struct ThresholdOptions {
  long long n_min = 3;
  long long n_max = 200;
};

/// Scans N = n_min, n_min + 1, ... for the first N where the inequality
/// holds, escalating samples x4 (up to the cap) whenever a comparison is
/// undecided.
ThresholdResult find_n0(const NonvanishingProblem& p, const ThresholdOptions& opts = {});

nlohmann::json to_json(const LedgerRow& row);
nlohmann::json to_json(const ThresholdResult& r);
std::string to_csv(const ThresholdResult& r);

struct CrosscheckRow {
  double radius = 0.0;
  IntegralEstimate kak;
  IntegralEstimate phi;
  double ratio = 0.0;
  double ratio_err = 0.0;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;
  /// Largest |r_i - r_j| / sqrt(se_i^2 + se_j^2) over pairs of radii.
  double max_pair_z = 0.0;
  bool consistent = false;
};

/// Compares, for each R, the KAK-coordinate integral of ||F_f|| over
/// K{h_t : t in [0, R)^n}K (without the Haar constant) with the phi-integral
/// over A^+_{tanh^2 R}.
CrosscheckReport kak_crosscheck(const NonvanishingProblem& p, const std::vector<double>& radii);

nlohmann::json to_json(const CrosscheckReport& r);

}  // namespace siegel
