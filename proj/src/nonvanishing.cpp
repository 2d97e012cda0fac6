#include "siegel/nonvanishing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace siegel {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// phi with 1 - x supplied separately, so that points very close to the upper
// face do not round to x = 1.
double phi_impl(const NonvanishingProblem& p, const CMatrix& u, const RVector& x, const RVector& one_minus_x) {
  const int n = static_cast<int>(x.size());
  for (int r = 0; r < n; ++r)
    if (!(one_minus_x(r) > 0.0)) return std::numeric_limits<double>::infinity();
  const CMatrix w = u * x.cwiseSqrt().cast<cplx>().asDiagonal() * u.transpose();
  const double mu = std::abs(p.seed.mu.evaluate(w));
  if (mu == 0.0) return 0.0;
  const CMatrix m = one_minus_x.cwiseSqrt().cast<cplx>().asDiagonal() * u.transpose();
  double val = mu * (p.seed.rep.apply(m) * p.seed.v).norm();
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) val *= x(r) - x(s);
    val /= std::pow(one_minus_x(r), n + 1);
  }
  return val;
}

McOptions with_stream(McOptions o, std::uint64_t stream) {
  o.stream = stream;
  return o;
}

IntegralEstimate scaled(IntegralEstimate e, double c) {
  e.value *= c;
  e.std_error *= c;
  return e;
}

}  // namespace

NonvanishingProblem::NonvanishingProblem(CuspSeed s, McOptions m, std::uint64_t cap)
    : seed(std::move(s)), mc(m), sample_cap(cap) {
  const int n = seed.rep.n();
  if (seed.rep.det_twist() <= 2 * n) {
    std::ostringstream os;
    os << "non-vanishing problem requires omega_n > 2n (omega_n = " << seed.rep.det_twist() << ", n = " << n << ")";
    throw PreconditionError(os.str());
  }
  if (seed.mu.is_zero()) throw PreconditionError("non-vanishing problem requires mu != 0");
  if (seed.v.norm() == 0.0) throw PreconditionError("non-vanishing problem requires v != 0");
  if (mc.samples == 0) throw ConfigError("samples must be positive");
}

double m_of_n(long long big_n, int n) {
  if (big_n < 1) throw ConfigError("M(N): N must be positive");
  const double q = 4.0 * n / (static_cast<double>(big_n) * static_cast<double>(big_n));
  const double s = std::sqrt(1.0 + q) + std::sqrt(q);
  return 1.0 / (s * s);
}

double phi(const NonvanishingProblem& p, const UnitaryMatrix& u, const RVector& x) {
  if (x.size() != p.seed.rep.n() || u.n() != p.seed.rep.n()) throw PreconditionError("phi: dimension mismatch");
  for (Eigen::Index r = 0; r < x.size(); ++r) {
    if (x(r) < 0.0) throw PreconditionError("phi: x must be nonnegative");
    if (r > 0 && x(r) > x(r - 1)) throw PreconditionError("phi: x must be sorted descending");
  }
  return phi_impl(p, u.matrix(), x, (1.0 - x.array()).matrix());
}

IntegralEstimate integral_phi(const NonvanishingProblem& p, double t, const McOptions& opts) {
  if (!(t > 0.0 && t <= 1.0)) throw ConfigError("integral_phi: t must lie in (0, 1]");
  const int n = p.seed.rep.n();
  // x_r = 1 - (1 - q_r)^beta flattens the (1 - x_r)^e singularity at the
  // upper face, e = omega_n/2 - n - 1 > -1.
  const double e = 0.5 * p.seed.rep.det_twist() - n - 1.0;
  const double beta = e < 0.0 ? 1.0 / (e + 1.0) : 1.0;
  const double q_t = 1.0 - std::pow(1.0 - t, 1.0 / beta);
  IntegralEstimate est = integrate(opts, [&](Rng& rng) -> double {
    const UnitaryMatrix u = haar_unitary(rng, n);
    std::uniform_real_distribution<double> uq(0.0, q_t);
    std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(n));
    double jac = 1.0;
    for (auto& [x, omx] : pts) {
      const double q = uq(rng);
      omx = std::pow(1.0 - q, beta);
      x = 1.0 - omx;
      jac *= beta * std::pow(1.0 - q, beta - 1.0);
    }
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    RVector x(n), omx(n);
    for (int r = 0; r < n; ++r) {
      x(r) = pts[static_cast<std::size_t>(r)].first;
      omx(r) = pts[static_cast<std::size_t>(r)].second;
    }
    return phi_impl(p, u.matrix(), x, omx) * jac;
  });
  if (!std::isfinite(est.value) || !std::isfinite(est.std_error))
    throw ResourceError("integral_phi: non-finite estimate; increase samples or check the weight");
  return scaled(est, std::pow(q_t, n) / factorial(n));
}

IntegralEstimate integral_phi(const NonvanishingProblem& p, double t) { return integral_phi(p, t, p.mc); }

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Holds:
      return "HOLDS";
    case Decision::Fails:
      return "FAILS";
    case Decision::Undecided:
      break;
  }
  return "UNDECIDED";
}

Decision criterion_check(const IntegralEstimate& lhs, const IntegralEstimate& total) {
  const double half = 0.5 * total.value;
  const double half_err = 1.5 * total.std_error;
  if (lhs.value - 3.0 * lhs.std_error > half + half_err) return Decision::Holds;
  if (lhs.value + 3.0 * lhs.std_error < half - half_err) return Decision::Fails;
  return Decision::Undecided;
}

ThresholdResult find_n0(const NonvanishingProblem& p, const ThresholdOptions& opts) {
  if (opts.n_min < 3) throw ConfigError("find_n0: N-min must be at least 3");
  if (opts.n_max < opts.n_min) throw ConfigError("find_n0: N-max must be at least N-min");
  const int n = p.seed.rep.n();

  // The total integral uses stream 0 with a frozen seed; one estimate per
  // sample level reached by escalation.
  std::map<std::uint64_t, IntegralEstimate> totals;
  auto total_at = [&](std::uint64_t samples) {
    auto it = totals.find(samples);
    if (it != totals.end()) return it->second;
    McOptions o = with_stream(p.mc, 0);
    o.samples = samples;
    return totals.emplace(samples, integral_phi(p, 1.0, o)).first->second;
  };

  ThresholdResult out;
  out.rhs = total_at(p.mc.samples);
  for (long long big_n = opts.n_min; big_n <= opts.n_max; ++big_n) {
    const double m = m_of_n(big_n, n);
    std::uint64_t samples = p.mc.samples;
    IntegralEstimate lhs, total;
    Decision d = Decision::Undecided;
    for (;;) {
      McOptions o = with_stream(p.mc, static_cast<std::uint64_t>(big_n));
      o.samples = samples;
      lhs = integral_phi(p, m, o);
      total = total_at(samples);
      d = criterion_check(lhs, total);
      if (d != Decision::Undecided || samples * 4 > p.sample_cap) break;
      samples *= 4;
    }
    LedgerRow row;
    row.big_n = big_n;
    row.m = m;
    row.lhs = lhs;
    row.rhs_half = 0.5 * total.value;
    row.rhs_half_err = 0.5 * total.std_error;
    row.margin = (lhs.value - 3.0 * lhs.std_error) - (row.rhs_half + 1.5 * total.std_error);
    row.decision = d;
    out.ledger.push_back(row);
    if (d == Decision::Holds) {
      out.n0 = big_n;
      break;
    }
    if (d == Decision::Undecided) out.undecided_below = true;
  }
  return out;
}

nlohmann::json to_json(const LedgerRow& row) {
  return {{"N", row.big_n},
          {"M(N)", row.m},
          {"lhs", row.lhs.value},
          {"lhs_err", row.lhs.std_error},
          {"samples", row.lhs.samples},
          {"seed", row.lhs.seed},
          {"rhs_half", row.rhs_half},
          {"rhs_half_err", row.rhs_half_err},
          {"margin", row.margin},
          {"decision", to_string(row.decision)}};
}

nlohmann::json to_json(const ThresholdResult& r) {
  nlohmann::json j;
  j["N0"] = r.n0 ? nlohmann::json(*r.n0) : nlohmann::json("UNDECIDED");
  j["undecided_below"] = r.undecided_below;
  j["rhs"] = to_json(r.rhs);
  j["ledger"] = nlohmann::json::array();
  for (const auto& row : r.ledger) j["ledger"].push_back(to_json(row));
  return j;
}

std::string to_csv(const ThresholdResult& r) {
  std::string out = "N,M(N),lhs,lhs_err,rhs_half,rhs_half_err,decision\n";
  for (const auto& row : r.ledger) {
    out += std::to_string(row.big_n) + "," + shortest(row.m) + "," + shortest(row.lhs.value) + "," +
           shortest(row.lhs.std_error) + "," + shortest(row.rhs_half) + "," + shortest(row.rhs_half_err) + "," +
           to_string(row.decision) + "\n";
  }
  return out;
}

CrosscheckReport kak_crosscheck(const NonvanishingProblem& p, const std::vector<double>& radii) {
  if (radii.empty()) throw ConfigError("kak_crosscheck: no radii given");
  const int n = p.seed.rep.n();
  CrosscheckReport rep;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double big_r = radii[i];
    if (!(big_r > 0.0)) throw ConfigError("kak_crosscheck: radii must be positive");
    CrosscheckRow row;
    row.radius = big_r;
    const IntegralEstimate raw = integrate(with_stream(p.mc, 1000 + i), [&](Rng& rng) -> double {
      std::uniform_real_distribution<double> ut(0.0, big_r);
      RVector t(n);
      for (int r = 0; r < n; ++r) t(r) = ut(rng);
      std::sort(t.data(), t.data() + n, std::greater<>());
      KAKFactors kak{haar_unitary(rng, n), t, haar_unitary(rng, n)};
      double jac = 1.0;
      for (int r = 0; r < n; ++r)
        for (int s = r; s < n; ++s) {
          if (s > r) jac *= std::sinh(t(r) - t(s));
          jac *= std::sinh(t(r) + t(s));
        }
      return lift_closed_form(p.seed, kak).norm() * jac;
    });
    row.kak = scaled(raw, std::pow(big_r, n) / factorial(n));
    const double th = std::tanh(big_r);
    row.phi = integral_phi(p, th * th, with_stream(p.mc, 2000 + i));
    row.ratio = row.kak.value / row.phi.value;
    row.ratio_err = std::abs(row.ratio) * std::hypot(row.kak.std_error / row.kak.value,
                                                     row.phi.std_error / row.phi.value);
    rep.rows.push_back(row);
  }
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    for (std::size_t j = i + 1; j < rep.rows.size(); ++j) {
      const double se = std::hypot(rep.rows[i].ratio_err, rep.rows[j].ratio_err);
      const double diff = std::abs(rep.rows[i].ratio - rep.rows[j].ratio);
      rep.max_pair_z = std::max(rep.max_pair_z, se > 0 ? diff / se : (diff > 0 ? HUGE_VAL : 0.0));
    }
  rep.consistent = rep.max_pair_z <= 3.0;
  return rep;
}

nlohmann::json to_json(const CrosscheckReport& r) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"R", row.radius},
                         {"kak_integral", to_json(row.kak)},
                         {"phi_integral", to_json(row.phi)},
                         {"ratio", row.ratio},
                         {"ratio_err", row.ratio_err}});
  j["max_pair_z"] = r.max_pair_z;
  j["consistent"] = r.consistent;
  return j;
}

}  // namespace siegel
