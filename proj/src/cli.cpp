#include "siegel/cli.hpp"

#include "siegel/autoforms.hpp"
#include "siegel/nonvanishing.hpp"
#include "siegel/selftest.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace siegel {

using nlohmann::json;

namespace {

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

json vector_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
  return a;
}

json matrix_json(const CMatrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    a.push_back(row);
  }
  return a;
}

json real_matrix_json(const RMatrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(row);
  }
  return a;
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

cplx complex_entry(const json& e, const char* what) {
  if (e.is_number()) return e.get<double>();
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ConfigError(std::string(what) + ": entries must be numbers or [re, im] pairs");
}

McOptions mc_options(const RunConfig& cfg) {
  if (cfg.samples == 0) throw ConfigError("--samples must be positive");
  if (cfg.workers == 0) throw ConfigError("--workers must be positive");
  McOptions o;
  o.samples = cfg.samples;
  o.seed = cfg.seed;
  o.workers = cfg.workers;
  return o;
}

PolyRep rep_from(const RunConfig& cfg) {
  if (cfg.omega.empty()) throw ConfigError("--omega is required");
  return PolyRep::build(HighestWeight(cfg.n, parse_int_list(cfg.omega)));
}

CVector v_from(const RunConfig& cfg, const PolyRep& rep) {
  if (cfg.v == "hwv") return rep.highest_weight_vector();
  CVector v = parse_complex_vector(cfg.v);
  if (v.size() != rep.dim()) throw ConfigError("--v must have length " + std::to_string(rep.dim()));
  return v;
}

CuspSeed seed_from(const RunConfig& cfg) {
  PolyRep rep = rep_from(cfg);
  CVector v = v_from(cfg, rep);
  return CuspSeed(rep, parse_mu(cfg.mu, cfg.n), v);
}

SiegelPoint z_from(const RunConfig& cfg) {
  if (cfg.z.empty()) return SiegelPoint::i_identity(cfg.n);
  CMatrix z = parse_complex_matrix(cfg.z);
  if (z.rows() != cfg.n) throw ConfigError("--z must be " + std::to_string(cfg.n) + "x" + std::to_string(cfg.n));
  return SiegelPoint(z);
}

RMatrix y0_from(const RunConfig& cfg) {
  if (cfg.y0.empty()) return RMatrix::Identity(cfg.n, cfg.n);
  RMatrix y = parse_real_matrix(cfg.y0);
  if (y.rows() != cfg.n) throw ConfigError("--y0 has the wrong size");
  return y;
}

GroupElementSet group_set_from(const RunConfig& cfg) {
  if (cfg.word_length < 0) throw ConfigError("--L must be nonnegative");
  GroupElementSet s = enumerate_ball(cfg.n, generators(cfg.n), cfg.word_length, cfg.level);
  if (cfg.symmetrize.empty()) return s;
  IMatrix gamma;
  if (cfg.symmetrize == "J") {
    gamma = generators(cfg.n).front();
  } else {
    const RMatrix g = parse_real_matrix(cfg.symmetrize);
    gamma = g.array().round().cast<long long>().matrix();
    if ((gamma.cast<double>() - g).cwiseAbs().maxCoeff() != 0.0) throw ConfigError("--symmetrize must be an integer matrix");
  }
  return symmetrize(s, gamma);
}

json cmd_rep_info(const RunConfig& cfg) {
  const PolyRep rep = rep_from(cfg);
  json out{{"n", rep.n()},
           {"omega", rep.weight().omega()},
           {"dim", rep.dim()},
           {"weyl_dimension", weyl_dimension(rep.weight())},
           {"tensor_degree", rep.tensor_degree()},
           {"det_twist", rep.det_twist()},
           {"weight_labels", rep.weight_labels()},
           {"hwv_index", rep.hwv_index()}};
  return out;
}

json cmd_eval_f(const RunConfig& cfg) {
  const CuspSeed seed = seed_from(cfg);
  const SiegelPoint z = z_from(cfg);
  return {{"mu", seed.mu.to_string()}, {"z", matrix_json(z.matrix())}, {"value", vector_json(eval_f(seed, z))}};
}

json cmd_poincare(const RunConfig& cfg) {
  const CuspSeed seed = seed_from(cfg);
  const SiegelPoint z = z_from(cfg);
  const GroupElementSet s = group_set_from(cfg);
  const PoincareResult r = poincare_truncated(seed, s, z);
  json shells = json::array();
  for (const auto& sh : r.shells)
    shells.push_back({{"word_length", sh.word_length}, {"count", sh.count}, {"max_norm", sh.max_norm}});
  json closure = json::array();
  for (const auto& f : s.closure) closure.push_back(f.closed);
  return {{"mu", seed.mu.to_string()},
          {"z", matrix_json(z.matrix())},
          {"level", s.level},
          {"word_bound", s.word_bound},
          {"elements", s.size()},
          {"closure", closure},
          {"value", vector_json(r.value)},
          {"max_term_norm", r.max_term_norm},
          {"sum_term_norms", r.sum_term_norms},
          {"shells", shells}};
}

json cmd_c_rho(const RunConfig& cfg) {
  const PolyRep rep = rep_from(cfg);
  const IntegralEstimate e = c_rho(rep, mc_options(cfg));
  json out{{"n", rep.n()}, {"omega", rep.weight().omega()}, {"c_rho", to_json(e)}};
  if (rep.n() == 1) out["closed_form"] = 4.0 * std::numbers::pi / (rep.det_twist() - 1);
  return out;
}

json cmd_matcoef(const RunConfig& cfg) {
  const CuspSeed seed = seed_from(cfg);
  CVector v = v_from(cfg, seed.rep);
  SymplecticMatrix g = SymplecticMatrix::identity(cfg.n);
  if (cfg.g.empty()) {
    Rng rng = make_rng(cfg.seed, 99, 0);
    g = random_symplectic(rng, cfg.n, cfg.g_spread);
  } else {
    g = SymplecticMatrix(parse_real_matrix(cfg.g));
    if (g.n() != cfg.n) throw ConfigError("--g has the wrong size");
  }
  McOptions o = mc_options(cfg);
  o.stream = 1;
  const IntegralEstimate c = c_rho(seed.rep, o);
  o.stream = 2;
  const ComplexEstimate mc = matrix_coefficient_mc(seed, v, g, o);
  const cplx expected = matrix_coefficient_expected(seed, v, g, c.value);
  const cplx unit = matrix_coefficient_expected(seed, v, g, 1.0);
  const double combined = std::hypot(mc.std_error, std::abs(unit) * c.std_error);
  return {{"g", real_matrix_json(g.matrix())},
          {"estimate", to_json(mc)},
          {"c_rho", to_json(c)},
          {"expected", complex_json(expected)},
          {"combined_stderr", combined},
          {"z_score", combined > 0 ? std::abs(mc.value - expected) / combined : 0.0}};
}

json cmd_fourier(const RunConfig& cfg) {
  const CuspSeed seed = seed_from(cfg);
  const GroupElementSet s = group_set_from(cfg);
  const HalfIntegralMatrix t(parse_real_matrix(cfg.t_matrix));
  if (t.n() != cfg.n) throw ConfigError("--T has the wrong size");
  const RMatrix y0 = y0_from(cfg);
  FourierOptions fo;
  fo.points = cfg.points;
  const VectorFunction series = [&](const SiegelPoint& z) { return poincare_truncated(seed, s, z).value; };
  const CVector a = fourier_coefficient(series, t, s.level, y0, fo);
  const CVector b = fourier_coefficient(series, t, s.level, 2.0 * y0, fo);
  return {{"T", real_matrix_json(t.matrix())},
          {"level", s.level},
          {"elements", s.size()},
          {"y0", real_matrix_json(y0)},
          {"coefficient", vector_json(a)},
          {"coefficient_2y0", vector_json(b)},
          {"y0_spread", (a - b).norm()}};
}

std::pair<json, int> cmd_n0(const RunConfig& cfg, std::string& csv) {
  const NonvanishingProblem p(seed_from(cfg), mc_options(cfg), cfg.sample_cap);
  ThresholdOptions to;
  to.n_min = cfg.n_min;
  to.n_max = cfg.n_max;
  const ThresholdResult r = find_n0(p, to);
  csv = to_csv(r);
  return {to_json(r), r.n0 ? 0 : static_cast<int>(ErrorKind::Undecided)};
}

json cmd_kak_check(const RunConfig& cfg) {
  const NonvanishingProblem p(seed_from(cfg), mc_options(cfg), cfg.sample_cap);
  return to_json(kak_crosscheck(p, parse_double_list(cfg.radii)));
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoi(item, &used));
    } catch (const std::exception&) {
      throw ConfigError("malformed integer list: '" + text + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ConfigError("malformed integer list: '" + text + "'");
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      throw ConfigError("malformed number list: '" + text + "'");
    }
    if (used != item.size()) throw ConfigError("malformed number list: '" + text + "'");
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

CMatrix parse_complex_matrix(const std::string& text) {
  const json j = parse_json(text, "matrix");
  if (!j.is_array() || j.empty()) throw ConfigError("matrix: expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  CMatrix m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) throw ConfigError("matrix: must be square");
    for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = complex_entry(row[static_cast<std::size_t>(c)], "matrix");
  }
  return m;
}

RMatrix parse_real_matrix(const std::string& text) {
  const CMatrix m = parse_complex_matrix(text);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) throw ConfigError("matrix: expected real entries");
  return m.real();
}

CVector parse_complex_vector(const std::string& text) {
  const json j = parse_json(text, "vector");
  if (!j.is_array() || j.empty()) throw ConfigError("vector: expected a nonempty array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_entry(j[i], "vector");
  return v;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("--format must be json or csv");
    if (cfg.format == "csv" && cfg.command != "n0") throw ConfigError("csv output is only available for n0");
    if (cfg.n < 1) throw ConfigError("--n must be positive");

    json result;
    std::string csv;
    int code = 0;
    if (cfg.command == "rep-info") {
      result = cmd_rep_info(cfg);
    } else if (cfg.command == "eval-f") {
      result = cmd_eval_f(cfg);
    } else if (cfg.command == "poincare") {
      result = cmd_poincare(cfg);
    } else if (cfg.command == "c-rho") {
      result = cmd_c_rho(cfg);
    } else if (cfg.command == "matcoef") {
      result = cmd_matcoef(cfg);
    } else if (cfg.command == "fourier") {
      result = cmd_fourier(cfg);
    } else if (cfg.command == "n0") {
      std::tie(result, code) = cmd_n0(cfg, csv);
    } else if (cfg.command == "kak-check") {
      result = cmd_kak_check(cfg);
    } else if (cfg.command == "selftest") {
      SelftestOptions so;
      so.seed = cfg.seed;
      so.draws = cfg.draws;
      so.workers = cfg.workers;
      result = run_selftest(so);
      code = result["passed"].get<bool>() ? 0 : 1;
    } else {
      throw ConfigError("unknown command '" + cfg.command + "'");
    }
    result = json{{"command", cfg.command}, {"result", result}};

    const std::string text = cfg.format == "csv" ? csv : result.dump(2) + "\n";
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw ConfigError("cannot open output file '" + cfg.out + "'");
      f << text;
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  }
}

}  // namespace siegel
