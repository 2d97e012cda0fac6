#include "siegel/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  siegel::RunConfig cfg;
  CLI::App app{"Siegel Poincare series, matrix coefficients and non-vanishing thresholds"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  auto common = [&](CLI::App* sub, bool stochastic) {
    sub->add_option("--n", cfg.n, "matrix size");
    sub->add_option("--omega", cfg.omega, "highest weight, e.g. 3 or 2,1,0");
    sub->add_option("--out", cfg.out, "write output here instead of stdout");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    if (stochastic) {
      sub->add_option("--samples", cfg.samples, "Monte-Carlo samples");
      sub->add_option("--seed", cfg.seed, "random seed");
      sub->add_option("--workers", cfg.workers, "worker threads");
    }
  };
  auto seed_opts = [&](CLI::App* sub) {
    sub->add_option("--mu", cfg.mu, "polynomial in X<r><s>, e.g. det or X11^2*X22");
    sub->add_option("--v", cfg.v, "hwv or JSON array");
  };
  auto group_opts = [&](CLI::App* sub) {
    sub->add_option("--L", cfg.word_length, "word-length bound");
    sub->add_option("--level", cfg.level, "congruence level");
    sub->add_option("--symmetrize", cfg.symmetrize, "J or an integer matrix of finite order mod +-I");
  };

  auto* rep_info = app.add_subcommand("rep-info", "dimension and weights of a representation");
  common(rep_info, false);

  auto* eval_f = app.add_subcommand("eval-f", "evaluate f_{mu,v} at z");
  common(eval_f, false);
  seed_opts(eval_f);
  eval_f->add_option("--z", cfg.z, "JSON matrix, entries numbers or [re, im]");

  auto* poincare = app.add_subcommand("poincare", "truncated Poincare series");
  common(poincare, false);
  seed_opts(poincare);
  group_opts(poincare);
  poincare->add_option("--z", cfg.z, "JSON matrix, entries numbers or [re, im]");

  auto* crho = app.add_subcommand("c-rho", "Monte-Carlo estimate of C_rho");
  common(crho, true);

  auto* matcoef = app.add_subcommand("matcoef", "matrix coefficient against C_rho <F_f(g^-1), v>");
  common(matcoef, true);
  seed_opts(matcoef);
  matcoef->add_option("--g", cfg.g, "JSON symplectic matrix (random if omitted)");
  matcoef->add_option("--g-spread", cfg.g_spread, "t_max for the random g");

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficient of a truncated Poincare series");
  common(fourier, false);
  seed_opts(fourier);
  group_opts(fourier);
  fourier->add_option("--T", cfg.t_matrix, "half-integral JSON matrix");
  fourier->add_option("--y0", cfg.y0, "JSON matrix, default I");
  fourier->add_option("--points", cfg.points, "quadrature points per coordinate");

  auto* n0 = app.add_subcommand("n0", "non-vanishing threshold scan");
  common(n0, true);
  seed_opts(n0);
  n0->add_option("--N-min", cfg.n_min, "first level to test");
  n0->add_option("--N-max", cfg.n_max, "last level to test");
  n0->add_option("--sample-cap", cfg.sample_cap, "escalation cap");

  auto* kak = app.add_subcommand("kak-check", "KAK-coordinate cross-check of the phi-integral");
  common(kak, true);
  seed_opts(kak);
  kak->add_option("--radii", cfg.radii, "comma-separated radii");
  kak->add_option("--sample-cap", cfg.sample_cap, "escalation cap");

  auto* selftest = app.add_subcommand("selftest", "quick invariant suites");
  common(selftest, true);
  selftest->add_option("--draws", cfg.draws, "random draws per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return siegel::run(cfg, std::cout, std::cerr);
}
