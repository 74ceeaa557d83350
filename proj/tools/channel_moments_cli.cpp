// Copyright 2026 The channel_moments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// channel-moments: generate channels, compute norms, verify formulas,
// classify purity-preserving channels, sweep the norm-sum range, twirl.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "channel_moments.hpp"

namespace {

using chm::Index;
using chm::Json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;
  std::string target;  // generator name or formula id
  Index n = 2;
  Index d = 2;
  int k = 2;
  double lambda = 0.5;
  double t = 0.5;
  int grid = 11;
  Index rank = 0;  // 0: drawn from the seed
  std::size_t samples = 200000;
  std::uint64_t seed = 0;
  double tol = chm::kExactTol;
  double sigma = 5.0;
  bool json = false;
  std::string out;
  std::string family = "e_lambda";
  std::string channel_file;
  std::string gen;
  std::string matrix_file;
};

Json config_json(const RunConfig& c) {
  return Json{{"n", c.n}, {"d", c.d}, {"seed", c.seed}, {"samples", c.samples},
              {"tol", c.tol}, {"sigma", c.sigma}};
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw chm::InputError("cannot write '" + cfg.out + "'");
  f << text;
}

void emit_json(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

chm::KrausChannel generate(const std::string& name, const RunConfig& cfg) {
  if (name == "depolarizing") return chm::gen_depolarizing(cfg.n, cfg.d);
  if (name == "identity") return chm::gen_identity(cfg.n);
  if (name == "isometric") {
    if (!cfg.matrix_file.empty())
      return chm::gen_isometric(chm::matrix_from_json(chm::read_json_file(cfg.matrix_file)));
    chm::require(cfg.n <= cfg.d, "gen isometric: requires n <= d");
    chm::RandomSource rs(cfg.seed, "cli_isometry");
    return chm::gen_isometric(chm::haar_isometry(cfg.d, cfg.n, rs));
  }
  auto psi_from_config = [&] {
    if (!cfg.matrix_file.empty()) {
      const chm::ComplexMatrix m = chm::matrix_from_json(chm::read_json_file(cfg.matrix_file));
      chm::require(m.cols() == 1, "psi must be a d x 1 matrix");
      return chm::ComplexVector(m.col(0));
    }
    chm::RandomSource rs(cfg.seed, "cli_psi");
    return chm::sample_sphere(cfg.d, rs);
  };
  if (name == "replacement") return chm::gen_replacement(psi_from_config(), cfg.n);
  if (name == "elambda" || name == "e_lambda")
    return chm::gen_e_lambda(cfg.lambda, psi_from_config(), cfg.n, cfg.d);
  if (name == "cor10_t" || name == "cor10t") return chm::gen_cor10_t(cfg.t, cfg.n, cfg.d);
  if (name == "random") {
    Index rank = cfg.rank;
    if (rank == 0) {
      chm::RandomSource rs(cfg.seed, "cli_rank");
      const Index lo = (cfg.n + cfg.d - 1) / cfg.d;
      rank = lo + static_cast<Index>(rs.next_u64() %
                                     static_cast<std::uint64_t>(cfg.n * cfg.d - lo + 1));
    }
    return chm::gen_random_cptp(cfg.n, cfg.d, rank, cfg.seed);
  }
  throw chm::InputError("unknown generator '" + name +
                        "' (expected depolarizing, identity, isometric, replacement, "
                        "elambda, cor10_t or random)");
}

chm::KrausChannel load_channel(const RunConfig& cfg) {
  if (!cfg.channel_file.empty()) {
    const Json j = chm::read_json_file(cfg.channel_file);
    return chm::channel_from_json(j.contains("channel") ? j.at("channel") : j);
  }
  if (!cfg.gen.empty()) return generate(cfg.gen, cfg);
  throw chm::InputError("a channel is required: pass --channel FILE or --gen NAME");
}

Json norms_json(const chm::KrausChannel& e) {
  const chm::ChannelNorms nr = chm::channel_norms(e);
  return Json{{"hs_sq", nr.hs_sq},
              {"comp_hs_sq", nr.comp_hs_sq},
              {"sum", nr.sum},
              {"p2p", {{"1", nr.p2p_one}, {"2", nr.p2p_two}, {"inf", nr.p2p_inf}}}};
}

int cmd_gen(const RunConfig& cfg) {
  const chm::KrausChannel e = generate(cfg.target, cfg);
  const chm::CptpReport v = chm::validate_cptp(e);
  Json params = config_json(cfg);
  params["generator"] = cfg.target;
  if (cfg.target == "elambda" || cfg.target == "e_lambda") params["lambda"] = cfg.lambda;
  if (cfg.target == "cor10_t" || cfg.target == "cor10t") params["t"] = cfg.t;
  emit_json(cfg, Json{{"params", params},
                      {"channel", chm::channel_to_json(e)},
                      {"validation",
                       {{"tp_defect", v.tp_defect},
                        {"cp", v.cp},
                        {"kraus_count", e.size()},
                        {"choi_rank", chm::choi_rank(e)}}}});
  return kExitPass;
}

int cmd_norms(const RunConfig& cfg) {
  const chm::KrausChannel e = load_channel(cfg);
  chm::require_trace_preserving(e, "norms");
  const Json nr = norms_json(e);
  Json values = nr;
  values["lower_bound"] = chm::norm_sum_lower_bound(e.dim_in(), e.dim_out());
  values["upper_bound"] = chm::norm_sum_upper_bound(e.dim_in());
  const double sum = nr.at("sum").get<double>();
  const bool pass = sum >= values["lower_bound"].get<double>() - chm::kBoundTol &&
                    sum <= values["upper_bound"].get<double>() + chm::kBoundTol;
  Json params = config_json(cfg);
  params["n"] = e.dim_in();
  params["d"] = e.dim_out();
  emit_json(cfg, chm::to_json(chm::VerificationReport{"norms", params, values, chm::kBoundTol, pass}));
  return pass ? kExitPass : kExitFail;
}

int cmd_verify(const RunConfig& cfg) {
  chm::VerifyOptions opt;
  opt.n = cfg.n;
  opt.k = cfg.k;
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  opt.sigma = cfg.sigma;
  chm::VerificationReport r;
  if (cfg.target == "thm1") {
    r = chm::verify_thm1(load_channel(cfg), opt);
    if (!cfg.gen.empty()) r.params["generator"] = cfg.gen;
  } else {
    r = chm::verify_formula(cfg.target, opt);
  }
  emit_json(cfg, chm::to_json(r));
  return r.pass ? kExitPass : kExitFail;
}

int cmd_classify(const RunConfig& cfg) {
  const chm::KrausChannel e = load_channel(cfg);
  const chm::PurityVerdict v = chm::purity_classify(e);
  const chm::Theorem1Report t = chm::theorem1_report(e, 0, cfg.seed);
  Json values{{"kind", chm::to_string(v.kind)},
              {"theorem1_class", chm::to_string(t.classification)},
              {"sum", t.sum},
              {"upper_bound", t.upper_bound}};
  if (v.kind == chm::PurityKind::Isometric) values["isometry"] = chm::matrix_to_json(v.isometry);
  if (v.kind == chm::PurityKind::Replacement)
    values["psi"] = chm::matrix_to_json(chm::ComplexMatrix(v.psi));
  if (v.kind == chm::PurityKind::Not) {
    values["witness"] = chm::matrix_to_json(chm::ComplexMatrix(v.witness));
    values["witness_purity"] = v.witness_purity;
    values["purity_defect"] = v.purity_defect;
  }
  // The verdict must agree with the norm sum: purity preserving iff sum = n^2 + n.
  const bool preserving = v.kind != chm::PurityKind::Not;
  const bool at_upper = t.sum >= t.upper_bound - chm::kBoundTol;
  const bool pass = preserving == at_upper;
  Json params = config_json(cfg);
  params["n"] = e.dim_in();
  params["d"] = e.dim_out();
  emit_json(cfg, chm::to_json(chm::VerificationReport{"classify", params, values, chm::kBoundTol, pass}));
  return pass ? kExitPass : kExitFail;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_sweep(const RunConfig& cfg) {
  const chm::SweepResult s = chm::range_sweep(cfg.n, cfg.d, cfg.grid,
                                              chm::parse_sweep_family(cfg.family), cfg.seed);
  if (!cfg.json) {
    std::ostringstream os;
    os << "parameter,hs_sq,comp_hs_sq,sum,lower_bound,upper_bound\n";
    for (const chm::SweepRow& r : s.rows)
      os << fmt(r.parameter) << ',' << fmt(r.hs_sq) << ',' << fmt(r.comp_hs_sq) << ','
         << fmt(r.sum) << ',' << fmt(r.lower_bound) << ',' << fmt(r.upper_bound) << '\n';
    emit(cfg, os.str());
  } else {
    Json rows = Json::array();
    for (const chm::SweepRow& r : s.rows)
      rows.push_back(Json{{"parameter", r.parameter},
                          {"hs_sq", r.hs_sq},
                          {"comp_hs_sq", r.comp_hs_sq},
                          {"sum", r.sum},
                          {"lower_bound", r.lower_bound},
                          {"upper_bound", r.upper_bound}});
    Json params = config_json(cfg);
    params["family"] = chm::to_string(s.family);
    params["grid"] = cfg.grid;
    Json values{{"rows", rows},
                {"max_closed_form_dev", s.max_closed_form_dev},
                {"monotone", s.monotone},
                {"endpoints_hit", s.endpoints_hit}};
    emit_json(cfg, chm::to_json(chm::VerificationReport{"sweep", params, values, cfg.tol, s.pass}));
  }
  return s.pass ? kExitPass : kExitFail;
}

int cmd_twirl(const RunConfig& cfg) {
  chm::ComplexMatrix t;
  if (!cfg.matrix_file.empty())
    t = chm::matrix_from_json(chm::read_json_file(cfg.matrix_file), "superoperator");
  else
    t = chm::superoperator_matrix(load_channel(cfg));
  const chm::TwirlFit fit = chm::twirl_fit(t, cfg.samples, cfg.seed);
  const chm::TwirlFit limit = chm::fit_covariant(t);
  Json values{{"lambda", chm::complex_json(fit.lambda)},
              {"mu", chm::complex_json(fit.mu)},
              {"residual", fit.residual},
              {"identifiable", fit.identifiable},
              {"twirl_samples", fit.samples},
              {"exact_lambda", chm::complex_json(limit.lambda)},
              {"exact_mu", chm::complex_json(limit.mu)}};
  const double tol = fit.samples == 0 ? cfg.tol : chm::kTwirlResidualTol;
  const bool pass = fit.residual <= tol;
  Json params = config_json(cfg);
  params["n"] = chm::superop_side(t);
  params.erase("d");
  emit_json(cfg, chm::to_json(chm::VerificationReport{"twirl", params, values, tol, pass}));
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-channel norm identities and sphere-integral formulas"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;

  app.add_option("--seed", cfg.seed, "RNG seed (recorded in every report)");
  app.add_flag("--json", cfg.json, "JSON output (default for everything except sweep)");
  app.add_option("--out", cfg.out, "Write output to this path instead of stdout");
  app.add_option("--tol", cfg.tol, "Tolerance for exact checks")->check(CLI::PositiveNumber);
  app.add_option("--sigma", cfg.sigma, "Monte Carlo multiplier on the standard error")
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count");
  app.add_option("--n", cfg.n, "Input dimension")->check(CLI::Range(1, 64));
  app.add_option("--d", cfg.d, "Output dimension")->check(CLI::Range(1, 64));
  app.add_option("--k", cfg.k, "Tensor power")->check(CLI::Range(1, 4));
  app.add_option("--lambda", cfg.lambda, "Mixing weight for elambda")->check(CLI::Range(0.0, 1.0));
  app.add_option("--t", cfg.t, "Mixing weight for cor10_t")->check(CLI::Range(0.0, 1.0));
  app.add_option("--grid", cfg.grid, "Sweep grid size (>= 2)");
  app.add_option("--rank", cfg.rank, "Kraus rank for the random generator");
  app.add_option("--family", cfg.family, "Sweep family: e_lambda or cor10_t");
  app.add_option("--channel", cfg.channel_file, "Channel JSON file");
  app.add_option("--gen", cfg.gen, "Generator name used instead of --channel");
  app.add_option("--matrix", cfg.matrix_file, "Matrix JSON file (isometry, psi or superoperator)");

  auto* gen = app.add_subcommand("gen", "Generate a channel");
  gen->add_option("name", cfg.target, "Generator name")->required();
  app.add_subcommand("norms", "Channel norms and the norm-sum bounds");
  auto* verify = app.add_subcommand("verify", "Verify a formula by id");
  verify->add_option("id", cfg.target, "Formula id (thm1 or one of the registry ids)")->required();
  app.add_subcommand("classify", "Purity-preserving classification");
  app.add_subcommand("sweep", "Sweep the norm-sum range");
  app.add_subcommand("twirl", "Twirl a map and fit lambda X + mu tr(X) I");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "gen") return cmd_gen(cfg);
    if (cfg.command == "norms") return cmd_norms(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "twirl") return cmd_twirl(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
