// sumlab command line front end.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sumlab/conv.hpp"
#include "sumlab/critical.hpp"
#include "sumlab/group.hpp"
#include "sumlab/harness.hpp"
#include "sumlab/inequalities.hpp"
#include "sumlab/inverse.hpp"

using nlohmann::json;
using namespace sumlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitConfig = 3;

std::filesystem::path out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SUMLAB_OUT")) return env;
  return ".";
}

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name);
  if (!f) throw std::runtime_error("cannot open " + (dir / name).string());
  return f;
}

GroupSet load_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open set file " + path);
  json j;
  in >> j;
  return GroupSet::from_json(j);
}

json bound_json(const BoundReport& r) {
  json j{{"lhs", r.lhs.str()},
         {"rhs", r.rhs.str()},
         {"holds", r.holds},
         {"defect", r.defect.str()},
         {"connectedness_caveat", r.connectedness_caveat}};
  if (r.pointwise_min) j["pointwise_min"] = r.pointwise_min->str();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sumset inequality and Bohr-structure toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // let global --seed/--out/--format appear after a subcommand

  std::uint64_t seed = 0;
  std::string out_flag;
  std::string format = "json";
  app.add_option("--seed", seed, "global RNG seed")->capture_default_str();
  app.add_option("--out", out_flag, "output directory (default $SUMLAB_OUT or .)");
  app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // gen: emit a generated instance pair as JSON.
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance pair");
  std::string gen_kind = "bohr-noise";
  std::vector<std::int64_t> gen_dims = {97};
  std::vector<std::int64_t> gen_freq;
  double gen_mu_a = 0.25, gen_mu_b = 0.25, gen_rho = 0.0;
  gen_cmd->add_option("--kind", gen_kind, "bohr-noise|random|interval|adversarial-subgroup");
  gen_cmd->add_option("--dims", gen_dims, "group dimensions");
  gen_cmd->add_option("--freq", gen_freq, "character frequency (bohr-noise)");
  gen_cmd->add_option("--mu-a", gen_mu_a, "target measure of A");
  gen_cmd->add_option("--mu-b", gen_mu_b, "target measure of B");
  gen_cmd->add_option("--rho", gen_rho, "noise flip fraction");

  // conv: convolution profile of two set files.
  auto* conv_cmd = app.add_subcommand("conv", "convolution profile of two sets");
  std::string conv_a, conv_b;
  conv_cmd->add_option("a", conv_a, "JSON file for A")->required();
  conv_cmd->add_option("b", conv_b, "JSON file for B")->required();

  // check: run a law over generated instances.
  auto* check_cmd = app.add_subcommand("check", "verify an inequality over random instances");
  std::string law = "kneser";
  int trials = 100;
  std::string check_kind = "random";
  std::vector<std::int64_t> check_dims = {97};
  double check_mu_a = 0.25, check_mu_b = 0.25;
  check_cmd->add_option("--law", law, "kneser|ruzsa|partial|submod|classify")
      ->check(CLI::IsMember({"kneser", "ruzsa", "partial", "submod", "classify"}));
  check_cmd->add_option("--trials", trials)->capture_default_str();
  check_cmd->add_option("--kind", check_kind, "instance generator kind");
  check_cmd->add_option("--dims", check_dims, "group dimensions");
  check_cmd->add_option("--mu-a", check_mu_a);
  check_cmd->add_option("--mu-b", check_mu_b);

  // shrink: descent log for a critical pair.
  auto* shrink_cmd = app.add_subcommand("shrink", "shrink a critical companion set");
  std::string shrink_a, shrink_b;
  std::string shrink_target = "0", shrink_tol = "1/100", shrink_delta = "1/100";
  shrink_cmd->add_option("a", shrink_a, "JSON file for A")->required();
  shrink_cmd->add_option("b", shrink_b, "JSON file for B")->required();
  shrink_cmd->add_option("--target", shrink_target, "target measure (0 = auto margin/4)");
  shrink_cmd->add_option("--tolerance", shrink_tol, "criticality defect cap");
  shrink_cmd->add_option("--delta", shrink_delta, "partial-sumset threshold");

  // translates: random translate cover of the partial sumset.
  auto* trans_cmd = app.add_subcommand("translates", "approximate A+B by translates of A");
  std::string trans_a, trans_b, trans_delta = "1/100";
  int trans_m = 8;
  trans_cmd->add_option("a", trans_a)->required();
  trans_cmd->add_option("b", trans_b)->required();
  trans_cmd->add_option("--delta", trans_delta);
  trans_cmd->add_option("-m,--m", trans_m, "draw m^2 random translates");

  // recover: Bohr structure recovery pipeline.
  auto* rec_cmd = app.add_subcommand("recover", "recover Bohr-interval structure");
  std::string rec_a, rec_b, rec_delta = "1/100", rec_tol = "1/100";
  double rec_eps = 0.05;
  std::int64_t rec_window = -1;
  int rec_mmax = 16, rec_kcheck = 8;
  bool rec_dump = false;
  rec_cmd->add_option("a", rec_a)->required();
  rec_cmd->add_option("b", rec_b)->required();
  rec_cmd->add_option("--delta", rec_delta, "partial-sumset threshold");
  rec_cmd->add_option("--tolerance", rec_tol, "criticality defect cap");
  rec_cmd->add_option("--eps", rec_eps, "residual threshold for success");
  rec_cmd->add_option("--window", rec_window, "pushforward smoothing window (-1 = auto)");
  rec_cmd->add_option("--mmax", rec_mmax, "multiplicity search bound");
  rec_cmd->add_option("--kcheck", rec_kcheck, "linear-growth check depth");
  rec_cmd->add_flag("--dump", rec_dump, "also write spectrum.csv and density.csv");

  // run: full experiment batch from a config file.
  auto* run_cmd = app.add_subcommand("run", "run an experiment batch from a JSON config");
  std::string run_config;
  run_cmd->add_option("config", run_config, "experiment config JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto dir = out_dir(out_flag);

    if (gen_cmd->parsed()) {
      GenSpec spec{gen_kind, gen_dims, gen_freq, gen_mu_a, gen_mu_b, gen_rho};
      auto [a, b] = generate(spec, seed);
      json out{{"spec", spec.to_json()}, {"seed", seed},
               {"a", a.to_json()},       {"b", b.to_json()}};
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }

    if (conv_cmd->parsed()) {
      GroupSet a = load_set(conv_a);
      GroupSet b = load_set(conv_b);
      auto profile = convolve(a, b);
      if (format == "csv") {
        auto f = open_out(dir, "conv.csv");
        f << "x,count\n";
        for (std::size_t x = 0; x < profile.counts.size(); ++x)
          f << x << "," << profile.counts[x] << "\n";
      }
      json summary{{"mass", profile.total_mass()},
                   {"max_count", profile.max_count()},
                   {"support", profile.support_size()}};
      std::cout << summary.dump(2) << "\n";
      return kExitOk;
    }

    if (check_cmd->parsed()) {
      ExperimentConfig cfg;
      cfg.gen = GenSpec{check_kind, check_dims, {}, check_mu_a, check_mu_b, 0.0};
      cfg.law = law;
      cfg.trials = trials;
      cfg.seed = seed;
      auto record = run_experiment(cfg);
      auto f = open_out(dir, "check.jsonl");
      f << record.config_echo.dump() << "\n";
      for (const auto& row : record.instances) f << row.dump() << "\n";
      f << record.aggregate.dump() << "\n";
      std::cout << record.aggregate.dump(2) << "\n";
      return record.violations > 0 ? kExitViolation : kExitOk;
    }

    if (shrink_cmd->parsed()) {
      GroupSet a = load_set(shrink_a);
      GroupSet b = load_set(shrink_b);
      Rational target = parse_rational(shrink_target);
      Rational tol = parse_rational(shrink_tol);
      Rational delta = parse_rational(shrink_delta);
      if (target == Rational(0)) {
        Rational margin =
            std::min({a.measure(), b.measure(), Rational(1) - a.measure() - b.measure()});
        target = margin / Rational(4);
      }
      auto result = shrink_to_small(a, b, target, tol, delta);
      auto f = open_out(dir, "shrink.csv");
      f << "step,cardinality,defect\n";
      for (const auto& s : result.log)
        f << s.step << "," << s.cardinality << "," << s.defect.str() << "\n";
      json out{{"reached_target", result.reached_target},
               {"final_cardinality", result.set.cardinality()},
               {"final_defect", result.report.defect.str()},
               {"steps", result.log.size()}};
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }

    if (trans_cmd->parsed()) {
      GroupSet a = load_set(trans_a);
      GroupSet b = load_set(trans_b);
      auto result = approximate_by_translates(a, b, parse_rational(trans_delta), trans_m, seed);
      json out{{"translates", result.translates}, {"sym_diff", result.sym_diff.str()}};
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }

    if (rec_cmd->parsed()) {
      GroupSet a = load_set(rec_a);
      GroupSet b = load_set(rec_b);
      RecoveryConfig cfg;
      cfg.tolerance = parse_rational(rec_tol);
      cfg.eps = rec_eps;
      cfg.window = rec_window;
      cfg.m_max = rec_mmax;
      cfg.k_steps = rec_kcheck;
      auto result = recover_bohr_pair(a, b, parse_rational(rec_delta), cfg);
      if (rec_dump) {
        auto fs = open_out(dir, "spectrum.csv");
        fs << "freq,magnitude\n";
        for (const auto& e : spectrum(a)) {
          for (std::size_t i = 0; i < e.freq.size(); ++i)
            fs << (i ? ";" : "") << e.freq[i];
          fs << "," << e.magnitude << "\n";
        }
        auto fd = open_out(dir, "density.csv");
        fd << "alpha,value\n";
        auto density = pushforward(a, result.character, 0);
        for (std::size_t i = 0; i < density.values.size(); ++i)
          fd << i << "," << density.values[i].str() << "\n";
      }
      json out{{"freq", result.character.freq()},
               {"order", result.character.order()},
               {"detected_freq", result.detected_freq},
               {"tau", result.tau},
               {"multiplicity", result.multiplicity},
               {"arc_a", {{"start", result.arc_a.start}, {"length", result.arc_a.length}}},
               {"arc_b", {{"start", result.arc_b.start}, {"length", result.arc_b.length}}},
               {"residual_a", result.residual_a.str()},
               {"residual_b", result.residual_b.str()},
               {"success", result.success},
               {"diagnostics", result.diagnostics}};
      std::cout << out.dump(2) << "\n";
      return result.success ? kExitOk : kExitViolation;
    }

    if (run_cmd->parsed()) {
      std::ifstream in(run_config);
      if (!in) throw std::invalid_argument("cannot open config " + run_config);
      json j;
      in >> j;
      auto cfg = ExperimentConfig::from_json(j);
      if (cfg.out_path.empty()) cfg.out_path = (dir / "run.jsonl").string();
      auto record = run_experiment(cfg);
      std::cout << record.aggregate.dump(2) << "\n";
      return record.violations > 0 ? kExitViolation : kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
