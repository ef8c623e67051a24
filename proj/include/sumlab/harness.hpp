#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sumlab/group.hpp"
#include "sumlab/rational.hpp"

#include "json.hpp"

namespace sumlab {

// Instance generator description.  The same spec + seed always reproduces
// the same pair of sets.
struct GenSpec {
  std::string kind = "bohr-noise";  // bohr-noise | random | interval | adversarial-subgroup
  std::vector<std::int64_t> dims = {97};
  std::vector<std::int64_t> freq = {};  // bohr-noise character; empty = (1,0,...,0)
  double mu_a = 0.25;
  double mu_b = 0.25;
  double rho = 0.0;  // membership flip fraction, in [0, 0.5]

  static GenSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

std::pair<GroupSet, GroupSet> generate(const GenSpec& spec, std::uint64_t seed);

// Adds `flips` seeded membership toggles to a set.
GroupSet flip_noise(const GroupSet& base, std::int64_t flips, std::uint64_t seed);

struct ExperimentConfig {
  GenSpec gen;
  std::string law = "kneser";  // kneser | ruzsa | partial | submod | classify | recover
  int trials = 100;
  std::uint64_t seed = 0;
  Rational delta = Rational(1, 100);
  Rational tolerance = Rational(1, 100);
  double eps = 0.05;
  std::string out_path;  // JSON-lines record stream; empty = no file output

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct RunRecord {
  nlohmann::json config_echo;
  std::vector<nlohmann::json> instances;
  int violations = 0;
  int errors = 0;
  double wall_seconds = 0.0;
  nlohmann::json aggregate;
};

// Runs the named law/pipeline over generated instances; per-instance errors
// are recorded, not fatal to the batch.
RunRecord run_experiment(const ExperimentConfig& config);

Rational parse_rational(const std::string& text);

}  // namespace sumlab
