#include "sumlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sumlab/inequalities.hpp"
#include "sumlab/inverse.hpp"
#include "sumlab/rng.hpp"

namespace sumlab {

GenSpec GenSpec::from_json(const nlohmann::json& j) {
  GenSpec s;
  s.kind = j.value("kind", s.kind);
  s.dims = j.value("dims", s.dims);
  s.freq = j.value("freq", s.freq);
  s.mu_a = j.value("mu_a", s.mu_a);
  s.mu_b = j.value("mu_b", s.mu_b);
  s.rho = j.value("rho", s.rho);
  return s;
}

nlohmann::json GenSpec::to_json() const {
  return nlohmann::json{{"kind", kind}, {"dims", dims}, {"freq", freq},
                        {"mu_a", mu_a}, {"mu_b", mu_b}, {"rho", rho}};
}

GroupSet flip_noise(const GroupSet& base, std::int64_t flips, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::vector<bool> m = base.membership();
  const auto n = static_cast<std::uint64_t>(base.group().size());
  for (std::int64_t i = 0; i < flips; ++i) {
    std::size_t pos = bounded(rng, n);
    m[pos] = !m[pos];
  }
  return GroupSet(base.group(), std::move(m));
}

namespace {

GroupSet random_set(const GridGroup& g, double density, std::mt19937_64& rng) {
  std::vector<bool> m(static_cast<std::size_t>(g.size()), false);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = unit_real(rng) < density;
  GroupSet s(g, std::move(m));
  if (s.is_empty()) {
    // keep generated instances usable by the nonempty-operand checkers
    std::vector<bool> one(static_cast<std::size_t>(g.size()), false);
    one[bounded(rng, static_cast<std::uint64_t>(g.size()))] = true;
    return GroupSet(g, std::move(one));
  }
  return s;
}

GroupSet subgroup_set(const GridGroup& g) {
  // A proper nontrivial subgroup: multiples of the smallest prime factor on
  // a composite axis, or the kernel of the first projection otherwise.
  const auto& dims = g.dims();
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    std::int64_t n = dims[axis];
    if (is_prime(n)) continue;
    std::int64_t p = 2;
    while (n % p != 0) ++p;
    std::vector<bool> m(static_cast<std::size_t>(g.size()), false);
    for (std::int64_t i = 0; i < g.size(); ++i)
      m[static_cast<std::size_t>(i)] = g.coords(i)[axis] % p == 0;
    return GroupSet(g, std::move(m));
  }
  if (g.dim_count() > 1) {
    std::vector<bool> m(static_cast<std::size_t>(g.size()), false);
    for (std::int64_t i = 0; i < g.size(); ++i)
      m[static_cast<std::size_t>(i)] = g.coords(i)[0] == 0;
    return GroupSet(g, std::move(m));
  }
  throw std::invalid_argument("generate: Z/p has no proper nontrivial subgroup");
}

}  // namespace

std::pair<GroupSet, GroupSet> generate(const GenSpec& spec, std::uint64_t seed) {
  if (spec.rho < 0.0 || spec.rho > 0.5)
    throw std::invalid_argument("generate: rho must lie in [0, 0.5]");
  GridGroup g(spec.dims);
  auto rng = make_rng(seed);

  if (spec.kind == "bohr-noise") {
    std::vector<std::int64_t> freq = spec.freq;
    if (freq.empty()) {
      freq.assign(static_cast<std::size_t>(g.dim_count()), 0);
      freq[0] = 1;
    }
    Character chi(g, freq);
    const std::int64_t L = chi.order();
    auto arc_of = [&](double mu) {
      auto len = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::llround(mu * static_cast<double>(L))), 1, L);
      auto start = static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(L)));
      return Arc{L, start, len};
    };
    GroupSet a = bohr_set(BohrDescription{chi, arc_of(spec.mu_a)});
    GroupSet b = bohr_set(BohrDescription{chi, arc_of(spec.mu_b)});
    auto flips = static_cast<std::int64_t>(std::llround(spec.rho * static_cast<double>(g.size())));
    if (flips > 0) {
      a = flip_noise(a, flips, rng());
      b = flip_noise(b, flips, rng());
    }
    return {std::move(a), std::move(b)};
  }
  if (spec.kind == "random") {
    GroupSet a = random_set(g, spec.mu_a, rng);
    GroupSet b = random_set(g, spec.mu_b, rng);
    return {std::move(a), std::move(b)};
  }
  if (spec.kind == "interval") {
    auto make = [&](double mu) {
      auto len = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::llround(mu * static_cast<double>(g.size()))), 1, g.size());
      auto start = static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(g.size())));
      return GroupSet::interval(g, start, len);
    };
    GroupSet a = make(spec.mu_a);
    GroupSet b = make(spec.mu_b);
    return {std::move(a), std::move(b)};
  }
  if (spec.kind == "adversarial-subgroup") {
    GroupSet h = subgroup_set(g);
    return {h, h};
  }
  throw std::invalid_argument("generate: unknown generator kind '" + spec.kind + "'");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (j.contains("gen")) c.gen = GenSpec::from_json(j.at("gen"));
  c.law = j.value("law", c.law);
  c.trials = j.value("trials", c.trials);
  c.seed = j.value("seed", c.seed);
  if (j.contains("delta")) c.delta = parse_rational(j.at("delta").get<std::string>());
  if (j.contains("tolerance")) c.tolerance = parse_rational(j.at("tolerance").get<std::string>());
  c.eps = j.value("eps", c.eps);
  c.out_path = j.value("out", c.out_path);
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  return nlohmann::json{{"gen", gen.to_json()},   {"law", law},
                        {"trials", trials},       {"seed", seed},
                        {"delta", delta.str()},   {"tolerance", tolerance.str()},
                        {"eps", eps},             {"out", out_path}};
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  }
  return Rational(std::stoll(text));
}

namespace {

nlohmann::json report_json(const BoundReport& r) {
  return nlohmann::json{{"lhs", r.lhs.str()},
                        {"rhs", r.rhs.str()},
                        {"holds", r.holds},
                        {"defect", r.defect.str()},
                        {"connectedness_caveat", r.connectedness_caveat}};
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord record;
  record.config_echo = config.to_json();
  record.config_echo["schema"] = 1;

  std::vector<double> residuals;
  for (int i = 0; i < config.trials; ++i) {
    std::uint64_t instance_seed = config.seed + static_cast<std::uint64_t>(i);
    nlohmann::json row{{"schema", 1}, {"index", i}, {"seed", instance_seed}};
    try {
      auto [a, b] = generate(config.gen, instance_seed);
      const std::int64_t n = a.group().size();
      auto rng = make_rng(instance_seed ^ 0x9e3779b97f4a7c15ULL);
      if (config.law == "kneser") {
        auto r = check_kneser(a, b);
        row["report"] = report_json(r);
        if (!r.holds) ++record.violations;
      } else if (config.law == "ruzsa") {
        std::int64_t cap = std::min(a.cardinality(), b.cardinality());
        Rational t(static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(cap))) + 1, n);
        auto r = ruzsa_functional(a, b, t);
        row["t"] = t.str();
        row["report"] = report_json(r);
        if (!r.holds) ++record.violations;
      } else if (config.law == "partial") {
        Rational min_mu = std::min(a.measure(), b.measure());
        Rational sq = min_mu * min_mu;
        std::int64_t cap = std::max<std::int64_t>((sq * Rational(n)).num() / (sq * Rational(n)).den(), 2);
        Rational eps(static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(cap - 1))) + 1, n);
        if (eps >= sq) eps = sq - Rational(1, n);
        if (eps <= Rational(0)) throw std::runtime_error("instance too small for a valid eps");
        auto r = check_partial_bound(a, b, eps);
        row["eps"] = eps.str();
        row["report"] = report_json(r);
        if (!r.holds) ++record.violations;
      } else if (config.law == "submod") {
        auto [a2, b2] = generate(config.gen, instance_seed ^ 0x5851f42d4c957f2dULL);
        Rational t(static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(n))) + 1, n);
        auto r = submodularity_defect(a, a2, b, t);
        row["t"] = t.str();
        row["report"] = report_json(r);
        row["pointwise_min"] = r.pointwise_min->str();
        if (!r.holds) ++record.violations;
      } else if (config.law == "classify") {
        row["class"] = to_string(classify_equality(a, b));
      } else if (config.law == "recover") {
        RecoveryConfig rc;
        rc.tolerance = config.tolerance;
        rc.eps = config.eps;
        auto r = recover_bohr_pair(a, b, config.delta, rc);
        double worst = std::max(r.residual_a, r.residual_b).to_double();
        residuals.push_back(worst);
        row["character"] = r.character.freq();
        row["tau"] = r.tau;
        row["m"] = r.multiplicity;
        row["residual_a"] = r.residual_a.str();
        row["residual_b"] = r.residual_b.str();
        row["success"] = r.success;
        if (!r.success) ++record.violations;
      } else {
        throw std::invalid_argument("run_experiment: unknown law '" + config.law + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;  // configuration errors abort the batch
    } catch (const std::exception& e) {
      row["error"] = e.what();
      ++record.errors;
    }
    record.instances.push_back(std::move(row));
  }

  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  record.aggregate = nlohmann::json{{"schema", 1},
                                    {"trials", config.trials},
                                    {"violations", record.violations},
                                    {"errors", record.errors},
                                    {"wall_seconds", record.wall_seconds}};
  if (!residuals.empty()) {
    std::sort(residuals.begin(), residuals.end());
    auto q = [&](double p) {
      auto idx = static_cast<std::size_t>(p * static_cast<double>(residuals.size() - 1));
      return residuals[idx];
    };
    record.aggregate["residual_quantiles"] =
        nlohmann::json{{"p50", q(0.5)}, {"p90", q(0.9)}, {"max", residuals.back()}};
  }

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path, std::ios::app);
    if (!out) throw std::runtime_error("run_experiment: cannot open " + config.out_path);
    out << record.config_echo.dump() << "\n";
    for (const auto& row : record.instances) out << row.dump() << "\n";
    out << record.aggregate.dump() << "\n";
  }
  return record;
}

}  // namespace sumlab
