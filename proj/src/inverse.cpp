#include "sumlab/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sumlab/fft.hpp"

namespace sumlab {

Rational DensityFunction::mass() const {
  Rational sum(0);
  for (const auto& v : values) sum += v;
  return sum / Rational(circle_size);
}

std::vector<SpectrumEntry> spectrum(const GroupSet& a) {
  const auto& g = a.group();
  const std::int64_t n = g.size();
  std::vector<std::complex<double>> data(static_cast<std::size_t>(n), {0.0, 0.0});
  for (std::int64_t i = 0; i < n; ++i)
    if (a.contains(i)) data[static_cast<std::size_t>(i)] = {1.0, 0.0};
  dft_nd(data, g.dims(), -1);
  std::vector<SpectrumEntry> out(static_cast<std::size_t>(n));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::int64_t k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)].freq = g.coords(k);
    out[static_cast<std::size_t>(k)].magnitude = std::abs(data[static_cast<std::size_t>(k)]) * inv_n;
  }
  return out;
}

DetectedCharacter detect_character(const GroupSet& c2) {
  if (c2.is_empty()) throw std::invalid_argument("detect_character: empty set");
  const auto& g = c2.group();
  auto spec = spectrum(c2);
  bool found = false;
  DetectedCharacter best;
  std::int64_t best_order = 0;
  constexpr double kTieTol = 1e-12;
  for (std::int64_t k = 1; k < g.size(); ++k) {
    const auto& e = spec[static_cast<std::size_t>(k)];
    auto rep = character_class_representative(g, e.freq);
    if (rep != e.freq) continue;  // visit each +-class once, at its representative
    std::int64_t order = character_order(g, rep);
    bool better = false;
    if (!found || e.magnitude > best.magnitude + kTieTol) {
      better = true;
    } else if (e.magnitude > best.magnitude - kTieTol) {
      better = order < best_order || (order == best_order && rep < best.freq);
    }
    if (better) {
      best.freq = rep;
      best.magnitude = e.magnitude;
      best_order = order;
      found = true;
    }
  }
  if (!found || best.magnitude < 1e-9)
    throw std::runtime_error("detect_character: spectrum is flat away from zero");
  best.weak = best.magnitude < 0.5 * c2.measure().to_double();
  return best;
}

DensityFunction pushforward(const GroupSet& a, const Character& chi, std::int64_t window) {
  if (chi.is_zero()) throw std::invalid_argument("pushforward: zero character");
  if (chi.group() != a.group()) throw std::invalid_argument("pushforward: group mismatch");
  if (window < 0) throw std::invalid_argument("pushforward: negative window");
  const std::int64_t L = chi.order();
  const std::int64_t fiber = a.group().size() / L;
  auto phases = chi.phase_table();
  std::vector<std::int64_t> fiber_counts(static_cast<std::size_t>(L), 0);
  for (std::int64_t x = 0; x < a.group().size(); ++x)
    if (a.contains(x)) ++fiber_counts[static_cast<std::size_t>(phases[static_cast<std::size_t>(x)])];

  DensityFunction f;
  f.circle_size = L;
  f.window = window;
  f.values.resize(static_cast<std::size_t>(L));
  if (window <= 1) {
    for (std::int64_t i = 0; i < L; ++i)
      f.values[static_cast<std::size_t>(i)] = Rational(fiber_counts[static_cast<std::size_t>(i)], fiber);
  } else {
    // circular box average over `window` consecutive classes; mass-preserving
    std::int64_t running = 0;
    for (std::int64_t j = 0; j < window; ++j)
      running += fiber_counts[static_cast<std::size_t>(j % L)];
    for (std::int64_t i = 0; i < L; ++i) {
      f.values[static_cast<std::size_t>(i)] = Rational(running, fiber * window);
      running -= fiber_counts[static_cast<std::size_t>(i)];
      running += fiber_counts[static_cast<std::size_t>((i + window) % L)];
    }
  }
  return f;
}

double estimate_sup(const DensityFunction& f, double theta) {
  if (theta <= 0.0 || theta >= 1.0) throw std::invalid_argument("estimate_sup: theta in (0,1)");
  Rational total(0);
  for (const auto& v : f.values) total += v;
  if (total.is_zero()) throw std::invalid_argument("estimate_sup: zero mass");
  std::vector<Rational> sorted = f.values;
  std::sort(sorted.begin(), sorted.end(), [](const Rational& x, const Rational& y) { return y < x; });
  const double need = (1.0 - theta) * total.to_double();
  Rational cum(0);
  double tau = sorted.front().to_double();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cum += sorted[i];
    // include the whole level set of the current value before testing
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    if (cum.to_double() >= need - 1e-12) {
      tau = sorted[i].to_double();
      break;
    }
  }
  return tau;
}

ArcFit fit_arc(const DensityFunction& f, const Rational& target_mass, double level) {
  if (target_mass <= Rational(0) || target_mass > Rational(1))
    throw std::invalid_argument("fit_arc: target mass must lie in (0,1]");
  if (level <= 0.0) throw std::invalid_argument("fit_arc: level must be positive");
  const std::int64_t L = f.circle_size;
  auto len = static_cast<std::int64_t>(std::llround(target_mass.to_double() * static_cast<double>(L) / level));
  if (len > L) throw std::invalid_argument("fit_arc: target incompatible with circle size");
  if (len < 1) len = 1;

  // circular sliding window over exact values
  Rational window_sum(0);
  for (std::int64_t j = 0; j < len; ++j) window_sum += f.values[static_cast<std::size_t>(j)];
  Rational best_sum = window_sum;
  std::int64_t best_start = 0;
  for (std::int64_t s = 1; s < L; ++s) {
    window_sum -= f.values[static_cast<std::size_t>(s - 1)];
    window_sum += f.values[static_cast<std::size_t>((s + len - 1) % L)];
    if (window_sum > best_sum) {
      best_sum = window_sum;
      best_start = s;
    }
  }
  Arc arc{L, best_start, len};
  double residual = 0.0;
  for (std::int64_t i = 0; i < L; ++i) {
    double v = f.values[static_cast<std::size_t>(i)].to_double();
    residual += std::abs(v - (arc.contains(i) ? level : 0.0));
  }
  return ArcFit{arc, residual / static_cast<double>(L)};
}

int estimate_multiplicity(const DensityFunction& f, double tau, int m_max) {
  if (tau <= 0.0 || tau > 1.0) throw std::invalid_argument("estimate_multiplicity: tau in (0,1]");
  if (m_max < 1) throw std::invalid_argument("estimate_multiplicity: m_max must be >= 1");
  Rational total(0);
  for (const auto& v : f.values) total += v;
  Rational mass = total / Rational(f.circle_size);
  int best_m = 1;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= m_max; ++m) {
    double level = 1.0 / static_cast<double>(m);
    if (mass.to_double() / level > 1.0 + 1e-12) continue;  // arc would not fit
    double residual = fit_arc(f, mass, level).residual;
    bool better = residual < best_residual - 1e-12;
    if (!better && residual < best_residual + 1e-12) {
      better = std::abs(level - tau) <
               std::abs(1.0 / static_cast<double>(best_m) - tau);
    }
    if (better) {
      best_m = m;
      best_residual = residual;
    }
  }
  return best_m;
}

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t t = 0, new_t = 1, r = n, new_r = a % n;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
  }
  if (r != 1) throw std::runtime_error("mod_inverse: not invertible");
  return t < 0 ? t + n : t;
}

}  // namespace

Character quotient_character(const Character& chi, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("quotient_character: m must be >= 1");
  if (m == 1) return chi;
  const auto& g = chi.group();
  const int d = g.dim_count();
  // Per-axis solutions of m * xi' = xi mod N_i.
  std::vector<std::vector<std::int64_t>> axis_solutions(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::int64_t n = g.dims()[static_cast<std::size_t>(i)];
    std::int64_t xi = chi.freq()[static_cast<std::size_t>(i)];
    std::int64_t mm = m % n;
    std::int64_t gc = std::gcd(mm, n);  // gcd(0, n) = n
    if (xi % gc != 0)
      throw std::runtime_error("quotient_character: no solution modulo " + std::to_string(n));
    std::int64_t n_red = n / gc;
    std::int64_t base = 0;
    if (n_red > 1) base = (xi / gc) % n_red * mod_inverse((mm / gc) % n_red, n_red) % n_red;
    for (std::int64_t t = 0; t < gc; ++t)
      axis_solutions[static_cast<std::size_t>(i)].push_back(base + t * n_red);
  }
  // Enumerate combinations, pick smallest order then lexicographically smallest.
  std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
  std::vector<std::int64_t> best;
  std::int64_t best_order = 0;
  bool found = false;
  while (true) {
    std::vector<std::int64_t> cand(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      cand[static_cast<std::size_t>(i)] = axis_solutions[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
    std::int64_t order = character_order(g, cand);
    if (!found || order < best_order || (order == best_order && cand < best)) {
      best = cand;
      best_order = order;
      found = true;
    }
    int axis = d - 1;
    while (axis >= 0) {
      if (++pick[static_cast<std::size_t>(axis)] < axis_solutions[static_cast<std::size_t>(axis)].size()) break;
      pick[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return Character(g, best);
}

namespace {

// Internal: pushforward at window 0 and fit an arc at level 1.
TransferResult fit_set_arc(const GroupSet& a, const Character& chi) {
  auto f = pushforward(a, chi, 0);
  auto fitted = fit_arc(f, a.measure(), 1.0);
  GroupSet model = bohr_set(BohrDescription{chi, fitted.arc});
  return TransferResult{fitted.arc, symm_diff_measure(a, model)};
}

}  // namespace

TransferResult transfer_structure(const GroupSet& a, const Character& chi, const Arc& partner_arc,
                                  const Rational& tolerance) {
  GroupSet partner = bohr_set(BohrDescription{chi, partner_arc});
  Rational delta = std::max(tolerance, Rational(1, a.group().size()));
  if (delta > Rational(1)) delta = Rational(1);
  auto rep = criticality(a, partner, delta);
  if (rep.defect > tolerance)
    throw std::runtime_error("transfer_structure: pair with Bohr partner is not critical");
  return fit_set_arc(a, chi);
}

namespace {

// Find some x with phi(x)*L equal to the given residue; exists because the
// phase map is surjective onto Z/L.
std::int64_t phase_representative(const Character& chi, std::int64_t residue) {
  residue %= chi.order();
  if (residue < 0) residue += chi.order();
  for (std::int64_t x = 0; x < chi.group().size(); ++x)
    if (chi.eval_times_order(x) == residue) return x;
  throw std::runtime_error("phase_representative: residue not attained");
}

std::string freq_str(const std::vector<std::int64_t>& freq) {
  std::string s = "(";
  for (std::size_t i = 0; i < freq.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(freq[i]);
  }
  return s + ")";
}

}  // namespace

RecoveryResult recover_bohr_pair(const GroupSet& a, const GroupSet& b, const Rational& delta,
                                 const RecoveryConfig& config) {
  const auto& g = a.group();
  const std::int64_t n = g.size();
  std::vector<std::string> log;

  auto stage_fail = [&](const std::string& stage, const std::string& what) {
    throw std::runtime_error("recover_bohr_pair: stage '" + stage + "' failed: " + what);
  };

  // criticality gate
  auto crit = criticality(a, b, delta);
  if (crit.defect > config.tolerance)
    stage_fail("criticality", "defect " + crit.defect.str() + " exceeds tolerance " +
                                  config.tolerance.str());
  if (crit.margin.to_double() < config.eps)
    stage_fail("criticality", "margin " + crit.margin.str() + " below eps");
  log.push_back("criticality: defect=" + crit.defect.str() + " margin=" + crit.margin.str());

  // shrink to a small critical companion
  Rational delta_target = config.delta_target;
  if (delta_target == Rational(0)) delta_target = crit.margin / Rational(4);
  auto shrink = shrink_to_small(a, b, delta_target, config.tolerance, delta);
  const GroupSet& c = shrink.set;
  if (c.cardinality() < 2) stage_fail("shrink", "companion set degenerated to <2 elements");
  log.push_back("shrink: |C|=" + std::to_string(c.cardinality()) +
                " reached_target=" + (shrink.reached_target ? std::string("yes") : "no"));

  // doubled almost sumset and linear growth diagnostic; the chain tolerance
  // is kept tight independently of the criticality tolerance so that a noisy
  // companion cannot smuggle stray low-count arcs into C2
  Rational chain_tol = std::min(config.tolerance, Rational(1, 50)) + Rational(2, n);
  AlmostSumset c2 = almost_sumset(c, c, chain_tol);
  log.push_back("almost_sumset: delta_used=" + c2.delta_used.str() +
                " mu(C2)=" + c2.set.measure().str());
  {
    GroupSet ck = c2.set;
    Rational mu_c = c.measure();
    for (int k = 3; k <= config.k_steps; ++k) {
      if ((Rational(k) * mu_c + a.measure()).to_double() > 0.9) break;
      ck = almost_sumset(c, ck, chain_tol * Rational(k)).set;
      double expected = static_cast<double>(k) * mu_c.to_double();
      double got = ck.measure().to_double();
      // sublinear growth means C concentrates on a coset structure and the
      // arc model is wrong; overshoot is a benign noise artifact, so it is
      // only logged
      if (got < 0.5 * expected)
        stage_fail("growth_check", "mu(C_" + std::to_string(k) + ")=" + ck.measure().str() +
                                       " sublinear, subgroup-like companion");
      log.push_back("growth: k=" + std::to_string(k) + " mu=" + ck.measure().str() +
                    (got > 1.5 * expected ? " (overshoot)" : ""));
    }
  }

  // character detection on C2
  auto detected = detect_character(c2.set);
  Character det_chi(g, detected.freq);
  log.push_back("detect: freq=" + freq_str(detected.freq) +
                " magnitude=" + std::to_string(detected.magnitude) +
                (detected.weak ? " WEAK" : ""));

  // center C so its phases concentrate near 0
  const std::int64_t L = det_chi.order();
  GroupSet c_centered = c;
  {
    std::complex<double> coeff(0.0, 0.0);
    for (std::int64_t x : c.member_indices()) {
      double ang = -2.0 * std::numbers::pi *
                   static_cast<double>(det_chi.eval_times_order(x)) / static_cast<double>(L);
      coeff += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    double mean_phase = -std::arg(coeff) / (2.0 * std::numbers::pi);  // in turns
    auto residue = static_cast<std::int64_t>(std::llround(mean_phase * static_cast<double>(L)));
    std::int64_t x0 = phase_representative(det_chi, residue);
    c_centered = translate(c, g.negate(x0));
    log.push_back("center: shift residue=" + std::to_string(residue));
  }

  // pushforward density, tau, multiplicity
  std::int64_t window = config.window >= 0 ? config.window : (L + 255) / 256;
  auto density = pushforward(c_centered, det_chi, window);
  double tau = estimate_sup(density, config.theta);
  int m = estimate_multiplicity(density, tau, config.m_max);
  log.push_back("tau=" + std::to_string(tau) + " m=" + std::to_string(m) +
                " round(1/tau)=" + std::to_string(static_cast<int>(std::llround(1.0 / tau))));

  // quotient the character by the multiplicity
  Character chi = quotient_character(det_chi, m);
  log.push_back("quotient: freq=" + freq_str(chi.freq()) + " order=" + std::to_string(chi.order()));

  // arcs: C first (as the transfer anchor), then A, then B
  auto arc_c = fit_set_arc(c, chi);
  Rational transfer_tol = config.tolerance * Rational(4) + Rational(4, n);
  auto fit_a = transfer_structure(a, chi, arc_c.arc, transfer_tol);
  auto fit_b = transfer_structure(b, chi, fit_a.arc, transfer_tol);

  RecoveryResult result{chi,
                        fit_a.arc,
                        fit_b.arc,
                        tau,
                        m,
                        detected.freq,
                        fit_a.residual,
                        fit_b.residual,
                        false,
                        {}};
  result.success = std::max(fit_a.residual, fit_b.residual).to_double() <= config.eps;
  log.push_back("residuals: A=" + fit_a.residual.str() + " B=" + fit_b.residual.str());
  result.diagnostics = std::move(log);
  return result;
}

}  // namespace sumlab
