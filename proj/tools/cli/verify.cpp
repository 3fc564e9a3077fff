#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "records.hpp"

namespace qprobe::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct CheckResult {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::vector<ModelPoint> random_points(std::uint64_t n, std::uint64_t seed, unsigned threads) {
  const auto records = draw(builtin_scenario("full"), seed, n, threads);
  std::vector<ModelPoint> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.point);
  return out;
}

double max_coeff_diff(const Effect& x, const Effect& y) {
  double d = std::abs(x.a0 - y.a0);
  for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(x.a[k] - y.a[k]));
  return d;
}

CheckResult check_dual_path(const std::vector<ModelPoint>& points) {
  double worst = 0.0;
  for (const auto& m : points) worst = std::max(worst, max_coeff_diff(effect_closed_form(m), effect_matrix_path(m)));
  return {worst <= 1e-12, "max |closed - matrix| = " + sci(worst) + " over " + std::to_string(points.size()) +
                              " points (tol 1e-12)"};
}

CheckResult check_physicality(const std::vector<ModelPoint>& points) {
  std::size_t bad = 0;
  for (const auto& m : points) {
    const Effect e = effect_closed_form(m);
    if (!validate_effect(e).valid || !validate_effect(e.complement()).valid) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " effects or complements violate 0 <= Pi <= I (tol 1e-10)"};
}

CheckResult check_special_unitaries() {
  const CMat4 id = cartan_unitary({0.0, 0.0, 0.0});
  const bool id_exact = id == CMat4::identity();

  const CMat4 ixx = kron(pauli(1), pauli(1)) * cplx(0.0, 1.0);
  const double dev_xx = max_abs_diff(cartan_unitary({-kPi, kPi, 0.0}), ixx);

  const CMat4 swap_v = cartan_unitary({-kPi, 0.0, -kPi / 2.0});
  CMat4 swap;
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  double dev_swap = 0.0;
  for (std::size_t k = 0; k < 16; ++k)
    dev_swap = std::max(dev_swap, std::abs(std::abs(swap_v.data[k]) - std::abs(swap.data[k])));

  double dev_proj = 0.0;
  for (const double alpha : {0.0, 0.7, kPi / 2.0, 2.1, kPi})
    for (const double beta : {0.0, 1.3, 4.0}) {
      ModelPoint m;
      m.probe = {0.8, 1.1, 2.3};
      m.projector = {alpha, beta};
      m.cartan = {-kPi, 0.0, -kPi / 2.0};
      dev_proj = std::max(dev_proj, max_abs_diff(*effect_matrix_path(m).matrix, projector_matrix(m.projector)));
    }

  const bool pass = id_exact && dev_xx <= 1e-12 && dev_swap <= 1e-12 && dev_proj <= 1e-12;
  return {pass, std::string("V(0,0,0) == I exactly: ") + (id_exact ? "yes" : "no") +
                    "; |V(-pi,pi,0) - i XX| = " + sci(dev_xx) + "; ||V_swap| - |SWAP|| = " + sci(dev_swap) +
                    "; |Pi_swap - |xi><xi|| = " + sci(dev_proj) + " (tol 1e-12)"};
}

CheckResult check_tradeoff_bound(const std::vector<ModelPoint>& points, unsigned threads) {
  double worst = 0.0;
  for (const auto& m : points) worst = std::max(worst, evaluate_tradeoff(effect_closed_form(m)).T);
  const auto half = draw(builtin_scenario("mu-half"), 42, 10000, threads);
  double worst_half = 0.0;
  for (const auto& r : half) worst_half = std::max(worst_half, std::abs(r.T - kTradeoffBound));
  const bool pass = worst <= kTradeoffBound + 1e-10 && worst_half <= 1e-10;
  return {pass, "max T - 1/9 = " + sci(worst - kTradeoffBound) + "; mu-half max |T - 1/9| = " + sci(worst_half) +
                    " (tol 1e-10)"};
}

CheckResult check_fixed_points() {
  const Effect projector{0.5, {0.0, 0.0, 0.5}, std::nullopt};
  const Effect identity{1.0, {0.0, 0.0, 0.0}, std::nullopt};
  const double dev = std::max({std::abs(fidelity_F(projector) - 2.0 / 3.0),
                               std::abs(fidelity_G(projector).G - 2.0 / 3.0), std::abs(fidelity_F(identity) - 1.0),
                               std::abs(fidelity_G(identity).G - 0.5)});
  return {dev <= 1e-12, "max deviation from (F, G) = (2/3, 2/3) and (1, 1/2): " + sci(dev) + " (tol 1e-12)"};
}

CheckResult check_monte_carlo(const VerifyOptions& o, unsigned threads) {
  const auto points = random_points(o.mc_effects, o.seed + 1, threads);
  double worst_sigma = 0.0;
  double worst_identity = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Effect e = effect_matrix_path(points[k]);
    const double f = fidelity_F(e);
    const double g = fidelity_G_closed(e);
    const auto mf = mc_fidelity_F(e, o.mc_samples, o.seed + 1000 + k, threads);
    const auto mg = mc_fidelity_G(e, o.mc_samples, o.seed + 2000 + k, threads);
    const auto ratio = [](double est, double exact, double se) {
      const double diff = std::abs(est - exact);
      if (se > 0.0) return diff / se;
      return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    };
    worst_sigma = std::max({worst_sigma, ratio(mf.mean, f, mf.std_error), ratio(mg.mean, g, mg.std_error)});
    worst_identity = std::max(worst_identity, std::abs(fidelity_F_sphere_identity(e) - f));
  }
  const bool pass = worst_sigma <= 5.0 && worst_identity <= 1e-12;
  return {pass, "max |MC - closed| / std_error = " + sci(worst_sigma) + " (limit 5) over " +
                    std::to_string(points.size()) + " effects x " + std::to_string(o.mc_samples) +
                    " samples; sphere identity deviation = " + sci(worst_identity) + " (tol 1e-12)"};
}

CheckResult check_envelope(const std::vector<ModelPoint>& points, unsigned threads) {
  double worst_excess = -1.0;
  for (const char* name : {"full", "mu-07", "mu-051", "mu-half", "mu-075"}) {
    const Scenario& s = builtin_scenario(name);
    const double envelope = 0.5 * std::sqrt(2.0 * s.mu.hi - 1.0);
    double widest = 0.0;
    for (const auto& r : draw(s, 42, 10000, threads)) widest = std::max(widest, std::abs(r.a0 - 0.5));
    worst_excess = std::max(worst_excess, widest - envelope);
  }
  double worst_f = 0.0;
  for (const auto& m : points) {
    if (m.probe.mu <= 0.5) continue;
    worst_f = std::max(worst_f, std::abs(envelope_f(effect_closed_form(m), m.probe)));
  }
  const bool pass = worst_excess <= 1e-12 && worst_f <= 2.0 + 1e-9;
  return {pass, "max(|a0 - 1/2| - sqrt(2 mu_max - 1)/2) = " + sci(worst_excess) + " (tol 1e-12); max |f| = " +
                    std::to_string(worst_f) + " (limit 2 + 1e-9)"};
}

CheckResult check_cnot_sweep() {
  CnotSweepOptions opts;
  opts.steps = 100;
  const auto sweep = cnot_sweep(opts);
  double worst = 0.0;
  for (const auto& p : sweep) worst = std::max(worst, std::abs(p.T - kTradeoffBound));
  const auto& first = sweep.front();
  const auto& last = sweep.back();
  const double end_dev = std::max({std::abs(first.G - 2.0 / 3.0), std::abs(first.F - 2.0 / 3.0),
                                   std::abs(last.G - 0.5), std::abs(last.F - 1.0)});
  return {worst <= 1e-10 && end_dev <= 1e-10,
          "max |T - 1/9| = " + sci(worst) + "; endpoint deviation = " + sci(end_dev) + " (tol 1e-10)"};
}

CheckResult check_distributions(unsigned threads) {
  const auto full = draw(builtin_scenario("full"), 42, 10000, threads);
  const auto h = histogram(full, 25, 25);
  const auto mode = std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin();
  const bool mode_ok = static_cast<std::size_t>(mode) == h.g_bin_of(0.5) * h.f_bins() + h.f_bin_of(1.0);

  const auto max_abs_a = [&](const char* name) {
    double m = 0.0;
    for (const auto& r : draw(builtin_scenario(name), 42, 10000, threads)) m = std::max(m, r.abs_a);
    return m;
  };
  const double tenth = max_abs_a("a1-tenth"), third = max_abs_a("a1-third"), whole = max_abs_a("full");
  const bool shrink_ok = tenth < third && third < whole;

  const auto minima = [&](const char* name) {
    double a0 = 1.0, abs_a = 1.0;
    for (const auto& r : draw(builtin_scenario(name), 42, 10000, threads)) {
      a0 = std::min(a0, r.a0);
      abs_a = std::min(abs_a, r.abs_a);
    }
    return std::pair{a0, abs_a};
  };
  const auto [a0_910, abs_910] = minima("a3-910");
  const auto [a0_34, abs_34] = minima("a3-34");
  const bool collapse_ok = a0_910 > a0_34 && abs_910 > abs_34;

  return {mode_ok && shrink_ok && collapse_ok,
          std::string("mode bin holds (1/2, 1): ") + (mode_ok ? "yes" : "no") + "; max|a| tenth/third/full = " +
              std::to_string(tenth) + "/" + std::to_string(third) + "/" + std::to_string(whole) +
              "; min(a0), min|a| a3-910 vs a3-34 = (" + std::to_string(a0_910) + ", " + std::to_string(abs_910) +
              ") vs (" + std::to_string(a0_34) + ", " + std::to_string(abs_34) + ")"};
}

CheckResult check_determinism() {
  const Scenario& s = builtin_scenario("full");
  std::ostringstream serial, parallel, again;
  write_records_csv(serial, draw(s, 42, 2000, 1));
  write_records_csv(parallel, draw(s, 42, 2000, 4));
  write_records_csv(again, draw(s, 42, 2000, 1));
  const bool pass = serial.str() == parallel.str() && serial.str() == again.str();
  return {pass, std::string("CSV bytes identical across repeats and 1 vs 4 workers: ") + (pass ? "yes" : "no")};
}

}  // namespace

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.n == 0 || o.mc_samples == 0 || o.mc_effects == 0) {
    err << "error: --n, --mc-samples and --mc-effects must be at least 1\n";
    return kUsageError;
  }
  const unsigned threads = sampler_threads();
  const auto points = random_points(o.n, o.seed, threads);

  const std::vector<std::pair<const char*, std::function<CheckResult()>>> checks = {
      {"dual-path", [&] { return check_dual_path(points); }},
      {"physicality", [&] { return check_physicality(points); }},
      {"special-unitaries", [] { return check_special_unitaries(); }},
      {"tradeoff-bound", [&] { return check_tradeoff_bound(points, threads); }},
      {"fixed-point-fidelities", [] { return check_fixed_points(); }},
      {"monte-carlo", [&] { return check_monte_carlo(o, threads); }},
      {"a0-envelope", [&] { return check_envelope(points, threads); }},
      {"cnot-sweep", [] { return check_cnot_sweep(); }},
      {"distributions", [&] { return check_distributions(threads); }},
      {"determinism", [] { return check_determinism(); }},
  };

  std::size_t failed = 0;
  for (const auto& [name, check] : checks) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    out << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail << '\n';
    if (!r.pass) ++failed;
  }
  if (failed > 0) {
    out << "verify: " << failed << " of " << checks.size() << " checks FAILED\n";
    return kValidationFailure;
  }
  out << "verify: all " << checks.size() << " checks passed\n";
  return kSuccess;
}

}  // namespace qprobe::cli
