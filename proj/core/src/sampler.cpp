#include "qprobe/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qprobe/random.hpp"

namespace qprobe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHistSlack = 1e-9;

// Periodic angles live on [0, 2 pi); a draw landing on 2 pi is the same point as 0.
double fold_periodic(double v) { return v >= kTwoPi ? v - kTwoPi : v; }

std::size_t bin_of(double v, const std::vector<double>& edges) {
  const double lo = edges.front(), hi = edges.back();
  if (v < lo - kHistSlack || v > hi + kHistSlack || !std::isfinite(v))
    throw std::domain_error("histogram value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  const std::size_t bins = edges.size() - 1;
  if (v >= hi) return bins - 1;
  if (v <= lo) return 0;
  // upper_bound gives the first edge strictly above v.
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  return std::min(bins - 1, static_cast<std::size_t>(it - edges.begin()) - 1);
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins) {
  std::vector<double> edges(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k)
    edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
  edges.back() = hi;
  return edges;
}

}  // namespace

SampleRecord draw_one(const Scenario& s, std::uint64_t seed, std::uint64_t index) {
  Stream stream(seed, index);
  SampleRecord r;
  r.scenario = s.name;
  r.seed = seed;
  r.index = index;

  CartanParams& c = r.point.cartan;
  c.a1 = stream.uniform(s.a1.lo, s.a1.hi);
  const double lo2 = s.a2_lo.eval(c.a1, 0.0), hi2 = s.a2_hi.eval(c.a1, 0.0);
  if (lo2 > hi2) throw MalformedScenario("scenario '" + s.name + "': empty a2 interval");
  c.a2 = stream.uniform(lo2, hi2);
  const double lo3 = s.a3_lo.eval(c.a1, c.a2), hi3 = s.a3_hi.eval(c.a1, c.a2);
  if (lo3 > hi3) throw MalformedScenario("scenario '" + s.name + "': empty a3 interval");
  c.a3 = stream.uniform(lo3, hi3);

  r.point.probe.mu = stream.uniform(s.mu.lo, s.mu.hi);
  r.point.probe.theta = stream.uniform(s.theta.lo, s.theta.hi);
  r.point.probe.phi = fold_periodic(stream.uniform(s.phi.lo, s.phi.hi));
  r.point.projector.alpha = stream.uniform(s.alpha.lo, s.alpha.hi);
  r.point.projector.beta = fold_periodic(stream.uniform(s.beta.lo, s.beta.hi));

  const Effect e = effect_closed_form(r.point);
  r.a0 = e.a0;
  r.a = e.a;
  r.abs_a = e.abs_a();
  const TradeoffPoint t = evaluate_tradeoff(e);
  r.F = t.F;
  r.G = t.G;
  r.T = t.T;
  return r;
}

std::vector<SampleRecord> draw(const Scenario& s, std::uint64_t seed, std::uint64_t n, unsigned threads) {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
  check_scenario(s);
  std::vector<SampleRecord> out(n);
  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, n));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < n; ++i) out[i] = draw_one(s, seed, i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t i = w; i < n; i += workers) out[i] = draw_one(s, seed, i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

std::size_t Histogram2D::g_bin_of(double g) const { return bin_of(g, g_edges); }
std::size_t Histogram2D::f_bin_of(double f) const { return bin_of(f, f_edges); }

Histogram2D histogram(std::span<const SampleRecord> records, std::size_t g_bins, std::size_t f_bins) {
  if (records.empty()) throw std::invalid_argument("histogram of an empty record set");
  if (g_bins == 0 || f_bins == 0) throw std::invalid_argument("histogram bin counts must be at least 1");
  Histogram2D h;
  h.g_edges = uniform_edges(kHistGMin, kHistGMax, g_bins);
  h.f_edges = uniform_edges(kHistFMin, kHistFMax, f_bins);
  h.counts.assign(g_bins * f_bins, 0);
  for (const auto& r : records) {
    ++h.counts[h.g_bin_of(r.G) * f_bins + h.f_bin_of(r.F)];
    ++h.total;
  }
  return h;
}

std::vector<SweepPoint> cnot_sweep(const CnotSweepOptions& options) {
  if (options.steps < 2) throw std::invalid_argument("cnot sweep needs at least 2 steps");
  ModelPoint m;
  m.cartan = kCnotCartan;
  m.probe.mu = options.mu;
  m.probe.phi = options.phi;
  m.projector = {options.alpha, options.beta};

  std::vector<SweepPoint> out;
  out.reserve(options.steps);
  for (std::size_t k = 0; k < options.steps; ++k) {
    m.probe.theta = 0.5 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(options.steps - 1);
    const TradeoffPoint t = evaluate_tradeoff(effect_closed_form(m));
    out.push_back({m.probe.theta, t.F, t.G, t.T});
  }
  return out;
}

}  // namespace qprobe
