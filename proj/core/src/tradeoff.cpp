#include "qprobe/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>
#include <vector>

#include "qprobe/random.hpp"

namespace qprobe {

namespace {

// sqrt of a0^2 - |a|^2 style determinants; tiny negatives are rounding.
double sqrt_det(double x) { return std::sqrt(std::max(x, 0.0)); }

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

using SampleFn = std::function<double(const Vec3& direction, const Ket2& psi)>;

MCEstimate run_mc(const SampleFn& sample, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw std::invalid_argument("Monte Carlo sample count must be at least 1");
  const std::uint64_t blocks = (n + kMCBlockSize - 1) / kMCBlockSize;
  std::vector<BlockSums> partial(blocks);

  const auto run_block = [&](std::uint64_t b) {
    Stream stream(seed, b);
    const std::uint64_t begin = b * kMCBlockSize;
    const std::uint64_t end = std::min(n, begin + kMCBlockSize);
    BlockSums acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      const HaarSample h = haar_state(stream);
      const double v = sample(h.direction, h.ket);
      acc.sum += v;
      acc.sum_sq += v * v;
    }
    partial[b] = acc;
  };

  const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::min<std::uint64_t>(blocks, 1024)));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
      });
  }

  BlockSums total;
  for (const auto& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  const double count = static_cast<double>(n);
  MCEstimate est;
  est.n_samples = n;
  est.mean = total.sum / count;
  if (n > 1) {
    const double var = std::max(0.0, (total.sum_sq - total.sum * est.mean) / (count - 1.0));
    est.std_error = std::sqrt(var / count);
  }
  return est;
}

}  // namespace

void require_valid(const Effect& e) {
  const auto v = validate_effect(e);
  if (!v.valid) throw InvalidEffect("invalid effect: " + v.reason);
}

double fidelity_F(const Effect& e) {
  require_valid(e);
  const double r2 = e.abs_a() * e.abs_a();
  const double b0 = 1.0 - e.a0;
  return (4.0 + 2.0 * sqrt_det(e.a0 * e.a0 - r2) + 2.0 * sqrt_det(b0 * b0 - r2)) / 6.0;
}

double fidelity_F_matrix(const Effect& e) {
  require_valid(e);
  const CMat2 pi = e.matrix ? *e.matrix : e.to_matrix();
  const double t0 = std::norm(sqrt_psd2(pi).trace());
  const double t1 = std::norm(sqrt_psd2(CMat2::identity() - pi).trace());
  return (2.0 + t0 + t1) / 6.0;
}

double fidelity_F_sphere_identity(const Effect& e) {
  require_valid(e);
  const CMat2 pi = e.matrix ? *e.matrix : e.to_matrix();
  double total = 0.0;
  for (const CMat2& effect : {pi, CMat2(CMat2::identity() - pi)}) {
    const auto c = pauli_decompose(sqrt_psd2(effect));
    const double r = norm(c.a);
    total += c.a0 * c.a0 + r * r / 3.0;
  }
  return total;
}

InformationFidelity fidelity_G(const Effect& e) {
  require_valid(e);
  const CMat2 pi = e.matrix ? *e.matrix : e.to_matrix();
  const CMat2 rest = CMat2::identity() - pi;
  InformationFidelity out;
  out.states.phi0 = eig_h2(pi).vectors[0];
  out.states.phi1 = eig_h2(rest).vectors[0];
  out.G = (2.0 + expectation(pi, out.states.phi0).real() + expectation(rest, out.states.phi1).real()) /
          6.0;
  return out;
}

double fidelity_G_closed(const Effect& e) {
  require_valid(e);
  return (3.0 + 2.0 * e.abs_a()) / 6.0;
}

TradeoffValue tradeoff_T(double G, double F) {
  const double dF = F - 2.0 / 3.0;
  const double dG = G - 0.5;
  TradeoffValue out;
  out.value = dF * dF + 4.0 * dG * dG;
  out.saturated = std::abs(out.value - kTradeoffBound) <= kSaturationTolerance;
  return out;
}

TradeoffPoint evaluate_tradeoff(const Effect& e) {
  TradeoffPoint p;
  p.F = fidelity_F(e);
  p.G = fidelity_G_closed(e);
  const auto t = tradeoff_T(p.G, p.F);
  p.T = t.value;
  p.saturated = t.saturated;
  return p;
}

MCEstimate mc_fidelity_F(const Effect& e, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  require_valid(e);
  const CMat2 pi = e.matrix ? *e.matrix : e.to_matrix();
  // <psi|A|psi> = c0 + c . n for A = c0 I + c . sigma; this keeps a
  // deterministic outcome (Pi = I) exact sample by sample.
  const auto r0 = pauli_decompose(sqrt_psd2(pi));
  const auto r1 = pauli_decompose(sqrt_psd2(CMat2::identity() - pi));
  const auto amp = [](const PauliCoefficients& c, const Vec3& n) {
    return c.a0 + c.a[0] * n[0] + c.a[1] * n[1] + c.a[2] * n[2];
  };
  return run_mc(
      [&](const Vec3& n, const Ket2&) {
        const double x0 = amp(r0, n);
        const double x1 = amp(r1, n);
        return x0 * x0 + x1 * x1;
      },
      n, seed, threads);
}

MCEstimate mc_fidelity_G(const Effect& e, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  const auto info = fidelity_G(e);
  const CMat2 pi = e.matrix ? *e.matrix : e.to_matrix();
  const CMat2 rest = CMat2::identity() - pi;
  return run_mc(
      [&](const Vec3&, const Ket2& psi) {
        const double p0 = expectation(pi, psi).real();
        const double p1 = expectation(rest, psi).real();
        return p0 * std::norm(inner(psi, info.states.phi0)) + p1 * std::norm(inner(psi, info.states.phi1));
      },
      n, seed, threads);
}

}  // namespace qprobe
