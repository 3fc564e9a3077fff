#include "qprobe/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qprobe {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kDegenerateGap = 1e-12;
constexpr double kClampFloor = -1e-9;

}  // namespace

double Ket2::norm() const { return std::sqrt(std::norm(amp[0]) + std::norm(amp[1])); }

CMat2 Ket2::outer() const {
  CMat2 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = amp[i] * std::conj(amp[j]);
  return m;
}

cplx inner(const Ket2& u, const Ket2& v) {
  return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

Ket2 apply(const CMat2& m, const Ket2& v) {
  return Ket2{{m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]}};
}

cplx expectation(const CMat2& m, const Ket2& v) { return inner(v, apply(m, v)); }

CMat2 pauli(int index) {
  CMat2 m;
  switch (index) {
    case 0:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = cplx(0.0, -1.0);
      m(1, 0) = cplx(0.0, 1.0);
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw std::out_of_range("pauli index must be in 0..3, got " + std::to_string(index));
  }
  return m;
}

CMat4 kron(const CMat2& signal, const CMat2& probe) {
  CMat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = signal(i, j) * probe(k, l);
  return out;
}

CMat2 partial_trace_probe(const CMat4& m) {
  CMat2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

HermitianEigen2 eig_h2(const CMat2& m) {
  const double scale = std::max(1.0, max_abs(m));
  if (!is_hermitian(m, kHermitianTol * scale))
    throw std::invalid_argument("eig_h2: matrix is not Hermitian");

  // m = c0 I + c . sigma, eigenvalues c0 +- |c| with the + eigenvector along
  // the Bloch direction of c.
  const double c0 = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double cx = 0.5 * (m(0, 1).real() + m(1, 0).real());
  const double cy = 0.5 * (m(1, 0).imag() - m(0, 1).imag());
  const double cz = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double r = std::sqrt(cx * cx + cy * cy + cz * cz);

  HermitianEigen2 out;
  out.values = {c0 + r, c0 - r};
  if (2.0 * r <= kDegenerateGap) {
    out.vectors[0] = Ket2{{1.0, 0.0}};
    out.vectors[1] = Ket2{{0.0, 1.0}};
    return out;
  }

  const double nx = cx / r, ny = cy / r, nz = cz / r;
  // Pick the branch that avoids cancellation near the south/north pole.
  Ket2 up = nz >= 0.0 ? Ket2{{1.0 + nz, cplx(nx, ny)}} : Ket2{{cplx(nx, -ny), 1.0 - nz}};
  const double norm = up.norm();
  up[0] /= norm;
  up[1] /= norm;
  out.vectors[0] = up;
  out.vectors[1] = Ket2{{-std::conj(up[1]), std::conj(up[0])}};
  return out;
}

CMat2 sqrt_psd2(const CMat2& m) {
  const auto eig = eig_h2(m);
  // Eigenvalues at rounding level are zero: their square roots (~1e-8)
  // would otherwise dominate the error for rank-one input.
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(eig.values[0]));
  CMat2 out;
  for (std::size_t k = 0; k < 2; ++k) {
    double lambda = eig.values[k];
    if (lambda < kClampFloor)
      throw std::domain_error("sqrt_psd2: eigenvalue " + std::to_string(lambda) +
                              " is negative beyond tolerance");
    if (lambda <= noise) continue;
    out += eig.vectors[k].outer() * std::sqrt(lambda);
  }
  return out;
}

CMat4 cartan_exp(double c1, double c2, double c3) {
  // Eigenvalues of (XX, YY, ZZ) on the Bell states:
  //   Phi+ = (|00>+|11>)/sqrt2 : (+1, -1, +1)
  //   Phi- = (|00>-|11>)/sqrt2 : (-1, +1, +1)
  //   Psi+ = (|01>+|10>)/sqrt2 : (+1, +1, -1)
  //   Psi- = (|01>-|10>)/sqrt2 : (-1, -1, -1)
  // Generator eigenvalue is half the signed sum of the coefficients.
  const double phi_plus = 0.5 * (c1 - c2 + c3);
  const double phi_minus = 0.5 * (-c1 + c2 + c3);
  const double psi_plus = 0.5 * (c1 + c2 - c3);
  const double psi_minus = 0.5 * (-c1 - c2 - c3);

  // Within each two-dimensional Bell block,
  //   (e^{-ia} + e^{-ib})/2 = e^{-i(a+b)/2} cos((a-b)/2)
  //   (e^{-ia} - e^{-ib})/2 = -i e^{-i(a+b)/2} sin((a-b)/2)
  const auto block = [](double a, double b) {
    const cplx phase = std::polar(1.0, -0.5 * (a + b));
    const double half = 0.5 * (a - b);
    return std::pair<cplx, cplx>{phase * std::cos(half), cplx(0.0, -1.0) * phase * std::sin(half)};
  };
  const auto [even_diag, even_off] = block(phi_plus, phi_minus);
  const auto [odd_diag, odd_off] = block(psi_plus, psi_minus);

  CMat4 v;
  v(0, 0) = even_diag;
  v(3, 3) = even_diag;
  v(0, 3) = even_off;
  v(3, 0) = even_off;
  v(1, 1) = odd_diag;
  v(2, 2) = odd_diag;
  v(1, 2) = odd_off;
  v(2, 1) = odd_off;
  return v;
}

}  // namespace qprobe
