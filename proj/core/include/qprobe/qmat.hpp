#pragma once

// Fixed-size dense complex matrices for single- and two-qubit work.
//
// Two-qubit operators use the ordering signal (x) probe everywhere: the basis
// index of |s, p> is 2*s + p.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>

namespace qprobe {

using cplx = std::complex<double>;

template <std::size_t N>
struct Matrix {
  static constexpr std::size_t dim = N;

  std::array<cplx, N * N> data{};

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx& operator()(std::size_t row, std::size_t col) { return data[row * N + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return data[row * N + col]; }

  Matrix adjoint() const {
    Matrix out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& rhs) {
    for (std::size_t k = 0; k < N * N; ++k) data[k] += rhs.data[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& rhs) {
    for (std::size_t k = 0; k < N * N; ++k) data[k] -= rhs.data[k];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& v : data) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix m, cplx s) { return m *= s; }
  friend Matrix operator*(cplx s, Matrix m) { return m *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using CMat2 = Matrix<2>;
using CMat4 = Matrix<4>;

/// Two complex amplitudes in the computational basis {|0>, |1>}.
struct Ket2 {
  std::array<cplx, 2> amp{};

  cplx& operator[](std::size_t i) { return amp[i]; }
  const cplx& operator[](std::size_t i) const { return amp[i]; }

  double norm() const;
  /// |v><v|
  CMat2 outer() const;
};

/// <u|v>
cplx inner(const Ket2& u, const Ket2& v);
/// <v|M|v>
cplx expectation(const CMat2& m, const Ket2& v);
Ket2 apply(const CMat2& m, const Ket2& v);

/// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < N * N; ++k) d = std::max(d, std::abs(a.data[k] - b.data[k]));
  return d;
}

template <std::size_t N>
double max_abs(const Matrix<N>& a) {
  double d = 0.0;
  for (const auto& v : a.data) d = std::max(d, std::abs(v));
  return d;
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& m, double tol = 1e-12) {
  return max_abs_diff(m, m.adjoint()) <= tol;
}

template <std::size_t N>
bool is_unitary(const Matrix<N>& m, double tol = 1e-10) {
  return max_abs_diff(m.adjoint() * m, Matrix<N>::identity()) <= tol;
}

/// Pauli matrix by index: 0 = I, 1 = sigma_x, 2 = sigma_y, 3 = sigma_z.
/// Throws std::out_of_range for any other index.
CMat2 pauli(int index);

/// Kronecker product, entry (2i+k, 2j+l) = a(i,j) * b(k,l). The first factor
/// is the signal, the second the probe.
CMat4 kron(const CMat2& signal, const CMat2& probe);

/// Trace over the second (probe) factor.
CMat2 partial_trace_probe(const CMat4& m);

struct HermitianEigen2 {
  std::array<double, 2> values{};  // descending
  std::array<Ket2, 2> vectors{};   // orthonormal, vectors[k] belongs to values[k]
};

/// Spectral decomposition of a Hermitian 2x2 matrix. Eigenvalues whose gap
/// is at most 1e-12 are treated as degenerate and returned with the
/// computational basis. Throws std::invalid_argument for non-Hermitian input.
HermitianEigen2 eig_h2(const CMat2& m);

/// Principal square root of a positive semidefinite 2x2 matrix. Eigenvalues
/// in [-1e-9, 16 eps] are taken as zero; anything below -1e-9 throws
/// std::domain_error.
CMat2 sqrt_psd2(const CMat2& m);

/// exp(-i (c1 S1 + c2 S2 + c3 S3)) with S_k = 1/2 sigma_k (x) sigma_k.
///
/// The three generators commute and are simultaneously diagonal in the Bell
/// basis, so the exponential is assembled from four phases.
CMat4 cartan_exp(double c1, double c2, double c3);

}  // namespace qprobe
