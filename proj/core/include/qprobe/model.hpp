#pragma once

// Probe-qubit indirect measurement: the signal qubit is coupled to a probe
// qubit by the non-local Cartan core V of a two-qubit unitary, then the probe
// is projected on |xi><xi|. The induced two-outcome POVM on the signal is
// {Pi, I - Pi} with
//
//   Pi = Tr_probe[(I (x) rho_P) V^dagger (I (x) P) V] = a0 I + a . sigma.
//
// Eight real parameters determine Pi: probe purity and Bloch angles
// (mu, theta, phi), projector angles (alpha, beta) and the three Cartan
// angles (a1, a2, a3).

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "qprobe/qmat.hpp"

namespace qprobe {

using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);

struct ProbeParams {
  double mu = 1.0;     // purity tr(rho^2), in [1/2, 1]
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

struct ProjectorParams {
  double alpha = 0.0;  // [0, pi]
  double beta = 0.0;   // [0, 2 pi)
};

struct CartanParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

struct ModelPoint {
  ProbeParams probe;
  ProjectorParams projector;
  CartanParams cartan;
};

/// Which admissibility condition a parameter set violates.
enum class Constraint {
  Range,    // probe/projector ranges
  A1Bound,  // -pi <= a1 <= 0
  A2Bound,  // 0 <= a2 <= -a1
  A3Bound,  // a1 + a2 <= 2 a3 <= 0
};

const char* constraint_label(Constraint c);

class ConstraintViolation : public std::domain_error {
 public:
  ConstraintViolation(Constraint which, const std::string& detail);
  Constraint which() const noexcept { return which_; }

 private:
  Constraint which_;
};

struct CartanCheck {
  std::optional<Constraint> violated;
  std::string detail;
  // False when a3 == 0 and a1 - a2 < -pi. Such points lie outside the
  // canonical chamber but still describe a valid coupling (V(-pi, pi, 0) is
  // i sigma_x (x) sigma_x), so this is reported, not rejected.
  bool canonical = true;

  bool ok() const { return !violated.has_value(); }
};

/// Angle comparisons in the constraint checks allow this much slack so that
/// decimal input sitting on a boundary is not rejected.
inline constexpr double kAngleTolerance = 1e-12;

CartanCheck check_cartan(const CartanParams& c);

/// Each throws ConstraintViolation on the first violated condition.
void validate(const ProbeParams& p);
void validate(const ProjectorParams& q);
void validate(const CartanParams& c);
void validate(const ModelPoint& m);

Vec3 bloch_vector(const ProbeParams& p);
/// rho_P = (I + r . sigma) / 2
CMat2 probe_density(const ProbeParams& p);
/// |xi> = cos(alpha/2)|0> + e^{i beta} sin(alpha/2)|1>
Ket2 projector_ket(const ProjectorParams& q);
CMat2 projector_matrix(const ProjectorParams& q);
/// V = cartan_exp((a1 - a2)/2, (a1 + a2)/2, a3).
CMat4 cartan_unitary(const CartanParams& c);

/// A qubit effect in Pauli form, optionally carrying its matrix.
struct Effect {
  double a0 = 0.0;
  Vec3 a{};
  std::optional<CMat2> matrix;

  double abs_a() const { return norm(a); }
  CMat2 to_matrix() const;
  /// I - Pi
  Effect complement() const;
};

struct PauliCoefficients {
  double a0 = 0.0;
  Vec3 a{};
};

/// a0 = tr(M)/2, a_k = tr(M sigma_k)/2. Throws std::invalid_argument for
/// non-Hermitian input.
PauliCoefficients pauli_decompose(const CMat2& m);

/// Pi by explicit partial trace over the 4x4 operator.
Effect effect_matrix_path(const ModelPoint& m);

/// Pi from the closed-form trigonometric expressions for (a0, a1, a2, a3).
Effect effect_closed_form(const ModelPoint& m);

struct EffectValidity {
  bool valid = false;
  bool projector = false;
  std::string reason;  // empty when valid
};

inline constexpr double kEffectTolerance = 1e-10;

/// Checks 0 <= |a| <= 1/2 and |a| <= a0 <= 1 - |a| (tolerance 1e-10), and
/// flags projectors (a0 = |a| = 1/2).
EffectValidity validate_effect(const Effect& e);

/// f in a0 = (2 + sqrt(2 mu - 1) f) / 4. Undefined for mu = 1/2, where it
/// throws std::domain_error.
double envelope_f(const Effect& e, const ProbeParams& p);

}  // namespace qprobe
