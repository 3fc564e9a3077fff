#include "qprobe/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qprobe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double tol = kAngleTolerance;

std::string fmt_value(const char* name, double v) {
  std::ostringstream os;
  os.precision(17);
  os << name << " = " << v;
  return os.str();
}

void require_range(bool ok, const char* name, double v, const char* range) {
  if (!ok)
    throw ConstraintViolation(Constraint::Range, fmt_value(name, v) + " outside " + range);
}

}  // namespace

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

const char* constraint_label(Constraint c) {
  switch (c) {
    case Constraint::Range:
      return "ranges";
    case Constraint::A1Bound:
      return "2a";
    case Constraint::A2Bound:
      return "2b";
    case Constraint::A3Bound:
      return "2c";
  }
  return "unknown";
}

ConstraintViolation::ConstraintViolation(Constraint which, const std::string& detail)
    : std::domain_error(std::string("constraint (") + constraint_label(which) + ") violated: " + detail),
      which_(which) {}

CartanCheck check_cartan(const CartanParams& c) {
  CartanCheck out;
  if (!std::isfinite(c.a1) || !std::isfinite(c.a2) || !std::isfinite(c.a3)) {
    out.violated = Constraint::Range;
    out.detail = "Cartan angles must be finite";
    return out;
  }
  if (c.a1 < -kPi - tol || c.a1 > tol) {
    out.violated = Constraint::A1Bound;
    out.detail = "-pi <= a1 <= 0 fails for " + fmt_value("a1", c.a1);
    return out;
  }
  if (c.a2 < -tol || c.a2 > -c.a1 + tol) {
    out.violated = Constraint::A2Bound;
    out.detail = "0 <= a2 <= -a1 fails for " + fmt_value("a1", c.a1) + ", " + fmt_value("a2", c.a2);
    return out;
  }
  if (c.a1 + c.a2 > 2.0 * c.a3 + tol || c.a3 > tol) {
    out.violated = Constraint::A3Bound;
    out.detail = "a1 + a2 <= 2 a3 <= 0 fails for " + fmt_value("a1", c.a1) + ", " +
                 fmt_value("a2", c.a2) + ", " + fmt_value("a3", c.a3);
    return out;
  }
  out.canonical = !(std::abs(c.a3) <= tol && c.a1 - c.a2 < -kPi - tol);
  return out;
}

void validate(const ProbeParams& p) {
  require_range(std::isfinite(p.mu) && p.mu >= 0.5 && p.mu <= 1.0, "mu", p.mu, "[1/2, 1]");
  require_range(std::isfinite(p.theta) && p.theta >= -tol && p.theta <= kPi + tol, "theta", p.theta,
                "[0, pi]");
  require_range(std::isfinite(p.phi) && p.phi >= -tol && p.phi < kTwoPi, "phi", p.phi, "[0, 2 pi)");
}

void validate(const ProjectorParams& q) {
  require_range(std::isfinite(q.alpha) && q.alpha >= -tol && q.alpha <= kPi + tol, "alpha", q.alpha,
                "[0, pi]");
  require_range(std::isfinite(q.beta) && q.beta >= -tol && q.beta < kTwoPi, "beta", q.beta,
                "[0, 2 pi)");
}

void validate(const CartanParams& c) {
  const auto check = check_cartan(c);
  if (check.violated) throw ConstraintViolation(*check.violated, check.detail);
}

void validate(const ModelPoint& m) {
  validate(m.probe);
  validate(m.projector);
  validate(m.cartan);
}

Vec3 bloch_vector(const ProbeParams& p) {
  validate(p);
  const double r = std::sqrt(2.0 * p.mu - 1.0);
  return {r * std::sin(p.theta) * std::cos(p.phi), r * std::sin(p.theta) * std::sin(p.phi),
          r * std::cos(p.theta)};
}

CMat2 probe_density(const ProbeParams& p) {
  const Vec3 r = bloch_vector(p);
  CMat2 rho = pauli(0);
  for (int k = 0; k < 3; ++k) rho += pauli(k + 1) * cplx(r[k]);
  return rho * cplx(0.5);
}

Ket2 projector_ket(const ProjectorParams& q) {
  validate(q);
  return Ket2{{std::cos(0.5 * q.alpha), std::polar(std::sin(0.5 * q.alpha), q.beta)}};
}

CMat2 projector_matrix(const ProjectorParams& q) { return projector_ket(q).outer(); }

CMat4 cartan_unitary(const CartanParams& c) {
  validate(c);
  return cartan_exp(0.5 * (c.a1 - c.a2), 0.5 * (c.a1 + c.a2), c.a3);
}

CMat2 Effect::to_matrix() const {
  CMat2 m = pauli(0) * cplx(a0);
  for (int k = 0; k < 3; ++k) m += pauli(k + 1) * cplx(a[k]);
  return m;
}

Effect Effect::complement() const {
  Effect out{1.0 - a0, {-a[0], -a[1], -a[2]}, std::nullopt};
  if (matrix) out.matrix = CMat2::identity() - *matrix;
  return out;
}

PauliCoefficients pauli_decompose(const CMat2& m) {
  if (!is_hermitian(m, 1e-12 * std::max(1.0, max_abs(m))))
    throw std::invalid_argument("pauli_decompose: matrix is not Hermitian");
  PauliCoefficients out;
  out.a0 = 0.5 * m.trace().real();
  for (int k = 0; k < 3; ++k) out.a[k] = 0.5 * (m * pauli(k + 1)).trace().real();
  return out;
}

Effect effect_matrix_path(const ModelPoint& m) {
  validate(m);
  const CMat2 id = CMat2::identity();
  const CMat4 v = cartan_unitary(m.cartan);
  const CMat4 coupled = kron(id, probe_density(m.probe)) * v.adjoint() *
                        kron(id, projector_matrix(m.projector)) * v;
  CMat2 pi = partial_trace_probe(coupled);
  // The product above is Hermitian only up to rounding; symmetrize.
  pi = (pi + pi.adjoint()) * cplx(0.5);
  const auto coeffs = pauli_decompose(pi);
  return Effect{coeffs.a0, coeffs.a, pi};
}

Effect effect_closed_form(const ModelPoint& m) {
  validate(m);
  using std::cos;
  using std::sin;

  const double s = std::sqrt(2.0 * m.probe.mu - 1.0);
  const double th = m.probe.theta, ph = m.probe.phi;
  const double al = m.projector.alpha, be = m.projector.beta;
  const double c1 = m.cartan.a1, c2 = m.cartan.a2, c3 = m.cartan.a3;
  const double half_sum = 0.5 * (c1 + c2);
  const double half_diff = 0.5 * (c1 - c2);

  Effect e;
  e.a0 = 0.25 * (2.0 + s * (cos(al) * cos(th) * (cos(c1) + cos(c2)) +
                            2.0 * cos(c3) * sin(al) * sin(th) *
                                (cos(half_sum) * cos(be) * cos(ph) +
                                 cos(half_diff) * sin(be) * sin(ph))));

  e.a[0] = 0.25 * (2.0 * cos(be) * sin(al) * sin(half_sum) * sin(c3) +
                   s * (cos(al) * (sin(c1) - sin(c2)) * sin(th) * sin(ph) -
                        2.0 * cos(c3) * cos(th) * sin(al) * sin(half_diff) * sin(be)));
#ifdef QPROBE_INJECT_A1_SIGN_FAULT
  e.a[0] = -e.a[0];
#endif

  e.a[1] = 0.25 * (2.0 * sin(al) * sin(half_diff) * sin(c3) * sin(be) +
                   s * (2.0 * cos(c3) * cos(be) * cos(th) * sin(al) * sin(half_sum) -
                        cos(al) * cos(ph) * (sin(c1) + sin(c2)) * sin(th)));

  e.a[2] = 0.25 * (cos(al) * (cos(c2) - cos(c1)) +
                   2.0 * s * sin(al) * sin(c3) * sin(th) *
                       (cos(half_diff) * cos(ph) * sin(be) - cos(half_sum) * cos(be) * sin(ph)));
  return e;
}

EffectValidity validate_effect(const Effect& e) {
  EffectValidity out;
  const double r = e.abs_a();
  constexpr double etol = kEffectTolerance;
  if (!std::isfinite(e.a0) || !std::isfinite(r)) {
    out.reason = "non-finite coefficients";
    return out;
  }
  if (r > 0.5 + etol) {
    out.reason = "|a| = " + std::to_string(r) + " exceeds 1/2";
    return out;
  }
  if (e.a0 < r - etol) {
    out.reason = "a0 < |a|";
    return out;
  }
  if (e.a0 > 1.0 - r + etol) {
    out.reason = "a0 > 1 - |a|";
    return out;
  }
  out.valid = true;
  out.projector = std::abs(e.a0 - 0.5) <= etol && std::abs(r - 0.5) <= etol;
  return out;
}

double envelope_f(const Effect& e, const ProbeParams& p) {
  validate(p);
  const double s = std::sqrt(2.0 * p.mu - 1.0);
  if (s == 0.0) throw std::domain_error("envelope_f is undefined for mu = 1/2");
  return (4.0 * e.a0 - 2.0) / s;
}

}  // namespace qprobe
