#pragma once

// Parameter-range scenarios for random sampling of the 8-parameter model.
//
// Five parameters (mu, theta, phi, alpha, beta) and a1 take plain intervals.
// a2 and a3 may have bounds that depend on values drawn earlier:
//   neg_a1          -> -a1            (usable in a2_lo / a2_hi)
//   half_sum_lower  -> (a1 + a2) / 2  (usable in a3_lo / a3_hi)
// optionally scaled, e.g. "neg_a1/3" or "half_sum_lower*1".

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qprobe {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
};

enum class Selector { None, NegA1, HalfSumLower };

/// constant, or scale * selector(a1, a2)
struct Bound {
  Selector selector = Selector::None;
  double value = 0.0;  // the constant, or the scale applied to the selector

  static Bound constant(double v) { return {Selector::None, v}; }
  static Bound neg_a1(double scale = 1.0) { return {Selector::NegA1, scale}; }
  static Bound half_sum_lower(double scale = 1.0) { return {Selector::HalfSumLower, scale}; }

  double eval(double a1, double a2) const;
};

struct Scenario {
  std::string name;
  Interval mu{0.5, 1.0};
  Interval theta;
  Interval phi;
  Interval alpha;
  Interval beta;
  Interval a1;
  Bound a2_lo = Bound::constant(0.0);
  Bound a2_hi = Bound::neg_a1();
  Bound a3_lo = Bound::half_sum_lower();
  Bound a3_hi = Bound::constant(0.0);

  /// Whole ranges for every parameter: mu in [1/2, 1], theta, alpha in [0, pi],
  /// phi, beta in [0, 2 pi), a1 in [-pi, 0], a2 in [0, -a1],
  /// a3 in [(a1 + a2)/2, 0].
  static Scenario whole_range(std::string name);
};

class MalformedScenario : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks the ranges against the parameter domains and confirms that every
/// dependent interval is non-empty and every reachable Cartan triple obeys
/// the chamber inequalities. Bounds are affine in (a1, a2), so testing the
/// vertices of the sampled polytope is exhaustive. Throws MalformedScenario.
void check_scenario(const Scenario& s);

/// full, mu-07, mu-051, mu-half, mu-075, a1-third, a1-tenth, a2-34, a2-910,
/// a3-34, a3-910.
const std::vector<Scenario>& builtin_scenarios();

/// Built-in scenario by name; throws std::out_of_range when unknown.
const Scenario& builtin_scenario(std::string_view name);

/// Parses the flat `key = value` scenario format. Throws MalformedScenario.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Serializes to the format read by parse_scenario (17 significant digits).
std::string format_scenario(const Scenario& s);

}  // namespace qprobe
