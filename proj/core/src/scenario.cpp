#include "qprobe/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qprobe/angle_expr.hpp"
#include "qprobe/model.hpp"

namespace qprobe {

namespace {

constexpr double kPi = std::numbers::pi;

std::string number(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Interval parse_interval(std::string_view key, std::string_view text) {
  try {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
      const double v = parse_angle(trim(text));
      return {v, v};
    }
    return {parse_angle(trim(text.substr(0, comma))), parse_angle(trim(text.substr(comma + 1)))};
  } catch (const std::invalid_argument& err) {
    throw MalformedScenario(std::string(key) + ": " + err.what());
  }
}

Bound parse_bound(std::string_view key, std::string_view text) {
  const auto with_selector = [&](std::string_view name, Selector sel) -> std::optional<Bound> {
    if (text.substr(0, name.size()) != name) return std::nullopt;
    const std::string_view rest = trim(text.substr(name.size()));
    if (rest.empty()) return Bound{sel, 1.0};
    const double factor = parse_angle(trim(rest.substr(1)));
    if (rest.front() == '*') return Bound{sel, factor};
    if (rest.front() == '/') return Bound{sel, 1.0 / factor};
    throw MalformedScenario(std::string(key) + ": expected '*' or '/' after " + std::string(name));
  };
  try {
    if (auto b = with_selector("neg_a1", Selector::NegA1)) return *b;
    if (auto b = with_selector("half_sum_lower", Selector::HalfSumLower)) return *b;
    return Bound::constant(parse_angle(text));
  } catch (const std::invalid_argument& err) {
    throw MalformedScenario(std::string(key) + ": " + err.what());
  }
}

std::string format_bound(const Bound& b) {
  switch (b.selector) {
    case Selector::None:
      return number(b.value);
    case Selector::NegA1:
      return "neg_a1*" + number(b.value);
    case Selector::HalfSumLower:
      return "half_sum_lower*" + number(b.value);
  }
  return {};
}

void check_interval(const Scenario& s, const char* name, const Interval& iv, const Interval& domain,
                    bool open_top) {
  const bool ok = iv.lo <= iv.hi && iv.lo >= domain.lo - kAngleTolerance &&
                  (open_top ? iv.hi <= domain.hi : iv.hi <= domain.hi + kAngleTolerance);
  if (!ok)
    throw MalformedScenario("scenario '" + s.name + "': " + name + " interval [" + number(iv.lo) + ", " +
                            number(iv.hi) + "] is empty or outside [" + number(domain.lo) + ", " +
                            number(domain.hi) + "]");
}

}  // namespace

double Bound::eval(double a1, double a2) const {
  switch (selector) {
    case Selector::None:
      return value;
    case Selector::NegA1:
      return -a1 * value;
    case Selector::HalfSumLower:
      return 0.5 * (a1 + a2) * value;
  }
  return value;
}

Scenario Scenario::whole_range(std::string name) {
  Scenario s;
  s.name = std::move(name);
  s.mu = {0.5, 1.0};
  s.theta = {0.0, kPi};
  s.phi = {0.0, 2.0 * kPi};
  s.alpha = {0.0, kPi};
  s.beta = {0.0, 2.0 * kPi};
  s.a1 = {-kPi, 0.0};
  return s;
}

void check_scenario(const Scenario& s) {
  if (s.name.empty()) throw MalformedScenario("scenario has no name");
  if (s.name.find_first_of(",\"\r\n") != std::string::npos)
    throw MalformedScenario("scenario name '" + s.name + "' contains a comma, quote or line break");
  check_interval(s, "mu", s.mu, {0.5, 1.0}, false);
  check_interval(s, "theta", s.theta, {0.0, kPi}, false);
  // phi and beta are periodic; an upper bound of 2 pi is folded onto 0 when drawn.
  check_interval(s, "phi", s.phi, {0.0, 2.0 * kPi}, false);
  check_interval(s, "alpha", s.alpha, {0.0, kPi}, false);
  check_interval(s, "beta", s.beta, {0.0, 2.0 * kPi}, false);
  check_interval(s, "a1", s.a1, {-kPi, 0.0}, false);
  if (s.a2_lo.selector == Selector::HalfSumLower || s.a2_hi.selector == Selector::HalfSumLower)
    throw MalformedScenario("scenario '" + s.name + "': half_sum_lower depends on a2 and cannot bound a2");

  for (const double a1 : {s.a1.lo, s.a1.hi}) {
    const double lo2 = s.a2_lo.eval(a1, 0.0);
    const double hi2 = s.a2_hi.eval(a1, 0.0);
    if (lo2 > hi2)
      throw MalformedScenario("scenario '" + s.name + "': empty a2 interval at a1 = " + number(a1));
    for (const double a2 : {lo2, hi2}) {
      const double lo3 = s.a3_lo.eval(a1, a2);
      const double hi3 = s.a3_hi.eval(a1, a2);
      if (lo3 > hi3 + kAngleTolerance)
        throw MalformedScenario("scenario '" + s.name + "': empty a3 interval at a1 = " + number(a1) +
                                ", a2 = " + number(a2));
      for (const double a3 : {lo3, hi3}) {
        const auto check = check_cartan({a1, a2, a3});
        if (check.violated)
          throw MalformedScenario("scenario '" + s.name + "': reachable Cartan triple violates (" +
                                  constraint_label(*check.violated) + "): " + check.detail);
      }
    }
  }
}

const std::vector<Scenario>& builtin_scenarios() {
  static const std::vector<Scenario> scenarios = [] {
    std::vector<Scenario> out;
    out.push_back(Scenario::whole_range("full"));

    const auto with_mu = [](const char* name, double lo, double hi) {
      Scenario s = Scenario::whole_range(name);
      s.mu = {lo, hi};
      return s;
    };
    out.push_back(with_mu("mu-07", 0.5, 0.7));
    out.push_back(with_mu("mu-051", 0.5, 0.51));
    out.push_back(with_mu("mu-half", 0.5, 0.5));
    out.push_back(with_mu("mu-075", 0.5, 0.75));

    const auto with_a1 = [](const char* name, double lo, double hi) {
      Scenario s = Scenario::whole_range(name);
      s.a1 = {lo, hi};
      return s;
    };
    out.push_back(with_a1("a1-third", -kPi / 3.0, 0.0));
    out.push_back(with_a1("a1-tenth", -kPi / 10.0, 0.0));

    // a2 pushed toward pi (a1 toward -pi, a3 toward 0).
    Scenario a2_34 = with_a1("a2-34", -kPi, -0.75 * kPi);
    a2_34.a2_lo = Bound::constant(0.75 * kPi);
    out.push_back(a2_34);
    Scenario a2_910 = with_a1("a2-910", -kPi, -0.9 * kPi);
    a2_910.a2_lo = Bound::constant(0.9 * kPi);
    out.push_back(a2_910);

    // a3 pushed toward -pi/2 (a1 toward -pi, a2 toward 0).
    Scenario a3_34 = with_a1("a3-34", -kPi, -0.75 * kPi);
    a3_34.a2_hi = Bound::neg_a1(1.0 / 3.0);
    a3_34.a3_hi = Bound::constant(-kPi / 6.0);
    out.push_back(a3_34);
    Scenario a3_910 = with_a1("a3-910", -kPi, -0.9 * kPi);
    a3_910.a2_hi = Bound::neg_a1(1.0 / 9.0);
    a3_910.a3_hi = Bound::constant(-kPi / 3.0);
    out.push_back(a3_910);

    for (const auto& s : out) check_scenario(s);
    return out;
  }();
  return scenarios;
}

const Scenario& builtin_scenario(std::string_view name) {
  for (const auto& s : builtin_scenarios())
    if (s.name == name) return s;
  throw std::out_of_range("unknown scenario '" + std::string(name) + "'");
}

Scenario parse_scenario(std::string_view text) {
  Scenario s = Scenario::whole_range("");
  std::map<std::string, int, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw MalformedScenario("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (seen[key]++ > 0) throw MalformedScenario("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    if (value.empty()) throw MalformedScenario("line " + std::to_string(line_no) + ": empty value for '" + key + "'");

    if (key == "name")
      s.name = std::string(value);
    else if (key == "mu")
      s.mu = parse_interval(key, value);
    else if (key == "theta")
      s.theta = parse_interval(key, value);
    else if (key == "phi")
      s.phi = parse_interval(key, value);
    else if (key == "alpha")
      s.alpha = parse_interval(key, value);
    else if (key == "beta")
      s.beta = parse_interval(key, value);
    else if (key == "a1")
      s.a1 = parse_interval(key, value);
    else if (key == "a2_lo")
      s.a2_lo = parse_bound(key, value);
    else if (key == "a2_hi")
      s.a2_hi = parse_bound(key, value);
    else if (key == "a3_lo")
      s.a3_lo = parse_bound(key, value);
    else if (key == "a3_hi")
      s.a3_hi = parse_bound(key, value);
    else
      throw MalformedScenario("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  check_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string format_scenario(const Scenario& s) {
  const auto iv = [](const Interval& i) { return number(i.lo) + ", " + number(i.hi); };
  std::string out;
  out += "name = " + s.name + "\n";
  out += "mu = " + iv(s.mu) + "\n";
  out += "theta = " + iv(s.theta) + "\n";
  out += "phi = " + iv(s.phi) + "\n";
  out += "alpha = " + iv(s.alpha) + "\n";
  out += "beta = " + iv(s.beta) + "\n";
  out += "a1 = " + iv(s.a1) + "\n";
  out += "a2_lo = " + format_bound(s.a2_lo) + "\n";
  out += "a2_hi = " + format_bound(s.a2_hi) + "\n";
  out += "a3_lo = " + format_bound(s.a3_lo) + "\n";
  out += "a3_hi = " + format_bound(s.a3_hi) + "\n";
  return out;
}

}  // namespace qprobe
