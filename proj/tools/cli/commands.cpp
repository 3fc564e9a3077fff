#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "qprobe/angle_expr.hpp"
#include "qprobe/scenario.hpp"
#include "records.hpp"

namespace qprobe::cli {

namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

// Runs `write` against the requested destination ("-" is `stdout_stream`).
int with_output(const std::string& path, std::ostream& stdout_stream, std::ostream& err,
                const std::function<void(std::ostream&)>& write) {
  if (path == "-") {
    write(stdout_stream);
    return kSuccess;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kIoError;
  }
  write(file);
  file.close();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return kIoError;
  }
  return kSuccess;
}

Scenario resolve_scenario(const std::string& name_or_path) {
  for (const auto& s : builtin_scenarios())
    if (s.name == name_or_path) return s;
  if (std::filesystem::exists(name_or_path)) return load_scenario_file(name_or_path);
  throw std::out_of_range("unknown scenario '" + name_or_path + "' (not a built-in name or an existing file)");
}

void print_cartan_note(const CartanParams& c, std::ostream& err) {
  if (!check_cartan(c).canonical)
    err << "note: a3 = 0 with a1 - a2 < -pi lies outside the canonical chamber\n";
}

// Registers an option whose value may use pi arithmetic ("-pi/2").
CLI::Option* add_angle(CLI::App& app, const std::string& name, double& target, const std::string& help) {
  return app
      .add_option_function<std::string>(
          name,
          [&target, name](const std::string& text) {
            try {
              target = parse_angle(text);
            } catch (const std::invalid_argument& e) {
              throw CLI::ValidationError(name, e.what());
            }
          },
          help)
      ->allow_extra_args(false);
}

void add_model_options(CLI::App& app, ModelPoint& m, bool required) {
  const auto opt = [&](const std::string& name, double& target, const std::string& help) {
    auto* o = add_angle(app, name, target, help);
    if (required) o->required();
  };
  opt("--mu", m.probe.mu, "probe purity in [1/2, 1]");
  opt("--theta", m.probe.theta, "probe polar angle in [0, pi]");
  opt("--phi", m.probe.phi, "probe azimuth in [0, 2 pi)");
  opt("--a1", m.cartan.a1, "Cartan angle a1 in [-pi, 0]");
  opt("--a2", m.cartan.a2, "Cartan angle a2 in [0, -a1]");
  opt("--a3", m.cartan.a3, "Cartan angle a3 in [(a1 + a2)/2, 0]");
  opt("--alpha", m.projector.alpha, "projector polar angle in [0, pi]");
  opt("--beta", m.projector.beta, "projector phase in [0, 2 pi)");
}

}  // namespace

unsigned sampler_threads() {
  if (const char* env = std::getenv("QPROBE_THREADS")) {
    unsigned v = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && ptr == text.data() + text.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_effect(const ModelPoint& m, std::ostream& out, std::ostream& err) {
  try {
    const Effect e = effect_closed_form(m);
    const auto validity = validate_effect(e);
    out << "a0 = " << format_double(e.a0) << '\n'
        << "a1 = " << format_double(e.a[0]) << '\n'
        << "a2 = " << format_double(e.a[1]) << '\n'
        << "a3 = " << format_double(e.a[2]) << '\n'
        << "abs_a = " << format_double(e.abs_a()) << '\n'
        << "projector = " << yes_no(validity.projector) << '\n'
        << "valid = " << yes_no(validity.valid) << '\n';
    print_cartan_note(m.cartan, err);
    if (!validity.valid) {
      err << "error: effect violates 0 <= Pi <= I: " << validity.reason << '\n';
      return kValidationFailure;
    }
    return kSuccess;
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

int cmd_tradeoff(const ModelPoint& m, std::ostream& out, std::ostream& err) {
  try {
    const Effect e = effect_closed_form(m);
    const TradeoffPoint t = evaluate_tradeoff(e);
    out << "F = " << format_double(t.F) << '\n'
        << "G = " << format_double(t.G) << '\n'
        << "T = " << format_double(t.T) << '\n'
        << "saturated = " << yes_no(t.saturated) << '\n';
    print_cartan_note(m.cartan, err);
    return kSuccess;
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const InvalidEffect& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

int cmd_sample(const SampleOptions& o, std::ostream& out, std::ostream& err) {
  if (o.format != "csv" && o.format != "json") {
    err << "error: unknown format '" << o.format << "' (expected csv or json)\n";
    return kUsageError;
  }
  if (o.n == 0) {
    err << "error: --n must be at least 1\n";
    return kUsageError;
  }
  Scenario scenario;
  try {
    scenario = resolve_scenario(o.scenario);
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const MalformedScenario& e) {
    err << "error: malformed scenario: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  const auto records = draw(scenario, o.seed, o.n, sampler_threads());
  return with_output(o.out, out, err, [&](std::ostream& os) {
    if (o.format == "csv")
      write_records_csv(os, records);
    else
      write_records_json(os, records);
  });
}

int cmd_hist(const HistOptions& o, std::ostream& out, std::ostream& err) {
  if (o.g_bins == 0 || o.f_bins == 0) {
    err << "error: bin counts must be at least 1\n";
    return kUsageError;
  }
  std::ifstream in(o.in, std::ios::binary);
  if (!in) {
    err << "error: cannot open '" << o.in << "'\n";
    return kIoError;
  }
  Histogram2D h;
  try {
    const auto records = read_records_csv(in);
    if (records.empty()) {
      err << "error: '" << o.in << "' contains no records\n";
      return kValidationFailure;
    }
    h = histogram(records, o.g_bins, o.f_bins);
  } catch (const MalformedInput& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return with_output(o.out, out, err, [&](std::ostream& os) { write_histogram_csv(os, h); });
}

int cmd_cnot_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  if (o.sweep.steps < 2) {
    err << "error: --steps must be at least 2\n";
    return kUsageError;
  }
  std::vector<SweepPoint> sweep;
  try {
    sweep = cnot_sweep(o.sweep);
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  const int rc = with_output(o.out, out, err, [&](std::ostream& os) { write_sweep_csv(os, sweep); });
  if (rc != kSuccess) return rc;
  const bool all_saturated = std::all_of(sweep.begin(), sweep.end(), [](const SweepPoint& p) {
    return std::abs(p.T - kTradeoffBound) <= kSaturationTolerance;
  });
  if (!all_saturated) err << "warning: sweep contains points off the optimal tradeoff curve\n";
  return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qprobe: POVMs realized by a probe qubit, their information/disturbance tradeoff"};
  app.require_subcommand(1);

  ModelPoint effect_point;
  auto* effect = app.add_subcommand("effect", "Pauli coefficients of Pi for one parameter set");
  add_model_options(*effect, effect_point, true);

  ModelPoint tradeoff_point;
  auto* tradeoff = app.add_subcommand("tradeoff", "F, G and the tradeoff value for one parameter set");
  add_model_options(*tradeoff, tradeoff_point, true);

  SampleOptions sample_opts;
  auto* sample = app.add_subcommand("sample", "Random records for a scenario");
  sample->add_option("--scenario", sample_opts.scenario, "built-in scenario name or scenario file")
      ->capture_default_str();
  sample->add_option("--n", sample_opts.n, "number of records")->capture_default_str();
  sample->add_option("--seed", sample_opts.seed, "random seed")->capture_default_str();
  sample->add_option("--out", sample_opts.out, "output path, '-' for stdout")->capture_default_str();
  sample->add_option("--format", sample_opts.format, "csv or json")->capture_default_str();

  HistOptions hist_opts;
  auto* hist = app.add_subcommand("hist", "2D (G, F) histogram of a sample CSV");
  hist->add_option("--in", hist_opts.in, "sample CSV")->required();
  hist->add_option("--g-bins", hist_opts.g_bins, "bins along G")->capture_default_str();
  hist->add_option("--f-bins", hist_opts.f_bins, "bins along F")->capture_default_str();
  hist->add_option("--out", hist_opts.out, "output path, '-' for stdout")->capture_default_str();

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("cnot-sweep", "Fidelities of a CNOT coupling as the probe angle theta varies");
  sweep->add_option("--steps", sweep_opts.sweep.steps, "grid points over [0, pi/2]")->capture_default_str();
  add_angle(*sweep, "--mu", sweep_opts.sweep.mu, "probe purity (default 1)");
  add_angle(*sweep, "--phi", sweep_opts.sweep.phi, "probe azimuth (default 0)");
  add_angle(*sweep, "--alpha", sweep_opts.sweep.alpha, "projector polar angle (default pi/2)");
  add_angle(*sweep, "--beta", sweep_opts.sweep.beta, "projector phase (default pi/2)");
  sweep->add_option("--out", sweep_opts.out, "output path, '-' for stdout")->capture_default_str();

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run the built-in cross-checks");
  verify->add_option("--n", verify_opts.n, "random model points")->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "random seed")->capture_default_str();
  verify->add_option("--mc-samples", verify_opts.mc_samples, "sphere samples per Monte Carlo estimate")
      ->capture_default_str();
  verify->add_option("--mc-effects", verify_opts.mc_effects, "random effects in the Monte Carlo check")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*effect) return cmd_effect(effect_point, out, err);
    if (*tradeoff) return cmd_tradeoff(tradeoff_point, out, err);
    if (*sample) return cmd_sample(sample_opts, out, err);
    if (*hist) return cmd_hist(hist_opts, out, err);
    if (*sweep) return cmd_cnot_sweep(sweep_opts, out, err);
    if (*verify) return cmd_verify(verify_opts, out, err);
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsageError;
}

}  // namespace qprobe::cli
