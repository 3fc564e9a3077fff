#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qprobe/model.hpp"
#include "qprobe/sampler.hpp"

namespace qprobe::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for sampling: QPROBE_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
unsigned sampler_threads();

int cmd_effect(const ModelPoint& m, std::ostream& out, std::ostream& err);
int cmd_tradeoff(const ModelPoint& m, std::ostream& out, std::ostream& err);

struct SampleOptions {
  std::string scenario = "full";  // built-in name or path to a scenario file
  std::uint64_t n = 10000;
  std::uint64_t seed = 42;
  std::string out = "-";  // "-" is stdout
  std::string format = "csv";
};
int cmd_sample(const SampleOptions& o, std::ostream& out, std::ostream& err);

struct HistOptions {
  std::string in;
  std::size_t g_bins = 25;
  std::size_t f_bins = 25;
  std::string out = "-";
};
int cmd_hist(const HistOptions& o, std::ostream& out, std::ostream& err);

struct SweepOptions {
  CnotSweepOptions sweep;
  std::string out = "-";
};
int cmd_cnot_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::uint64_t n = 100000;  // random model points for the pointwise checks
  std::uint64_t seed = 42;
  std::uint64_t mc_samples = 1000000;
  std::uint64_t mc_effects = 20;
};
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);

}  // namespace qprobe::cli
