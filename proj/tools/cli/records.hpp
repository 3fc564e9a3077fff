#pragma once

// On-disk formats written and read by the qprobe tool.
//
// Sample CSV: one header line
//   scenario,seed,index,mu,theta,phi,a1,a2,a3,alpha,beta,a0,ax,ay,az,abs_a,F,G,T
// then one row per record; comma delimiter, '\n' terminator, doubles with 17
// significant digits in the C locale so every value round-trips exactly.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qprobe/sampler.hpp"

namespace qprobe::cli {

inline constexpr std::string_view kRecordHeader =
    "scenario,seed,index,mu,theta,phi,a1,a2,a3,alpha,beta,a0,ax,ay,az,abs_a,F,G,T";

class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, independent of the global locale.
std::string format_double(double v);

void write_records_csv(std::ostream& out, std::span<const SampleRecord> records);
void write_records_json(std::ostream& out, std::span<const SampleRecord> records);

/// Parses the sample CSV. Throws MalformedInput on schema or number errors.
std::vector<SampleRecord> read_records_csv(std::istream& in);

void write_histogram_csv(std::ostream& out, const Histogram2D& h);
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> sweep);

}  // namespace qprobe::cli
