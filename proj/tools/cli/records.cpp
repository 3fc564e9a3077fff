#include "records.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace qprobe::cli {

namespace {

constexpr std::size_t kRecordFields = 19;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

template <typename T>
T parse_field(std::string_view text, std::size_t line_no, std::string_view column) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw MalformedInput("line " + std::to_string(line_no) + ": bad value '" + std::string(text) +
                         "' in column " + std::string(column));
  return v;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_records_csv(std::ostream& out, std::span<const SampleRecord> records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    const auto& p = r.point;
    out << r.scenario << ',' << r.seed << ',' << r.index;
    for (const double v : {p.probe.mu, p.probe.theta, p.probe.phi, p.cartan.a1, p.cartan.a2, p.cartan.a3,
                           p.projector.alpha, p.projector.beta, r.a0, r.a[0], r.a[1], r.a[2], r.abs_a, r.F,
                           r.G, r.T})
      out << ',' << format_double(v);
    out << '\n';
  }
}

void write_records_json(std::ostream& out, std::span<const SampleRecord> records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    const auto& p = r.point;
    arr.push_back({{"scenario", r.scenario}, {"seed", r.seed},         {"index", r.index},
                   {"mu", p.probe.mu},       {"theta", p.probe.theta}, {"phi", p.probe.phi},
                   {"a1", p.cartan.a1},      {"a2", p.cartan.a2},      {"a3", p.cartan.a3},
                   {"alpha", p.projector.alpha}, {"beta", p.projector.beta}, {"a0", r.a0},
                   {"ax", r.a[0]},           {"ay", r.a[1]},           {"az", r.a[2]},
                   {"abs_a", r.abs_a},       {"F", r.F},               {"G", r.G},
                   {"T", r.T}});
  }
  out << arr.dump(1) << '\n';
}

std::vector<SampleRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedInput("empty input: missing header");
  if (line != kRecordHeader) throw MalformedInput("unexpected header: '" + line + "'");

  static const auto columns = split(kRecordHeader);
  std::vector<SampleRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) throw MalformedInput("line " + std::to_string(line_no) + ": empty line");
    const auto fields = split(line);
    if (fields.size() != kRecordFields)
      throw MalformedInput("line " + std::to_string(line_no) + ": expected " + std::to_string(kRecordFields) +
                           " fields, got " + std::to_string(fields.size()));
    SampleRecord r;
    r.scenario = std::string(fields[0]);
    r.seed = parse_field<std::uint64_t>(fields[1], line_no, columns[1]);
    r.index = parse_field<std::uint64_t>(fields[2], line_no, columns[2]);
    std::array<double, 16> v{};
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = parse_field<double>(fields[k + 3], line_no, columns[k + 3]);
    r.point.probe = {v[0], v[1], v[2]};
    r.point.cartan = {v[3], v[4], v[5]};
    r.point.projector = {v[6], v[7]};
    r.a0 = v[8];
    r.a = {v[9], v[10], v[11]};
    r.abs_a = v[12];
    r.F = v[13];
    r.G = v[14];
    r.T = v[15];
    out.push_back(std::move(r));
  }
  return out;
}

void write_histogram_csv(std::ostream& out, const Histogram2D& h) {
  out << "g_lo,g_hi,f_lo,f_hi,count\n";
  for (std::size_t i = 0; i < h.g_bins(); ++i)
    for (std::size_t j = 0; j < h.f_bins(); ++j)
      out << format_double(h.g_edges[i]) << ',' << format_double(h.g_edges[i + 1]) << ','
          << format_double(h.f_edges[j]) << ',' << format_double(h.f_edges[j + 1]) << ',' << h.count(i, j)
          << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> sweep) {
  out << "theta,F,G,T\n";
  for (const auto& p : sweep)
    out << format_double(p.theta) << ',' << format_double(p.F) << ',' << format_double(p.G) << ','
        << format_double(p.T) << '\n';
}

}  // namespace qprobe::cli
