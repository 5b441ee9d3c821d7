#include "dimsum/trace.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>

namespace dimsum {

ZipfGenerator::ZipfGenerator(const ZipfSpec& spec) : spec_(spec), rng_(spec.seed) {
  if (spec.universe == 0) throw ParameterError("zipf universe must be positive");
  if (spec.count == 0) throw ParameterError("zipf count must be positive");
  if (!(spec.skew >= 0.0) || !std::isfinite(spec.skew)) throw ParameterError("zipf skew must be a nonnegative real");
  if (spec.weight_mode == ZipfSpec::WeightMode::UniformPayload && spec.payload_lo > spec.payload_hi) {
    throw ParameterError("payload range is empty");
  }
  cdf_.resize(spec.universe);
  // Kahan summation keeps the normaliser accurate for n in the millions.
  double sum = 0.0;
  double carry = 0.0;
  for (std::uint64_t i = 0; i < spec.universe; ++i) {
    const double term = std::pow(static_cast<double>(i + 1), -spec.skew);
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    cdf_[i] = sum;
  }
  norm_ = sum;
  for (double& c : cdf_) c /= norm_;
  const double top = cdf_.back();
  if (std::abs(top - 1.0) > std::ldexp(1.0, -40)) throw ParameterError("zipf probabilities do not sum to 1");
  cdf_.back() = 1.0;
}

double ZipfGenerator::probability(std::uint64_t id) const {
  if (id == 0 || id > spec_.universe) return 0.0;
  return std::pow(static_cast<double>(id), -spec_.skew) / norm_;
}

double ZipfGenerator::uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

std::uint64_t ZipfGenerator::bounded(std::uint64_t range) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng_()) * range) >> 64);
}

TraceRecord ZipfGenerator::next() {
  const double u = uniform01();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), cdf_.size() - 1));
  TraceRecord r{idx + 1, 1};
  if (spec_.weight_mode == ZipfSpec::WeightMode::UniformPayload) {
    const std::uint64_t span = spec_.payload_hi - spec_.payload_lo;
    r.weight = span == UINT64_MAX ? rng_() : spec_.payload_lo + bounded(span + 1);
  }
  return r;
}

std::vector<TraceRecord> ZipfGenerator::take(std::uint64_t n) {
  std::vector<TraceRecord> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(next());
  return out;
}

std::vector<TraceRecord> zipf_stream(const ZipfSpec& spec) { return ZipfGenerator(spec).all(); }

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void put_le(char* dst, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) dst[i] = static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint64_t get_le(const char* src) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(src[i])) << (8 * i);
  return v;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& records) {
  auto out = open_out(path);
  std::string buf;
  std::array<char, 24> num{};
  for (const TraceRecord& r : records) {
    buf.append(num.data(), std::to_chars(num.data(), num.data() + num.size(), r.id).ptr);
    buf.push_back(',');
    buf.append(num.data(), std::to_chars(num.data(), num.data() + num.size(), r.weight).ptr);
    buf.push_back('\n');
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<TraceRecord> read_csv(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  std::vector<TraceRecord> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    const std::size_t comma = line.find(',');
    TraceRecord r;
    if (comma == std::string_view::npos || !parse_u64(line.substr(0, comma), r.id) ||
        !parse_u64(line.substr(comma + 1), r.weight)) {
      throw TraceFormatError("parse error at line " + std::to_string(line_no) + ": '" + std::string(line) + "'");
    }
    out.push_back(r);
  }
  return out;
}

void write_bin(const std::filesystem::path& path, const std::vector<TraceRecord>& records) {
  auto out = open_out(path);
  std::string buf(records.size() * 16, '\0');
  for (std::size_t i = 0; i < records.size(); ++i) {
    put_le(buf.data() + 16 * i, records[i].id);
    put_le(buf.data() + 16 * i + 8, records[i].weight);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<TraceRecord> read_bin(const std::filesystem::path& path) {
  const std::string bytes = slurp(path);
  if (bytes.size() % 16 != 0) {
    throw TraceFormatError("truncated binary trace: " + std::to_string(bytes.size()) + " bytes is not a multiple of 16");
  }
  std::vector<TraceRecord> out(bytes.size() / 16);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].id = get_le(bytes.data() + 16 * i);
    out[i].weight = get_le(bytes.data() + 16 * i + 8);
  }
  return out;
}

namespace {
bool is_bin(const std::filesystem::path& path) { return path.extension() == ".bin"; }
}  // namespace

std::vector<TraceRecord> read_trace(const std::filesystem::path& path) {
  return is_bin(path) ? read_bin(path) : read_csv(path);
}

void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& records) {
  if (is_bin(path)) {
    write_bin(path, records);
  } else {
    write_csv(path, records);
  }
}

}  // namespace dimsum
