#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimsum/types.hpp"

namespace dimsum {

struct TraceRecord {
  FlowId id = 0;
  Volume weight = 0;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ZipfSpec {
  enum class WeightMode { Unit, UniformPayload };

  std::uint64_t universe = 1'000'000;
  double skew = 1.0;
  std::uint64_t count = 1'000'000;
  std::uint64_t seed = 1;
  WeightMode weight_mode = WeightMode::Unit;
  Volume payload_lo = 1;
  Volume payload_hi = 1;
};

/// Zipf(s) over ids 1..n by inverse CDF. The generator is mt19937_64 seeded
/// with spec.seed; the output depends on nothing else.
class ZipfGenerator {
 public:
  explicit ZipfGenerator(const ZipfSpec& spec);

  TraceRecord next();
  std::vector<TraceRecord> take(std::uint64_t n);
  std::vector<TraceRecord> all() { return take(spec_.count); }

  double probability(std::uint64_t id) const;
  const ZipfSpec& spec() const { return spec_; }

 private:
  double uniform01();
  std::uint64_t bounded(std::uint64_t range);

  ZipfSpec spec_;
  std::vector<double> cdf_;
  double norm_ = 0.0;
  std::mt19937_64 rng_;
};

std::vector<TraceRecord> zipf_stream(const ZipfSpec& spec);

void write_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_csv(const std::filesystem::path& path);

/// 16-byte records: little-endian id then little-endian weight.
void write_bin(const std::filesystem::path& path, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_bin(const std::filesystem::path& path);

std::vector<TraceRecord> read_trace(const std::filesystem::path& path);
void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& records);

}  // namespace dimsum
