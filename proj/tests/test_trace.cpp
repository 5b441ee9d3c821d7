#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "dimsum/trace.hpp"
#include "temp_dir.hpp"

using dimsum::TraceRecord;
using dimsum::ZipfGenerator;
using dimsum::ZipfSpec;

TEST(Zipf, TwoIdsSkewOne) {
  ZipfSpec spec;
  spec.universe = 2;
  spec.skew = 1.0;
  spec.count = 1;
  const ZipfGenerator g(spec);
  EXPECT_DOUBLE_EQ(g.probability(1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(g.probability(2), 1.0 / 3.0);
}

TEST(Zipf, SkewZeroIsUniform) {
  ZipfSpec spec;
  spec.universe = 4;
  spec.skew = 0.0;
  spec.count = 1;
  const ZipfGenerator g(spec);
  for (std::uint64_t i = 1; i <= 4; ++i) EXPECT_DOUBLE_EQ(g.probability(i), 0.25);
}

TEST(Zipf, RejectsEmptySpecs) {
  ZipfSpec spec;
  spec.universe = 0;
  EXPECT_THROW(ZipfGenerator{spec}, dimsum::ParameterError);
  spec.universe = 10;
  spec.count = 0;
  EXPECT_THROW(ZipfGenerator{spec}, dimsum::ParameterError);
  spec.count = 1;
  spec.skew = -1.0;
  EXPECT_THROW(ZipfGenerator{spec}, dimsum::ParameterError);
}

TEST(Zipf, IdsInRangeAndPayloadBounds) {
  ZipfSpec spec;
  spec.universe = 50;
  spec.skew = 1.3;
  spec.count = 20000;
  spec.weight_mode = ZipfSpec::WeightMode::UniformPayload;
  spec.payload_lo = 40;
  spec.payload_hi = 1500;
  for (const TraceRecord& r : dimsum::zipf_stream(spec)) {
    ASSERT_GE(r.id, 1u);
    ASSERT_LE(r.id, 50u);
    ASSERT_GE(r.weight, 40u);
    ASSERT_LE(r.weight, 1500u);
  }
}

TEST(Zipf, Deterministic) {
  ZipfSpec spec;
  spec.universe = 1000;
  spec.count = 5000;
  spec.seed = 99;
  EXPECT_EQ(dimsum::zipf_stream(spec), dimsum::zipf_stream(spec));
  ZipfSpec other = spec;
  other.seed = 100;
  EXPECT_NE(dimsum::zipf_stream(spec), dimsum::zipf_stream(other));
}

TEST(TraceIo, CsvRoundTrip) {
  TempDir dir;
  const std::vector<TraceRecord> recs{{1, 5}, {0, 0}, {UINT64_MAX, UINT64_MAX}};
  dimsum::write_csv(dir.file("t.csv"), recs);
  EXPECT_EQ(dimsum::read_csv(dir.file("t.csv")), recs);
  std::ifstream in(dir.file("t.csv"));
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, "1,5\n0,0\n18446744073709551615,18446744073709551615\n");
}

TEST(TraceIo, CsvEmptyFile) {
  TempDir dir;
  std::ofstream(dir.file("e.csv")).close();
  EXPECT_TRUE(dimsum::read_csv(dir.file("e.csv")).empty());
}

TEST(TraceIo, CsvParseErrorNamesLine) {
  TempDir dir;
  std::ofstream(dir.file("bad.csv")) << "x,5\n";
  try {
    dimsum::read_csv(dir.file("bad.csv"));
    FAIL() << "expected a parse error";
  } catch (const dimsum::TraceFormatError& err) {
    EXPECT_NE(std::string(err.what()).find("line 1"), std::string::npos);
  }
  std::ofstream(dir.file("bad3.csv")) << "1,2\n3,4\n5;6\n";
  try {
    dimsum::read_csv(dir.file("bad3.csv"));
    FAIL() << "expected a parse error";
  } catch (const dimsum::TraceFormatError& err) {
    EXPECT_NE(std::string(err.what()).find("line 3"), std::string::npos);
  }
  std::ofstream(dir.file("over.csv")) << "18446744073709551616,1\n";
  EXPECT_THROW(dimsum::read_csv(dir.file("over.csv")), dimsum::TraceFormatError);
}

TEST(TraceIo, BinaryLayout) {
  TempDir dir;
  dimsum::write_bin(dir.file("one.bin"), {{1, 5}});
  std::ifstream in(dir.file("one.bin"), std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), {});
  std::string expected(16, '\0');
  expected[0] = 1;
  expected[8] = 5;
  EXPECT_EQ(bytes, expected);
}

TEST(TraceIo, BinaryRoundTripAndTruncation) {
  TempDir dir;
  std::mt19937_64 rng(8);
  std::vector<TraceRecord> recs{{0, 0}, {UINT64_MAX, UINT64_MAX}};
  for (int i = 0; i < 1000; ++i) recs.push_back({rng(), rng()});
  dimsum::write_bin(dir.file("r.bin"), recs);
  EXPECT_EQ(dimsum::read_bin(dir.file("r.bin")), recs);
  std::ofstream(dir.file("short.bin"), std::ios::binary) << std::string(17, '\x01');
  EXPECT_THROW(dimsum::read_bin(dir.file("short.bin")), dimsum::TraceFormatError);
}

TEST(TraceIo, FormatFollowsExtension) {
  TempDir dir;
  const std::vector<TraceRecord> recs{{3, 4}, {5, 6}};
  dimsum::write_trace(dir.file("a.bin"), recs);
  dimsum::write_trace(dir.file("a.csv"), recs);
  EXPECT_EQ(std::filesystem::file_size(dir.file("a.bin")), 32u);
  EXPECT_EQ(dimsum::read_trace(dir.file("a.bin")), recs);
  EXPECT_EQ(dimsum::read_trace(dir.file("a.csv")), recs);
  EXPECT_THROW(dimsum::read_trace(dir.file("missing.csv")), std::runtime_error);
}
