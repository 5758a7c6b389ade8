#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "relaxpart/hmetis.hpp"
#include "testkit/testkit.hpp"

namespace rp = relaxpart;
namespace tk = relaxpart::testkit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t error_line(const std::string& text) {
  try {
    rp::parse_hmetis(text);
  } catch (const rp::ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Hmetis, ParsesUnweighted) {
  rp::HmetisReport report;
  auto h = rp::parse_hmetis("% comment\n2 4\n1 2 3\n\n3 4\n", &report);
  EXPECT_EQ(h.num_vertices(), 4u);
  ASSERT_EQ(h.num_hyperedges(), 2u);
  EXPECT_EQ(h.pins(0)[0], 0u);
  EXPECT_EQ(h.pins(1)[1], 3u);
  EXPECT_EQ(report.dropped_hyperedges, 0u);
}

TEST(Hmetis, WeightFormats) {
  auto a = rp::parse_hmetis("1 2 1\n5 1 2\n");
  EXPECT_DOUBLE_EQ(a.hyperedge_weight(0), 5.0);
  auto b = rp::parse_hmetis("1 2 10\n1 2\n3\n4\n");
  EXPECT_DOUBLE_EQ(b.vertex_weight(1), 4.0);
  EXPECT_DOUBLE_EQ(b.hyperedge_weight(0), 1.0);
  auto c = rp::parse_hmetis("1 2 11\n2.5 1 2\n3\n0.5\n");
  EXPECT_DOUBLE_EQ(c.hyperedge_weight(0), 2.5);
  EXPECT_DOUBLE_EQ(c.total_vertex_weight(), 3.5);
}

TEST(Hmetis, DropsSmallHyperedges) {
  rp::HmetisReport report;
  auto h = rp::parse_hmetis("3 3\n1\n2 2\n1 3\n", &report);
  EXPECT_EQ(h.num_hyperedges(), 1u);
  EXPECT_EQ(report.dropped_hyperedges, 2u);
  EXPECT_EQ(report.duplicate_pins, 1u);
}

TEST(Hmetis, ErrorsCarryLineNumbers) {
  EXPECT_THROW(rp::parse_hmetis(""), rp::ParseError);
  EXPECT_EQ(error_line("x 3\n1 2\n"), 1u);
  EXPECT_EQ(error_line("% c\n1 3 7\n1 2\n"), 2u);
  EXPECT_EQ(error_line("2 3\n1 2\n1 4\n"), 3u);
  EXPECT_EQ(error_line("2 3\n1 2\n\n0 1\n"), 4u);
  EXPECT_EQ(error_line("1 3 1\n-2 1 2\n"), 2u);
  EXPECT_EQ(error_line("1 2 10\n1 2\n1\nabc\n"), 4u);
  EXPECT_EQ(error_line("1 2\n1 2\n1 2\n"), 3u);
  try {
    rp::parse_hmetis("2 3\n1 2\n1 9\n");
    FAIL();
  } catch (const rp::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Hmetis, MissingFile) {
  EXPECT_THROW(rp::read_hmetis_file("/nonexistent/file.hgr"), rp::ParseError);
}

TEST(Hmetis, GoldenByteRoundTrip) {
  const std::string dir = RELAXPART_FIXTURE_DIR;
  const std::string canonical = slurp(dir + "/weighted_mixed.hgr");
  ASSERT_FALSE(canonical.empty());
  EXPECT_EQ(rp::write_hmetis(rp::parse_hmetis(canonical)), canonical);
  // a commented variant normalizes to the same bytes
  EXPECT_EQ(rp::write_hmetis(rp::read_hmetis_file(dir + "/weighted_mixed_input.hgr")), canonical);
  for (const auto& f : tk::fixtures()) {
    const std::string text = slurp(dir + "/" + f.name + ".hgr");
    EXPECT_EQ(rp::write_hmetis(f.graph), text) << f.name;
    EXPECT_EQ(rp::parse_hmetis(text), f.graph) << f.name;
  }
}

TEST(Hmetis, ParseWriteIdentity) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto h = tk::random_hypergraph(3 + seed % 20, 1 + seed % 17, 3, seed);
    const std::string text = rp::write_hmetis(h);
    auto back = rp::parse_hmetis(text);
    EXPECT_EQ(back, h);
    EXPECT_EQ(rp::write_hmetis(back), text);
  }
  // non-unit weights survive exactly
  std::vector<rp::Weight> ew{0.1, 3.3333333333333335}, vw{1e-7, 2, 0.3};
  auto h = rp::Hypergraph::from_edges(3, {{0, 1}, {1, 2}}, ew, vw);
  EXPECT_EQ(rp::parse_hmetis(rp::write_hmetis(h)), h);
}

TEST(Hmetis, PartitionIo) {
  rp::Partition p{{0, 2, 1, 1}, 3};
  const std::string text = rp::write_partition(p);
  EXPECT_EQ(text, "0\n2\n1\n1\n");
  EXPECT_EQ(rp::parse_partition(text, 3), p);
  EXPECT_THROW(rp::parse_partition("0\n3\n", 3), rp::ParseError);
  EXPECT_THROW(rp::parse_partition("0\nx\n", 3), rp::ParseError);
}
