#include <gtest/gtest.h>

#include <filesystem>

#include "delreal/error.hpp"
#include "delreal/instances.hpp"
#include "delreal/io.hpp"
#include "fixtures.hpp"

namespace delreal {
namespace {

ErrorCode parse_error_of(const std::string& text) {
  try {
    parse_graph_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

TEST(GraphJson, ParsesFixture) { EXPECT_EQ(parse_graph_json(testing::k4_json()), testing::k4()); }

TEST(GraphJson, RoundTrip) {
  for (int n = 4; n <= 12; ++n) {
    const Instance inst = random_instance(n, static_cast<std::uint64_t>(n), 1000);
    EXPECT_EQ(parse_graph_json(graph_to_json(inst.graph)), inst.graph);
  }
  EXPECT_EQ(parse_graph_json(graph_to_json(fan_triangulation(7))), fan_triangulation(7));
}

TEST(GraphJson, Rejections) {
  EXPECT_EQ(parse_error_of("{"), ErrorCode::kParse);
  EXPECT_EQ(parse_error_of("[]"), ErrorCode::kParse);
  EXPECT_EQ(parse_error_of(R"({"n": 4, "rotation": {"1": [3, 4, 2]}, "outer_face": [1, 2, 3]})"), ErrorCode::kParse);
  EXPECT_EQ(parse_error_of(
                R"({"n": 4, "rotation": {"1": [3, 4, 9], "2": [1, 4, 3], "3": [2, 4, 1], "4": [1, 3, 2]}, "outer_face": [1, 2, 3]})"),
            ErrorCode::kParse);
  EXPECT_EQ(parse_error_of(
                R"({"n": 4, "rotation": {"1": [3, 4, 4], "2": [1, 4, 3], "3": [2, 4, 1], "4": [1, 3, 2]}, "outer_face": [1, 2, 3]})"),
            ErrorCode::kParse);
  EXPECT_EQ(parse_error_of(
                R"({"n": 4, "rotation": {"1": [3, 4, 2], "2": [1, 4, 3], "3": [2, 4, 1], "4": [1, 3, 2]}, "outer_face": [1, 2, 7]})"),
            ErrorCode::kParse);
}

TEST(PointsText, ParseAndFormat) {
  const auto pts = parse_points("# header\n1 2\n -3/4 5 # trailing\n\n7/1 -0\n");
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[1], (RatPoint{make_rat(-3, 4), Rat(5)}));
  EXPECT_EQ(parse_points(format_points(pts)), pts);
  const std::vector<IntPoint> ints{{Int("123456789012345678901234567890"), Int(-4)}};
  EXPECT_EQ(parse_points(format_points(ints)), to_rat_points(ints));
  EXPECT_THROW(parse_points("1 2 3\n"), Error);
  EXPECT_THROW(parse_points("1\n"), Error);
  EXPECT_THROW(parse_points("a b\n"), Error);
}

TEST(CertificateJson, RoundTripWithBigIntegers) {
  RealizationCertificate c;
  c.points = {{Int(0), Int(1)}, {Int("-98765432109876543210987"), Int(5)}, {Int(3), Int(-2)}};
  c.outer_face = {1, 2, 3};
  c.witness_centers = {{make_rat(1, 3), Rat(2)}};
  c.transcript = {"GENERAL_POSITION ok: 3 points"};
  const std::string text = certificate_to_json(c);
  EXPECT_EQ(text, certificate_to_json(c));
  const RealizationCertificate back = parse_certificate_json(text);
  EXPECT_EQ(back.points, c.points);
  EXPECT_EQ(back.outer_face, c.outer_face);
  EXPECT_EQ(back.witness_centers, c.witness_centers);
  EXPECT_EQ(back.transcript, c.transcript);
  EXPECT_NE(text.find("\"1/3\""), std::string::npos);
  EXPECT_THROW(parse_certificate_json("{\"points\": 3}"), Error);
}

TEST(Files, MissingFileIsIoError) {
  try {
    read_text_file("/nonexistent/dir/graph.json");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  const auto path = std::filesystem::temp_directory_path() / "delreal_io_test.txt";
  write_text_file(path.string(), "abc\n");
  EXPECT_EQ(read_text_file(path.string()), "abc\n");
  std::filesystem::remove(path);
}

TEST(Reports, JsonShapes) {
  const ValidationReport bad = validate_triangulation(testing::interior_degree2());
  const std::string v = validation_to_json(bad);
  EXPECT_NE(v.find("DEGREE2_INTERIOR"), std::string::npos);
  EXPECT_NE(v.find("\"ok\": false"), std::string::npos);
  const std::string svg = svg_plot(testing::k4_points(), testing::k4());
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace delreal
