#pragma once

// File formats:
//   graph JSON        {"n": 4, "rotation": {"1": [2, 4, 3], ...}, "outer_face": [1, 2, 3]}
//   points text       one "x y" pair per line, integers or a/b, '#' starts a comment
//   certificate JSON  {"schema", "points", "outer_face", "witness_centers", "transcript"}

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "delreal/delaunay.hpp"
#include "delreal/exact.hpp"
#include "delreal/plane_graph.hpp"
#include "delreal/realizer.hpp"

namespace delreal {

/// Throws kIo.
std::string read_text_file(const std::string& path);
/// Throws kIo.
void write_text_file(const std::string& path, std::string_view text);

/// Throws kParse for malformed JSON, out-of-range labels or repeated
/// neighbors; structural errors from PlaneTriangulation propagate.
PlaneTriangulation parse_graph_json(std::string_view text);
std::string graph_to_json(const PlaneTriangulation& g);

/// Throws kParse.
std::vector<RatPoint> parse_points(std::string_view text);
std::string format_points(std::span<const RatPoint> points);
std::string format_points(std::span<const IntPoint> points);

std::string certificate_to_json(const RealizationCertificate& cert);
/// Throws kParse.
RealizationCertificate parse_certificate_json(std::string_view text);

std::string validation_to_json(const ValidationReport& report);
std::string certify_report_to_json(const CertifyReport& report);
/// `smt2_path`, when non-empty, names an exported constraint file for
/// external solvers.
std::string diagnostics_to_json(const RealizationResult& result, const std::string& smt2_path = "");

/// Points, graph edges and the hull polygon.
std::string svg_plot(std::span<const RatPoint> points, const PlaneTriangulation& g);

}  // namespace delreal
