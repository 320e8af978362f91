#include "delreal/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "delreal/error.hpp"

namespace delreal {

namespace {

using ojson = nlohmann::ordered_json;

ojson int_json(const Int& v) {
  if (v.fits_slong_p()) return ojson(v.get_si());
  return ojson(v.get_str());
}

Int int_from_json(const ojson& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const Rat r = parse_rat(j.get<std::string>());
    if (r.get_den() != 1) throw Error(ErrorCode::kParse, "expected an integer coordinate");
    return r.get_num();
  }
  throw Error(ErrorCode::kParse, "expected an integer coordinate");
}

ojson cycle_json(const Cycle& c) {
  ojson out = ojson::array();
  for (Vertex v : c) out.push_back(v);
  return out;
}

template <class F>
auto parse_guard(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
}

PlaneTriangulation parse_graph_json(std::string_view text) {
  return parse_guard([&] {
    const ojson root = ojson::parse(text);
    const int n = root.at("n").get<int>();
    if (n < 1) throw Error(ErrorCode::kParse, "n must be positive");
    const auto label = [&](const ojson& j) {
      const int v = j.get<int>();
      if (v < 1 || v > n) throw Error(ErrorCode::kParse, "vertex label " + std::to_string(v) + " out of range");
      return v;
    };
    Rotation rotation(static_cast<std::size_t>(n + 1));
    std::vector<bool> listed(static_cast<std::size_t>(n + 1), false);
    for (const auto& [key, list] : root.at("rotation").items()) {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::kParse, "rotation key '" + key + "' is not a vertex label");
      }
      if (v < 1 || v > n) throw Error(ErrorCode::kParse, "vertex label " + key + " out of range");
      std::vector<Vertex> nbrs;
      for (const auto& u : list) nbrs.push_back(label(u));
      std::set<Vertex> seen(nbrs.begin(), nbrs.end());
      if (seen.size() != nbrs.size()) throw Error(ErrorCode::kParse, "vertex " + key + " lists a neighbor twice");
      rotation[static_cast<std::size_t>(v)] = std::move(nbrs);
      listed[static_cast<std::size_t>(v)] = true;
    }
    for (int v = 1; v <= n; ++v) {
      if (!listed[static_cast<std::size_t>(v)]) throw Error(ErrorCode::kParse, "vertex " + std::to_string(v) + " has no rotation entry");
    }
    Cycle outer;
    for (const auto& v : root.at("outer_face")) outer.push_back(label(v));
    return PlaneTriangulation(n, std::move(rotation), std::move(outer));
  });
}

std::string graph_to_json(const PlaneTriangulation& g) {
  ojson root;
  root["n"] = g.n();
  ojson rot = ojson::object();
  for (Vertex v = 1; v <= g.n(); ++v) rot[std::to_string(v)] = cycle_json(g.neighbors(v));
  root["rotation"] = std::move(rot);
  root["outer_face"] = cycle_json(g.outer_face());
  return root.dump(2) + "\n";
}

std::vector<RatPoint> parse_points(std::string_view text) {
  std::vector<RatPoint> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected two coordinates");
    }
    out.push_back({parse_rat(tokens[0]), parse_rat(tokens[1])});
  }
  return out;
}

std::string format_points(std::span<const RatPoint> points) {
  std::string out;
  for (const RatPoint& p : points) out += format_rat(p.x) + " " + format_rat(p.y) + "\n";
  return out;
}

std::string format_points(std::span<const IntPoint> points) {
  const std::vector<RatPoint> rp = to_rat_points(points);
  return format_points(std::span<const RatPoint>(rp));
}

std::string certificate_to_json(const RealizationCertificate& cert) {
  ojson root;
  root["schema"] = 1;
  ojson pts = ojson::array();
  for (const IntPoint& p : cert.points) pts.push_back(ojson::array({int_json(p.x), int_json(p.y)}));
  root["points"] = std::move(pts);
  root["outer_face"] = cycle_json(cert.outer_face);
  ojson centers = ojson::array();
  for (const RatPoint& c : cert.witness_centers) centers.push_back(ojson::array({format_rat(c.x), format_rat(c.y)}));
  root["witness_centers"] = std::move(centers);
  root["transcript"] = cert.transcript;
  return root.dump(2) + "\n";
}

RealizationCertificate parse_certificate_json(std::string_view text) {
  return parse_guard([&] {
    const ojson root = ojson::parse(text);
    RealizationCertificate cert;
    for (const auto& p : root.at("points")) {
      if (p.size() != 2) throw Error(ErrorCode::kParse, "a point needs two coordinates");
      cert.points.push_back({int_from_json(p[0]), int_from_json(p[1])});
    }
    for (const auto& v : root.at("outer_face")) cert.outer_face.push_back(v.get<int>());
    if (root.contains("witness_centers")) {
      for (const auto& c : root.at("witness_centers")) {
        if (c.size() != 2) throw Error(ErrorCode::kParse, "a center needs two coordinates");
        cert.witness_centers.push_back({parse_rat(c[0].get<std::string>()), parse_rat(c[1].get<std::string>())});
      }
    }
    if (root.contains("transcript")) cert.transcript = root.at("transcript").get<std::vector<std::string>>();
    return cert;
  });
}

std::string validation_to_json(const ValidationReport& report) {
  ojson root;
  root["ok"] = report.ok;
  ojson list = ojson::array();
  for (const Violation& v : report.violations) {
    ojson item;
    item["rule"] = v.rule;
    item["message"] = v.message;
    item["vertices"] = cycle_json(v.vertices);
    list.push_back(std::move(item));
  }
  root["violations"] = std::move(list);
  return root.dump(2) + "\n";
}

std::string certify_report_to_json(const CertifyReport& report) {
  ojson root;
  root["ok"] = report.ok;
  if (!report.ok) {
    root["failed_step"] = report.failed_step;
    root["detail"] = report.detail;
  }
  const auto edges = [](const std::vector<Edge>& list) {
    ojson out = ojson::array();
    for (const Edge& e : list) out.push_back(ojson::array({e.u, e.v}));
    return out;
  };
  if (!report.missing.empty() || !report.extra.empty()) {
    root["missing"] = edges(report.missing);
    root["extra"] = edges(report.extra);
  }
  root["transcript"] = report.transcript;
  return root.dump(2) + "\n";
}

std::string diagnostics_to_json(const RealizationResult& result, const std::string& smt2_path) {
  ojson root;
  root["status"] = std::string(to_string(result.status));
  std::map<Cycle, double> best;
  ojson attempts = ojson::array();
  for (const AttemptLog& a : result.attempts) {
    ojson item;
    item["outer_face"] = cycle_json(a.face);
    item["restart"] = a.restart;
    item["solver"] = std::string(to_string(a.solve_status));
    item["min_margin"] = std::isfinite(a.min_margin) ? ojson(a.min_margin) : ojson(nullptr);
    item["iterations"] = a.iterations;
    item["outcome"] = a.outcome;
    attempts.push_back(std::move(item));
    const auto it = best.find(a.face);
    if (it == best.end() || a.min_margin > it->second) best[a.face] = a.min_margin;
  }
  ojson faces = ojson::array();
  for (const auto& [face, margin] : best) {
    ojson item;
    item["outer_face"] = cycle_json(face);
    item["best_min_margin"] = std::isfinite(margin) ? ojson(margin) : ojson(nullptr);
    faces.push_back(std::move(item));
  }
  root["faces"] = std::move(faces);
  root["attempts"] = std::move(attempts);
  if (!smt2_path.empty()) root["smt2_path"] = smt2_path;
  if (!result.validation.ok) root["validation"] = ojson::parse(validation_to_json(result.validation));
  return root.dump(2) + "\n";
}

std::string svg_plot(std::span<const RatPoint> points, const PlaneTriangulation& g) {
  constexpr double kSize = 600.0, kPad = 30.0;
  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x, min_y = min_x, max_y = -min_x;
  std::vector<std::pair<double, double>> p;
  for (const RatPoint& q : points) {
    p.emplace_back(to_double(q.x), to_double(q.y));
    min_x = std::min(min_x, p.back().first);
    max_x = std::max(max_x, p.back().first);
    min_y = std::min(min_y, p.back().second);
    max_y = std::max(max_y, p.back().second);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-300});
  const double s = (kSize - 2 * kPad) / span;
  const auto sx = [&](std::size_t i) { return kPad + (p[i].first - min_x) * s; };
  const auto sy = [&](std::size_t i) { return kSize - kPad - (p[i].second - min_y) * s; };
  char buf[256];
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  out += "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  std::string hull;
  for (Vertex v : g.outer_face()) {
    const auto i = static_cast<std::size_t>(v - 1);
    std::snprintf(buf, sizeof buf, "%.3f,%.3f ", sx(i), sy(i));
    hull += buf;
  }
  if (!hull.empty()) hull.pop_back();
  out += "<polygon points=\"" + hull + "\" fill=\"#eef3fb\" stroke=\"#1f4e99\" stroke-width=\"2.5\"/>\n";
  for (const Edge& e : g.edges()) {
    const auto a = static_cast<std::size_t>(e.u - 1), b = static_cast<std::size_t>(e.v - 1);
    std::snprintf(buf, sizeof buf, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"#555\"/>\n", sx(a),
                  sy(a), sx(b), sy(b));
    out += buf;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"#c0392b\"/>"
                  "<text x=\"%.3f\" y=\"%.3f\" font-size=\"12\" font-family=\"sans-serif\">%zu</text>\n",
                  sx(i), sy(i), sx(i) + 6, sy(i) - 6, i + 1);
    out += buf;
  }
  return out + "</svg>\n";
}

}  // namespace delreal
