#include "delreal/cli.hpp"

#include <CLI11.hpp>
#include <optional>

#include "delreal/constraints.hpp"
#include "delreal/error.hpp"
#include "delreal/instances.hpp"
#include "delreal/io.hpp"
#include "delreal/realizer.hpp"

namespace delreal::cli {

namespace {

struct Options {
  std::uint64_t seed = 1;
  double time_budget = 60.0;
  int verbose = 0;
  std::string output;
  bool strict_orientation = false;
  bool interior_non_outer = false;
  double margin = 0.0;
  int max_iterations = SolverConfig{}.max_iterations;
  int restarts = SolverConfig{}.restarts;

  std::string graph;
  std::string points;
  std::string warm;
  std::string plot;
  std::string kind;
  int n = 0;
  std::int64_t bound = 1000;
  std::string flavor = "const";
  std::string format = "json";
  int face = 0;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_text_file(o.output, text);
  }
}

RealizeConfig realize_config(const Options& o) {
  RealizeConfig cfg;
  cfg.solver.seed = o.seed;
  cfg.solver.margin = o.margin;
  cfg.solver.max_iterations = o.max_iterations;
  cfg.solver.restarts = o.restarts;
  cfg.time_budget = o.time_budget;
  cfg.allow_reflection = !o.strict_orientation;
  cfg.constraints.interior_only_non_outer = o.interior_non_outer;
  return cfg;
}

int cmd_realize(const Options& o, std::ostream& out, std::ostream& err) {
  const PlaneTriangulation g = parse_graph_json(read_text_file(o.graph));
  RealizeConfig cfg = realize_config(o);
  if (!o.warm.empty()) {
    const std::vector<RatPoint> pts = parse_points(read_text_file(o.warm));
    if (pts.size() != static_cast<std::size_t>(g.n())) {
      err << "error: warm start has " << pts.size() << " points, graph has " << g.n() << " vertices\n";
      return kUsage;
    }
    std::vector<Point2d> warm;
    for (const RatPoint& p : pts) warm.push_back({to_double(p.x), to_double(p.y)});
    cfg.warm_start = std::move(warm);
  }
  const RealizationResult result = realize(g, cfg);
  if (o.verbose > 0) {
    err << to_string(result.status) << " after " << result.attempts.size() << " attempts\n";
  }
  switch (result.status) {
    case RealizeStatus::kRealized: {
      const RealizationCertificate& cert = *result.certificate;
      emit(o, out, certificate_to_json(cert));
      if (!o.plot.empty()) {
        const PlaneTriangulation shown = g.n() > 3 ? reembed_with_outer_face(g, cert.outer_face) : g;
        write_text_file(o.plot, svg_plot(to_rat_points(cert.points), shown));
      }
      return kOk;
    }
    case RealizeStatus::kUnknown: {
      std::string smt2_path;
      if (!o.output.empty()) {
        smt2_path = o.output + ".smt2";
        const PlaneTriangulation gf = reembed_with_outer_face(g, candidate_outer_faces(g).front());
        write_text_file(smt2_path, export_system(build_constsqu(gf, cfg.constraints), ExportFormat::kSmtLib2));
      }
      emit(o, out, diagnostics_to_json(result, smt2_path));
      err << "UNKNOWN: no certified realization within the budget\n";
      return kFailed;
    }
    case RealizeStatus::kInvalidInput:
      emit(o, out, validation_to_json(result.validation));
      err << "INVALID_INPUT";
      for (const Violation& v : result.validation.violations) err << " " << v.rule;
      err << "\n";
      return kInvalidInput;
  }
  return kFailed;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  PlaneTriangulation g = parse_graph_json(read_text_file(o.graph));
  const std::string text = read_text_file(o.points);
  std::vector<RatPoint> pts;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const RealizationCertificate cert = parse_certificate_json(text);
    pts = to_rat_points(cert.points);
    if (g.n() > 3 && !same_cycle_any_orientation(cert.outer_face, g.outer_face())) {
      try {
        g = reembed_with_outer_face(g, cert.outer_face);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kFaceNotFound) throw;
      }
    }
  } else {
    pts = parse_points(text);
  }
  if (pts.size() != static_cast<std::size_t>(g.n())) {
    err << "error: " << pts.size() << " points for a graph on " << g.n() << " vertices\n";
    return kUsage;
  }
  const CertifyReport report = certify(g, pts, !o.strict_orientation);
  emit(o, out, certify_report_to_json(report));
  if (!report.ok) {
    err << report.failed_step << ": " << report.detail << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.kind == "random") {
    const Instance inst = random_instance(o.n, o.seed, o.bound);
    write_text_file(o.output + ".graph.json", graph_to_json(inst.graph));
    write_text_file(o.output + ".points.txt", format_points(std::span<const IntPoint>(inst.points)));
    out << o.output << ".graph.json\n" << o.output << ".points.txt\n";
  } else {
    write_text_file(o.output + ".graph.json", graph_to_json(fan_triangulation(o.n)));
    out << o.output << ".graph.json\n";
  }
  (void)err;
  return kOk;
}

int cmd_emit(const Options& o, std::ostream& out, std::ostream& err) {
  const PlaneTriangulation g = parse_graph_json(read_text_file(o.graph));
  const ValidationReport report = validate_triangulation(g);
  if (!report.ok) {
    out << validation_to_json(report);
    return kInvalidInput;
  }
  const std::vector<Cycle> faces = candidate_outer_faces(g);
  if (o.face < 0 || static_cast<std::size_t>(o.face) >= faces.size()) {
    err << "error: FACE_NOT_FOUND: face index " << o.face << " outside 0.." << faces.size() - 1 << "\n";
    return kUsage;
  }
  const PlaneTriangulation gf = reembed_with_outer_face(g, faces[static_cast<std::size_t>(o.face)]);
  ConstraintOptions options;
  options.interior_only_non_outer = o.interior_non_outer;
  const ConstraintSystem sys = o.flavor == "const" ? build_const(gf, options) : build_constsqu(gf, options);
  emit(o, out, export_system(sys, o.format == "json" ? ExportFormat::kJson : ExportFormat::kSmtLib2));
  std::ostream& counts = o.output.empty() ? err : out;
  counts << "variables: " << sys.variables().size() << "\n"
         << "constraints: " << sys.constraints().size() << "\n";
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const PlaneTriangulation g = parse_graph_json(read_text_file(o.graph));
  const ValidationReport report = validate_triangulation(g);
  emit(o, out, validation_to_json(report));
  if (!report.ok) {
    for (const Violation& v : report.violations) err << v.rule << ": " << v.message << "\n";
    return kInvalidInput;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Delaunay realizations of plane triangulations with exact certificates"};
  app.name(args.empty() ? "delreal" : args.front());
  app.set_config("--config", "", "TOML file with option values");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--time-budget", o.time_budget, "Seconds per realize call, 0 for none")->capture_default_str();
  app.add_flag("-v,--verbose", o.verbose, "Progress messages on stderr");
  app.add_option("-o,--output", o.output, "Output file (prefix for gen)");
  app.add_flag("--strict-orientation", o.strict_orientation, "Reject mirrored hulls");
  app.add_flag("--interior-non-outer", o.interior_non_outer,
               "Hull-edge side constraints only for vertices off the outer face");
  app.add_option("--margin", o.margin, "Solver margin, 0 for the default")->capture_default_str();
  app.add_option("--max-iterations", o.max_iterations, "Descent iterations per attempt")->capture_default_str();
  app.add_option("--restarts", o.restarts, "Restarts per outer face")->capture_default_str();

  auto* realize_cmd = app.add_subcommand("realize", "Find and certify an integer realization");
  realize_cmd->add_option("graph", o.graph, "Graph JSON")->required();
  realize_cmd->add_option("--warm", o.warm, "Points file to start the search from");
  realize_cmd->add_option("--plot", o.plot, "Write an SVG of the certificate");

  auto* verify_cmd = app.add_subcommand("verify", "Certify a point set or certificate against a graph");
  verify_cmd->add_option("graph", o.graph, "Graph JSON")->required();
  verify_cmd->add_option("points", o.points, "Points text or certificate JSON")->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("kind", o.kind, "random or fan")->required()->check(CLI::IsMember({"random", "fan"}));
  gen_cmd->add_option("--n", o.n, "Vertex count")->required();
  gen_cmd->add_option("--bound", o.bound, "Coordinate bound for random points")->capture_default_str();
  gen_cmd->callback([&] {
    if (o.output.empty()) throw CLI::RequiredError("--output");
  });

  auto* emit_cmd = app.add_subcommand("emit", "Export a constraint system");
  emit_cmd->add_option("graph", o.graph, "Graph JSON")->required();
  emit_cmd->add_option("--flavor", o.flavor, "const or constsqu")
      ->capture_default_str()
      ->check(CLI::IsMember({"const", "constsqu"}));
  emit_cmd->add_option("--format", o.format, "json or smt2")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "smt2"}));
  emit_cmd->add_option("--face", o.face, "Index into the candidate outer faces")->capture_default_str();

  auto* check_cmd = app.add_subcommand("check", "Validate a graph file");
  check_cmd->add_option("graph", o.graph, "Graph JSON")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (realize_cmd->parsed()) return cmd_realize(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (gen_cmd->parsed()) return cmd_gen(o, out, err);
    if (emit_cmd->parsed()) return cmd_emit(o, out, err);
    if (check_cmd->parsed()) return cmd_check(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace delreal::cli
