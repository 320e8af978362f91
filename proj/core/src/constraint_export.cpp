#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "delreal/constraints.hpp"
#include "delreal/error.hpp"

namespace delreal {

namespace {

using ojson = nlohmann::ordered_json;

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t parse_hex64(const std::string& text) {
  if (text.empty() || text.size() > 16) throw Error(ErrorCode::kParse, "bad graph digest '" + text + "'");
  std::uint64_t value = 0;
  for (char c : text) {
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else {
      throw Error(ErrorCode::kParse, "bad graph digest '" + text + "'");
    }
    value = value * 16 + static_cast<std::uint64_t>(d);
  }
  return value;
}

ojson to_json(const ConstraintSystem& system) {
  const auto& vars = system.variables();
  ojson root;
  root["schema"] = 1;
  root["flavor"] = std::string(to_string(system.flavor()));
  root["graph_digest"] = hex64(system.graph_digest());
  ojson names = ojson::array();
  for (const VarId& v : vars) names.push_back(var_name(v));
  root["variables"] = std::move(names);
  ojson constraints = ojson::array();
  for (const Constraint& c : system.constraints()) {
    ojson entry;
    entry["tag"] = std::string(to_string(c.tag.kind));
    ojson args = ojson::array();
    for (int i = 0; i < tag_arity(c.tag.kind); ++i) args.push_back(c.tag.args[static_cast<std::size_t>(i)]);
    entry["args"] = std::move(args);
    entry["relation"] = std::string(relation_symbol(c.relation));
    ojson terms = ojson::array();
    for (const Term& t : c.poly.terms()) {
      ojson term = ojson::array({t.coefficient});
      if (t.monomial.a >= 0) term.push_back(var_name(vars[static_cast<std::size_t>(t.monomial.a)]));
      if (t.monomial.b >= 0) term.push_back(var_name(vars[static_cast<std::size_t>(t.monomial.b)]));
      terms.push_back(std::move(term));
    }
    entry["terms"] = std::move(terms);
    constraints.push_back(std::move(entry));
  }
  root["constraints"] = std::move(constraints);
  return root;
}

std::string smt_monomial(const ConstraintSystem& system, const Term& t) {
  const auto& vars = system.variables();
  std::vector<std::string> factors;
  const std::int64_t mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
  if (mag != 1 || t.monomial.degree() == 0) factors.push_back(std::to_string(mag));
  if (t.monomial.a >= 0) factors.push_back(var_name(vars[static_cast<std::size_t>(t.monomial.a)]));
  if (t.monomial.b >= 0) factors.push_back(var_name(vars[static_cast<std::size_t>(t.monomial.b)]));
  std::string body;
  if (factors.size() == 1) {
    body = factors[0];
  } else {
    body = "(*";
    for (const auto& f : factors) body += " " + f;
    body += ")";
  }
  return t.coefficient < 0 ? "(- " + body + ")" : body;
}

std::string smt_poly(const ConstraintSystem& system, const Poly2& poly) {
  const auto& terms = poly.terms();
  if (terms.empty()) return "0";
  if (terms.size() == 1) return smt_monomial(system, terms[0]);
  std::string s = "(+";
  for (const Term& t : terms) s += " " + smt_monomial(system, t);
  return s + ")";
}

std::string to_smtlib2(const ConstraintSystem& system) {
  std::ostringstream out;
  out << "; " << to_string(system.flavor()) << " system, graph digest " << hex64(system.graph_digest()) << "\n";
  out << "(set-logic QF_NRA)\n";
  for (const VarId& v : system.variables()) out << "(declare-const " << var_name(v) << " Real)\n";
  for (const Constraint& c : system.constraints()) {
    out << "(assert (" << relation_symbol(c.relation) << " " << smt_poly(system, c.poly) << " 0))\n";
  }
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

}  // namespace

std::string export_system(const ConstraintSystem& system, ExportFormat format) {
  if (format == ExportFormat::kSmtLib2) return to_smtlib2(system);
  return to_json(system).dump(1) + "\n";
}

ConstraintSystem parse_system_json(std::string_view text) {
  try {
    const ojson root = ojson::parse(text);
    if (root.at("schema").get<int>() != 1) throw Error(ErrorCode::kParse, "unsupported constraint schema");
    const std::string flavor_name = root.at("flavor").get<std::string>();
    Flavor flavor;
    if (flavor_name == to_string(Flavor::kConst)) {
      flavor = Flavor::kConst;
    } else if (flavor_name == to_string(Flavor::kConstSqu)) {
      flavor = Flavor::kConstSqu;
    } else {
      throw Error(ErrorCode::kParse, "bad flavor '" + flavor_name + "'");
    }
    const std::uint64_t digest = parse_hex64(root.at("graph_digest").get<std::string>());
    std::vector<VarId> vars;
    std::map<std::string, std::int32_t> by_name;
    for (const auto& name : root.at("variables")) {
      const std::string s = name.get<std::string>();
      by_name.emplace(s, static_cast<std::int32_t>(vars.size()));
      vars.push_back(parse_var_name(s));
    }
    std::vector<Constraint> constraints;
    for (const auto& entry : root.at("constraints")) {
      Constraint c;
      c.tag.kind = parse_tag_kind(entry.at("tag").get<std::string>());
      const auto& args = entry.at("args");
      if (static_cast<int>(args.size()) != tag_arity(c.tag.kind)) throw Error(ErrorCode::kParse, "bad tag arity");
      for (std::size_t i = 0; i < args.size(); ++i) c.tag.args[i] = args[i].get<int>();
      c.relation = parse_relation(entry.at("relation").get<std::string>());
      for (const auto& term : entry.at("terms")) {
        if (term.empty() || term.size() > 3) throw Error(ErrorCode::kParse, "bad term");
        std::array<std::int32_t, 2> idx{-1, -1};
        for (std::size_t k = 1; k < term.size(); ++k) {
          const auto it = by_name.find(term[k].get<std::string>());
          if (it == by_name.end()) throw Error(ErrorCode::kParse, "unknown variable in term");
          idx[k - 1] = it->second;
        }
        c.poly.add(term[0].get<std::int64_t>(), idx[0], idx[1]);
      }
      c.poly.canonicalize();
      constraints.push_back(std::move(c));
    }
    return ConstraintSystem(flavor, digest, std::move(vars), std::move(constraints));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) throw Error(ErrorCode::kParse, e.what());
    throw;
  }
}

std::uint64_t system_digest(const ConstraintSystem& system) {
  const std::string text = export_system(system, ExportFormat::kJson);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace delreal
