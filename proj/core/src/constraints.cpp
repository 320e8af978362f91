#include "delreal/constraints.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "delreal/error.hpp"

namespace delreal {

std::string_view to_string(Flavor flavor) noexcept {
  return flavor == Flavor::kConst ? "CONST" : "CONSTSQU";
}

VarId px(Vertex i) { return {VarKind::kPX, i, 0}; }
VarId py(Vertex i) { return {VarKind::kPY, i, 0}; }
VarId cx(Vertex a, Vertex b) { return {VarKind::kCX, std::min(a, b), std::max(a, b)}; }
VarId cy(Vertex a, Vertex b) { return {VarKind::kCY, std::min(a, b), std::max(a, b)}; }
VarId radius(Vertex a, Vertex b) { return {VarKind::kR, std::min(a, b), std::max(a, b)}; }

namespace {

constexpr std::array<std::string_view, 5> kVarPrefix{"px", "py", "cx", "cy", "r"};

int parse_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "bad integer '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

std::string var_name(const VarId& id) {
  std::string name(kVarPrefix[static_cast<std::size_t>(id.kind)]);
  name += "_" + std::to_string(id.i);
  if (id.kind != VarKind::kPX && id.kind != VarKind::kPY) name += "_" + std::to_string(id.j);
  return name;
}

VarId parse_var_name(std::string_view name) {
  const auto first = name.find('_');
  if (first == std::string_view::npos) throw Error(ErrorCode::kParse, "bad variable name '" + std::string(name) + "'");
  const std::string_view prefix = name.substr(0, first);
  const auto it = std::find(kVarPrefix.begin(), kVarPrefix.end(), prefix);
  if (it == kVarPrefix.end()) throw Error(ErrorCode::kParse, "bad variable name '" + std::string(name) + "'");
  const auto kind = static_cast<VarKind>(it - kVarPrefix.begin());
  const std::string_view rest = name.substr(first + 1);
  const auto second = rest.find('_');
  const bool point = kind == VarKind::kPX || kind == VarKind::kPY;
  if (point != (second == std::string_view::npos)) {
    throw Error(ErrorCode::kParse, "bad variable name '" + std::string(name) + "'");
  }
  if (point) return {kind, parse_int(rest), 0};
  const int i = parse_int(rest.substr(0, second));
  const int j = parse_int(rest.substr(second + 1));
  if (!(i < j)) throw Error(ErrorCode::kParse, "edge variable indices must be increasing in '" + std::string(name) + "'");
  return {kind, i, j};
}

Monomial make_monomial(std::int32_t x, std::int32_t y) {
  return x <= y ? Monomial{x, y} : Monomial{y, x};
}

void Poly2::add(std::int64_t coefficient, std::int32_t x, std::int32_t y) {
  if (coefficient != 0) terms_.push_back({make_monomial(x, y), coefficient});
}

void Poly2::add_product(std::int64_t coefficient, std::int32_t x, std::int64_t x_offset, std::int32_t y,
                        std::int64_t y_offset) {
  // c (X + a)(Y + b) = c XY + c b X + c a Y + c a b, with X or Y absent when the index is -1
  if (x >= 0 && y >= 0) add(coefficient, x, y);
  if (x >= 0) add(coefficient * y_offset, x);
  if (y >= 0) add(coefficient * x_offset, y);
  add(coefficient * x_offset * y_offset);
}

void Poly2::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& l, const Term& r) { return l.monomial < r.monomial; });
  std::vector<Term> merged;
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coefficient == 0; });
  terms_ = std::move(merged);
}

int Poly2::degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::int64_t Poly2::max_abs_coefficient() const {
  std::int64_t m = 0;
  for (const Term& t : terms_) m = std::max(m, t.coefficient < 0 ? -t.coefficient : t.coefficient);
  return m;
}

std::string_view relation_symbol(Relation relation) noexcept {
  switch (relation) {
    case Relation::kEq: return "=";
    case Relation::kGt: return ">";
    case Relation::kLt: return "<";
    case Relation::kGe: return ">=";
    case Relation::kLe: return "<=";
  }
  return "?";
}

Relation parse_relation(std::string_view symbol) {
  for (Relation r : {Relation::kEq, Relation::kGt, Relation::kLt, Relation::kGe, Relation::kLe}) {
    if (relation_symbol(r) == symbol) return r;
  }
  throw Error(ErrorCode::kParse, "bad relation '" + std::string(symbol) + "'");
}

bool is_strict(Relation relation) noexcept { return relation == Relation::kGt || relation == Relation::kLt; }

bool relation_holds(Relation relation, int sign) noexcept {
  switch (relation) {
    case Relation::kEq: return sign == 0;
    case Relation::kGt: return sign > 0;
    case Relation::kLt: return sign < 0;
    case Relation::kGe: return sign >= 0;
    case Relation::kLe: return sign <= 0;
  }
  return false;
}

namespace {

constexpr std::array<TagKind, 7> kAllTagKinds{TagKind::kConTurn,  TagKind::kConInterior, TagKind::kDisEq,
                                              TagKind::kDisExcl,  TagKind::kConSqu,      TagKind::kDisSquIn,
                                              TagKind::kDisSquOut};

}  // namespace

std::string_view to_string(TagKind kind) noexcept {
  switch (kind) {
    case TagKind::kConTurn: return "CON_TURN";
    case TagKind::kConInterior: return "CON_INTERIOR";
    case TagKind::kDisEq: return "DIS_EQ";
    case TagKind::kDisExcl: return "DIS_EXCL";
    case TagKind::kConSqu: return "CONSQU";
    case TagKind::kDisSquIn: return "DISSQU_IN";
    case TagKind::kDisSquOut: return "DISSQU_OUT";
  }
  return "?";
}

TagKind parse_tag_kind(std::string_view name) {
  for (TagKind k : kAllTagKinds) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kParse, "bad tag kind '" + std::string(name) + "'");
}

int tag_arity(TagKind kind) noexcept {
  switch (kind) {
    case TagKind::kConTurn:
    case TagKind::kConInterior:
    case TagKind::kDisExcl: return 3;
    case TagKind::kDisEq: return 2;
    case TagKind::kConSqu: return 6;
    case TagKind::kDisSquIn:
    case TagKind::kDisSquOut: return 4;
  }
  return 0;
}

std::string tag_label(const Tag& tag) {
  std::string s(to_string(tag.kind));
  s += "(";
  for (int i = 0; i < tag_arity(tag.kind); ++i) {
    if (i) s += ",";
    s += std::to_string(tag.args[static_cast<std::size_t>(i)]);
  }
  return s + ")";
}

ConstraintSystem::ConstraintSystem(Flavor flavor, std::uint64_t graph_digest, std::vector<VarId> variables,
                                   std::vector<Constraint> constraints)
    : flavor_(flavor),
      graph_digest_(graph_digest),
      variables_(std::move(variables)),
      constraints_(std::move(constraints)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (!index_.emplace(variables_[i], static_cast<std::int32_t>(i)).second) {
      throw Error(ErrorCode::kInvalidArgument, "variable " + var_name(variables_[i]) + " registered twice");
    }
  }
  const auto count = static_cast<std::int32_t>(variables_.size());
  for (const Constraint& c : constraints_) {
    for (const Term& t : c.poly.terms()) {
      if (t.monomial.b >= count) throw Error(ErrorCode::kInvalidArgument, "constraint references unknown variable");
    }
  }
}

std::int32_t ConstraintSystem::index_of(const VarId& id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

namespace {

struct Consecutive {
  std::vector<std::array<Vertex, 3>> triples;
  std::vector<std::array<Vertex, 2>> pairs;
};

Consecutive outer_walk(const Cycle& outer) {
  Consecutive c;
  const std::size_t m = outer.size();
  for (std::size_t t = 0; t < m; ++t) {
    c.triples.push_back({outer[t], outer[(t + 1) % m], outer[(t + 2) % m]});
    c.pairs.push_back({outer[t], outer[(t + 1) % m]});
  }
  return c;
}

class Builder {
 public:
  Builder(const PlaneTriangulation& g, bool with_radius) : g_(g) {
    for (Vertex v = 1; v <= g.n(); ++v) {
      vars_.push_back(px(v));
      vars_.push_back(py(v));
    }
    edge_base_ = static_cast<std::int32_t>(vars_.size());
    stride_ = with_radius ? 3 : 2;
    for (const Edge& e : g.edges()) {
      vars_.push_back(cx(e.u, e.v));
      vars_.push_back(cy(e.u, e.v));
      if (with_radius) vars_.push_back(radius(e.u, e.v));
    }
  }

  std::int32_t X(Vertex v) const { return 2 * (v - 1); }
  std::int32_t Y(Vertex v) const { return 2 * (v - 1) + 1; }
  std::int32_t edge_slot(Vertex a, Vertex b) const {
    const auto& edges = g_.edges();
    const auto it = std::lower_bound(edges.begin(), edges.end(), make_edge(a, b));
    return edge_base_ + stride_ * static_cast<std::int32_t>(it - edges.begin());
  }
  std::int32_t CX(Vertex a, Vertex b) const { return edge_slot(a, b); }
  std::int32_t CY(Vertex a, Vertex b) const { return edge_slot(a, b) + 1; }
  std::int32_t R(Vertex a, Vertex b) const { return edge_slot(a, b) + 2; }

  /// Con(Z0, Z1, Z2) with Zt = P_{v[t]} + stencil offset l[t].
  Poly2 con(std::array<Vertex, 3> v, std::array<int, 3> l) const {
    const auto off = [&](int t, int axis) {
      return static_cast<std::int64_t>(kStencil[static_cast<std::size_t>(l[static_cast<std::size_t>(t)])]
                                               [static_cast<std::size_t>(axis)]);
    };
    const auto x = [&](int t) { return X(v[static_cast<std::size_t>(t)]); };
    const auto y = [&](int t) { return Y(v[static_cast<std::size_t>(t)]); };
    Poly2 p;
    // x2*y1 - x2*y0 - x0*y1 - x1*y2 + x1*y0 + x0*y2
    p.add_product(1, x(2), off(2, 0), y(1), off(1, 1));
    p.add_product(-1, x(2), off(2, 0), y(0), off(0, 1));
    p.add_product(-1, x(0), off(0, 0), y(1), off(1, 1));
    p.add_product(-1, x(1), off(1, 0), y(2), off(2, 1));
    p.add_product(1, x(1), off(1, 0), y(0), off(0, 1));
    p.add_product(1, x(0), off(0, 0), y(2), off(2, 1));
    p.canonicalize();
    return p;
  }

  /// |Z - C_ij|^2 - r_ij^2 for Z = P_v + stencil offset l.
  Poly2 disc_power(Vertex i, Vertex j, Vertex v, int l) const {
    const std::int64_t a = kStencil[static_cast<std::size_t>(l)][0];
    const std::int64_t b = kStencil[static_cast<std::size_t>(l)][1];
    Poly2 p;
    p.add_product(1, X(v), a, X(v), a);
    p.add_product(1, CX(i, j), 0, CX(i, j), 0);
    p.add_product(-2, X(v), a, CX(i, j), 0);
    p.add_product(1, Y(v), b, Y(v), b);
    p.add_product(1, CY(i, j), 0, CY(i, j), 0);
    p.add_product(-2, Y(v), b, CY(i, j), 0);
    p.add(-1, R(i, j), R(i, j));
    p.canonicalize();
    return p;
  }

  /// |P_k - C_ij|^2 - |P_ref - C_ij|^2 with the squared center terms cancelled.
  Poly2 power_difference(Vertex i, Vertex j, Vertex k, Vertex ref) const {
    Poly2 p;
    p.add(1, X(k), X(k));
    p.add(-1, X(ref), X(ref));
    p.add(1, Y(k), Y(k));
    p.add(-1, Y(ref), Y(ref));
    p.add(-2, CX(i, j), X(k));
    p.add(-2, CY(i, j), Y(k));
    p.add(2, CX(i, j), X(ref));
    p.add(2, CY(i, j), Y(ref));
    p.canonicalize();
    return p;
  }

  void push(Poly2 poly, Relation rel, Tag tag) { constraints_.push_back({std::move(poly), rel, tag}); }

  ConstraintSystem finish(Flavor flavor) {
    return ConstraintSystem(flavor, g_.digest(), std::move(vars_), std::move(constraints_));
  }

  const PlaneTriangulation& g_;

 private:
  std::vector<VarId> vars_;
  std::vector<Constraint> constraints_;
  std::int32_t edge_base_ = 0;
  std::int32_t stride_ = 2;
};

std::vector<Vertex> interior_candidates(const PlaneTriangulation& g, Vertex i, Vertex j,
                                        const ConstraintOptions& options) {
  std::vector<Vertex> ks;
  for (Vertex k = 1; k <= g.n(); ++k) {
    if (k == i || k == j) continue;
    if (options.interior_only_non_outer && g.on_outer_face(k)) continue;
    ks.push_back(k);
  }
  return ks;
}

}  // namespace

ConstraintSystem build_const(const PlaneTriangulation& g, const ConstraintOptions& options) {
  Builder b(g, false);
  const Consecutive walk = outer_walk(g.outer_face());
  for (const auto& [i, j, k] : walk.triples) {
    b.push(b.con({i, j, k}, {0, 0, 0}), Relation::kGt, {TagKind::kConTurn, {i, j, k}});
  }
  for (const auto& [i, j] : walk.pairs) {
    for (Vertex k : interior_candidates(g, i, j, options)) {
      b.push(b.con({i, k, j}, {0, 0, 0}), Relation::kLt, {TagKind::kConInterior, {i, j, k}});
    }
  }
  for (const Edge& e : g.edges()) {
    const Vertex i = e.u, j = e.v;
    // X_i^2 - X_j^2 + Y_i^2 - Y_j^2 - 2 X_ij X_i - 2 Y_ij Y_i + 2 X_ij X_j + 2 Y_ij Y_j = 0
    b.push(b.power_difference(i, j, j, i), Relation::kEq, {TagKind::kDisEq, {i, j}});
    for (Vertex k = 1; k <= g.n(); ++k) {
      if (k == i || k == j) continue;
      b.push(b.power_difference(i, j, k, i), Relation::kGt, {TagKind::kDisExcl, {i, j, k}});
    }
  }
  return b.finish(Flavor::kConst);
}

ConstraintSystem build_constsqu(const PlaneTriangulation& g, const ConstraintOptions& options) {
  Builder b(g, true);
  const Consecutive walk = outer_walk(g.outer_face());
  constexpr int kS = static_cast<int>(kStencil.size());
  for (const auto& [i, j, k] : walk.triples) {
    for (int li = 0; li < kS; ++li) {
      for (int lj = 0; lj < kS; ++lj) {
        for (int lk = 0; lk < kS; ++lk) {
          b.push(b.con({i, j, k}, {li, lj, lk}), Relation::kGt, {TagKind::kConSqu, {i, j, k, li, lj, lk}});
        }
      }
    }
  }
  for (const auto& [i, j] : walk.pairs) {
    for (Vertex k : interior_candidates(g, i, j, options)) {
      for (int li = 0; li < kS; ++li) {
        for (int lj = 0; lj < kS; ++lj) {
          for (int lk = 0; lk < kS; ++lk) {
            b.push(b.con({i, k, j}, {li, lk, lj}), Relation::kLt, {TagKind::kConSqu, {i, j, k, li, lj, lk}});
          }
        }
      }
    }
  }
  for (const Edge& e : g.edges()) {
    const Vertex i = e.u, j = e.v;
    for (Vertex v : {i, j}) {
      for (int l = 0; l < kS; ++l) {
        b.push(b.disc_power(i, j, v, l), Relation::kLe, {TagKind::kDisSquIn, {i, j, v, l}});
      }
    }
    for (Vertex k = 1; k <= g.n(); ++k) {
      if (k == i || k == j) continue;
      for (int l = 0; l < kS; ++l) {
        b.push(b.disc_power(i, j, k, l), Relation::kGt, {TagKind::kDisSquOut, {i, j, k, l}});
      }
    }
  }
  return b.finish(Flavor::kConstSqu);
}

namespace {

template <class T>
std::vector<T> dense_from(const ConstraintSystem& system, const Assignment<T>& a) {
  std::vector<T> out;
  out.reserve(system.variables().size());
  for (const VarId& id : system.variables()) {
    const auto it = a.values.find(id);
    if (it == a.values.end()) throw Error(ErrorCode::kMissingVariable, var_name(id));
    out.push_back(it->second);
  }
  return out;
}

template <class T>
Assignment<T> assignment_from(const ConstraintSystem& system, std::span<const T> values) {
  if (values.size() != system.variables().size()) {
    throw Error(ErrorCode::kMissingVariable, "dense assignment has the wrong length");
  }
  Assignment<T> a;
  a.flavor = system.flavor();
  for (std::size_t i = 0; i < values.size(); ++i) a.values.emplace(system.variables()[i], values[i]);
  return a;
}

}  // namespace

std::vector<Rat> dense_values(const ConstraintSystem& system, const ExactAssignment& a) { return dense_from(system, a); }
std::vector<double> dense_values(const ConstraintSystem& system, const FloatAssignment& a) {
  return dense_from(system, a);
}
ExactAssignment make_assignment(const ConstraintSystem& system, std::span<const Rat> values) {
  return assignment_from(system, values);
}
FloatAssignment make_assignment(const ConstraintSystem& system, std::span<const double> values) {
  return assignment_from(system, values);
}

EvaluationReport evaluate(const ConstraintSystem& system, const ExactAssignment& a, bool keep_residuals) {
  const auto dense = dense_values(system, a);
  return evaluate(system, dense, keep_residuals);
}

EvaluationReport evaluate(const ConstraintSystem& system, std::span<const Rat> dense, bool keep_residuals) {
  if (dense.size() != system.variables().size()) {
    throw Error(ErrorCode::kMissingVariable, "dense assignment has the wrong length");
  }
  // Clear denominators once: with y = D x, D^2 p(x) is an integer polynomial in y.
  Int d = 1;
  for (const Rat& v : dense) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
  const Int d2 = d * d;
  std::vector<Int> y;
  y.reserve(dense.size());
  for (const Rat& v : dense) y.push_back(v.get_num() * (d / v.get_den()));

  EvaluationReport report;
  if (keep_residuals) report.per_constraint.reserve(system.constraints().size());
  Int acc, tmp;
  for (std::size_t c = 0; c < system.constraints().size(); ++c) {
    const Constraint& con = system.constraints()[c];
    acc = 0;
    for (const Term& t : con.poly.terms()) {
      const auto& [a, b] = t.monomial;
      if (a >= 0) {
        tmp = y[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)];
      } else if (b >= 0) {
        tmp = y[static_cast<std::size_t>(b)] * d;
      } else {
        tmp = d2;
      }
      if (t.coefficient == 1) {
        acc += tmp;
      } else if (t.coefficient == -1) {
        acc -= tmp;
      } else {
        acc += tmp * static_cast<long>(t.coefficient);
      }
    }
    const int sign = sgn(acc);
    const bool ok = relation_holds(con.relation, sign);
    if (!ok) {
      report.satisfied = false;
      ++report.violated;
      if (!report.first_violation) report.first_violation = c;
    }
    if (is_strict(con.relation) || keep_residuals) {
      Rat residual(acc, d2);
      residual.canonicalize();
      if (is_strict(con.relation)) {
        const Rat slack = con.relation == Relation::kGt ? residual : Rat(-residual);
        if (!report.min_strict_margin || slack < *report.min_strict_margin) report.min_strict_margin = slack;
      }
      if (keep_residuals) report.per_constraint.push_back({std::move(residual), ok});
    }
  }
  return report;
}

}  // namespace delreal
