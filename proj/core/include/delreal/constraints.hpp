#pragma once

// Polynomial constraint systems whose satisfying assignments are Delaunay
// realizations of a plane triangulation with a prescribed outer face.
//
// CONST flavor: orientation (turn) inequalities along the clockwise outer
// cycle, "every other point lies left of each hull edge" inequalities, and
// per-edge witness discs (center variables) through both endpoints that
// strictly exclude every other point.
//
// CONSTSQU flavor: the same conditions imposed on every point of a 9-point
// unit stencil around each vertex, with an explicit radius per witness disc.
// Satisfying it makes the realization robust to moving each point anywhere
// in its half-unit box.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "delreal/exact.hpp"
#include "delreal/plane_graph.hpp"

namespace delreal {

enum class Flavor { kConst, kConstSqu };
std::string_view to_string(Flavor flavor) noexcept;

enum class VarKind : std::uint8_t { kPX, kPY, kCX, kCY, kR };

/// Point variables use j = 0; edge variables have i < j.
struct VarId {
  VarKind kind;
  Vertex i;
  Vertex j;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

VarId px(Vertex i);
VarId py(Vertex i);
VarId cx(Vertex a, Vertex b);
VarId cy(Vertex a, Vertex b);
VarId radius(Vertex a, Vertex b);

/// "px_3", "cy_2_5", "r_1_4".
std::string var_name(const VarId& id);
/// Inverse of var_name(). Throws kParse.
VarId parse_var_name(std::string_view name);

/// Product of at most two variables, by index into the system's variable
/// list. -1 marks an absent factor; a <= b, so constants are (-1,-1) and
/// linear terms are (-1, v).
struct Monomial {
  std::int32_t a = -1;
  std::int32_t b = -1;
  int degree() const { return (a >= 0) + (b >= 0); }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

Monomial make_monomial(std::int32_t x = -1, std::int32_t y = -1);

struct Term {
  Monomial monomial;
  std::int64_t coefficient;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Integer-coefficient polynomial of total degree <= 2 in canonical form:
/// terms sorted by monomial, no zero coefficients, no repeated monomials.
class Poly2 {
 public:
  void add(std::int64_t coefficient, std::int32_t x = -1, std::int32_t y = -1);
  /// Adds coefficient * (X + x_offset) * (Y + y_offset); a variable index of
  /// -1 leaves only the offset in that factor.
  void add_product(std::int64_t coefficient, std::int32_t x, std::int64_t x_offset, std::int32_t y,
                   std::int64_t y_offset);
  void canonicalize();

  const std::vector<Term>& terms() const { return terms_; }
  int degree() const;
  std::int64_t max_abs_coefficient() const;

  friend bool operator==(const Poly2&, const Poly2&) = default;

 private:
  std::vector<Term> terms_;
};

enum class Relation { kEq, kGt, kLt, kGe, kLe };
std::string_view relation_symbol(Relation relation) noexcept;
/// Throws kParse.
Relation parse_relation(std::string_view symbol);
bool is_strict(Relation relation) noexcept;

enum class TagKind { kConTurn, kConInterior, kDisEq, kDisExcl, kConSqu, kDisSquIn, kDisSquOut };
std::string_view to_string(TagKind kind) noexcept;
/// Throws kParse.
TagKind parse_tag_kind(std::string_view name);
/// Number of meaningful entries in Tag::args for the kind.
int tag_arity(TagKind kind) noexcept;

/// Provenance of a constraint. Vertex labels and stencil indices:
///   CON_TURN(i,j,k)          consecutive clockwise outer vertices
///   CON_INTERIOR(i,j,k)      i,j consecutive outer vertices, k any other vertex
///   DIS_EQ(i,j)              witness center equidistant from i and j
///   DIS_EXCL(i,j,k)          vertex k strictly outside the disc of edge ij
///   CONSQU(i,j,k,li,lj,lk)   stencil copy of CON_TURN (relation >) or CON_INTERIOR (relation <)
///   DISSQU_IN(i,j,v,l)       stencil point l of endpoint v inside the disc of edge ij
///   DISSQU_OUT(i,j,k,l)      stencil point l of vertex k strictly outside that disc
struct Tag {
  TagKind kind;
  std::array<int, 6> args{};
  friend auto operator<=>(const Tag&, const Tag&) = default;
};

std::string tag_label(const Tag& tag);

struct Constraint {
  Poly2 poly;
  Relation relation;
  Tag tag;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Stencil offsets: the vertex itself, then the square corners and edge
/// midpoints at unit distance in the fixed order used by the tags.
inline constexpr std::array<std::array<int, 2>, 9> kStencil{{
    {0, 0}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}, {-1, 0}, {0, 1}, {1, 0}, {0, -1},
}};

class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  ConstraintSystem(Flavor flavor, std::uint64_t graph_digest, std::vector<VarId> variables,
                   std::vector<Constraint> constraints);

  Flavor flavor() const { return flavor_; }
  std::uint64_t graph_digest() const { return graph_digest_; }
  const std::vector<VarId>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  /// -1 when the variable is not registered.
  std::int32_t index_of(const VarId& id) const;

  friend bool operator==(const ConstraintSystem& a, const ConstraintSystem& b) {
    return a.flavor_ == b.flavor_ && a.graph_digest_ == b.graph_digest_ && a.variables_ == b.variables_ &&
           a.constraints_ == b.constraints_;
  }

 private:
  Flavor flavor_ = Flavor::kConst;
  std::uint64_t graph_digest_ = 0;
  std::vector<VarId> variables_;
  std::vector<Constraint> constraints_;
  std::map<VarId, std::int32_t> index_;
};

struct ConstraintOptions {
  /// Restrict the "left of hull edge" inequalities to vertices off the outer
  /// face instead of every vertex other than the edge's endpoints.
  bool interior_only_non_outer = false;
};

ConstraintSystem build_const(const PlaneTriangulation& g, const ConstraintOptions& options = {});
ConstraintSystem build_constsqu(const PlaneTriangulation& g, const ConstraintOptions& options = {});

template <class T>
struct Assignment {
  Flavor flavor = Flavor::kConst;
  std::map<VarId, T> values;
};
using FloatAssignment = Assignment<double>;
using ExactAssignment = Assignment<Rat>;

/// Values in system variable order. Throws kMissingVariable.
std::vector<Rat> dense_values(const ConstraintSystem& system, const ExactAssignment& a);
std::vector<double> dense_values(const ConstraintSystem& system, const FloatAssignment& a);
ExactAssignment make_assignment(const ConstraintSystem& system, std::span<const Rat> values);
FloatAssignment make_assignment(const ConstraintSystem& system, std::span<const double> values);

struct ConstraintEvaluation {
  Rat residual;
  bool satisfied = false;
};

struct EvaluationReport {
  bool satisfied = true;
  std::size_t violated = 0;
  std::optional<std::size_t> first_violation;
  /// Smallest signed slack over strict inequalities (positive = satisfied).
  std::optional<Rat> min_strict_margin;
  /// Empty unless residuals were requested.
  std::vector<ConstraintEvaluation> per_constraint;
};

/// Exact evaluation of every constraint. Throws kMissingVariable.
EvaluationReport evaluate(const ConstraintSystem& system, const ExactAssignment& a, bool keep_residuals = true);
EvaluationReport evaluate(const ConstraintSystem& system, std::span<const Rat> dense, bool keep_residuals = true);

bool relation_holds(Relation relation, int sign) noexcept;

enum class ExportFormat { kJson, kSmtLib2 };

/// JSON (schema 1) or SMT-LIB2 (QF_NRA) text. Deterministic.
std::string export_system(const ConstraintSystem& system, ExportFormat format);
/// Parses the JSON export. Throws kParse.
ConstraintSystem parse_system_json(std::string_view text);
/// FNV-1a of the JSON export.
std::uint64_t system_digest(const ConstraintSystem& system);

}  // namespace delreal
