#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varkit/errors.hpp"
#include "varkit/linalg.hpp"

namespace varkit {

// Affine inequality a.x <= b. Hyperplanes reuse the struct as a.x = b.
struct Ineq {
  RatVec a;
  Rat b;
};

struct Generators {
  std::vector<RatVec> vertices, rays, lines;
  bool none() const { return vertices.empty() && rays.empty() && lines.empty(); }
};

// Double description: minimal generators (extreme rays modulo lineality, plus
// a lineality basis) of the cone {x : n.x <= 0 for all n in normals}.
std::pair<std::vector<RatVec>, std::vector<RatVec>> dd_cone(std::size_t dim,
                                                            const std::vector<RatVec>& normals);

namespace dd {

// Incremental double-description state, for subdivision procedures that add
// one constraint at a time to many sibling regions. The processed-constraint
// list is a persistent chain so copying a state is cheap.
struct ProcessedNode {
  RatVec normal;
  std::shared_ptr<const ProcessedNode> next;
};

struct State {
  std::size_t dim = 0;
  std::vector<RatVec> rays, lines;
  std::shared_ptr<const ProcessedNode> processed;
  std::size_t processed_count = 0;
};

State init(std::size_t dim);
void add_constraint(State& st, const RatVec& normal);

}  // namespace dd

// Exact convex polyhedron over the rationals. Both representations are
// computed at construction and kept canonical: the hrep is irredundant
// (equalities appear as paired inequalities, sorted), the vrep lists extreme
// vertices/rays plus a lineality basis. Instances are immutable values.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_ineqs(std::size_t dim, std::vector<Ineq> ineqs);
  // Keeps the given (possibly redundant) hrep and only derives generators;
  // for subdivision cells, which never need facet-minimal descriptions.
  static Polyhedron from_ineqs_raw(std::size_t dim, std::vector<Ineq> ineqs);
  // Trusts both representations (they must describe the same set).
  static Polyhedron from_raw(std::size_t dim, std::vector<Ineq> ineqs, Generators g);
  static Polyhedron from_generators(std::size_t dim, Generators g);
  static Polyhedron whole_space(std::size_t dim);
  static Polyhedron empty_set(std::size_t dim);
  static Polyhedron point(RatVec x);
  static Polyhedron cone_from_rays(std::size_t dim, std::vector<RatVec> rays,
                                   std::vector<RatVec> lines = {});

  std::size_t dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool is_cone() const;
  bool is_bounded() const { return gens_.rays.empty() && gens_.lines.empty(); }

  const std::vector<Ineq>& ineqs() const { return ineqs_; }
  const Generators& gens() const { return gens_; }

  bool contains(const RatVec& x) const;
  bool contains(const Polyhedron& other) const;  // exact, via other's generators
  bool equals(const Polyhedron& other) const;

  // Indices of canonical inequalities tight at x; throws if x is outside.
  std::vector<std::size_t> active_indices(const RatVec& x) const;

  // A rational point in the relative interior; nonzero whenever the set has a
  // nonzero point (so cone cells can be used as directions). Throws on empty.
  RatVec relint_point() const;

  // -1 / 0 / +1 when the set lies strictly below / within / strictly above the
  // hyperplane; nullopt when it genuinely crosses.
  std::optional<int> side_of_hyperplane(const Ineq& h) const;

  Polyhedron polar() const;  // cones only
  Polyhedron project(const std::vector<std::size_t>& keep) const;
  Polyhedron intersect(const Polyhedron& other) const;
  Polyhedron intersect_halfspace(const Ineq& h) const;
  Polyhedron intersect_hyperplane(const Ineq& h) const;
  Polyhedron minkowski(const Polyhedron& other) const;
  Polyhedron translate(const RatVec& t) const;
  Polyhedron linear_image(const RatMat& m) const;  // m: out_dim x dim
  Polyhedron negate() const;                       // image under x -> -x
  Polyhedron conic_hull() const;
  Polyhedron product(const Polyhedron& other) const;
  // Fiber {y : (x, y) in P} where x fixes the first coordinates.
  Polyhedron slice_prefix(const RatVec& x) const;

  std::string key() const;  // canonical serialization, for deterministic ordering

 private:
  std::size_t dim_ = 0;
  bool empty_ = true;
  std::vector<Ineq> ineqs_;
  Generators gens_;

  void canonicalize_hrep();
  void canonicalize_vrep();
  static Generators gens_from_ineqs(std::size_t dim, const std::vector<Ineq>& ineqs);
  static std::vector<Ineq> ineqs_from_gens(std::size_t dim, const Generators& g);
};

bool lex_less(const RatVec& a, const RatVec& b);

}  // namespace varkit
