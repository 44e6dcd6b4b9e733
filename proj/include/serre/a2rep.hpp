#pragma once

// Finite-dimensional representations of the A2 quiver  1 --alpha--> 2  over Q
// or F_p, with C = representations supported at the source vertex 1.
//
// The Gabriel monad is V -> (V2, V2, id) with unit (alpha, id).  Its unit has
// kernel (ker alpha, 0) and cokernel (coker alpha, 0), both in C, so unlike the
// finite-abelian engine the unit is not an epimorphism in general.

#include <json.hpp>

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "serre/abelian.hpp"
#include "serre/linalg.hpp"

namespace serre::a2 {

using json = nlohmann::json;

class Rep {
 public:
  Rep() = default;
  explicit Rep(Field f) : alpha_(f, 0, 0) {}
  // alpha is dim1 x dim2 (row-vector convention: V1 -> V2 is x -> x alpha).
  explicit Rep(FieldMatrix alpha) : alpha_(std::move(alpha)) {}
  Rep(Field f, std::size_t d1, std::size_t d2) : alpha_(f, d1, d2) {}

  Field field() const { return alpha_.field(); }
  std::size_t dim1() const { return alpha_.rows(); }
  std::size_t dim2() const { return alpha_.cols(); }
  const FieldMatrix& alpha() const { return alpha_; }

  friend bool operator==(const Rep&, const Rep&) = default;

 private:
  FieldMatrix alpha_;
};

class Morphism {
 public:
  Morphism() = default;
  // f1 : V1 -> U1 (dim1 x dim1'), f2 : V2 -> U2 (dim2 x dim2').  Shapes checked.
  Morphism(Rep src, Rep dst, FieldMatrix f1, FieldMatrix f2);

  const Rep& source() const { return src_; }
  const Rep& target() const { return dst_; }
  const FieldMatrix& f1() const { return f1_; }
  const FieldMatrix& f2() const { return f2_; }

 private:
  Rep src_, dst_;
  FieldMatrix f1_, f2_;
};

class Engine {
 public:
  using Object = Rep;
  using Morphism = a2::Morphism;
  using Scalar = Rational;

  explicit Engine(Field field = Field::prime(101)) : field_(field) {}

  Field field() const { return field_; }
  std::string name() const { return "a2_rep{" + field_.name() + "}"; }
  json descriptor() const;

  Rep rep(std::size_t d1, std::size_t d2, const Matrix<Rational>& alpha) const;
  Rep zero_object() const { return Rep(field_, 0, 0); }

  Morphism identity(const Rep& v) const;
  Morphism zero(const Rep& v, const Rep& u) const;
  Morphism make(const Rep& src, const Rep& dst, FieldMatrix f1, FieldMatrix f2) const;
  Morphism compose(const Morphism& g, const Morphism& f) const;  // g o f
  Morphism add(const Morphism& f, const Morphism& g) const;
  Morphism sub(const Morphism& f, const Morphism& g) const;
  Morphism neg(const Morphism& f) const;
  Morphism scale(const Rational& c, const Morphism& f) const;

  bool is_well_defined(const Morphism& f) const;
  bool eq_mor(const Morphism& f, const Morphism& g) const;
  bool is_zero(const Rep& v) const { return v.dim1() == 0 && v.dim2() == 0; }

  // Dimension vector plus rank of alpha: a complete isomorphism invariant.
  std::array<std::size_t, 3> invariants(const Rep& v) const;

  Morphism kernel_emb(const Morphism& f) const;
  Morphism cokernel_proj(const Morphism& f) const;
  std::optional<Morphism> lift_along_mono(const Morphism& f, const Morphism& mono) const;
  std::optional<Morphism> colift_along_epi(const Morphism& f, const Morphism& epi) const;
  DirectSum<Engine> direct_sum(const Rep& v, const Rep& u) const;

  HomGroup<Engine> hom_group(const Rep& v, const Rep& u) const;
  GroupInvariants ext1(const Rep& v, const Rep& u) const;

  // ---- localizing-subcategory contract (C = supported at vertex 1)
  bool is_in_C(const Rep& v) const { return v.dim2() == 0; }
  Morphism h_C(const Rep& v) const;
  Morphism saturate(const Rep& v) const;
  bool is_saturated(const Rep& v) const;
  Morphism extend_along_unit(const Morphism& phi) const;
  std::vector<Rep> c_cogenerators(int bound) const;
  // A scalar acting invertibly and nontrivially on nonzero saturated objects (1 in F_2).
  Rational twist_scalar() const { return Rational(field_.p == 2 ? 1 : 2); }

  // ---- sampling
  std::vector<Rep> anchor_objects() const;
  Rep random_object(std::mt19937_64& rng, int size_bound) const;
  Morphism random_morphism(std::mt19937_64& rng, const Rep& v, const Rep& u) const;
  Rational random_scalar(std::mt19937_64& rng) const;

  // ---- serialization
  json object_to_json(const Rep& v) const;
  Rep object_from_json(const json& j) const;
  json morphism_to_json(const Morphism& f) const;
  Morphism morphism_from_json(const json& j) const;

 private:
  void require_field(const Rep& v) const;

  Field field_;
};

json field_matrix_to_json(const FieldMatrix& m);
FieldMatrix field_matrix_from_json(Field f, const json& j, std::size_t rows, std::size_t cols);

}  // namespace serre::a2
