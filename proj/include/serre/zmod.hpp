#pragma once

// Finitely presented Z-modules.
//
// One engine class covers two ambient categories:
//   * FiniteAbelian: finite abelian groups with C = finite p-groups.  This is
//     a genuine localizing subcategory; saturate() is its Gabriel monad.
//   * Fixture: all finitely presented Z-modules with the same C.  Here
//     M -> M / H_C(M) is only a candidate: Z is not saturated because
//     Ext^1(Z/p, Z) = Z/p, and no section functor exists.
// Free modules may still appear transiently in the finite engine (e.g. as
// sources of generator maps); the C-related operations reject them there.

#include <json.hpp>

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "serre/abelian.hpp"
#include "serre/linalg.hpp"

namespace serre::zmod {

using json = nlohmann::json;

// Z^gens / rowspan(relations).
class Module {
 public:
  Module() = default;
  Module(std::size_t gens, IntMatrix relations);
  explicit Module(IntMatrix relations) : Module(relations.cols(), std::move(relations)) {}

  static Module free(std::size_t rank) { return Module(rank, IntMatrix(0, rank)); }
  // Z/d_1 + ... + Z/d_k, d = 0 meaning Z.
  static Module cyclic_sum(std::span<const Integer> d);
  static Module cyclic(const Integer& n) { return cyclic_sum(std::span<const Integer>(&n, 1)); }

  std::size_t gens() const { return gens_; }
  const IntMatrix& relations() const { return relations_; }

  // Diagonal relations d_1 | ... | d_r (all > 1), followed by free generators.
  bool is_normal_form() const;

  friend bool operator==(const Module&, const Module&) = default;

 private:
  std::size_t gens_ = 0;
  IntMatrix relations_;
};

class Morphism {
 public:
  Morphism() = default;
  // Checks shapes only; use Engine::is_well_defined for the relation condition.
  Morphism(Module src, Module dst, IntMatrix matrix);

  const Module& source() const { return src_; }
  const Module& target() const { return dst_; }
  const IntMatrix& matrix() const { return matrix_; }

 private:
  Module src_, dst_;
  IntMatrix matrix_;
};

// A module together with its elementary-divisor normal form.
struct Normalized {
  Module form;
  Morphism to;    // M -> form, iso
  Morphism from;  // form -> M, iso
};

enum class Mode { FiniteAbelian, Fixture };

class Engine {
 public:
  using Object = Module;
  using Morphism = zmod::Morphism;
  using Scalar = Integer;

  explicit Engine(unsigned long p, Mode mode = Mode::FiniteAbelian);

  unsigned long prime() const { return p_; }
  Mode mode() const { return mode_; }
  std::string name() const;
  json descriptor() const;

  // ---- category structure
  Morphism identity(const Module& m) const;
  Morphism zero(const Module& m, const Module& n) const;
  Morphism make(const Module& src, const Module& dst, IntMatrix matrix) const;
  Morphism compose(const Morphism& g, const Morphism& f) const;  // g o f
  Morphism add(const Morphism& f, const Morphism& g) const;
  Morphism sub(const Morphism& f, const Morphism& g) const;
  Morphism neg(const Morphism& f) const;
  Morphism scale(const Integer& c, const Morphism& f) const;

  bool is_well_defined(const Morphism& f) const;
  bool eq_mor(const Morphism& f, const Morphism& g) const;
  bool is_zero(const Module& m) const;

  Normalized normalize(const Module& m) const;
  // Invariant factors (1s dropped, 0 = free summand).
  std::vector<Integer> divisors(const Module& m) const;
  GroupInvariants invariants(const Module& m) const;
  bool is_finite(const Module& m) const;
  Integer order(const Module& m) const;

  Morphism kernel_emb(const Morphism& f) const;
  Morphism cokernel_proj(const Morphism& f) const;
  std::optional<Morphism> lift_along_mono(const Morphism& f, const Morphism& mono) const;
  std::optional<Morphism> colift_along_epi(const Morphism& f, const Morphism& epi) const;
  DirectSum<Engine> direct_sum(const Module& m, const Module& n) const;

  HomGroup<Engine> hom_group(const Module& m, const Module& n) const;
  GroupInvariants ext1(const Module& m, const Module& n) const;

  // ---- localizing-subcategory contract (C = finite p-groups)
  bool is_in_C(const Module& m) const;
  Morphism h_C(const Module& m) const;    // H_C(M) >-> M
  Morphism saturate(const Module& m) const;  // eta_M : M -> W(M)
  bool is_saturated(const Module& m) const;
  // Unique psi : W(M) -> T with psi o eta_M = phi, for saturated T.
  Morphism extend_along_unit(const Morphism& phi) const;
  std::vector<Module> c_cogenerators(int bound) const;
  // Multiplication by p is an automorphism of every saturated finite module.
  Integer twist_scalar() const { return Integer(p_); }

  // Every subgroup of a finite module, as monos.
  std::vector<Morphism> enumerate_subobjects(const Module& m) const;

  // ---- sampling
  std::vector<Module> anchor_objects() const;
  Module random_object(std::mt19937_64& rng, int size_bound) const;
  Morphism random_morphism(std::mt19937_64& rng, const Module& m, const Module& n) const;

  // ---- serialization
  json object_to_json(const Module& m) const;
  Module object_from_json(const json& j) const;
  json morphism_to_json(const Morphism& f) const;
  Morphism morphism_from_json(const json& j) const;
  Module parse_object(const json& j) const { return object_from_json(j); }

 private:
  void require_finite(const Module& m, const char* op) const;

  unsigned long p_;
  Mode mode_;
};

// Non-localizing negative control: the full f.p. Z-module category with
// candidate M -> M / H_C(M).
Engine fixture_engine(unsigned long p);

json integer_to_json(const Integer& x);
Integer integer_from_json(const json& j);
json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j, std::size_t cols_if_empty = 0);

}  // namespace serre::zmod
