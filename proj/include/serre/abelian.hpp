#pragma once

// Generic constructions over a computable abelian category.
//
// An engine `E` supplies objects, morphisms and the primitive decision
// procedures (kernels, cokernels, factorization through monos/epis, Hom and
// Ext^1 carriers).  Everything here is derived from those primitives and works
// the same way for every engine.

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "serre/errors.hpp"
#include "serre/linalg.hpp"

namespace serre {

// Isomorphism invariants of an abelian group or a vector space.
struct GroupInvariants {
  std::optional<Field> field;     // set for vector spaces
  std::vector<Integer> divisors;  // Z-case: invariant factors d1 | d2 | ..., 0 = free summand
  std::size_t dimension = 0;      // field case

  bool is_zero() const { return field ? dimension == 0 : divisors.empty(); }
  bool is_finite() const;
  Integer order() const;  // throws when infinite
  std::string describe() const;

  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

// Invariant factors of the group Z/o_1 + ... + Z/o_k (o_i = 0 meaning Z).
GroupInvariants invariants_of_orders(std::span<const Integer> orders);

template <class E>
concept AbelianEngine = requires(const E& e, const typename E::Object& m, const typename E::Morphism& f) {
  typename E::Scalar;
  { f.source() } -> std::convertible_to<typename E::Object>;
  { f.target() } -> std::convertible_to<typename E::Object>;
  { e.identity(m) } -> std::same_as<typename E::Morphism>;
  { e.zero(m, m) } -> std::same_as<typename E::Morphism>;
  { e.compose(f, f) } -> std::same_as<typename E::Morphism>;
  { e.add(f, f) } -> std::same_as<typename E::Morphism>;
  { e.sub(f, f) } -> std::same_as<typename E::Morphism>;
  { e.eq_mor(f, f) } -> std::same_as<bool>;
  { e.is_zero(m) } -> std::same_as<bool>;
  { e.is_well_defined(f) } -> std::same_as<bool>;
  { e.kernel_emb(f) } -> std::same_as<typename E::Morphism>;
  { e.cokernel_proj(f) } -> std::same_as<typename E::Morphism>;
  { e.lift_along_mono(f, f) } -> std::same_as<std::optional<typename E::Morphism>>;
  { e.colift_along_epi(f, f) } -> std::same_as<std::optional<typename E::Morphism>>;
  { e.ext1(m, m) } -> std::same_as<GroupInvariants>;
};

template <class E>
struct DirectSum {
  typename E::Object object;
  typename E::Morphism inj1, inj2, proj1, proj2;
};

template <class E>
struct ShortExactSequence {
  typename E::Morphism mono;  // A >-> B
  typename E::Morphism epi;   // B ->> C
};

// Hom(M, N) as an abelian group (or vector space) with explicit coordinates.
// Coordinates are taken with respect to `basis`; for Z-engines the i-th
// coordinate lives in Z/orders[i] (0 meaning Z).
template <class E>
struct HomGroup {
  using Morphism = typename E::Morphism;
  using Scalar = typename E::Scalar;

  typename E::Object source, target;
  std::vector<Morphism> basis;
  std::vector<Integer> orders;  // empty for vector spaces
  std::optional<Field> field;
  std::function<std::vector<Scalar>(const Morphism&)> encode;
  std::function<Morphism(std::span<const Scalar>)> decode;

  GroupInvariants carrier() const {
    if (field) return {field, {}, basis.size()};
    return invariants_of_orders(orders);
  }
  bool is_finite() const {
    if (field) return !field->is_rational() || basis.empty();
    for (const auto& o : orders)
      if (o == 0) return false;
    return true;
  }

  // Every element, in lexicographic coordinate order.  Finite carriers only.
  std::vector<std::vector<Scalar>> elements() const {
    if (!is_finite()) throw ContractViolation("cannot enumerate an infinite Hom carrier");
    std::vector<Integer> bound;
    for (std::size_t i = 0; i < basis.size(); ++i) bound.push_back(field ? Integer(field->p) : orders[i]);
    std::vector<std::vector<Scalar>> out;
    std::vector<Integer> c(basis.size(), 0);
    for (;;) {
      std::vector<Scalar> v;
      for (const auto& x : c) v.push_back(Scalar(x));
      out.push_back(std::move(v));
      std::size_t k = 0;
      while (k < c.size()) {
        if (++c[k] < bound[k]) break;
        c[k] = 0;
        ++k;
      }
      if (k == c.size()) break;
    }
    return out;
  }

  // Coordinates are equal as elements of the carrier.
  bool same_element(std::span<const Scalar> a, std::span<const Scalar> b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (field) {
        if (field->reduce(a[i]) != field->reduce(b[i])) return false;
      } else if (orders[i] == 0 ? a[i] != b[i] : Integer(a[i] - b[i]) % orders[i] != 0) {
        return false;
      }
    }
    return true;
  }
};

// Deterministic generator for sample `index` of stream `stream` under `seed`.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------
// Derived operations.

template <AbelianEngine E>
typename E::Morphism image_emb(const E& e, const typename E::Morphism& f) {
  return e.kernel_emb(e.cokernel_proj(f));
}

template <AbelianEngine E>
bool is_mono(const E& e, const typename E::Morphism& f) {
  return e.is_zero(e.kernel_emb(f).source());
}

template <AbelianEngine E>
bool is_epi(const E& e, const typename E::Morphism& f) {
  return e.is_zero(e.cokernel_proj(f).target());
}

template <AbelianEngine E>
bool is_iso(const E& e, const typename E::Morphism& f) {
  return is_mono(e, f) && is_epi(e, f);
}

template <AbelianEngine E>
bool is_zero_morphism(const E& e, const typename E::Morphism& f) {
  return e.eq_mor(f, e.zero(f.source(), f.target()));
}

template <AbelianEngine E>
typename E::Morphism invert(const E& e, const typename E::Morphism& f) {
  if (!is_iso(e, f)) throw ContractViolation("invert: morphism is not an isomorphism");
  auto inv = e.colift_along_epi(e.identity(f.source()), f);
  if (!inv) throw ContractViolation("invert: no two-sided inverse found");
  return *inv;
}

// ker(g) / im(f) for A --f--> B --g--> C with g o f = 0.
template <AbelianEngine E>
typename E::Object homology_at(const E& e, const typename E::Morphism& f, const typename E::Morphism& g) {
  if (!is_zero_morphism(e, e.compose(g, f))) throw ContractViolation("homology_at: composite is nonzero");
  auto k = e.kernel_emb(g);
  auto f_into_kernel = e.lift_along_mono(f, k);
  if (!f_into_kernel) throw ContractViolation("homology_at: image does not lie in the kernel");
  return e.cokernel_proj(*f_into_kernel).target();
}

template <AbelianEngine E>
bool is_short_exact(const E& e, const ShortExactSequence<E>& s) {
  if (!(s.mono.target() == s.epi.source())) return false;
  if (!is_mono(e, s.mono) || !is_epi(e, s.epi)) return false;
  if (!is_zero_morphism(e, e.compose(s.epi, s.mono))) return false;
  return e.lift_along_mono(e.kernel_emb(s.epi), s.mono).has_value();
}

template <AbelianEngine E>
ShortExactSequence<E> ses_from_morphism(const E& e, const typename E::Morphism& f) {
  auto i = image_emb(e, f);
  return {i, e.cokernel_proj(i)};
}

template <AbelianEngine E>
ShortExactSequence<E> random_ses(const E& e, std::mt19937_64& rng, int size_bound) {
  auto m = e.random_object(rng, size_bound);
  auto n = e.random_object(rng, size_bound);
  return ses_from_morphism(e, e.random_morphism(rng, m, n));
}

}  // namespace serre
