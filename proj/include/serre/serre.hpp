#pragma once

// Serre quotients A/C of a computable abelian category A by a localizing
// subcategory C, realized through the Gabriel monad W = S o Q.
//
// A morphism Q(M) -> Q(N) of the quotient is stored as its canonical
// representative M -> W(N); Hom_{A/C}(M, N) is then Hom_A(M, W(N)) and no
// direct limit is ever formed (except in the independent oracle
// q_hom_via_colimit).  The monad multiplication is mu_M = eta_{W(M)}^{-1}.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "serre/abelian.hpp"
#include "serre/errors.hpp"
#include "serre/report.hpp"

namespace serre {

template <class E>
concept LocalizingEngine = AbelianEngine<E> && requires(const E& e, const typename E::Object& m,
                                                         const typename E::Morphism& f, std::mt19937_64& rng,
                                                         const json& j) {
  { e.is_in_C(m) } -> std::same_as<bool>;
  { e.h_C(m) } -> std::same_as<typename E::Morphism>;
  { e.saturate(m) } -> std::same_as<typename E::Morphism>;
  { e.is_saturated(m) } -> std::same_as<bool>;
  { e.extend_along_unit(f) } -> std::same_as<typename E::Morphism>;
  { e.c_cogenerators(1) } -> std::same_as<std::vector<typename E::Object>>;
  { e.anchor_objects() } -> std::same_as<std::vector<typename E::Object>>;
  { e.random_object(rng, 1) } -> std::same_as<typename E::Object>;
  { e.random_morphism(rng, m, m) } -> std::same_as<typename E::Morphism>;
  { e.hom_group(m, m) } -> std::same_as<HomGroup<E>>;
  { e.twist_scalar() } -> std::same_as<typename E::Scalar>;
  { e.object_to_json(m) } -> std::same_as<json>;
  { e.morphism_to_json(f) } -> std::same_as<json>;
  { e.object_from_json(j) } -> std::same_as<typename E::Object>;
  { e.morphism_from_json(j) } -> std::same_as<typename E::Morphism>;
  { e.descriptor() } -> std::same_as<json>;
};

// ---------------------------------------------------------------------------
// The Gabriel monad.

template <LocalizingEngine E>
typename E::Object w_object(const E& e, const typename E::Object& m) {
  return e.saturate(m).target();
}

// W(phi): the unique psi with psi o eta_M = eta_N o phi.
template <LocalizingEngine E>
typename E::Morphism w_on_morphism(const E& e, const typename E::Morphism& phi) {
  return e.extend_along_unit(e.compose(e.saturate(phi.target()), phi));
}

template <class E>
struct MonadData {
  typename E::Object w;     // W(M)
  typename E::Morphism unit;  // eta_M : M -> W(M)
  typename E::Morphism mult;  // mu_M : W(W(M)) -> W(M)
};

template <LocalizingEngine E>
MonadData<E> monad_at(const E& e, const typename E::Object& m) {
  auto eta = e.saturate(m);
  auto eta_w = e.saturate(eta.target());
  if (!is_iso(e, eta_w)) throw ContractViolation("monad_at: unit at W(M) is not an isomorphism");
  return {eta.target(), eta, invert(e, eta_w)};
}

// ---------------------------------------------------------------------------
// The quotient category.

template <class E>
struct QuotientMorphism {
  typename E::Object source, target;
  typename E::Morphism rep;  // source -> W(target)
};

template <LocalizingEngine E>
QuotientMorphism<E> q_of(const E& e, const typename E::Morphism& phi) {
  return {phi.source(), phi.target(), e.compose(e.saturate(phi.target()), phi)};
}

template <LocalizingEngine E>
QuotientMorphism<E> q_id(const E& e, const typename E::Object& m) {
  return {m, m, e.saturate(m)};
}

template <LocalizingEngine E>
QuotientMorphism<E> q_compose(const E& e, const QuotientMorphism<E>& f, const QuotientMorphism<E>& g) {
  if (!(f.target == g.source)) throw ContractViolation("q_compose: endpoints do not match");
  auto mu = monad_at(e, g.target).mult;
  return {f.source, g.target, e.compose(mu, e.compose(w_on_morphism(e, g.rep), f.rep))};
}

template <LocalizingEngine E>
bool q_equal(const E& e, const QuotientMorphism<E>& f, const QuotientMorphism<E>& g) {
  if (!(f.source == g.source) || !(f.target == g.target)) throw ContractViolation("q_equal: endpoints differ");
  return e.eq_mor(f.rep, g.rep);
}

// Q(phi) = Q(psi)  <=>  im(phi - psi) lies in C.
template <LocalizingEngine E>
bool q_eq(const E& e, const typename E::Morphism& phi, const typename E::Morphism& psi) {
  return e.is_in_C(image_emb(e, e.sub(phi, psi)).source());
}

template <LocalizingEngine E>
bool q_is_zero(const E& e, const typename E::Object& m) {
  return e.is_zero(w_object(e, m));
}

// Q(phi) invertible  <=>  ker and coker of phi lie in C.
template <LocalizingEngine E>
bool q_is_iso(const E& e, const typename E::Morphism& phi) {
  return e.is_in_C(e.kernel_emb(phi).source()) && e.is_in_C(e.cokernel_proj(phi).target());
}

template <LocalizingEngine E>
HomGroup<E> q_hom(const E& e, const typename E::Object& m, const typename E::Object& n) {
  return e.hom_group(m, w_object(e, n));
}

template <LocalizingEngine E>
QuotientMorphism<E> q_decode(const E& e, const HomGroup<E>& h, const typename E::Object& n,
                             std::span<const typename E::Scalar> coords) {
  (void)e;
  return {h.source, n, h.decode(coords)};
}

// The colift H~ of W along Q, on canonical representatives: W(M) -> W(N).
template <LocalizingEngine E>
typename E::Morphism colift_H(const E& e, const QuotientMorphism<E>& f) {
  return e.extend_along_unit(f.rep);
}

template <LocalizingEngine E>
QuotientMorphism<E> q_invert(const E& e, const QuotientMorphism<E>& f) {
  auto h = colift_H(e, f);
  if (!is_iso(e, h)) throw ContractViolation("q_invert: quotient morphism is not invertible");
  return {f.target, f.source, e.compose(invert(e, h), e.saturate(f.target))};
}

// Cokernel of phi computed inside the saturated/C-torsion-free objects:
// the ambient cokernel modulo its maximal subobject in C, then saturated.
template <LocalizingEngine E>
typename E::Object cokernel_in_sat(const E& e, const typename E::Morphism& phi) {
  if (!e.is_zero(e.h_C(phi.source()).source()) || !e.is_zero(e.h_C(phi.target()).source()))
    throw ContractViolation("cokernel_in_sat: endpoints have nonzero subobjects in C");
  return w_object(e, e.cokernel_proj(phi).target());
}

// ---------------------------------------------------------------------------
// Independent oracle: the quotient Hom as a direct limit over subobjects
// M' <= M with M/M' in C, targets taken modulo H_C(N).

template <class E>
struct ColimitHom {
  HomGroup<E> group;               // Hom(M_min, N / H_C(N))
  typename E::Morphism stage;      // M_min >-> M, the terminal stage
  typename E::Morphism target_proj;  // N ->> N / H_C(N)
  std::size_t system_size = 0;     // subobjects taking part in the limit
};

template <LocalizingEngine E>
ColimitHom<E> q_hom_via_colimit(const E& e, const typename E::Object& m, const typename E::Object& n) {
  if constexpr (!requires { e.enumerate_subobjects(m); }) {
    throw ContractViolation("q_hom_via_colimit: engine cannot enumerate subobjects");
  } else {
    std::vector<typename E::Morphism> system;
    for (auto& sub : e.enumerate_subobjects(m))
      if (e.is_in_C(e.cokernel_proj(sub).target())) system.push_back(sub);
    if (system.empty()) throw ContractViolation("q_hom_via_colimit: empty index system");
    // Transition maps are restrictions along inclusions M'' <= M'.  The system
    // is closed under intersection, so it has a least element and the limit
    // stabilizes there.
    const typename E::Morphism* least = nullptr;
    for (const auto& cand : system) {
      bool below_all = true;
      for (const auto& other : system)
        if (!e.lift_along_mono(cand, other)) {
          below_all = false;
          break;
        }
      if (below_all) {
        least = &cand;
        break;
      }
    }
    if (!least) throw ContractViolation("q_hom_via_colimit: index system has no least element");
    auto proj = e.cokernel_proj(e.h_C(n));
    return {e.hom_group(least->source(), proj.target()), *least, proj, system.size()};
  }
}

struct HomComparison {
  GroupInvariants via_adjunction;
  GroupInvariants via_colimit;
  std::size_t elements = 0;
  bool same_invariants = false;
  bool bijective = false;

  bool agree() const { return same_invariants && bijective; }
};

// Restrict each element M -> W(N) of q_hom to the terminal stage and
// identify W(N) with N / H_C(N); checks that this map is a bijection.
template <LocalizingEngine E>
HomComparison compare_quotient_homs(const E& e, const typename E::Object& m, const typename E::Object& n) {
  auto qh = q_hom(e, m, n);
  auto col = q_hom_via_colimit(e, m, n);
  HomComparison out{qh.carrier(), col.group.carrier()};
  out.same_invariants = out.via_adjunction == out.via_colimit;
  if (!qh.is_finite() || !col.group.is_finite()) return out;

  auto eta_n = e.saturate(n);
  auto to_w = e.colift_along_epi(eta_n, col.target_proj);  // N/H_C(N) -> W(N)
  if (!to_w || !is_iso(e, *to_w)) return out;
  auto from_w = invert(e, *to_w);

  std::vector<std::vector<typename E::Scalar>> images;
  bool injective = true;
  for (const auto& c : qh.elements()) {
    auto g = qh.decode(c);
    auto restricted = e.compose(from_w, e.compose(g, col.stage));
    auto code = col.group.encode(restricted);
    for (const auto& prev : images)
      if (col.group.same_element(prev, code)) injective = false;
    images.push_back(std::move(code));
  }
  out.elements = images.size();
  out.bijective = injective && out.via_colimit.is_finite() && Integer(images.size()) == out.via_colimit.order();
  return out;
}

// ---------------------------------------------------------------------------
// Candidates (W~, eta~) for the saturating-monad axioms.

template <class E>
struct Candidate {
  using Object = typename E::Object;
  using Morphism = typename E::Morphism;

  std::string name;
  std::function<Morphism(const Object&)> unit;  // eta~_M : M -> W~(M)
  // phi : M -> T with T a W~-fixed target  |->  psi : W~(M) -> T, psi o eta~_M = phi.
  std::function<Morphism(const Morphism&)> extend;

  Object apply(const Object& m) const { return unit(m).target(); }
  Morphism on_morphism(const E& e, const Morphism& phi) const {
    return extend(e.compose(unit(phi.target()), phi));
  }
};

template <LocalizingEngine E>
Candidate<E> gabriel_candidate(const E& e) {
  return {"gabriel", [e](const auto& m) { return e.saturate(m); },
          [e](const auto& phi) { return e.extend_along_unit(phi); }};
}

// Unit = the engine's saturation map, extended by factoring through it as an
// epimorphism.  For the non-localizing fixture this is the naive M / H_C(M).
// Where the unit is not epi (A2) extensions do not exist and checks fail.
template <LocalizingEngine E>
Candidate<E> quotient_candidate(const E& e) {
  return {"quotient", [e](const auto& m) { return e.saturate(m); },
          [e](const auto& phi) {
            auto r = e.colift_along_epi(phi, e.saturate(phi.source()));
            if (!r) throw ContractViolation("quotient candidate: morphism does not factor through the unit");
            return *r;
          }};
}

template <LocalizingEngine E>
Candidate<E> identity_candidate(const E& e) {
  return {"identity", [e](const auto& m) { return e.identity(m); }, [](const auto& phi) { return phi; }};
}

// The Gabriel monad with its unit post-composed with c * id, c = e.twist_scalar()
// (an automorphism of every saturated object).
template <LocalizingEngine E>
Candidate<E> twisted_candidate(const E& e) {
  const auto c = e.twist_scalar();
  return {"twisted",
          [e, c](const auto& m) {
            auto eta = e.saturate(m);
            return e.compose(e.scale(c, e.identity(eta.target())), eta);
          },
          [e, c](const auto& phi) {
            auto w = e.saturate(phi.source()).target();
            auto untwist = invert(e, e.scale(c, e.identity(w)));
            return e.compose(e.extend_along_unit(phi), untwist);
          }};
}

template <LocalizingEngine E>
Candidate<E> make_candidate(const E& e, const std::string& name) {
  if (name == "gabriel") return gabriel_candidate(e);
  if (name == "quotient") return quotient_candidate(e);
  if (name == "identity") return identity_candidate(e);
  if (name == "twisted") return twisted_candidate(e);
  throw InputError("unknown candidate '" + name + "' (expected gabriel, quotient, identity or twisted)");
}

// H~ for a candidate on a canonical representative f : M -> W(N):
// H~(f) = W~(eta_N)^{-1} o W~(f).
template <LocalizingEngine E>
typename E::Morphism candidate_colift(const E& e, const Candidate<E>& c, const QuotientMorphism<E>& f) {
  auto w_eta = c.on_morphism(e, e.saturate(f.target));
  return e.compose(invert(e, w_eta), c.on_morphism(e, f.rep));
}

// ---------------------------------------------------------------------------
// Checkers.
//
// Each law is a function of one sample (object, morphism, or short exact
// sequence) returning nullopt on success or a JSON detail on failure.  Suites
// run a law over seeded samples; replay runs it on one deserialized sample.

enum class SampleKind { Object, Morphism, Ses, CObject, SaturatedObject };

inline const char* kind_name(SampleKind k) {
  switch (k) {
    case SampleKind::Object:
      return "object";
    case SampleKind::Morphism:
      return "morphism";
    case SampleKind::Ses:
      return "ses";
    case SampleKind::CObject:
      return "c_object";
    case SampleKind::SaturatedObject:
      return "saturated_object";
  }
  return "?";
}

template <class E>
using Sample = std::variant<typename E::Object, typename E::Morphism, ShortExactSequence<E>>;

template <class E>
using Law = std::function<std::optional<json>(const E&, const Candidate<E>&, const Sample<E>&)>;

template <class E>
struct LawSpec {
  std::string suite;
  std::string axiom;
  SampleKind kind;
  Law<E> check;
};

template <LocalizingEngine E>
json sample_to_json(const E& e, const Sample<E>& s) {
  if (auto* m = std::get_if<typename E::Object>(&s)) return e.object_to_json(*m);
  if (auto* f = std::get_if<typename E::Morphism>(&s)) return e.morphism_to_json(*f);
  const auto& q = std::get<ShortExactSequence<E>>(s);
  return {{"mono", e.morphism_to_json(q.mono)}, {"epi", e.morphism_to_json(q.epi)}};
}

template <LocalizingEngine E>
Sample<E> sample_from_json(const E& e, SampleKind kind, const json& j) {
  switch (kind) {
    case SampleKind::Object:
    case SampleKind::CObject:
    case SampleKind::SaturatedObject:
      return e.object_from_json(j);
    case SampleKind::Morphism:
      return e.morphism_from_json(j);
    case SampleKind::Ses:
      return ShortExactSequence<E>{e.morphism_from_json(j.at("mono")), e.morphism_from_json(j.at("epi"))};
  }
  throw InputError("unknown sample kind");
}

namespace detail {

template <class E>
const typename E::Object& obj(const Sample<E>& s) {
  return std::get<typename E::Object>(s);
}
template <class E>
const typename E::Morphism& mor(const Sample<E>& s) {
  return std::get<typename E::Morphism>(s);
}

inline std::optional<json> fail(const std::string& reason, json extra = json::object()) {
  extra["reason"] = reason;
  return extra;
}

// mu~_M = (eta~_{W~M})^{-1}
template <LocalizingEngine E>
typename E::Morphism candidate_mult(const E& e, const Candidate<E>& c, const typename E::Object& m) {
  return invert(e, c.unit(c.apply(m)));
}

// Homology of 0 -> A -f-> B -g-> C -> 0 at A, B, C.
template <LocalizingEngine E>
std::vector<typename E::Object> ses_homology(const E& e, const typename E::Morphism& f, const typename E::Morphism& g) {
  return {e.kernel_emb(f).source(), homology_at(e, f, g), e.cokernel_proj(g).target()};
}

}  // namespace detail

template <LocalizingEngine E>
std::vector<LawSpec<E>> law_table() {
  using detail::fail;
  using detail::mor;
  using detail::obj;
  using Obj = typename E::Object;
  std::vector<LawSpec<E>> t;

  // ---- monad coherence: mu o W mu = mu o mu W, mu o W eta = mu o eta W = id
  t.push_back({"monad-laws", "monad.associativity", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 auto mu = detail::candidate_mult(e, c, m);
                 auto mu_w = detail::candidate_mult(e, c, c.apply(m));
                 auto w_mu = c.on_morphism(e, mu);
                 if (!e.eq_mor(e.compose(mu, w_mu), e.compose(mu, mu_w)))
                   return fail("mu o W(mu) != mu o mu_W");
                 return std::nullopt;
               }});
  t.push_back({"monad-laws", "monad.left_unit", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 auto mu = detail::candidate_mult(e, c, m);
                 auto w_eta = c.on_morphism(e, c.unit(m));
                 if (!e.eq_mor(e.compose(mu, w_eta), e.identity(c.apply(m)))) return fail("mu o W(eta) != id");
                 return std::nullopt;
               }});
  t.push_back({"monad-laws", "monad.right_unit", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 auto mu = detail::candidate_mult(e, c, m);
                 auto eta_w = c.unit(c.apply(m));
                 if (!e.eq_mor(e.compose(mu, eta_w), e.identity(c.apply(m)))) return fail("mu o eta_W != id");
                 return std::nullopt;
               }});

  // ---- idempotence
  t.push_back({"idempotent", "idempotent.mu_iso", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 if (!is_iso(e, c.unit(c.apply(obj<E>(s))))) return fail("eta at W(M) is not invertible");
                 return std::nullopt;
               }});
  t.push_back({"idempotent", "idempotent.unit_commutes", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 if (!e.eq_mor(c.on_morphism(e, c.unit(m)), c.unit(c.apply(m)))) return fail("W(eta_M) != eta_{W(M)}");
                 return std::nullopt;
               }});

  // ---- zig-zag identities for Q -| H~ with delta~ Q := (Q eta~)^{-1}
  t.push_back({"zigzag", "zigzag.unit_q_invertible", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 if (!q_is_iso(e, c.unit(obj<E>(s)))) return fail("kernel or cokernel of the unit is not in C");
                 return std::nullopt;
               }});
  t.push_back({"zigzag", "zigzag.first", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 auto q_eta = q_of(e, c.unit(m));
                 auto delta = q_invert(e, q_eta);
                 if (!q_equal(e, q_compose(e, q_eta, delta), q_id(e, m))) return fail("(delta Q) o (Q eta) != id_Q");
                 return std::nullopt;
               }});
  t.push_back({"zigzag", "zigzag.second", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 auto delta = q_invert(e, q_of(e, c.unit(m)));
                 auto h_delta = candidate_colift(e, c, delta);
                 auto eta_h = c.unit(c.apply(m));
                 if (!e.eq_mor(e.compose(h_delta, eta_h), e.identity(c.apply(m))))
                   return fail("(H delta) o (eta H) != id_H");
                 return std::nullopt;
               }});

  // ---- the saturating axioms
  t.push_back({"saturating", "saturating(1)", SampleKind::CObject,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 auto w = c.apply(obj<E>(s));
                 if (!e.is_zero(w)) return fail("object of C is not sent to zero", {{"image", e.object_to_json(w)}});
                 return std::nullopt;
               }});
  t.push_back({"saturating", "saturating(2)", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 auto w = c.apply(obj<E>(s));
                 const bool structural = e.is_saturated(w);
                 // Cross-check against Hom/Ext^1 vanishing on a finite family in C.
                 for (const auto& t : e.c_cogenerators(3)) {
                   auto hom = e.hom_group(t, w).carrier();
                   auto ext = e.ext1(t, w);
                   if (!hom.is_zero() || !ext.is_zero())
                     return fail(structural ? "structural test disagrees with Hom/Ext vanishing"
                                            : "image is not saturated",
                                 {{"image", e.object_to_json(w)},
                                  {"cogenerator", e.object_to_json(t)},
                                  {"hom", hom.describe()},
                                  {"ext1", ext.describe()},
                                  {"structural_saturated", structural}});
                 }
                 if (!structural) return fail("image is not saturated", {{"image", e.object_to_json(w)}});
                 return std::nullopt;
               }});
  t.push_back({"saturating", "saturating(3)", SampleKind::Ses,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const auto& q = std::get<ShortExactSequence<E>>(s);
                 auto wf = c.on_morphism(e, q.mono);
                 auto wg = c.on_morphism(e, q.epi);
                 if (!is_zero_morphism(e, e.compose(wg, wf))) return fail("W(epi) o W(mono) != 0");
                 auto h = detail::ses_homology(e, wf, wg);
                 static const char* pos[] = {"left", "middle", "right"};
                 for (std::size_t i = 0; i < 3; ++i)
                   if (!e.is_in_C(h[i]))
                     return fail("homology outside C", {{"position", pos[i]}, {"homology", e.object_to_json(h[i])}});
                 return std::nullopt;
               }});
  t.push_back({"saturating", "saturating(4)", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 if (!e.eq_mor(c.unit(c.apply(m)), c.on_morphism(e, c.unit(m)))) return fail("eta W != W eta");
                 return std::nullopt;
               }});
  t.push_back({"saturating", "saturating(5)", SampleKind::SaturatedObject,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 if (!is_iso(e, c.unit(obj<E>(s)))) return fail("unit at a saturated object is not invertible");
                 return std::nullopt;
               }});
  t.push_back({"saturating", "saturating.unit_natural", SampleKind::Morphism,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const auto& f = mor<E>(s);
                 auto lhs = e.compose(c.on_morphism(e, f), c.unit(f.source()));
                 auto rhs = e.compose(c.unit(f.target()), f);
                 if (!e.eq_mor(lhs, rhs)) return fail("W(phi) o eta_M != eta_N o phi");
                 return std::nullopt;
               }});

  // ---- comparison with the Gabriel monad: kappa_M : W~(M) -> W(M)
  t.push_back({"gabriel-equiv", "equivalence.comparison_iso", SampleKind::Object,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 auto lambda = e.extend_along_unit(c.unit(m));  // W(M) -> W~(M)
                 if (!is_iso(e, lambda)) return fail("comparison map is not an isomorphism");
                 auto kappa = invert(e, lambda);
                 if (!e.eq_mor(e.compose(kappa, c.unit(m)), e.saturate(m))) return fail("kappa o eta~ != eta");
                 return std::nullopt;
               }});
  t.push_back({"gabriel-equiv", "equivalence.naturality", SampleKind::Morphism,
               [](const E& e, const Candidate<E>& c, const Sample<E>& s) -> std::optional<json> {
                 const auto& f = mor<E>(s);
                 auto kappa_m = invert(e, e.extend_along_unit(c.unit(f.source())));
                 auto kappa_n = invert(e, e.extend_along_unit(c.unit(f.target())));
                 auto lhs = e.compose(kappa_n, c.on_morphism(e, f));
                 auto rhs = e.compose(w_on_morphism(e, f), kappa_m);
                 if (!e.eq_mor(lhs, rhs)) return fail("kappa_N o W~(phi) != W(phi) o kappa_M");
                 return std::nullopt;
               }});

  // ---- ker Q = C
  t.push_back({"ker-q", "kerQ", SampleKind::Object,
               [](const E& e, const Candidate<E>&, const Sample<E>& s) -> std::optional<json> {
                 const Obj& m = obj<E>(s);
                 const bool qz = q_is_zero(e, m), inc = e.is_in_C(m);
                 if (qz != inc) return fail("Q(M) = 0 disagrees with membership in C", {{"q_zero", qz}, {"in_C", inc}});
                 return std::nullopt;
               }});

  // ---- exactness bookkeeping for the Gabriel monad itself
  t.push_back({"exactness", "exactness.q_exact", SampleKind::Ses,
               [](const E& e, const Candidate<E>&, const Sample<E>& s) -> std::optional<json> {
                 const auto& q = std::get<ShortExactSequence<E>>(s);
                 auto h = detail::ses_homology(e, w_on_morphism(e, q.mono), w_on_morphism(e, q.epi));
                 for (const auto& x : h)
                   if (!e.is_in_C(x)) return fail("homology after W is not in C", {{"homology", e.object_to_json(x)}});
                 return std::nullopt;
               }});
  t.push_back({"exactness", "exactness.w_left_exact", SampleKind::Ses,
               [](const E& e, const Candidate<E>&, const Sample<E>& s) -> std::optional<json> {
                 const auto& q = std::get<ShortExactSequence<E>>(s);
                 auto h = detail::ses_homology(e, w_on_morphism(e, q.mono), w_on_morphism(e, q.epi));
                 if (!e.is_zero(h[0]) || !e.is_zero(h[1]))
                   return fail("W is not left exact here",
                               {{"left", e.object_to_json(h[0])}, {"middle", e.object_to_json(h[1])}});
                 return std::nullopt;
               }});
  return t;
}

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s{"monad-laws", "idempotent", "zigzag", "saturating", "gabriel-equiv", "ker-q"};
  return s;
}

// Seeded samples shared by every law of a run.
template <class E>
struct SampleSet {
  std::vector<typename E::Object> objects;
  std::vector<typename E::Object> c_objects;
  std::vector<typename E::Object> saturated;
  std::vector<typename E::Morphism> morphisms;
  std::vector<ShortExactSequence<E>> ses;

  std::size_t size(SampleKind k) const {
    switch (k) {
      case SampleKind::Object:
        return objects.size();
      case SampleKind::CObject:
        return c_objects.size();
      case SampleKind::SaturatedObject:
        return saturated.size();
      case SampleKind::Morphism:
        return morphisms.size();
      case SampleKind::Ses:
        return ses.size();
    }
    return 0;
  }
  Sample<E> at(SampleKind k, std::size_t i) const {
    switch (k) {
      case SampleKind::Object:
        return objects[i];
      case SampleKind::CObject:
        return c_objects[i];
      case SampleKind::SaturatedObject:
        return saturated[i];
      case SampleKind::Morphism:
        return morphisms[i];
      case SampleKind::Ses:
        return ses[i];
    }
    throw std::logic_error("bad sample kind");
  }
};

inline constexpr int kSampleSizeBound = 3;

// Objects: extra inputs, the engine's anchors, then n random objects.
// Morphisms: n random.  SES: n/2 random plus the two halves of the
// kernel/image/cokernel factorization of every sampled morphism.
template <LocalizingEngine E>
SampleSet<E> draw_samples(const E& e, std::uint64_t seed, std::size_t n,
                          const std::vector<typename E::Object>& extra = {}) {
  SampleSet<E> s;
  s.objects = extra;
  for (const auto& a : e.anchor_objects()) s.objects.push_back(a);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = sample_rng(seed, 1, i);
    s.objects.push_back(e.random_object(rng, kSampleSizeBound));
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = sample_rng(seed, 2, i);
    auto a = e.random_object(rng, kSampleSizeBound);
    auto b = e.random_object(rng, kSampleSizeBound);
    s.morphisms.push_back(e.random_morphism(rng, a, b));
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(n / 2, 1); ++i) {
    auto rng = sample_rng(seed, 3, i);
    s.ses.push_back(random_ses(e, rng, kSampleSizeBound));
  }
  for (const auto& f : s.morphisms) {
    auto k = e.kernel_emb(f);
    s.ses.push_back({k, e.cokernel_proj(k)});
    auto i = image_emb(e, f);
    s.ses.push_back({i, e.cokernel_proj(i)});
  }
  for (const auto& t : e.c_cogenerators(3)) s.c_objects.push_back(t);
  for (const auto& m : s.objects) {
    s.c_objects.push_back(e.h_C(m).source());
    if (e.is_saturated(m)) s.saturated.push_back(m);
    auto w = w_object(e, m);
    if (e.is_saturated(w)) s.saturated.push_back(w);
  }
  return s;
}

template <LocalizingEngine E>
CheckOutcome run_law(const E& e, const Candidate<E>& c, const LawSpec<E>& law, const SampleSet<E>& samples,
                     std::uint64_t seed) {
  CheckOutcome out{law.suite, law.axiom};
  const std::size_t count = samples.size(law.kind);
  for (std::size_t i = 0; i < count; ++i) {
    Sample<E> s = samples.at(law.kind, i);
    std::optional<json> detail;
    try {
      detail = law.check(e, c, s);
    } catch (const ContractViolation& ex) {
      detail = json{{"reason", std::string("contract violation: ") + ex.what()}};
    }
    ++out.samples;
    if (!detail) continue;
    if (out.failures++ == 0)
      out.witness = json{{"suite", law.suite},
                         {"axiom", law.axiom},
                         {"engine", e.descriptor()},
                         {"candidate", c.name},
                         {"seed", seed},
                         {"index", i},
                         {"kind", kind_name(law.kind)},
                         {"sample", sample_to_json(e, s)},
                         {"detail", *detail},
                         {"version", kVersion}};
  }
  return out;
}

template <LocalizingEngine E>
AxiomReport run_suite(const E& e, const Candidate<E>& c, const std::string& suite, std::uint64_t seed, std::size_t n,
                      const SampleSet<E>& samples) {
  AxiomReport r{suite, e.descriptor(), c.name, seed, n, {}};
  bool known = false;
  for (const auto& law : law_table<E>()) {
    if (law.suite != suite) continue;
    known = true;
    r.checks.push_back(run_law(e, c, law, samples, seed));
  }
  if (!known) throw InputError("unknown suite '" + suite + "'");
  return r;
}

template <LocalizingEngine E>
AxiomReport check_suite(const E& e, const Candidate<E>& c, const std::string& suite, std::uint64_t seed, std::size_t n,
                        const std::vector<typename E::Object>& extra = {}) {
  return run_suite(e, c, suite, seed, n, draw_samples(e, seed, n, extra));
}

template <LocalizingEngine E>
AxiomReport check_monad_laws(const E& e, std::uint64_t seed, std::size_t n, const Candidate<E>* c = nullptr) {
  return check_suite(e, c ? *c : gabriel_candidate(e), "monad-laws", seed, n);
}

template <LocalizingEngine E>
AxiomReport check_idempotent(const E& e, std::uint64_t seed, std::size_t n, const Candidate<E>* c = nullptr) {
  return check_suite(e, c ? *c : gabriel_candidate(e), "idempotent", seed, n);
}

template <LocalizingEngine E>
AxiomReport check_zigzag(const E& e, std::uint64_t seed, std::size_t n, const Candidate<E>* c = nullptr) {
  return check_suite(e, c ? *c : gabriel_candidate(e), "zigzag", seed, n);
}

template <LocalizingEngine E>
AxiomReport check_saturating_axioms(const E& e, const Candidate<E>& c, std::uint64_t seed, std::size_t n) {
  return check_suite(e, c, "saturating", seed, n);
}

template <LocalizingEngine E>
AxiomReport check_ker_Q_equals_C(const E& e, std::uint64_t seed, std::size_t n) {
  return check_suite(e, gabriel_candidate(e), "ker-q", seed, n);
}

// Natural isomorphism with the Gabriel monad.  Requires the candidate to pass
// the saturating axioms on the same samples; otherwise the run is rejected.
template <LocalizingEngine E>
AxiomReport check_gabriel_equivalence(const E& e, const Candidate<E>& c, std::uint64_t seed, std::size_t n,
                                      const SampleSet<E>* pre_drawn = nullptr) {
  SampleSet<E> own;
  if (!pre_drawn) own = draw_samples(e, seed, n);
  const SampleSet<E>& samples = pre_drawn ? *pre_drawn : own;

  AxiomReport pre = run_suite(e, c, "saturating", seed, n, samples);
  if (!pre.pass()) {
    AxiomReport r{"gabriel-equiv", e.descriptor(), c.name, seed, n, {}};
    CheckOutcome rejected{"gabriel-equiv", "equivalence.precondition", 1, 1};
    rejected.witness = pre.first_failure()->witness;
    rejected.notes = {{"reason", "candidate fails the saturating axioms"}};
    r.checks.push_back(rejected);
    return r;
  }
  AxiomReport r = run_suite(e, c, "gabriel-equiv", seed, n, samples);
  std::size_t nontrivial = 0;
  for (const auto& m : samples.objects) {
    auto lambda = e.extend_along_unit(c.unit(m));
    if (lambda.source() == lambda.target() && !e.eq_mor(lambda, e.identity(lambda.source()))) ++nontrivial;
  }
  for (auto& ch : r.checks)
    if (ch.axiom == "equivalence.comparison_iso") ch.notes["nontrivial_components"] = nontrivial;
  return r;
}

// Re-run one law on the sample stored in a witness.  Returns the failure
// detail (nullopt = the law now passes).
template <LocalizingEngine E>
std::optional<json> replay_witness(const E& e, const json& witness) {
  const std::string axiom = witness.at("axiom").get<std::string>();
  const std::string cand = witness.at("candidate").get<std::string>();
  for (const auto& law : law_table<E>()) {
    if (law.axiom != axiom) continue;
    Sample<E> s = sample_from_json(e, law.kind, witness.at("sample"));
    Candidate<E> c = make_candidate(e, cand);
    try {
      return law.check(e, c, s);
    } catch (const ContractViolation& ex) {
      return json{{"reason", std::string("contract violation: ") + ex.what()}};
    }
  }
  throw InputError("witness names unknown axiom '" + axiom + "'");
}

}  // namespace serre
