#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "serre/zmod.hpp"

using namespace serre;
using zmod::Engine;
using zmod::Mode;
using zmod::Module;
using zmod::json;

namespace {

Module Zn(long n) { return Module::cyclic(Integer(n)); }
const Module Z = Module::free(1);

zmod::Morphism map1(const Engine& e, const Module& a, const Module& b, long k) {
  return e.make(a, b, IntMatrix{{k}});
}

std::vector<Integer> divs(std::initializer_list<long> d) {
  std::vector<Integer> out;
  for (long x : d) out.push_back(x);
  return out;
}


}  // namespace

TEST_CASE("well-definedness of maps between cyclic groups") {
  Engine e(2);
  CHECK_FALSE(e.is_well_defined(zmod::Morphism(Zn(2), Zn(4), IntMatrix{{1}})));
  CHECK(e.is_well_defined(zmod::Morphism(Zn(2), Zn(4), IntMatrix{{2}})));
  CHECK(e.is_well_defined(e.identity(Module::cyclic_sum(divs({2, 6, 0})))));
  CHECK_THROWS_AS(e.make(Zn(2), Zn(4), IntMatrix{{1}}), ContractViolation);
}

TEST_CASE("morphism equality modulo target relations") {
  Engine e(2, Mode::Fixture);
  CHECK(e.eq_mor(map1(e, Z, Zn(2), 1), map1(e, Z, Zn(2), 3)));
  CHECK_FALSE(e.eq_mor(map1(e, Z, Z, 1), map1(e, Z, Z, 2)));
  auto f = map1(e, Zn(12), Zn(6), 5);
  CHECK(e.eq_mor(f, e.add(f, e.zero(Zn(12), Zn(6)))));
}

TEST_CASE("kernel and cokernel") {
  Engine e(2, Mode::Fixture);
  auto twice = map1(e, Z, Z, 2);
  CHECK(e.is_zero(e.kernel_emb(twice).source()));
  CHECK(e.divisors(e.cokernel_proj(twice).target()) == divs({2}));

  auto proj = map1(e, Z, Zn(2), 1);
  auto k = e.kernel_emb(proj);
  CHECK(e.divisors(k.source()) == divs({0}));
  CHECK(e.eq_mor(e.compose(proj, k), e.zero(k.source(), Zn(2))));
  // The kernel is 2Z: its generator maps to +-2.
  CHECK(abs(k.matrix()(0, 0)) == 2);
}

TEST_CASE("kernel/cokernel universal properties on random maps") {
  Engine e(3);
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = sample_rng(42, 0, i);
    auto a = e.random_object(rng, 3), b = e.random_object(rng, 3);
    auto f = e.random_morphism(rng, a, b);
    auto k = e.kernel_emb(f);
    auto c = e.cokernel_proj(f);
    REQUIRE(is_mono(e, k));
    REQUIRE(is_epi(e, c));
    REQUIRE(is_zero_morphism(e, e.compose(f, k)));
    REQUIRE(is_zero_morphism(e, e.compose(c, f)));
    // |A| = |ker f| * |im f| and |B| = |im f| * |coker f|.
    auto im = image_emb(e, f).source();
    CHECK(e.order(a) == e.order(k.source()) * e.order(im));
    CHECK(e.order(b) == e.order(im) * e.order(c.target()));
  }
}

TEST_CASE("lift along a mono and colift along an epi") {
  Engine e(2, Mode::Fixture);
  auto four = map1(e, Z, Z, 4), two = map1(e, Z, Z, 2), one = map1(e, Z, Z, 1);
  auto l = e.lift_along_mono(four, two);
  REQUIRE(l);
  CHECK(e.eq_mor(*l, two));
  CHECK_FALSE(e.lift_along_mono(one, two));

  auto to6 = map1(e, Z, Zn(6), 1);
  auto to12 = map1(e, Z, Zn(12), 1);
  auto c = e.colift_along_epi(to6, to12);
  REQUIRE(c);
  CHECK(e.eq_mor(e.compose(*c, to12), to6));
  CHECK(e.eq_mor(*c, map1(e, Zn(12), Zn(6), 1)));
  // Z/6 -> Z/12 has no colift of Z -> Z/12 (x -> x).
  CHECK_FALSE(e.colift_along_epi(to12, to6));
}

TEST_CASE("direct sums and normal forms") {
  Engine e(5);
  auto s = e.direct_sum(Zn(2), Zn(3));
  CHECK(e.divisors(s.object) == divs({6}));
  CHECK(e.eq_mor(e.add(e.compose(s.inj1, s.proj1), e.compose(s.inj2, s.proj2)), e.identity(s.object)));
  CHECK(e.eq_mor(e.compose(s.proj1, s.inj1), e.identity(Zn(2))));
  CHECK(is_zero_morphism(e, e.compose(s.proj2, s.inj1)));

  auto m = Module::cyclic_sum(divs({4, 6}));
  auto z = e.direct_sum(m, Module());
  CHECK(e.divisors(z.object) == e.divisors(m));

  // A scrambled presentation of Z/2 + Z/6 + Z.
  Module scrambled(3, IntMatrix{{2, 4, 0}, {0, 6, 0}});
  auto nf = e.normalize(scrambled);
  CHECK(oracle::invariant_factors_by_minors(IntMatrix{{2, 4}, {0, 6}}) == divs({2, 6}));
  CHECK(e.divisors(scrambled) == divs({2, 6, 0}));
  CHECK(e.eq_mor(e.compose(nf.from, nf.to), e.identity(scrambled)));
  CHECK(e.eq_mor(e.compose(nf.to, nf.from), e.identity(nf.form)));
}

TEST_CASE("mono, epi, iso") {
  Engine e(2, Mode::Fixture);
  auto twice = map1(e, Z, Z, 2);
  CHECK(is_mono(e, twice));
  CHECK_FALSE(is_epi(e, twice));
  CHECK_FALSE(is_iso(e, twice));
  auto id = e.identity(Zn(6));
  CHECK(is_iso(e, id));
  CHECK(e.eq_mor(invert(e, id), id));
  auto proj = map1(e, Zn(4), Zn(2), 1);
  CHECK(is_epi(e, proj));
  CHECK_FALSE(is_mono(e, proj));
  // x5 on Z/12 is an automorphism (5 * 5 = 25 = 1).
  auto five = map1(e, Zn(12), Zn(12), 5);
  CHECK(e.eq_mor(invert(e, five), five));
}

TEST_CASE("Hom(Z/4, Z/6) is Z/2, matching brute force") {
  Engine e(2);
  auto h = e.hom_group(Zn(4), Zn(6));
  CHECK(h.carrier().divisors == divs({2}));
  auto brute = oracle::homs_cyclic(4, 6);
  CHECK(brute == std::vector<long>{0, 3});
  // Every enumerated element decodes to one of the brute-force maps, bijectively.
  std::set<long> seen;
  for (const auto& c : h.elements()) {
    auto f = h.decode(c);
    REQUIRE(e.is_well_defined(f));
    Integer k = f.matrix()(0, 0) % 6;
    if (k < 0) k += 6;
    seen.insert(k.get_si());
  }
  CHECK(seen == std::set<long>(brute.begin(), brute.end()));
}

TEST_CASE("Hom groups between cyclic groups: random against gcd") {
  Engine e(2);
  for (long a = 1; a <= 24; a += 1)
    for (long b : {1L, 2L, 6L, 9L, 10L, 12L}) {
      auto h = e.hom_group(Zn(a), Zn(b));
      const long g = oracle::gcd(a, b);
      CHECK(h.carrier().is_finite());
      CHECK(h.carrier().order() == g);
      CHECK(oracle::homs_cyclic(a, b).size() == static_cast<std::size_t>(g));
    }
}

TEST_CASE("Hom(Z, M) is M") {
  Engine e(2, Mode::Fixture);
  auto m = Module::cyclic_sum(divs({2, 4, 0}));
  CHECK(e.hom_group(Z, m).carrier() == e.invariants(m));
}

TEST_CASE("hom encode/decode round trip") {
  Engine e(3);
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = sample_rng(9, 0, i);
    auto a = e.random_object(rng, 3), b = e.random_object(rng, 3);
    auto f = e.random_morphism(rng, a, b);
    auto h = e.hom_group(a, b);
    auto c = h.encode(f);
    CHECK(e.eq_mor(h.decode(c), f));
  }
}

TEST_CASE("Ext^1") {
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    Engine e(p, Mode::Fixture);
    CHECK(e.ext1(Zn(p), Z).divisors == divs({static_cast<long>(p)}));
    CHECK(e.ext1(Z, Zn(6)).is_zero());
    CHECK(e.ext1(Z, Z).is_zero());
  }
  Engine e(2);
  // Ext^1(Z/a, Z/b) = Z/gcd(a, b).
  for (long a : {2L, 4L, 6L, 12L})
    for (long b : {2L, 3L, 8L, 9L}) CHECK(e.ext1(Zn(a), Zn(b)).order() == oracle::gcd(a, b));
}

TEST_CASE("homology") {
  Engine e(2, Mode::Fixture);
  auto four = map1(e, Z, Z, 4);
  auto proj = map1(e, Z, Zn(2), 1);
  CHECK(e.divisors(homology_at(e, four, proj)) == divs({2}));
  CHECK(e.divisors(homology_at(e, e.zero(Zn(2), Zn(2)), e.zero(Zn(2), Zn(2)))) == divs({2}));
  auto i = map1(e, Zn(2), Zn(4), 2), q = map1(e, Zn(4), Zn(2), 1);
  CHECK(e.is_zero(homology_at(e, i, q)));
  CHECK_THROWS_AS(homology_at(e, e.identity(Z), e.identity(Z)), ContractViolation);
}

TEST_CASE("membership in C") {
  Engine e(2);
  CHECK(e.is_in_C(Zn(8)));
  CHECK_FALSE(e.is_in_C(Zn(12)));
  CHECK(e.is_in_C(Module()));
  CHECK_THROWS_AS(e.is_in_C(Z), ContractViolation);
  Engine fx(2, Mode::Fixture);
  CHECK_FALSE(fx.is_in_C(Z));
}

TEST_CASE("H_C(Z/12) is Z/4 embedded by x3, matching the subgroup lattice") {
  Engine e(2);
  auto h = e.h_C(Zn(12));
  CHECK(e.divisors(h.source()) == divs({4}));
  CHECK(is_mono(e, h));
  // The image is {0, 3, 6, 9}.
  Integer g = h.matrix()(0, 0) % 12;
  if (g < 0) g += 12;
  CHECK((g == 3 || g == 9));
  // Oracle: the largest subgroup of Z/12 whose order is a power of 2.
  std::size_t best = 0;
  for (const auto& s : oracle::subgroups({12})) {
    const std::size_t n = s.size();
    if ((n & (n - 1)) == 0) best = std::max(best, n);
  }
  CHECK(best == 4);

  CHECK(e.is_zero(e.h_C(Zn(9)).source()));
  CHECK(is_iso(e, e.h_C(Zn(8))));
}

TEST_CASE("saturate") {
  Engine e(2);
  auto s = e.saturate(Zn(12));
  CHECK(e.divisors(s.target()) == divs({3}));
  CHECK(is_epi(e, s));
  CHECK(e.is_zero(e.saturate(Zn(8)).target()));
  auto t = e.saturate(Zn(15));
  CHECK(is_iso(e, t));
  CHECK(e.divisors(t.target()) == divs({15}));
}

TEST_CASE("is_saturated agrees with Hom/Ext vanishing against the cogenerators") {
  Engine e(2);
  CHECK(e.is_saturated(Zn(3)));
  CHECK_FALSE(e.is_saturated(Zn(12)));
  CHECK(e.is_saturated(Module()));
  CHECK(oracle::homs_cyclic(2, 12).size() == 2);  // Hom(Z/2, Z/12) != 0
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = sample_rng(1, 0, i);
    auto m = e.random_object(rng, 3);
    bool vanish = true;
    for (const auto& t : e.c_cogenerators(3))
      vanish = vanish && e.hom_group(t, m).carrier().is_zero() && e.ext1(t, m).is_zero();
    CHECK(e.is_saturated(m) == vanish);
    CHECK(e.is_saturated(m) == is_iso(e, e.saturate(m)));
  }
}

TEST_CASE("extend along the unit") {
  Engine e(2);
  auto proj = e.saturate(Zn(12));
  auto psi = e.extend_along_unit(proj);
  CHECK(e.eq_mor(psi, e.identity(proj.target())));
  auto zero = e.zero(Zn(12), Zn(3));
  CHECK(is_zero_morphism(e, e.extend_along_unit(zero)));
  // Saturated source: psi = phi o eta^{-1}.
  auto phi = map1(e, Zn(15), Zn(5), 2);
  auto eta = e.saturate(Zn(15));
  CHECK(e.eq_mor(e.extend_along_unit(phi), e.compose(phi, invert(e, eta))));
  CHECK_THROWS_AS(e.extend_along_unit(e.identity(Zn(12))), ContractViolation);
}

TEST_CASE("cogenerators") {
  Engine e(2);
  auto c = e.c_cogenerators(3);
  REQUIRE(c.size() == 3);
  CHECK(e.divisors(c[0]) == divs({2}));
  CHECK(e.divisors(c[1]) == divs({4}));
  CHECK(e.divisors(c[2]) == divs({8}));
  CHECK(e.c_cogenerators(1).size() == 1);
  for (const auto& t : c) CHECK(e.is_in_C(t));
}

TEST_CASE("subobject enumeration matches the brute-force lattice") {
  Engine e(2);
  for (auto d : std::vector<std::vector<long>>{{12}, {2, 2}, {2, 4}, {3, 6}, {8}}) {
    std::vector<Integer> di(d.begin(), d.end());
    auto subs = e.enumerate_subobjects(Module::cyclic_sum(di));
    CHECK(subs.size() == oracle::subgroups(d).size());
    for (const auto& s : subs) CHECK(is_mono(e, s));
  }
}

TEST_CASE("random objects respect the size bound and are deterministic") {
  Engine e(2), fx(2, Mode::Fixture);
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto r1 = sample_rng(5, 1, i), r2 = sample_rng(5, 1, i);
    auto a = e.random_object(r1, 1), b = e.random_object(r2, 1);
    CHECK(a == b);
    CHECK(e.divisors(a).size() <= 1);
    CHECK(e.is_finite(a));
    auto r3 = sample_rng(5, 2, i);
    auto m = fx.random_object(r3, 3);
    CHECK(fx.divisors(m).size() <= 3);
    if (fx.is_finite(m)) CHECK(fx.order(m) <= 200);
  }
}

TEST_CASE("JSON round trip") {
  Engine e(3, Mode::Fixture);
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = sample_rng(6, 0, i);
    auto a = e.random_object(rng, 3), b = e.random_object(rng, 3);
    auto f = e.random_morphism(rng, a, b);
    CHECK(e.object_from_json(e.object_to_json(a)) == a);
    auto g = e.morphism_from_json(e.morphism_to_json(f));
    CHECK(g.source() == f.source());
    CHECK(g.matrix() == f.matrix());
  }
  CHECK_THROWS_AS(e.object_from_json(json::parse(R"({"divisors":[-2]})")), InputError);
  CHECK_THROWS_AS(e.object_from_json(json::parse("[1,2]")), InputError);
}
