#include "serre/zmod.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace serre::zmod {

namespace {

Integer p_part(Integer d, unsigned long p, Integer* cofactor) {
  Integer pe = 1;
  if (d != 0)
    while (d % p == 0) {
      d /= p;
      pe *= p;
    }
  if (cofactor) *cofactor = d;
  return pe;
}

bool is_p_power(const Integer& d, unsigned long p) {
  if (d <= 0) return false;
  Integer rest;
  p_part(d, p, &rest);
  return rest == 1;
}

}  // namespace

// ---------------------------------------------------------------------------

Module::Module(std::size_t gens, IntMatrix relations) : gens_(gens), relations_(std::move(relations)) {
  if (relations_.rows() == 0) relations_ = IntMatrix(0, gens_);
  if (relations_.cols() != gens_)
    throw DimensionMismatch("relation matrix has " + std::to_string(relations_.cols()) + " columns for " +
                            std::to_string(gens_) + " generators");
}

Module Module::cyclic_sum(std::span<const Integer> d) {
  std::size_t r = 0;
  for (const auto& x : d)
    if (x != 0) ++r;
  IntMatrix rel(r, d.size());
  std::size_t row = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) rel(row++, i) = abs(d[i]);
  return Module(d.size(), std::move(rel));
}

bool Module::is_normal_form() const {
  const std::size_t r = relations_.rows();
  if (r > gens_) return false;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < gens_; ++j) {
      const Integer& x = relations_(i, j);
      if (i == j) {
        if (x <= 1) return false;
        if (i > 0 && x % relations_(i - 1, i - 1) != 0) return false;
      } else if (x != 0) {
        return false;
      }
    }
  return true;
}

Morphism::Morphism(Module src, Module dst, IntMatrix matrix)
    : src_(std::move(src)), dst_(std::move(dst)), matrix_(std::move(matrix)) {
  if ((src_.gens() == 0 || dst_.gens() == 0) && (matrix_.rows() == 0 || matrix_.cols() == 0))
    matrix_ = IntMatrix(src_.gens(), dst_.gens());
  if (matrix_.rows() != src_.gens() || matrix_.cols() != dst_.gens())
    throw DimensionMismatch("morphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", expected " + std::to_string(src_.gens()) + "x" +
                            std::to_string(dst_.gens()));
}

// ---------------------------------------------------------------------------

Engine::Engine(unsigned long p, Mode mode) : p_(p), mode_(mode) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

Engine fixture_engine(unsigned long p) { return Engine(p, Mode::Fixture); }

std::string Engine::name() const {
  return (mode_ == Mode::FiniteAbelian ? "finite_abelian" : "fixture") + std::string("{p=") + std::to_string(p_) + "}";
}

json Engine::descriptor() const {
  return {{"kind", mode_ == Mode::FiniteAbelian ? "finite_abelian" : "fixture"}, {"p", p_}};
}

Morphism Engine::identity(const Module& m) const { return Morphism(m, m, IntMatrix::identity(m.gens())); }

Morphism Engine::zero(const Module& m, const Module& n) const { return Morphism(m, n, IntMatrix(m.gens(), n.gens())); }

Morphism Engine::make(const Module& src, const Module& dst, IntMatrix matrix) const {
  Morphism f(src, dst, std::move(matrix));
  if (!is_well_defined(f)) throw ContractViolation("generator images do not respect the source relations");
  return f;
}

Morphism Engine::compose(const Morphism& g, const Morphism& f) const {
  if (!(f.target() == g.source())) throw ContractViolation("compose: target of f differs from source of g");
  return Morphism(f.source(), g.target(), f.matrix() * g.matrix());
}

Morphism Engine::add(const Morphism& f, const Morphism& g) const {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) throw ContractViolation("add: endpoints differ");
  return Morphism(f.source(), f.target(), f.matrix() + g.matrix());
}

Morphism Engine::sub(const Morphism& f, const Morphism& g) const {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) throw ContractViolation("sub: endpoints differ");
  return Morphism(f.source(), f.target(), f.matrix() - g.matrix());
}

Morphism Engine::neg(const Morphism& f) const { return Morphism(f.source(), f.target(), -f.matrix()); }

Morphism Engine::scale(const Integer& c, const Morphism& f) const {
  return Morphism(f.source(), f.target(), c * f.matrix());
}

bool Engine::is_well_defined(const Morphism& f) const {
  IntMatrix image = f.source().relations() * f.matrix();
  return int_solve(f.target().relations(), image).has_value();
}

bool Engine::eq_mor(const Morphism& f, const Morphism& g) const {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) throw ContractViolation("eq_mor: endpoints differ");
  return int_solve(f.target().relations(), f.matrix() - g.matrix()).has_value();
}

Normalized Engine::normalize(const Module& m) const {
  if (m.is_normal_form()) return {m, identity(m), identity(m)};
  SmithForm f = smith(m.relations());
  const std::size_t g = m.gens();
  std::vector<Integer> d;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < g; ++i) {
    Integer di = i < f.rank ? f.S(i, i) : Integer(0);
    if (di == 1) continue;
    kept.push_back(i);
    d.push_back(di);
  }
  Module form = Module::cyclic_sum(d);
  // x -> x V carries rowspan(R) onto rowspan(S).
  IntMatrix vinv = unimodular_inverse(f.V);
  return {form, Morphism(m, form, f.V.select_cols(kept)), Morphism(form, m, vinv.select_rows(kept))};
}

std::vector<Integer> Engine::divisors(const Module& m) const {
  Module form = normalize(m).form;
  std::vector<Integer> d;
  for (std::size_t i = 0; i < form.gens(); ++i) d.push_back(i < form.relations().rows() ? form.relations()(i, i) : 0);
  return d;
}

GroupInvariants Engine::invariants(const Module& m) const { return {std::nullopt, divisors(m), 0}; }

bool Engine::is_finite(const Module& m) const {
  for (const auto& d : divisors(m))
    if (d == 0) return false;
  return true;
}

Integer Engine::order(const Module& m) const { return invariants(m).order(); }

bool Engine::is_zero(const Module& m) const { return divisors(m).empty(); }

Morphism Engine::kernel_emb(const Morphism& f) const {
  const Module& m = f.source();
  const Module& n = f.target();
  // x with x A + y R_N = 0: preimage of the relations of N.
  IntMatrix l = int_kernel(vstack(f.matrix(), n.relations()));
  IntMatrix k = l.block(0, 0, l.rows(), m.gens());
  // z with z K in rowspan(R_M): relations among the kernel generators.
  IntMatrix l2 = int_kernel(vstack(k, m.relations()));
  Module ker(k.rows(), l2.block(0, 0, l2.rows(), k.rows()));
  Morphism emb(ker, m, k);
  Normalized nk = normalize(ker);
  return compose(emb, nk.from);
}

Morphism Engine::cokernel_proj(const Morphism& f) const {
  const Module& n = f.target();
  Module coker(n.gens(), vstack(n.relations(), f.matrix()));
  Morphism proj(n, coker, IntMatrix::identity(n.gens()));
  Normalized nc = normalize(coker);
  return compose(nc.to, proj);
}

std::optional<Morphism> Engine::lift_along_mono(const Morphism& f, const Morphism& mono) const {
  if (!(f.target() == mono.target())) throw ContractViolation("lift_along_mono: targets differ");
  if (!is_mono(*this, mono)) throw ContractViolation("lift_along_mono: not a monomorphism");
  const Module& z = mono.source();
  auto x = int_solve(vstack(mono.matrix(), mono.target().relations()), f.matrix());
  if (!x) return std::nullopt;
  return Morphism(f.source(), z, x->block(0, 0, x->rows(), z.gens()));
}

std::optional<Morphism> Engine::colift_along_epi(const Morphism& f, const Morphism& epi) const {
  if (!(f.source() == epi.source())) throw ContractViolation("colift_along_epi: sources differ");
  const Module& w = epi.target();
  // Set-theoretic section of the epi on generators.
  auto s = int_solve(vstack(epi.matrix(), w.relations()), IntMatrix::identity(w.gens()));
  if (!s) throw ContractViolation("colift_along_epi: not an epimorphism");
  IntMatrix sigma = s->block(0, 0, w.gens(), epi.source().gens());
  Morphism cand(w, f.target(), sigma * f.matrix());
  if (!is_well_defined(cand)) return std::nullopt;
  if (!eq_mor(compose(cand, epi), f)) return std::nullopt;
  return cand;
}

DirectSum<Engine> Engine::direct_sum(const Module& m, const Module& n) const {
  const std::size_t a = m.gens(), b = n.gens();
  Module s(a + b, block_diag(m.relations(), n.relations()));
  IntMatrix i1(a, a + b), i2(b, a + b), p1(a + b, a), p2(a + b, b);
  for (std::size_t i = 0; i < a; ++i) i1(i, i) = p1(i, i) = 1;
  for (std::size_t i = 0; i < b; ++i) i2(i, a + i) = p2(a + i, i) = 1;
  Normalized ns = normalize(s);
  return {ns.form, compose(ns.to, Morphism(m, s, i1)), compose(ns.to, Morphism(n, s, i2)),
          compose(Morphism(s, m, p1), ns.from), compose(Morphism(s, n, p2), ns.from)};
}

HomGroup<Engine> Engine::hom_group(const Module& m, const Module& n) const {
  Normalized nm = normalize(m), nn = normalize(n);
  auto dm = divisors(nm.form), dn = divisors(nn.form);

  struct Slot {
    std::size_t i, j;
    Integer value;  // generator: e_i -> value * f_j
    Integer order;  // 0 = infinite
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < dm.size(); ++i)
    for (std::size_t j = 0; j < dn.size(); ++j) {
      const Integer& a = dm[i];
      const Integer& b = dn[j];
      if (b == 0) {
        if (a == 0) slots.push_back({i, j, 1, 0});
        continue;
      }
      Integer g = gcd(a, b);
      if (g == 1) continue;
      slots.push_back({i, j, b / g, g});
    }

  HomGroup<Engine> h;
  h.source = m;
  h.target = n;
  const Engine self = *this;
  auto lift_back = [self, nm, nn](const IntMatrix& core) {
    return self.compose(nn.from, self.compose(Morphism(nm.form, nn.form, core), nm.to));
  };
  for (const auto& s : slots) {
    IntMatrix core(nm.form.gens(), nn.form.gens());
    core(s.i, s.j) = s.value;
    h.basis.push_back(lift_back(core));
    h.orders.push_back(s.order);
  }
  h.decode = [self, slots, nm, nn, lift_back](std::span<const Integer> c) {
    if (c.size() != slots.size()) throw DimensionMismatch("Hom coordinates have wrong length");
    IntMatrix core(nm.form.gens(), nn.form.gens());
    for (std::size_t k = 0; k < slots.size(); ++k) core(slots[k].i, slots[k].j) += c[k] * slots[k].value;
    return lift_back(core);
  };
  h.encode = [self, slots, nm, nn, dn](const Morphism& f) {
    if (!(f.source() == nm.to.source()) || !(f.target() == nn.from.target()))
      throw ContractViolation("encode: morphism has the wrong endpoints");
    IntMatrix core = self.compose(nn.to, self.compose(f, nm.from)).matrix();
    std::vector<Integer> c;
    for (const auto& s : slots) {
      Integer x = core(s.i, s.j);
      const Integer& b = dn[s.j];
      if (b != 0) {
        x %= b;
        if (x < 0) x += b;
      }
      if (x % s.value != 0) throw ContractViolation("encode: morphism is not well defined");
      x /= s.value;
      if (s.order != 0) x %= s.order;
      c.push_back(x);
    }
    return c;
  };
  return h;
}

GroupInvariants Engine::ext1(const Module& m, const Module& n) const {
  // 0 -> Z^r --R--> Z^g -> M -> 0 with R the (injective) normal-form relations;
  // Ext^1(M, N) = coker( Hom(Z^g, N) --R*--> Hom(Z^r, N) ).
  Module form = normalize(m).form;
  const IntMatrix& r = form.relations();
  const std::size_t rr = r.rows(), g = form.gens(), gn = n.gens(), rn = n.relations().rows();
  IntMatrix rel(rr * rn + g * gn, rr * gn);
  std::size_t row = 0;
  for (std::size_t b = 0; b < rr; ++b)
    for (std::size_t k = 0; k < rn; ++k, ++row)
      for (std::size_t t = 0; t < gn; ++t) rel(row, b * gn + t) = n.relations()(k, t);
  for (std::size_t k = 0; k < g; ++k)
    for (std::size_t t = 0; t < gn; ++t, ++row)
      for (std::size_t b = 0; b < rr; ++b) rel(row, b * gn + t) = r(b, k);
  return invariants(Module(rr * gn, rel));
}

// ---------------------------------------------------------------------------

void Engine::require_finite(const Module& m, const char* op) const {
  if (mode_ == Mode::FiniteAbelian && !is_finite(m))
    throw ContractViolation(std::string(op) + ": infinite module in the finite-abelian engine");
}

bool Engine::is_in_C(const Module& m) const {
  require_finite(m, "is_in_C");
  for (const auto& d : divisors(m))
    if (!is_p_power(d, p_)) return false;
  return true;
}

Morphism Engine::h_C(const Module& m) const {
  Normalized nm = normalize(m);
  auto d = divisors(nm.form);
  std::vector<Integer> sub;
  std::vector<std::pair<std::size_t, Integer>> rows;  // (generator, multiplier)
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    Integer cof;
    Integer pe = p_part(d[i], p_, &cof);
    if (pe == 1) continue;
    sub.push_back(pe);
    rows.emplace_back(i, cof);
  }
  Module h = Module::cyclic_sum(sub);
  IntMatrix emb(sub.size(), nm.form.gens());
  for (std::size_t k = 0; k < rows.size(); ++k) emb(k, rows[k].first) = rows[k].second;
  return compose(nm.from, Morphism(h, nm.form, emb));
}

Morphism Engine::saturate(const Module& m) const { return cokernel_proj(h_C(m)); }

bool Engine::is_saturated(const Module& m) const {
  for (const auto& d : divisors(m))
    if (d == 0 || d % p_ == 0) return false;
  return true;
}

Morphism Engine::extend_along_unit(const Morphism& phi) const {
  if (!is_saturated(phi.target())) throw ContractViolation("extend_along_unit: target is not saturated");
  auto ext = colift_along_epi(phi, saturate(phi.source()));
  if (!ext) throw ContractViolation("extend_along_unit: no extension exists");
  return *ext;
}

std::vector<Module> Engine::c_cogenerators(int bound) const {
  std::vector<Module> out;
  Integer q = 1;
  for (int k = 1; k <= bound; ++k) {
    q *= p_;
    out.push_back(Module::cyclic(q));
  }
  return out;
}

std::vector<Morphism> Engine::enumerate_subobjects(const Module& m) const {
  if (!is_finite(m)) throw ContractViolation("enumerate_subobjects: module is infinite");
  Normalized nm = normalize(m);
  std::vector<long> d;
  for (const auto& x : divisors(nm.form)) d.push_back(x.get_si());
  std::size_t total = 1;
  for (long x : d) total *= static_cast<std::size_t>(x);
  if (total > 1024) throw ContractViolation("enumerate_subobjects: group too large");

  auto decode_idx = [&](std::size_t idx) {
    std::vector<long> v(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      v[i] = static_cast<long>(idx % d[i]);
      idx /= d[i];
    }
    return v;
  };
  auto encode_idx = [&](const std::vector<long>& v) {
    std::size_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * d[i] + static_cast<std::size_t>(v[i]);
    return idx;
  };
  std::vector<std::size_t> table(total * total);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      auto va = decode_idx(a), vb = decode_idx(b);
      for (std::size_t i = 0; i < d.size(); ++i) va[i] = (va[i] + vb[i]) % d[i];
      table[a * total + b] = encode_idx(va);
    }
  auto plus = [&](std::size_t a, std::size_t b) { return table[a * total + b]; };

  struct Sub {
    std::vector<bool> members;
    std::vector<std::size_t> gens;
  };
  std::set<std::vector<bool>> seen;
  std::deque<Sub> queue;
  std::vector<Sub> subs;
  Sub zero_sub{std::vector<bool>(total, false), {}};
  zero_sub.members[0] = true;
  seen.insert(zero_sub.members);
  queue.push_back(zero_sub);
  while (!queue.empty()) {
    Sub s = std::move(queue.front());
    queue.pop_front();
    for (std::size_t x = 0; x < total; ++x) {
      if (s.members[x]) continue;
      // <s, x> = union of cosets s + kx.
      std::vector<bool> next = s.members;
      std::size_t kx = x;
      while (!s.members[kx]) {
        for (std::size_t e = 0; e < total; ++e)
          if (s.members[e]) next[plus(e, kx)] = true;
        kx = plus(kx, x);
      }
      if (seen.insert(next).second) {
        Sub t{std::move(next), s.gens};
        t.gens.push_back(x);
        queue.push_back(std::move(t));
      }
    }
    subs.push_back(std::move(s));
  }

  std::vector<Morphism> out;
  for (const auto& s : subs) {
    IntMatrix gens(s.gens.size(), nm.form.gens());
    for (std::size_t k = 0; k < s.gens.size(); ++k) {
      auto v = decode_idx(s.gens[k]);
      for (std::size_t i = 0; i < v.size(); ++i) gens(k, i) = v[i];
    }
    Morphism from_free(Module::free(s.gens.size()), nm.form, gens);
    out.push_back(compose(nm.from, image_emb(*this, from_free)));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Module> Engine::anchor_objects() const {
  const Integer p = p_, q = p_ == 2 ? 3 : 2;
  std::vector<Module> out{Module(), Module::cyclic(p)};
  if (mode_ == Mode::Fixture) {
    out.push_back(Module::cyclic(0));
    out.push_back(Module::cyclic(q));
    const Integer zp[] = {p, 0};
    out.push_back(Module::cyclic_sum(zp));
  } else {
    out.push_back(Module::cyclic(q));
    out.push_back(Module::cyclic(p * q));
    const Integer pp[] = {p, p};
    out.push_back(Module::cyclic_sum(pp));
  }
  return out;
}

namespace {

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 3; ++step) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    u.add_row(a, b, coef(rng));
  }
  return u;
}

}  // namespace

Module Engine::random_object(std::mt19937_64& rng, int size_bound) const {
  if (size_bound <= 0) return Module();
  const int max_factors = std::min(size_bound, 3);
  std::vector<unsigned long> coprime;
  for (unsigned long m = 1; m <= 15; ++m)
    if (std::gcd(m, p_) == 1) coprime.push_back(m);

  std::uniform_int_distribution<int> nf(0, max_factors), ne(0, std::min(size_bound, 3)), coin(0, 3);
  std::uniform_int_distribution<std::size_t> nm(0, coprime.size() - 1);
  const int k = nf(rng);
  Integer total = 1;
  std::vector<Integer> d;
  for (int i = 0; i < k; ++i) {
    if (mode_ == Mode::Fixture && coin(rng) == 0) {
      d.push_back(0);
      continue;
    }
    Integer pe = 1;
    for (int e = ne(rng); e > 0; --e) pe *= p_;
    Integer n = pe * coprime[nm(rng)];
    if (n == 1 || total * n > 200) continue;
    total *= n;
    d.push_back(n);
  }
  Module m = normalize(Module::cyclic_sum(d)).form;
  if (coin(rng) == 0 && m.gens() > 0) {
    // Same module, scrambled presentation.
    IntMatrix rel = m.relations();
    IntMatrix u = random_unimodular(rng, rel.rows());
    IntMatrix v = random_unimodular(rng, m.gens());
    return Module(m.gens(), rel.rows() ? u * rel * v : rel);
  }
  return m;
}

Morphism Engine::random_morphism(std::mt19937_64& rng, const Module& m, const Module& n) const {
  HomGroup<Engine> h = hom_group(m, n);
  std::vector<Integer> c;
  std::uniform_int_distribution<long> small(-3, 3);
  for (const auto& o : h.orders) {
    if (o == 0) {
      c.push_back(small(rng));
    } else {
      std::uniform_int_distribution<long> dist(0, o.get_si() - 1);
      c.push_back(dist(rng));
    }
  }
  return h.decode(c);
}

// ---------------------------------------------------------------------------

json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("not an integer: " + j.dump());
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from_json(const json& j, std::size_t cols_if_empty) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  if (j.empty()) return IntMatrix(0, cols_if_empty);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  IntMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InputError("matrix rows must be arrays of equal length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = integer_from_json(j[i][k]);
  }
  return m;
}

json Engine::object_to_json(const Module& m) const {
  if (m.is_normal_form()) {
    json d = json::array();
    for (std::size_t i = 0; i < m.gens(); ++i)
      d.push_back(integer_to_json(i < m.relations().rows() ? m.relations()(i, i) : Integer(0)));
    return {{"divisors", d}};
  }
  return {{"generators", m.gens()}, {"relations", matrix_to_json(m.relations())}};
}

Module Engine::object_from_json(const json& j) const {
  if (!j.is_object()) throw InputError("module payload must be an object");
  if (j.contains("divisors")) {
    std::vector<Integer> d;
    for (const auto& x : j.at("divisors")) {
      Integer v = integer_from_json(x);
      if (v < 0) throw InputError("divisors must be nonnegative");
      d.push_back(v);
    }
    return Module::cyclic_sum(d);
  }
  if (j.contains("relations")) {
    const json& r = j.at("relations");
    std::size_t gens = j.contains("generators") ? j.at("generators").get<std::size_t>()
                                                : (r.is_array() && !r.empty() ? r[0].size() : 0);
    IntMatrix rel = matrix_from_json(r, gens);
    if (rel.cols() != gens) throw InputError("relation rows must have one entry per generator");
    return Module(gens, rel);
  }
  throw InputError("module payload needs \"divisors\" or \"relations\"");
}

json Engine::morphism_to_json(const Morphism& f) const {
  return {{"src", object_to_json(f.source())}, {"dst", object_to_json(f.target())}, {"matrix", matrix_to_json(f.matrix())}};
}

Morphism Engine::morphism_from_json(const json& j) const {
  Module src = object_from_json(j.at("src"));
  Module dst = object_from_json(j.at("dst"));
  IntMatrix a = matrix_from_json(j.at("matrix"), dst.gens());
  if (a.rows() != src.gens() || a.cols() != dst.gens()) throw InputError("morphism matrix has the wrong shape");
  Morphism f(src, dst, a);
  if (!is_well_defined(f)) throw InputError("morphism does not respect the source relations");
  return f;
}

}  // namespace serre::zmod
