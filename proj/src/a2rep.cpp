#include "serre/a2rep.hpp"

#include <algorithm>

namespace serre::a2 {

Morphism::Morphism(Rep src, Rep dst, FieldMatrix f1, FieldMatrix f2)
    : src_(std::move(src)), dst_(std::move(dst)), f1_(std::move(f1)), f2_(std::move(f2)) {
  if (f1_.rows() != src_.dim1() || f1_.cols() != dst_.dim1() || f2_.rows() != src_.dim2() ||
      f2_.cols() != dst_.dim2())
    throw DimensionMismatch("A2 morphism components do not match the vertex dimensions");
}

json Engine::descriptor() const {
  return {{"kind", "a2_rep"}, {"field", field_.is_rational() ? json("Q") : json(field_.p)}};
}

void Engine::require_field(const Rep& v) const {
  if (!(v.field() == field_)) throw FieldMismatch("representation over " + v.field().name() + " used in " + name());
}

Rep Engine::rep(std::size_t d1, std::size_t d2, const Matrix<Rational>& alpha) const {
  if (alpha.rows() != d1 || alpha.cols() != d2) {
    if (!((d1 == 0 || d2 == 0) && alpha.empty())) throw DimensionMismatch("alpha must be dim1 x dim2");
    return Rep(field_, d1, d2);
  }
  return Rep(FieldMatrix(field_, alpha));
}

Morphism Engine::identity(const Rep& v) const {
  require_field(v);
  return Morphism(v, v, FieldMatrix::identity(field_, v.dim1()), FieldMatrix::identity(field_, v.dim2()));
}

Morphism Engine::zero(const Rep& v, const Rep& u) const {
  require_field(v);
  require_field(u);
  return Morphism(v, u, FieldMatrix(field_, v.dim1(), u.dim1()), FieldMatrix(field_, v.dim2(), u.dim2()));
}

Morphism Engine::make(const Rep& src, const Rep& dst, FieldMatrix f1, FieldMatrix f2) const {
  require_field(src);
  require_field(dst);
  Morphism f(src, dst, std::move(f1), std::move(f2));
  if (!is_well_defined(f)) throw ContractViolation("A2 morphism square does not commute");
  return f;
}

Morphism Engine::compose(const Morphism& g, const Morphism& f) const {
  if (!(f.target() == g.source())) throw ContractViolation("compose: target of f differs from source of g");
  return Morphism(f.source(), g.target(), f.f1() * g.f1(), f.f2() * g.f2());
}

Morphism Engine::add(const Morphism& f, const Morphism& g) const {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) throw ContractViolation("add: endpoints differ");
  return Morphism(f.source(), f.target(), f.f1() + g.f1(), f.f2() + g.f2());
}

Morphism Engine::sub(const Morphism& f, const Morphism& g) const {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) throw ContractViolation("sub: endpoints differ");
  return Morphism(f.source(), f.target(), f.f1() - g.f1(), f.f2() - g.f2());
}

Morphism Engine::neg(const Morphism& f) const { return Morphism(f.source(), f.target(), -f.f1(), -f.f2()); }

Morphism Engine::scale(const Rational& c, const Morphism& f) const {
  return Morphism(f.source(), f.target(), c * f.f1(), c * f.f2());
}

bool Engine::is_well_defined(const Morphism& f) const {
  // x f1 alpha_U = x alpha_V f2 for every x in V1.
  return f.f1() * f.target().alpha() == f.source().alpha() * f.f2();
}

bool Engine::eq_mor(const Morphism& f, const Morphism& g) const {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) throw ContractViolation("eq_mor: endpoints differ");
  return f.f1() == g.f1() && f.f2() == g.f2();
}

std::array<std::size_t, 3> Engine::invariants(const Rep& v) const {
  return {v.dim1(), v.dim2(), field_rank(v.alpha())};
}

Morphism Engine::kernel_emb(const Morphism& f) const {
  FieldMatrix k1 = field_kernel(f.f1());
  FieldMatrix k2 = field_kernel(f.f2());
  // alpha_K with alpha_K k2 = k1 alpha_V; solvable because k1 alpha_V f2 = 0.
  auto ak = field_solve(k2, k1 * f.source().alpha());
  if (!ak) throw ContractViolation("kernel_emb: source morphism is not well defined");
  Rep ker(*ak);
  if (k1.rows() == 0 || k2.rows() == 0) ker = Rep(field_, k1.rows(), k2.rows());
  return Morphism(ker, f.source(), k1, k2);
}

Morphism Engine::cokernel_proj(const Morphism& f) const {
  const Rep& u = f.target();
  // Columns of p_i span the right null space of f_i, so x -> x p_i kills im f_i.
  FieldMatrix p1 = field_kernel(f.f1().transpose()).transpose();
  FieldMatrix p2 = field_kernel(f.f2().transpose()).transpose();
  auto s1 = field_solve(p1, FieldMatrix::identity(field_, p1.cols()));
  if (!s1) throw ContractViolation("cokernel_proj: projection has no section");
  FieldMatrix ac = *s1 * u.alpha() * p2;
  Rep coker = (p1.cols() == 0 || p2.cols() == 0) ? Rep(field_, p1.cols(), p2.cols()) : Rep(ac);
  return Morphism(u, coker, p1, p2);
}

std::optional<Morphism> Engine::lift_along_mono(const Morphism& f, const Morphism& mono) const {
  if (!(f.target() == mono.target())) throw ContractViolation("lift_along_mono: targets differ");
  if (field_rank(mono.f1()) != mono.f1().rows() || field_rank(mono.f2()) != mono.f2().rows())
    throw ContractViolation("lift_along_mono: not a monomorphism");
  auto g1 = field_solve(mono.f1(), f.f1());
  auto g2 = field_solve(mono.f2(), f.f2());
  if (!g1 || !g2) return std::nullopt;
  return Morphism(f.source(), mono.source(), *g1, *g2);
}

std::optional<Morphism> Engine::colift_along_epi(const Morphism& f, const Morphism& epi) const {
  if (!(f.source() == epi.source())) throw ContractViolation("colift_along_epi: sources differ");
  if (field_rank(epi.f1()) != epi.f1().cols() || field_rank(epi.f2()) != epi.f2().cols())
    throw ContractViolation("colift_along_epi: not an epimorphism");
  // epi_i g_i = f_i  <=>  g_i^T epi_i^T = f_i^T
  auto g1 = field_solve(epi.f1().transpose(), f.f1().transpose());
  auto g2 = field_solve(epi.f2().transpose(), f.f2().transpose());
  if (!g1 || !g2) return std::nullopt;
  Morphism g(epi.target(), f.target(), g1->transpose(), g2->transpose());
  if (!is_well_defined(g)) return std::nullopt;
  return g;
}

DirectSum<Engine> Engine::direct_sum(const Rep& v, const Rep& u) const {
  const std::size_t a1 = v.dim1(), a2 = v.dim2(), b1 = u.dim1(), b2 = u.dim2();
  FieldMatrix alpha(field_, block_diag(v.alpha().raw(), u.alpha().raw()));
  Rep s = (a1 + b1 == 0 || a2 + b2 == 0) ? Rep(field_, a1 + b1, a2 + b2) : Rep(alpha);
  auto inj = [&](std::size_t n, std::size_t off, std::size_t total) {
    FieldMatrix m(field_, n, total);
    for (std::size_t i = 0; i < n; ++i) m.set(i, off + i, 1);
    return m;
  };
  auto pr = [&](std::size_t n, std::size_t off, std::size_t total) { return inj(n, off, total).transpose(); };
  return {s,
          Morphism(v, s, inj(a1, 0, a1 + b1), inj(a2, 0, a2 + b2)),
          Morphism(u, s, inj(b1, a1, a1 + b1), inj(b2, a2, a2 + b2)),
          Morphism(s, v, pr(a1, 0, a1 + b1), pr(a2, 0, a2 + b2)),
          Morphism(s, u, pr(b1, a1, a1 + b1), pr(b2, a2, a2 + b2))};
}

namespace {

// Matrix of (f1, f2) -> f1 alpha_U - alpha_V f2 in row-vector coordinates
// (vec f1, vec f2), row-major.  Its left kernel is Hom(V, U) and its cokernel
// is Ext^1(V, U) (standard projective resolution of V).
FieldMatrix hom_ext_map(const Rep& v, const Rep& u) {
  const Field f = v.field();
  const std::size_t d1 = v.dim1(), d2 = v.dim2(), e1 = u.dim1(), e2 = u.dim2();
  Matrix<Rational> m(d1 * e1 + d2 * e2, d1 * e2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t k = 0; k < e1; ++k)
      for (std::size_t j = 0; j < e2; ++j) m(i * e1 + k, i * e2 + j) += u.alpha()(k, j);
  const std::size_t off = d1 * e1;
  for (std::size_t l = 0; l < d2; ++l)
    for (std::size_t j = 0; j < e2; ++j)
      for (std::size_t i = 0; i < d1; ++i) m(off + l * e2 + j, i * e2 + j) -= v.alpha()(i, l);
  return FieldMatrix(f, m);
}

}  // namespace

HomGroup<Engine> Engine::hom_group(const Rep& v, const Rep& u) const {
  require_field(v);
  require_field(u);
  const std::size_t d1 = v.dim1(), d2 = v.dim2(), e1 = u.dim1(), e2 = u.dim2();
  FieldMatrix basis = field_kernel(hom_ext_map(v, u));
  const Field f = field_;

  auto unpack = [f, v, u, d1, d2, e1, e2](const FieldMatrix& row) {
    FieldMatrix f1(f, d1, e1), f2(f, d2, e2);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t k = 0; k < e1; ++k) f1.set(i, k, row(0, i * e1 + k));
    for (std::size_t l = 0; l < d2; ++l)
      for (std::size_t j = 0; j < e2; ++j) f2.set(l, j, row(0, d1 * e1 + l * e2 + j));
    return Morphism(v, u, f1, f2);
  };

  HomGroup<Engine> h;
  h.source = v;
  h.target = u;
  h.field = f;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    std::size_t idx[] = {r};
    h.basis.push_back(unpack(basis.select_rows(idx)));
  }
  h.decode = [f, basis, unpack](std::span<const Rational> c) {
    if (c.size() != basis.rows()) throw DimensionMismatch("Hom coordinates have wrong length");
    FieldMatrix row(f, 1, c.size());
    for (std::size_t k = 0; k < c.size(); ++k) row.set(0, k, c[k]);
    return unpack(row * basis);
  };
  h.encode = [f, basis, v, u, d1, d2, e1, e2](const Morphism& g) {
    if (!(g.source() == v) || !(g.target() == u)) throw ContractViolation("encode: morphism has the wrong endpoints");
    FieldMatrix row(f, 1, d1 * e1 + d2 * e2);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t k = 0; k < e1; ++k) row.set(0, i * e1 + k, g.f1()(i, k));
    for (std::size_t l = 0; l < d2; ++l)
      for (std::size_t j = 0; j < e2; ++j) row.set(0, d1 * e1 + l * e2 + j, g.f2()(l, j));
    auto x = field_solve(basis, row);
    if (!x) throw ContractViolation("encode: morphism is not well defined");
    std::vector<Rational> c;
    for (std::size_t k = 0; k < x->cols(); ++k) c.push_back((*x)(0, k));
    return c;
  };
  return h;
}

GroupInvariants Engine::ext1(const Rep& v, const Rep& u) const {
  require_field(v);
  require_field(u);
  FieldMatrix m = hom_ext_map(v, u);
  return {field_, {}, m.cols() - field_rank(m)};
}

Morphism Engine::h_C(const Rep& v) const {
  require_field(v);
  FieldMatrix k = field_kernel(v.alpha());
  Rep sub(field_, k.rows(), 0);
  return Morphism(sub, v, k, FieldMatrix(field_, 0, v.dim2()));
}

Morphism Engine::saturate(const Rep& v) const {
  require_field(v);
  const std::size_t d2 = v.dim2();
  Rep w(FieldMatrix::identity(field_, d2));
  if (d2 == 0) w = zero_object();
  return Morphism(v, w, v.alpha(), FieldMatrix::identity(field_, d2));
}

bool Engine::is_saturated(const Rep& v) const {
  require_field(v);
  return v.dim1() == v.dim2() && field_rank(v.alpha()) == v.dim1();
}

Morphism Engine::extend_along_unit(const Morphism& phi) const {
  const Rep& t = phi.target();
  if (!is_saturated(t)) throw ContractViolation("extend_along_unit: target is not saturated");
  Rep w = saturate(phi.source()).target();
  // psi2 = f2 and psi1 alpha_T = psi2, so psi1 = f2 alpha_T^{-1}.
  FieldMatrix psi1 = t.dim1() == 0 ? FieldMatrix(field_, w.dim1(), 0) : phi.f2() * field_inverse(t.alpha());
  return Morphism(w, t, psi1, phi.f2());
}

std::vector<Rep> Engine::c_cogenerators(int bound) const {
  std::vector<Rep> out;
  for (int d = 1; d <= bound; ++d) out.emplace_back(field_, static_cast<std::size_t>(d), 0);
  return out;
}

std::vector<Rep> Engine::anchor_objects() const {
  Matrix<Rational> one{{1}}, zero{{0}}, col{{1}, {0}};
  return {zero_object(),   Rep(field_, 1, 0),   Rep(field_, 0, 1), rep(1, 1, one),
          rep(1, 1, zero), rep(2, 1, col)};
}

Rational Engine::random_scalar(std::mt19937_64& rng) const {
  if (field_.is_rational()) {
    std::uniform_int_distribution<long> d(-3, 3);
    return Rational(d(rng));
  }
  std::uniform_int_distribution<unsigned long> d(0, field_.p - 1);
  return Rational(d(rng));
}

Rep Engine::random_object(std::mt19937_64& rng, int size_bound) const {
  if (size_bound <= 0) return zero_object();
  std::uniform_int_distribution<std::size_t> dim(0, static_cast<std::size_t>(size_bound));
  const std::size_t d1 = dim(rng), d2 = dim(rng);
  std::uniform_int_distribution<std::size_t> rk(0, std::min(d1, d2));
  const std::size_t r = rk(rng);
  FieldMatrix a(field_, d1, r), b(field_, r, d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < r; ++j) a.set(i, j, random_scalar(rng));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d2; ++j) b.set(i, j, random_scalar(rng));
  if (d1 == 0 || d2 == 0) return Rep(field_, d1, d2);
  return Rep(a * b);
}

Morphism Engine::random_morphism(std::mt19937_64& rng, const Rep& v, const Rep& u) const {
  HomGroup<Engine> h = hom_group(v, u);
  std::vector<Rational> c;
  for (std::size_t k = 0; k < h.basis.size(); ++k) c.push_back(random_scalar(rng));
  return h.decode(c);
}

// ---------------------------------------------------------------------------

json field_matrix_to_json(const FieldMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& x = m(i, j);
      if (x.get_den() == 1 && x.get_num().fits_slong_p())
        row.push_back(x.get_num().get_si());
      else
        row.push_back(x.get_str());
    }
    rows.push_back(row);
  }
  return rows;
}

FieldMatrix field_matrix_from_json(Field f, const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  FieldMatrix m(f, rows, cols);
  if (rows == 0 || cols == 0) {
    for (const auto& r : j)
      if (!r.is_array() || !r.empty()) throw InputError("expected an empty matrix");
    if (j.size() != rows && !j.empty()) throw InputError("matrix has the wrong number of rows");
    return m;
  }
  if (j.size() != rows) throw InputError("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InputError("matrix row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& x = j[i][k];
      Rational q;
      if (x.is_number_integer()) {
        q = Rational(x.get<long>());
      } else if (x.is_string()) {
        if (q.set_str(x.get<std::string>(), 10) != 0) throw InputError("not a rational number: " + x.dump());
        q.canonicalize();
      } else {
        throw InputError("matrix entries must be integers or \"a/b\" strings");
      }
      m.set(i, k, q);
    }
  }
  return m;
}

json Engine::object_to_json(const Rep& v) const {
  return {{"dims", {v.dim1(), v.dim2()}}, {"alpha", field_matrix_to_json(v.alpha())}};
}

Rep Engine::object_from_json(const json& j) const {
  if (!j.is_object() || !j.contains("dims")) throw InputError("A2 payload needs \"dims\": [d1, d2]");
  const json& d = j.at("dims");
  if (!d.is_array() || d.size() != 2 || !d[0].is_number_unsigned() || !d[1].is_number_unsigned())
    throw InputError("\"dims\" must be two nonnegative integers");
  const std::size_t d1 = d[0].get<std::size_t>(), d2 = d[1].get<std::size_t>();
  FieldMatrix a = field_matrix_from_json(field_, j.value("alpha", json::array()), d1, d2);
  if (d1 == 0 || d2 == 0) return Rep(field_, d1, d2);
  return Rep(a);
}

json Engine::morphism_to_json(const Morphism& f) const {
  return {{"src", object_to_json(f.source())},
          {"dst", object_to_json(f.target())},
          {"f1", field_matrix_to_json(f.f1())},
          {"f2", field_matrix_to_json(f.f2())}};
}

Morphism Engine::morphism_from_json(const json& j) const {
  Rep src = object_from_json(j.at("src"));
  Rep dst = object_from_json(j.at("dst"));
  FieldMatrix f1 = field_matrix_from_json(field_, j.at("f1"), src.dim1(), dst.dim1());
  FieldMatrix f2 = field_matrix_from_json(field_, j.at("f2"), src.dim2(), dst.dim2());
  Morphism f(src, dst, f1, f2);
  if (!is_well_defined(f)) throw InputError("A2 morphism square does not commute");
  return f;
}

}  // namespace serre::a2
