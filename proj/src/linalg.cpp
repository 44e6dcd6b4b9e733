#include "serre/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace serre {

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

namespace {

// Position of the nonzero entry of least absolute value in S[t.., t..].
bool min_pivot(const IntMatrix& s, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      const Integer& x = s(i, j);
      if (x == 0) continue;
      if (!found || abs(x) < best) {
        best = abs(x);
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm f{a, IntMatrix::identity(m), IntMatrix::identity(n), 0};
  IntMatrix& S = f.S;
  IntMatrix& U = f.U;
  IntMatrix& V = f.V;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!min_pivot(S, t, pi, pj)) break;
    if (pi != t) {
      S.swap_rows(pi, t);
      U.swap_rows(pi, t);
    }
    if (pj != t) {
      S.swap_cols(pj, t);
      V.swap_cols(pj, t);
    }

    for (;;) {
      bool clear = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = floor_div(S(i, t), S(t, t));
        S.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (S(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = floor_div(S(t, j), S(t, t));
        S.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (S(t, j) != 0) clear = false;
      }

      if (!clear) {
        // A remainder is now smaller than the pivot; bring the smallest one in.
        std::size_t bi = t, bj = t;
        Integer best = abs(S(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0 && abs(S(i, t)) < best) best = abs(S(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0 && abs(S(t, j)) < best) best = abs(S(t, j)), bi = t, bj = j;
        if (bi != t) {
          S.swap_rows(bi, t);
          U.swap_rows(bi, t);
        }
        if (bj != t) {
          S.swap_cols(bj, t);
          V.swap_cols(bj, t);
        }
        continue;
      }

      // Row and column are clear; enforce d_t | every remaining entry.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            S.add_row(t, i, 1);
            U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }

    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  f.rank = t;
  return f;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(r, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  SmithForm f = smith(a);
  if (f.S != IntMatrix::identity(a.rows())) throw ContractViolation("matrix is not unimodular");
  // U A V = I  =>  A^{-1} = V U
  return f.V * f.U;
}

IntMatrix int_kernel(const IntMatrix& a) {
  SmithForm f = smith(a);
  std::vector<std::size_t> idx;
  for (std::size_t i = f.rank; i < a.rows(); ++i) idx.push_back(i);
  return f.U.select_rows(idx);
}

std::optional<IntMatrix> int_solve(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols())
    throw DimensionMismatch("int_solve: A has " + std::to_string(a.cols()) + " columns, B has " +
                            std::to_string(b.cols()));
  SmithForm f = smith(a);
  // X U^{-1} S V^{-1} = B  <=>  Y S = B V  with  X = Y U.
  IntMatrix c = b * f.V;
  IntMatrix y(b.rows(), a.rows());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j < f.rank) {
        if (c(i, j) % f.S(j, j) != 0) return std::nullopt;
        y(i, j) = c(i, j) / f.S(j, j);
      } else if (c(i, j) != 0) {
        return std::nullopt;
      }
    }
  return y * f.U;
}

// ---------------------------------------------------------------------------

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(unsigned long p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  return {p};
}

Rational Field::reduce(const Rational& x) const {
  if (p == 0) {
    Rational y = x;
    y.canonicalize();
    return y;
  }
  Integer mod = p;
  Integer num = x.get_num() % mod, den = x.get_den() % mod;
  if (num < 0) num += mod;
  if (den < 0) den += mod;
  if (den == 0) throw std::domain_error("denominator divisible by " + std::to_string(p));
  Integer dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  Integer r = (num * dinv) % mod;
  return Rational(r);
}

Rational Field::inv(const Rational& a) const {
  Rational x = reduce(a);
  if (x == 0) throw std::domain_error("division by zero in " + name());
  if (p == 0) return Rational(1) / x;
  Integer mod = p, r;
  Integer v = x.get_num();
  mpz_invert(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
  return Rational(r);
}

std::string Field::name() const { return p == 0 ? "Q" : "F_" + std::to_string(p); }

FieldMatrix::FieldMatrix(Field f, Matrix<Rational> m) : field_(f), m_(std::move(m)) {
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = 0; j < m_.cols(); ++j) m_(i, j) = field_.reduce(m_(i, j));
}

namespace {
Field common_field(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("cannot combine " + a.field().name() + " and " + b.field().name());
  return a.field();
}
}  // namespace

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) { return {common_field(a, b), a.m_ + b.m_}; }
FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) { return {common_field(a, b), a.m_ - b.m_}; }
FieldMatrix operator-(const FieldMatrix& a) { return {a.field_, -a.m_}; }
FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) { return {common_field(a, b), a.m_ * b.m_}; }
FieldMatrix operator*(const Rational& s, const FieldMatrix& a) { return {a.field_, a.field_.reduce(s) * a.m_}; }
FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) { return {common_field(a, b), vstack(a.m_, b.m_)}; }
FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) { return {common_field(a, b), hstack(a.m_, b.m_)}; }

std::string to_string(const FieldMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

// Gauss-Jordan on `m` in place, choosing pivots only among the first
// `pivot_cols` columns.  Returns the pivot column of each leading row.
std::vector<std::size_t> eliminate(Matrix<Rational>& m, const Field& f, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rational inv = f.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon rref(const FieldMatrix& a) {
  Matrix<Rational> m = a.raw();
  auto piv = eliminate(m, a.field(), m.cols());
  return {FieldMatrix(a.field(), std::move(m)), std::move(piv)};
}

std::size_t field_rank(const FieldMatrix& a) { return rref(a).pivots.size(); }

FieldMatrix field_kernel(const FieldMatrix& a) {
  const Field f = a.field();
  Matrix<Rational> aug = hstack(a.raw(), Matrix<Rational>::identity(a.rows()));
  auto piv = eliminate(aug, f, a.cols());
  return {f, aug.block(piv.size(), a.cols(), a.rows() - piv.size(), a.rows())};
}

std::optional<FieldMatrix> field_solve(const FieldMatrix& a, const FieldMatrix& b) {
  const Field f = common_field(a, b);
  if (a.cols() != b.cols()) throw DimensionMismatch("field_solve: column counts differ");
  // X A = B  <=>  A^T X^T = B^T
  Matrix<Rational> aug = hstack(a.raw().transpose(), b.raw().transpose());
  const std::size_t m = a.rows(), k = b.rows();
  auto piv = eliminate(aug, f, m);
  for (std::size_t i = piv.size(); i < aug.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (aug(i, m + j) != 0) return std::nullopt;
  Matrix<Rational> xt(m, k);
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) xt(piv[r], j) = aug(r, m + j);
  return FieldMatrix(f, xt.transpose());
}

FieldMatrix field_inverse(const FieldMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  if (field_rank(a) != a.rows()) throw ContractViolation("matrix is singular");
  return *field_solve(a, FieldMatrix::identity(a.field(), a.rows()));
}

}  // namespace serre
