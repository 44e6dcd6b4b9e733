#pragma once

// Exact dense linear algebra over Z, Q and F_p.
//
// Convention used throughout the project: vectors are rows and matrices act by
// right multiplication, x -> x * A.  A module presented by a relation matrix R
// (relations x generators) is Z^gens / rowspan(R); a morphism M -> N is a
// gens(M) x gens(N) matrix whose i-th row is the image of the i-th generator.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "serre/errors.hpp"

namespace serre {

using Integer = mpz_class;
using Rational = mpq_class;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix out(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(idx[k], j);
    return out;
  }
  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
    return out;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const T& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference shape");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = -x;
    return c;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

// [a; b]
template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() == 0) return b.rows() == 0 ? Matrix<T>(0, std::max(a.cols(), b.cols())) : b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack column count");
  Matrix<T> out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

// [a b]
template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack row count");
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

// diag(a, b)
template <class T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

std::string to_string(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Integer normal forms.

struct SmithForm {
  IntMatrix S;  // diagonal, d1 | d2 | ..., nonnegative, zeros trailing
  IntMatrix U;  // unimodular, rows(A) x rows(A)
  IntMatrix V;  // unimodular, cols(A) x cols(A)
  std::size_t rank = 0;

  // Diagonal entries d_1..d_min(rows, cols).
  std::vector<Integer> diagonal() const;
};

// U * A * V = S.  Pivot = entry of least absolute value in the active block.
SmithForm smith(const IntMatrix& a);

// Determinant by fraction-free elimination (Bareiss).
Integer determinant(const IntMatrix& a);

// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& a);

// Rows form a Z-basis of the left kernel {x : x * A = 0}.
IntMatrix int_kernel(const IntMatrix& a);

// Some X with X * A = B, or nullopt when no integral solution exists.
std::optional<IntMatrix> int_solve(const IntMatrix& a, const IntMatrix& b);

// ---------------------------------------------------------------------------
// Fields.

// p == 0 means Q; otherwise p is prime and elements are residues in [0, p).
struct Field {
  unsigned long p = 0;

  static Field rationals() { return {0}; }
  static Field prime(unsigned long p);

  bool is_rational() const { return p == 0; }
  Rational reduce(const Rational& x) const;
  Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }
  Rational neg(const Rational& a) const { return reduce(-a); }
  Rational inv(const Rational& a) const;
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;
};

bool is_prime(unsigned long n);

class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(Field f, std::size_t rows, std::size_t cols) : field_(f), m_(rows, cols) {}
  FieldMatrix(Field f, Matrix<Rational> m);

  static FieldMatrix identity(Field f, std::size_t n) { return {f, Matrix<Rational>::identity(n)}; }

  Field field() const { return field_; }
  const Matrix<Rational>& raw() const { return m_; }
  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  bool is_zero() const { return m_.is_zero(); }

  const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, const Rational& x) { m_(i, j) = field_.reduce(x); }

  FieldMatrix transpose() const { return {field_, m_.transpose()}; }
  FieldMatrix select_rows(std::span<const std::size_t> idx) const { return {field_, m_.select_rows(idx)}; }
  FieldMatrix select_cols(std::span<const std::size_t> idx) const { return {field_, m_.select_cols(idx)}; }
  FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    return {field_, m_.block(r0, c0, nr, nc)};
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.field_ == b.field_ && a.m_ == b.m_;
  }
  friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator-(const FieldMatrix& a);
  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator*(const Rational& s, const FieldMatrix& a);

  friend FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);

 private:
  Field field_;
  Matrix<Rational> m_;
};

std::string to_string(const FieldMatrix& m);

// Reduced row echelon form; pivot column of each nonzero row is returned.
struct Echelon {
  FieldMatrix R;
  std::vector<std::size_t> pivots;
};
Echelon rref(const FieldMatrix& a);

std::size_t field_rank(const FieldMatrix& a);

// Rows form a basis of {x : x * A = 0}.
FieldMatrix field_kernel(const FieldMatrix& a);

// Some X with X * A = B, or nullopt.
std::optional<FieldMatrix> field_solve(const FieldMatrix& a, const FieldMatrix& b);

// Inverse of a square invertible matrix; throws ContractViolation otherwise.
FieldMatrix field_inverse(const FieldMatrix& a);

}  // namespace serre
