/**
 * Dense exact linear algebra over a prime field GF(p).
 *
 * Matrices act on column vectors: a linear map V -> W is stored with
 * dim W rows and dim V columns. Entries are residues in [0, p).
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace symgrowth {

using Scalar = std::uint32_t;
using Vector = std::vector<Scalar>;

inline constexpr Scalar kDefaultModulus = 32003;

bool is_prime(std::uint64_t n);

namespace fp {

inline Scalar add(Scalar a, Scalar b, Scalar p) {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Scalar>(s >= p ? s - p : s);
}
inline Scalar sub(Scalar a, Scalar b, Scalar p) { return a >= b ? a - b : a + (p - b); }
inline Scalar neg(Scalar a, Scalar p) { return a == 0 ? 0 : p - a; }
inline Scalar mul(Scalar a, Scalar b, Scalar p) {
  return static_cast<Scalar>(std::uint64_t{a} * b % p);
}
Scalar inv(Scalar a, Scalar p);
Scalar from_int(std::int64_t v, Scalar p);
/// Representative in (-p/2, p/2], for printing.
std::int64_t to_signed(Scalar a, Scalar p);

}  // namespace fp

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Scalar p = kDefaultModulus);

  static Matrix identity(std::size_t n, Scalar p = kDefaultModulus);
  static Matrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows,
                          Scalar p = kDefaultModulus);
  static Matrix column(const Vector& v, Scalar p);
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar modulus() const { return p_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector column_vector(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);

  bool is_zero() const;
  Matrix transposed() const;
  Matrix scaled(Scalar s) const;
  Vector apply(const Vector& v) const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  /// this += s * b placed at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b, Scalar s = 1);
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_columns(std::span<const std::size_t> idx) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Scalar p_ = kDefaultModulus;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

/// Reduced row echelon form with first-nonzero pivoting.
RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Columns form a basis of the right null space, one per free column, in
/// increasing free-column order; each has a 1 at its free column.
Matrix kernel_basis(const Matrix& m);

/// Some x with m x = b, free variables set to zero; nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
/// Column-wise solve of m X = b.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

/// Row reduction of m recorded once, then applied to many right-hand sides.
/// Gives the same answers as solve(m, b).
class LinearSolver {
 public:
  explicit LinearSolver(const Matrix& m);
  std::optional<Vector> solve(const Vector& b) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::size_t cols_;
  Scalar p_;
  Matrix transform_;  // transform_ * m = rref(m)
  std::vector<std::size_t> pivots_;
};

/**
 * A subspace of k^n kept as a basis in reduced column echelon form, so the
 * coordinates of a member vector are read off at the pivot rows.
 */
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient, Scalar p);
  static Subspace span_of(const Matrix& columns);

  std::size_t dim() const { return basis_.cols(); }
  std::size_t ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Coordinates of v, assuming v lies in the subspace.
  Vector coordinates(const Vector& v) const;
  Matrix coordinates(const Matrix& columns) const;
  bool contains(const Vector& v) const;

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/**
 * The quotient V / W with V = k^n. The quotient basis is the set of non-pivot
 * coordinates of the row-reduced spanning set of W, so section() picks unit
 * vectors of V.
 */
class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(const Matrix& w_columns, std::size_t ambient, Scalar p);

  std::size_t dim() const { return kept_.size(); }
  const Matrix& projection() const { return projection_; }  // dim x n
  const Matrix& section() const { return section_; }        // n x dim
  const std::vector<std::size_t>& kept_coordinates() const { return kept_; }

 private:
  std::vector<std::size_t> kept_;
  Matrix projection_;
  Matrix section_;
};

}  // namespace symgrowth
