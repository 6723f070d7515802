#include "symgrowth/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "symgrowth/errors.hpp"

namespace symgrowth {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace fp {

Scalar inv(Scalar a, Scalar p) {
  if (a == 0) throw InternalFault("inverse of zero in GF(p)");
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<Scalar>(t);
}

Scalar from_int(std::int64_t v, Scalar p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<Scalar>(r);
}

std::int64_t to_signed(Scalar a, Scalar p) {
  return a > p / 2 ? static_cast<std::int64_t>(a) - p : static_cast<std::int64_t>(a);
}

}  // namespace fp

namespace {

void require_same_modulus(const Matrix& a, const Matrix& b) {
  if (a.modulus() != b.modulus()) throw InternalFault("matrix modulus mismatch");
}

// In-place reduction; returns pivot columns.
std::vector<std::size_t> reduce_in_place(Matrix& m) {
  const Scalar p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      auto a = m.row(sel);
      auto b = m.row(row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(row);
    Scalar scale = fp::inv(prow[col], p);
    for (std::size_t c = col; c < m.cols(); ++c) prow[c] = fp::mul(prow[c], scale, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      Scalar f = m(r, col);
      if (f == 0) continue;
      auto target = m.row(r);
      Scalar nf = p - f;
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (prow[c] == 0) continue;
        target[c] = static_cast<Scalar>((target[c] + std::uint64_t{nf} * prow[c]) % p);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, Scalar p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, Scalar p) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows, Scalar p) {
  std::size_t nr = rows.size();
  std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  Matrix m(nr, nc, p);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != nc) throw std::invalid_argument("ragged matrix literal");
    std::size_t c = 0;
    for (auto v : row) m(r, c++) = fp::from_int(v, p);
    ++r;
  }
  return m;
}

Matrix Matrix::column(const Vector& v, Scalar p) {
  Matrix m(v.size(), 1, p);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InternalFault("hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols(), a.modulus());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw InternalFault("vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols(), a.modulus());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Vector Matrix::column_vector(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Scalar s) { return s == 0; });
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::scaled(Scalar s) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = fp::mul(x, s, p_);
  return m;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw InternalFault("matrix-vector size mismatch");
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    auto rr = row(r);
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += std::uint64_t{rr[c]} * v[c];
      if ((c & 7) == 7) acc %= p_;
    }
    out[r] = static_cast<Scalar>(acc % p_);
  }
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix b(nr, nc, p_);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b, Scalar s) {
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      Scalar v = b(r, c);
      if (v == 0) continue;
      (*this)(r0 + r, c0 + c) = fp::add((*this)(r0 + r, c0 + c), fp::mul(v, s, p_), p_);
    }
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix m(idx.size(), cols_, p_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix m(rows_, idx.size(), p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) m(r, i) = (*this)(r, idx[i]);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_modulus(a, b);
  if (a.cols() != b.rows()) throw InternalFault("matrix product shape mismatch");
  const Scalar p = a.modulus();
  Matrix c(a.rows(), b.cols(), p);
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    auto ar = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Scalar f = ar[k];
      if (f == 0) continue;
      auto br = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j)
        acc[j] = (acc[j] + std::uint64_t{f} * br[j]) % p;
    }
    auto cr = c.row(i);
    for (std::size_t j = 0; j < b.cols(); ++j) cr[j] = static_cast<Scalar>(acc[j]);
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_modulus(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InternalFault("matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = fp::add(a.data_[i], b.data_[i], a.p_);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_modulus(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InternalFault("matrix difference shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = fp::sub(a.data_[i], b.data_[i], a.p_);
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.data_ == b.data_;
}

RowEchelon rref(const Matrix& m) {
  RowEchelon out{m, {}};
  out.pivots = reduce_in_place(out.reduced);
  return out;
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  Matrix copy = m;
  return reduce_in_place(copy).size();
}

Matrix kernel_basis(const Matrix& m) {
  RowEchelon e = rref(m);
  const Scalar p = m.modulus();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(m.cols(), free_cols.size(), p);
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t f = free_cols[j];
    k(f, j) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], j) = fp::neg(e.reduced(r, f), p);
  }
  return k;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  return LinearSolver(m).solve(b);
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  LinearSolver s(m);
  Matrix x(m.cols(), b.cols(), m.modulus());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto col = s.solve(b.column_vector(c));
    if (!col) return std::nullopt;
    x.set_column(c, *col);
  }
  return x;
}

LinearSolver::LinearSolver(const Matrix& m) : cols_(m.cols()), p_(m.modulus()) {
  Matrix aug = Matrix::hstack(m, Matrix::identity(m.rows(), p_));
  // Pivots are searched in the left block only.
  Matrix left = aug;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < aug.rows() && aug(sel, col) == 0) ++sel;
    if (sel == aug.rows()) continue;
    if (sel != row) {
      auto a = aug.row(sel);
      auto b = aug.row(row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = aug.row(row);
    Scalar scale = fp::inv(prow[col], p_);
    for (std::size_t c = col; c < aug.cols(); ++c) prow[c] = fp::mul(prow[c], scale, p_);
    for (std::size_t r = 0; r < aug.rows(); ++r) {
      if (r == row) continue;
      Scalar f = aug(r, col);
      if (f == 0) continue;
      auto target = aug.row(r);
      Scalar nf = p_ - f;
      for (std::size_t c = col; c < aug.cols(); ++c) {
        if (prow[c] == 0) continue;
        target[c] = static_cast<Scalar>((target[c] + std::uint64_t{nf} * prow[c]) % p_);
      }
    }
    piv.push_back(col);
    ++row;
  }
  pivots_ = std::move(piv);
  transform_ = aug.block(0, m.cols(), m.rows(), m.rows());
}

std::optional<Vector> LinearSolver::solve(const Vector& b) const {
  if (b.size() != transform_.cols()) throw std::invalid_argument("solve: right-hand side has wrong length");
  Vector y = transform_.apply(b);
  for (std::size_t r = pivots_.size(); r < y.size(); ++r)
    if (y[r] != 0) return std::nullopt;
  Vector x(cols_, 0);
  for (std::size_t r = 0; r < pivots_.size(); ++r) x[pivots_[r]] = y[r];
  return x;
}

Subspace::Subspace(std::size_t ambient, Scalar p) : ambient_(ambient), basis_(ambient, 0, p) {}

Subspace Subspace::span_of(const Matrix& columns) {
  Subspace s;
  s.ambient_ = columns.rows();
  RowEchelon e = rref(columns.transposed());
  s.pivots_ = e.pivots;
  s.basis_ = Matrix(columns.rows(), e.pivots.size(), columns.modulus());
  for (std::size_t j = 0; j < e.pivots.size(); ++j)
    for (std::size_t r = 0; r < columns.rows(); ++r) s.basis_(r, j) = e.reduced(j, r);
  return s;
}

Vector Subspace::coordinates(const Vector& v) const {
  Vector c(pivots_.size());
  for (std::size_t j = 0; j < pivots_.size(); ++j) c[j] = v[pivots_[j]];
  return c;
}

Matrix Subspace::coordinates(const Matrix& columns) const {
  return columns.select_rows(pivots_);
}

bool Subspace::contains(const Vector& v) const {
  return basis_.apply(coordinates(v)) == v;
}

QuotientSpace::QuotientSpace(const Matrix& w_columns, std::size_t ambient, Scalar p) {
  std::vector<bool> is_pivot(ambient, false);
  Matrix reduced(0, ambient, p);
  std::vector<std::size_t> pivots;
  if (w_columns.cols() > 0) {
    RowEchelon e = rref(w_columns.transposed());
    reduced = std::move(e.reduced);
    pivots = std::move(e.pivots);
  }
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t c = 0; c < ambient; ++c)
    if (!is_pivot[c]) kept_.push_back(c);
  std::vector<std::size_t> position(ambient, 0);
  for (std::size_t j = 0; j < kept_.size(); ++j) position[kept_[j]] = j;

  projection_ = Matrix(kept_.size(), ambient, p);
  section_ = Matrix(ambient, kept_.size(), p);
  for (std::size_t j = 0; j < kept_.size(); ++j) {
    projection_(j, kept_[j]) = 1;
    section_(kept_[j], j) = 1;
  }
  // A pivot coordinate e_c equals e_c - row_c modulo W, and that row is
  // supported on non-pivot coordinates apart from its leading 1.
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::size_t c = pivots[r];
    for (std::size_t j = 0; j < kept_.size(); ++j)
      projection_(j, c) = fp::neg(reduced(r, kept_[j]), p);
  }
}

}  // namespace symgrowth
