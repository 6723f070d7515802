#include "symgrowth/free_map.hpp"

#include <algorithm>

#include "symgrowth/errors.hpp"

namespace symgrowth {

std::size_t free_dim(const GradedAlgebra& a, const Twists& twists, int d) {
  std::size_t s = 0;
  for (int t : twists) s += a.dim(d - t);
  return s;
}

std::vector<std::size_t> free_offsets(const GradedAlgebra& a, const Twists& twists, int d) {
  std::vector<std::size_t> off(twists.size() + 1, 0);
  for (std::size_t j = 0; j < twists.size(); ++j) off[j + 1] = off[j] + a.dim(d - twists[j]);
  return off;
}

std::pair<int, int> free_support(const GradedAlgebra& a, const Twists& twists) {
  if (twists.empty()) return {0, -1};
  auto [mn, mx] = std::minmax_element(twists.begin(), twists.end());
  return {*mn, *mx + a.top()};
}

Matrix free_variable_action(const GradedAlgebra& a, const Twists& twists, std::size_t i, int d) {
  auto src = free_offsets(a, twists, d);
  auto tgt = free_offsets(a, twists, d + 1);
  Matrix m(tgt.back(), src.back(), a.modulus());
  for (std::size_t j = 0; j < twists.size(); ++j) {
    int k = d - twists[j];
    if (a.dim(k) == 0 || a.dim(k + 1) == 0) continue;
    m.set_block(tgt[j], src[j], a.variable_action(i, k));
  }
  return m;
}

Twists dual_twists(const Twists& twists) {
  Twists out(twists.size());
  std::transform(twists.begin(), twists.end(), out.begin(), [](int t) { return -t; });
  return out;
}

FreeMap::FreeMap(AlgebraPtr ring, Twists source, Twists target, int shift)
    : ring_(std::move(ring)), source_(std::move(source)), target_(std::move(target)), shift_(shift) {
  entries_.resize(source_.size() * target_.size());
  for (std::size_t i = 0; i < target_.size(); ++i)
    for (std::size_t j = 0; j < source_.size(); ++j) entries_[i * source_.size() + j] = ring_->zero(entry_degree(i, j));
}

FreeMap FreeMap::identity(AlgebraPtr ring, const Twists& twists) {
  FreeMap m(ring, twists, twists, 0);
  for (std::size_t i = 0; i < twists.size(); ++i) m.set_entry(i, i, ring->one());
  return m;
}

void FreeMap::set_entry(std::size_t i, std::size_t j, Vector v) {
  if (v.size() != ring_->dim(entry_degree(i, j))) throw InternalFault("entry has the wrong degree");
  entries_[i * source_.size() + j] = std::move(v);
}

Matrix FreeMap::at_degree(int d) const {
  const GradedAlgebra& a = *ring_;
  auto src = free_offsets(a, source_, d);
  auto tgt = free_offsets(a, target_, d + shift_);
  Matrix m(tgt.back(), src.back(), a.modulus());
  for (std::size_t j = 0; j < source_.size(); ++j) {
    int k = d - source_[j];
    if (a.dim(k) == 0) continue;
    for (std::size_t i = 0; i < target_.size(); ++i) {
      int e = entry_degree(i, j);
      if (a.dim(e) == 0 || a.dim(k + e) == 0) continue;
      const Vector& v = entry(i, j);
      if (std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; })) continue;
      m.set_block(tgt[i], src[j], a.multiplication_matrix(v, e, k));
    }
  }
  return m;
}

Matrix FreeMap::constant_part() const {
  Matrix m(rows(), cols(), ring_->modulus());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (entry_degree(i, j) == 0) m(i, j) = entry(i, j)[0];
  return m;
}

bool FreeMap::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Vector& v) { return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; }); });
}

FreeMap FreeMap::transposed() const {
  FreeMap t(ring_, dual_twists(target_), dual_twists(source_), shift_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) t.set_entry(j, i, entry(i, j));
  return t;
}

FreeMap FreeMap::scaled(Scalar s) const {
  FreeMap out = *this;
  Scalar p = ring_->modulus();
  for (auto& v : out.entries_)
    for (auto& x : v) x = fp::mul(x, s, p);
  return out;
}

FreeMap FreeMap::from_columns(AlgebraPtr ring, Twists source, Twists target, int shift,
                              const std::vector<Vector>& images) {
  FreeMap m(ring, std::move(source), std::move(target), shift);
  if (images.size() != m.cols()) throw InternalFault("column count mismatch");
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto off = free_offsets(*ring, m.target_, m.source_[j] + shift);
    if (images[j].size() != off.back()) throw InternalFault("column image has the wrong dimension");
    for (std::size_t i = 0; i < m.rows(); ++i)
      m.set_entry(i, j, Vector(images[j].begin() + static_cast<std::ptrdiff_t>(off[i]),
                               images[j].begin() + static_cast<std::ptrdiff_t>(off[i + 1])));
  }
  return m;
}

Vector FreeMap::column_element(std::size_t j) const {
  Vector out;
  for (std::size_t i = 0; i < rows(); ++i) out.insert(out.end(), entry(i, j).begin(), entry(i, j).end());
  return out;
}

std::string FreeMap::entry_to_string(std::size_t i, std::size_t j) const {
  return ring_->element_to_string(entry(i, j), entry_degree(i, j));
}

FreeMap operator*(const FreeMap& a, const FreeMap& b) {
  if (a.source_ != b.target_) throw InternalFault("composition of maps with incompatible free modules");
  const GradedAlgebra& r = *a.ring_;
  FreeMap c(a.ring_, b.source_, a.target_, a.shift_ + b.shift_);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      int e = c.entry_degree(i, j);
      if (r.dim(e) == 0) continue;
      Vector acc(r.dim(e), 0);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        int ea = a.entry_degree(i, k), eb = b.entry_degree(k, j);
        if (r.dim(ea) == 0 || r.dim(eb) == 0) continue;
        Vector prod = r.multiply(a.entry(i, k), ea, b.entry(k, j), eb);
        for (std::size_t t = 0; t < acc.size(); ++t) acc[t] = fp::add(acc[t], prod[t], r.modulus());
      }
      c.set_entry(i, j, std::move(acc));
    }
  return c;
}

FreeMap operator+(const FreeMap& a, const FreeMap& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_ || a.shift_ != b.shift_)
    throw InternalFault("sum of maps with different shapes");
  FreeMap c = a;
  Scalar p = a.ring_->modulus();
  for (std::size_t k = 0; k < c.entries_.size(); ++k)
    for (std::size_t t = 0; t < c.entries_[k].size(); ++t) c.entries_[k][t] = fp::add(a.entries_[k][t], b.entries_[k][t], p);
  return c;
}

FreeMap operator-(const FreeMap& a, const FreeMap& b) { return a + b.scaled(b.ring_->modulus() - 1); }

bool operator==(const FreeMap& a, const FreeMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.shift_ == b.shift_ && a.entries_ == b.entries_;
}

}  // namespace symgrowth
