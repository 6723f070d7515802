/**
 * Graded free modules F = A(-a_1) + ... + A(-a_r) and homogeneous maps
 * between them.
 *
 * The degree-d piece of F is A_{d-a_1} + ... + A_{d-a_r}, concatenated in
 * summand order. A FreeMap with shift s sends F_d to G_{d+s}; its entry
 * (i, j) lies in A_{a_j - b_i + s} where a, b are the source and target
 * twists.
 */
#pragma once

#include <string>
#include <vector>

#include "symgrowth/algebra.hpp"
#include "symgrowth/linalg.hpp"

namespace symgrowth {

using Twists = std::vector<int>;

std::size_t free_dim(const GradedAlgebra& a, const Twists& twists, int d);
/// Offset of summand j inside F_d.
std::vector<std::size_t> free_offsets(const GradedAlgebra& a, const Twists& twists, int d);
/// Degrees in which F can be nonzero: [min a, max a + top]; empty range when r = 0.
std::pair<int, int> free_support(const GradedAlgebra& a, const Twists& twists);
/// Multiplication by x_i as a map F_d -> F_{d+1}.
Matrix free_variable_action(const GradedAlgebra& a, const Twists& twists, std::size_t i, int d);

/// Twists of the dual module Hom(F, A): the negated twists.
Twists dual_twists(const Twists& twists);

class FreeMap {
 public:
  FreeMap() = default;
  FreeMap(AlgebraPtr ring, Twists source, Twists target, int shift = 0);

  static FreeMap zero(AlgebraPtr ring, Twists source, Twists target, int shift = 0) {
    return FreeMap(std::move(ring), std::move(source), std::move(target), shift);
  }
  static FreeMap identity(AlgebraPtr ring, const Twists& twists);

  const GradedAlgebra& ring() const { return *ring_; }
  const AlgebraPtr& ring_ptr() const { return ring_; }
  const Twists& source() const { return source_; }
  const Twists& target() const { return target_; }
  int shift() const { return shift_; }
  std::size_t rows() const { return target_.size(); }
  std::size_t cols() const { return source_.size(); }

  /// Internal degree of entry (i, j).
  int entry_degree(std::size_t i, std::size_t j) const { return source_[j] - target_[i] + shift_; }
  const Vector& entry(std::size_t i, std::size_t j) const { return entries_[i * source_.size() + j]; }
  void set_entry(std::size_t i, std::size_t j, Vector v);

  /// The k-linear map F_d -> G_{d+shift}.
  Matrix at_degree(int d) const;
  /// Entries of internal degree zero, as a matrix over k.
  Matrix constant_part() const;
  /// True when every entry has zero constant term.
  bool is_minimal() const { return constant_part().is_zero(); }
  bool is_zero() const;

  /// Image of a vector of F_d, as a vector of G_{d+shift}.
  Vector apply(const Vector& v, int d) const { return at_degree(d).apply(v); }

  /// Hom(-, A) of this map: G* -> F*, same shift, entries unchanged.
  FreeMap transposed() const;
  FreeMap scaled(Scalar s) const;

  /// Builds the map whose j-th column is the element images[j] of G in degree source[j] + shift.
  static FreeMap from_columns(AlgebraPtr ring, Twists source, Twists target, int shift,
                              const std::vector<Vector>& images);
  /// The image of generator j, as a vector of G in degree source[j] + shift.
  Vector column_element(std::size_t j) const;

  std::string entry_to_string(std::size_t i, std::size_t j) const;

  friend FreeMap operator*(const FreeMap& a, const FreeMap& b);  // a after b
  friend FreeMap operator+(const FreeMap& a, const FreeMap& b);
  friend FreeMap operator-(const FreeMap& a, const FreeMap& b);
  friend bool operator==(const FreeMap& a, const FreeMap& b);

 private:
  AlgebraPtr ring_;
  Twists source_;
  Twists target_;
  int shift_ = 0;
  std::vector<Vector> entries_;  // row-major
};

}  // namespace symgrowth
