/**
 * Standard-graded Artinian algebras A = k[x_1..x_n]/I over GF(p).
 *
 * Monomials of a fixed degree are ordered graded-lexicographically, largest
 * first (x^2 > xy > y^2). A_d is spanned by the standard monomials: those
 * that are not leading monomials of I_d under this order. Homogeneous
 * elements of A_d are coefficient vectors over that basis.
 */
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symgrowth/linalg.hpp"

namespace symgrowth {

using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// All exponent vectors of length n and total degree d, largest first.
std::vector<Exponent> monomials_of_degree(std::size_t n, int d);

/// A polynomial in k[x_1..x_n]. Zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::size_t nvars, Scalar p) : nvars_(nvars), p_(p) {}

  static Polynomial monomial(const Exponent& e, Scalar coeff, Scalar p);
  static Polynomial constant(std::size_t nvars, Scalar c, Scalar p);

  std::size_t num_vars() const { return nvars_; }
  Scalar modulus() const { return p_; }
  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, Scalar c);

  /// Largest total degree of a term; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Polynomial homogeneous_part(int d) const;

  /// Same polynomial in a ring of `total` variables, placed at variables
  /// offset..offset+nvars-1.
  Polynomial padded(std::size_t total, std::size_t offset) const;

  /// Terms printed in graded-lex order, largest first.
  std::string to_string(const std::vector<std::string>& names) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(Scalar s) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  std::size_t nvars_ = 0;
  Scalar p_ = kDefaultModulus;
  std::map<Exponent, Scalar> terms_;
};

/**
 * Parses `+`, `-`, integer coefficients, `^` powers and products written by
 * juxtaposition or `*`. Variable names are matched greedily (longest first).
 * Whitespace is ignored. Errors carry the 1-based column in `text`.
 */
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names, Scalar p);

struct CIStructure {
  std::size_t num_vars = 0;
  std::vector<Polynomial> relations;
  std::vector<int> degrees;
  int socle_degree = 0;
};

class GradedAlgebra {
 public:
  /**
   * Builds A = k[x]/(relations) degree by degree until the first vanishing
   * piece. Throws InputError for malformed relations or when A_d is still
   * nonzero at degree_cap.
   */
  static std::shared_ptr<const GradedAlgebra> build(std::size_t nvars, Scalar p,
                                                    std::vector<Polynomial> relations,
                                                    std::optional<int> degree_cap = std::nullopt,
                                                    std::vector<std::string> names = {});

  std::size_t num_vars() const { return nvars_; }
  Scalar modulus() const { return p_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::vector<std::string>& names() const { return names_; }

  int top() const { return top_; }
  std::size_t dim(int d) const;
  std::size_t total_dim() const;
  std::vector<std::size_t> hilbert_function() const;

  /// Standard monomials of degree d (empty outside [0, top]).
  const std::vector<Exponent>& basis(int d) const;
  std::optional<std::size_t> basis_index(const Exponent& e) const;

  /// For a standard monomial b of degree d >= 1: some variable i dividing b
  /// and the basis index of b / x_i in degree d - 1.
  std::pair<std::size_t, std::size_t> divide_by_variable(int d, std::size_t index) const;

  /// Coordinates of the degree-d component of f in A_d.
  Vector normal_form(const Polynomial& f, int d) const;
  /// The image of f in A, concatenated over degrees 0..top.
  Vector normal_form(const Polynomial& f) const;

  /// Multiplication by x_i as a map A_d -> A_{d+1}.
  const Matrix& variable_action(std::size_t i, int d) const;
  /// Multiplication by a in A_deg as a map A_k -> A_{k+deg}.
  Matrix multiplication_matrix(const Vector& a, int deg, int k) const;
  Vector multiply(const Vector& a, int da, const Vector& b, int db) const;

  /// The lift of an element of A_d to k[x]: each standard monomial lifts to itself.
  Polynomial lift(const Vector& a, int d) const;
  std::string element_to_string(const Vector& a, int d) const;

  Vector zero(int d) const { return Vector(dim(d), 0); }
  Vector one() const;
  Vector variable(std::size_t i) const;

 private:
  GradedAlgebra() = default;

  struct Piece {
    std::vector<Exponent> monomials;  // all monomials of k[x]_d
    std::map<Exponent, std::size_t> monomial_index;
    std::vector<std::size_t> basis_columns;  // standard monomials among `monomials`
    std::vector<Exponent> basis;
    Matrix normal_form;  // dim A_d x #monomials
  };

  std::size_t nvars_ = 0;
  Scalar p_ = kDefaultModulus;
  std::vector<Polynomial> relations_;
  std::vector<std::string> names_;
  int top_ = 0;
  std::vector<Piece> pieces_;
  std::map<Exponent, std::size_t> basis_lookup_;
  std::vector<std::vector<Matrix>> var_action_;           // [i][d]
  std::vector<std::vector<std::vector<Matrix>>> mult_;    // [e][basis idx][k]
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> divide_;  // [d][idx]
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/**
 * A certificate that A is a complete intersection: as many relations as
 * variables with A finite-dimensional. Returns nullopt when the counts
 * differ. Throws InternalFault if the socle degree or the Hilbert function
 * symmetry disagrees with the certificate.
 */
std::optional<CIStructure> verify_ci(const GradedAlgebra& a);

/// A1 (x) A2 on n1 + n2 variables. Clashing variable names from A2 get a "2" suffix.
AlgebraPtr tensor_algebra(const GradedAlgebra& a1, const GradedAlgebra& a2);

/// The default degree cap for build().
int default_degree_cap(std::size_t nvars, const std::vector<Polynomial>& relations);

}  // namespace symgrowth
