/**
 * Eisenbud operators of a complex of free modules over a complete
 * intersection A = B/(f_1..f_c), B = k[x_1..x_n].
 *
 * Each differential is lifted to B entrywise (standard monomials lift to
 * themselves), the lifted square is written as sum f_l * T_l, and t_l is the
 * reduction of T_l modulo the relations: a chain map C_n -> C_{n-2} of
 * internal degree -deg f_l.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "symgrowth/complex.hpp"

namespace symgrowth {

using PolyMatrix = std::vector<std::vector<Polynomial>>;  // [row][col]

struct OperatorSet {
  FreeComplex complex;
  CIStructure ci;
  std::vector<PolyMatrix> lifted;                // lifted[n - lo - 1]: the lift of d_n
  std::vector<std::vector<PolyMatrix>> cofactors;  // cofactors[l][n - lo - 2]: T_l at n
  std::vector<std::vector<FreeMap>> t;           // t[l][n - lo - 2]: t_l : C_n -> C_{n-2}

  std::size_t count() const { return t.size(); }
  /// Indices n with t_l defined at n: [complex.lo() + 2, complex.hi()].
  int lo() const { return complex.lo() + 2; }
  int hi() const { return complex.hi(); }
  bool has(int n) const { return n >= lo() && n <= hi(); }
  const FreeMap& at(std::size_t l, int n) const;

  std::vector<int> chain_identity_checked;  // indices where d t = t d was verified
  std::vector<int> homotopy_equations;      // indices covered by the commutator homotopy systems
};

/**
 * Builds the operators and verifies that the decomposition reproduces the
 * lifted square exactly, that every t_l is a chain map at interior indices
 * and that t_l t_m - t_m t_l is null-homotopic there. A failed verification
 * throws InternalFault. Requires c.ring() to carry the relations of `ci` and
 * a window of at least 4 indices (PreconditionError otherwise).
 */
OperatorSet lift_and_decompose(const FreeComplex& c, const CIStructure& ci);

struct Homotopy {
  std::map<int, FreeMap> h;    // h[n] : C_n -> C_{n+degree+1}
  std::vector<int> equations;  // indices n where phi[n] = d h[n] + h[n-1] d was imposed
};

/**
 * Solves phi[n] = d_{n+degree+1} h[n] + h[n-1] d_n jointly for all n where
 * phi is given and both differentials exist. On failure returns nullopt and
 * stores the smallest index whose equations make the system inconsistent.
 */
std::optional<Homotopy> solve_homotopy(const FreeComplex& c, const std::map<int, FreeMap>& phi, int degree,
                                       int* witness = nullptr);

/// Constant part of sum c_l t_l at n: the matrix of C_n -> C_{n-2} modulo the maximal ideal.
Matrix constant_operator(const OperatorSet& ops, const std::vector<Scalar>& coeffs, int n);

/**
 * eta = sum c_l chi_l acting Ext^n(M, k) = Hom(C_n, k) -> Hom(C_{n+2}, k),
 * keyed by n; the transpose of the constant part of sum c_l t_l at n + 2.
 */
std::map<int, Matrix> induced_ext_action(const OperatorSet& ops, const std::vector<Scalar>& coeffs);

/**
 * The last `count` indices n >= 0 of Ext^n = Hom(C_{n+offset}, k) whose image
 * index n + offset + 2 lies in the window. Offset 0 reads Ext(M, k) on a
 * complete resolution of M; offset 1 reads Ext(M*, k) on its dual D.
 */
std::vector<int> ext_tail(const OperatorSet& ops, int count, int offset = 0);
/// Every such index, not only the last ones.
std::vector<int> ext_range(const OperatorSet& ops, int offset = 0);

bool ext_injective(const OperatorSet& ops, const std::vector<Scalar>& coeffs, int n);
bool dual_ext_injective(const OperatorSet& dual_ops, const std::vector<Scalar>& coeffs, int n);

struct InjectivityVerdict {
  bool found = false;
  std::vector<Scalar> coeffs;  // the witness eta when found
  int attempts = 0;            // 0: the supplied coefficients worked
  std::vector<int> tail_m;
  std::vector<int> tail_mdual;
  std::optional<int> first_injective_m;      // smallest n from which injectivity holds to the window end
  std::optional<int> first_injective_mdual;
};

inline constexpr int kRetryBudget = 16;

/// Random coefficient vectors for the retry search; entries in [1, p) on the allowed relations.
std::vector<Scalar> random_coefficients(std::uint64_t seed, int attempt, Scalar p, const std::vector<bool>& allowed);

/**
 * Injectivity of eta on Ext^n(M, k) and Ext^n(M*, k) along the tails. When
 * the supplied coefficients fail, up to kRetryBudget random vectors seeded
 * by `seed` are tried; `allowed` restricts which relations may get nonzero
 * coefficients in those retries (empty: all).
 */
InjectivityVerdict eventual_injectivity(const OperatorSet& ops, const OperatorSet& dual_ops,
                                        const std::vector<Scalar>& coeffs, int tail, std::uint64_t seed,
                                        const std::vector<bool>& allowed = {});

struct SurjectivityVerdict {
  std::vector<int> tail;
  std::vector<int> surjective;      // tail indices where sum c_l t_l : C_{n+2} -> C_n is onto
  std::vector<int> injective_ext;   // tail indices where eta is injective on Ext^n(M, k)
  bool implication_holds = true;    // injective at n implies surjective at n
  bool all_surjective() const { return surjective.size() == tail.size(); }
};

/// Surjectivity is tested on the A-module map over all internal degrees, independently of the constant part.
bool chain_map_surjective(const OperatorSet& ops, const std::vector<Scalar>& coeffs, int n);
SurjectivityVerdict eventual_surjectivity_of_chainmap(const OperatorSet& ops, const std::vector<Scalar>& coeffs,
                                                      int tail);

struct DualityVerdict {
  bool pass = true;
  bool exact = true;  // the two operator families coincide without a homotopy
  std::optional<int> witness;
  std::vector<int> equations;
};

/**
 * Compares the operators computed on D = Hom(C, A) with the transposes
 * t_l(2 - m)^T : D_m -> D_{m-2}, solving for a homotopy between them.
 */
DualityVerdict duality_commutation_check(const OperatorSet& ops, const OperatorSet& dual_ops);

struct GenerationVerdict {
  bool pass = false;
  std::optional<int> n0;  // smallest n from which generation holds to the window end
  std::vector<int> tail;
  std::vector<int> failures;
};

/// Ext^{n+2} = sum_l chi_l Ext^n for the tail indices, Ext^n = Hom(C_{n+offset}, k).
GenerationVerdict finite_generation_check(const OperatorSet& ops, int tail, int offset = 0);

struct SignVerdict {
  bool pass = true;
  std::vector<int> checked;
  std::optional<int> witness;
};

/**
 * chi_l acting on Ext^n(M, k) through the operators of C agrees with the
 * action through the operators of the minimal resolution F of k: for every
 * dual basis vector theta of Hom(C_n, k), lift theta to a chain map
 * C_{n+j} -> F_j and compare eps t^F_l Theta_2 with theta t_l(n + 2).
 */
SignVerdict action_sign_check(const OperatorSet& ops, const std::vector<int>& indices);

/// The residue field k = A / m as a graded module in degree 0.
GradedModule residue_field(const AlgebraPtr& ring);

}  // namespace symgrowth
