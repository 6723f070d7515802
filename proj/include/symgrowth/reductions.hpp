/**
 * The complexity reduction step: from an operator eta of cohomological
 * degree 2 acting injectively on Ext(M, k) and Ext(M*, k), build the
 * extension 0 -> M(-d) -> K -> Omega M -> 0 and compare the Betti numbers
 * of K with those of M.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symgrowth/complex.hpp"
#include "symgrowth/growth.hpp"
#include "symgrowth/operators.hpp"

namespace symgrowth {

struct IdentityRow {
  int n = 0;
  std::int64_t lhs = 0;  // the Betti number of K
  std::int64_t rhs = 0;  // the difference of Betti numbers of M
  bool holds() const { return lhs == rhs; }
};

struct ReductionStep {
  ModulePtr input;
  std::vector<Scalar> coeffs;
  int eta_degree = 0;  // internal degree of the relations carrying eta
  ModulePtr extension; // K
  GdimCertificate extension_certificate;
  bool extension_free_summand = false;
  int n0 = 0;
  // Betti numbers of the minimal complete resolutions, read as dim Ext-hat^n(-, k).
  BettiTable betti_m;
  BettiTable betti_k;
  std::vector<IdentityRow> positive;  // beta_{n+1}(K) = beta_{n+2}(M) - beta_n(M)
  std::vector<IdentityRow> negative;  // beta_{-n}(K) = beta_{-n}(M) - beta_{2-n}(M)
  GrowthReport growth_m;
  GrowthReport growth_k;
};

/**
 * Builds K for eta = sum c_l chi_l on the complete resolution `cr` of M.
 * Refuses (PreconditionError) when M is stably free, when eta mixes
 * relations of different degrees, or when eta is not injective on the
 * Ext tails of M and M* (checked with `tail`). Throws InternalFault when a
 * Betti identity fails at an index n >= n0 inside the window.
 */
ReductionStep build_extension(const CompleteResolution& cr, const OperatorSet& ops, const OperatorSet& dual_ops,
                              const std::vector<Scalar>& coeffs, int tail);

struct PoincareVerdict {
  bool available = false;         // rational fits exist for M and K on both sides
  bool positive_polynomial = false;  // (1 - t^2) P+(M) - t P+(K) is a polynomial
  bool negative_polynomial = false;  // (1 - t^2) P-(M) - P-(K) is a polynomial
  bool pole_drop_plus = false;       // pole order of P+(K) at 1 is one less than that of P+(M)
  bool pole_drop_minus = false;
  bool pass() const {
    return available && positive_polynomial && negative_polynomial && pole_drop_plus && pole_drop_minus;
  }
};

PoincareVerdict verify_poincare_relation(const ReductionStep& step);

struct Rung {
  ModulePtr module;
  GrowthReport growth;  // of the minimal Betti numbers of this module
  std::optional<GenerationVerdict> generation_m;
  std::optional<GenerationVerdict> generation_mdual;
  std::optional<InjectivityVerdict> witness;  // eta used to reach the next rung
  std::optional<ReductionStep> step;
  std::optional<PoincareVerdict> poincare;
};

struct Ladder {
  std::vector<Rung> rungs;
  std::vector<int> complexities;  // cx+ along the rungs, ending at 0
  std::size_t steps_taken() const { return rungs.empty() ? 0 : rungs.size() - 1; }
};

struct InductionOptions {
  int steps = 10;
  int tail = 4;
  std::uint64_t seed = 0;
  std::optional<std::vector<Scalar>> first_eta;  // tried first at the first rung
};

/**
 * Repeats build_extension until the positive complexity reaches 0. Each
 * rung records its growth report and the generation checks for the module
 * and its dual. Throws PreconditionError when a complexity is not a
 * validated finite value or no witness eta is found, and InternalFault when
 * the ladder needs more rungs than there are relations.
 */
Ladder full_induction(const GradedModule& m, const CIStructure& ci, const InductionOptions& options);

}  // namespace symgrowth
