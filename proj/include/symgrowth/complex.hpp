/**
 * Complexes of graded free modules over a fixed window [lo, hi], minimal
 * free resolutions, and complete resolutions spliced from the resolutions
 * of M and M*.
 */
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symgrowth/free_map.hpp"
#include "symgrowth/module.hpp"

namespace symgrowth {

class FreeComplex {
 public:
  FreeComplex() = default;
  /// twists[n - lo] for n in [lo, hi]; diffs[n - lo - 1] = d_n : C_n -> C_{n-1} for n in (lo, hi].
  FreeComplex(AlgebraPtr ring, int lo, std::vector<Twists> twists, std::vector<FreeMap> diffs);

  const GradedAlgebra& ring() const { return *ring_; }
  const AlgebraPtr& ring_ptr() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(twists_.size()) - 1; }

  /// Twists of C_n; empty outside the window.
  const Twists& twists(int n) const;
  std::size_t rank(int n) const { return twists(n).size(); }
  bool has_diff(int n) const { return n > lo() && n <= hi(); }
  const FreeMap& diff(int n) const;
  /// Every entry of d_n lies in the maximal ideal.
  bool minimal_at(int n) const { return diff(n).is_minimal(); }

 private:
  AlgebraPtr ring_;
  int lo_ = 0;
  std::vector<Twists> twists_;
  std::vector<FreeMap> diffs_;
};

struct BettiTable {
  int lo = 0;
  std::vector<std::size_t> values;  // values[n - lo]
  int hi() const { return lo + static_cast<int>(values.size()) - 1; }
  std::size_t at(int n) const;
  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

struct Resolution {
  FreeComplex complex;       // window [0, steps]
  Generators augmentation;   // the cover C_0 -> M
};

/// Minimal free resolution F_0 <- ... <- F_steps; exactness is verified at interior indices.
Resolution minimal_resolution(const GradedModule& m, int steps);

struct CompleteResolution {
  FreeComplex complex;            // window [-steps, steps]
  ModulePtr module;
  ModulePtr dual_module;
  Generators augmentation;        // generators of M, the cover C_0 -> M
  Generators dual_generators;     // generators of M*, the cover C_{-1}* -> M*
  GdimCertificate certificate;
  /// The splice map d_0 has a unit entry: M has a nonzero free summand.
  bool free_summand = false;
};

/**
 * Splices the minimal resolution of M with the dual of the minimal
 * resolution of M*. Throws PreconditionError naming the failed condition when
 * M is not of G-dimension zero within the window, and InternalFault when a
 * verification of the spliced complex fails.
 */
CompleteResolution complete_resolution(const GradedModule& m, int steps);

struct ExactnessReport {
  bool squares_to_zero = true;
  bool exact = true;
  std::optional<int> first_failure;
  std::vector<int> checked;   // indices where the rank identity was tested
  std::vector<int> unchecked; // window edges
  bool ok() const { return squares_to_zero && exact; }
};

/// d o d = 0 wherever both maps exist, and ker d_n = im d_{n+1} degreewise at interior n.
ExactnessReport check_exactness(const FreeComplex& c);

/// Hom_A(C, A): the complex D with D_m = (C_{-m})* and d^D_m = (d^C_{1-m})^T.
FreeComplex dualize_complex(const FreeComplex& c);

BettiTable betti(const FreeComplex& c);

/**
 * Negative Betti numbers beta_{-1}, ..., beta_{-steps} of a G-dimension zero
 * module, computed from successive cosyzygies N_0 = M,
 * N_{i+1} = coker(N_i -> F_i*) with F_i -> N_i* a minimal cover, so that
 * beta_{-(i+1)} = rank F_i. This does not resolve M*.
 */
BettiTable negative_betti_via_dual(const GradedModule& m, int steps);

/// dim Ext-hat^n(M, k) for n in the window, from the constant parts of the differentials.
/// Edge indices treat the missing neighbour differential as minimal.
BettiTable tate_ext_dims(const FreeComplex& c);

}  // namespace symgrowth
