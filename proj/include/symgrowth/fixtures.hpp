/**
 * Named rings and modules with independently known answers, and the
 * construction M = M1 (x)_k A2 over A = A1 (x)_k A2 which yields modules of
 * G-dimension zero over rings that are not complete intersections.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symgrowth/job.hpp"
#include "symgrowth/module.hpp"

namespace symgrowth {

struct Expectation {
  bool gdim_zero = true;
  bool ci = false;             // verify_ci certifies the ring
  std::string cx_plus;         // "0", "1", "2", "exponential"
  std::string cx_minus;        // empty when the negative side does not exist
  std::optional<bool> symmetric;
  /// Minimal Betti number at index n, or nullopt where the oracle says nothing.
  std::function<std::optional<std::size_t>(int)> betti;
  std::string oracle;  // how the expected values were obtained
};

struct Fixture {
  std::string name;
  std::string description;
  RingSpec ring;
  std::optional<ModuleSpec> module;
  int steps = 10;  // long enough for the growth fits
  Expectation expected;

  /// A job for this fixture's ring and module.
  JobSpec job(const std::string& command) const;
  AlgebraPtr build_ring() const;
  GradedModule build_module(const AlgebraPtr& ring) const;
};

/// R1, R2, R2 with Omega k, R3, R4, R5 and friends, sorted by name.
const std::vector<Fixture>& standard_fixtures();
const Fixture* find_fixture(const std::string& name);
std::vector<std::string> fixture_names();

struct ConstructionResult {
  AlgebraPtr ring;
  GradedModule module;
  Fixture fixture;               // round-tripped through the job format
  bool dual_compatible = false;  // dim (M*)_d agrees with that of M1* (x) A2
  std::string dual_witness;      // first degree where it does not
};

/**
 * A = A1 (x) A2 and M = M1 (x) A2. Throws PreconditionError when M1 fails
 * the G-dimension zero check over A1 (window `window`). The expected growth
 * of M is that of M1, since minimal resolutions extend along A1 -> A.
 */
ConstructionResult construction_instance(const AlgebraPtr& a1, const GradedModule& m1, const AlgebraPtr& a2,
                                         int window = 4);

}  // namespace symgrowth
