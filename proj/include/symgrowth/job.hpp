/**
 * Job files: a ring block, an optional module block and top-level
 * parameters.
 *
 *   # k over k[x,y]/(x^2, y^2)
 *   ring { p = 32003; vars = x, y; rels = x^2, y^2 }
 *   module { rows = [0]; cols = [1, 1]; matrix = [[x, y]] }
 *   cmd = symgrowth steps = 10 eta = 1, 1
 *
 * Block entries are separated by ';' or newlines, top-level items by
 * whitespace. '#' starts a comment. A missing module block means the free
 * module A; `fixture = NAME` replaces both blocks. The `construct` command
 * takes a second ring block `ring2`.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symgrowth/algebra.hpp"
#include "symgrowth/free_map.hpp"
#include "symgrowth/module.hpp"

namespace symgrowth {

struct RingSpec {
  Scalar p = kDefaultModulus;
  std::vector<std::string> vars;
  std::vector<Polynomial> rels;
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

struct ModuleSpec {
  Twists rows;
  Twists cols;
  std::vector<std::vector<Polynomial>> matrix;  // rows x cols
  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

inline constexpr int kDefaultSteps = 8;
/// Commands that fit generating functions need 10 terms on each side with the default guard.
inline constexpr int kDefaultGrowthSteps = 10;
inline constexpr int kDefaultTail = 4;

bool is_growth_command(const std::string& command);

struct JobSpec {
  std::optional<RingSpec> ring;
  std::optional<RingSpec> ring2;
  std::optional<ModuleSpec> module;
  std::optional<std::string> fixture;
  std::string command;
  std::optional<int> steps;
  std::optional<int> tail;
  std::optional<std::vector<std::int64_t>> eta;
  std::optional<std::uint64_t> seed;

  int steps_or_default() const {
    return steps.value_or(is_growth_command(command) ? kDefaultGrowthSteps : kDefaultSteps);
  }
  int tail_or_default() const { return tail.value_or(kDefaultTail); }
  std::uint64_t seed_or_default() const { return seed.value_or(0); }
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

const std::vector<std::string>& known_commands();

/**
 * Parses and validates a job. Moduli must be prime, relations nonzero,
 * homogeneous and of degree >= 2, and presentation entries homogeneous of
 * degree cols[j] - rows[i]. Errors are InputError with 1-based line and
 * column of the offending text.
 */
JobSpec parse_job(std::string_view text);

/// The canonical text of a job; parse_job(canonical_text(j)) == j.
std::string canonical_text(const JobSpec& job);

RingSpec ring_spec_of(const GradedAlgebra& a);
ModuleSpec module_spec_of(const Presentation& p);

AlgebraPtr build_ring(const RingSpec& r);
GradedModule build_module(const AlgebraPtr& ring, const std::optional<ModuleSpec>& m);

}  // namespace symgrowth
