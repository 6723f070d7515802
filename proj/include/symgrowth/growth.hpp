/**
 * Growth of Betti sequences: exact rational fits of generating functions,
 * pole orders at t = 1, complexity and the symmetric growth verdict for a
 * complete resolution window.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symgrowth/complex.hpp"

namespace symgrowth {

using IntPoly = std::vector<std::int64_t>;  // lowest degree first

/// numerator / denominator in lowest terms with denominator(0) = 1.
struct RationalSeries {
  IntPoly numerator;
  IntPoly denominator;

  /// The first `count` coefficients of the expansion.
  std::vector<std::int64_t> expand(std::size_t count) const;
  friend bool operator==(const RationalSeries&, const RationalSeries&) = default;
};

inline constexpr std::size_t kDefaultGuard = 3;

/**
 * Shortest linear recurrence (Berlekamp-Massey over Q) fitted on all but
 * the last `guard` terms, then validated on every term. Returns nullopt when
 * the sequence is shorter than 2 * guard + 4, or when no recurrence with
 * 2 * deg(denominator) <= length - 2 * guard reproduces the sequence.
 */
std::optional<RationalSeries> fit_rational(const std::vector<std::size_t>& seq, std::size_t guard = kDefaultGuard);

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
/// True when num / den is a polynomial (exact division over Q).
bool divides(const IntPoly& den, const IntPoly& num);

/// Multiplicity of (1 - t) in the denominator minus that in the numerator, floored at 0.
int pole_order_at_one(const RationalSeries& s);

/// True when the polynomial is a unit times a product of cyclotomic polynomials.
bool is_cyclotomic_product(const IntPoly& f);

struct Complexity {
  enum class Kind { finite, exponential, inconclusive };
  Kind kind = Kind::inconclusive;
  int value = 0;           // meaningful for Kind::finite
  bool heuristic = false;  // decided without a validated rational fit
  std::optional<RationalSeries> fit;

  /// "1", "exponential" or "inconclusive".
  std::string to_string() const;
  friend bool operator==(const Complexity&, const Complexity&) = default;
};

/**
 * Complexity of a one-sided Betti sequence. With a validated fit whose
 * reduced denominator is a product of cyclotomic polynomials the value is
 * the pole order at 1; any other validated fit means exponential growth.
 * Without a fit: five consecutive ratios above 1.1 that are not shrinking
 * give a heuristic "exponential", otherwise the smallest t whose t-th finite differences are
 * <= 0 on the last three entries gives a heuristic value. Shorter than six
 * terms is inconclusive.
 */
Complexity complexity(const std::vector<std::size_t>& seq, std::size_t guard = kDefaultGuard);

enum class Tri { yes, no, inconclusive };
std::string to_string(Tri t);

/// Equal non-heuristic finite values give yes, two determined different values give no.
Tri same_complexity(const Complexity& a, const Complexity& b);

struct GrowthReport {
  int steps = 0;
  std::size_t guard = kDefaultGuard;
  std::vector<std::size_t> betti_plus;   // beta_0 .. beta_steps
  std::vector<std::size_t> betti_minus;  // beta_{-1} .. beta_{-steps}
  Complexity cx_plus;
  Complexity cx_minus;
  std::optional<int> pole_order_plus;
  std::optional<int> pole_order_minus;
  Tri symmetric = Tri::inconclusive;

  // The four-way comparison cx+ M = cx- M = cx+ M* = cx- M*, when M* was resolved.
  std::optional<Complexity> cx_plus_dual;
  std::optional<Complexity> cx_minus_dual;
  std::optional<Tri> four_way;
};

/// The one-sided sequences of a window [-s, s]: plus = beta_0..beta_s, minus = beta_0, beta_{-1}, .., beta_{-s}.
std::vector<std::size_t> positive_sequence(const BettiTable& t);
std::vector<std::size_t> negative_sequence(const BettiTable& t);

/// Growth measures of a Betti table over a window containing [-s, s].
GrowthReport growth_of_table(const BettiTable& t, std::size_t guard = kDefaultGuard);

/// Growth measures of a complete resolution window centred at 0.
GrowthReport symmetric_growth_verdict(const FreeComplex& c, std::size_t guard = kDefaultGuard);

/// Adds the comparison with the complete resolution of M*.
void add_dual_comparison(GrowthReport& report, const FreeComplex& dual_complex);

/// Complete resolutions of M and of M*, then the full report.
GrowthReport growth_report(const GradedModule& m, int steps, std::size_t guard = kDefaultGuard);

}  // namespace symgrowth
