#include "symgrowth/reductions.hpp"

#include <algorithm>
#include <set>

#include "symgrowth/errors.hpp"

namespace symgrowth {

namespace {

// The common degree of the relations with nonzero coefficient.
int eta_degree(const CIStructure& ci, const std::vector<Scalar>& coeffs) {
  std::set<int> degrees;
  for (std::size_t l = 0; l < coeffs.size(); ++l)
    if (coeffs[l] != 0) degrees.insert(ci.degrees[l]);
  if (degrees.empty()) throw PreconditionError("reduction refused: eta is zero");
  if (degrees.size() > 1)
    throw PreconditionError("reduction refused: eta mixes relations of different degrees, so K would not be graded");
  return *degrees.begin();
}

bool ext_surjective(const OperatorSet& ops, const std::vector<Scalar>& coeffs, int n) {
  return rank(constant_operator(ops, coeffs, n + 2)) == ops.complex.rank(n + 2);
}

}  // namespace

ReductionStep build_extension(const CompleteResolution& cr, const OperatorSet& ops, const OperatorSet& dual_ops,
                              const std::vector<Scalar>& coeffs, int tail) {
  const FreeComplex& c = cr.complex;
  const GradedModule& m = *cr.module;
  const AlgebraPtr& ring = c.ring_ptr();
  const GradedAlgebra& a = *ring;
  const int steps = c.hi();
  if (c.lo() != -steps) throw PreconditionError("reduction needs a complete resolution window [-s, s]");
  if (coeffs.size() != ops.count()) throw PreconditionError("eta has the wrong number of coefficients");

  ReductionStep step;
  step.input = cr.module;
  step.coeffs = coeffs;
  step.eta_degree = eta_degree(ops.ci, coeffs);
  step.betti_m = tate_ext_dims(c);
  if (std::all_of(step.betti_m.values.begin(), step.betti_m.values.end(), [](std::size_t v) { return v == 0; }))
    throw PreconditionError("reduction refused: M is free, its complexity is already 0");

  for (int n : ext_tail(ops, tail))
    if (!ext_injective(ops, coeffs, n))
      throw PreconditionError("reduction refused: eta is not injective on Ext^" + std::to_string(n) + "(M,k)");
  for (int n : ext_tail(dual_ops, tail, 1))
    if (!dual_ext_injective(dual_ops, coeffs, n))
      throw PreconditionError("reduction refused: eta is not injective on Ext^" + std::to_string(n) + "(M*,k)");

  std::optional<int> n0;
  for (int cand = 0; cand <= steps - 2 && !n0; ++cand) {
    bool ok = true;
    for (int n = cand; n <= steps - 2 && ok; ++n) ok = ext_injective(ops, coeffs, n);
    for (int n = -steps; n <= -cand && ok; ++n) ok = ext_surjective(ops, coeffs, n);
    if (ok) n0 = cand;
  }
  if (!n0) throw PreconditionError("reduction refused: no n0 inside the window where eta is injective and surjective");
  step.n0 = *n0;

  // Omega^2 M as the image of d_2 inside F_1.
  const Twists& f1 = c.twists(1);
  auto free1 = std::make_shared<GradedModule>(free_module(ring, f1));
  auto [lo, hi] = free_support(a, f1);
  std::vector<Matrix> images;
  for (int e = lo; e <= hi; ++e) images.push_back(c.diff(2).at_degree(e));
  auto [omega, inclusion] = submodule(free1, lo, images);

  // f_eta(d_2 u) = eps(sum c_l t_l u), landing in M(-d).
  const int d = step.eta_degree;
  auto target = std::make_shared<GradedModule>(m.twisted(-d));
  ModuleMap f;
  f.source = inclusion.source;
  f.target = target;
  f.shift = 0;
  for (int e = omega.lo(); e <= omega.hi(); ++e) {
    const Matrix basis = inclusion.component(e);
    const Matrix d2 = c.diff(2).at_degree(e);
    const Matrix eps = cover_at_degree(m, cr.augmentation, e - d);
    Matrix comp(m.dim(e - d), basis.cols(), a.modulus());
    for (std::size_t b = 0; b < basis.cols(); ++b) {
      auto u = solve(d2, basis.column_vector(b));
      if (!u) throw InternalFault("a basis vector of Omega^2 M is not in the image of d_2");
      Vector v(free_dim(a, c.twists(0), e - d), 0);
      for (std::size_t l = 0; l < ops.count(); ++l) {
        if (coeffs[l] == 0) continue;
        Vector tl = ops.at(l, 2).apply(*u, e);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = fp::add(v[k], fp::mul(coeffs[l], tl[k], a.modulus()), a.modulus());
      }
      if (eps.rows() > 0) comp.set_column(b, eps.apply(v));
    }
    f.components.push_back(std::move(comp));
  }
  if (auto err = f.check_equivariance()) throw InternalFault("f_eta is not A-linear: " + *err);

  auto k = std::make_shared<GradedModule>(pushout(inclusion, f));
  step.extension = k;
  CompleteResolution crk;
  try {
    crk = complete_resolution(*k, steps);
  } catch (const PreconditionError& e) {
    throw InternalFault(std::string("the extension K fails the G-dimension zero check: ") + e.what());
  }
  step.extension_certificate = crk.certificate;
  step.extension_free_summand = crk.free_summand;
  step.betti_k = tate_ext_dims(crk.complex);

  auto beta = [](const BettiTable& t, int n) { return static_cast<std::int64_t>(t.at(n)); };
  for (int n = step.n0; n + 2 <= steps; ++n)
    step.positive.push_back({n, beta(step.betti_k, n + 1), beta(step.betti_m, n + 2) - beta(step.betti_m, n)});
  for (int n = step.n0; n <= steps; ++n)
    step.negative.push_back({n, beta(step.betti_k, -n), beta(step.betti_m, -n) - beta(step.betti_m, 2 - n)});
  for (const auto& row : step.positive)
    if (!row.holds())
      throw InternalFault("positive Betti identity fails at n = " + std::to_string(row.n) + ": " +
                          std::to_string(row.lhs) + " != " + std::to_string(row.rhs));
  for (const auto& row : step.negative)
    if (!row.holds())
      throw InternalFault("negative Betti identity fails at n = " + std::to_string(row.n) + ": " +
                          std::to_string(row.lhs) + " != " + std::to_string(row.rhs));

  step.growth_m = growth_of_table(step.betti_m);
  step.growth_k = growth_of_table(step.betti_k);
  return step;
}

PoincareVerdict verify_poincare_relation(const ReductionStep& step) {
  PoincareVerdict v;
  const auto& pm = step.growth_m.cx_plus.fit;
  const auto& pk = step.growth_k.cx_plus.fit;
  const auto& mm = step.growth_m.cx_minus.fit;
  const auto& mk = step.growth_k.cx_minus.fit;
  if (!pm || !pk || !mm || !mk) return v;
  v.available = true;
  const IntPoly one_minus_t2{1, 0, -1};
  const IntPoly t{0, 1};
  {
    IntPoly num = poly_sub(poly_mul(one_minus_t2, poly_mul(pm->numerator, pk->denominator)),
                           poly_mul(t, poly_mul(pk->numerator, pm->denominator)));
    v.positive_polynomial = divides(poly_mul(pm->denominator, pk->denominator), num);
  }
  {
    IntPoly num = poly_sub(poly_mul(one_minus_t2, poly_mul(mm->numerator, mk->denominator)),
                           poly_mul(mk->numerator, mm->denominator));
    v.negative_polynomial = divides(poly_mul(mm->denominator, mk->denominator), num);
  }
  v.pole_drop_plus = pole_order_at_one(*pk) + 1 == pole_order_at_one(*pm);
  v.pole_drop_minus = pole_order_at_one(*mk) + 1 == pole_order_at_one(*mm);
  return v;
}

Ladder full_induction(const GradedModule& m, const CIStructure& ci, const InductionOptions& options) {
  Ladder ladder;
  GradedModule current = m;
  std::set<int> classes(ci.degrees.begin(), ci.degrees.end());
  for (std::size_t rung = 0;; ++rung) {
    CompleteResolution cr = complete_resolution(current, options.steps);
    Rung r;
    r.module = cr.module;
    r.growth = growth_of_table(tate_ext_dims(cr.complex));
    const Complexity& cx = r.growth.cx_plus;
    if (cx.kind != Complexity::Kind::finite || cx.heuristic)
      throw PreconditionError("induction needs a validated finite complexity at rung " + std::to_string(rung) +
                              " (got " + cx.to_string() + ")");
    if (!ladder.complexities.empty() && cx.value + 1 != ladder.complexities.back())
      throw InternalFault("complexity did not drop by one at rung " + std::to_string(rung));
    ladder.complexities.push_back(cx.value);

    OperatorSet ops = lift_and_decompose(cr.complex, ci);
    OperatorSet dual_ops = lift_and_decompose(dualize_complex(cr.complex), ci);
    r.generation_m = finite_generation_check(ops, options.tail);
    r.generation_mdual = finite_generation_check(dual_ops, options.tail, 1);
    if (cx.value == 0) {
      ladder.rungs.push_back(std::move(r));
      break;
    }
    if (rung >= ci.relations.size())
      throw InternalFault("the ladder needs more rungs than there are relations");

    std::optional<InjectivityVerdict> witness;
    for (int deg : classes) {
      std::vector<bool> mask(ci.degrees.size());
      std::vector<Scalar> start(ci.degrees.size(), 0);
      for (std::size_t l = 0; l < mask.size(); ++l) {
        mask[l] = ci.degrees[l] == deg;
        if (mask[l]) start[l] = 1;
      }
      if (rung == 0 && options.first_eta && options.first_eta->size() == mask.size()) {
        bool same_class = true, nonzero = false;
        for (std::size_t l = 0; l < mask.size(); ++l)
          if ((*options.first_eta)[l] != 0) {
            nonzero = true;
            same_class = same_class && mask[l];
          }
        if (nonzero && same_class) start = *options.first_eta;
      }
      InjectivityVerdict v = eventual_injectivity(ops, dual_ops, start, options.tail, options.seed + rung, mask);
      if (v.found) {
        witness = v;
        break;
      }
    }
    if (!witness) throw PreconditionError("no witness eta found at rung " + std::to_string(rung));

    ReductionStep step = build_extension(cr, ops, dual_ops, witness->coeffs, options.tail);
    r.poincare = verify_poincare_relation(step);
    current = *step.extension;
    r.witness = std::move(witness);
    r.step = std::move(step);
    ladder.rungs.push_back(std::move(r));
  }
  return ladder;
}

}  // namespace symgrowth
