#include "symgrowth/complex.hpp"

#include <algorithm>

#include "symgrowth/errors.hpp"

namespace symgrowth {

FreeComplex::FreeComplex(AlgebraPtr ring, int lo, std::vector<Twists> twists, std::vector<FreeMap> diffs)
    : ring_(std::move(ring)), lo_(lo), twists_(std::move(twists)), diffs_(std::move(diffs)) {
  if (twists_.empty()) throw InternalFault("complex with an empty window");
  if (diffs_.size() + 1 != twists_.size()) throw InternalFault("complex needs one differential per interior index");
  for (int n = lo_ + 1; n <= hi(); ++n) {
    const FreeMap& d = diffs_[n - lo_ - 1];
    if (d.source() != twists_[n - lo_] || d.target() != twists_[n - lo_ - 1] || d.shift() != 0)
      throw InternalFault("differential " + std::to_string(n) + " does not match the free modules");
  }
}

const Twists& FreeComplex::twists(int n) const {
  static const Twists empty;
  if (n < lo_ || n > hi()) return empty;
  return twists_[n - lo_];
}

const FreeMap& FreeComplex::diff(int n) const {
  if (!has_diff(n)) throw InternalFault("differential " + std::to_string(n) + " is outside the window");
  return diffs_[n - lo_ - 1];
}

std::size_t BettiTable::at(int n) const {
  if (n < lo || n > hi()) return 0;
  return values[n - lo];
}

ExactnessReport check_exactness(const FreeComplex& c) {
  ExactnessReport rep;
  const GradedAlgebra& A = c.ring();
  for (int n = c.lo() + 2; n <= c.hi(); ++n)
    if (!(c.diff(n - 1) * c.diff(n)).is_zero()) {
      rep.squares_to_zero = false;
      if (!rep.first_failure) rep.first_failure = n;
    }
  rep.unchecked.push_back(c.lo());
  if (c.hi() != c.lo()) rep.unchecked.push_back(c.hi());
  for (int n = c.lo() + 1; n < c.hi(); ++n) {
    rep.checked.push_back(n);
    auto [lo, hi] = free_support(A, c.twists(n));
    for (int e = lo; e <= hi; ++e) {
      std::size_t dim = free_dim(A, c.twists(n), e);
      if (dim == 0) continue;
      if (rank(c.diff(n).at_degree(e)) + rank(c.diff(n + 1).at_degree(e)) != dim) {
        rep.exact = false;
        if (!rep.first_failure) rep.first_failure = n;
        break;
      }
    }
  }
  return rep;
}

FreeComplex dualize_complex(const FreeComplex& c) {
  std::vector<Twists> twists;
  std::vector<FreeMap> diffs;
  for (int m = -c.hi(); m <= -c.lo(); ++m) twists.push_back(dual_twists(c.twists(-m)));
  for (int m = -c.hi() + 1; m <= -c.lo(); ++m) diffs.push_back(c.diff(1 - m).transposed());
  return FreeComplex(c.ring_ptr(), -c.hi(), std::move(twists), std::move(diffs));
}

BettiTable betti(const FreeComplex& c) {
  BettiTable t;
  t.lo = c.lo();
  for (int n = c.lo(); n <= c.hi(); ++n) t.values.push_back(c.rank(n));
  return t;
}

Resolution minimal_resolution(const GradedModule& m, int steps) {
  if (steps < 0) throw std::invalid_argument("minimal_resolution needs steps >= 0");
  ResolutionData r = resolve(m, steps);
  Resolution res{FreeComplex(m.ring_ptr(), 0, std::move(r.twists), std::move(r.diffs)), std::move(r.augmentation)};
  ExactnessReport rep = check_exactness(res.complex);
  if (!rep.ok()) throw InternalFault("minimal resolution is not exact at index " + std::to_string(*rep.first_failure));
  for (int n = 1; n <= steps; ++n)
    if (!res.complex.minimal_at(n)) throw InternalFault("resolution differential " + std::to_string(n) + " is not minimal");
  return res;
}

namespace {

ResolutionData truncated(ResolutionData r, int steps) {
  if (static_cast<int>(r.twists.size()) < steps + 1) throw InternalFault("resolution is shorter than requested");
  r.twists.resize(steps + 1);
  r.diffs.resize(steps);
  return r;
}

}  // namespace

CompleteResolution complete_resolution(const GradedModule& m, int steps) {
  if (steps < 1) throw std::invalid_argument("complete_resolution needs steps >= 1");
  const AlgebraPtr& ring = m.ring_ptr();
  const GradedAlgebra& A = *ring;
  CompleteResolution out;
  ResolutionData rm, rd;
  out.certificate = gdim_zero_check(m, steps, &rm, &rd);
  if (!out.certificate.passed())
    throw PreconditionError("complete resolution refused: M is not of G-dimension zero within window " +
                            std::to_string(steps) + " (" + out.certificate.failure_summary() + ")");
  rm = truncated(std::move(rm), steps);
  rd = truncated(std::move(rd), steps - 1);

  DualModule dm(m);
  out.module = std::make_shared<GradedModule>(m);
  out.dual_module = dm.module_ptr();
  out.augmentation = rm.augmentation;
  out.dual_generators = rd.augmentation;

  const Twists& c0 = rm.twists[0];
  const Twists cm1 = dual_twists(rd.twists[0]);
  FreeMap d0(ring, c0, cm1, 0);
  for (std::size_t i = 0; i < cm1.size(); ++i) {
    const int b = rd.augmentation.twists[i];
    for (std::size_t j = 0; j < c0.size(); ++j) {
      const int a = rm.augmentation.twists[j];
      if (A.dim(a + b) == 0) continue;
      d0.set_entry(i, j, dm.component(b, rd.augmentation.images[i], a).apply(rm.augmentation.images[j]));
    }
  }

  std::vector<Twists> twists;
  std::vector<FreeMap> diffs;
  for (int k = steps; k >= 1; --k) twists.push_back(dual_twists(rd.twists[k - 1]));
  for (int n = 0; n <= steps; ++n) twists.push_back(rm.twists[n]);
  for (int k = steps - 1; k >= 1; --k) diffs.push_back(rd.diffs[k - 1].transposed());
  diffs.push_back(d0);
  for (int n = 1; n <= steps; ++n) diffs.push_back(rm.diffs[n - 1]);
  out.complex = FreeComplex(ring, -steps, std::move(twists), std::move(diffs));
  out.free_summand = !d0.is_minimal();

  // The image of d_0 is a copy of M.
  auto [lo, hi] = free_support(A, c0);
  for (int e = std::min(lo, m.lo()); e <= std::max(hi, m.hi()); ++e)
    if (rank(d0.at_degree(e)) != m.dim(e))
      throw InternalFault("splice map image differs from M in degree " + std::to_string(e));

  ExactnessReport rep = check_exactness(out.complex);
  if (!rep.ok()) throw InternalFault("complete resolution is not exact at index " + std::to_string(*rep.first_failure));
  ExactnessReport dual_rep = check_exactness(dualize_complex(out.complex));
  if (!dual_rep.ok())
    throw InternalFault("Hom(C, A) is not exact at index " + std::to_string(*dual_rep.first_failure));
  return out;
}

BettiTable negative_betti_via_dual(const GradedModule& m, int steps) {
  const AlgebraPtr& ring = m.ring_ptr();
  const GradedAlgebra& A = *ring;
  const Scalar p = A.modulus();
  BettiTable t;
  t.lo = -steps;
  std::vector<std::size_t> ranks;
  GradedModule n = m;
  for (int i = 0; i < steps; ++i) {
    DualModule dn(n);
    Generators g = minimal_generators(dn.module());
    ranks.push_back(g.count());
    if (i + 1 == steps) break;
    Twists star = dual_twists(g.twists);
    auto [lo, hi] = free_support(A, star);
    if (hi < lo) {
      n = GradedModule::zero(ring);
      continue;
    }
    std::vector<QuotientSpace> q;
    std::vector<std::size_t> dims;
    for (int d = lo; d <= hi; ++d) {
      auto off = free_offsets(A, star, d);
      Matrix emb(off.back(), n.dim(d), p);
      for (std::size_t j = 0; j < g.count(); ++j) {
        if (off[j + 1] == off[j] || n.dim(d) == 0) continue;
        emb.set_block(off[j], 0, dn.component(g.twists[j], g.images[j], d));
      }
      q.emplace_back(emb, off.back(), p);
      dims.push_back(q.back().dim());
    }
    std::vector<std::vector<Matrix>> actions(A.num_vars());
    for (std::size_t v = 0; v < A.num_vars(); ++v)
      for (int d = lo; d < hi; ++d)
        actions[v].push_back(q[d + 1 - lo].projection() * free_variable_action(A, star, v, d) * q[d - lo].section());
    n = GradedModule(ring, lo, std::move(dims), std::move(actions)).trimmed();
  }
  ranks.resize(steps, 0);
  std::reverse(ranks.begin(), ranks.end());
  t.values = std::move(ranks);
  return t;
}

BettiTable tate_ext_dims(const FreeComplex& c) {
  BettiTable t;
  t.lo = c.lo();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    std::size_t dim = c.rank(n);
    if (c.has_diff(n)) dim -= rank(c.diff(n).constant_part());
    if (c.has_diff(n + 1)) dim -= rank(c.diff(n + 1).constant_part());
    t.values.push_back(dim);
  }
  return t;
}

}  // namespace symgrowth
