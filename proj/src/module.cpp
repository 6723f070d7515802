#include "symgrowth/module.hpp"

#include <algorithm>
#include <sstream>

#include "symgrowth/errors.hpp"

namespace symgrowth {

namespace {

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Scalar v = a(i, j);
      if (v == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = fp::mul(v, b(r, c), a.modulus());
    }
  return k;
}

}  // namespace

GradedModule::GradedModule(AlgebraPtr ring, int lo, std::vector<std::size_t> dims,
                           std::vector<std::vector<Matrix>> actions)
    : ring_(std::move(ring)), lo_(lo), dims_(std::move(dims)), actions_(std::move(actions)) {
  const std::size_t n = ring_->num_vars();
  if (actions_.size() != n) throw InternalFault("module needs one action family per variable");
  const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  for (auto& fam : actions_) {
    if (fam.size() != expected) throw InternalFault("module action family has the wrong length");
    for (std::size_t k = 0; k < fam.size(); ++k)
      if (fam[k].rows() != dims_[k + 1] || fam[k].cols() != dims_[k])
        throw InternalFault("module action matrix has the wrong shape");
  }
}

GradedModule GradedModule::zero(AlgebraPtr ring) {
  std::size_t n = ring->num_vars();
  return GradedModule(std::move(ring), 0, {}, std::vector<std::vector<Matrix>>(n));
}

std::size_t GradedModule::dim(int d) const {
  if (d < lo_ || d > hi()) return 0;
  return dims_[d - lo_];
}

std::size_t GradedModule::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d;
  return s;
}

Matrix GradedModule::action(std::size_t i, int d) const {
  if (d >= lo_ && d < hi()) return actions_[i][d - lo_];
  return Matrix(dim(d + 1), dim(d), ring_->modulus());
}

Matrix GradedModule::monomial_action(const Exponent& e, int d) const {
  Matrix m = Matrix::identity(dim(d), ring_->modulus());
  int cur = d;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) {
      m = action(i, cur) * m;
      ++cur;
    }
  return m;
}

Matrix GradedModule::element_action(const Vector& r, int deg, int d) const {
  Matrix m(dim(d + deg), dim(d), ring_->modulus());
  const auto& basis = ring_->basis(deg);
  for (std::size_t b = 0; b < r.size(); ++b)
    if (r[b] != 0) m.add_block(0, 0, monomial_action(basis[b], d), r[b]);
  return m;
}

Matrix GradedModule::orbit(const Vector& v, int a, int k) const {
  const GradedAlgebra& A = *ring_;
  if (k < 0 || k > A.top()) return Matrix(dim(a + k), 0, A.modulus());
  Matrix cur = Matrix::column(v, A.modulus());
  if (v.size() != dim(a)) throw InternalFault("orbit of a vector with the wrong dimension");
  for (int step = 1; step <= k; ++step) {
    Matrix next(dim(a + step), A.dim(step), A.modulus());
    std::vector<Matrix> acted;
    for (std::size_t i = 0; i < A.num_vars(); ++i) acted.push_back(action(i, a + step - 1) * cur);
    for (std::size_t b = 0; b < A.dim(step); ++b) {
      auto [i, prev] = A.divide_by_variable(step, b);
      next.set_column(b, acted[i].column_vector(prev));
    }
    cur = std::move(next);
  }
  return cur;
}

GradedModule GradedModule::twisted(int s) const {
  GradedModule m = *this;
  m.lo_ = lo_ - s;
  m.presentation_.reset();
  return m;
}

GradedModule GradedModule::trimmed() const {
  if (dims_.empty()) return zero(ring_);
  std::size_t first = 0, last = dims_.size();
  while (first < last && dims_[first] == 0) ++first;
  while (last > first && dims_[last - 1] == 0) --last;
  if (first == last) {
    GradedModule z = zero(ring_);
    z.presentation_ = presentation_;
    return z;
  }
  std::vector<std::size_t> dims(dims_.begin() + static_cast<std::ptrdiff_t>(first),
                                dims_.begin() + static_cast<std::ptrdiff_t>(last));
  std::vector<std::vector<Matrix>> actions(actions_.size());
  for (std::size_t i = 0; i < actions_.size(); ++i)
    for (std::size_t k = first; k + 1 < last; ++k) actions[i].push_back(actions_[i][k]);
  GradedModule m(ring_, lo_ + static_cast<int>(first), std::move(dims), std::move(actions));
  m.presentation_ = presentation_;
  return m;
}

std::optional<std::string> GradedModule::check_axioms() const {
  const std::size_t n = ring_->num_vars();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (int d = lo_; d < hi(); ++d)
        if (!(action(j, d + 1) * action(i, d) == action(i, d + 1) * action(j, d)))
          return "actions of variables " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                 " do not commute in degree " + std::to_string(d);
  for (std::size_t r = 0; r < ring_->relations().size(); ++r) {
    const Polynomial& f = ring_->relations()[r];
    int df = f.degree();
    for (int d = lo_; d + df <= hi(); ++d) {
      Matrix acc(dim(d + df), dim(d), ring_->modulus());
      for (const auto& [e, c] : f.terms()) acc.add_block(0, 0, monomial_action(e, d), c);
      if (!acc.is_zero()) return "relation " + std::to_string(r + 1) + " acts nontrivially in degree " + std::to_string(d);
    }
  }
  return std::nullopt;
}

Matrix ModuleMap::component(int d) const {
  if (d >= source->lo() && d <= source->hi()) return components[d - source->lo()];
  return Matrix(target->dim(d + shift), source->dim(d), source->ring().modulus());
}

bool ModuleMap::is_injective() const {
  for (int d = source->lo(); d <= source->hi(); ++d)
    if (rank(component(d)) != source->dim(d)) return false;
  return true;
}

bool ModuleMap::is_surjective() const {
  for (int e = target->lo(); e <= target->hi(); ++e)
    if (rank(component(e - shift)) != target->dim(e)) return false;
  return true;
}

std::optional<std::string> ModuleMap::check_equivariance() const {
  for (std::size_t i = 0; i < source->ring().num_vars(); ++i)
    for (int d = source->lo() - 1; d <= source->hi(); ++d)
      if (!(target->action(i, d + shift) * component(d) == component(d + 1) * source->action(i, d)))
        return "map does not commute with variable " + std::to_string(i + 1) + " in degree " + std::to_string(d);
  return std::nullopt;
}

GradedModule free_module(AlgebraPtr ring, const Twists& twists) {
  auto [lo, hi] = free_support(*ring, twists);
  if (hi < lo) return GradedModule::zero(ring);
  std::vector<std::size_t> dims;
  for (int d = lo; d <= hi; ++d) dims.push_back(free_dim(*ring, twists, d));
  std::vector<std::vector<Matrix>> actions(ring->num_vars());
  for (std::size_t i = 0; i < ring->num_vars(); ++i)
    for (int d = lo; d < hi; ++d) actions[i].push_back(free_variable_action(*ring, twists, i, d));
  return GradedModule(ring, lo, std::move(dims), std::move(actions));
}

GradedModule from_presentation(AlgebraPtr ring, const Twists& rows, const Twists& cols,
                               const std::vector<std::vector<Polynomial>>& entries) {
  const GradedAlgebra& A = *ring;
  if (entries.size() != rows.size()) throw InputError("presentation has " + std::to_string(entries.size()) +
                                                      " rows but " + std::to_string(rows.size()) + " row twists");
  FreeMap p(ring, cols, rows, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (entries[i].size() != cols.size())
      throw InputError("presentation row " + std::to_string(i + 1) + " has " + std::to_string(entries[i].size()) +
                       " entries but there are " + std::to_string(cols.size()) + " column twists");
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Polynomial& f = entries[i][j];
      if (f.is_zero()) continue;
      std::string where = "presentation entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (!f.is_homogeneous()) throw InputError(where + " is not homogeneous");
      int expected = cols[j] - rows[i];
      if (f.degree() != expected)
        throw InputError(where + " has degree " + std::to_string(f.degree()) + " but the twists require " +
                         std::to_string(expected));
      p.set_entry(i, j, A.normal_form(f, expected));
    }
  }
  auto [lo, hi] = free_support(A, rows);
  if (hi < lo) return GradedModule::zero(ring);
  std::vector<QuotientSpace> q;
  std::vector<std::size_t> dims;
  for (int d = lo; d <= hi; ++d) {
    std::size_t n = free_dim(A, rows, d);
    q.emplace_back(p.at_degree(d), n, A.modulus());
    dims.push_back(q.back().dim());
  }
  std::vector<std::vector<Matrix>> actions(A.num_vars());
  for (std::size_t i = 0; i < A.num_vars(); ++i)
    for (int d = lo; d < hi; ++d)
      actions[i].push_back(q[d + 1 - lo].projection() * free_variable_action(A, rows, i, d) * q[d - lo].section());
  GradedModule m(ring, lo, std::move(dims), std::move(actions));
  m = m.trimmed();
  m.set_presentation(Presentation{rows, cols, entries});
  return m;
}

Generators generators_of_submodule(const std::function<Matrix(std::size_t, int)>& ambient_action, std::size_t nvars,
                                   int lo, const std::vector<Matrix>& bases) {
  Generators g;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    const int d = lo + static_cast<int>(k);
    if (bases[k].cols() == 0) continue;
    Subspace s = Subspace::span_of(bases[k]);
    if (s.dim() == 0) continue;
    Matrix below(s.ambient(), 0, bases[k].modulus());
    if (k > 0 && bases[k - 1].cols() > 0)
      for (std::size_t i = 0; i < nvars; ++i) below = Matrix::hstack(below, ambient_action(i, d - 1) * bases[k - 1]);
    QuotientSpace q(s.coordinates(below), s.dim(), bases[k].modulus());
    Matrix lifts = s.basis() * q.section();
    for (std::size_t c = 0; c < lifts.cols(); ++c) {
      g.twists.push_back(d);
      g.images.push_back(lifts.column_vector(c));
    }
  }
  return g;
}

Generators minimal_generators(const GradedModule& m) {
  std::vector<Matrix> bases;
  for (int d = m.lo(); d <= m.hi(); ++d) bases.push_back(Matrix::identity(m.dim(d), m.ring().modulus()));
  return generators_of_submodule([&m](std::size_t i, int d) { return m.action(i, d); }, m.ring().num_vars(), m.lo(),
                                 bases);
}

Matrix cover_at_degree(const GradedModule& m, const Generators& g, int d) {
  const GradedAlgebra& A = m.ring();
  auto off = free_offsets(A, g.twists, d);
  Matrix c(m.dim(d), off.back(), A.modulus());
  for (std::size_t j = 0; j < g.count(); ++j) {
    int k = d - g.twists[j];
    if (A.dim(k) == 0) continue;
    c.set_block(0, off[j], m.orbit(g.images[j], g.twists[j], k));
  }
  return c;
}

std::pair<GradedModule, ModuleMap> submodule(ModulePtr ambient, int lo, const std::vector<Matrix>& bases) {
  const GradedAlgebra& A = ambient->ring();
  std::vector<Subspace> subs;
  std::vector<std::size_t> dims;
  for (const auto& b : bases) {
    subs.push_back(b.cols() == 0 ? Subspace(b.rows(), A.modulus()) : Subspace::span_of(b));
    dims.push_back(subs.back().dim());
  }
  std::vector<std::vector<Matrix>> actions(A.num_vars());
  for (std::size_t i = 0; i < A.num_vars(); ++i)
    for (std::size_t k = 0; k + 1 < subs.size(); ++k) {
      Matrix moved = ambient->action(i, lo + static_cast<int>(k)) * subs[k].basis();
      Matrix coords = subs[k + 1].coordinates(moved);
      if (!(subs[k + 1].basis() * coords == moved)) throw InternalFault("subspaces do not form a submodule");
      actions[i].push_back(std::move(coords));
    }
  GradedModule sub(ambient->ring_ptr(), lo, std::move(dims), std::move(actions));
  ModuleMap inc;
  inc.source = std::make_shared<GradedModule>(sub);
  inc.target = std::move(ambient);
  inc.shift = 0;
  for (const auto& s : subs) inc.components.push_back(s.basis());
  return {std::move(sub), std::move(inc)};
}

Syzygy syzygy(const GradedModule& m) {
  Generators g = minimal_generators(m);
  auto f0 = std::make_shared<GradedModule>(free_module(m.ring_ptr(), g.twists));
  auto [lo, hi] = free_support(m.ring(), g.twists);
  std::vector<Matrix> kernels;
  for (int d = lo; d <= hi; ++d) kernels.push_back(kernel_basis(cover_at_degree(m, g, d)));
  if (hi < lo) lo = 0;
  auto [mod, inc] = submodule(f0, lo, kernels);
  return Syzygy{std::move(mod), std::move(inc), std::move(g)};
}

Presentation minimal_presentation(const GradedModule& m) {
  Syzygy s = syzygy(m);
  Generators rel = minimal_generators(s.module);
  const GradedAlgebra& a = m.ring();
  std::vector<Vector> images;
  for (std::size_t j = 0; j < rel.count(); ++j) images.push_back(s.inclusion.component(rel.twists[j]).apply(rel.images[j]));
  FreeMap d = FreeMap::from_columns(m.ring_ptr(), rel.twists, s.cover.twists, 0, images);
  Presentation p;
  p.rows = s.cover.twists;
  p.cols = rel.twists;
  p.entries.assign(p.rows.size(), std::vector<Polynomial>(p.cols.size(), Polynomial(a.num_vars(), a.modulus())));
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    for (std::size_t j = 0; j < p.cols.size(); ++j)
      if (a.dim(d.entry_degree(i, j)) > 0) p.entries[i][j] = a.lift(d.entry(i, j), d.entry_degree(i, j));
  return p;
}

DualModule::DualModule(const GradedModule& m) : original_(m) {
  const GradedAlgebra& A = m.ring();
  const Scalar p = A.modulus();
  const std::size_t nv = A.num_vars();
  if (m.is_zero()) {
    module_ = std::make_shared<GradedModule>(GradedModule::zero(m.ring_ptr()));
    return;
  }
  const int lo = m.lo(), hi = m.hi();
  e_lo_ = -hi;
  const int e_hi = A.top() - lo;
  for (int e = e_lo_; e <= e_hi; ++e) {
    Piece piece;
    piece.offsets.push_back(0);
    for (int d = lo; d <= hi; ++d) piece.offsets.push_back(piece.offsets.back() + A.dim(d + e) * m.dim(d));
    const std::size_t unknowns = piece.offsets.back();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < nv; ++i)
      for (int d = lo; d <= hi; ++d) {
        const std::size_t out_rows = A.dim(d + e + 1), md = m.dim(d);
        if (out_rows == 0 || md == 0) continue;
        Matrix xm = m.action(i, d);
        const bool has_next = d + 1 <= hi;
        const bool has_cur = A.dim(d + e) > 0;
        Matrix xa = has_cur ? A.variable_action(i, d + e) : Matrix();
        const std::size_t md1 = m.dim(d + 1), ad = A.dim(d + e);
        for (std::size_t r = 0; r < out_rows; ++r)
          for (std::size_t c = 0; c < md; ++c) {
            Vector row(unknowns, 0);
            if (has_next)
              for (std::size_t c2 = 0; c2 < md1; ++c2)
                row[piece.offsets[d + 1 - lo] + r * md1 + c2] = xm(c2, c);
            if (has_cur)
              for (std::size_t r2 = 0; r2 < ad; ++r2) {
                std::size_t idx = piece.offsets[d - lo] + r2 * md + c;
                row[idx] = fp::sub(row[idx], xa(r, r2), p);
              }
            rows.push_back(std::move(row));
          }
      }
    Matrix system(rows.size(), unknowns, p);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < unknowns; ++c) system(r, c) = rows[r][c];
    Matrix k = kernel_basis(system);
    piece.solutions = k.cols() == 0 ? Subspace(unknowns, p) : Subspace::span_of(k);
    pieces_.push_back(std::move(piece));
  }

  std::vector<std::size_t> dims;
  for (const auto& pc : pieces_) dims.push_back(pc.solutions.dim());
  std::vector<std::vector<Matrix>> actions(nv);
  for (std::size_t i = 0; i < nv; ++i)
    for (int e = e_lo_; e < e_hi; ++e) {
      const Piece& src = pieces_[e - e_lo_];
      const Piece& tgt = pieces_[e + 1 - e_lo_];
      Matrix act(tgt.solutions.dim(), src.solutions.dim(), p);
      for (std::size_t c = 0; c < src.solutions.dim(); ++c) {
        Vector f = src.solutions.basis().column_vector(c);
        Vector g(tgt.offsets.back(), 0);
        for (int d = lo; d <= hi; ++d) {
          const std::size_t md = m.dim(d), ad = A.dim(d + e), ad1 = A.dim(d + e + 1);
          if (md == 0 || ad == 0 || ad1 == 0) continue;
          Matrix fd(ad, md, p);
          for (std::size_t r = 0; r < ad; ++r)
            for (std::size_t cc = 0; cc < md; ++cc) fd(r, cc) = f[src.offsets[d - lo] + r * md + cc];
          Matrix moved = A.variable_action(i, d + e) * fd;
          for (std::size_t r = 0; r < ad1; ++r)
            for (std::size_t cc = 0; cc < md; ++cc) g[tgt.offsets[d - lo] + r * md + cc] = moved(r, cc);
        }
        if (!tgt.solutions.contains(g)) throw InternalFault("dual action leaves Hom(M,A)");
        act.set_column(c, tgt.solutions.coordinates(g));
      }
      actions[i].push_back(std::move(act));
    }
  GradedModule full(m.ring_ptr(), e_lo_, std::move(dims), std::move(actions));
  module_ = std::make_shared<GradedModule>(full.trimmed());
}

const DualModule::Piece* DualModule::piece(int e) const {
  if (pieces_.empty() || e < e_lo_ || e >= e_lo_ + static_cast<int>(pieces_.size())) return nullptr;
  return &pieces_[e - e_lo_];
}

Matrix DualModule::component(int e, const Vector& coords, int d) const {
  const GradedAlgebra& A = original_.ring();
  Matrix out(A.dim(d + e), original_.dim(d), A.modulus());
  const Piece* pc = piece(e);
  if (pc == nullptr || out.empty()) return out;
  Vector f = pc->solutions.basis().apply(coords);
  std::size_t base = pc->offsets[d - original_.lo()];
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = f[base + r * out.cols() + c];
  return out;
}

Vector DualModule::coordinates(int e, const std::vector<Matrix>& components) const {
  const Piece* pc = piece(e);
  if (pc == nullptr) {
    for (const auto& c : components)
      if (!c.is_zero()) throw InternalFault("nonzero map outside the degree range of the dual");
    return {};
  }
  Vector f(pc->offsets.back(), 0);
  const int lo = original_.lo();
  for (int d = lo; d <= original_.hi(); ++d) {
    const Matrix& c = components.at(d - lo);
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t cc = 0; cc < c.cols(); ++cc) f[pc->offsets[d - lo] + r * c.cols() + cc] = c(r, cc);
  }
  if (!pc->solutions.contains(f)) throw InternalFault("family of components is not A-linear");
  return pc->solutions.coordinates(f);
}

GradedModule dual(const GradedModule& m) { return DualModule(m).module(); }

ModuleMap biduality_map(const GradedModule& m) {
  const GradedAlgebra& A = m.ring();
  DualModule d1(m);
  DualModule d2(d1.module());
  const GradedModule& mstar = d1.module();
  ModuleMap ev;
  ev.source = std::make_shared<GradedModule>(m);
  ev.target = d2.module_ptr();
  ev.shift = 0;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Matrix comp(ev.target->dim(d), m.dim(d), A.modulus());
    for (std::size_t j = 0; j < m.dim(d); ++j) {
      Vector unit(m.dim(d), 0);
      unit[j] = 1;
      std::vector<Matrix> family;
      for (int e = mstar.lo(); e <= mstar.hi(); ++e) {
        Matrix g(A.dim(e + d), mstar.dim(e), A.modulus());
        for (std::size_t c = 0; c < mstar.dim(e); ++c) {
          Vector fc(mstar.dim(e), 0);
          fc[c] = 1;
          if (g.rows() > 0) g.set_column(c, d1.component(e, fc, d).apply(unit));
        }
        family.push_back(std::move(g));
      }
      Vector coords = mstar.is_zero() ? Vector{} : d2.coordinates(d, family);
      if (!coords.empty()) comp.set_column(j, coords);
    }
    ev.components.push_back(std::move(comp));
  }
  return ev;
}

ResolutionData resolve(const GradedModule& m, int steps, const std::function<bool(const ResolutionData&)>& keep_going) {
  const AlgebraPtr& ring = m.ring_ptr();
  const GradedAlgebra& A = *ring;
  ResolutionData r;
  r.augmentation = minimal_generators(m);
  r.twists.push_back(r.augmentation.twists);
  if (r.augmentation.count() > kBettiLimit) throw PreconditionError("Betti number exceeds the growth limit at index 0");
  if (steps <= 0) return r;

  auto [lo, hi] = free_support(A, r.twists[0]);
  std::vector<Matrix> kernels;
  for (int d = lo; d <= hi; ++d) kernels.push_back(kernel_basis(cover_at_degree(m, r.augmentation, d)));

  for (int n = 1; n <= steps; ++n) {
    const Twists prev = r.twists.back();
    auto action = [&A, &prev](std::size_t i, int d) { return free_variable_action(A, prev, i, d); };
    Generators g = generators_of_submodule(action, A.num_vars(), lo, kernels);
    if (g.count() > kBettiLimit)
      throw PreconditionError("Betti number exceeds the growth limit " + std::to_string(kBettiLimit) + " at index " +
                              std::to_string(n) + "; the resolution is growing too fast to continue");
    r.diffs.push_back(FreeMap::from_columns(ring, g.twists, prev, 0, g.images));
    r.twists.push_back(g.twists);
    if (keep_going && !keep_going(r)) break;
    if (n == steps) break;
    std::tie(lo, hi) = free_support(A, g.twists);
    kernels.clear();
    for (int d = lo; d <= hi; ++d) kernels.push_back(kernel_basis(r.diffs.back().at_degree(d)));
  }
  return r;
}

namespace {

std::size_t ext_dim(const GradedAlgebra& A, const ResolutionData& r, std::size_t n) {
  FreeMap in = r.diffs[n - 1].transposed();  // F_{n-1}* -> F_n*
  FreeMap out = r.diffs[n].transposed();     // F_n* -> F_{n+1}*
  Twists star = dual_twists(r.twists[n]);
  auto [lo, hi] = free_support(A, star);
  std::size_t total = 0;
  for (int e = lo; e <= hi; ++e) {
    std::size_t dim = free_dim(A, star, e);
    if (dim == 0) continue;
    total += dim - rank(out.at_degree(e)) - rank(in.at_degree(e));
  }
  return total;
}

}  // namespace

std::vector<std::size_t> ext_against_ring(const GradedModule& m, int n_max, bool stop_at_nonzero,
                                          ResolutionData* resolution) {
  if (n_max < 1) throw std::invalid_argument("ext_against_ring needs n_max >= 1");
  std::vector<std::size_t> dims;
  const GradedAlgebra& A = m.ring();
  ResolutionData r = resolve(m, n_max + 1, [&](const ResolutionData& part) {
    std::size_t n = part.diffs.size() - 1;
    if (n == 0) return true;
    dims.push_back(ext_dim(A, part, n));
    return !(stop_at_nonzero && dims.back() != 0) && static_cast<int>(n) < n_max;
  });
  if (resolution != nullptr) *resolution = std::move(r);
  return dims;
}

std::string GdimCertificate::failure_summary() const {
  std::vector<std::string> parts;
  if (!reflexive) parts.push_back("not reflexive");
  auto first_nonzero = [](const std::vector<std::size_t>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return static_cast<int>(i) + 1;
    return 0;
  };
  if (!ext_M_vanishes) parts.push_back("Ext^" + std::to_string(first_nonzero(ext_M)) + "(M,A) != 0");
  if (!ext_Mdual_vanishes) parts.push_back("Ext^" + std::to_string(first_nonzero(ext_Mdual)) + "(M*,A) != 0");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return out;
}

GdimCertificate gdim_zero_check(const GradedModule& m, int window, ResolutionData* resolution_m,
                                ResolutionData* resolution_mdual) {
  if (window < 1) throw std::invalid_argument("gdim_zero_check needs window >= 1");
  GdimCertificate cert;
  cert.window = window;
  cert.reflexive = biduality_map(m).is_bijective();
  auto vanishes = [window](const std::vector<std::size_t>& v) {
    return static_cast<int>(v.size()) == window && std::all_of(v.begin(), v.end(), [](std::size_t x) { return x == 0; });
  };
  cert.ext_M = ext_against_ring(m, window, true, resolution_m);
  cert.ext_M_vanishes = vanishes(cert.ext_M);
  cert.ext_Mdual = ext_against_ring(dual(m), window, true, resolution_mdual);
  cert.ext_Mdual_vanishes = vanishes(cert.ext_Mdual);
  return cert;
}

GradedModule direct_sum(const GradedModule& m, const GradedModule& n) {
  if (m.is_zero()) return n;
  if (n.is_zero()) return m;
  const GradedAlgebra& A = m.ring();
  int lo = std::min(m.lo(), n.lo()), hi = std::max(m.hi(), n.hi());
  std::vector<std::size_t> dims;
  for (int d = lo; d <= hi; ++d) dims.push_back(m.dim(d) + n.dim(d));
  std::vector<std::vector<Matrix>> actions(A.num_vars());
  for (std::size_t i = 0; i < A.num_vars(); ++i)
    for (int d = lo; d < hi; ++d) {
      Matrix a(m.dim(d + 1) + n.dim(d + 1), m.dim(d) + n.dim(d), A.modulus());
      a.set_block(0, 0, m.action(i, d));
      a.set_block(m.dim(d + 1), m.dim(d), n.action(i, d));
      actions[i].push_back(std::move(a));
    }
  return GradedModule(m.ring_ptr(), lo, std::move(dims), std::move(actions));
}

GradedModule pushout(const ModuleMap& f, const ModuleMap& g) {
  if (f.shift != 0 || g.shift != 0) throw InternalFault("pushout needs degree-zero maps");
  const GradedModule& L = *f.source;
  const GradedModule& M = *f.target;
  const GradedModule& N = *g.target;
  const GradedAlgebra& A = M.ring();
  const Scalar p = A.modulus();
  if (M.is_zero() && N.is_zero()) return GradedModule::zero(M.ring_ptr());
  int lo = M.is_zero() ? N.lo() : (N.is_zero() ? M.lo() : std::min(M.lo(), N.lo()));
  int hi = M.is_zero() ? N.hi() : (N.is_zero() ? M.hi() : std::max(M.hi(), N.hi()));
  std::vector<QuotientSpace> q;
  std::vector<std::size_t> dims;
  for (int d = lo; d <= hi; ++d) {
    Matrix rel(M.dim(d) + N.dim(d), L.dim(d), p);
    rel.set_block(0, 0, f.component(d));
    Matrix gd = g.component(d);
    rel.set_block(M.dim(d), 0, gd.scaled(p - 1));
    q.emplace_back(rel, M.dim(d) + N.dim(d), p);
    dims.push_back(q.back().dim());
  }
  std::vector<std::vector<Matrix>> actions(A.num_vars());
  for (std::size_t i = 0; i < A.num_vars(); ++i)
    for (int d = lo; d < hi; ++d) {
      Matrix a(M.dim(d + 1) + N.dim(d + 1), M.dim(d) + N.dim(d), p);
      a.set_block(0, 0, M.action(i, d));
      a.set_block(M.dim(d + 1), M.dim(d), N.action(i, d));
      actions[i].push_back(q[d + 1 - lo].projection() * a * q[d - lo].section());
    }
  return GradedModule(M.ring_ptr(), lo, std::move(dims), std::move(actions)).trimmed();
}

GradedModule tensor_extend(const GradedModule& m1, const GradedAlgebra& a2, AlgebraPtr ring) {
  const std::size_t n1 = m1.ring().num_vars(), n2 = a2.num_vars();
  if (ring->num_vars() != n1 + n2 || ring->modulus() != a2.modulus() || ring->modulus() != m1.ring().modulus())
    throw InputError("tensor_extend: ring is not the tensor product of the given algebras");
  if (m1.is_zero()) return GradedModule::zero(ring);
  const Scalar p = ring->modulus();
  const int lo = m1.lo(), hi = m1.hi() + a2.top();
  // Offsets of the block M1_a (x) A2_{d-a} inside piece d.
  auto offsets = [&](int d) {
    std::vector<std::size_t> off{0};
    for (int a = m1.lo(); a <= m1.hi(); ++a) off.push_back(off.back() + m1.dim(a) * a2.dim(d - a));
    return off;
  };
  std::vector<std::size_t> dims;
  for (int d = lo; d <= hi; ++d) dims.push_back(offsets(d).back());
  std::vector<std::vector<Matrix>> actions(n1 + n2);
  for (int d = lo; d < hi; ++d) {
    auto src = offsets(d), tgt = offsets(d + 1);
    for (std::size_t i = 0; i < n1 + n2; ++i) {
      Matrix act(tgt.back(), src.back(), p);
      for (int a = m1.lo(); a <= m1.hi(); ++a) {
        const int b = d - a;
        const std::size_t k = static_cast<std::size_t>(a - m1.lo());
        if (m1.dim(a) == 0 || a2.dim(b) == 0) continue;
        if (i < n1) {
          if (a + 1 > m1.hi()) continue;
          act.set_block(tgt[k + 1], src[k], kronecker(m1.action(i, a), Matrix::identity(a2.dim(b), p)));
        } else {
          if (a2.dim(b + 1) == 0) continue;
          act.set_block(tgt[k], src[k], kronecker(Matrix::identity(m1.dim(a), p), a2.variable_action(i - n1, b)));
        }
      }
      actions[i].push_back(std::move(act));
    }
  }
  return GradedModule(std::move(ring), lo, std::move(dims), std::move(actions));
}

}  // namespace symgrowth
