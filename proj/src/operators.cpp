#include "symgrowth/operators.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "symgrowth/errors.hpp"

namespace symgrowth {

namespace {

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

// Solves (sum over l of mu * f_l, mu of degree e - deg f_l) = target in B_e.
class CofactorSystem {
 public:
  CofactorSystem(const CIStructure& ci, Scalar p, int e) : ci_(ci), p_(p), e_(e) {
    monomials_ = monomials_of_degree(ci.num_vars, e);
    for (std::size_t k = 0; k < monomials_.size(); ++k) index_[monomials_[k]] = k;
    std::vector<Vector> columns;
    for (std::size_t l = 0; l < ci.relations.size(); ++l) {
      const int dl = e - ci.degrees[l];
      offsets_.push_back(columns.size());
      if (dl < 0) continue;
      for (const Exponent& mu : monomials_of_degree(ci.num_vars, dl)) {
        cofactor_monomials_.push_back(mu);
        Polynomial prod = Polynomial::monomial(mu, 1, p) * ci.relations[l];
        Vector col(monomials_.size(), 0);
        for (const auto& [ex, c] : prod.terms()) col[index_.at(ex)] = c;
        columns.push_back(std::move(col));
      }
    }
    offsets_.push_back(columns.size());
    Matrix m(monomials_.size(), columns.size(), p);
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
    solver_.emplace(m);
  }

  std::optional<std::vector<Polynomial>> solve(const Polynomial& target) const {
    Vector b(monomials_.size(), 0);
    for (const auto& [ex, c] : target.terms()) {
      if (total_degree(ex) != e_) return std::nullopt;
      b[index_.at(ex)] = c;
    }
    auto x = solver_->solve(b);
    if (!x) return std::nullopt;
    std::vector<Polynomial> g;
    for (std::size_t l = 0; l < ci_.relations.size(); ++l) {
      Polynomial gl(ci_.num_vars, p_);
      for (std::size_t k = offsets_[l]; k < offsets_[l + 1]; ++k)
        if ((*x)[k] != 0) gl.add_term(cofactor_monomials_[k], (*x)[k]);
      g.push_back(std::move(gl));
    }
    return g;
  }

 private:
  const CIStructure& ci_;
  Scalar p_;
  int e_;
  std::vector<Exponent> monomials_;
  std::map<Exponent, std::size_t> index_;
  std::vector<Exponent> cofactor_monomials_;
  std::vector<std::size_t> offsets_;
  std::optional<LinearSolver> solver_;
};

PolyMatrix lift_map(const FreeMap& d) {
  const GradedAlgebra& a = d.ring();
  PolyMatrix out(d.rows(), std::vector<Polynomial>(d.cols(), Polynomial(a.num_vars(), a.modulus())));
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const int e = d.entry_degree(i, j);
      if (a.dim(e) > 0) out[i][j] = a.lift(d.entry(i, j), e);
    }
  return out;
}

Vector reduce(const GradedAlgebra& a, const Polynomial& f, int e) {
  if (a.dim(e) == 0) return {};
  return a.normal_form(f, e);
}

void check_relations_match(const GradedAlgebra& a, const CIStructure& ci) {
  if (ci.relations.size() != ci.degrees.size() || ci.num_vars != a.num_vars())
    throw PreconditionError("operators need the complete intersection structure of the ring of the complex");
  for (std::size_t l = 0; l < ci.relations.size(); ++l) {
    const Polynomial& f = ci.relations[l];
    if (f.degree() != ci.degrees[l] || !is_zero_vector(reduce(a, f, ci.degrees[l])))
      throw PreconditionError("relation " + std::to_string(l + 1) + " does not vanish in the ring of the complex");
  }
  // The relations lie in the ideal, so they generate it exactly when the quotients have the same Hilbert function.
  AlgebraPtr b = GradedAlgebra::build(ci.num_vars, a.modulus(), ci.relations);
  if (b->hilbert_function() != a.hilbert_function())
    throw PreconditionError("the complete intersection relations do not generate the ideal of the ring of the complex");
}

// Sum of c_l t_l at n as one k-linear map between total spaces (all internal degrees).
Matrix total_operator(const OperatorSet& ops, const std::vector<Scalar>& coeffs, int n) {
  const GradedAlgebra& a = ops.complex.ring();
  const Twists& src = ops.complex.twists(n);
  const Twists& tgt = ops.complex.twists(n - 2);
  auto [slo, shi] = free_support(a, src);
  auto [tlo, thi] = free_support(a, tgt);
  std::map<int, std::size_t> soff, toff;
  std::size_t ns = 0, nt = 0;
  for (int d = slo; d <= shi; ++d) soff[d] = ns, ns += free_dim(a, src, d);
  for (int d = tlo; d <= thi; ++d) toff[d] = nt, nt += free_dim(a, tgt, d);
  Matrix m(nt, ns, a.modulus());
  for (std::size_t l = 0; l < ops.count(); ++l) {
    if (coeffs[l] == 0) continue;
    const FreeMap& t = ops.at(l, n);
    for (int d = slo; d <= shi; ++d) {
      const int e = d + t.shift();
      if (free_dim(a, src, d) == 0 || !toff.count(e) || free_dim(a, tgt, e) == 0) continue;
      m.add_block(toff[e], soff[d], t.at_degree(d), coeffs[l]);
    }
  }
  return m;
}

std::optional<int> first_from(const std::vector<int>& indices, const std::function<bool(int)>& holds) {
  std::optional<int> first;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    if (!holds(*it)) break;
    first = *it;
  }
  return first;
}

void check_coeffs(const OperatorSet& ops, const std::vector<Scalar>& coeffs) {
  if (coeffs.size() != ops.count())
    throw PreconditionError("eta needs " + std::to_string(ops.count()) + " coefficients, got " +
                            std::to_string(coeffs.size()));
}

// Lifts g : X -> F_{j-1} through d : F_j -> F_{j-1}; image of g must lie in the image of d.
FreeMap lift_through(const FreeMap& d, const FreeMap& g) {
  std::vector<Vector> images;
  for (std::size_t col = 0; col < g.cols(); ++col) {
    const int deg = g.source()[col] + g.shift();
    auto x = solve(d.at_degree(deg), g.column_element(col));
    if (!x) throw InternalFault("chain map lift failed: the image is not a boundary");
    images.push_back(std::move(*x));
  }
  return FreeMap::from_columns(d.ring_ptr(), g.source(), d.source(), g.shift(), images);
}

}  // namespace

const FreeMap& OperatorSet::at(std::size_t l, int n) const {
  if (l >= count() || !has(n)) throw InternalFault("operator index out of range");
  return t[l][n - lo()];
}

GradedModule residue_field(const AlgebraPtr& ring) {
  return GradedModule(ring, 0, {1}, std::vector<std::vector<Matrix>>(ring->num_vars()));
}

OperatorSet lift_and_decompose(const FreeComplex& c, const CIStructure& ci) {
  const GradedAlgebra& a = c.ring();
  const Scalar p = a.modulus();
  check_relations_match(a, ci);
  if (c.hi() - c.lo() + 1 < 4) throw PreconditionError("operators need a window of at least 4 indices");

  OperatorSet ops;
  ops.complex = c;
  ops.ci = ci;
  for (int n = c.lo() + 1; n <= c.hi(); ++n) ops.lifted.push_back(lift_map(c.diff(n)));

  const std::size_t nrel = ci.relations.size();
  ops.t.assign(nrel, {});
  ops.cofactors.assign(nrel, {});
  std::map<int, CofactorSystem> systems;
  for (int n = c.lo() + 2; n <= c.hi(); ++n) {
    const PolyMatrix& upper = ops.lifted[n - c.lo() - 2];  // d_{n-1}
    const PolyMatrix& lower = ops.lifted[n - c.lo() - 1];  // d_n
    const Twists& src = c.twists(n);
    const Twists& tgt = c.twists(n - 2);
    const Twists& mid = c.twists(n - 1);
    std::vector<FreeMap> tn;
    for (std::size_t l = 0; l < nrel; ++l) tn.emplace_back(c.ring_ptr(), src, tgt, -ci.degrees[l]);
    std::vector<PolyMatrix> gn(nrel, PolyMatrix(tgt.size(), std::vector<Polynomial>(src.size(), Polynomial(ci.num_vars, p))));

    for (std::size_t i = 0; i < tgt.size(); ++i)
      for (std::size_t j = 0; j < src.size(); ++j) {
        Polynomial sq(ci.num_vars, p);
        for (std::size_t k = 0; k < mid.size(); ++k) sq = sq + upper[i][k] * lower[k][j];
        if (sq.is_zero()) continue;
        const int e = src[j] - tgt[i];
        auto it = systems.find(e);
        if (it == systems.end()) it = systems.emplace(e, CofactorSystem(ci, p, e)).first;
        auto g = it->second.solve(sq);
        if (!g)
          throw InternalFault("lifted square at index " + std::to_string(n) +
                              " is not in the ideal of relations (entry " + std::to_string(i) + "," +
                              std::to_string(j) + ")");
        Polynomial check(ci.num_vars, p);
        for (std::size_t l = 0; l < nrel; ++l) check = check + (*g)[l] * ci.relations[l];
        if (!(check == sq)) throw InternalFault("cofactor decomposition does not reproduce the lifted square");
        for (std::size_t l = 0; l < nrel; ++l) {
          tn[l].set_entry(i, j, reduce(a, (*g)[l], e - ci.degrees[l]));
          gn[l][i][j] = std::move((*g)[l]);
        }
      }
    for (std::size_t l = 0; l < nrel; ++l) {
      ops.t[l].push_back(std::move(tn[l]));
      ops.cofactors[l].push_back(std::move(gn[l]));
    }
  }

  for (int n = c.lo() + 3; n <= c.hi(); ++n) {
    for (std::size_t l = 0; l < nrel; ++l)
      if (!(c.diff(n - 2) * ops.at(l, n) == ops.at(l, n - 1) * c.diff(n)))
        throw InternalFault("operator " + std::to_string(l + 1) + " is not a chain map at index " + std::to_string(n));
    ops.chain_identity_checked.push_back(n);
  }

  for (std::size_t l = 0; l < nrel; ++l)
    for (std::size_t m = l + 1; m < nrel; ++m) {
      std::map<int, FreeMap> phi;
      for (int n = c.lo() + 4; n <= c.hi(); ++n)
        phi.emplace(n, ops.at(l, n - 2) * ops.at(m, n) - ops.at(m, n - 2) * ops.at(l, n));
      int witness = 0;
      auto h = solve_homotopy(c, phi, -4, &witness);
      if (!h)
        throw InternalFault("operators " + std::to_string(l + 1) + " and " + std::to_string(m + 1) +
                            " do not commute up to homotopy at index " + std::to_string(witness));
      for (int n : h->equations)
        if (std::find(ops.homotopy_equations.begin(), ops.homotopy_equations.end(), n) == ops.homotopy_equations.end())
          ops.homotopy_equations.push_back(n);
    }
  std::sort(ops.homotopy_equations.begin(), ops.homotopy_equations.end());
  return ops;
}

std::optional<Homotopy> solve_homotopy(const FreeComplex& c, const std::map<int, FreeMap>& phi, int degree,
                                       int* witness) {
  const GradedAlgebra& a = c.ring();
  const Scalar p = a.modulus();
  Homotopy out;
  if (phi.empty()) return out;
  const int shift = phi.begin()->second.shift();
  for (const auto& [n, f] : phi) {
    if (f.shift() != shift || f.source() != c.twists(n) || f.target() != c.twists(n + degree))
      throw InternalFault("homotopy data does not match the complex at index " + std::to_string(n));
    if (c.has_diff(n) && c.has_diff(n + degree + 1)) out.equations.push_back(n);
  }
  if (out.equations.empty()) return out;

  // h[n] : C_n -> C_{n+degree+1} for every n touched by an equation.
  std::vector<int> hidx;
  for (int n : out.equations) {
    if (std::find(hidx.begin(), hidx.end(), n - 1) == hidx.end()) hidx.push_back(n - 1);
    if (std::find(hidx.begin(), hidx.end(), n) == hidx.end()) hidx.push_back(n);
  }
  std::sort(hidx.begin(), hidx.end());
  std::map<int, FreeMap> h;
  std::map<int, std::vector<std::size_t>> unknown_offset;  // [n][i * cols + j]
  std::size_t unknowns = 0;
  for (int n : hidx) {
    FreeMap z(c.ring_ptr(), c.twists(n), c.twists(n + degree + 1), shift);
    std::vector<std::size_t> off(z.rows() * z.cols() + 1);
    for (std::size_t i = 0; i < z.rows(); ++i)
      for (std::size_t j = 0; j < z.cols(); ++j) {
        off[i * z.cols() + j] = unknowns;
        unknowns += a.dim(z.entry_degree(i, j));
      }
    off.back() = unknowns;
    unknown_offset[n] = std::move(off);
    h.emplace(n, std::move(z));
  }

  struct Block {
    std::size_t row;
    int n;
  };
  std::vector<Block> blocks;
  std::size_t rows = 0;
  for (int n : out.equations) {
    blocks.push_back({rows, n});
    const FreeMap& f = phi.at(n);
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < f.cols(); ++j) rows += a.dim(f.entry_degree(i, j));
  }
  if (static_cast<double>(rows) * static_cast<double>(unknowns + 1) > 4e7)
    throw PreconditionError("homotopy system too large (" + std::to_string(rows) + " x " + std::to_string(unknowns) +
                            ")");

  Matrix sys(rows, unknowns, p);
  Vector rhs(rows, 0);
  std::vector<std::size_t> block_end;
  for (const Block& b : blocks) {
    const int n = b.n;
    const FreeMap& f = phi.at(n);
    const FreeMap& dl = c.diff(n + degree + 1);  // C_{n+degree+1} -> C_{n+degree}
    const FreeMap& dr = c.diff(n);               // C_n -> C_{n-1}
    const FreeMap& hn = h.at(n);
    const FreeMap& hp = h.at(n - 1);
    const auto& on = unknown_offset.at(n);
    const auto& op = unknown_offset.at(n - 1);
    std::size_t r = b.row;
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < f.cols(); ++j) {
        const int e = f.entry_degree(i, j);
        const std::size_t dim = a.dim(e);
        if (dim == 0) continue;
        const Vector& target = f.entry(i, j);
        std::copy(target.begin(), target.end(), rhs.begin() + static_cast<std::ptrdiff_t>(r));
        for (std::size_t k = 0; k < dl.cols(); ++k) {
          const int de = dl.entry_degree(i, k), he = hn.entry_degree(k, j);
          if (a.dim(de) == 0 || a.dim(he) == 0 || is_zero_vector(dl.entry(i, k))) continue;
          sys.add_block(r, on[k * hn.cols() + j], a.multiplication_matrix(dl.entry(i, k), de, he));
        }
        for (std::size_t k = 0; k < dr.rows(); ++k) {
          const int de = dr.entry_degree(k, j), he = hp.entry_degree(i, k);
          if (a.dim(de) == 0 || a.dim(he) == 0 || is_zero_vector(dr.entry(k, j))) continue;
          sys.add_block(r, op[i * hp.cols() + k], a.multiplication_matrix(dr.entry(k, j), de, he));
        }
        r += dim;
      }
    block_end.push_back(r);
  }

  auto x = solve(sys, rhs);
  if (!x) {
    if (witness) {
      *witness = blocks.back().n;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::vector<std::size_t> idx(block_end[b]);
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        Vector sub(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(block_end[b]));
        if (!solve(sys.select_rows(idx), sub)) {
          *witness = blocks[b].n;
          break;
        }
      }
    }
    return std::nullopt;
  }
  for (auto& [n, z] : h) {
    const auto& off = unknown_offset.at(n);
    for (std::size_t i = 0; i < z.rows(); ++i)
      for (std::size_t j = 0; j < z.cols(); ++j) {
        const std::size_t k = i * z.cols() + j;
        z.set_entry(i, j, Vector(x->begin() + static_cast<std::ptrdiff_t>(off[k]),
                                 x->begin() + static_cast<std::ptrdiff_t>(off[k + 1])));
      }
  }
  out.h = std::move(h);
  return out;
}

Matrix constant_operator(const OperatorSet& ops, const std::vector<Scalar>& coeffs, int n) {
  check_coeffs(ops, coeffs);
  const Scalar p = ops.complex.ring().modulus();
  Matrix m(ops.complex.rank(n - 2), ops.complex.rank(n), p);
  for (std::size_t l = 0; l < ops.count(); ++l)
    if (coeffs[l] != 0) m.add_block(0, 0, ops.at(l, n).constant_part(), coeffs[l]);
  return m;
}

std::map<int, Matrix> induced_ext_action(const OperatorSet& ops, const std::vector<Scalar>& coeffs) {
  std::map<int, Matrix> out;
  for (int n = ops.lo(); n <= ops.hi(); ++n) out.emplace(n - 2, constant_operator(ops, coeffs, n).transposed());
  return out;
}

std::vector<int> ext_range(const OperatorSet& ops, int offset) {
  std::vector<int> out;
  for (int n = std::max(0, ops.lo() - 2 - offset); n + offset + 2 <= ops.hi(); ++n) out.push_back(n);
  return out;
}

std::vector<int> ext_tail(const OperatorSet& ops, int count, int offset) {
  std::vector<int> all = ext_range(ops, offset);
  if (static_cast<int>(all.size()) > count) all.erase(all.begin(), all.end() - count);
  return all;
}

bool ext_injective(const OperatorSet& ops, const std::vector<Scalar>& coeffs, int n) {
  return rank(constant_operator(ops, coeffs, n + 2)) == ops.complex.rank(n);
}

bool dual_ext_injective(const OperatorSet& dual_ops, const std::vector<Scalar>& coeffs, int n) {
  return rank(constant_operator(dual_ops, coeffs, n + 3)) == dual_ops.complex.rank(n + 1);
}

std::vector<Scalar> random_coefficients(std::uint64_t seed, int attempt, Scalar p, const std::vector<bool>& allowed) {
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
  std::vector<Scalar> c(allowed.size(), 0);
  for (std::size_t l = 0; l < allowed.size(); ++l)
    if (allowed[l]) c[l] = static_cast<Scalar>(rng() % (p - 1)) + 1;
  return c;
}

InjectivityVerdict eventual_injectivity(const OperatorSet& ops, const OperatorSet& dual_ops,
                                        const std::vector<Scalar>& coeffs, int tail, std::uint64_t seed,
                                        const std::vector<bool>& allowed) {
  check_coeffs(ops, coeffs);
  InjectivityVerdict v;
  v.tail_m = ext_tail(ops, tail);
  v.tail_mdual = ext_tail(dual_ops, tail, 1);
  std::vector<bool> mask = allowed.empty() ? std::vector<bool>(ops.count(), true) : allowed;
  const Scalar p = ops.complex.ring().modulus();

  auto works = [&](const std::vector<Scalar>& c) {
    for (int n : v.tail_m)
      if (!ext_injective(ops, c, n)) return false;
    for (int n : v.tail_mdual)
      if (!dual_ext_injective(dual_ops, c, n)) return false;
    return true;
  };
  std::vector<Scalar> c = coeffs;
  for (int attempt = 0; attempt <= kRetryBudget; ++attempt) {
    if (attempt > 0) c = random_coefficients(seed, attempt, p, mask);
    if (works(c)) {
      v.found = true;
      v.coeffs = c;
      v.attempts = attempt;
      break;
    }
  }
  if (!v.found) {
    v.attempts = kRetryBudget;
    return v;
  }
  v.first_injective_m = first_from(ext_range(ops), [&](int n) { return ext_injective(ops, v.coeffs, n); });
  v.first_injective_mdual = first_from(ext_range(dual_ops, 1), [&](int n) { return dual_ext_injective(dual_ops, v.coeffs, n); });
  return v;
}

bool chain_map_surjective(const OperatorSet& ops, const std::vector<Scalar>& coeffs, int n) {
  check_coeffs(ops, coeffs);
  Matrix m = total_operator(ops, coeffs, n + 2);
  return rank(m) == m.rows();
}

SurjectivityVerdict eventual_surjectivity_of_chainmap(const OperatorSet& ops, const std::vector<Scalar>& coeffs,
                                                      int tail) {
  SurjectivityVerdict v;
  v.tail = ext_tail(ops, tail);
  for (int n : v.tail) {
    const bool onto = chain_map_surjective(ops, coeffs, n);
    const bool inj = ext_injective(ops, coeffs, n);
    if (onto) v.surjective.push_back(n);
    if (inj) v.injective_ext.push_back(n);
    if (inj && !onto) v.implication_holds = false;
  }
  return v;
}

DualityVerdict duality_commutation_check(const OperatorSet& ops, const OperatorSet& dual_ops) {
  DualityVerdict v;
  const FreeComplex& d = dual_ops.complex;
  for (std::size_t l = 0; l < ops.count(); ++l) {
    std::map<int, FreeMap> phi;
    for (int m = dual_ops.lo(); m <= dual_ops.hi(); ++m) {
      if (!ops.has(2 - m)) continue;
      FreeMap diff = dual_ops.at(l, m) - ops.at(l, 2 - m).transposed();
      if (!diff.is_zero()) v.exact = false;
      phi.emplace(m, std::move(diff));
    }
    int witness = 0;
    auto h = solve_homotopy(d, phi, -2, &witness);
    if (!h) {
      v.pass = false;
      if (!v.witness || witness < *v.witness) v.witness = witness;
      continue;
    }
    for (int n : h->equations)
      if (std::find(v.equations.begin(), v.equations.end(), n) == v.equations.end()) v.equations.push_back(n);
  }
  std::sort(v.equations.begin(), v.equations.end());
  return v;
}

GenerationVerdict finite_generation_check(const OperatorSet& ops, int tail, int offset) {
  GenerationVerdict v;
  v.tail = ext_tail(ops, tail, offset);
  auto generated = [&](int n) {
    const int top = n + offset + 2;
    Matrix m(ops.complex.rank(top), 0, ops.complex.ring().modulus());
    for (std::size_t l = 0; l < ops.count(); ++l) m = Matrix::hstack(m, ops.at(l, top).constant_part().transposed());
    return rank(m) == ops.complex.rank(top);
  };
  for (int n : v.tail)
    if (!generated(n)) v.failures.push_back(n);
  v.pass = v.failures.empty() && !v.tail.empty();
  v.n0 = first_from(ext_range(ops, offset), generated);
  return v;
}

SignVerdict action_sign_check(const OperatorSet& ops, const std::vector<int>& indices) {
  SignVerdict v;
  const FreeComplex& c = ops.complex;
  const AlgebraPtr& ring = c.ring_ptr();
  Resolution fk = minimal_resolution(residue_field(ring), 4);
  OperatorSet kops = lift_and_decompose(fk.complex, ops.ci);
  const FreeComplex& f = fk.complex;

  for (int n : indices) {
    if (!c.has_diff(n + 1) || !c.has_diff(n + 2) || !ops.has(n + 2)) continue;
    v.checked.push_back(n);
    const Twists& cn = c.twists(n);
    for (std::size_t g = 0; g < cn.size(); ++g) {
      FreeMap theta0(ring, cn, f.twists(0), -cn[g]);
      theta0.set_entry(0, g, ring->one());
      FreeMap theta1 = lift_through(f.diff(1), theta0 * c.diff(n + 1));
      FreeMap theta2 = lift_through(f.diff(2), theta1 * c.diff(n + 2));
      for (std::size_t l = 0; l < ops.count(); ++l) {
        Matrix via_k = (kops.at(l, 2) * theta2).constant_part();
        Matrix via_m = ops.at(l, n + 2).constant_part().block(g, 0, 1, c.rank(n + 2));
        if (!(via_k == via_m)) {
          v.pass = false;
          if (!v.witness) v.witness = n;
        }
      }
    }
  }
  return v;
}

}  // namespace symgrowth
