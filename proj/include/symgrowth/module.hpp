/**
 * Finite-dimensional graded modules over a GradedAlgebra, stored
 * extensionally: a dimension per degree and one matrix per variable and
 * degree. Duals, syzygies, pushouts and Ext against A are computed with
 * degreewise linear algebra on this data.
 */
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symgrowth/algebra.hpp"
#include "symgrowth/free_map.hpp"
#include "symgrowth/linalg.hpp"

namespace symgrowth {

/// Cokernel presentation F_1 -> F_0, kept alongside a module built from it.
struct Presentation {
  Twists rows;  // twists of F_0
  Twists cols;  // twists of F_1
  std::vector<std::vector<Polynomial>> entries;  // entries[i][j]
};

class GradedModule {
 public:
  GradedModule() = default;
  /// actions[i][k] is x_i : M_{lo+k} -> M_{lo+k+1}, for k < dims.size() - 1.
  GradedModule(AlgebraPtr ring, int lo, std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> actions);

  static GradedModule zero(AlgebraPtr ring);

  const GradedAlgebra& ring() const { return *ring_; }
  const AlgebraPtr& ring_ptr() const { return ring_; }

  /// Degree range [lo, hi]; pieces outside are zero. Empty module: hi < lo.
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int d) const;
  std::size_t total_dim() const;
  std::vector<std::size_t> dims() const { return dims_; }
  bool is_zero() const { return total_dim() == 0; }

  /// x_i : M_d -> M_{d+1}; a correctly sized zero matrix outside the stored range.
  Matrix action(std::size_t i, int d) const;
  /// The monomial x^e acting M_d -> M_{d+|e|}.
  Matrix monomial_action(const Exponent& e, int d) const;
  /// The element r of A_deg acting M_d -> M_{d+deg}.
  Matrix element_action(const Vector& r, int deg, int d) const;
  /// Columns b.v for the standard monomials b of degree k, where v lies in M_a.
  Matrix orbit(const Vector& v, int a, int k) const;

  /// M(s), with M(s)_d = M_{d+s}.
  GradedModule twisted(int s) const;
  /// Same module with zero pieces removed from both ends of the range.
  GradedModule trimmed() const;

  /// Checks commutation of the actions and that every relation of A acts as zero.
  std::optional<std::string> check_axioms() const;

  const std::optional<Presentation>& presentation() const { return presentation_; }
  void set_presentation(Presentation p) { presentation_ = std::move(p); }

 private:
  AlgebraPtr ring_;
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> actions_;
  std::optional<Presentation> presentation_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

/// A homogeneous A-linear map sending M_d to N_{d+shift}.
struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  int shift = 0;
  std::vector<Matrix> components;  // indexed by d - source->lo()

  Matrix component(int d) const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  /// Commutation with every variable action; returns a description of the first failure.
  std::optional<std::string> check_equivariance() const;
};

/// The free module A(-a_1) + ... + A(-a_r) as a GradedModule.
GradedModule free_module(AlgebraPtr ring, const Twists& twists);

/**
 * coker(F_1 -> F_0) for a matrix of homogeneous polynomials. Entry (i, j)
 * must be zero or homogeneous of degree cols[j] - rows[i]; otherwise throws
 * InputError.
 */
GradedModule from_presentation(AlgebraPtr ring, const Twists& rows, const Twists& cols,
                               const std::vector<std::vector<Polynomial>>& entries);

/// Homogeneous generators: images[j] is an element of degree twists[j].
struct Generators {
  Twists twists;
  std::vector<Vector> images;
  std::size_t count() const { return twists.size(); }
};

/**
 * Minimal homogeneous generators of the submodule with the given basis in
 * each degree (bases[d - lo] has columns in the ambient piece of degree d).
 * Lowest degree first, then basis order.
 */
Generators generators_of_submodule(const std::function<Matrix(std::size_t, int)>& ambient_action, std::size_t nvars,
                                   int lo, const std::vector<Matrix>& bases);

/// A basis of M/mM lifted to M, lowest degree first.
Generators minimal_generators(const GradedModule& m);

/// The map F_d -> M_d from the free module on the generators.
Matrix cover_at_degree(const GradedModule& m, const Generators& g, int d);

/// The submodule with the given basis per degree, with its inclusion.
std::pair<GradedModule, ModuleMap> submodule(ModulePtr ambient, int lo, const std::vector<Matrix>& bases);

struct Syzygy {
  GradedModule module;
  ModuleMap inclusion;  // into the free module on `cover`
  Generators cover;
};

/// The kernel of the minimal cover F_0 -> M.
Syzygy syzygy(const GradedModule& m);

/// A minimal presentation F_1 -> F_0 -> M -> 0, read off the minimal cover and its syzygy.
Presentation minimal_presentation(const GradedModule& m);

/**
 * Hom_A(M, A) with its degree-e piece made of the A-linear maps sending M_d
 * into A_{d+e}. Keeps the data needed to evaluate its elements.
 */
class DualModule {
 public:
  explicit DualModule(const GradedModule& m);

  const GradedModule& module() const { return *module_; }
  const ModulePtr& module_ptr() const { return module_; }
  const GradedModule& original() const { return original_; }

  /// The component M_d -> A_{d+e} of the element with coordinates `coords` in degree e.
  Matrix component(int e, const Vector& coords, int d) const;

  /// Coordinates of a family of components (one per degree of M) describing a map of degree e.
  /// Throws InternalFault when the family is not an A-linear map.
  Vector coordinates(int e, const std::vector<Matrix>& components) const;

 private:
  struct Piece {
    std::vector<std::size_t> offsets;  // of f_d inside the unknown vector, d = lo..hi+1
    Subspace solutions;
  };
  const Piece* piece(int e) const;

  GradedModule original_;
  int e_lo_ = 0;
  std::vector<Piece> pieces_;
  ModulePtr module_;
};

/// Hom_A(M, A).
GradedModule dual(const GradedModule& m);

/// The evaluation map M -> M**.
ModuleMap biduality_map(const GradedModule& m);

struct GdimCertificate {
  bool reflexive = false;
  bool ext_M_vanishes = false;
  bool ext_Mdual_vanishes = false;
  int window = 0;
  std::vector<std::size_t> ext_M;      // possibly truncated at the first nonzero value
  std::vector<std::size_t> ext_Mdual;

  bool passed() const { return reflexive && ext_M_vanishes && ext_Mdual_vanishes; }
  /// Names the failed conditions, e.g. "not reflexive; Ext^1(M,A) != 0".
  std::string failure_summary() const;
};

GradedModule direct_sum(const GradedModule& m, const GradedModule& n);

/// (M + N) / {(f(l), -g(l))} for degree-zero maps f: L -> M and g: L -> N.
GradedModule pushout(const ModuleMap& f, const ModuleMap& g);

/// M1 (x)_k A2 as a module over `ring`, which must be tensor_algebra(A1, A2).
GradedModule tensor_extend(const GradedModule& m1, const GradedAlgebra& a2, AlgebraPtr ring);

/// Raw data of a minimal free resolution F_0 <- F_1 <- ... <- F_steps.
struct ResolutionData {
  Generators augmentation;        // generators of M: the cover F_0 -> M
  std::vector<Twists> twists;     // twists[n] of F_n
  std::vector<FreeMap> diffs;     // diffs[n - 1] = d_n : F_n -> F_{n-1}
};

/// Betti numbers above this bound abort a resolution.
inline constexpr std::size_t kBettiLimit = 10000;

/**
 * Minimal free resolution up to F_steps. `keep_going` is consulted after each
 * new differential and may stop the computation early.
 */
ResolutionData resolve(const GradedModule& m, int steps,
                       const std::function<bool(const ResolutionData&)>& keep_going = {});

/// Total dimensions of Ext^n_A(M, A) for n = 1..n_max. With stop_at_nonzero
/// the table ends at the first nonzero entry.
std::vector<std::size_t> ext_against_ring(const GradedModule& m, int n_max, bool stop_at_nonzero = false,
                                          ResolutionData* resolution = nullptr);

/**
 * Window-bounded G-dimension zero test: reflexivity plus vanishing of
 * Ext^n(M, A) and Ext^n(M*, A) for 1 <= n <= window. The resolutions of M
 * and M* computed on the way are stored through the optional pointers; they
 * reach index window + 1 when the corresponding Ext window vanishes.
 */
GdimCertificate gdim_zero_check(const GradedModule& m, int window, ResolutionData* resolution_m = nullptr,
                                ResolutionData* resolution_mdual = nullptr);

}  // namespace symgrowth
