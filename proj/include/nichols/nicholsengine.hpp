#pragma once

// Braided operators on tensor powers of Yetter-Drinfeld modules, braided
// adjoint powers, Nichols-algebra dimensions, Cartan inference and the
// Cartan scheme C(M) of a tuple of irreducible modules.

#include "nichols/cartan.hpp"
#include "nichols/exactfield.hpp"
#include "nichols/weylgroupoid.hpp"
#include "nichols/ydmodule.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

/// Thrown when a tensor space exceeds the configured dimension guard.
class GuardExceeded : public std::length_error
{
public:
  using std::length_error::length_error;
};

struct EngineLimits
{
  std::size_t tensor_guard = 20000;  // largest tensor space handled
  std::size_t h_cap = 8;             // Cartan inference
  std::size_t degree_bound = 6;      // graded dimensions
};

/// Tensor powers of one module V.  A basis tensor v_{a_1} (x) ... (x) v_{a_n}
/// has key sum a_k dim^(n-k), slot 0 most significant.
class BraidedSpace
{
public:
  explicit BraidedSpace(const YDModule &v);

  std::size_t dim() const { return dim_; }
  const YDModule &module() const { return module_; }
  std::uint64_t key(const std::vector<std::size_t> &digits) const;
  std::vector<std::size_t> digits(std::uint64_t key, std::size_t slots) const;
  /// dim^slots, or GuardExceeded if it does not fit in 63 bits.
  std::uint64_t space_size(std::size_t slots) const;

  /// c on slots (p, p+1), 0-based, of an element of V^(x)slots.
  SparseVector braid(const SparseVector &x, std::size_t slots, std::size_t p) const;
  /// S_{m-1,1} on the first m slots.
  SparseVector shuffle(const SparseVector &x, std::size_t slots, std::size_t m) const;
  /// S_m on the first m slots.
  SparseVector symmetrize(const SparseVector &x, std::size_t slots, std::size_t m) const;
  /// T_n on n+1 slots.
  SparseVector t_apply(const SparseVector &x, std::size_t n) const;

private:
  YDModule module_;
  std::size_t dim_ = 0;
  // column[a][b]: (c, x) with deg(v_a).v_b = sum x v_c
  std::vector<std::vector<std::vector<std::pair<std::size_t, Cyclotomic>>>> column_;
  mutable std::vector<std::uint64_t> power_;

  std::uint64_t power(std::size_t e) const;
};

struct BraidedOperator
{
  std::vector<std::size_t> slot_dims;  // tensor factors, left to right
  ExactMatrix matrix;
};

BraidedOperator shuffle_map(const YDModule &v, std::size_t n, const EngineLimits &limits = {});
BraidedOperator quantum_symmetrizer(const YDModule &v, std::size_t n, const EngineLimits &limits = {});
BraidedOperator t_operator(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits = {});
/// (S_n (x) id) T_n on V^(x)n (x) W.
BraidedOperator ad_operator(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits = {});

struct AdPower
{
  YDModule module;
  /// Image basis in the product basis of V^(x)n (x) W (index in the
  /// mixed radix dim V, ..., dim V, dim W).
  std::vector<SparseVector> basis;
};

/// (ad_c V)^n(W) as the image of (S_n (x) id) T_n with the inherited action
/// and grading.  The zero module when the image vanishes.
AdPower ad_power_image(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits = {});
YDModule ad_power(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits = {});
/// Same vanishing test without building the module.
bool ad_power_vanishes(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits = {});

struct YDTuple
{
  std::vector<YDModule> modules;

  std::size_t rank() const { return modules.size(); }
  const GroupPtr &group() const { return modules.at(0).group(); }
  /// Throws std::invalid_argument unless all entries are irreducible and
  /// share one group.
  void validate() const;
  std::vector<GradedCharacter> iso_key() const;
  YDModule sum() const;
};

/// z_N^{p_ij} realized over (Z/N)^theta.
YDTuple diagonal_tuple(unsigned order, const std::vector<std::vector<long>> &powers);

/// Human-readable label of an iso class: the class representative and the
/// character values on its centralizer.
std::string class_label(const FiniteGroup &g, const GradedCharacter &chi);

/// Exponent vectors gamma with |gamma| <= bound mapped to dim B(V)_gamma.
struct GradedDims
{
  std::size_t theta = 0;
  std::size_t bound = 0;
  std::map<IntVector, std::size_t> dims;

  std::size_t at(const IntVector &gamma) const;
  /// Sum over |gamma| = n.
  std::size_t total(std::size_t n) const;
};

GradedDims graded_dims(const YDTuple &m, std::size_t bound, const EngineLimits &limits = {});

struct CartanInference
{
  std::size_t h_cap = 0;
  /// a_ij, or nullopt if (ad M_i)^h(M_j) did not vanish within the cap.
  std::vector<std::vector<std::optional<long>>> entries;
  /// Reason for each undefined entry ("h_cap" or "tensor guard").
  std::vector<std::vector<std::string>> reasons;

  bool i_finite(std::size_t i) const;
  bool complete() const;
  /// Throws std::logic_error on undefined entries.
  IntMatrix matrix() const;
};

CartanInference infer_cartan(const YDTuple &m, const EngineLimits &limits = {});
/// Row i only; the other rows are left undefined.
CartanInference infer_cartan_row(const YDTuple &m, std::size_t i, const EngineLimits &limits = {});

struct ReflectionFailure
{
  std::string kind;  // "not i-finite", "reducible", "tensor guard"
  std::size_t i = 0;
  std::size_t j = 0;
  std::string message;
  std::optional<IrreducibilityReport> decomposition;
};

struct Reflection
{
  std::optional<YDTuple> tuple;
  std::optional<ReflectionFailure> failure;
  IntVector row;  // a_i1 .. a_itheta when defined
};

/// r_i(M): M_i -> M_i^*, M_j -> (ad M_i)^{-a_ij}(M_j).
Reflection reflect_tuple(const YDTuple &m, std::size_t i, const EngineLimits &limits = {});

struct SchemeCaps
{
  std::size_t max_objects = 256;
  EngineLimits limits;
  GroupoidCaps groupoid;
};

struct SchemeFinding
{
  std::string kind;  // "not i-finite", "reducible", "tensor guard", "object cap", "cartan invariance", "root label"
  std::size_t object = 0;
  std::vector<std::size_t> path;  // reflection indices from the start object
  std::size_t i = 0;
  std::size_t j = 0;
  std::string message;
};

struct LabeledRoot
{
  IntVector root;
  GradedCharacter label;
  std::size_t object = 0;  // source object of the morphism
  std::size_t index = 0;   // simple root there
};

struct SchemeBuildResult
{
  std::vector<YDTuple> objects;                 // registry, start object first
  std::vector<std::vector<std::size_t>> paths;  // shortest reflection path to each object
  std::vector<CartanInference> cartan;
  /// reflections[N][i], or nullopt where the reflection is unknown
  std::vector<std::vector<std::optional<std::size_t>>> reflections;
  bool complete = false;
  std::optional<CartanScheme> scheme;
  ValidityReport validity;
  std::optional<FinitenessReport> finiteness;
  std::vector<LabeledRoot> roots;  // positive real roots at the start object
  std::optional<RootAxiomReport> axioms;
  std::vector<SchemeFinding> findings;
};

SchemeBuildResult build_scheme(const YDTuple &m, const SchemeCaps &caps = {});

struct DimComparison
{
  IntVector gamma;      // degree for M
  IntVector image;      // s_i^M(gamma), degree for r_i(M)
  std::size_t dim = 0;  // dim K^M_gamma
  std::size_t reflected_dim = 0;
};

struct ConsistencyReport
{
  std::size_t i = 0;
  std::size_t bound = 0;
  IntVector row;  // a_i1 .. a_itheta
  std::vector<DimComparison> window;
  std::vector<DimComparison> mismatches;
  /// dim B(M_i)(k) and dim B(M_i^*)(k) for k <= bound
  std::vector<std::size_t> base_series, dual_series;
  std::optional<ReflectionFailure> failure;
  bool ok() const { return !failure && mismatches.empty() && base_series == dual_series; }
};

/// Compares the coinvariant dimensions dim K^M_gamma with
/// dim K^{r_i(M)}_{s_i(gamma)} for gamma, s_i(gamma) in N_0^theta with
/// |gamma|, |s_i(gamma)| <= bound, where B(V) = K (x) B(M_i) as graded spaces.
ConsistencyReport reflection_dim_consistency(const YDTuple &m, std::size_t i, std::size_t bound,
                                             const EngineLimits &limits = {});

/// dim K_gamma from the Hilbert series of B(V) and of B(M_i) (in direction alpha_i).
std::map<IntVector, long> coinvariant_dims(const GradedDims &dims, std::size_t i);

struct ScreenVerdict
{
  std::string screen;  // "stst", "double cosets", "simple group", "symmetric group"
  std::optional<std::size_t> i, j;
  bool pass = true;
  std::string verdict;
  std::string witness;
};

std::vector<ScreenVerdict> finiteness_screen(const YDTuple &m);
/// Same screens for the support classes alone (nontrivial classes expected).
std::vector<ScreenVerdict> finiteness_screen(const FiniteGroup &g, const std::vector<std::size_t> &classes);

struct PropertyFailure
{
  std::string property;  // "irreducible ad power", "root membership"
  std::size_t object = 0;
  std::size_t i = 0, j = 0, m = 0;
  std::string message;
};

/// On a finite build: for every object and i != j, each nonzero
/// (ad M_i)^m(M_j) with 0 <= m <= -a_ij is irreducible and
/// alpha_j + m alpha_i is a positive real root.
std::vector<PropertyFailure> ad_power_properties(const SchemeBuildResult &build, const EngineLimits &limits = {});

} // namespace nichols
