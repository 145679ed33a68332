#pragma once

// Yetter-Drinfeld modules over finite permutation groups.

#include "nichols/exactfield.hpp"
#include "nichols/finitegroup.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nichols {

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A representation of the centralizer of the base point, given on some
/// elements that generate it.
struct Fiber
{
  std::size_t dim = 1;
  std::vector<std::pair<std::size_t, ExactMatrix>> images;  // (element, matrix)

  static Fiber character(const std::vector<std::pair<std::size_t, Cyclotomic>> &values);
};

class YDModule
{
public:
  YDModule() = default;
  /// Zero module.
  explicit YDModule(GroupPtr group);
  /// Homogeneous basis with the given degrees; actions of the group
  /// generators, extended to all elements.  Throws std::invalid_argument if
  /// the data is not a Yetter-Drinfeld module.
  YDModule(GroupPtr group, std::vector<std::size_t> degrees, const std::vector<ExactMatrix> &generator_action);
  /// Same, with the action of every group element already known.
  static YDModule from_actions(GroupPtr group, std::vector<std::size_t> degrees, std::vector<ExactMatrix> actions);

  const GroupPtr &group() const { return group_; }
  std::size_t dim() const { return degree_.size(); }
  bool is_zero() const { return degree_.empty(); }
  std::size_t degree(std::size_t basis) const { return degree_[basis]; }
  const std::vector<std::size_t> &degrees() const { return degree_; }
  /// Action of a group element (by index).
  const ExactMatrix &action(std::size_t h) const { return action_[h]; }

  /// Sorted distinct degrees.
  std::vector<std::size_t> support() const;
  /// Sorted class ids of the support.
  std::vector<std::size_t> support_classes() const;
  /// Basis indices of degree g.
  std::vector<std::size_t> component(std::size_t g) const;
  /// Minimal element of the support (the class representative when the
  /// support is one class).
  std::size_t base_point() const;

private:
  GroupPtr group_;
  std::vector<std::size_t> degree_;
  std::vector<ExactMatrix> action_;
};

/// kG (x)_{kG^g} fiber, transversal of minimal coset representatives.
YDModule induce(const GroupPtr &group, std::size_t g, const Fiber &fiber);

/// Scalar by which s acts on V_s; checked on every s in the support.
Cyclotomic q_scalar(const YDModule &v);

/// c(v (x) w) = deg(v).w (x) v as a matrix from V(x)W (index a*dimW+b) to
/// W(x)V (index c*dimV+a).
ExactMatrix braiding(const YDModule &v, const YDModule &w);

/// Left dual: (h.f)(v) = f(h^-1.v), functionals on V_s have degree s^-1.
YDModule dual(const YDModule &v);

YDModule direct_sum(const YDModule &v, const YDModule &w);
/// Diagonal action, degree of v(x)w is deg(v)deg(w); basis index a*dimW+b.
YDModule tensor(const YDModule &v, const YDModule &w);

struct GradedCharacter
{
  std::size_t class_id = 0;
  std::size_t base = 0;                // class representative
  std::vector<std::size_t> elements;   // centralizer, sorted
  std::vector<Cyclotomic> values;      // trace on the base fiber

  friend bool operator==(const GradedCharacter &a, const GradedCharacter &b);
  friend bool operator!=(const GradedCharacter &a, const GradedCharacter &b) { return !(a == b); }
};

/// Requires the support to be a single class.
GradedCharacter graded_character(const YDModule &v);
/// One character per class in the support, ordered by class id.
std::vector<GradedCharacter> graded_characters(const YDModule &v);

/// <chi, psi> over the centralizer.
Cyclotomic character_inner_product(const FiniteGroup &g, const GradedCharacter &a, const GradedCharacter &b);

bool is_isomorphic(const YDModule &v, const YDModule &w);

struct ClassPart
{
  std::size_t class_id = 0;
  std::size_t base = 0;
  std::size_t fiber_dim = 0;
  Cyclotomic norm;  // <chi, chi>
};

struct IrreducibilityReport
{
  bool irreducible = false;
  std::vector<ClassPart> parts;
};

IrreducibilityReport irreducibility(const YDModule &v);
bool is_irreducible(const YDModule &v);

struct QValue
{
  std::size_t class_id = 0;
  Cyclotomic q;
  std::size_t multiplicity = 0;  // dimension of the eigenspace in the base fiber
};
/// Eigenvalues of each class representative on its fiber.  Every
/// irreducible constituent supported on that class has one of these as q.
std::vector<QValue> constituent_q_values(const YDModule &v);

/// (Z/N)^theta as a permutation group on N*theta points with generator k
/// cycling block k.
GroupPtr diagonal_group(unsigned order, std::size_t theta);
/// Element index of sum_k e[k] * generator_k in diagonal_group.
std::size_t diagonal_element(const FiniteGroup &g, unsigned order, const std::vector<long> &exponents);
/// One-dimensional modules M_j of degree g_j with g_i acting on M_j by
/// z_N^{p[i][j]}, so that c(x_i (x) x_j) = z_N^{p[i][j]} x_j (x) x_i.
std::vector<YDModule> diagonal_modules(unsigned order, const std::vector<std::vector<long>> &powers);

} // namespace nichols
