#pragma once

// Permutation groups given by full element enumeration.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nichols {

class Perm
{
public:
  Perm() = default;
  /// 0-based images; throws std::invalid_argument if not a bijection.
  explicit Perm(std::vector<std::uint32_t> images);

  static Perm identity(std::size_t degree);
  /// Cycle notation with 1-based points: "(12)(34)", "(1 2 10)", "(1,2)".
  /// "()" and "e" denote the identity.
  static Perm parse(const std::string &text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t> &images() const { return images_; }

  Perm inverse() const;
  bool is_identity() const;
  unsigned order() const;
  std::vector<std::uint32_t> moved_points() const;
  std::string str() const;

  /// (p*q)(x) = p(q(x)).
  friend Perm operator*(const Perm &p, const Perm &q);
  friend bool operator==(const Perm &a, const Perm &b) { return a.images_ == b.images_; }
  friend bool operator!=(const Perm &a, const Perm &b) { return !(a == b); }
  friend bool operator<(const Perm &a, const Perm &b) { return a.images_ < b.images_; }

private:
  std::vector<std::uint32_t> images_;
};

struct PermHash
{
  std::size_t operator()(const Perm &p) const;
};

/// Fixed element order: by element order, then number of moved points,
/// then the moved points, then the images.
bool canonical_less(const Perm &a, const Perm &b);

struct ConjugacyClass
{
  std::size_t representative = 0;       // minimal member
  std::vector<std::size_t> members;     // sorted element indices
};

class FiniteGroup
{
public:
  static constexpr std::size_t default_cap = 1000000;

  static FiniteGroup from_generators(std::size_t degree, std::vector<Perm> generators,
                                     std::size_t cap = default_cap);

  const std::string &name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm> &generators() const { return generators_; }
  const std::vector<std::size_t> &generator_indices() const { return generator_index_; }

  const Perm &element(std::size_t i) const { return elements_[i]; }
  const std::vector<Perm> &elements() const { return elements_; }
  std::optional<std::size_t> find(const Perm &p) const;
  std::size_t index_of(const Perm &p) const;
  static constexpr std::size_t identity() { return 0; }

  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  /// x g x^-1
  std::size_t conj(std::size_t x, std::size_t g) const { return mul(mul(x, g), inv(x)); }
  bool commute(std::size_t a, std::size_t b) const { return mul(a, b) == mul(b, a); }
  bool is_abelian() const;

  const std::vector<ConjugacyClass> &classes() const { return classes_; }
  std::size_t class_of(std::size_t element) const { return class_of_[element]; }
  /// Centralizer of the representative, sorted element indices.
  const std::vector<std::size_t> &centralizer(std::size_t class_id) const;
  /// Centralizer of an arbitrary element.
  std::vector<std::size_t> centralizer_of(std::size_t g) const;

  /// Subgroup generated by the given elements, sorted indices.
  std::vector<std::size_t> generated_subgroup(const std::vector<std::size_t> &gens) const;

private:
  struct Impl;
  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<std::size_t> generator_index_;
  std::vector<Perm> elements_;
  std::vector<std::size_t> inverse_;
  std::vector<std::uint32_t> table_;  // multiplication table for small groups
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::shared_ptr<Impl> impl_;
};

/// Named groups: "S<n>", "A<n>", "D<n>" (order 2n), "C<n>"/"Z<n>", "trivial".
FiniteGroup builtin_group(const std::string &name);

struct ConjugacyData
{
  std::size_t representative;
  std::size_t size;
  std::size_t centralizer_order;
};
std::vector<ConjugacyData> conjugacy_data(const FiniteGroup &g);

/// On failure the witness is the first noncommuting (s, t) in the fixed
/// element order.
bool classes_commute(const FiniteGroup &g, std::size_t c1, std::size_t c2,
                     std::optional<std::pair<std::size_t, std::size_t>> *witness = nullptr);
/// Unordered pairs (a <= b) of nontrivial commuting classes.
std::vector<std::pair<std::size_t, std::size_t>> commuting_class_pairs(const FiniteGroup &g);

struct StstResult
{
  bool pass = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (s, t)
};
/// (st)^2 = (ts)^2 for all s in class c1, t in class c2.
StstResult stst_condition(const FiniteGroup &g, std::size_t c1, std::size_t c2);

struct DoubleCoset
{
  std::size_t representative;
  std::size_t size;
  bool noncommuting;  // x g x^-1 does not commute with h
};
struct DoubleCosetAnalysis
{
  std::vector<DoubleCoset> cosets;
  std::size_t noncommuting_count = 0;
};
/// Double cosets G^h x G^g.
DoubleCosetAnalysis double_coset_analysis(const FiniteGroup &g, std::size_t g_elt, std::size_t h_elt);

bool is_nonabelian_simple(const FiniteGroup &g);
/// n if the group is isomorphic to the symmetric group S_n, n >= 2.
std::optional<unsigned> symmetric_degree(const FiniteGroup &g);

} // namespace nichols
