#pragma once

// Weyl groupoid of a Cartan scheme: real roots, morphisms, root-system
// axioms and finiteness decisions.

#include "nichols/cartan.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nichols {

struct GroupoidCaps
{
  std::size_t max_objects = 1024;
  std::size_t max_roots = 10000;       // positive real roots per object
  std::size_t max_morphisms = 200000;  // hom-set enumeration from the start object
};

/// (object, index) steps; step k applies s_{index}^{object}.
using Word = std::vector<std::pair<std::size_t, std::size_t>>;

struct Morphism
{
  std::size_t source = 0;
  std::size_t target = 0;
  IntMatrix matrix;
  Word word;
};

struct GroupoidData
{
  std::size_t start = 0;
  std::vector<std::size_t> objects;  // reached objects in discovery order
  bool objects_complete = true;
  /// positive real roots indexed like the scheme objects; empty for unreached
  std::vector<std::vector<IntVector>> positive_roots;
  bool roots_complete = true;
  std::vector<Morphism> morphisms;  // Hom(start, -), shortest words in shortlex order
  bool morphisms_complete = true;
  std::string note;

  bool complete() const { return objects_complete && roots_complete; }
};

/// Sorted by height, then with earlier simple roots first.
bool root_less(const IntVector &a, const IntVector &b);

GroupoidData generate(const CartanScheme &c, std::size_t start, const GroupoidCaps &caps = {});

/// Objects reachable from start, breadth first with indices in increasing order.
std::vector<std::size_t> reachable_objects(const CartanScheme &c, std::size_t start,
                                           std::size_t max_objects, bool *complete = nullptr);

/// Applies the object maps of a word read right to left: r_{i_n} ... r_{i_1}(N).
std::size_t apply_reflections(const CartanScheme &c, std::size_t object, const std::vector<std::size_t> &indices);

/// Full root sets with negatives, indexed like the scheme objects.
std::vector<std::vector<IntVector>> with_negatives(const std::vector<std::vector<IntVector>> &positive);

struct RootAxiomFailure
{
  std::string axiom;  // "R1" .. "R4"
  std::size_t object = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  IntVector witness;  // offending vector
  std::string message;
};

struct RootAxiomReport
{
  std::vector<RootAxiomFailure> failures;
  /// (object, i, j, m_{i,j;N}) for i < j
  struct Exponent
  {
    std::size_t object, i, j, m;
  };
  std::vector<Exponent> exponents;
  bool ok() const { return failures.empty(); }
};

/// roots[N] is the full set Delta(N) for every object of the scheme.
RootAxiomReport verify_root_system(const CartanScheme &c, const std::vector<std::vector<IntVector>> &roots);

struct EtaProduct
{
  std::size_t object = 0;  // N
  long a1 = 0;             // -a_{ij}^{r_j(N)}
  long a2 = 0;             // -a_{ji}^N
  IntMatrix product;       // eta_1(a1) eta_2(a2)
  bool shape = false;      // [[a,-b],[c,-d]] with 0 < d < b < a
};

struct Rank2Certificate
{
  std::size_t i = 0, j = 1;
  std::vector<std::size_t> closure;  // objects reached by r_i, r_j
  std::vector<EtaProduct> products;
};

IntMatrix eta1(long a);
IntMatrix eta2(long a);
bool semigroup_shape(const IntMatrix &m);

/// Certificate that Hom is infinite when a_{ij}, a_{ji} <= -2 on the whole
/// {r_i, r_j}-closure of start.  Throws if the rank is below 2.
std::optional<Rank2Certificate> rank2_infinite_witness(const CartanScheme &c, std::size_t start = 0,
                                                        std::size_t i = 0, std::size_t j = 1,
                                                        std::size_t max_objects = 1024);

enum class Verdict
{
  finite,
  infinite_witness,
  inconclusive
};
std::string verdict_name(Verdict v);

struct LongestElement
{
  Morphism morphism;
  std::size_t length = 0;
};

struct FinitenessReport
{
  Verdict verdict = Verdict::inconclusive;
  std::size_t object_count = 0;
  std::size_t morphism_count = 0;
  std::vector<std::size_t> real_root_counts;  // per reached object, positive roots
  std::optional<LongestElement> longest;
  std::optional<Rank2Certificate> witness;
  std::string note;
  GroupoidData data;
};

FinitenessReport finiteness_report(const CartanScheme &c, std::size_t start = 0, const GroupoidCaps &caps = {});

} // namespace nichols
