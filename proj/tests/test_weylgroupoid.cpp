#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nichols/weylgroupoid.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace nichols;

namespace {

const IntMatrix A2{{2, -1}, {-1, 2}};
const IntMatrix B2{{2, -2}, {-1, 2}};
const IntMatrix G2{{2, -1}, {-3, 2}};
const IntMatrix A1A1{{2, 0}, {0, 2}};
const IntMatrix AFF{{2, -2}, {-2, 2}};
const IntMatrix A3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
const IntMatrix B3{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};

CartanScheme two_objects(const IntMatrix &a, std::vector<std::size_t> r0, std::vector<std::size_t> r1)
{
  CartanScheme c;
  c.rank = a.size();
  c.ids = {"P", "Q"};
  c.cartan = {a, a};
  c.reflections = {std::move(r0), std::move(r1)};
  return c;
}

IntMatrix compose_word(const CartanScheme &c, const Word &w)
{
  IntMatrix m = int_identity(c.rank);
  for (auto [obj, i] : w)
    m = reflection_matrix(c, obj, i) * m;
  return m;
}

// Weyl group orbit of the simple roots by plain reflections
std::size_t classical_positive_count(const IntMatrix &a)
{
  std::set<IntVector> seen;
  std::vector<IntVector> q;
  for (std::size_t i = 0; i < a.size(); ++i) {
    IntVector v(a.size(), 0);
    v[i] = 1;
    seen.insert(v);
    q.push_back(v);
  }
  for (std::size_t k = 0; k < q.size(); ++k)
    for (std::size_t i = 0; i < a.size(); ++i) {
      IntVector v = q[k];
      long p = 0;
      for (std::size_t j = 0; j < a.size(); ++j)
        p += a[i][j] * v[j];
      v[i] -= p;
      if (seen.insert(v).second)
        q.push_back(v);
    }
  return seen.size() / 2;
}

} // namespace

TEST_CASE("generate on standard schemes")
{
  auto d = generate(CartanScheme::standard(A2), 0);
  CHECK(d.complete());
  CHECK(d.positive_roots[0] == std::vector<IntVector>{{1, 0}, {0, 1}, {1, 1}});
  CHECK(d.morphisms.size() == 6);

  // positive roots and Weyl group orders
  struct Case
  {
    IntMatrix a;
    std::size_t roots, order;
  };
  for (const auto &k : std::vector<Case>{{A2, 3, 6}, {B2, 4, 8}, {G2, 6, 12}, {A1A1, 2, 4}, {A3, 6, 24}, {B3, 9, 48}}) {
    auto g = generate(CartanScheme::standard(k.a), 0);
    CHECK(g.complete());
    CHECK(g.positive_roots[0].size() == k.roots);
    CHECK(g.positive_roots[0].size() == classical_positive_count(k.a));
    CHECK(g.morphisms.size() == k.order);
  }
}

TEST_CASE("generate is deterministic and words are consistent")
{
  auto c = CartanScheme::standard(G2);
  auto a = generate(c, 0), b = generate(c, 0);
  CHECK(a.positive_roots == b.positive_roots);
  REQUIRE(a.morphisms.size() == b.morphisms.size());
  for (std::size_t k = 0; k < a.morphisms.size(); ++k) {
    CHECK(a.morphisms[k].word == b.morphisms[k].word);
    CHECK(compose_word(c, a.morphisms[k].word) == a.morphisms[k].matrix);
    if (k > 0)
      CHECK(a.morphisms[k - 1].word.size() <= a.morphisms[k].word.size());
  }
}

TEST_CASE("caps yield partial results")
{
  GroupoidCaps caps;
  caps.max_roots = 50;
  auto d = generate(CartanScheme::standard(AFF), 0, caps);
  CHECK_FALSE(d.complete());
  CHECK_FALSE(d.note.empty());

  // a chain of objects longer than the cap
  CartanScheme chain;
  chain.rank = 1;
  for (std::size_t k = 0; k < 10; ++k) {
    chain.ids.push_back("N" + std::to_string(k));
    chain.cartan.push_back({{2}});
    chain.reflections.push_back({k ^ 1});
  }
  caps = {};
  caps.max_objects = 1;
  CHECK_FALSE(generate(chain, 0, caps).objects_complete);
  caps.max_objects = 2;
  CHECK(generate(chain, 0, caps).objects_complete);
}

TEST_CASE("verify_root_system")
{
  auto c = CartanScheme::standard(A2);
  auto rep = verify_root_system(c, {{{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}}});
  CHECK(rep.ok());
  REQUIRE(rep.exponents.size() == 1);
  CHECK(rep.exponents[0].m == 3);

  rep = verify_root_system(c, {{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}});
  REQUIRE_FALSE(rep.ok());
  auto it = std::find_if(rep.failures.begin(), rep.failures.end(), [](const auto &f) { return f.axiom == "R3"; });
  REQUIRE(it != rep.failures.end());
  CHECK(it->witness == IntVector{1, 1});

  rep = verify_root_system(c, {{{1, 0}, {0, 1}, {1, 1}, {2, 0}, {-1, 0}, {0, -1}, {-1, -1}, {-2, 0}}});
  CHECK(std::any_of(rep.failures.begin(), rep.failures.end(), [](const auto &f) { return f.axiom == "R2"; }));

  rep = verify_root_system(c, {{{1, 0}, {0, 1}, {1, -1}, {-1, 0}, {0, -1}, {-1, 1}}});
  CHECK(std::any_of(rep.failures.begin(), rep.failures.end(), [](const auto &f) { return f.axiom == "R1"; }));

  CHECK_THROWS(verify_root_system(c, {}));

  for (const auto &[a, m] : std::vector<std::pair<IntMatrix, std::size_t>>{{A2, 3}, {B2, 4}, {G2, 6}, {A1A1, 2}}) {
    auto s = CartanScheme::standard(a);
    auto g = generate(s, 0);
    auto r = verify_root_system(s, with_negatives(g.positive_roots));
    CHECK(r.ok());
    REQUIRE(r.exponents.size() == 1);
    CHECK(r.exponents[0].m == m);
  }
}

TEST_CASE("two-object schemes")
{
  // r_1 and r_2 both swap: a valid finite root system
  auto c = two_objects(A1A1, {1, 1}, {0, 0});
  REQUIRE(validate_scheme(c).ok());
  auto d = generate(c, 0);
  CHECK(d.complete());
  CHECK(verify_root_system(c, with_negatives(d.positive_roots)).ok());
  std::map<std::size_t, std::size_t> hom;
  for (const auto &m : d.morphisms)
    hom[m.target]++;
  CHECK(hom[0] == hom[1]);
  auto e = generate(c, 1);
  std::map<std::size_t, std::size_t> hom1;
  for (const auto &m : e.morphisms)
    hom1[m.target]++;
  CHECK(hom1 == hom);

  // composing with the inverse word gives the identity
  for (const auto &m : d.morphisms) {
    Word inv;
    std::size_t obj = m.target;
    for (auto it = m.word.rbegin(); it != m.word.rend(); ++it) {
      inv.emplace_back(obj, it->second);
      obj = c.reflections[obj][it->second];
    }
    CHECK(obj == m.source);
    CHECK(compose_word(c, inv) * m.matrix == int_identity(2));
  }

  // only r_1 swaps: (r_1 r_2)^3 moves the object, so (R4) fails
  auto bad = two_objects(A2, {1, 0}, {0, 1});
  REQUIRE(validate_scheme(bad).ok());
  auto g = generate(bad, 0);
  auto rep = verify_root_system(bad, with_negatives(g.positive_roots));
  CHECK(std::any_of(rep.failures.begin(), rep.failures.end(), [](const auto &f) { return f.axiom == "R4"; }));
}

TEST_CASE("morphisms map real roots onto real roots")
{
  for (const auto &a : {A2, B2, G2, A3, B3}) {
    auto c = CartanScheme::standard(a);
    auto d = generate(c, 0);
    auto full = with_negatives(d.positive_roots);
    std::set<IntVector> roots(full[0].begin(), full[0].end());
    for (const auto &m : d.morphisms) {
      std::set<IntVector> img;
      for (const auto &r : roots)
        img.insert(m.matrix * r);
      CHECK(img == roots);
    }
  }
}

TEST_CASE("rank-2 infinite witness")
{
  CHECK(eta1(2) * eta2(2) == IntMatrix{{3, -2}, {2, -1}});
  auto cert = rank2_infinite_witness(CartanScheme::standard(AFF));
  REQUIRE(cert.has_value());
  REQUIRE(cert->products.size() == 1);
  CHECK(cert->products[0].product == IntMatrix{{3, -2}, {2, -1}});
  CHECK(cert->products[0].shape);

  CHECK_FALSE(rank2_infinite_witness(CartanScheme::standard({{2, -1}, {-4, 2}})).has_value());
  CHECK_FALSE(rank2_infinite_witness(CartanScheme::standard(A1A1)).has_value());
  CHECK_THROWS(rank2_infinite_witness(CartanScheme::standard({{2}})));

  // two objects, one of them with a_12 = -1
  CartanScheme mixed;
  mixed.rank = 2;
  mixed.ids = {"P", "Q"};
  mixed.cartan = {{{2, -2}, {-3, 2}}, {{2, -1}, {-3, 2}}};
  mixed.reflections = {{0, 1}, {1, 0}};
  CHECK_FALSE(rank2_infinite_witness(mixed).has_value());

  // products of shaped matrices keep the shape
  auto p = eta1(3) * eta2(2) * eta1(2) * eta2(4);
  CHECK(semigroup_shape(p));
}

TEST_CASE("finiteness_report")
{
  auto r = finiteness_report(CartanScheme::standard(A2));
  CHECK(r.verdict == Verdict::finite);
  CHECK(r.real_root_counts == std::vector<std::size_t>{3});
  CHECK(r.morphism_count == 6);
  REQUIRE(r.longest.has_value());
  CHECK(r.longest->length == 3);

  r = finiteness_report(CartanScheme::standard(AFF));
  CHECK(r.verdict == Verdict::infinite_witness);
  REQUIRE(r.witness.has_value());

  r = finiteness_report(CartanScheme::standard(A1A1));
  CHECK(r.verdict == Verdict::finite);
  CHECK(r.data.positive_roots[0] == std::vector<IntVector>{{1, 0}, {0, 1}});
  CHECK(r.longest->length == 2);

  // hyperbolic entries with one -1: no witness, closure does not terminate
  GroupoidCaps caps;
  caps.max_roots = 200;
  r = finiteness_report(CartanScheme::standard({{2, -1}, {-5, 2}}), 0, caps);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK_FALSE(r.note.empty());

  for (const auto &a : {B2, G2, A3, B3}) {
    auto rep = finiteness_report(CartanScheme::standard(a));
    CHECK(rep.verdict == Verdict::finite);
    REQUIRE(rep.longest.has_value());
    CHECK(rep.longest->length == rep.real_root_counts[0]);
  }
}
