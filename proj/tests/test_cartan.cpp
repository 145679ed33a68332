#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nichols/cartan.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <map>
#include <set>

using namespace nichols;

namespace {

// simple roots in doubled Euclidean coordinates
using Roots = std::vector<IntVector>;

IntVector e(std::size_t dim, std::initializer_list<std::pair<std::size_t, long>> terms)
{
  IntVector v(dim, 0);
  for (auto [k, c] : terms)
    v[k - 1] += c;
  return v;
}

Roots catalog_roots(char family, std::size_t n)
{
  Roots r;
  switch (family) {
  case 'A':
    for (std::size_t i = 1; i <= n; ++i)
      r.push_back(e(n + 1, {{i, 2}, {i + 1, -2}}));
    break;
  case 'B':
    for (std::size_t i = 1; i < n; ++i)
      r.push_back(e(n, {{i, 2}, {i + 1, -2}}));
    r.push_back(e(n, {{n, 2}}));
    break;
  case 'C':
    for (std::size_t i = 1; i < n; ++i)
      r.push_back(e(n, {{i, 2}, {i + 1, -2}}));
    r.push_back(e(n, {{n, 4}}));
    break;
  case 'D':
    for (std::size_t i = 1; i < n; ++i)
      r.push_back(e(n, {{i, 2}, {i + 1, -2}}));
    r.push_back(e(n, {{n - 1, 2}, {n, 2}}));
    break;
  case 'E': {
    Roots e8{{1, -1, -1, -1, -1, -1, -1, 1}, e(8, {{1, 2}, {2, 2}}), e(8, {{2, 2}, {1, -2}}),
             e(8, {{3, 2}, {2, -2}}),        e(8, {{4, 2}, {3, -2}}), e(8, {{5, 2}, {4, -2}}),
             e(8, {{6, 2}, {5, -2}}),        e(8, {{7, 2}, {6, -2}})};
    r.assign(e8.begin(), e8.begin() + static_cast<long>(n));
    break;
  }
  case 'F':
    r = {e(4, {{2, 2}, {3, -2}}), e(4, {{3, 2}, {4, -2}}), e(4, {{4, 2}}), IntVector{1, -1, -1, -1}};
    break;
  case 'G':
    r = {e(3, {{1, 2}, {2, -2}}), e(3, {{1, -4}, {2, 2}, {3, 2}})};
    break;
  }
  return r;
}

long dot(const IntVector &a, const IntVector &b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0L); }

IntMatrix catalog_matrix(char family, std::size_t n)
{
  auto r = catalog_roots(family, n);
  IntMatrix a(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = 2 * dot(r[i], r[j]) / dot(r[i], r[i]);
  return a;
}

IntMatrix permuted(const IntMatrix &a, const std::vector<std::size_t> &p)
{
  IntMatrix b(a.size(), IntVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      b[p[i]][p[j]] = a[i][j];
  return b;
}

// real-root closure under simple reflections; nullopt if it exceeds the cap
std::optional<std::size_t> root_closure_size(const IntMatrix &a, std::size_t cap = 2000)
{
  std::size_t n = a.size();
  std::set<IntVector> roots;
  std::vector<IntVector> queue;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector v(n, 0);
    v[i] = 1;
    roots.insert(v);
    queue.push_back(v);
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVector v = queue[q];
      long pairing = 0;
      for (std::size_t j = 0; j < n; ++j)
        pairing += a[i][j] * v[j];
      v[i] -= pairing;
      if (roots.insert(v).second) {
        queue.push_back(v);
        if (roots.size() > cap)
          return std::nullopt;
      }
    }
  }
  return roots.size();
}

} // namespace

TEST_CASE("validate_gcm")
{
  CHECK(validate_gcm({{2, -1}, {-1, 2}}).ok());
  auto r = validate_gcm({{2, 0}, {-1, 2}});
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].axiom == "M2");
  CHECK(r.violations[0].i == 0);
  CHECK(r.violations[0].j == 1);
  r = validate_gcm({{2, 1}, {-1, 2}});
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].axiom == "M1");
  CHECK(r.violations[0].i == 0);
  CHECK(r.violations[0].j == 1);
  CHECK(validate_gcm({{1, 0}, {0, 2}}).violations[0].axiom == "M1");
  CHECK_THROWS(validate_gcm({{2, -1}}));
}

TEST_CASE("reflection_matrix")
{
  auto a2 = CartanScheme::standard({{2, -1}, {-1, 2}});
  auto s1 = reflection_matrix(a2, 0, 0);
  CHECK(s1 * IntVector{1, 0} == IntVector{-1, 0});
  CHECK(s1 * IntVector{0, 1} == IntVector{1, 1});

  auto a1a1 = CartanScheme::standard({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  CHECK(reflection_matrix(a1a1, 0, 1) == IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});

  auto b2 = CartanScheme::standard({{2, -2}, {-1, 2}});
  CHECK(reflection_matrix(b2, 0, 0) * IntVector{0, 1} == IntVector{2, 1});

  CHECK_THROWS(reflection_matrix(a2, 1, 0));
  CHECK_THROWS(reflection_matrix(a2, 0, 2));

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 0);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 2 + t % 3;
    IntMatrix a(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a[i][j] = i == j ? 2 : d(rng);
    for (std::size_t i = 0; i < n; ++i) {
      auto s = reflection_matrix(a, i);
      CHECK(determinant(s) == -1);
      CHECK(s * s == int_identity(n));
      for (std::size_t j = 0; j < n; ++j)
        CHECK(s[i][j] == (i == j ? -1 : -a[i][j]));
    }
  }
}

TEST_CASE("validate_scheme")
{
  CHECK(validate_scheme(CartanScheme::standard({{2, -1}, {-1, 2}})).ok());

  CartanScheme two;
  two.rank = 2;
  two.ids = {"P", "Q"};
  two.cartan = {{{2, -1}, {-2, 2}}, {{2, -1}, {-2, 2}}};
  two.reflections = {{1, 0}, {0, 1}};
  CHECK(validate_scheme(two).ok());
  for (std::size_t n = 0; n < 2; ++n)
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(reflection_matrix(two, n, i) * reflection_matrix(two, two.reflections[n][i], i) == int_identity(2));

  auto bad = two;
  bad.cartan[1] = {{2, -2}, {-2, 2}};
  auto r = validate_scheme(bad);
  REQUIRE_FALSE(r.ok());
  bool c2 = std::any_of(r.violations.begin(), r.violations.end(), [](const auto &v) { return v.axiom == "C2"; });
  CHECK(c2);

  auto nc1 = two;
  nc1.ids.push_back("R");
  nc1.cartan.push_back(two.cartan[0]);
  nc1.reflections = {{1, 0}, {2, 1}, {0, 2}};
  r = validate_scheme(nc1);
  CHECK(std::any_of(r.violations.begin(), r.violations.end(), [](const auto &v) { return v.axiom == "C1"; }));

  auto dangling = two;
  dangling.reflections[0][0] = 5;
  CHECK_THROWS(validate_scheme(dangling));
}

TEST_CASE("finite type examples")
{
  auto r = finite_type_classify({{2, -1}, {-1, 2}});
  CHECK(r.finite);
  CHECK(r.labels == std::vector<std::string>{"A2"});
  CHECK_FALSE(finite_type_classify({{2, -2}, {-2, 2}}).finite);
  r = finite_type_classify({{2, -1}, {-3, 2}});
  CHECK(r.finite);
  CHECK(r.labels == std::vector<std::string>{"G2"});
  r = finite_type_classify({{2, 0}, {0, 2}});
  CHECK(r.labels == std::vector<std::string>{"A1", "A1"});
  CHECK(finite_type_classify({{2, -2}, {-1, 2}}).labels == std::vector<std::string>{"B2"});
}

TEST_CASE("catalog recognition under permutations")
{
  struct Entry
  {
    char family;
    std::size_t n;
    std::string label;
  };
  std::vector<Entry> cat;
  for (std::size_t n = 1; n <= 8; ++n)
    cat.push_back({'A', n, "A" + std::to_string(n)});
  cat.push_back({'B', 2, "B2"});
  for (std::size_t n = 3; n <= 8; ++n) {
    cat.push_back({'B', n, "B" + std::to_string(n)});
    cat.push_back({'C', n, "C" + std::to_string(n)});
  }
  for (std::size_t n = 4; n <= 8; ++n)
    cat.push_back({'D', n, "D" + std::to_string(n)});
  for (std::size_t n = 6; n <= 8; ++n)
    cat.push_back({'E', n, "E" + std::to_string(n)});
  cat.push_back({'F', 4, "F4"});
  cat.push_back({'G', 2, "G2"});

  // classical positive root counts
  std::map<std::string, std::size_t> total{{"E6", 72}, {"E7", 126}, {"E8", 240}, {"F4", 48}, {"G2", 12}};

  std::mt19937 rng(17);
  for (const auto &c : cat) {
    auto a = catalog_matrix(c.family, c.n);
    REQUIRE(validate_gcm(a).ok());
    for (int t = 0; t < 5; ++t) {
      std::vector<std::size_t> p(c.n);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      auto r = finite_type_classify(permuted(a, p));
      CHECK(r.finite);
      CHECK(r.labels == std::vector<std::string>{c.label});
    }
    if (c.n <= 6 || total.count(c.label)) {
      auto sz = root_closure_size(a);
      REQUIRE(sz.has_value());
      if (total.count(c.label))
        CHECK(*sz == total[c.label]);
    }
  }
  // B and C are transposes of each other
  for (std::size_t n = 3; n <= 6; ++n) {
    auto b = catalog_matrix('B', n);
    IntMatrix bt(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        bt[i][j] = b[j][i];
    CHECK(bt == catalog_matrix('C', n));
    CHECK(*root_closure_size(b) == 2 * n * n);
  }
}

TEST_CASE("classification agrees with root closure on random matrices")
{
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coin(0, 3), val(1, 3);
  int finite_seen = 0, infinite_seen = 0;
  for (int t = 0; t < 400; ++t) {
    std::size_t n = 2 + t % 3;
    IntMatrix a(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      a[i][i] = 2;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng) != 0) {
          a[i][j] = -val(rng) / (coin(rng) == 0 ? 1 : val(rng));
          a[j][i] = a[i][j] == 0 ? 0 : -(coin(rng) < 2 ? 1 : val(rng));
          if (a[i][j] == 0)
            a[j][i] = 0;
        }
    REQUIRE(validate_gcm(a).ok());
    bool closure_finite = root_closure_size(a).has_value();
    auto r = finite_type_classify(a);
    CHECK(r.finite == closure_finite);
    (closure_finite ? finite_seen : infinite_seen)++;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(finite_type_classify(permuted(a, p)).labels.size() == r.labels.size());
  }
  CHECK(finite_seen > 20);
  CHECK(infinite_seen > 20);
}
