#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nichols/exactfield.hpp"

#include <random>

using namespace nichols;

namespace {

Cyclotomic random_element(std::mt19937 &rng, unsigned order)
{
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  std::vector<Rational> c(order);
  for (auto &x : c)
    x = Rational(num(rng), den(rng));
  return normalize(order, c);
}

ExactMatrix random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c, unsigned order,
                          int zero_bias)
{
  std::uniform_int_distribution<int> coin(0, 9), e(0, static_cast<int>(order) - 1), s(-2, 2);
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) >= zero_bias)
        m.set(i, j, Cyclotomic(s(rng)) * Cyclotomic::zeta(order, e(rng)) + Cyclotomic(s(rng)));
  return m;
}

// rank of a low-rank product, built so that rows are combinations
ExactMatrix low_rank(std::mt19937 &rng, std::size_t n, std::size_t k, unsigned order)
{
  return random_matrix(rng, n, k, order, 2) * random_matrix(rng, k, n, order, 2);
}

} // namespace

TEST_CASE("cyclotomic polynomials")
{
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<long>{1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<long>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  for (unsigned n = 1; n <= 60; ++n)
    CHECK(cyclotomic_polynomial(n).size() == euler_phi(n) + 1);
}

TEST_CASE("normalize")
{
  std::vector<Rational> c{1, 1, 1};
  CHECK(normalize(3, c).is_zero());
  CHECK(Cyclotomic::zeta(2) == Cyclotomic(-1));
  CHECK(Cyclotomic::zeta(2).coeffs() == std::vector<Rational>{-1});

  auto z6 = Cyclotomic::zeta(6);
  REQUIRE(z6.coeffs().size() == 2);
  CHECK(z6.coeffs()[0] == 0);
  CHECK(z6.coeffs()[1] == 1);

  std::vector<Rational> none;
  CHECK_THROWS_AS(normalize(0, none), std::invalid_argument);

  // 1 + z5 + ... + z5^4 = 0
  std::vector<Rational> five(5, Rational(1));
  CHECK(normalize(5, five).is_zero());
  CHECK(Cyclotomic::zeta(6, 2) == Cyclotomic::zeta(3));
  CHECK(Cyclotomic::zeta(4, 2) == Cyclotomic(-1));
  CHECK(Cyclotomic::zeta(8).pow(8).is_one());
}

TEST_CASE("galois conjugation")
{
  CHECK(galois_conjugate(Cyclotomic::zeta(3)) == Cyclotomic::zeta(3, 2));
  CHECK(galois_conjugate(Cyclotomic(Rational(5, 2))) == Cyclotomic(Rational(5, 2)));
  CHECK(galois_conjugate(Cyclotomic::zeta(4)) == -Cyclotomic::zeta(4));

  std::mt19937 rng(7);
  for (unsigned order : {3u, 4u, 5u, 7u, 8u, 9u, 12u}) {
    for (int t = 0; t < 20; ++t) {
      auto x = random_element(rng, order), y = random_element(rng, order);
      CHECK(galois_conjugate(galois_conjugate(x)) == x);
      CHECK(galois_conjugate(x * y) == galois_conjugate(x) * galois_conjugate(y));
      CHECK(galois_conjugate(x + y) == galois_conjugate(x) + galois_conjugate(y));
    }
  }
}

TEST_CASE("field operations")
{
  std::mt19937 rng(11);
  for (unsigned order : {1u, 2u, 3u, 5u, 6u, 8u, 10u, 15u}) {
    for (int t = 0; t < 20; ++t) {
      auto x = random_element(rng, order), y = random_element(rng, order),
           z = random_element(rng, order);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      if (!x.is_zero())
        CHECK((x * x.inverse()).is_one());
      if (!y.is_zero())
        CHECK((x / y) * y == x);
    }
  }
}

TEST_CASE("multiplication commutes with normalization")
{
  // products of unreduced power sums
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (unsigned order : {4u, 6u, 7u, 9u, 12u}) {
    for (int t = 0; t < 15; ++t) {
      std::vector<Rational> a(order), b(order);
      for (auto &x : a)
        x = d(rng);
      for (auto &x : b)
        x = d(rng);
      std::vector<Rational> ab(2 * order - 1, Rational(0));
      for (unsigned i = 0; i < order; ++i)
        for (unsigned j = 0; j < order; ++j)
          ab[i + j] += a[i] * b[j];
      CHECK(normalize(order, ab) == normalize(order, a) * normalize(order, b));
    }
  }
}

TEST_CASE("mixed orders")
{
  auto z3 = Cyclotomic::zeta(3), z4 = Cyclotomic::zeta(4);
  auto p = z3 * z4;
  CHECK(p.order() == 12);
  CHECK(p == Cyclotomic::zeta(12, 7));
  CHECK(z3.lifted(6) == Cyclotomic::zeta(6, 2));
  CHECK_THROWS(z3.lifted(4));
  CHECK(Cyclotomic(3).lifted(7) == Cyclotomic(3));
  CHECK(Cyclotomic::zeta(12, 3).root_of_unity_exponent() == 3u);
  CHECK_FALSE((Cyclotomic::zeta(12) + Cyclotomic(1)).root_of_unity_exponent().has_value());
}

TEST_CASE("str")
{
  CHECK(Cyclotomic(Rational(-1, 2)).str() == "-1/2");
  CHECK((Cyclotomic(1) + Cyclotomic(2) * Cyclotomic::zeta(8, 3)).str() == "1 + 2*z8^3");
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("rank, kernel, image")
{
  auto i3 = ExactMatrix::identity(3);
  auto r = rank_kernel_image(i3);
  CHECK(r.rank == 3);
  CHECK(r.kernel_basis.empty());

  auto ones = ExactMatrix::from_rows({{1, 1}, {1, 1}});
  r = rank_kernel_image(ones);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel_basis.size() == 1);
  CHECK(r.kernel_basis[0][0] == -r.kernel_basis[0][1]);
  CHECK(ones.apply(r.kernel_basis[0]) == std::vector<Cyclotomic>(2));

  auto z = ExactMatrix::from_rows({{Cyclotomic(1) + Cyclotomic::zeta(2), 0}, {0, 1}});
  CHECK(rank(z) == 1);

  CHECK(rank(ExactMatrix(0, 4)) == 0);
  CHECK(rank_kernel_image(ExactMatrix(2, 3)).kernel_basis.size() == 3);
}

TEST_CASE("rank properties on random matrices")
{
  std::mt19937 rng(2024);
  for (unsigned order : {1u, 3u, 4u, 5u, 8u}) {
    for (int t = 0; t < 8; ++t) {
      auto a = random_matrix(rng, 4 + t % 3, 5, order, 4);
      auto res = rank_kernel_image(a);
      CHECK(res.rank + res.kernel_basis.size() == a.cols());
      CHECK(res.rank == rank(a.transpose()));
      for (const auto &k : res.kernel_basis)
        CHECK(a.apply(k) == std::vector<Cyclotomic>(a.rows()));
      CHECK(res.image_basis.size() == res.rank);
    }
    for (int t = 0; t < 4; ++t) {
      auto a = low_rank(rng, 6, 2, order);
      CHECK(rank(a) <= 2);
      CHECK(rank(a) == rank(a.transpose()));
    }
  }
}

TEST_CASE("rank is preserved by field embedding")
{
  std::mt19937 rng(99);
  for (unsigned order : {2u, 3u, 4u, 6u}) {
    for (unsigned k : {2u, 3u, 5u}) {
      auto a = low_rank(rng, 5, 3, order);
      CHECK(rank(a) == rank(a.lifted(order * k)));
    }
  }
}

TEST_CASE("echelon basis")
{
  EchelonBasis b;
  SparseVector u{{0, Cyclotomic(2)}, {3, Cyclotomic(1)}};
  SparseVector v{{1, Cyclotomic::zeta(3)}, {3, Cyclotomic(1)}};
  SparseVector w = axpy(u, Cyclotomic::zeta(3, 2), v);
  CHECK(b.insert(u));
  CHECK(b.insert(v));
  CHECK_FALSE(b.insert(w));
  CHECK(b.rank() == 2);
  CHECK(b.contains(w));
  CHECK_FALSE(b.contains(SparseVector{{3, Cyclotomic(1)}}));
  b.make_reduced();
  auto coords = b.coordinates(w);
  REQUIRE(coords.has_value());
  SparseVector back;
  for (std::size_t i = 0; i < b.rank(); ++i)
    back = axpy(back, (*coords)[i], b.vectors()[i]);
  CHECK(back == w);
  CHECK_FALSE(b.coordinates(SparseVector{{2, Cyclotomic(1)}}).has_value());
}
