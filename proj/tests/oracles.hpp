#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner.  Dense Kronecker products, explicit sums over S_n and
// the classical root-string algorithm; nothing here goes through the
// sparse braided-space code.

#include "nichols/nicholsengine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace oracle {

using namespace nichols;

inline ExactMatrix kron(const ExactMatrix &a, const ExactMatrix &b)
{
  ExactMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t rb = 0; rb < b.rows(); ++rb)
      for (const auto &[ca, x] : a.row(ra))
        for (const auto &[cb, y] : b.row(rb))
          out.set(ra * b.rows() + rb, ca * b.cols() + cb, x * y);
  return out;
}

inline ExactMatrix id(std::size_t n) { return ExactMatrix::identity(n); }

inline std::size_t ipow(std::size_t b, std::size_t e)
{
  std::size_t p = 1;
  while (e--)
    p *= b;
  return p;
}

// c on slots (p, p+1) of V^(x)n, from the 2-slot braiding matrix
inline ExactMatrix c_at(const ExactMatrix &c, std::size_t d, std::size_t n, std::size_t p)
{
  return kron(kron(id(ipow(d, p)), c), id(ipow(d, n - p - 2)));
}

// sum over S_n of the braid lifts of bubble-sort reduced words
inline ExactMatrix brute_symmetrizer(const YDModule &v, std::size_t n)
{
  const std::size_t d = v.dim();
  ExactMatrix c = braiding(v, v);
  std::vector<ExactMatrix> cs;
  for (std::size_t p = 0; p + 1 < n; ++p)
    cs.push_back(c_at(c, d, n, p));
  ExactMatrix sum(ipow(d, n), ipow(d, n));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    auto a = perm;
    ExactMatrix t = id(ipow(d, n));
    for (std::size_t pass = 0; pass < n; ++pass)
      for (std::size_t p = 0; p + 1 < n; ++p)
        if (a[p] > a[p + 1]) {
          std::swap(a[p], a[p + 1]);
          t = cs[p] * t;
        }
    sum += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

/// dim B(V)_gamma for |gamma| <= bound from ranks of the brute-force
/// symmetrizer restricted to each multidegree.  The tuple sum has basis
/// blocks M_1, ..., M_theta in order.
inline std::map<IntVector, std::size_t> kernel_dims(const YDTuple &m, std::size_t bound)
{
  YDModule v = m.sum();
  std::vector<std::size_t> block;
  for (std::size_t i = 0; i < m.rank(); ++i)
    block.insert(block.end(), m.modules[i].dim(), i);
  const std::size_t d = v.dim();
  std::map<IntVector, std::size_t> out;
  out[IntVector(m.rank(), 0)] = 1;
  for (std::size_t n = 1; n <= bound; ++n) {
    ExactMatrix s = brute_symmetrizer(v, n);
    std::map<IntVector, std::vector<std::size_t>> cols;
    for (std::size_t key = 0; key < ipow(d, n); ++key) {
      IntVector g(m.rank(), 0);
      for (std::size_t k = key, p = 0; p < n; ++p, k /= d)
        ++g[block[k % d]];
      cols[g].push_back(key);
    }
    ExactMatrix st = s.transpose();
    for (const auto &[g, keys] : cols) {
      ExactMatrix sub(keys.size(), st.cols());
      for (std::size_t r = 0; r < keys.size(); ++r)
        sub.set_row(r, st.row(keys[r]));
      out[g] = rank(sub);
    }
  }
  return out;
}

// dense helpers for the telescoping identity
using Dense = std::vector<Cyclotomic>;

inline Dense dense_kron(const Dense &a, const Dense &b)
{
  Dense out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero())
      for (std::size_t j = 0; j < b.size(); ++j)
        out[i * b.size() + j] = a[i] * b[j];
  return out;
}

// g acting diagonally on U^(x)k
inline Dense act(const YDModule &u, std::size_t g, const Dense &x, std::size_t k)
{
  ExactMatrix m = id(1);
  for (std::size_t s = 0; s < k; ++s)
    m = kron(m, u.action(g));
  return m.apply(x);
}

// ad_c v (x) = v (x) x - (g.x) (x) v for v of degree g
inline Dense ad(const YDModule &u, const Dense &v, std::size_t g, const Dense &x, std::size_t k)
{
  Dense a = dense_kron(v, x);
  Dense b = dense_kron(act(u, g, x, k), v);
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] -= b[i];
  return a;
}

inline Cyclotomic random_scalar(std::mt19937 &rng)
{
  std::uniform_int_distribution<int> d(-3, 3);
  int x = d(rng);
  return Cyclotomic(x == 0 ? 1 : x);
}

// random vector inside one homogeneous component of u, among indices [lo, hi)
inline std::pair<Dense, std::size_t> random_homogeneous(const YDModule &u, std::size_t lo, std::size_t hi,
                                                        std::mt19937 &rng)
{
  std::uniform_int_distribution<std::size_t> pick(lo, hi - 1);
  std::size_t g = u.degree(pick(rng));
  Dense v(u.dim());
  for (std::size_t b = lo; b < hi; ++b)
    if (u.degree(b) == g)
      v[b] = random_scalar(rng);
  return {v, g};
}

/// One random instance of
///   (S_n (x) id) T_n (v_1 (x) ... (x) v_n (x) w) = S_{n+1}(ad v_1 ... ad v_n (w))
/// in U = V + W, with homogeneous v_k in V and w in W.
inline bool telescoping_trial(const YDModule &v, const YDModule &w, std::size_t n, std::mt19937 &rng)
{
  YDModule u = direct_sum(v, w);
  const std::size_t du = u.dim();
  std::vector<std::pair<Dense, std::size_t>> vs;
  for (std::size_t k = 0; k < n; ++k)
    vs.push_back(random_homogeneous(u, 0, v.dim(), rng));
  Dense wv = random_homogeneous(u, v.dim(), du, rng).first;

  Dense x = wv;
  for (std::size_t k = n; k-- > 0;)
    x = ad(u, vs[k].first, vs[k].second, x, n - k);
  Dense rhs = quantum_symmetrizer(u, n + 1).matrix.apply(x);

  Dense input = {Cyclotomic(1)};
  for (std::size_t k = 0; k < n; ++k)
    input = dense_kron(input, Dense(vs[k].first.begin(), vs[k].first.begin() + v.dim()));
  input = dense_kron(input, Dense(wv.begin() + v.dim(), wv.end()));
  Dense lhs_local = ad_operator(v, w, n).matrix.apply(input);
  // local mixed radix (dim V, ..., dim V, dim W) into U^(x)(n+1)
  Dense lhs(ipow(du, n + 1));
  for (std::size_t key = 0; key < lhs_local.size(); ++key) {
    std::size_t rest = key, ukey = 0, mul = 1;
    std::size_t last = rest % w.dim();
    rest /= w.dim();
    ukey += (last + v.dim()) * mul;
    mul *= du;
    for (std::size_t k = 0; k < n; ++k) {
      ukey += (rest % v.dim()) * mul;
      rest /= v.dim();
      mul *= du;
    }
    lhs[ukey] = lhs_local[key];
  }
  return lhs == rhs;
}

/// Positive roots of a Cartan matrix of finite type by root strings:
/// beta + alpha_i is a root iff q > 0, where q - p = -<beta, alpha_i^vee>
/// and p is the length of the string below beta.  Stops at cap.
inline std::set<IntVector> classical_positive_roots(const IntMatrix &a, std::size_t cap = 1000)
{
  const std::size_t n = a.size();
  std::set<IntVector> roots;
  std::vector<IntVector> layer;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    roots.insert(e);
    layer.push_back(e);
  }
  while (!layer.empty() && roots.size() < cap) {
    std::vector<IntVector> next;
    for (const auto &b : layer)
      for (std::size_t i = 0; i < n; ++i) {
        long p = 0;
        for (IntVector c = b;;) {
          c[i] -= 1;
          if (c[i] < 0 || !roots.count(c))
            break;
          ++p;
        }
        long pairing = 0;
        for (std::size_t j = 0; j < n; ++j)
          pairing += a[i][j] * b[j];
        if (p - pairing > 0) {
          IntVector c = b;
          c[i] += 1;
          if (roots.insert(c).second)
            next.push_back(c);
        }
      }
    layer = std::move(next);
  }
  return roots;
}

} // namespace oracle
