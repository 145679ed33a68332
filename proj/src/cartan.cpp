#include "nichols/cartan.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nichols {

IntMatrix int_identity(std::size_t n)
{
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b)
{
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, IntVector(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k)
      throw std::invalid_argument("dimension mismatch in integer matrix product");
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j)
          c[i][j] += a[i][l] * b[l][j];
  }
  return c;
}

IntVector operator*(const IntMatrix &a, const IntVector &v)
{
  IntVector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size())
      throw std::invalid_argument("dimension mismatch in integer matrix-vector product");
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] += a[i][j] * v[j];
  }
  return out;
}

// Bareiss
long determinant(const IntMatrix &a)
{
  std::size_t n = a.size();
  if (n == 0)
    return 1;
  IntMatrix m = a;
  long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0)
        ++r;
      if (r == n)
        return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::string vector_string(const IntVector &v)
{
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string matrix_string(const IntMatrix &a)
{
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << (i ? "," : "") << "[";
    for (std::size_t j = 0; j < a[i].size(); ++j)
      os << (j ? "," : "") << a[i][j];
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

void check_square(const IntMatrix &a)
{
  for (const auto &row : a)
    if (row.size() != a.size())
      throw std::invalid_argument("Cartan matrix must be square");
}

std::string pos(std::size_t i, std::size_t j)
{
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

} // namespace

ValidityReport validate_gcm(const IntMatrix &a)
{
  check_square(a);
  ValidityReport r;
  std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && a[i][i] != 2) {
        r.violations.push_back({"M1", "", i, j, "diagonal entry at " + pos(i, j) + " is " + std::to_string(a[i][j])});
        return r;
      }
      if (i != j && a[i][j] > 0) {
        r.violations.push_back({"M1", "", i, j, "positive off-diagonal entry at " + pos(i, j)});
        return r;
      }
      if (i != j && a[i][j] == 0 && a[j][i] != 0) {
        r.violations.push_back({"M2", "", i, j, "a" + pos(i, j) + " = 0 but a" + pos(j, i) + " = " +
                                                     std::to_string(a[j][i])});
        return r;
      }
    }
  return r;
}

std::optional<std::size_t> CartanScheme::find(const std::string &id) const
{
  for (std::size_t k = 0; k < ids.size(); ++k)
    if (ids[k] == id)
      return k;
  return std::nullopt;
}

std::size_t CartanScheme::object(const std::string &id) const
{
  auto k = find(id);
  if (!k)
    throw std::invalid_argument("unknown object '" + id + "'");
  return *k;
}

CartanScheme CartanScheme::standard(const IntMatrix &a, const std::string &id)
{
  check_square(a);
  CartanScheme c;
  c.rank = a.size();
  c.ids = {id};
  c.cartan = {a};
  c.reflections = {std::vector<std::size_t>(a.size(), 0)};
  return c;
}

ValidityReport validate_scheme(const CartanScheme &c)
{
  if (c.cartan.size() != c.ids.size() || c.reflections.size() != c.ids.size())
    throw std::invalid_argument("scheme tables have inconsistent sizes");
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c.reflections[n].size() != c.rank)
      throw std::invalid_argument("object '" + c.ids[n] + "' lacks reflections for every index");
    for (auto t : c.reflections[n])
      if (t >= c.size())
        throw std::invalid_argument("reflection of object '" + c.ids[n] + "' points to an unknown object");
    if (c.cartan[n].size() != c.rank)
      throw std::invalid_argument("Cartan matrix of object '" + c.ids[n] + "' has the wrong size");
  }

  ValidityReport r;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const auto &a = c.cartan[n];
    for (std::size_t i = 0; i < c.rank; ++i)
      for (std::size_t j = 0; j < c.rank; ++j) {
        if (i == j && a[i][i] != 2)
          r.violations.push_back({"M1", c.ids[n], i, j, "diagonal entry at " + pos(i, j) + " is " + std::to_string(a[i][j])});
        else if (i != j && a[i][j] > 0)
          r.violations.push_back({"M1", c.ids[n], i, j, "positive off-diagonal entry at " + pos(i, j)});
        else if (i != j && a[i][j] == 0 && a[j][i] != 0)
          r.violations.push_back({"M2", c.ids[n], i, j, "a" + pos(i, j) + " = 0 but a" + pos(j, i) + " = " + std::to_string(a[j][i])});
      }
  }
  for (std::size_t n = 0; n < c.size(); ++n)
    for (std::size_t i = 0; i < c.rank; ++i) {
      std::size_t m = c.reflections[n][i];
      if (c.reflections[m][i] != n)
        r.violations.push_back({"C1", c.ids[n], i, i,
                                "r_" + std::to_string(i + 1) + "^2(" + c.ids[n] + ") = " + c.ids[c.reflections[m][i]]});
    }
  for (std::size_t n = 0; n < c.size(); ++n)
    for (std::size_t i = 0; i < c.rank; ++i) {
      std::size_t m = c.reflections[n][i];
      for (std::size_t j = 0; j < c.rank; ++j)
        if (c.cartan[n][i][j] != c.cartan[m][i][j])
          r.violations.push_back({"C2", c.ids[n], i, j,
                                  "a" + pos(i, j) + " differs between " + c.ids[n] + " and r_" + std::to_string(i + 1) +
                                      "(" + c.ids[n] + ") = " + c.ids[m]});
    }
  return r;
}

IntMatrix reflection_matrix(const IntMatrix &a, std::size_t i)
{
  if (i >= a.size())
    throw std::out_of_range("reflection index out of range");
  IntMatrix s = int_identity(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    s[i][j] -= a[i][j];
  return s;
}

IntMatrix reflection_matrix(const CartanScheme &c, std::size_t object, std::size_t i)
{
  if (object >= c.size())
    throw std::out_of_range("unknown object");
  if (i >= c.rank)
    throw std::out_of_range("reflection index out of range");
  return reflection_matrix(c.cartan[object], i);
}

// ---------------------------------------------------------------------------

namespace {

std::string classify_component(const IntMatrix &a, const std::vector<std::size_t> &nodes, std::string &reason)
{
  std::size_t n = nodes.size();
  if (n == 1)
    return "A1";

  // local adjacency
  std::vector<std::vector<std::size_t>> adj(n);
  std::size_t edges = 0, doubles = 0, triples = 0;
  std::size_t dbl_u = 0, dbl_v = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      long x = a[nodes[u]][nodes[v]], y = a[nodes[v]][nodes[u]];
      if (x == 0 && y == 0)
        continue;
      long m = x * y;
      bool allowed = (m == 1) || (m == 2 && (x == -1 || y == -1)) || (m == 3 && (x == -1 || y == -1));
      if (!allowed) {
        reason = "edge " + pos(nodes[u], nodes[v]) + " with entries (" + std::to_string(x) + "," +
                 std::to_string(y) + ") does not occur in a finite Dynkin diagram";
        return "";
      }
      adj[u].push_back(v);
      adj[v].push_back(u);
      ++edges;
      if (m == 2) {
        ++doubles;
        dbl_u = u;
        dbl_v = v;
      }
      if (m == 3)
        ++triples;
    }
  if (edges != n - 1) {
    reason = "diagram contains a cycle";
    return "";
  }
  if (triples > 0) {
    if (n == 2)
      return "G2";
    reason = "triple edge in a diagram with more than two nodes";
    return "";
  }

  std::vector<std::size_t> branch;
  for (std::size_t u = 0; u < n; ++u) {
    if (adj[u].size() > 3) {
      reason = "node of degree " + std::to_string(adj[u].size());
      return "";
    }
    if (adj[u].size() == 3)
      branch.push_back(u);
  }

  if (doubles > 1) {
    reason = "more than one double edge";
    return "";
  }
  if (doubles == 1) {
    if (!branch.empty()) {
      reason = "double edge in a branched diagram";
      return "";
    }
    if (n == 2)
      return "B2";
    bool leaf_u = adj[dbl_u].size() == 1, leaf_v = adj[dbl_v].size() == 1;
    if (leaf_u || leaf_v) {
      std::size_t e = leaf_u ? dbl_u : dbl_v, p = leaf_u ? dbl_v : dbl_u;
      if (a[nodes[e]][nodes[p]] == -2)
        return "B" + std::to_string(n);
      return "C" + std::to_string(n);
    }
    if (n == 4)
      return "F4";
    reason = "double edge in the interior of a path with " + std::to_string(n) + " nodes";
    return "";
  }

  if (branch.empty())
    return "A" + std::to_string(n);
  if (branch.size() > 1) {
    reason = "more than one branch node";
    return "";
  }
  std::size_t b = branch[0];
  std::vector<std::size_t> arms;
  for (std::size_t start : adj[b]) {
    std::size_t len = 1, prev = b, cur = start;
    while (adj[cur].size() == 2) {
      std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1)
    return "D" + std::to_string(n);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4)
    return "E" + std::to_string(n);
  reason = "branch arms (" + std::to_string(arms[0]) + "," + std::to_string(arms[1]) + "," +
           std::to_string(arms[2]) + ") do not give a finite type";
  return "";
}

} // namespace

FiniteTypeResult finite_type_classify(const IntMatrix &a)
{
  check_square(a);
  std::size_t n = a.size();
  std::vector<std::size_t> comp(n, n);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != n)
      continue;
    std::vector<std::size_t> nodes{s};
    comp[s] = comps.size();
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (std::size_t v = 0; v < n; ++v)
        if (comp[v] == n && v != nodes[k] && (a[nodes[k]][v] != 0 || a[v][nodes[k]] != 0)) {
          comp[v] = comps.size();
          nodes.push_back(v);
        }
    std::sort(nodes.begin(), nodes.end());
    comps.push_back(std::move(nodes));
  }

  FiniteTypeResult r;
  r.finite = true;
  for (const auto &nodes : comps) {
    std::string reason;
    std::string label = classify_component(a, nodes, reason);
    if (label.empty()) {
      r.finite = false;
      r.reason = reason;
      r.labels.clear();
      return r;
    }
    r.labels.push_back(label);
  }
  return r;
}

} // namespace nichols
