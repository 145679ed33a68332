#include "nichols/weylgroupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nichols {

namespace {

bool nonnegative(const IntVector &v)
{
  return std::all_of(v.begin(), v.end(), [](long x) { return x >= 0; });
}

bool nonpositive(const IntVector &v)
{
  return std::all_of(v.begin(), v.end(), [](long x) { return x <= 0; });
}

IntVector negated(IntVector v)
{
  for (auto &x : v)
    x = -x;
  return v;
}

IntVector simple_root(std::size_t n, std::size_t i)
{
  IntVector v(n, 0);
  v[i] = 1;
  return v;
}

long height(const IntVector &v) { return std::accumulate(v.begin(), v.end(), 0L); }

} // namespace

bool root_less(const IntVector &a, const IntVector &b)
{
  long ha = height(a), hb = height(b);
  if (ha != hb)
    return ha < hb;
  return a > b;
}

std::vector<std::size_t> reachable_objects(const CartanScheme &c, std::size_t start, std::size_t max_objects,
                                           bool *complete)
{
  if (start >= c.size())
    throw std::out_of_range("start object out of range");
  std::vector<std::size_t> order{start};
  std::vector<bool> seen(c.size(), false);
  seen[start] = true;
  bool ok = true;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t i = 0; i < c.rank; ++i) {
      std::size_t m = c.reflections[order[k]][i];
      if (seen[m])
        continue;
      if (order.size() >= max_objects) {
        ok = false;
        continue;
      }
      seen[m] = true;
      order.push_back(m);
    }
  if (complete)
    *complete = ok;
  return order;
}

std::size_t apply_reflections(const CartanScheme &c, std::size_t object, const std::vector<std::size_t> &indices)
{
  for (auto i : indices)
    object = c.reflections[object][i];
  return object;
}

std::vector<std::vector<IntVector>> with_negatives(const std::vector<std::vector<IntVector>> &positive)
{
  std::vector<std::vector<IntVector>> out(positive.size());
  for (std::size_t n = 0; n < positive.size(); ++n) {
    out[n] = positive[n];
    for (const auto &r : positive[n])
      out[n].push_back(negated(r));
  }
  return out;
}

GroupoidData generate(const CartanScheme &c, std::size_t start, const GroupoidCaps &caps)
{
  GroupoidData d;
  d.start = start;
  d.objects = reachable_objects(c, start, caps.max_objects, &d.objects_complete);
  d.positive_roots.assign(c.size(), {});
  if (!d.objects_complete) {
    d.roots_complete = false;
    d.morphisms_complete = false;
    d.note = "object cap of " + std::to_string(caps.max_objects) + " reached";
    return d;
  }

  const std::size_t n = c.rank;
  std::vector<std::set<IntVector>> roots(c.size());
  std::vector<std::pair<std::size_t, IntVector>> work;
  for (auto obj : d.objects)
    for (std::size_t i = 0; i < n; ++i) {
      IntVector a = simple_root(n, i);
      roots[obj].insert(a);
      work.emplace_back(obj, a);
    }

  std::vector<std::vector<IntMatrix>> refl(c.size());
  for (auto obj : d.objects)
    for (std::size_t i = 0; i < n; ++i)
      refl[obj].push_back(reflection_matrix(c, obj, i));

  // Only positive representatives are stored; a sign flip keeps the set symmetric.
  for (std::size_t w = 0; w < work.size(); ++w) {
    auto [obj, r] = work[w];
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t tgt = c.reflections[obj][i];
      IntVector img = refl[obj][i] * r;
      if (!nonnegative(img))
        img = negated(img);
      if (roots[tgt].insert(img).second) {
        if (roots[tgt].size() > caps.max_roots) {
          d.roots_complete = false;
          d.note = "real-root cap of " + std::to_string(caps.max_roots) + " reached at object " + c.ids[tgt];
          break;
        }
        work.emplace_back(tgt, std::move(img));
      }
    }
    if (!d.roots_complete)
      break;
  }
  for (auto obj : d.objects) {
    d.positive_roots[obj].assign(roots[obj].begin(), roots[obj].end());
    std::sort(d.positive_roots[obj].begin(), d.positive_roots[obj].end(), root_less);
  }

  if (!d.roots_complete) {
    d.morphisms_complete = false;
    return d;
  }

  // hom-set from the start object, deduplicated by (target, matrix)
  std::set<std::pair<std::size_t, IntMatrix>> seen;
  Morphism id{start, start, int_identity(n), {}};
  seen.emplace(start, id.matrix);
  d.morphisms.push_back(id);
  for (std::size_t k = 0; k < d.morphisms.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Morphism &m = d.morphisms[k];
      Morphism next;
      next.source = start;
      next.target = c.reflections[m.target][i];
      next.matrix = reflection_matrix(c, m.target, i) * m.matrix;
      if (!seen.emplace(next.target, next.matrix).second)
        continue;
      if (d.morphisms.size() >= caps.max_morphisms) {
        d.morphisms_complete = false;
        break;
      }
      next.word = m.word;
      next.word.emplace_back(m.target, i);
      d.morphisms.push_back(std::move(next));
    }
    if (!d.morphisms_complete)
      break;
  }
  if (!d.morphisms_complete && d.note.empty())
    d.note = "morphism cap of " + std::to_string(caps.max_morphisms) + " reached";
  return d;
}

RootAxiomReport verify_root_system(const CartanScheme &c, const std::vector<std::vector<IntVector>> &roots)
{
  if (roots.size() != c.size())
    throw std::invalid_argument("root sets missing for some objects");
  const std::size_t n = c.rank;
  RootAxiomReport rep;
  std::vector<std::set<IntVector>> sets(c.size());
  for (std::size_t obj = 0; obj < c.size(); ++obj)
    sets[obj].insert(roots[obj].begin(), roots[obj].end());

  for (std::size_t obj = 0; obj < c.size(); ++obj) {
    const auto &s = sets[obj];
    // R1
    for (const auto &r : s) {
      if (!nonnegative(r) && !nonpositive(r))
        rep.failures.push_back({"R1", obj, 0, 0, r, "root " + vector_string(r) + " of " + c.ids[obj] + " has mixed signs"});
      else if (!s.count(negated(r)))
        rep.failures.push_back({"R1", obj, 0, 0, r, "root " + vector_string(r) + " of " + c.ids[obj] + " lacks its negative"});
    }
    // R2
    for (std::size_t i = 0; i < n; ++i) {
      IntVector a = simple_root(n, i);
      if (!s.count(a) || !s.count(negated(a)))
        rep.failures.push_back({"R2", obj, i, i, a, "simple root alpha_" + std::to_string(i + 1) + " or its negative is missing in " + c.ids[obj]});
    }
    for (const auto &r : s) {
      std::size_t support = 0, idx = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (r[k] != 0) {
          ++support;
          idx = k;
        }
      if (support == 0)
        rep.failures.push_back({"R2", obj, 0, 0, r, "zero vector listed as a root of " + c.ids[obj]});
      else if (support == 1 && r[idx] != 1 && r[idx] != -1)
        rep.failures.push_back({"R2", obj, idx, idx, r, "multiple " + vector_string(r) + " of a simple root in " + c.ids[obj]});
    }
    // R3, positive roots first
    std::vector<IntVector> ordered(s.begin(), s.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const IntVector &a, const IntVector &b) {
      bool pa = nonnegative(a), pb = nonnegative(b);
      if (pa != pb)
        return pa;
      return pa ? root_less(a, b) : root_less(negated(a), negated(b));
    });
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t tgt = c.reflections[obj][i];
      IntMatrix s_i = reflection_matrix(c, obj, i);
      std::set<IntVector> image;
      for (const auto &r : ordered) {
        IntVector img = s_i * r;
        if (!sets[tgt].count(img))
          rep.failures.push_back({"R3", obj, i, 0, img,
                                  "s_" + std::to_string(i + 1) + "^" + c.ids[obj] + vector_string(r) + " = " +
                                      vector_string(img) + " is not a root of " + c.ids[tgt]});
        image.insert(std::move(img));
      }
      for (const auto &r : sets[tgt])
        if (!image.count(r))
          rep.failures.push_back({"R3", obj, i, 0, r,
                                  "root " + vector_string(r) + " of " + c.ids[tgt] + " is not hit by s_" +
                                      std::to_string(i + 1) + "^" + c.ids[obj]});
    }
    // R4
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j)
          continue;
        std::size_t m = 0;
        for (const auto &r : s) {
          bool in_cone = true;
          for (std::size_t k = 0; k < n; ++k)
            if ((k == i || k == j) ? r[k] < 0 : r[k] != 0)
              in_cone = false;
          if (in_cone)
            ++m;
        }
        if (i < j)
          rep.exponents.push_back({obj, i, j, m});
        std::size_t cur = obj;
        for (std::size_t k = 0; k < m; ++k)
          cur = c.reflections[c.reflections[cur][j]][i];
        if (cur != obj)
          rep.failures.push_back({"R4", obj, i, j, {},
                                  "(r_" + std::to_string(i + 1) + " r_" + std::to_string(j + 1) + ")^" +
                                      std::to_string(m) + "(" + c.ids[obj] + ") = " + c.ids[cur]});
      }
  }
  return rep;
}

IntMatrix eta1(long a) { return {{-1, a}, {0, 1}}; }
IntMatrix eta2(long a) { return {{1, 0}, {a, -1}}; }

bool semigroup_shape(const IntMatrix &m)
{
  if (m.size() != 2 || m[0].size() != 2)
    return false;
  long a = m[0][0], b = -m[0][1], d = -m[1][1];
  return m[1][0] > 0 && 0 < d && d < b && b < a;
}

std::optional<Rank2Certificate> rank2_infinite_witness(const CartanScheme &c, std::size_t start, std::size_t i,
                                                        std::size_t j, std::size_t max_objects)
{
  if (c.rank < 2)
    throw std::invalid_argument("rank-2 criterion needs rank at least 2");
  if (i >= c.rank || j >= c.rank || i == j)
    throw std::invalid_argument("invalid index pair for the rank-2 criterion");
  if (start >= c.size())
    throw std::out_of_range("start object out of range");

  Rank2Certificate cert;
  cert.i = i;
  cert.j = j;
  std::vector<bool> seen(c.size(), false);
  cert.closure.push_back(start);
  seen[start] = true;
  for (std::size_t k = 0; k < cert.closure.size(); ++k) {
    std::size_t obj = cert.closure[k];
    if (c.cartan[obj][i][j] > -2 || c.cartan[obj][j][i] > -2)
      return std::nullopt;
    for (std::size_t idx : {i, j}) {
      std::size_t m = c.reflections[obj][idx];
      if (!seen[m]) {
        if (cert.closure.size() >= max_objects)
          return std::nullopt;
        seen[m] = true;
        cert.closure.push_back(m);
      }
    }
  }
  for (auto obj : cert.closure) {
    EtaProduct p;
    p.object = obj;
    p.a1 = -c.cartan[c.reflections[obj][j]][i][j];
    p.a2 = -c.cartan[obj][j][i];
    p.product = eta1(p.a1) * eta2(p.a2);
    p.shape = semigroup_shape(p.product);
    cert.products.push_back(std::move(p));
  }
  if (!std::all_of(cert.products.begin(), cert.products.end(), [](const EtaProduct &p) { return p.shape; }))
    return std::nullopt;
  return cert;
}

std::string verdict_name(Verdict v)
{
  switch (v) {
  case Verdict::finite:
    return "finite";
  case Verdict::infinite_witness:
    return "infinite_witness";
  case Verdict::inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

FinitenessReport finiteness_report(const CartanScheme &c, std::size_t start, const GroupoidCaps &caps)
{
  FinitenessReport rep;
  rep.data = generate(c, start, caps);
  const auto &d = rep.data;
  rep.object_count = d.objects.size();
  rep.morphism_count = d.morphisms.size();
  for (auto obj : d.objects)
    rep.real_root_counts.push_back(d.positive_roots[obj].size());
  rep.note = d.note;

  if (d.complete()) {
    rep.verdict = Verdict::finite;
    const auto &pos = d.positive_roots[start];
    for (const auto &m : d.morphisms) {
      if (m.word.size() > pos.size())
        break;
      bool all_negative = std::all_of(pos.begin(), pos.end(), [&](const IntVector &r) {
        auto img = m.matrix * r;
        return nonpositive(img);
      });
      if (all_negative) {
        rep.longest = LongestElement{m, m.word.size()};
        break;
      }
    }
    if (!d.morphisms_complete)
      rep.note = "hom-set enumeration stopped at the morphism cap; root closure is complete";
    return rep;
  }

  for (std::size_t i = 0; i < c.rank && !rep.witness; ++i)
    for (std::size_t j = i + 1; j < c.rank && !rep.witness; ++j)
      rep.witness = rank2_infinite_witness(c, start, i, j, caps.max_objects);
  if (rep.witness) {
    rep.verdict = Verdict::infinite_witness;
  } else {
    rep.verdict = Verdict::inconclusive;
    if (rep.note.empty())
      rep.note = "closure did not terminate within the caps";
  }
  return rep;
}

} // namespace nichols
