#include "nichols/finitegroup.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace nichols {

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images))
{
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v])
      throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
}

Perm Perm::identity(std::size_t degree)
{
  std::vector<std::uint32_t> im(degree);
  std::iota(im.begin(), im.end(), 0u);
  Perm p;
  p.images_ = std::move(im);
  return p;
}

Perm Perm::parse(const std::string &text, std::size_t degree)
{
  Perm result = identity(degree);
  std::string s;
  for (char ch : text)
    if (ch != '\t' && ch != '\n')
      s += ch;
  auto first = s.find_first_not_of(' ');
  if (first == std::string::npos || s.substr(first) == "e" || s.substr(first) == "()")
    return result;

  std::size_t pos = first;
  while (pos < s.size()) {
    if (s[pos] == ' ') {
      ++pos;
      continue;
    }
    if (s[pos] != '(')
      throw std::invalid_argument("malformed cycle notation '" + text + "'");
    auto close = s.find(')', pos);
    if (close == std::string::npos)
      throw std::invalid_argument("unbalanced parenthesis in '" + text + "'");
    std::string body = s.substr(pos + 1, close - pos - 1);
    pos = close + 1;

    std::vector<std::uint32_t> pts;
    bool separated = body.find_first_of(" ,") != std::string::npos;
    if (separated) {
      for (char &ch : body)
        if (ch == ',')
          ch = ' ';
      std::string tok;
      std::istringstream is(body);
      while (is >> tok) {
        if (tok.find_first_not_of("0123456789") != std::string::npos)
          throw std::invalid_argument("malformed point '" + tok + "' in '" + text + "'");
        pts.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      }
    } else {
      for (char ch : body) {
        if (ch < '0' || ch > '9')
          throw std::invalid_argument("malformed point in '" + text + "'");
        pts.push_back(static_cast<std::uint32_t>(ch - '0'));
      }
    }
    if (pts.empty())
      continue;
    std::vector<std::uint32_t> im(degree);
    std::iota(im.begin(), im.end(), 0u);
    std::vector<bool> used(degree, false);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (pts[k] < 1 || pts[k] > degree)
        throw std::invalid_argument("point " + std::to_string(pts[k]) + " out of range in '" + text + "'");
      if (used[pts[k] - 1])
        throw std::invalid_argument("repeated point in cycle of '" + text + "'");
      used[pts[k] - 1] = true;
      im[pts[k] - 1] = pts[(k + 1) % pts.size()] - 1;
    }
    Perm c;
    c.images_ = std::move(im);
    result = result * c;
  }
  return result;
}

Perm Perm::inverse() const
{
  Perm p;
  p.images_.resize(images_.size());
  for (std::uint32_t i = 0; i < images_.size(); ++i)
    p.images_[images_[i]] = i;
  return p;
}

bool Perm::is_identity() const
{
  for (std::uint32_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

unsigned Perm::order() const
{
  std::vector<bool> seen(images_.size(), false);
  unsigned ord = 1;
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (seen[i])
      continue;
    unsigned len = 0;
    for (std::uint32_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::vector<std::uint32_t> Perm::moved_points() const
{
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      out.push_back(i);
  return out;
}

std::string Perm::str() const
{
  std::ostringstream os;
  bool wide = images_.size() > 9;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i)
      continue;
    os << "(";
    bool first = true;
    for (std::uint32_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (wide && !first)
        os << " ";
      os << j + 1;
      first = false;
    }
    os << ")";
    any = true;
  }
  if (!any)
    return "()";
  return os.str();
}

Perm operator*(const Perm &p, const Perm &q)
{
  if (p.degree() != q.degree())
    throw std::invalid_argument("degree mismatch in permutation product");
  Perm r;
  r.images_.resize(q.images_.size());
  for (std::size_t i = 0; i < q.images_.size(); ++i)
    r.images_[i] = p.images_[q.images_[i]];
  return r;
}

std::size_t PermHash::operator()(const Perm &p) const
{
  std::size_t h = 1469598103934665603ull;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct SortKey
{
  unsigned order;
  std::vector<std::uint32_t> moved;
  const Perm *perm;

  bool operator<(const SortKey &o) const
  {
    if (order != o.order)
      return order < o.order;
    if (moved.size() != o.moved.size())
      return moved.size() < o.moved.size();
    if (moved != o.moved)
      return moved < o.moved;
    return perm->images() < o.perm->images();
  }
};

SortKey key_of(const Perm &p) { return SortKey{p.order(), p.moved_points(), &p}; }

} // namespace

bool canonical_less(const Perm &a, const Perm &b) { return key_of(a) < key_of(b); }

// ---------------------------------------------------------------------------

struct FiniteGroup::Impl
{
  std::unordered_map<Perm, std::size_t, PermHash> index;
  std::mutex mutex;
  std::vector<std::vector<std::size_t>> centralizers;
  std::vector<bool> have_centralizer;
};

FiniteGroup FiniteGroup::from_generators(std::size_t degree, std::vector<Perm> generators,
                                         std::size_t cap)
{
  for (const auto &g : generators)
    if (g.degree() != degree)
      throw std::invalid_argument("generator " + g.str() + " has degree " + std::to_string(g.degree()) +
                                  ", expected " + std::to_string(degree));

  FiniteGroup G;
  G.degree_ = degree;
  G.generators_ = generators;

  std::unordered_map<Perm, std::size_t, PermHash> seen;
  std::vector<Perm> elems;
  Perm id = Perm::identity(degree);
  seen.emplace(id, 0);
  elems.push_back(id);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto &g : generators) {
      Perm p = g * elems[i];
      if (seen.count(p))
        continue;
      if (elems.size() >= cap)
        throw std::length_error("group order exceeds the enumeration cap of " + std::to_string(cap));
      seen.emplace(p, elems.size());
      elems.push_back(std::move(p));
    }
  }

  std::vector<SortKey> keys;
  keys.reserve(elems.size());
  for (const auto &p : elems)
    keys.push_back(key_of(p));
  std::sort(keys.begin(), keys.end());
  G.elements_.reserve(elems.size());
  for (const auto &k : keys)
    G.elements_.push_back(*k.perm);

  G.impl_ = std::make_shared<Impl>();
  auto &index = G.impl_->index;
  index.reserve(G.elements_.size());
  for (std::size_t i = 0; i < G.elements_.size(); ++i)
    index.emplace(G.elements_[i], i);

  std::size_t n = G.elements_.size();
  G.inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    G.inverse_[i] = index.at(G.elements_[i].inverse());
  for (const auto &g : generators)
    G.generator_index_.push_back(index.at(g));

  if (n <= 1500) {
    G.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        G.table_[a * n + b] = static_cast<std::uint32_t>(index.at(G.elements_[a] * G.elements_[b]));
  }

  // conjugacy classes as orbits under conjugation by generators
  G.class_of_.assign(n, n);
  for (std::size_t e = 0; e < n; ++e) {
    if (G.class_of_[e] != n)
      continue;
    std::size_t cid = G.classes_.size();
    ConjugacyClass cls;
    cls.representative = e;
    std::vector<std::size_t> queue{e};
    G.class_of_[e] = cid;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (auto gi : G.generator_index_) {
        std::size_t c = G.conj(gi, queue[q]);
        if (G.class_of_[c] == n) {
          G.class_of_[c] = cid;
          queue.push_back(c);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    cls.members = std::move(queue);
    G.classes_.push_back(std::move(cls));
  }
  G.impl_->centralizers.resize(G.classes_.size());
  G.impl_->have_centralizer.assign(G.classes_.size(), false);
  return G;
}

std::optional<std::size_t> FiniteGroup::find(const Perm &p) const
{
  auto it = impl_->index.find(p);
  if (it == impl_->index.end())
    return std::nullopt;
  return it->second;
}

std::size_t FiniteGroup::index_of(const Perm &p) const
{
  if (p.degree() != degree_)
    throw std::invalid_argument("permutation " + p.str() + " has wrong degree for this group");
  auto i = find(p);
  if (!i)
    throw std::invalid_argument("permutation " + p.str() + " is not in the group");
  return *i;
}

std::size_t FiniteGroup::mul(std::size_t a, std::size_t b) const
{
  if (!table_.empty())
    return table_[a * elements_.size() + b];
  return impl_->index.at(elements_[a] * elements_[b]);
}

bool FiniteGroup::is_abelian() const
{
  for (std::size_t i = 0; i < generator_index_.size(); ++i)
    for (std::size_t j = i + 1; j < generator_index_.size(); ++j)
      if (!commute(generator_index_[i], generator_index_[j]))
        return false;
  return true;
}

std::vector<std::size_t> FiniteGroup::centralizer_of(std::size_t g) const
{
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < elements_.size(); ++x)
    if (commute(x, g))
      out.push_back(x);
  return out;
}

const std::vector<std::size_t> &FiniteGroup::centralizer(std::size_t class_id) const
{
  std::lock_guard<std::mutex> lock(impl_->mutex);
  if (!impl_->have_centralizer[class_id]) {
    impl_->centralizers[class_id] = centralizer_of(classes_[class_id].representative);
    impl_->have_centralizer[class_id] = true;
  }
  return impl_->centralizers[class_id];
}

std::vector<std::size_t> FiniteGroup::generated_subgroup(const std::vector<std::size_t> &gens) const
{
  std::vector<char> in(elements_.size(), 0);
  std::vector<std::size_t> elems{identity()};
  in[identity()] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto g : gens) {
      std::size_t p = mul(g, elems[i]);
      if (!in[p]) {
        in[p] = 1;
        elems.push_back(p);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// ---------------------------------------------------------------------------

namespace {

Perm cycle_perm(std::size_t degree, const std::vector<std::uint32_t> &pts)
{
  std::vector<std::uint32_t> im(degree);
  std::iota(im.begin(), im.end(), 0u);
  for (std::size_t k = 0; k < pts.size(); ++k)
    im[pts[k]] = pts[(k + 1) % pts.size()];
  return Perm(std::move(im));
}

} // namespace

FiniteGroup builtin_group(const std::string &name)
{
  if (name == "trivial" || name == "1") {
    auto g = FiniteGroup::from_generators(1, {});
    g.set_name("trivial");
    return g;
  }
  if (name.size() < 2)
    throw std::invalid_argument("unknown group '" + name + "'");
  char family = name[0];
  std::string digits = name.substr(1);
  if (digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("unknown group '" + name + "'");
  unsigned n = static_cast<unsigned>(std::stoul(digits));
  if (n == 0 || n > 12)
    throw std::invalid_argument("unsupported size in group '" + name + "'");

  std::vector<Perm> gens;
  std::size_t degree = n;
  switch (family) {
  case 'S':
    if (n >= 2)
      gens.push_back(cycle_perm(n, {0, 1}));
    if (n >= 3) {
      std::vector<std::uint32_t> all(n);
      std::iota(all.begin(), all.end(), 0u);
      gens.push_back(cycle_perm(n, all));
    }
    break;
  case 'A':
    for (std::uint32_t k = 2; k < n; ++k)
      gens.push_back(cycle_perm(n, {0, 1, k}));
    break;
  case 'D': {
    if (n < 2)
      throw std::invalid_argument("dihedral group needs n >= 2");
    if (n == 2) {
      // Klein four on 4 points
      degree = 4;
      gens = {cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})};
      break;
    }
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    gens.push_back(cycle_perm(n, all));
    std::vector<std::uint32_t> im(n);
    for (std::uint32_t k = 0; k < n; ++k)
      im[k] = (n - k) % n;
    gens.push_back(Perm(std::move(im)));
    break;
  }
  case 'C':
  case 'Z': {
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    if (n >= 2)
      gens.push_back(cycle_perm(n, all));
    break;
  }
  default:
    throw std::invalid_argument("unknown group '" + name + "'");
  }
  auto g = FiniteGroup::from_generators(degree, std::move(gens));
  g.set_name(name);
  return g;
}

std::vector<ConjugacyData> conjugacy_data(const FiniteGroup &g)
{
  std::vector<ConjugacyData> out;
  for (std::size_t c = 0; c < g.classes().size(); ++c)
    out.push_back({g.classes()[c].representative, g.classes()[c].members.size(), g.centralizer(c).size()});
  return out;
}

bool classes_commute(const FiniteGroup &g, std::size_t c1, std::size_t c2,
                     std::optional<std::pair<std::size_t, std::size_t>> *witness)
{
  const auto &o1 = g.classes()[c1].members;
  const auto &o2 = g.classes()[c2].members;
  // conjugation invariance: enough to test the representative of c1
  std::size_t rep = g.classes()[c1].representative;
  bool ok = std::all_of(o2.begin(), o2.end(), [&](std::size_t t) { return g.commute(rep, t); });
  if (witness) {
    witness->reset();
    if (!ok) {
      for (auto s : o1)
        for (auto t : o2)
          if (!g.commute(s, t)) {
            *witness = std::make_pair(s, t);
            return false;
          }
    }
  }
  return ok;
}

std::vector<std::pair<std::size_t, std::size_t>> commuting_class_pairs(const FiniteGroup &g)
{
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t id_class = g.class_of(FiniteGroup::identity());
  for (std::size_t a = 0; a < g.classes().size(); ++a) {
    if (a == id_class)
      continue;
    for (std::size_t b = a; b < g.classes().size(); ++b) {
      if (b == id_class)
        continue;
      if (classes_commute(g, a, b))
        out.emplace_back(a, b);
    }
  }
  return out;
}

StstResult stst_condition(const FiniteGroup &g, std::size_t c1, std::size_t c2)
{
  StstResult r;
  for (auto s : g.classes()[c1].members)
    for (auto t : g.classes()[c2].members) {
      std::size_t st = g.mul(s, t), ts = g.mul(t, s);
      if (g.mul(st, st) != g.mul(ts, ts)) {
        r.pass = false;
        r.witness = std::make_pair(s, t);
        return r;
      }
    }
  return r;
}

DoubleCosetAnalysis double_coset_analysis(const FiniteGroup &g, std::size_t g_elt, std::size_t h_elt)
{
  auto cg = g.centralizer_of(g_elt);
  auto ch = g.centralizer_of(h_elt);
  DoubleCosetAnalysis out;
  std::vector<char> done(g.order(), 0);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (done[x])
      continue;
    std::size_t size = 0;
    for (auto a : ch)
      for (auto b : cg) {
        std::size_t y = g.mul(g.mul(a, x), b);
        if (!done[y]) {
          done[y] = 1;
          ++size;
        }
      }
    bool nc = !g.commute(g.conj(x, g_elt), h_elt);
    out.cosets.push_back({x, size, nc});
    if (nc)
      ++out.noncommuting_count;
  }
  return out;
}

bool is_nonabelian_simple(const FiniteGroup &g)
{
  if (g.is_abelian())
    return false;
  std::size_t id_class = g.class_of(FiniteGroup::identity());
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    if (c == id_class)
      continue;
    // normal closure of the class, grown one generator at a time
    std::vector<std::size_t> gens;
    std::vector<char> in(g.order(), 0);
    for (auto m : g.classes()[c].members) {
      if (in[m])
        continue;
      gens.push_back(m);
      auto h = g.generated_subgroup(gens);
      std::fill(in.begin(), in.end(), 0);
      for (auto e : h)
        in[e] = 1;
      if (h.size() == g.order())
        break;
    }
    if (std::count(in.begin(), in.end(), 1) != static_cast<long>(g.order()))
      return false;
  }
  return true;
}

namespace {

bool coxeter_search(const FiniteGroup &g, const std::vector<std::size_t> &cls, unsigned n,
                    std::vector<std::size_t> &chain, std::size_t &budget)
{
  if (chain.size() == n - 1)
    return g.generated_subgroup(chain).size() == g.order();
  for (auto s : cls) {
    if (budget == 0)
      return false;
    --budget;
    if (std::find(chain.begin(), chain.end(), s) != chain.end())
      continue;
    std::size_t prev = chain.back();
    std::size_t p = g.mul(prev, s);
    if (p == FiniteGroup::identity() || g.mul(g.mul(p, p), p) != FiniteGroup::identity())
      continue;
    bool ok = true;
    for (std::size_t j = 0; j + 1 < chain.size() && ok; ++j)
      ok = g.commute(chain[j], s);
    if (!ok)
      continue;
    chain.push_back(s);
    if (coxeter_search(g, cls, n, chain, budget))
      return true;
    chain.pop_back();
  }
  return false;
}

} // namespace

std::optional<unsigned> symmetric_degree(const FiniteGroup &g)
{
  std::size_t fact = 1;
  unsigned n = 1;
  while (fact < g.order()) {
    ++n;
    fact *= n;
  }
  if (fact != g.order() || n < 2)
    return std::nullopt;
  if (n == 2)
    return 2u;

  // faithful action on an orbit of size n
  std::vector<bool> seen(g.degree(), false);
  for (std::uint32_t p = 0; p < g.degree(); ++p) {
    if (seen[p])
      continue;
    std::vector<std::uint32_t> orbit{p};
    seen[p] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto &gen : g.generators()) {
        auto q = gen[orbit[k]];
        if (!seen[q]) {
          seen[q] = true;
          orbit.push_back(q);
        }
      }
    if (orbit.size() != n)
      continue;
    std::vector<std::vector<std::uint32_t>> restr;
    restr.reserve(g.order());
    for (const auto &e : g.elements()) {
      std::vector<std::uint32_t> r;
      for (auto q : orbit)
        r.push_back(e[q]);
      restr.push_back(std::move(r));
    }
    std::sort(restr.begin(), restr.end());
    if (std::unique(restr.begin(), restr.end()) == restr.end())
      return n;
  }

  // Coxeter generators s_1..s_{n-1} inside one class of involutions
  std::size_t transpositions = static_cast<std::size_t>(n) * (n - 1) / 2;
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    const auto &cls = g.classes()[c];
    if (g.element(cls.representative).order() != 2 || cls.members.size() != transpositions)
      continue;
    std::vector<std::size_t> chain{cls.representative};
    std::size_t budget = 2000000;
    if (coxeter_search(g, cls.members, n, chain, budget))
      return n;
  }
  return std::nullopt;
}

} // namespace nichols
