#include "nichols/nicholsengine.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

namespace nichols {

namespace {

using Column = std::vector<std::pair<std::size_t, Cyclotomic>>;

SparseVector unit(std::uint64_t key) { return {{key, Cyclotomic(1)}}; }

SparseVector difference(const SparseVector &a, const SparseVector &b) { return axpy(a, Cyclotomic(-1), b); }

std::uint64_t checked_power(std::size_t base, std::size_t e)
{
  std::uint64_t p = 1;
  for (std::size_t k = 0; k < e; ++k) {
    if (base != 0 && p > std::numeric_limits<std::uint64_t>::max() / 2 / base)
      throw GuardExceeded("tensor space too large for 64-bit keys");
    p *= base;
  }
  return p;
}

void guard(std::uint64_t size, const EngineLimits &limits, const std::string &what)
{
  if (size > limits.tensor_guard)
    throw GuardExceeded(what + " has dimension " + std::to_string(size) + ", above the tensor guard " +
                        std::to_string(limits.tensor_guard));
}

// columns of every group element's action: col[h][b] = (r, x)
std::vector<std::vector<Column>> action_columns(const YDModule &v, const std::vector<std::size_t> &elements)
{
  std::vector<std::vector<Column>> out;
  for (std::size_t h : elements) {
    std::vector<Column> cols(v.dim());
    const ExactMatrix &m = v.action(h);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto &[b, x] : m.row(r))
        cols[b].emplace_back(r, x);
    out.push_back(std::move(cols));
  }
  return out;
}

// Mixed radix helper for V^(x)n (x) W.
struct MixedRadix
{
  std::vector<std::size_t> radix;

  std::uint64_t size() const
  {
    std::uint64_t s = 1;
    for (std::size_t r : radix)
      s *= r;
    return s;
  }
  std::vector<std::size_t> digits(std::uint64_t key) const
  {
    std::vector<std::size_t> d(radix.size());
    for (std::size_t k = radix.size(); k-- > 0;) {
      d[k] = key % radix[k];
      key /= radix[k];
    }
    return d;
  }
  std::uint64_t key(const std::vector<std::size_t> &d) const
  {
    std::uint64_t k = 0;
    for (std::size_t p = 0; p < radix.size(); ++p)
      k = k * radix[p] + d[p];
    return k;
  }
};

// V (+) W with V^(x)n (x) W embedded in (V (+) W)^(x)(n+1).
struct AdSetup
{
  BraidedSpace space;
  MixedRadix local;
  std::size_t n;
  std::size_t dv;

  AdSetup(const YDModule &v, const YDModule &w, std::size_t n_)
      : space(direct_sum(v, w)), n(n_), dv(v.dim())
  {
    local.radix.assign(n, v.dim());
    local.radix.push_back(w.dim());
    space.space_size(n + 1);
  }

  std::uint64_t to_space(std::uint64_t local_key) const
  {
    auto d = local.digits(local_key);
    d.back() += dv;
    return space.key(d);
  }
  SparseVector to_local(const SparseVector &x) const
  {
    SparseVector out;
    out.reserve(x.size());
    for (const auto &[k, c] : x) {
      auto d = space.digits(k, n + 1);
      d.back() -= dv;
      out.emplace_back(local.key(d), c);
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
  }
  SparseVector apply(std::uint64_t local_key) const
  {
    SparseVector x = unit(to_space(local_key));
    return space.symmetrize(space.t_apply(x, n), n + 1, n);
  }
};

std::size_t total_degree(const FiniteGroup &g, const std::vector<std::size_t> &degrees,
                         const std::vector<std::size_t> &digits, const std::vector<std::size_t> &offset)
{
  std::size_t d = FiniteGroup::identity();
  for (std::size_t p = 0; p < digits.size(); ++p)
    d = g.mul(d, degrees[digits[p] + offset[p]]);
  return d;
}

std::string path_string(const std::vector<std::size_t> &path)
{
  if (path.empty())
    return "start";
  std::string s;
  for (std::size_t k = path.size(); k-- > 0;)
    s += "r" + std::to_string(path[k] + 1);
  return s;
}

} // namespace

// ---------------------------------------------------------------------------
// BraidedSpace

BraidedSpace::BraidedSpace(const YDModule &v) : module_(v), dim_(v.dim())
{
  column_.assign(dim_, std::vector<Column>(dim_));
  for (std::size_t a = 0; a < dim_; ++a) {
    const ExactMatrix &m = v.action(v.degree(a));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto &[b, x] : m.row(r))
        column_[a][b].emplace_back(r, x);
  }
}

std::uint64_t BraidedSpace::power(std::size_t e) const
{
  while (power_.size() <= e)
    power_.push_back(power_.empty() ? 1 : checked_power(dim_, power_.size()));
  return power_[e];
}

std::uint64_t BraidedSpace::space_size(std::size_t slots) const { return checked_power(dim_, slots); }

std::uint64_t BraidedSpace::key(const std::vector<std::size_t> &digits) const
{
  std::uint64_t k = 0;
  for (std::size_t d : digits)
    k = k * dim_ + d;
  return k;
}

std::vector<std::size_t> BraidedSpace::digits(std::uint64_t key, std::size_t slots) const
{
  std::vector<std::size_t> d(slots);
  for (std::size_t k = slots; k-- > 0;) {
    d[k] = key % dim_;
    key /= dim_;
  }
  return d;
}

SparseVector BraidedSpace::braid(const SparseVector &x, std::size_t slots, std::size_t p) const
{
  const std::uint64_t pl = power(slots - 1 - p), pr = power(slots - 2 - p);
  SparseAccumulator acc;
  for (const auto &[k, value] : x) {
    std::size_t a = (k / pl) % dim_, b = (k / pr) % dim_;
    std::uint64_t base = k - a * pl - b * pr;
    for (const auto &[c, y] : column_[a][b])
      acc.add(base + c * pl + a * pr, value * y);
  }
  return acc.take();
}

SparseVector BraidedSpace::shuffle(const SparseVector &x, std::size_t slots, std::size_t m) const
{
  SparseVector w = x;
  for (std::size_t p = 0; p + 1 < m; ++p)
    w = axpy(x, Cyclotomic(1), braid(w, slots, p));
  return w;
}

SparseVector BraidedSpace::symmetrize(const SparseVector &x, std::size_t slots, std::size_t m) const
{
  SparseVector w = x;
  for (std::size_t k = m; k >= 2 && !w.empty(); --k)
    w = shuffle(w, slots, k);
  return w;
}

SparseVector BraidedSpace::t_apply(const SparseVector &x, std::size_t n) const
{
  const std::size_t slots = n + 1;
  SparseVector result = x;
  for (std::size_t k = 1; k <= n && !result.empty(); ++k) {
    SparseVector y = result;
    for (std::size_t p = n - k; p + 2 <= n; ++p)
      y = braid(y, slots, p);
    y = braid(braid(y, slots, n - 1), slots, n - 1);
    result = difference(result, y);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Operators as matrices

namespace {

ExactMatrix columns_to_matrix(const std::vector<SparseVector> &cols, std::size_t rows)
{
  ExactMatrix t(cols.size(), rows);
  for (std::size_t c = 0; c < cols.size(); ++c)
    t.set_row(c, cols[c]);
  return t.transpose();
}

} // namespace

BraidedOperator shuffle_map(const YDModule &v, std::size_t n, const EngineLimits &limits)
{
  if (n < 2)
    throw std::invalid_argument("shuffle map needs n >= 2");
  BraidedSpace s(v);
  std::uint64_t size = s.space_size(n);
  guard(size, limits, "V^(x)" + std::to_string(n));
  std::vector<SparseVector> cols;
  for (std::uint64_t k = 0; k < size; ++k)
    cols.push_back(s.shuffle(unit(k), n, n));
  return {std::vector<std::size_t>(n, v.dim()), columns_to_matrix(cols, size)};
}

BraidedOperator quantum_symmetrizer(const YDModule &v, std::size_t n, const EngineLimits &limits)
{
  if (n < 1)
    throw std::invalid_argument("quantum symmetrizer needs n >= 1");
  BraidedSpace s(v);
  std::uint64_t size = s.space_size(n);
  guard(size, limits, "V^(x)" + std::to_string(n));
  std::vector<SparseVector> cols;
  for (std::uint64_t k = 0; k < size; ++k)
    cols.push_back(s.symmetrize(unit(k), n, n));
  return {std::vector<std::size_t>(n, v.dim()), columns_to_matrix(cols, size)};
}

namespace {

BraidedOperator ad_like(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits, bool symmetrize)
{
  if (n < 1)
    throw std::invalid_argument("n must be at least 1");
  AdSetup setup(v, w, n);
  std::uint64_t size = setup.local.size();
  guard(size, limits, "V^(x)" + std::to_string(n) + "(x)W");
  std::vector<SparseVector> cols;
  for (std::uint64_t k = 0; k < size; ++k) {
    SparseVector x = setup.space.t_apply(unit(setup.to_space(k)), n);
    if (symmetrize)
      x = setup.space.symmetrize(x, n + 1, n);
    cols.push_back(setup.to_local(x));
  }
  return {setup.local.radix, columns_to_matrix(cols, size)};
}

} // namespace

BraidedOperator t_operator(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits)
{
  return ad_like(v, w, n, limits, false);
}

BraidedOperator ad_operator(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits)
{
  return ad_like(v, w, n, limits, true);
}

// ---------------------------------------------------------------------------
// Adjoint powers

AdPower ad_power_image(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits)
{
  if (!v.group() || !w.group())
    throw std::invalid_argument("module without a group");
  if (n == 0) {
    AdPower out{w, {}};
    for (std::size_t b = 0; b < w.dim(); ++b)
      out.basis.push_back(unit(b));
    return out;
  }
  if (v.group() != w.group() && v.group()->elements() != w.group()->elements())
    throw std::invalid_argument("modules over different groups");
  const GroupPtr &group = v.group();
  const FiniteGroup &G = *group;
  if (v.is_zero() || w.is_zero())
    return {YDModule(group), {}};

  AdSetup setup(v, w, n);
  const std::uint64_t size = setup.local.size();
  guard(size, limits, "V^(x)" + std::to_string(n) + "(x)W");

  std::vector<std::size_t> degrees(v.degrees());
  degrees.insert(degrees.end(), w.degrees().begin(), w.degrees().end());
  std::vector<std::size_t> offset(n + 1, 0);
  offset[n] = v.dim();

  // image per G-degree block
  std::map<std::size_t, EchelonBasis> blocks;
  for (std::uint64_t k = 0; k < size; ++k) {
    std::size_t g = total_degree(G, degrees, setup.local.digits(k), offset);
    SparseVector img = setup.apply(k);
    if (!img.empty())
      blocks[g].insert(setup.to_local(img));
  }

  AdPower out;
  std::vector<std::size_t> module_degrees;
  std::map<std::size_t, std::size_t> block_start;
  for (auto &[g, basis] : blocks) {
    basis.make_reduced();
    block_start[g] = module_degrees.size();
    for (const auto &vec : basis.vectors()) {
      out.basis.push_back(vec);
      module_degrees.push_back(g);
    }
  }
  if (out.basis.empty())
    return {YDModule(group), {}};

  const auto &gens = G.generator_indices();
  auto cv = action_columns(v, gens);
  auto cw = action_columns(w, gens);
  const std::size_t dim = out.basis.size();
  std::vector<ExactMatrix> gen_action;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<SparseVector> cols(dim);
    for (std::size_t b = 0; b < dim; ++b) {
      // diagonal action on each tensor factor
      SparseAccumulator acc;
      for (const auto &[key, coef] : out.basis[b]) {
        auto d = setup.local.digits(key);
        std::vector<std::pair<std::vector<std::size_t>, Cyclotomic>> terms{{{}, coef}};
        for (std::size_t p = 0; p <= n; ++p) {
          const Column &col = p < n ? cv[gi][d[p]] : cw[gi][d[p]];
          std::vector<std::pair<std::vector<std::size_t>, Cyclotomic>> next;
          for (const auto &[prefix, x] : terms)
            for (const auto &[r, y] : col) {
              auto e = prefix;
              e.push_back(r);
              next.emplace_back(std::move(e), x * y);
            }
          terms = std::move(next);
        }
        for (const auto &[e, x] : terms)
          acc.add(setup.local.key(e), x);
      }
      SparseVector image = acc.take();
      std::size_t g = G.conj(gens[gi], module_degrees[b]);
      auto it = blocks.find(g);
      std::optional<std::vector<Cyclotomic>> coords;
      if (it != blocks.end())
        coords = it->second.coordinates(image);
      if (!coords)
        throw std::logic_error("adjoint power image is not stable under " + G.element(gens[gi]).str());
      std::size_t start = block_start[g];
      SparseVector col;
      for (std::size_t r = 0; r < coords->size(); ++r)
        if (!(*coords)[r].is_zero())
          col.emplace_back(start + r, (*coords)[r]);
      cols[b] = std::move(col);
    }
    gen_action.push_back(columns_to_matrix(cols, dim));
  }
  out.module = YDModule(group, std::move(module_degrees), gen_action);
  return out;
}

YDModule ad_power(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits)
{
  return ad_power_image(v, w, n, limits).module;
}

bool ad_power_vanishes(const YDModule &v, const YDModule &w, std::size_t n, const EngineLimits &limits)
{
  if (n == 0)
    return w.is_zero();
  if (v.is_zero() || w.is_zero())
    return true;
  AdSetup setup(v, w, n);
  const std::uint64_t size = setup.local.size();
  guard(size, limits, "V^(x)" + std::to_string(n) + "(x)W");
  for (std::uint64_t k = 0; k < size; ++k)
    if (!setup.apply(k).empty())
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Tuples

void YDTuple::validate() const
{
  if (modules.empty())
    throw std::invalid_argument("tuple needs at least one module");
  for (std::size_t k = 0; k < modules.size(); ++k) {
    const YDModule &m = modules[k];
    if (!m.group())
      throw std::invalid_argument("module " + std::to_string(k + 1) + " has no group");
    if (m.group() != group() && m.group()->elements() != group()->elements())
      throw std::invalid_argument("module " + std::to_string(k + 1) + " is over a different group");
    if (m.is_zero() || !is_irreducible(m))
      throw std::invalid_argument("module " + std::to_string(k + 1) + " is not irreducible");
  }
}

std::vector<GradedCharacter> YDTuple::iso_key() const
{
  std::vector<GradedCharacter> key;
  for (const auto &m : modules)
    key.push_back(graded_character(m));
  return key;
}

YDModule YDTuple::sum() const
{
  YDModule s(group());
  for (const auto &m : modules)
    s = direct_sum(s, m);
  return s;
}

YDTuple diagonal_tuple(unsigned order, const std::vector<std::vector<long>> &powers)
{
  return {diagonal_modules(order, powers)};
}

std::string class_label(const FiniteGroup &g, const GradedCharacter &chi)
{
  std::string s = g.element(chi.base).str() + ":[";
  for (std::size_t k = 0; k < chi.values.size(); ++k) {
    if (k)
      s += ",";
    s += chi.values[k].str();
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// Graded dimensions

std::size_t GradedDims::at(const IntVector &gamma) const
{
  auto it = dims.find(gamma);
  return it == dims.end() ? 0 : it->second;
}

std::size_t GradedDims::total(std::size_t n) const
{
  std::size_t s = 0;
  for (const auto &[g, d] : dims)
    if (static_cast<std::size_t>(std::accumulate(g.begin(), g.end(), 0L)) == n)
      s += d;
  return s;
}

GradedDims graded_dims(const YDTuple &m, std::size_t bound, const EngineLimits &limits)
{
  const std::size_t theta = m.rank();
  GradedDims out;
  out.theta = theta;
  out.bound = bound;
  out.dims[IntVector(theta, 0)] = 1;
  if (bound == 0)
    return out;
  YDModule v = m.sum();
  const FiniteGroup &G = *v.group();
  std::vector<std::size_t> label;
  for (std::size_t k = 0; k < theta; ++k)
    label.insert(label.end(), m.modules[k].dim(), k);
  BraidedSpace space(v);
  for (std::size_t n = 1; n <= bound; ++n) {
    std::uint64_t size = space.space_size(n);
    guard(size, limits, "V^(x)" + std::to_string(n));
    std::map<std::pair<IntVector, std::size_t>, std::vector<std::uint64_t>> blocks;
    for (std::uint64_t k = 0; k < size; ++k) {
      auto d = space.digits(k, n);
      IntVector gamma(theta, 0);
      std::size_t g = FiniteGroup::identity();
      for (std::size_t a : d) {
        ++gamma[label[a]];
        g = G.mul(g, v.degree(a));
      }
      blocks[{gamma, g}].push_back(k);
    }
    for (const auto &[block, keys] : blocks) {
      EchelonBasis image;
      for (std::uint64_t k : keys) {
        SparseVector x = space.symmetrize(unit(k), n, n);
        if (!x.empty())
          image.insert(std::move(x));
      }
      out.dims[block.first] += image.rank();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cartan inference

bool CartanInference::i_finite(std::size_t i) const
{
  for (std::size_t j = 0; j < entries.size(); ++j)
    if (!entries[i][j])
      return false;
  return true;
}

bool CartanInference::complete() const
{
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!i_finite(i))
      return false;
  return true;
}

IntMatrix CartanInference::matrix() const
{
  IntMatrix a(entries.size(), IntVector(entries.size(), 0));
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (!entries[i][j])
        throw std::logic_error("Cartan entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               ") is undefined: " + reasons[i][j]);
      a[i][j] = *entries[i][j];
    }
  return a;
}

namespace {

CartanInference empty_inference(std::size_t theta, std::size_t h_cap)
{
  CartanInference c;
  c.h_cap = h_cap;
  c.entries.assign(theta, std::vector<std::optional<long>>(theta));
  c.reasons.assign(theta, std::vector<std::string>(theta, "not computed"));
  return c;
}

void infer_row(const YDTuple &m, std::size_t i, const EngineLimits &limits, CartanInference &c)
{
  c.entries[i][i] = 2;
  c.reasons[i][i].clear();
  for (std::size_t j = 0; j < m.rank(); ++j) {
    if (j == i)
      continue;
    c.reasons[i][j] = "h_cap";
    try {
      for (std::size_t h = 1; h <= limits.h_cap; ++h)
        if (ad_power_vanishes(m.modules[i], m.modules[j], h, limits)) {
          c.entries[i][j] = -static_cast<long>(h - 1);
          c.reasons[i][j].clear();
          break;
        }
    } catch (const GuardExceeded &) {
      c.reasons[i][j] = "tensor guard";
    }
  }
}

} // namespace

CartanInference infer_cartan(const YDTuple &m, const EngineLimits &limits)
{
  CartanInference c = empty_inference(m.rank(), limits.h_cap);
  for (std::size_t i = 0; i < m.rank(); ++i)
    infer_row(m, i, limits, c);
  return c;
}

CartanInference infer_cartan_row(const YDTuple &m, std::size_t i, const EngineLimits &limits)
{
  if (i >= m.rank())
    throw std::out_of_range("reflection index out of range");
  CartanInference c = empty_inference(m.rank(), limits.h_cap);
  infer_row(m, i, limits, c);
  return c;
}

// ---------------------------------------------------------------------------
// Reflections

namespace {

Reflection reflect_with(const YDTuple &m, std::size_t i, const CartanInference &c, const EngineLimits &limits)
{
  Reflection out;
  for (std::size_t j = 0; j < m.rank(); ++j)
    if (!c.entries[i][j]) {
      const std::string &why = c.reasons[i][j];
      out.failure = ReflectionFailure{why == "tensor guard" ? "tensor guard" : "not i-finite", i, j,
                                      "(ad M" + std::to_string(i + 1) + ")^h(M" + std::to_string(j + 1) +
                                          ") did not vanish for h <= " + std::to_string(c.h_cap) +
                                          (why == "tensor guard" ? " (tensor guard reached)" : ""),
                                      std::nullopt};
      return out;
    }
  for (std::size_t j = 0; j < m.rank(); ++j)
    out.row.push_back(*c.entries[i][j]);
  YDTuple r;
  for (std::size_t j = 0; j < m.rank(); ++j) {
    YDModule e;
    try {
      e = j == i ? dual(m.modules[i]) : ad_power(m.modules[i], m.modules[j], static_cast<std::size_t>(-out.row[j]), limits);
    } catch (const GuardExceeded &ex) {
      out.failure = ReflectionFailure{"tensor guard", i, j, ex.what(), std::nullopt};
      return out;
    }
    auto rep = irreducibility(e);
    if (e.is_zero() || !rep.irreducible) {
      out.failure = ReflectionFailure{"reducible", i, j,
                                      "reflected entry " + std::to_string(j + 1) + " at index " +
                                          std::to_string(i + 1) + " is not irreducible",
                                      rep};
      return out;
    }
    r.modules.push_back(std::move(e));
  }
  out.tuple = std::move(r);
  return out;
}

} // namespace

Reflection reflect_tuple(const YDTuple &m, std::size_t i, const EngineLimits &limits)
{
  return reflect_with(m, i, infer_cartan_row(m, i, limits), limits);
}

// ---------------------------------------------------------------------------
// Scheme construction

SchemeBuildResult build_scheme(const YDTuple &m, const SchemeCaps &caps)
{
  m.validate();
  SchemeBuildResult out;
  const std::size_t theta = m.rank();
  std::vector<std::vector<GradedCharacter>> keys;
  auto find = [&](const std::vector<GradedCharacter> &key) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < keys.size(); ++k)
      if (keys[k] == key)
        return k;
    return std::nullopt;
  };

  out.objects.push_back(m);
  out.paths.push_back({});
  keys.push_back(m.iso_key());
  out.complete = true;
  for (std::size_t cur = 0; cur < out.objects.size(); ++cur) {
    const YDTuple obj = out.objects[cur];
    CartanInference c = infer_cartan(obj, caps.limits);
    out.reflections.emplace_back(theta);
    for (std::size_t i = 0; i < theta; ++i) {
      Reflection r = reflect_with(obj, i, c, caps.limits);
      if (r.failure) {
        out.complete = false;
        out.findings.push_back({r.failure->kind, cur, out.paths[cur], r.failure->i, r.failure->j,
                                "at " + path_string(out.paths[cur]) + "(M): " + r.failure->message});
        continue;
      }
      auto key = r.tuple->iso_key();
      auto found = find(key);
      if (!found) {
        if (out.objects.size() >= caps.max_objects) {
          out.complete = false;
          out.findings.push_back({"object cap", cur, out.paths[cur], i, i,
                                  "more than " + std::to_string(caps.max_objects) + " objects"});
          continue;
        }
        found = out.objects.size();
        out.objects.push_back(std::move(*r.tuple));
        auto path = out.paths[cur];
        path.push_back(i);
        out.paths.push_back(std::move(path));
        keys.push_back(std::move(key));
      }
      out.reflections[cur][i] = *found;
    }
    out.cartan.push_back(std::move(c));
  }
  if (!out.complete)
    return out;

  CartanScheme scheme;
  scheme.rank = theta;
  for (std::size_t k = 0; k < out.objects.size(); ++k) {
    scheme.ids.push_back("N" + std::to_string(k));
    scheme.cartan.push_back(out.cartan[k].matrix());
    std::vector<std::size_t> refl;
    for (const auto &r : out.reflections[k])
      refl.push_back(*r);
    scheme.reflections.push_back(std::move(refl));
  }
  for (std::size_t k = 0; k < scheme.size(); ++k)
    for (std::size_t i = 0; i < theta; ++i)
      for (std::size_t j = 0; j < theta; ++j) {
        std::size_t t = scheme.reflections[k][i];
        if (scheme.cartan[k][i][j] != scheme.cartan[t][i][j])
          out.findings.push_back({"cartan invariance", k, out.paths[k], i, j,
                                  "a_" + std::to_string(i + 1) + std::to_string(j + 1) + " is " +
                                      std::to_string(scheme.cartan[k][i][j]) + " at N" + std::to_string(k) +
                                      " but " + std::to_string(scheme.cartan[t][i][j]) + " at r" +
                                      std::to_string(i + 1) + "(N" + std::to_string(k) + ")"});
      }
  out.validity = validate_scheme(scheme);
  out.scheme = scheme;
  if (!out.validity.ok())
    return out;

  out.finiteness = finiteness_report(scheme, 0, caps.groupoid);
  const FinitenessReport &fin = *out.finiteness;
  if (fin.verdict != Verdict::finite)
    return out;
  out.axioms = verify_root_system(scheme, with_negatives(fin.data.positive_roots));

  // attach iso classes to the positive real roots at the start object
  const FiniteGroup &G = *m.group();
  std::map<IntVector, LabeledRoot, bool (*)(const IntVector &, const IntVector &)> labeled(root_less);
  for (const Morphism &mor : fin.data.morphisms) {
    IntMatrix inv = int_identity(theta);
    for (const auto &[obj, idx] : mor.word)
      inv = inv * reflection_matrix(scheme, obj, idx);
    for (std::size_t i = 0; i < theta; ++i) {
      IntVector gamma(theta);
      for (std::size_t r = 0; r < theta; ++r)
        gamma[r] = inv[r][i];
      const YDModule &entry = out.objects[mor.target].modules[i];
      bool positive = std::all_of(gamma.begin(), gamma.end(), [](long x) { return x >= 0; });
      GradedCharacter chi = positive ? graded_character(entry) : graded_character(dual(entry));
      if (!positive)
        for (long &x : gamma)
          x = -x;
      auto it = labeled.find(gamma);
      if (it == labeled.end()) {
        labeled.emplace(gamma, LabeledRoot{gamma, std::move(chi), mor.target, i});
      } else if (it->second.label != chi) {
        out.findings.push_back({"root label", mor.target, out.paths[mor.target], i, i,
                                "root " + vector_string(gamma) + " carries " + class_label(G, it->second.label) +
                                    " and " + class_label(G, chi)});
      }
    }
  }
  for (auto &[g, r] : labeled)
    out.roots.push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------
// Dimension consistency under reflection

std::map<IntVector, long> coinvariant_dims(const GradedDims &dims, std::size_t i)
{
  std::vector<std::pair<IntVector, long>> order(dims.dims.begin(), dims.dims.end());
  std::stable_sort(order.begin(), order.end(), [i](const auto &a, const auto &b) { return a.first[i] < b.first[i]; });
  std::map<IntVector, long> k;
  for (const auto &[gamma, d] : order) {
    long value = d;
    for (long s = 1; s <= gamma[i]; ++s) {
      IntVector base(dims.theta, 0);
      base[i] = s;
      IntVector lower = gamma;
      lower[i] -= s;
      auto it = k.find(lower);
      value -= static_cast<long>(dims.at(base)) * (it == k.end() ? 0 : it->second);
    }
    k[gamma] = value;
  }
  return k;
}

ConsistencyReport reflection_dim_consistency(const YDTuple &m, std::size_t i, std::size_t bound,
                                             const EngineLimits &limits)
{
  ConsistencyReport rep;
  rep.i = i;
  rep.bound = bound;
  Reflection r = reflect_tuple(m, i, limits);
  if (r.failure) {
    rep.failure = r.failure;
    return rep;
  }
  rep.row = r.row;
  GradedDims dm = graded_dims(m, bound, limits);
  GradedDims dr = graded_dims(*r.tuple, bound, limits);
  for (std::size_t k = 0; k <= bound; ++k) {
    IntVector e(m.rank(), 0);
    e[i] = static_cast<long>(k);
    rep.base_series.push_back(dm.at(e));
    rep.dual_series.push_back(dr.at(e));
  }
  auto km = coinvariant_dims(dm, i);
  auto kr = coinvariant_dims(dr, i);
  for (const auto &[gamma, d] : km) {
    long shift = 0;
    for (std::size_t j = 0; j < gamma.size(); ++j)
      shift += rep.row[j] * gamma[j];
    IntVector image = gamma;
    image[i] -= shift;
    if (image[i] < 0 || static_cast<std::size_t>(std::accumulate(image.begin(), image.end(), 0L)) > bound)
      continue;
    auto it = kr.find(image);
    long other = it == kr.end() ? 0 : it->second;
    if (d < 0 || other < 0)
      throw std::logic_error("negative coinvariant dimension");
    DimComparison cmp{gamma, image, static_cast<std::size_t>(d), static_cast<std::size_t>(other)};
    rep.window.push_back(cmp);
    if (d != other)
      rep.mismatches.push_back(cmp);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Group-theoretic screens

std::vector<ScreenVerdict> finiteness_screen(const YDTuple &m)
{
  m.validate();
  std::vector<std::size_t> classes;
  for (const auto &v : m.modules)
    classes.push_back(v.support_classes().at(0));
  return finiteness_screen(*m.group(), classes);
}

std::vector<ScreenVerdict> finiteness_screen(const FiniteGroup &G, const std::vector<std::size_t> &classes)
{
  std::vector<ScreenVerdict> out;
  const std::string infinite = "infinite-dimensional (obstruction: ";
  auto el = [&G](std::size_t x) { return G.element(x).str(); };
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      std::size_t ci = classes[i], cj = classes[j];
      std::size_t gi = G.classes()[ci].representative, gj = G.classes()[cj].representative;

      ScreenVerdict st{"stst", i, j, true, "no obstruction", ""};
      StstResult s = stst_condition(G, ci, cj);
      if (!s.pass) {
        auto [x, y] = *s.witness;
        std::size_t xy = G.mul(x, y), yx = G.mul(y, x);
        st.pass = false;
        st.verdict = infinite + "(st)^2 != (ts)^2)";
        st.witness = "s=" + el(x) + " t=" + el(y) + " (st)^2=" + el(G.mul(xy, xy)) + " (ts)^2=" + el(G.mul(yx, yx));
      }
      out.push_back(std::move(st));

      ScreenVerdict dc{"double cosets", i, j, true, "no obstruction", ""};
      DoubleCosetAnalysis a = double_coset_analysis(G, gi, gj);
      if (a.noncommuting_count > 1) {
        dc.pass = false;
        dc.verdict = infinite + std::to_string(a.noncommuting_count) + " noncommuting double cosets)";
        for (const auto &c : a.cosets)
          if (c.noncommuting)
            dc.witness += (dc.witness.empty() ? "" : " ") + el(c.representative);
      }
      out.push_back(std::move(dc));
    }

  ScreenVerdict simple{"simple group", std::nullopt, std::nullopt, true, "no obstruction", ""};
  ScreenVerdict sym{"symmetric group", std::nullopt, std::nullopt, true, "no obstruction", ""};
  if (classes.size() >= 2) {
    if (is_nonabelian_simple(G)) {
      simple.pass = false;
      simple.verdict = infinite + "nonabelian simple group, reducible V(M))";
      simple.witness = "|G|=" + std::to_string(G.order());
    }
    if (auto n = symmetric_degree(G); n && *n >= 3) {
      sym.pass = false;
      sym.verdict = infinite + "symmetric group, reducible V(M))";
      sym.witness = "S" + std::to_string(*n);
    }
  } else {
    simple.verdict = sym.verdict = "not applicable (one module)";
  }
  out.push_back(std::move(simple));
  out.push_back(std::move(sym));
  return out;
}

// ---------------------------------------------------------------------------
// Properties of finite builds

std::vector<PropertyFailure> ad_power_properties(const SchemeBuildResult &build, const EngineLimits &limits)
{
  std::vector<PropertyFailure> out;
  if (!build.finiteness || build.finiteness->verdict != Verdict::finite || !build.scheme)
    throw std::invalid_argument("ad-power properties need a finite build");
  const CartanScheme &c = *build.scheme;
  const auto &roots = build.finiteness->data.positive_roots;
  for (std::size_t obj = 0; obj < c.size(); ++obj) {
    const YDTuple &t = build.objects[obj];
    for (std::size_t i = 0; i < c.rank; ++i)
      for (std::size_t j = 0; j < c.rank; ++j) {
        if (i == j)
          continue;
        long top = -c.cartan[obj][i][j];
        for (long mm = 0; mm <= top; ++mm) {
          std::size_t m = static_cast<std::size_t>(mm);
          YDModule u = ad_power(t.modules[i], t.modules[j], m, limits);
          if (u.is_zero() || !is_irreducible(u))
            out.push_back({"irreducible ad power", obj, i, j, m,
                           u.is_zero() ? "zero below -a_ij" : "reducible"});
          IntVector gamma(c.rank, 0);
          gamma[j] = 1;
          gamma[i] += mm;
          if (std::find(roots[obj].begin(), roots[obj].end(), gamma) == roots[obj].end())
            out.push_back({"root membership", obj, i, j, m, vector_string(gamma) + " is not a positive real root"});
        }
      }
  }
  return out;
}

} // namespace nichols
