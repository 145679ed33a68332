#include "nichols/ydmodule.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nichols {

namespace {

const std::size_t npos = static_cast<std::size_t>(-1);

void require_same_group(const YDModule &v, const YDModule &w)
{
  if (!v.group() || !w.group())
    throw std::invalid_argument("module without a group");
  if (v.group() != w.group() && v.group()->elements() != w.group()->elements())
    throw std::invalid_argument("modules over different groups");
}

// Checks h.V_s = V_{h s h^-1} for the given element.
void check_degrees(const FiniteGroup &g, const std::vector<std::size_t> &deg, std::size_t h, const ExactMatrix &m)
{
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto &[c, value] : m.row(r))
      if (deg[r] != g.conj(h, deg[c]))
        throw std::invalid_argument("action of " + g.element(h).str() + " does not map degree " +
                                    g.element(deg[c]).str() + " to its conjugate");
}

ExactMatrix restrict(const ExactMatrix &m, const std::vector<std::size_t> &idx)
{
  ExactMatrix out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      Cyclotomic x = m.at(idx[a], idx[b]);
      if (!x.is_zero())
        out.set(a, b, x);
    }
  return out;
}

Cyclotomic restricted_trace(const ExactMatrix &m, const std::vector<std::size_t> &idx)
{
  Cyclotomic t;
  for (std::size_t a : idx)
    t += m.at(a, a);
  return t;
}

ExactMatrix block_diagonal(const ExactMatrix &a, const ExactMatrix &b)
{
  ExactMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    out.set_row(r, a.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r) {
    SparseVector row;
    for (const auto &[c, x] : b.row(r))
      row.emplace_back(c + a.cols(), x);
    out.set_row(a.rows() + r, std::move(row));
  }
  return out;
}

ExactMatrix kronecker(const ExactMatrix &a, const ExactMatrix &b)
{
  ExactMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t rb = 0; rb < b.rows(); ++rb) {
      SparseVector row;
      for (const auto &[ca, x] : a.row(ra))
        for (const auto &[cb, y] : b.row(rb))
          row.emplace_back(ca * b.cols() + cb, x * y);
      out.set_row(ra * b.rows() + rb, std::move(row));
    }
  return out;
}

} // namespace

Fiber Fiber::character(const std::vector<std::pair<std::size_t, Cyclotomic>> &values)
{
  Fiber f;
  f.dim = 1;
  for (const auto &[h, x] : values)
    f.images.emplace_back(h, ExactMatrix::from_rows({{x}}));
  return f;
}

YDModule::YDModule(GroupPtr group) : group_(std::move(group))
{
  if (!group_)
    throw std::invalid_argument("null group");
  action_.assign(group_->order(), ExactMatrix(0, 0));
}

YDModule::YDModule(GroupPtr group, std::vector<std::size_t> degrees, const std::vector<ExactMatrix> &generator_action)
    : group_(std::move(group)), degree_(std::move(degrees))
{
  if (!group_)
    throw std::invalid_argument("null group");
  const FiniteGroup &g = *group_;
  const auto &gens = g.generator_indices();
  if (generator_action.size() != gens.size())
    throw std::invalid_argument("expected one matrix per group generator");
  const std::size_t n = degree_.size();
  for (std::size_t d : degree_)
    if (d >= g.order())
      throw std::invalid_argument("degree out of range");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (generator_action[k].rows() != n || generator_action[k].cols() != n)
      throw std::invalid_argument("generator matrix has the wrong size");
    check_degrees(g, degree_, gens[k], generator_action[k]);
  }
  action_.assign(g.order(), ExactMatrix());
  std::vector<bool> seen(g.order(), false);
  action_[0] = ExactMatrix::identity(n);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      std::size_t y = g.mul(gens[k], x);
      ExactMatrix m = generator_action[k] * action_[x];
      if (!seen[y]) {
        seen[y] = true;
        action_[y] = std::move(m);
        queue.push_back(y);
      } else if (action_[y] != m) {
        throw std::invalid_argument("generator matrices do not define a representation (relation fails at " +
                                    g.element(y).str() + ")");
      }
    }
  }
}

YDModule YDModule::from_actions(GroupPtr group, std::vector<std::size_t> degrees, std::vector<ExactMatrix> actions)
{
  if (!group)
    throw std::invalid_argument("null group");
  if (actions.size() != group->order())
    throw std::invalid_argument("expected one matrix per group element");
  YDModule v;
  v.group_ = std::move(group);
  v.degree_ = std::move(degrees);
  v.action_ = std::move(actions);
  for (std::size_t h : v.group_->generator_indices())
    check_degrees(*v.group_, v.degree_, h, v.action_[h]);
  return v;
}

std::vector<std::size_t> YDModule::support() const
{
  std::vector<std::size_t> s(degree_);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<std::size_t> YDModule::support_classes() const
{
  std::set<std::size_t> c;
  for (std::size_t d : degree_)
    c.insert(group_->class_of(d));
  return {c.begin(), c.end()};
}

std::vector<std::size_t> YDModule::component(std::size_t g) const
{
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < degree_.size(); ++b)
    if (degree_[b] == g)
      out.push_back(b);
  return out;
}

std::size_t YDModule::base_point() const
{
  if (degree_.empty())
    throw std::logic_error("zero module has no base point");
  return *std::min_element(degree_.begin(), degree_.end());
}

YDModule induce(const GroupPtr &group, std::size_t g, const Fiber &fiber)
{
  if (!group)
    throw std::invalid_argument("null group");
  const FiniteGroup &G = *group;
  if (g >= G.order())
    throw std::invalid_argument("base point is not in the group");
  const std::size_t d = fiber.dim;
  if (d == 0)
    throw std::invalid_argument("fiber dimension must be positive");

  std::vector<std::size_t> cent = G.centralizer_of(g);
  std::vector<bool> in_cent(G.order(), false);
  for (std::size_t c : cent)
    in_cent[c] = true;
  for (const auto &[h, m] : fiber.images) {
    if (h >= G.order() || !in_cent[h])
      throw std::invalid_argument("fiber element " + (h < G.order() ? G.element(h).str() : std::string("?")) +
                                  " is not in the centralizer of the base point");
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("fiber matrix has the wrong size");
  }

  // extend the fiber to the whole centralizer
  std::vector<std::optional<ExactMatrix>> rho(G.order());
  rho[0] = ExactMatrix::identity(d);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (const auto &[h, m] : fiber.images) {
      std::size_t y = G.mul(h, x);
      ExactMatrix p = m * *rho[x];
      if (!rho[y]) {
        rho[y] = std::move(p);
        queue.push_back(y);
      } else if (*rho[y] != p) {
        throw std::invalid_argument("fiber is not a homomorphism (relation fails at " + G.element(y).str() + ")");
      }
    }
  }
  for (std::size_t c : cent)
    if (!rho[c])
      throw std::invalid_argument("fiber elements do not generate the centralizer of the base point");

  // minimal left coset representatives of G^g
  std::vector<std::size_t> coset_of(G.order(), npos);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < G.order(); ++x) {
    if (coset_of[x] != npos)
      continue;
    for (std::size_t c : cent)
      coset_of[G.mul(x, c)] = reps.size();
    reps.push_back(x);
  }

  const std::size_t n = reps.size() * d;
  std::vector<std::size_t> degrees(n);
  for (std::size_t k = 0; k < reps.size(); ++k)
    for (std::size_t a = 0; a < d; ++a)
      degrees[k * d + a] = G.conj(reps[k], g);

  std::vector<ExactMatrix> actions(G.order());
  for (std::size_t h = 0; h < G.order(); ++h) {
    ExactMatrix m(n, n);
    std::vector<SparseVector> rows(n);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      std::size_t hx = G.mul(h, reps[k]);
      std::size_t j = coset_of[hx];
      std::size_t y = G.mul(G.inv(reps[j]), hx);
      const ExactMatrix &r = *rho[y];
      for (std::size_t a = 0; a < d; ++a)
        for (const auto &[b, x] : r.row(a))
          rows[j * d + a].emplace_back(k * d + b, x);
    }
    for (std::size_t r = 0; r < n; ++r) {
      std::sort(rows[r].begin(), rows[r].end(), [](const auto &u, const auto &v) { return u.first < v.first; });
      m.set_row(r, std::move(rows[r]));
    }
    actions[h] = std::move(m);
  }
  return YDModule::from_actions(group, std::move(degrees), std::move(actions));
}

Cyclotomic q_scalar(const YDModule &v)
{
  if (v.is_zero())
    throw std::invalid_argument("q of the zero module");
  std::optional<Cyclotomic> q;
  for (std::size_t s : v.support()) {
    auto idx = v.component(s);
    ExactMatrix m = restrict(v.action(s), idx);
    Cyclotomic c = m.at(0, 0);
    if (m != c * ExactMatrix::identity(idx.size()))
      throw std::invalid_argument("degree " + v.group()->element(s).str() + " does not act by a scalar on its component");
    if (q && *q != c)
      throw std::invalid_argument("q is not constant on the support");
    q = c;
  }
  return *q;
}

ExactMatrix braiding(const YDModule &v, const YDModule &w)
{
  require_same_group(v, w);
  const std::size_t dv = v.dim(), dw = w.dim();
  ExactMatrix c(dw * dv, dv * dw);
  // c(v_a (x) w_b) = sum_c (deg v_a . w_b)_c w_c (x) v_a
  std::vector<SparseVector> rows(dw * dv);
  for (std::size_t a = 0; a < dv; ++a) {
    const ExactMatrix &act = w.action(v.degree(a));
    for (std::size_t r = 0; r < dw; ++r)
      for (const auto &[b, x] : act.row(r))
        rows[r * dv + a].emplace_back(a * dw + b, x);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::sort(rows[r].begin(), rows[r].end(), [](const auto &p, const auto &q) { return p.first < q.first; });
    c.set_row(r, std::move(rows[r]));
  }
  return c;
}

YDModule dual(const YDModule &v)
{
  const FiniteGroup &G = *v.group();
  std::vector<std::size_t> degrees(v.dim());
  for (std::size_t b = 0; b < v.dim(); ++b)
    degrees[b] = G.inv(v.degree(b));
  std::vector<ExactMatrix> actions(G.order());
  for (std::size_t h = 0; h < G.order(); ++h)
    actions[h] = v.action(G.inv(h)).transpose();
  return YDModule::from_actions(v.group(), std::move(degrees), std::move(actions));
}

YDModule direct_sum(const YDModule &v, const YDModule &w)
{
  require_same_group(v, w);
  std::vector<std::size_t> degrees(v.degrees());
  degrees.insert(degrees.end(), w.degrees().begin(), w.degrees().end());
  std::vector<ExactMatrix> actions(v.group()->order());
  for (std::size_t h = 0; h < actions.size(); ++h)
    actions[h] = block_diagonal(v.action(h), w.action(h));
  return YDModule::from_actions(v.group(), std::move(degrees), std::move(actions));
}

YDModule tensor(const YDModule &v, const YDModule &w)
{
  require_same_group(v, w);
  const FiniteGroup &G = *v.group();
  std::vector<std::size_t> degrees;
  degrees.reserve(v.dim() * w.dim());
  for (std::size_t a = 0; a < v.dim(); ++a)
    for (std::size_t b = 0; b < w.dim(); ++b)
      degrees.push_back(G.mul(v.degree(a), w.degree(b)));
  std::vector<ExactMatrix> actions(G.order());
  for (std::size_t h = 0; h < actions.size(); ++h)
    actions[h] = kronecker(v.action(h), w.action(h));
  return YDModule::from_actions(v.group(), std::move(degrees), std::move(actions));
}

bool operator==(const GradedCharacter &a, const GradedCharacter &b)
{
  return a.class_id == b.class_id && a.base == b.base && a.elements == b.elements && a.values == b.values;
}

namespace {

GradedCharacter character_on_class(const YDModule &v, std::size_t class_id)
{
  const FiniteGroup &G = *v.group();
  GradedCharacter chi;
  chi.class_id = class_id;
  chi.base = G.classes()[class_id].representative;
  chi.elements = G.centralizer(class_id);
  auto idx = v.component(chi.base);
  chi.values.reserve(chi.elements.size());
  for (std::size_t x : chi.elements)
    chi.values.push_back(restricted_trace(v.action(x), idx));
  return chi;
}

} // namespace

GradedCharacter graded_character(const YDModule &v)
{
  auto classes = v.support_classes();
  if (classes.size() != 1)
    throw std::invalid_argument("graded character needs support in a single class, found " +
                                std::to_string(classes.size()));
  return character_on_class(v, classes[0]);
}

std::vector<GradedCharacter> graded_characters(const YDModule &v)
{
  std::vector<GradedCharacter> out;
  for (std::size_t c : v.support_classes())
    out.push_back(character_on_class(v, c));
  return out;
}

Cyclotomic character_inner_product(const FiniteGroup &g, const GradedCharacter &a, const GradedCharacter &b)
{
  (void)g;
  if (a.class_id != b.class_id || a.elements != b.elements)
    return Cyclotomic(0);
  Cyclotomic sum;
  for (std::size_t k = 0; k < a.values.size(); ++k)
    sum += a.values[k] * galois_conjugate(b.values[k]);
  return sum / Cyclotomic(static_cast<long>(a.elements.size()));
}

bool is_isomorphic(const YDModule &v, const YDModule &w)
{
  require_same_group(v, w);
  if (v.dim() != w.dim())
    return false;
  return graded_characters(v) == graded_characters(w);
}

IrreducibilityReport irreducibility(const YDModule &v)
{
  IrreducibilityReport rep;
  for (const auto &chi : graded_characters(v)) {
    ClassPart part;
    part.class_id = chi.class_id;
    part.base = chi.base;
    part.fiber_dim = v.component(chi.base).size();
    part.norm = character_inner_product(*v.group(), chi, chi);
    rep.parts.push_back(std::move(part));
  }
  rep.irreducible = rep.parts.size() == 1 && rep.parts[0].norm.is_one();
  return rep;
}

bool is_irreducible(const YDModule &v) { return irreducibility(v).irreducible; }

std::vector<QValue> constituent_q_values(const YDModule &v)
{
  const FiniteGroup &G = *v.group();
  std::vector<QValue> out;
  for (std::size_t c : v.support_classes()) {
    std::size_t g = G.classes()[c].representative;
    auto idx = v.component(g);
    ExactMatrix m = restrict(v.action(g), idx);
    unsigned ord = G.element(g).order();
    unsigned common = std::lcm(ord, std::max(1u, m.common_order()));
    ExactMatrix ml = m.lifted(common);
    for (unsigned k = 0; k < ord; ++k) {
      Cyclotomic lambda = Cyclotomic::zeta(ord, k);
      ExactMatrix shifted = ml - lambda.lifted(common) * ExactMatrix::identity(idx.size());
      std::size_t mult = idx.size() - rank(shifted);
      if (mult > 0)
        out.push_back({c, lambda, mult});
    }
  }
  return out;
}

GroupPtr diagonal_group(unsigned order, std::size_t theta)
{
  if (order == 0 || theta == 0)
    throw std::invalid_argument("diagonal group needs positive order and rank");
  const std::size_t n = static_cast<std::size_t>(order) * theta;
  std::vector<Perm> gens;
  for (std::size_t k = 0; k < theta; ++k) {
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    for (unsigned p = 0; p < order; ++p)
      img[k * order + p] = static_cast<std::uint32_t>(k * order + (p + 1) % order);
    gens.emplace_back(std::move(img));
  }
  auto g = std::make_shared<FiniteGroup>(FiniteGroup::from_generators(n, std::move(gens)));
  g->set_name("Z" + std::to_string(order) + "^" + std::to_string(theta));
  return g;
}

std::size_t diagonal_element(const FiniteGroup &g, unsigned order, const std::vector<long> &exponents)
{
  std::vector<std::uint32_t> img(g.degree());
  std::iota(img.begin(), img.end(), 0u);
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    long e = ((exponents[k] % static_cast<long>(order)) + order) % order;
    for (unsigned p = 0; p < order; ++p)
      img[k * order + p] = static_cast<std::uint32_t>(k * order + (p + e) % order);
  }
  return g.index_of(Perm(std::move(img)));
}

std::vector<YDModule> diagonal_modules(unsigned order, const std::vector<std::vector<long>> &powers)
{
  const std::size_t theta = powers.size();
  for (const auto &row : powers)
    if (row.size() != theta)
      throw std::invalid_argument("power matrix must be square");
  GroupPtr G = diagonal_group(order, theta);
  std::vector<std::size_t> gen(theta);
  for (std::size_t i = 0; i < theta; ++i) {
    std::vector<long> e(theta, 0);
    e[i] = 1;
    gen[i] = diagonal_element(*G, order, e);
  }
  std::vector<YDModule> out;
  for (std::size_t j = 0; j < theta; ++j) {
    std::vector<std::pair<std::size_t, Cyclotomic>> values;
    for (std::size_t i = 0; i < theta; ++i)
      values.emplace_back(gen[i], Cyclotomic::zeta(order, powers[i][j]));
    out.push_back(induce(G, gen[j], Fiber::character(values)));
  }
  return out;
}

} // namespace nichols
