#include "nichols/exactfield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nichols {

namespace {

struct FieldData
{
  unsigned order = 1;
  unsigned phi = 1;
  // reduction[k] = x^k mod Phi_N for 0 <= k < N, length phi each
  std::vector<std::vector<long>> reduction;
};

std::mutex &cache_mutex()
{
  static std::mutex m;
  return m;
}

std::map<unsigned, std::vector<long>> &poly_cache()
{
  static std::map<unsigned, std::vector<long>> cache;
  return cache;
}

std::vector<long> compute_cyclotomic_locked(unsigned n);

const std::vector<long> &cyclotomic_locked(unsigned n)
{
  auto &cache = poly_cache();
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;
  auto poly = compute_cyclotomic_locked(n);
  return cache.emplace(n, std::move(poly)).first->second;
}

// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division by monic
// integer polynomials.
std::vector<long> compute_cyclotomic_locked(unsigned n)
{
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0)
      continue;
    const auto &den = cyclotomic_locked(d);
    std::size_t dd = den.size() - 1;
    std::size_t nd = num.size() - 1;
    std::vector<long> quot(nd - dd + 1, 0);
    for (std::size_t k = nd + 1; k-- > dd;) {
      long c = num[k];
      quot[k - dd] = c;
      if (c == 0)
        continue;
      for (std::size_t j = 0; j <= dd; ++j)
        num[k - dd + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

std::map<unsigned, std::unique_ptr<FieldData>> &field_cache()
{
  static std::map<unsigned, std::unique_ptr<FieldData>> cache;
  return cache;
}

const FieldData &field_data(unsigned n)
{
  if (n == 0)
    throw std::invalid_argument("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto &cache = field_cache();
  auto it = cache.find(n);
  if (it != cache.end())
    return *it->second;

  auto fd = std::make_unique<FieldData>();
  fd->order = n;
  const auto &phi_poly = cyclotomic_locked(n);
  unsigned phi = static_cast<unsigned>(phi_poly.size() - 1);
  fd->phi = phi;
  fd->reduction.assign(n, std::vector<long>(phi, 0));
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  for (unsigned k = 0; k < n; ++k) {
    fd->reduction[k] = cur;
    // cur <- x * cur mod Phi
    long top = cur[phi - 1];
    for (unsigned j = phi - 1; j > 0; --j)
      cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (unsigned j = 0; j < phi; ++j)
        cur[j] -= top * phi_poly[j];
  }
  return *cache.emplace(n, std::move(fd)).first->second;
}

unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

using Poly = std::vector<Rational>;

void trim(Poly &p)
{
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

// Division with remainder in Q[x].
void poly_divmod(const Poly &a, const Poly &b, Poly &q, Poly &r)
{
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  while (r.size() >= b.size() && !r.empty()) {
    std::size_t shift = r.size() - b.size();
    Rational c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[shift + j] -= c * b[j];
    trim(r);
  }
}

Poly poly_sub_mul(const Poly &a, const Poly &q, const Poly &b)
{
  // a - q*b
  Poly out(std::max(a.size(), q.size() + b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

std::string power_term(unsigned order, std::size_t k)
{
  std::ostringstream os;
  os << "z" << order;
  if (k != 1)
    os << "^" << k;
  return os.str();
}

} // namespace

Rational parse_rational(const std::string &text)
{
  if (text.empty() || text.find_first_of(".eE ") != std::string::npos)
    throw std::invalid_argument("malformed rational '" + text + "'");
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational '" + text + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string rational_string(const Rational &r) { return r.get_str(); }

unsigned euler_phi(unsigned n)
{
  if (n == 0)
    return 0;
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0)
        m /= p;
      result -= result / p;
    }
  }
  if (m > 1)
    result -= result / m;
  return result;
}

const std::vector<long> &cyclotomic_polynomial(unsigned n)
{
  if (n == 0)
    throw std::invalid_argument("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(cache_mutex());
  return cyclotomic_locked(n);
}

// ---------------------------------------------------------------------------

Cyclotomic::Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}

Cyclotomic::Cyclotomic(long value) : order_(1), coeffs_(1, Rational(value)) {}

Cyclotomic::Cyclotomic(const Rational &value, unsigned order)
    : order_(order), coeffs_(field_data(order).phi, Rational(0))
{
  coeffs_[0] = value;
  coeffs_[0].canonicalize();
}

Cyclotomic::Cyclotomic(unsigned order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs))
{
}

Cyclotomic Cyclotomic::zeta(unsigned order, long power)
{
  const auto &fd = field_data(order);
  long e = power % static_cast<long>(order);
  if (e < 0)
    e += order;
  std::vector<Rational> c(fd.phi, Rational(0));
  const auto &red = fd.reduction[static_cast<std::size_t>(e)];
  for (unsigned j = 0; j < fd.phi; ++j)
    c[j] = red[j];
  return Cyclotomic(order, std::move(c));
}

Cyclotomic Cyclotomic::from_powers(unsigned order, std::span<const Rational> coeffs)
{
  const auto &fd = field_data(order);
  std::vector<Rational> c(fd.phi, Rational(0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Rational ck = coeffs[k];
    ck.canonicalize();
    if (ck == 0)
      continue;
    const auto &red = fd.reduction[k % order];
    for (unsigned j = 0; j < fd.phi; ++j)
      if (red[j] != 0)
        c[j] += ck * red[j];
  }
  return Cyclotomic(order, std::move(c));
}

bool Cyclotomic::is_zero() const
{
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational &c) { return c == 0; });
}

bool Cyclotomic::is_rational() const
{
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational &c) { return c == 0; });
}

bool Cyclotomic::is_one() const { return is_rational() && coeffs_[0] == 1; }

Rational Cyclotomic::rational_value() const
{
  if (!is_rational())
    throw std::domain_error("cyclotomic value " + str() + " is not rational");
  return coeffs_[0];
}

Cyclotomic Cyclotomic::lifted(unsigned order) const
{
  if (order == order_)
    return *this;
  if (is_rational())
    return Cyclotomic(coeffs_[0], order);
  if (order == 0 || order % order_ != 0)
    throw std::invalid_argument("cannot lift Q(z" + std::to_string(order_) + ") into Q(z" +
                                std::to_string(order) + ")");
  const auto &fd = field_data(order);
  unsigned step = order / order_;
  std::vector<Rational> c(fd.phi, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0)
      continue;
    const auto &red = fd.reduction[(k * step) % order];
    for (unsigned j = 0; j < fd.phi; ++j)
      if (red[j] != 0)
        c[j] += coeffs_[k] * red[j];
  }
  return Cyclotomic(order, std::move(c));
}

Cyclotomic Cyclotomic::conj() const
{
  if (is_rational())
    return *this;
  const auto &fd = field_data(order_);
  std::vector<Rational> c(fd.phi, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0)
      continue;
    const auto &red = fd.reduction[(order_ - k % order_) % order_];
    for (unsigned j = 0; j < fd.phi; ++j)
      if (red[j] != 0)
        c[j] += coeffs_[k] * red[j];
  }
  return Cyclotomic(order_, std::move(c));
}

Cyclotomic Cyclotomic::inverse() const
{
  if (is_zero())
    throw std::domain_error("division by zero in Q(z" + std::to_string(order_) + ")");
  if (is_rational())
    return Cyclotomic(Rational(1) / coeffs_[0], order_);

  // Extended Euclid in Q[x]: find u with a*u = 1 mod Phi_N.
  const auto &phi_poly = cyclotomic_polynomial(order_);
  Poly m;
  for (long c : phi_poly)
    m.emplace_back(c);
  Poly a = coeffs_;
  trim(a);
  Poly r0 = m, r1 = a;
  Poly s0, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = poly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty())
      throw std::logic_error("cyclotomic inverse: non-coprime polynomial");
  }
  Rational lead = r1[0];
  std::vector<Rational> out(coeffs_.size(), Rational(0));
  Poly q, rem;
  poly_divmod(s1, m, q, rem);
  for (std::size_t k = 0; k < rem.size(); ++k)
    out[k] = rem[k] / lead;
  return Cyclotomic(order_, std::move(out));
}

Cyclotomic Cyclotomic::pow(long e) const
{
  if (e < 0)
    return inverse().pow(-e);
  Cyclotomic result(Rational(1), order_);
  Cyclotomic base = *this;
  while (e > 0) {
    if (e & 1)
      result *= base;
    e >>= 1;
    if (e > 0)
      base *= base;
  }
  return result;
}

std::optional<unsigned> Cyclotomic::root_of_unity_exponent() const
{
  for (unsigned k = 0; k < order_; ++k)
    if (zeta(order_, k) == *this)
      return k;
  return std::nullopt;
}

unsigned Cyclotomic::common_order(const Cyclotomic &a, const Cyclotomic &b)
{
  if (a.order_ == b.order_)
    return a.order_;
  bool ra = a.is_rational(), rb = b.is_rational();
  if (ra && !rb)
    return b.order_;
  if (rb && !ra)
    return a.order_;
  return lcm_u(a.order_, b.order_);
}

void Cyclotomic::reduce_to(unsigned order)
{
  if (order != order_)
    *this = lifted(order);
}

Cyclotomic &Cyclotomic::operator+=(const Cyclotomic &o)
{
  unsigned n = common_order(*this, o);
  reduce_to(n);
  if (o.order_ == n) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      coeffs_[k] += o.coeffs_[k];
  } else {
    Cyclotomic l = o.lifted(n);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      coeffs_[k] += l.coeffs_[k];
  }
  return *this;
}

Cyclotomic &Cyclotomic::operator-=(const Cyclotomic &o)
{
  unsigned n = common_order(*this, o);
  reduce_to(n);
  if (o.order_ == n) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      coeffs_[k] -= o.coeffs_[k];
  } else {
    Cyclotomic l = o.lifted(n);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      coeffs_[k] -= l.coeffs_[k];
  }
  return *this;
}

Cyclotomic &Cyclotomic::operator*=(const Cyclotomic &o)
{
  unsigned n = common_order(*this, o);
  if (o.is_rational()) {
    reduce_to(n);
    const Rational &s = o.coeffs_[0];
    for (auto &c : coeffs_)
      c *= s;
    return *this;
  }
  if (is_rational()) {
    Rational s = coeffs_[0];
    *this = o.lifted(n);
    for (auto &c : coeffs_)
      c *= s;
    return *this;
  }
  Cyclotomic a = lifted(n);
  Cyclotomic b = o.lifted(n);
  const auto &fd = field_data(n);
  std::vector<Rational> acc(n, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0)
        continue;
      acc[(i + j) % n] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  std::vector<Rational> out(fd.phi, Rational(0));
  for (unsigned k = 0; k < n; ++k) {
    if (acc[k] == 0)
      continue;
    if (k < fd.phi) {
      out[k] += acc[k];
      continue;
    }
    const auto &red = fd.reduction[k];
    for (unsigned j = 0; j < fd.phi; ++j)
      if (red[j] != 0)
        out[j] += acc[k] * red[j];
  }
  order_ = n;
  coeffs_ = std::move(out);
  return *this;
}

Cyclotomic &Cyclotomic::operator/=(const Cyclotomic &o) { return *this *= o.inverse(); }

Cyclotomic Cyclotomic::operator-() const
{
  Cyclotomic r = *this;
  for (auto &c : r.coeffs_)
    c = -c;
  return r;
}

bool operator==(const Cyclotomic &a, const Cyclotomic &b)
{
  if (a.order_ == b.order_)
    return a.coeffs_ == b.coeffs_;
  unsigned n = Cyclotomic::common_order(a, b);
  return a.lifted(n).coeffs_ == b.lifted(n).coeffs_;
}

int Cyclotomic::compare(const Cyclotomic &a, const Cyclotomic &b)
{
  unsigned n = common_order(a, b);
  Cyclotomic la = a.lifted(n), lb = b.lifted(n);
  for (std::size_t k = 0; k < la.coeffs_.size(); ++k) {
    int c = cmp(la.coeffs_[k], lb.coeffs_[k]);
    if (c != 0)
      return c < 0 ? -1 : 1;
  }
  return 0;
}

std::string Cyclotomic::str() const
{
  if (is_rational())
    return rational_string(coeffs_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational &c = coeffs_[k];
    if (c == 0)
      continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    if (k == 0) {
      os << rational_string(mag);
    } else {
      if (mag != 1)
        os << rational_string(mag) << "*";
      os << power_term(order_, k);
    }
    first = false;
  }
  return os.str();
}

Cyclotomic normalize(unsigned order, std::span<const Rational> coeffs)
{
  if (order == 0)
    throw std::invalid_argument("cyclotomic order must be positive");
  return Cyclotomic::from_powers(order, coeffs);
}

Cyclotomic galois_conjugate(const Cyclotomic &x) { return x.conj(); }

// ---------------------------------------------------------------------------

SparseVector axpy(const SparseVector &y, const Cyclotomic &a, const SparseVector &x)
{
  SparseVector out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].first < y[i].first) {
      Cyclotomic v = a * x[j].second;
      if (!v.is_zero())
        out.emplace_back(x[j].first, std::move(v));
      ++j;
    } else {
      Cyclotomic v = y[i].second + a * x[j].second;
      if (!v.is_zero())
        out.emplace_back(x[j].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVector scaled(const SparseVector &x, const Cyclotomic &a)
{
  SparseVector out;
  if (a.is_zero())
    return out;
  out.reserve(x.size());
  for (const auto &[k, v] : x)
    out.emplace_back(k, v * a);
  return out;
}

Cyclotomic coefficient(const SparseVector &x, std::uint64_t key)
{
  auto it = std::lower_bound(x.begin(), x.end(), key,
                             [](const auto &p, std::uint64_t k) { return p.first < k; });
  if (it != x.end() && it->first == key)
    return it->second;
  return Cyclotomic();
}

void SparseAccumulator::add(std::uint64_t key, const Cyclotomic &value)
{
  if (value.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(key, value);
  if (!inserted)
    it->second += value;
}

void SparseAccumulator::add(const SparseVector &v, const Cyclotomic &scale)
{
  for (const auto &[k, x] : v)
    add(k, x * scale);
}

SparseVector SparseAccumulator::take()
{
  SparseVector out;
  out.reserve(terms_.size());
  for (auto &[k, v] : terms_)
    if (!v.is_zero())
      out.emplace_back(k, std::move(v));
  terms_.clear();
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  return out;
}

// ---------------------------------------------------------------------------

SparseVector EchelonBasis::reduce(SparseVector v) const
{
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = pivot_.find(v[pos].first);
    if (it == pivot_.end()) {
      ++pos;
      continue;
    }
    Cyclotomic c = v[pos].second;
    v = axpy(v, -c, basis_[it->second]);
    // entries before pos are untouched non-pivot keys, so resume there
  }
  return v;
}

bool EchelonBasis::insert(SparseVector v)
{
  // eliminate from the front so that the leading key becomes a new pivot
  while (!v.empty()) {
    auto it = pivot_.find(v.front().first);
    if (it == pivot_.end())
      break;
    Cyclotomic c = v.front().second;
    v = axpy(v, -c, basis_[it->second]);
  }
  if (v.empty())
    return false;
  Cyclotomic inv = v.front().second.inverse();
  v = scaled(v, inv);
  pivot_[v.front().first] = basis_.size();
  basis_.push_back(std::move(v));
  reduced_ = basis_.size() == 1;
  return true;
}

void EchelonBasis::make_reduced()
{
  if (reduced_)
    return;
  std::vector<std::size_t> idx(basis_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return basis_[a].front().first > basis_[b].front().first; });
  for (std::size_t i : idx) {
    SparseVector &v = basis_[i];
    std::vector<std::pair<std::size_t, Cyclotomic>> hits;
    for (std::size_t p = 1; p < v.size(); ++p) {
      auto it = pivot_.find(v[p].first);
      if (it != pivot_.end())
        hits.emplace_back(it->second, v[p].second);
    }
    for (const auto &[j, c] : hits)
      v = axpy(v, -c, basis_[j]);
  }
  reduced_ = true;
}

std::optional<std::vector<Cyclotomic>> EchelonBasis::coordinates(const SparseVector &v) const
{
  if (!reduced_)
    throw std::logic_error("EchelonBasis::coordinates requires make_reduced()");
  std::vector<Cyclotomic> coords(basis_.size());
  SparseVector rest = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    coords[i] = coefficient(v, basis_[i].front().first);
    if (!coords[i].is_zero())
      rest = axpy(rest, -coords[i], basis_[i]);
  }
  if (!rest.empty())
    return std::nullopt;
  return coords;
}

// ---------------------------------------------------------------------------

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

ExactMatrix ExactMatrix::identity(std::size_t n)
{
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.data_[i].emplace_back(i, Cyclotomic(1));
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Cyclotomic>> &rows)
{
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      if (!rows[r][c].is_zero())
        m.data_[r].emplace_back(c, rows[r][c]);
  }
  return m;
}

std::size_t ExactMatrix::nonzeros() const
{
  std::size_t n = 0;
  for (const auto &r : data_)
    n += r.size();
  return n;
}

double ExactMatrix::density() const
{
  if (rows_ == 0 || cols_ == 0)
    return 0.0;
  return static_cast<double>(nonzeros()) / static_cast<double>(rows_ * cols_);
}

unsigned ExactMatrix::common_order() const
{
  unsigned n = 1;
  for (const auto &r : data_)
    for (const auto &[c, v] : r)
      if (!v.is_rational())
        n = lcm_u(n, v.order());
  return n;
}

Cyclotomic ExactMatrix::at(std::size_t r, std::size_t c) const
{
  if (r >= rows_ || c >= cols_)
    throw std::out_of_range("matrix index out of range");
  return coefficient(data_[r], c);
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Cyclotomic &value)
{
  if (r >= rows_ || c >= cols_)
    throw std::out_of_range("matrix index out of range");
  auto &row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto &p, std::uint64_t k) { return p.first < k; });
  if (it != row.end() && it->first == c) {
    if (value.is_zero())
      row.erase(it);
    else
      it->second = value;
  } else if (!value.is_zero()) {
    row.insert(it, {c, value});
  }
}

void ExactMatrix::set_row(std::size_t r, SparseVector row)
{
  if (r >= rows_)
    throw std::out_of_range("matrix row out of range");
  data_[r] = std::move(row);
}

std::vector<Cyclotomic> ExactMatrix::column(std::size_t c) const
{
  std::vector<Cyclotomic> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    out[r] = coefficient(data_[r], c);
  return out;
}

ExactMatrix ExactMatrix::transpose() const
{
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto &[c, v] : data_[r])
      t.data_[c].emplace_back(r, v);
  return t;
}

ExactMatrix ExactMatrix::lifted(unsigned order) const
{
  ExactMatrix m = *this;
  for (auto &r : m.data_)
    for (auto &[c, v] : r)
      v = v.lifted(order);
  return m;
}

Cyclotomic ExactMatrix::trace() const
{
  Cyclotomic t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
    t += coefficient(data_[i], i);
  return t;
}

bool ExactMatrix::is_zero() const
{
  return std::all_of(data_.begin(), data_.end(), [](const auto &r) { return r.empty(); });
}

std::vector<Cyclotomic> ExactMatrix::apply(const std::vector<Cyclotomic> &x) const
{
  if (x.size() != cols_)
    throw std::invalid_argument("dimension mismatch in matrix-vector product");
  std::vector<Cyclotomic> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto &[c, v] : data_[r])
      y[r] += v * x[c];
  return y;
}

ExactMatrix &ExactMatrix::operator+=(const ExactMatrix &o)
{
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("dimension mismatch in matrix sum");
  for (std::size_t r = 0; r < rows_; ++r)
    data_[r] = axpy(data_[r], Cyclotomic(1), o.data_[r]);
  return *this;
}

ExactMatrix &ExactMatrix::operator-=(const ExactMatrix &o)
{
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("dimension mismatch in matrix difference");
  for (std::size_t r = 0; r < rows_; ++r)
    data_[r] = axpy(data_[r], Cyclotomic(-1), o.data_[r]);
  return *this;
}

ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b)
{
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("dimension mismatch in matrix product");
  ExactMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    SparseAccumulator acc;
    for (const auto &[k, v] : a.data_[r])
      acc.add(b.data_[k], v);
    m.data_[r] = acc.take();
  }
  return m;
}

ExactMatrix operator*(const Cyclotomic &s, const ExactMatrix &a)
{
  ExactMatrix m(a.rows_, a.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    m.data_[r] = scaled(a.data_[r], s);
  return m;
}

bool operator==(const ExactMatrix &a, const ExactMatrix &b)
{
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    return false;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    if (a.data_[r].size() != b.data_[r].size())
      return false;
    for (std::size_t i = 0; i < a.data_[r].size(); ++i)
      if (a.data_[r][i].first != b.data_[r][i].first || a.data_[r][i].second != b.data_[r][i].second)
        return false;
  }
  return true;
}

// Gauss-Jordan elimination on sparse rows.  The pivot row for each column is
// the candidate with the fewest nonzeros.
RankKernelImage rank_kernel_image(const ExactMatrix &a)
{
  std::vector<SparseVector> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (!a.row(r).empty())
      rows.push_back(a.row(r));

  std::vector<SparseVector> pivots;  // reduced pivot rows
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < a.cols() && !rows.empty(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].front().first == c && (best == rows.size() || rows[i].size() < rows[best].size()))
        best = i;
    if (best == rows.size())
      continue;
    SparseVector p = scaled(rows[best], rows[best].front().second.inverse());
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
    std::vector<SparseVector> rest;
    rest.reserve(rows.size());
    for (auto &r : rows) {
      if (r.front().first == c) {
        Cyclotomic f = r.front().second;
        auto nr = axpy(r, -f, p);
        if (!nr.empty())
          rest.push_back(std::move(nr));
      } else {
        rest.push_back(std::move(r));
      }
    }
    rows = std::move(rest);
    for (auto &q : pivots) {
      Cyclotomic f = coefficient(q, c);
      if (!f.is_zero())
        q = axpy(q, -f, p);
    }
    pivots.push_back(std::move(p));
    pivot_cols.push_back(c);
  }

  RankKernelImage out;
  out.rank = pivots.size();
  out.pivot_columns = pivot_cols;
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivot_cols)
    is_pivot[c] = true;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f])
      continue;
    std::vector<Cyclotomic> k(a.cols());
    k[f] = Cyclotomic(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      k[pivot_cols[i]] = -coefficient(pivots[i], f);
    out.kernel_basis.push_back(std::move(k));
  }
  for (auto c : pivot_cols)
    out.image_basis.push_back(a.column(c));
  return out;
}

std::size_t rank(const ExactMatrix &a) { return rank_kernel_image(a).rank; }

} // namespace nichols
