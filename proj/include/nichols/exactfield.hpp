#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N) and exact linear algebra
// over them.  Elements are stored in the power basis 1, z, ..., z^(phi(N)-1)
// reduced modulo the N-th cyclotomic polynomial, so the representation of a
// value at a fixed order is unique.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nichols {

using Rational = mpq_class;

/// Parses "p/q" or "p" (no decimal point).  Throws std::invalid_argument.
Rational parse_rational(const std::string &text);
std::string rational_string(const Rational &r);

unsigned euler_phi(unsigned n);
/// Coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<long> &cyclotomic_polynomial(unsigned n);

class Cyclotomic
{
public:
  Cyclotomic();
  Cyclotomic(long value);
  explicit Cyclotomic(const Rational &value, unsigned order = 1);

  /// zeta_N^power.
  static Cyclotomic zeta(unsigned order, long power = 1);
  /// Sum of c_k zeta_N^k for an arbitrary-length coefficient list.
  static Cyclotomic from_powers(unsigned order, std::span<const Rational> coeffs);

  unsigned order() const { return order_; }
  const std::vector<Rational> &coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;

  /// Same value expressed in Q(zeta_M); M must be a multiple of order().
  Cyclotomic lifted(unsigned order) const;
  /// Image under zeta -> zeta^-1 (complex conjugation).
  Cyclotomic conj() const;
  Cyclotomic inverse() const;
  Cyclotomic pow(long e) const;
  /// If the value equals zeta_order^k for some k, returns k in [0, order).
  std::optional<unsigned> root_of_unity_exponent() const;

  Cyclotomic &operator+=(const Cyclotomic &o);
  Cyclotomic &operator-=(const Cyclotomic &o);
  Cyclotomic &operator*=(const Cyclotomic &o);
  Cyclotomic &operator/=(const Cyclotomic &o);
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic &b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic &b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic &b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic &b) { return a /= b; }
  friend bool operator==(const Cyclotomic &a, const Cyclotomic &b);
  friend bool operator!=(const Cyclotomic &a, const Cyclotomic &b) { return !(a == b); }

  /// Total order used for canonical keys.  Only meaningful between values
  /// of the same order; mixed orders are compared after lifting.
  static int compare(const Cyclotomic &a, const Cyclotomic &b);

  /// Human-readable form, e.g. "1 + 2*z8^3" or "-1/2".
  std::string str() const;

private:
  Cyclotomic(unsigned order, std::vector<Rational> coeffs);
  static unsigned common_order(const Cyclotomic &a, const Cyclotomic &b);
  void reduce_to(unsigned order);

  unsigned order_;
  std::vector<Rational> coeffs_;
};

/// Canonical representative of sum c_k zeta_N^k.  Rejects N = 0.
Cyclotomic normalize(unsigned order, std::span<const Rational> coeffs);
Cyclotomic galois_conjugate(const Cyclotomic &x);

// ---------------------------------------------------------------------------
// Sparse vectors

/// Sorted (key, value) pairs without explicit zeros.
using SparseVector = std::vector<std::pair<std::uint64_t, Cyclotomic>>;

/// y + a*x.
SparseVector axpy(const SparseVector &y, const Cyclotomic &a, const SparseVector &x);
SparseVector scaled(const SparseVector &x, const Cyclotomic &a);
Cyclotomic coefficient(const SparseVector &x, std::uint64_t key);

/// Accumulates terms under arbitrary keys and emits a SparseVector.
class SparseAccumulator
{
public:
  void add(std::uint64_t key, const Cyclotomic &value);
  void add(const SparseVector &v, const Cyclotomic &scale);
  SparseVector take();
  bool empty() const { return terms_.empty(); }

private:
  std::unordered_map<std::uint64_t, Cyclotomic> terms_;
};

/// Incremental row-echelon basis of a subspace of a sparse coordinate space.
/// The pivot of each basis vector is its smallest key and is normalized to 1.
class EchelonBasis
{
public:
  /// Returns true if v was independent of the current span.
  bool insert(SparseVector v);
  /// Reduces v against the basis; the remainder is zero iff v is in the span.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector &v) const { return reduce(v).empty(); }

  std::size_t rank() const { return basis_.size(); }
  bool empty() const { return basis_.empty(); }

  /// Brings the basis into reduced form: pivots occur only in their own row.
  void make_reduced();
  /// Coordinates of v in the reduced basis, or nullopt if v is not in the
  /// span.  Requires make_reduced().
  std::optional<std::vector<Cyclotomic>> coordinates(const SparseVector &v) const;

  const std::vector<SparseVector> &vectors() const { return basis_; }

private:
  std::vector<SparseVector> basis_;
  std::unordered_map<std::uint64_t, std::size_t> pivot_;
  bool reduced_ = true;
};

// ---------------------------------------------------------------------------
// Matrices

class ExactMatrix
{
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_rows(const std::vector<std::vector<Cyclotomic>> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;
  double density() const;
  unsigned common_order() const;

  Cyclotomic at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Cyclotomic &value);
  const SparseVector &row(std::size_t r) const { return data_[r]; }
  void set_row(std::size_t r, SparseVector row);

  std::vector<Cyclotomic> column(std::size_t c) const;
  ExactMatrix transpose() const;
  ExactMatrix lifted(unsigned order) const;
  Cyclotomic trace() const;
  bool is_zero() const;

  std::vector<Cyclotomic> apply(const std::vector<Cyclotomic> &x) const;

  ExactMatrix &operator+=(const ExactMatrix &o);
  ExactMatrix &operator-=(const ExactMatrix &o);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix &b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix &b) { return a -= b; }
  friend ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b);
  friend ExactMatrix operator*(const Cyclotomic &s, const ExactMatrix &a);
  friend bool operator==(const ExactMatrix &a, const ExactMatrix &b);
  friend bool operator!=(const ExactMatrix &a, const ExactMatrix &b) { return !(a == b); }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> data_;
};

struct RankKernelImage
{
  std::size_t rank = 0;
  std::vector<std::vector<Cyclotomic>> kernel_basis;
  std::vector<std::vector<Cyclotomic>> image_basis;
  std::vector<std::size_t> pivot_columns;
};

RankKernelImage rank_kernel_image(const ExactMatrix &a);
std::size_t rank(const ExactMatrix &a);

} // namespace nichols
