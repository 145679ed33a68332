#pragma once

// Generalized Cartan matrices, reflections and Cartan schemes.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nichols {

using IntVector = std::vector<long>;
using IntMatrix = std::vector<std::vector<long>>;

IntMatrix int_identity(std::size_t n);
IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
IntVector operator*(const IntMatrix &a, const IntVector &v);
long determinant(const IntMatrix &a);
std::string matrix_string(const IntMatrix &a);
std::string vector_string(const IntVector &v);

/// Indices are 0-based here; reports print them 1-based.
struct AxiomViolation
{
  std::string axiom;   // "M1", "M2", "C1", "C2"
  std::string object;  // empty for a bare matrix
  std::size_t i = 0;
  std::size_t j = 0;
  std::string message;
};

struct ValidityReport
{
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// First violated axiom, scanning entries row by row.  Throws on non-square input.
ValidityReport validate_gcm(const IntMatrix &a);

struct CartanScheme
{
  std::size_t rank = 0;
  std::vector<std::string> ids;
  std::vector<IntMatrix> cartan;
  /// reflections[N][i] = r_i(N)
  std::vector<std::vector<std::size_t>> reflections;

  std::size_t size() const { return ids.size(); }
  std::optional<std::size_t> find(const std::string &id) const;
  std::size_t object(const std::string &id) const;

  /// One object with r_i = id for all i.
  static CartanScheme standard(const IntMatrix &a, const std::string &id = "N");
};

/// All violations of (M1)(M2) per object, then (C1), then (C2).
/// Throws std::invalid_argument on dangling reflection targets.
ValidityReport validate_scheme(const CartanScheme &c);

/// s_i^N as an integer matrix whose columns are the images of the simple roots.
IntMatrix reflection_matrix(const CartanScheme &c, std::size_t object, std::size_t i);
IntMatrix reflection_matrix(const IntMatrix &a, std::size_t i);

struct FiniteTypeResult
{
  bool finite = false;
  std::vector<std::string> labels;  // one per connected component
  std::string reason;               // why a component is not of finite type
};

/// Dynkin diagram recognition, component by component.  With rows as
/// coroots, B_n has a_{n,n-1} = -2 and C_n has a_{n-1,n} = -2.
FiniteTypeResult finite_type_classify(const IntMatrix &a);

} // namespace nichols
