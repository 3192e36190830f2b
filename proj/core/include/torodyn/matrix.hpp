#pragma once

#include <optional>
#include <vector>

#include "torodyn/exact.hpp"

namespace torodyn {

// Dense integer matrix, row-major, exact entries.
struct IMat {
  int n = 0;
  std::vector<BigInt> a;

  IMat() = default;
  explicit IMat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim) {}

  BigInt& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const BigInt& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static IMat identity(int dim);
  static IMat from_rows(const std::vector<std::vector<long long>>& rows);

  bool operator==(const IMat&) const = default;
};

IMat operator*(const IMat& x, const IMat& y);
IMat operator+(const IMat& x, const IMat& y);
IMat operator-(const IMat& x, const IMat& y);
IMat operator-(const IMat& x);

IMat pow(const IMat& m, unsigned k);
IMat transpose(const IMat& m);
BigInt trace(const IMat& m);
BigInt det(const IMat& m);  // Bareiss, fraction-free

// Monic char poly det(xI - M), coefficients low degree first, exact.
std::vector<BigInt> char_poly(const IMat& m);

// Exact inverse for |det| = 1; throws PreconditionError otherwise.
IMat unimodular_inverse(const IMat& m);

// max_i sum_j |m_ij|; the per-step expansion factor in the sup norm.
BigInt max_abs_row_sum(const IMat& m);

std::vector<BigInt> apply(const IMat& m, const std::vector<BigInt>& v);

// Derived classification of the induced torus map.
enum class MapKind { automorphism, epimorphism, singular };

struct ToralMap {
  int dim = 0;
  IMat entries;
  MapKind kind = MapKind::singular;
  BigInt determinant;

  static ToralMap from_matrix(IMat m);
  static ToralMap times(long long k);  // the 1x1 map x -> kx on the circle
  bool invertible() const { return kind == MapKind::automorphism; }
};

// Dense rational matrix; workhorse for invariant-subspace refinement.
struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  explicit QMat(const IMat& m);

  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static QMat identity(int dim);
  bool operator==(const QMat&) const = default;
};

QMat operator*(const QMat& x, const QMat& y);
QMat operator+(const QMat& x, const QMat& y);
QMat operator-(const QMat& x, const QMat& y);

int rank(QMat m);  // by value: Gauss elimination scratch
std::vector<std::vector<Rational>> kernel_basis(const QMat& m);

// Solve a * x = b for square nonsingular a; nullopt when singular.
std::optional<QMat> solve(const QMat& a, const QMat& b);

// Char poly of a square rational matrix, low degree first, monic.
std::vector<Rational> char_poly(const QMat& m);

// Columns of `basis` span an m-invariant subspace; returns the k x k matrix
// of the restriction in that basis. Throws if the subspace is not invariant.
QMat restrict_to_subspace(const QMat& m, const QMat& basis);

// Scale a rational vector to a primitive integer vector (gcd 1), sign fixed
// so the first nonzero entry is positive.
std::vector<BigInt> primitive_integer_vector(const std::vector<Rational>& v);

}  // namespace torodyn
