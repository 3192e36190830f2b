#include "torodyn/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "torodyn/errors.hpp"

namespace torodyn {

IMat IMat::identity(int dim) {
  IMat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::from_rows(const std::vector<std::vector<long long>>& rows) {
  int n = static_cast<int>(rows.size());
  IMat m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw DimensionMismatch("matrix rows must form a square matrix");
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IMat operator*(const IMat& x, const IMat& y) {
  if (x.n != y.n) throw DimensionMismatch("matrix product: dimension mismatch");
  IMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const BigInt& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

IMat operator+(const IMat& x, const IMat& y) {
  if (x.n != y.n) throw DimensionMismatch("matrix sum: dimension mismatch");
  IMat r(x.n);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

IMat operator-(const IMat& x, const IMat& y) {
  if (x.n != y.n) throw DimensionMismatch("matrix difference: dimension mismatch");
  IMat r(x.n);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

IMat operator-(const IMat& x) {
  IMat r(x.n);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = -x.a[i];
  return r;
}

IMat pow(const IMat& m, unsigned k) {
  IMat result = IMat::identity(m.n);
  IMat base = m;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

IMat transpose(const IMat& m) {
  IMat r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r.at(j, i) = m.at(i, j);
  return r;
}

BigInt trace(const IMat& m) {
  BigInt t = 0;
  for (int i = 0; i < m.n; ++i) t += m.at(i, i);
  return t;
}

// Bareiss fraction-free elimination: all divisions are exact over Z.
BigInt det(const IMat& m) {
  int n = m.n;
  if (n == 0) return 1;
  IMat w = m;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : BigInt(-w.at(n - 1, n - 1));
}

// Faddeev-LeVerrier: exact over Z (every division by k is exact).
// p(x) = x^n + c[1] x^(n-1) + ... + c[n].
std::vector<BigInt> char_poly(const IMat& m) {
  int n = m.n;
  std::vector<BigInt> c(static_cast<size_t>(n) + 1);
  c[0] = 1;
  IMat mk = m;
  for (int k = 1; k <= n; ++k) {
    BigInt ck = -trace(mk) / k;
    c[static_cast<size_t>(k)] = ck;
    if (k < n) {
      IMat shifted = mk;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += ck;
      mk = m * shifted;
    }
  }
  // Reorder to low degree first.
  std::vector<BigInt> coeffs(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) coeffs[static_cast<size_t>(n - k)] = c[static_cast<size_t>(k)];
  return coeffs;
}

IMat unimodular_inverse(const IMat& m) {
  BigInt d = det(m);
  if (d != 1 && d != -1)
    throw PreconditionError("unimodular_inverse: determinant is not +-1");
  // adj(M) via Faddeev-LeVerrier tail: M^-1 = -(M_{n-1} + c_{n-1} I)/c_n.
  int n = m.n;
  if (n == 0) return m;
  IMat mk = m;
  BigInt ck;
  IMat prev = IMat::identity(n);  // M_0 + c_0 I with M_0 = 0, c_0 = 1
  for (int k = 1; k <= n; ++k) {
    ck = -trace(mk) / k;
    if (k < n) {
      IMat shifted = mk;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += ck;
      prev = shifted;
      mk = m * shifted;
    }
  }
  // c_n = ck; inverse = -prev / c_n with c_n = ±1.
  IMat inv(n);
  for (size_t i = 0; i < inv.a.size(); ++i) inv.a[i] = -prev.a[i] / ck;
  return inv;
}

BigInt max_abs_row_sum(const IMat& m) {
  BigInt best = 0;
  for (int i = 0; i < m.n; ++i) {
    BigInt s = 0;
    for (int j = 0; j < m.n; ++j) s += iabs(m.at(i, j));
    if (s > best) best = s;
  }
  return best;
}

std::vector<BigInt> apply(const IMat& m, const std::vector<BigInt>& v) {
  if (static_cast<int>(v.size()) != m.n)
    throw DimensionMismatch("matrix apply: vector length mismatch");
  std::vector<BigInt> r(v.size());
  for (int i = 0; i < m.n; ++i) {
    BigInt s = 0;
    for (int j = 0; j < m.n; ++j) s += m.at(i, j) * v[static_cast<size_t>(j)];
    r[static_cast<size_t>(i)] = s;
  }
  return r;
}

ToralMap ToralMap::from_matrix(IMat m) {
  ToralMap t;
  t.dim = m.n;
  t.determinant = det(m);
  t.entries = std::move(m);
  if (t.determinant == 1 || t.determinant == -1)
    t.kind = MapKind::automorphism;
  else if (t.determinant != 0)
    t.kind = MapKind::epimorphism;
  else
    t.kind = MapKind::singular;
  return t;
}

ToralMap ToralMap::times(long long k) {
  IMat m(1);
  m.at(0, 0) = k;
  return from_matrix(std::move(m));
}

QMat::QMat(const IMat& m) : rows(m.n), cols(m.n), a(m.a.size()) {
  for (size_t i = 0; i < a.size(); ++i) a[i] = Rational(m.a[i]);
}

QMat QMat::identity(int dim) {
  QMat m(dim, dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

QMat operator*(const QMat& x, const QMat& y) {
  if (x.cols != y.rows) throw DimensionMismatch("rational product: dimension mismatch");
  QMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rational& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

QMat operator+(const QMat& x, const QMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw DimensionMismatch("rational sum: dimension mismatch");
  QMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

QMat operator-(const QMat& x, const QMat& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw DimensionMismatch("rational difference: dimension mismatch");
  QMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

namespace {

// Row-reduce in place; returns pivot columns. Full row echelon with
// back-substitution (reduced form) when `reduced` is set.
std::vector<int> row_echelon(QMat& m, bool reduced) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rational inv = m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) /= inv;
    int start = reduced ? 0 : r + 1;
    for (int i = start; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(QMat m) { return static_cast<int>(row_echelon(m, false).size()); }

std::vector<std::vector<Rational>> kernel_basis(const QMat& m) {
  QMat w = m;
  std::vector<int> pivots = row_echelon(w, true);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<size_t>(m.cols));
    v[static_cast<size_t>(free)] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = -w.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMat> solve(const QMat& a, const QMat& b) {
  if (a.rows != a.cols || a.rows != b.rows)
    throw DimensionMismatch("solve: shape mismatch");
  QMat aug(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols; ++j) aug.at(i, a.cols + j) = b.at(i, j);
  }
  std::vector<int> pivots = row_echelon(aug, true);
  if (static_cast<int>(pivots.size()) != a.cols) return std::nullopt;
  QMat x(a.cols, b.cols);
  for (int i = 0; i < a.cols; ++i)
    for (int j = 0; j < b.cols; ++j) x.at(i, j) = aug.at(i, a.cols + j);
  return x;
}

std::vector<Rational> char_poly(const QMat& m) {
  if (m.rows != m.cols) throw DimensionMismatch("char_poly: square matrix required");
  int n = m.rows;
  std::vector<Rational> c(static_cast<size_t>(n) + 1);
  c[0] = 1;
  QMat mk = m;
  for (int k = 1; k <= n; ++k) {
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += mk.at(i, i);
    Rational ck = -tr / k;
    c[static_cast<size_t>(k)] = ck;
    if (k < n) {
      QMat shifted = mk;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += ck;
      mk = m * shifted;
    }
  }
  std::vector<Rational> coeffs(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) coeffs[static_cast<size_t>(n - k)] = c[static_cast<size_t>(k)];
  return coeffs;
}

QMat restrict_to_subspace(const QMat& m, const QMat& basis) {
  if (m.cols != basis.rows) throw DimensionMismatch("restrict: shape mismatch");
  QMat image = m * basis;
  // Solve basis * X = image column-by-column via least structure: augment and
  // reduce; consistency failure means the subspace was not invariant.
  QMat aug(basis.rows, basis.cols + image.cols);
  for (int i = 0; i < basis.rows; ++i) {
    for (int j = 0; j < basis.cols; ++j) aug.at(i, j) = basis.at(i, j);
    for (int j = 0; j < image.cols; ++j) aug.at(i, basis.cols + j) = image.at(i, j);
  }
  std::vector<int> pivots = row_echelon(aug, true);
  for (int c : pivots)
    if (c >= basis.cols)
      throw PreconditionError("restrict_to_subspace: subspace is not invariant");
  if (static_cast<int>(pivots.size()) != basis.cols)
    throw PreconditionError("restrict_to_subspace: basis is not independent");
  QMat x(basis.cols, image.cols);
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < image.cols; ++j)
      x.at(static_cast<int>(r), j) = aug.at(static_cast<int>(r), basis.cols + j);
  return x;
}

std::vector<BigInt> primitive_integer_vector(const std::vector<Rational>& v) {
  BigInt l = 1;
  for (const Rational& q : v) l = boost::multiprecision::lcm(l, den(q));
  std::vector<BigInt> w(v.size());
  BigInt g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = num(v[i]) * (l / den(v[i]));
    g = boost::multiprecision::gcd(g, iabs(w[i]));
  }
  if (g == 0) return w;
  int sign = 0;
  for (size_t i = 0; i < w.size() && sign == 0; ++i)
    if (w[i] != 0) sign = w[i] > 0 ? 1 : -1;
  BigInt scale = sign < 0 ? BigInt(-g) : g;
  for (BigInt& x : w) x /= scale;
  return w;
}

}  // namespace torodyn
