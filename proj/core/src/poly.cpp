#include "torodyn/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "torodyn/errors.hpp"

namespace torodyn {

IPoly normalize(IPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree(const IPoly& p) { return static_cast<int>(p.size()) - 1; }

const BigInt& leading(const IPoly& p) {
  static const BigInt zero = 0;
  return p.empty() ? zero : p.back();
}

IPoly add(const IPoly& a, const IPoly& b) {
  IPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return normalize(std::move(r));
}

IPoly sub(const IPoly& a, const IPoly& b) {
  IPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  return normalize(std::move(r));
}

IPoly mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return normalize(std::move(r));
}

IPoly scale(const IPoly& a, const BigInt& c) {
  if (c == 0) return {};
  IPoly r = a;
  for (BigInt& x : r) x *= c;
  return r;
}

IPoly derivative(const IPoly& p) {
  if (p.size() <= 1) return {};
  IPoly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<unsigned>(i);
  return normalize(std::move(r));
}

BigInt eval(const IPoly& p, const BigInt& x) {
  BigInt r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

Rational eval_q(const IPoly& p, const Rational& x) {
  Rational r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + Rational(p[i]);
  return r;
}

std::optional<IPoly> try_divide(const IPoly& a, const IPoly& b) {
  if (b.empty()) return std::nullopt;
  if (a.empty()) return IPoly{};
  if (degree(a) < degree(b)) return std::nullopt;
  IPoly rem = a;
  IPoly q(static_cast<size_t>(degree(a) - degree(b)) + 1);
  for (int k = degree(a) - degree(b); k >= 0; --k) {
    BigInt top = rem[static_cast<size_t>(k + degree(b))];
    if (top == 0) continue;
    if (top % b.back() != 0) return std::nullopt;
    BigInt c = top / b.back();
    q[static_cast<size_t>(k)] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[static_cast<size_t>(k) + j] -= c * b[j];
  }
  for (const BigInt& c : rem)
    if (c != 0) return std::nullopt;
  return normalize(std::move(q));
}

BigInt content(const IPoly& p) {
  BigInt g = 0;
  for (const BigInt& c : p) g = boost::multiprecision::gcd(g, iabs(c));
  return g;
}

IPoly primitive_part(const IPoly& p) {
  if (p.empty()) return {};
  BigInt g = content(p);
  if (p.back() < 0) g = -g;
  IPoly r = p;
  for (BigInt& c : r) c /= g;
  return r;
}

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
IPoly pseudo_rem(IPoly a, const IPoly& b) {
  int db = degree(b);
  while (degree(a) >= db && !a.empty()) {
    BigInt c = a.back();
    int shift = degree(a) - db;
    for (BigInt& x : a) x *= b.back();
    for (int j = 0; j <= db; ++j)
      a[static_cast<size_t>(j + shift)] -= c * b[static_cast<size_t>(j)];
    a = normalize(std::move(a));
  }
  return a;
}

}  // namespace

IPoly poly_gcd(IPoly a, IPoly b) {
  a = primitive_part(normalize(std::move(a)));
  b = primitive_part(normalize(std::move(b)));
  while (!b.empty()) {
    IPoly r = primitive_part(pseudo_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::pair<IPoly, int>> squarefree_decomposition(const IPoly& p0) {
  std::vector<std::pair<IPoly, int>> out;
  IPoly p = primitive_part(normalize(p0));
  if (degree(p) < 1) return out;
  // Yun's algorithm; all divisions are exact for primitive input.
  IPoly dp = derivative(p);
  IPoly g = poly_gcd(p, dp);
  IPoly c = *try_divide(p, g);
  IPoly d = sub(*try_divide(dp, g), derivative(c));
  for (int i = 1; degree(c) > 0; ++i) {
    IPoly gi = poly_gcd(c, d);
    if (degree(gi) > 0) out.emplace_back(gi, i);
    c = *try_divide(c, gi);
    d = sub(*try_divide(d, gi), derivative(c));
  }
  return out;
}

IPoly reciprocal(const IPoly& p) {
  IPoly r(p.rbegin(), p.rend());
  return normalize(std::move(r));
}

const IPoly& cyclotomic(unsigned n) {
  static std::map<unsigned, IPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by the cyclotomics of all proper divisors.
  std::function<const IPoly&(unsigned)> get = [&](unsigned m) -> const IPoly& {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    IPoly xn_1(static_cast<size_t>(m) + 1);
    xn_1[0] = -1;
    xn_1[m] = 1;
    IPoly result = xn_1;
    for (unsigned d = 1; d < m; ++d)
      if (m % d == 0) result = *try_divide(result, get(d));
    return cache.emplace(m, std::move(result)).first->second;
  };
  return get(n);
}

std::vector<unsigned> cyclotomic_divisors(const IPoly& p) {
  std::vector<unsigned> hits;
  int d = degree(p);
  if (d < 1) return hits;
  // phi(n) <= d forces n <= 2 d^2 + 2 (phi(n) >= sqrt(n/2)); crude but cheap.
  unsigned bound = static_cast<unsigned>(2 * d * d + 2);
  for (unsigned n = 1; n <= bound; ++n) {
    const IPoly& cn = cyclotomic(n);
    if (degree(cn) > d) continue;
    if (try_divide(p, cn)) hits.push_back(n);
  }
  return hits;
}

QPoly to_qpoly(const IPoly& p) {
  QPoly q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = Rational(p[i]);
  return q;
}

namespace {

QPoly q_normalize(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

}  // namespace

QPoly q_derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<unsigned>(i));
  return q_normalize(std::move(r));
}

QPoly q_rem(const QPoly& a0, const QPoly& b) {
  QPoly a = q_normalize(a0);
  if (b.empty()) return a;
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[j + shift] -= c * b[j];
    a = q_normalize(std::move(a));
  }
  return a;
}

Rational q_eval(const QPoly& p, const Rational& x) {
  Rational r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

namespace {

QPoly q_quot(const QPoly& a0, const QPoly& b) {
  QPoly a = q_normalize(a0);
  if (b.empty() || a.size() < b.size()) return {};
  QPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[j + shift] -= c * b[j];
    a = q_normalize(std::move(a));
  }
  return q_normalize(std::move(q));
}

QPoly q_gcd(QPoly a, QPoly b) {
  a = q_normalize(std::move(a));
  b = q_normalize(std::move(b));
  while (!b.empty()) {
    QPoly r = q_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (Rational& c : a) c /= lead;
  }
  return a;
}

int sign_of(const Rational& q) { return q == 0 ? 0 : (q > 0 ? 1 : -1); }

int sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
  int v = 0, prev = 0;
  for (const QPoly& s : chain) {
    int sg = sign_of(q_eval(s, x));
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++v;
    prev = sg;
  }
  return v;
}

}  // namespace

QPoly q_squarefree_part(const QPoly& p) {
  QPoly g = q_gcd(p, q_derivative(p));
  if (g.size() <= 1) return q_normalize(p);
  return q_quot(p, g);
}

int sturm_count_open(const QPoly& p0, const Rational& a, const Rational& b) {
  QPoly p = q_squarefree_part(q_normalize(p0));
  if (p.size() <= 1) return 0;
  if (q_eval(p, a) == 0 || q_eval(p, b) == 0)
    throw PreconditionError("sturm_count_open: endpoint is a root");
  std::vector<QPoly> chain{p, q_derivative(p)};
  while (!chain.back().empty()) {
    QPoly r = q_rem(chain[chain.size() - 2], chain.back());
    for (Rational& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  chain.pop_back();
  // Distinct roots in (a, b] = V(a) - V(b); endpoints are not roots, so this
  // equals the open-interval count.
  return sign_variations(chain, a) - sign_variations(chain, b);
}

int count_roots_on_unit_circle(const IPoly& squarefree) {
  IPoly g = primitive_part(normalize(squarefree));
  if (degree(g) < 1) return 0;
  if (!g.empty() && g[0] == 0)
    throw PreconditionError("count_roots_on_unit_circle: zero root present");
  IPoly w = poly_gcd(g, reciprocal(g));
  int count = 0;
  IPoly x_minus_1{-1, 1}, x_plus_1{1, 1};
  if (eval(w, 1) == 0) {
    ++count;
    w = *try_divide(w, x_minus_1);
  }
  if (eval(w, -1) == 0) {
    ++count;
    w = *try_divide(w, x_plus_1);
  }
  int dw = degree(w);
  if (dw <= 0) return count;
  if (dw % 2 != 0)
    throw Error("count_roots_on_unit_circle: unexpected odd-degree palindromic part");
  // w is +-palindromic with w(+-1) != 0. Substitute y = x + 1/x using the
  // recurrence p_k(y) = x^k + x^-k: on-circle conjugate pairs of w map
  // bijectively to real roots of W in (-2, 2).
  int m = dw / 2;
  std::vector<IPoly> pk(static_cast<size_t>(m) + 1);
  pk[0] = IPoly{2};
  if (m >= 1) pk[1] = IPoly{0, 1};
  for (int k = 2; k <= m; ++k)
    pk[static_cast<size_t>(k)] =
        sub(mul(IPoly{0, 1}, pk[static_cast<size_t>(k - 1)]), pk[static_cast<size_t>(k - 2)]);
  IPoly W{w[static_cast<size_t>(m)]};
  for (int k = 1; k <= m; ++k)
    W = add(W, scale(pk[static_cast<size_t>(k)], w[static_cast<size_t>(m + k)]));
  count += 2 * sturm_count_open(to_qpoly(W), Rational(-2), Rational(2));
  return count;
}

namespace {

// Trial-division factorization for Kronecker divisor enumeration. Values of
// the polynomial at small points stay modest for the matrices this library
// targets; bail out loudly instead of looping on a hard composite.
std::vector<std::pair<BigInt, int>> factor_integer(BigInt v) {
  std::vector<std::pair<BigInt, int>> fs;
  v = iabs(v);
  if (v <= 1) return fs;
  for (BigInt p = 2; p * p <= v && p < 2000000; p += (p == 2 ? 1 : 2)) {
    if (v % p != 0) continue;
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    fs.emplace_back(p, e);
  }
  if (v > 1) {
    if (v > BigInt("1000000000000"))
      throw Error("factor_integer: value too hard to factor for Kronecker search");
    fs.emplace_back(v, 1);
  }
  return fs;
}

std::vector<BigInt> all_divisors(const BigInt& v) {
  std::vector<BigInt> divs{1};
  for (const auto& [p, e] : factor_integer(v)) {
    size_t base = divs.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

// One nontrivial factor of a primitive squarefree polynomial, or nullopt if
// irreducible. Kronecker: interpolate candidate divisors through divisor
// tuples of values at small integer points.
std::optional<IPoly> kronecker_factor(const IPoly& p) {
  int n = degree(p);
  if (n <= 1) return std::nullopt;
  std::vector<BigInt> points;
  for (int i = 0; static_cast<int>(points.size()) <= n / 2; ++i) {
    if (i == 0)
      points.emplace_back(0);
    else {
      points.emplace_back(i);
      points.emplace_back(-i);
    }
  }
  for (int f = 1; f <= n / 2; ++f) {
    std::vector<BigInt> xs(points.begin(), points.begin() + f + 1);
    std::vector<std::vector<BigInt>> choices;
    double combos = 1;
    for (const BigInt& x : xs) {
      BigInt v = eval(p, x);
      if (v == 0) {
        // x is an integer root: (X - x) is a factor.
        IPoly lin{-x, BigInt(1)};
        return lin;
      }
      std::vector<BigInt> ds = all_divisors(v);
      std::vector<BigInt> signed_ds;
      for (const BigInt& d : ds) {
        signed_ds.push_back(d);
        signed_ds.push_back(-d);
      }
      choices.push_back(std::move(signed_ds));
      combos *= static_cast<double>(choices.back().size());
    }
    // Sign symmetry: fixing the first value positive halves the search.
    choices[0].erase(
        std::remove_if(choices[0].begin(), choices[0].end(), [](const BigInt& d) { return d < 0; }),
        choices[0].end());
    combos /= 2;
    if (combos > 4e6) throw Error("kronecker_factor: divisor combination budget exceeded");
    std::vector<size_t> idx(xs.size(), 0);
    while (true) {
      // Lagrange interpolation through (xs[i], choices[i][idx[i]]).
      QPoly cand{Rational(0)};
      cand.clear();
      for (size_t i = 0; i < xs.size(); ++i) {
        QPoly li{Rational(1)};
        Rational denom = 1;
        for (size_t j = 0; j < xs.size(); ++j) {
          if (j == i) continue;
          QPoly lin{Rational(-xs[j]), Rational(1)};
          li = [&] {
            QPoly r(li.size() + 1);
            for (size_t k = 0; k < li.size(); ++k) {
              r[k] += li[k] * lin[0];
              r[k + 1] += li[k] * lin[1];
            }
            return r;
          }();
          denom *= Rational(xs[i] - xs[j]);
        }
        Rational w = Rational(choices[i][idx[i]]) / denom;
        if (cand.size() < li.size()) cand.resize(li.size());
        for (size_t k = 0; k < li.size(); ++k) cand[k] += li[k] * w;
      }
      while (!cand.empty() && cand.back() == 0) cand.pop_back();
      if (static_cast<int>(cand.size()) - 1 == f) {
        bool integral = true;
        for (const Rational& c : cand)
          if (den(c) != 1) {
            integral = false;
            break;
          }
        if (integral) {
          IPoly ic(cand.size());
          for (size_t k = 0; k < cand.size(); ++k) ic[k] = num(cand[k]);
          if (auto q = try_divide(p, ic)) {
            if (degree(ic) >= 1 && degree(*q) >= 1) return primitive_part(ic);
          }
        }
      }
      size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == choices[pos].size()) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos == idx.size()) break;
    }
  }
  return std::nullopt;
}

void factor_squarefree_into(const IPoly& p, int mult, std::vector<std::pair<IPoly, int>>& out) {
  if (degree(p) < 1) return;
  auto factor = kronecker_factor(p);
  if (!factor) {
    out.emplace_back(primitive_part(p), mult);
    return;
  }
  IPoly rest = *try_divide(p, *factor);
  factor_squarefree_into(*factor, mult, out);
  factor_squarefree_into(rest, mult, out);
}

}  // namespace

std::vector<std::pair<IPoly, int>> factor_integer_poly(const IPoly& p) {
  std::vector<std::pair<IPoly, int>> out;
  IPoly q = primitive_part(normalize(p));
  if (degree(q) < 1) return out;
  // Pull out x^k first so squarefree machinery sees a nonzero constant term.
  int zeros = 0;
  while (!q.empty() && q[0] == 0) {
    q.erase(q.begin());
    ++zeros;
  }
  if (zeros > 0) out.emplace_back(IPoly{0, 1}, zeros);
  for (const auto& [sf, mult] : squarefree_decomposition(q)) factor_squarefree_into(sf, mult, out);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (degree(x.first) != degree(y.first)) return degree(x.first) < degree(y.first);
    return x.first < y.first;
  });
  return out;
}

bool is_irreducible(const IPoly& p) {
  IPoly q = primitive_part(normalize(p));
  if (degree(q) < 1) return false;
  auto fs = factor_integer_poly(q);
  return fs.size() == 1 && fs[0].second == 1 && degree(fs[0].first) == degree(q);
}

}  // namespace torodyn
