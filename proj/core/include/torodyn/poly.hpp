#pragma once

#include <optional>
#include <vector>

#include "torodyn/exact.hpp"

namespace torodyn {

// Integer polynomials as coefficient vectors, low degree first, no trailing
// zeros; the zero polynomial is the empty vector.
using IPoly = std::vector<BigInt>;
using QPoly = std::vector<Rational>;

IPoly normalize(IPoly p);
int degree(const IPoly& p);  // -1 for the zero polynomial
const BigInt& leading(const IPoly& p);

IPoly add(const IPoly& a, const IPoly& b);
IPoly sub(const IPoly& a, const IPoly& b);
IPoly mul(const IPoly& a, const IPoly& b);
IPoly scale(const IPoly& a, const BigInt& c);
IPoly derivative(const IPoly& p);

BigInt eval(const IPoly& p, const BigInt& x);
Rational eval_q(const IPoly& p, const Rational& x);

// Exact quotient when b divides a over the integers; nullopt otherwise.
std::optional<IPoly> try_divide(const IPoly& a, const IPoly& b);

BigInt content(const IPoly& p);
IPoly primitive_part(const IPoly& p);  // content 1, positive leading coeff

// Primitive gcd via the subresultant-free primitive PRS; positive leading
// coefficient; gcd(0, b) = primitive b.
IPoly poly_gcd(IPoly a, IPoly b);

// Yun's square-free decomposition: p ~ prod factors[i].first^(factors[i].second)
// with the factors primitive, squarefree, pairwise coprime.
std::vector<std::pair<IPoly, int>> squarefree_decomposition(const IPoly& p);

// Coefficients reversed: x^deg * p(1/x).
IPoly reciprocal(const IPoly& p);

// n-th cyclotomic polynomial, memoized.
const IPoly& cyclotomic(unsigned n);

// All n such that the n-th cyclotomic polynomial divides p (so p has a
// primitive n-th root of unity among its roots). Exact.
std::vector<unsigned> cyclotomic_divisors(const IPoly& p);

// Number of roots of squarefree p (p(0) != 0) on the unit circle, counted
// exactly: gcd with the reciprocal, then a Chebyshev-style y = x + 1/x
// reduction and a Sturm count on (-2, 2).
int count_roots_on_unit_circle(const IPoly& squarefree);

// Irreducible factorization over Z by Kronecker's interpolation method;
// factors primitive with positive leading coefficient, paired with
// multiplicities. Throws Error if the divisor-combination budget blows up.
std::vector<std::pair<IPoly, int>> factor_integer_poly(const IPoly& p);

bool is_irreducible(const IPoly& p);

// Rational-coefficient helpers (Sturm machinery).
QPoly to_qpoly(const IPoly& p);
QPoly q_derivative(const QPoly& p);
QPoly q_rem(const QPoly& a, const QPoly& b);
Rational q_eval(const QPoly& p, const Rational& x);
QPoly q_squarefree_part(const QPoly& p);

// Count of distinct real roots of p in the open interval (a, b); p need not
// be squarefree (the squarefree part is taken internally); requires
// p(a) != 0 and p(b) != 0.
int sturm_count_open(const QPoly& p, const Rational& a, const Rational& b);

}  // namespace torodyn
