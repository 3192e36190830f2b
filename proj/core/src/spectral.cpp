#include "torodyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "torodyn/errors.hpp"

namespace torodyn::spectral {

namespace {

struct QComplex {
  Rational re, im;
};

QComplex operator+(const QComplex& x, const QComplex& y) { return {x.re + y.re, x.im + y.im}; }
QComplex operator-(const QComplex& x, const QComplex& y) { return {x.re - y.re, x.im - y.im}; }
QComplex operator*(const QComplex& x, const QComplex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
QComplex divide(const QComplex& x, const QComplex& y) {
  Rational n = y.re * y.re + y.im * y.im;
  return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
}

QComplex eval_poly(const IPoly& p, const QComplex& z) {
  QComplex r{Rational(0), Rational(0)};
  for (size_t i = p.size(); i-- > 0;) r = r * z + QComplex{Rational(p[i]), Rational(0)};
  return r;
}

// Exact bounds on |z|: max(|re|,|im|) <= |z| <= |re| + |im|.
Rational abs_upper_bound(const QComplex& z) {
  Rational a = z.re < 0 ? Rational(-z.re) : z.re;
  Rational b = z.im < 0 ? Rational(-z.im) : z.im;
  return a + b;
}
Rational abs_lower_bound(const QComplex& z) {
  Rational a = z.re < 0 ? Rational(-z.re) : z.re;
  Rational b = z.im < 0 ? Rational(-z.im) : z.im;
  return std::max(a, b);
}

Rational abs_sq(const QComplex& z) { return z.re * z.re + z.im * z.im; }

// Double-precision Aberth-Ehrlich seeds for a squarefree polynomial.
std::vector<std::complex<double>> aberth_seeds(const IPoly& p) {
  int n = degree(p);
  std::vector<std::complex<double>> c(p.size());
  double scale = std::fabs(to_double(p.back()));
  for (size_t i = 0; i < p.size(); ++i) c[i] = to_double(p[i]) / scale;
  double cauchy = 0;
  for (int i = 0; i < n; ++i) cauchy = std::max(cauchy, std::abs(c[static_cast<size_t>(i)]));
  double radius = 1.0 + cauchy;
  std::vector<std::complex<double>> z(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * M_PI * i / n + 0.4;
    z[static_cast<size_t>(i)] = std::polar(radius * (1.0 + 0.05 * i / std::max(1, n)), ang);
  }
  auto eval = [&](std::complex<double> x, std::complex<double>& val, std::complex<double>& der) {
    val = 0;
    der = 0;
    for (size_t i = c.size(); i-- > 0;) {
      der = der * x + val;
      val = val * x + c[i];
    }
  };
  for (int iter = 0; iter < 400; ++iter) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> val, der;
      eval(z[static_cast<size_t>(i)], val, der);
      if (der == std::complex<double>(0, 0)) {
        z[static_cast<size_t>(i)] += 1e-8;
        worst = 1;
        continue;
      }
      std::complex<double> newton = val / der;
      std::complex<double> rep = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          std::complex<double> diff = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
          if (std::abs(diff) < 1e-300) diff = 1e-12;
          rep += 1.0 / diff;
        }
      std::complex<double> denom = 1.0 - newton * rep;
      std::complex<double> step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
      z[static_cast<size_t>(i)] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-14) break;
  }
  return z;
}

// State of the per-factor isolation loop.
struct FactorRoots {
  IPoly poly;
  int multiplicity;                 // Yun exponent
  std::vector<QComplex> roots;      // conjugate-symmetric after symmetrize()
  std::vector<Rational> radii;      // certified (upper bounds on Smith radii)
  std::vector<bool> is_real;
};

void newton_polish(FactorRoots& f, unsigned bits, int rounds) {
  IPoly der = derivative(f.poly);
  for (QComplex& z : f.roots) {
    for (int r = 0; r < rounds; ++r) {
      QComplex val = eval_poly(f.poly, z);
      if (val.re == 0 && val.im == 0) break;
      QComplex dval = eval_poly(der, z);
      if (dval.re == 0 && dval.im == 0) {
        z.re += Rational(1, BigInt(1) << bits);
        continue;
      }
      QComplex next = z - divide(val, dval);
      z.re = round_dyadic(next.re, bits);
      z.im = round_dyadic(next.im, bits);
    }
  }
}

// Inclusion radii: r_i = n |p(z_i)| / (|lc| prod_{j!=i} |z_i - z_j|), with the
// numerator bounded above and the denominator below, all exact rationals.
// With radii >= the exact values, any maximal connected component formed by m
// of the disks still contains exactly m roots; we only accept pairwise
// disjoint disks, so each holds exactly one root of the squarefree factor.
bool compute_radii(FactorRoots& f) {
  int n = degree(f.poly);
  Rational lc = Rational(iabs(f.poly.back()));
  f.radii.assign(f.roots.size(), Rational(0));
  for (size_t i = 0; i < f.roots.size(); ++i) {
    Rational numer = Rational(n) * abs_upper_bound(eval_poly(f.poly, f.roots[i]));
    Rational denom = lc;
    for (size_t j = 0; j < f.roots.size(); ++j) {
      if (j == i) continue;
      Rational sep = abs_lower_bound(f.roots[i] - f.roots[j]);
      if (sep == 0) return false;  // coincident approximations; refine more
      denom *= sep;
    }
    f.radii[i] = numer / denom;
  }
  return true;
}

bool pairwise_disjoint(const FactorRoots& f) {
  for (size_t i = 0; i < f.roots.size(); ++i)
    for (size_t j = i + 1; j < f.roots.size(); ++j) {
      Rational gap = abs_lower_bound(f.roots[i] - f.roots[j]);
      if (gap <= f.radii[i] + f.radii[j]) return false;
    }
  return true;
}

int count_touching_real_axis(const FactorRoots& f) {
  int t = 0;
  for (size_t i = 0; i < f.roots.size(); ++i) {
    Rational im = f.roots[i].im < 0 ? Rational(-f.roots[i].im) : f.roots[i].im;
    if (im <= f.radii[i]) ++t;
  }
  return t;
}

// Mirror the root list into an exactly conjugate-symmetric configuration:
// axis-touching roots become exactly real, the rest are paired by nearest
// mirror image. Requires the touching count to equal the exact real-root
// count beforehand.
void symmetrize(FactorRoots& f) {
  size_t n = f.roots.size();
  f.is_real.assign(n, false);
  std::vector<bool> done(n, false);
  std::vector<QComplex> out(n);
  for (size_t i = 0; i < n; ++i) {
    Rational im = f.roots[i].im < 0 ? Rational(-f.roots[i].im) : f.roots[i].im;
    if (im <= f.radii[i]) {
      out[i] = {f.roots[i].re, Rational(0)};
      f.is_real[i] = true;
      done[i] = true;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (done[i] || f.roots[i].im <= 0) continue;
    // find nearest unmatched root with negative imaginary part
    size_t best = n;
    Rational best_d;
    for (size_t j = 0; j < n; ++j) {
      if (done[j] || j == i || f.roots[j].im >= 0) continue;
      QComplex mirror{f.roots[j].re, -f.roots[j].im};
      Rational d = abs_sq(f.roots[i] - mirror);
      if (best == n || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best == n) continue;  // leave as-is; disjointness check will force refinement
    out[i] = f.roots[i];
    out[best] = {f.roots[i].re, -f.roots[i].im};
    done[i] = done[best] = true;
  }
  for (size_t i = 0; i < n; ++i)
    if (!done[i]) out[i] = f.roots[i];
  f.roots = std::move(out);
}

// Exact circle classification of one disk, exploiting that every disk
// contains its root: an on-circle root keeps its disk straddling forever.
CircleSide classify_circle(const QComplex& c, const Rational& r) {
  Rational c2 = abs_sq(c);
  Rational hi = (1 + r) * (1 + r);
  if (c2 > hi) return CircleSide::outside;
  if (r < 1) {
    Rational lo = (1 - r) * (1 - r);
    if (c2 < lo) return CircleSide::inside;
  }
  return CircleSide::on_circle;  // provisional: straddling
}

int count_straddlers(const FactorRoots& f) {
  int s = 0;
  for (size_t i = 0; i < f.roots.size(); ++i)
    if (classify_circle(f.roots[i], f.radii[i]) == CircleSide::on_circle) ++s;
  return s;
}

Rational max_radius(const FactorRoots& f) {
  Rational m = 0;
  for (const Rational& r : f.radii) m = std::max(m, r);
  return m;
}

// Isolate the roots of one squarefree factor with certified disks, exact
// real/conjugate structure, and exact on-circle classification.
FactorRoots isolate_factor(const IPoly& g, int multiplicity, const Rational& budget) {
  FactorRoots f;
  f.poly = g;
  f.multiplicity = multiplicity;
  int n = degree(g);
  if (n == 1) {
    f.roots.push_back({Rational(-g[0], g[1]), Rational(0)});
    f.radii.push_back(0);
    f.is_real.assign(1, true);
    return f;
  }
  // Exact counts that drive the refinement loop.
  Rational cauchy = 1;
  for (int i = 0; i < n; ++i) {
    Rational c = Rational(iabs(g[static_cast<size_t>(i)]), iabs(g.back()));
    cauchy = std::max(cauchy, c);
  }
  Rational box = cauchy + 2;
  int real_count = sturm_count_open(to_qpoly(g), -box, box);
  int circle_count = count_roots_on_unit_circle(g);

  auto seeds = aberth_seeds(g);
  unsigned bits = 96;
  f.roots.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double re = seeds[static_cast<size_t>(i)].real();
    double im = seeds[static_cast<size_t>(i)].imag();
    if (!std::isfinite(re) || !std::isfinite(im)) re = im = 0;
    f.roots[static_cast<size_t>(i)] = {round_dyadic(Rational(re), bits),
                                       round_dyadic(Rational(im), bits)};
  }
  bool symmetric = false;
  constexpr unsigned kMaxBits = 1u << 16;
  while (bits <= kMaxBits) {
    newton_polish(f, bits, 4);
    if (compute_radii(f) && pairwise_disjoint(f)) {
      if (!symmetric) {
        if (count_touching_real_axis(f) == real_count) {
          symmetrize(f);
          newton_polish(f, bits, 2);
          if (!compute_radii(f)) {
            bits *= 2;
            continue;
          }
          symmetric = true;
        }
      }
      if (symmetric && pairwise_disjoint(f) &&
          count_touching_real_axis(f) == real_count &&
          count_straddlers(f) == circle_count && max_radius(f) <= budget) {
        return f;
      }
    }
    bits *= 2;
  }
  throw PrecisionExhausted("spectral_data: could not certify eigenvalue disks within budget");
}

// Total order on disks: descending |center|^2, then ascending principal
// argument in (-pi, pi], then insertion index. Exact rational comparisons.
int arg_class(const QComplex& z) {
  if (z.im < 0) {
    if (z.re < 0) return 0;   // (-pi, -pi/2)
    if (z.re == 0) return 1;  // -pi/2
    return 2;                 // (-pi/2, 0)
  }
  if (z.im == 0) return z.re > 0 ? 3 : 7;  // 0 or pi
  if (z.re > 0) return 4;                  // (0, pi/2)
  if (z.re == 0) return 5;                 // pi/2
  return 6;                                // (pi/2, pi)
}

bool arg_less(const QComplex& x, const QComplex& y) {
  int cx = arg_class(x), cy = arg_class(y);
  if (cx != cy) return cx < cy;
  // Within an open quadrant the argument is increasing in im/re.
  if (cx == 0 || cx == 2 || cx == 4 || cx == 6) return x.im / x.re < y.im / y.re;
  return false;
}

}  // namespace

double EigenvalueDisk::abs_lower() const {
  if (on_circle()) return 1.0;
  Rational c2 = center_re * center_re + center_im * center_im;
  double c = std::sqrt(to_double(c2));
  double lb = c - to_double(radius);
  for (int i = 0; i < 8; ++i) lb = std::nextafter(lb, -1e308);
  return std::max(lb, 0.0);
}

double EigenvalueDisk::abs_upper() const {
  if (on_circle()) return 1.0;
  Rational c2 = center_re * center_re + center_im * center_im;
  double c = std::sqrt(to_double(c2));
  double ub = c + to_double(radius);
  for (int i = 0; i < 8; ++i) ub = std::nextafter(ub, 1e308);
  return ub;
}

SpectralData spectral_data(const ToralMap& map, double radius_budget) {
  if (map.kind == MapKind::singular)
    throw PreconditionError("spectral_data: map must be nonsingular");
  if (radius_budget <= 0) throw PreconditionError("spectral_data: budget must be positive");
  SpectralData out;
  out.dim = map.dim;
  out.characteristic = char_poly(map.entries);
  Rational budget = round_dyadic(Rational(radius_budget), 192);
  if (budget <= 0) budget = Rational(1, BigInt(1) << 60);
  std::vector<EigenvalueDisk> disks;
  for (const auto& [factor, mult] : squarefree_decomposition(out.characteristic)) {
    FactorRoots f = isolate_factor(factor, mult, budget);
    for (size_t i = 0; i < f.roots.size(); ++i) {
      EigenvalueDisk d;
      d.center_re = f.roots[i].re;
      d.center_im = f.roots[i].im;
      d.radius = f.radii[i];
      d.multiplicity = mult;
      d.side = classify_circle(f.roots[i], f.radii[i]);
      disks.push_back(std::move(d));
    }
  }
  std::stable_sort(disks.begin(), disks.end(), [](const EigenvalueDisk& x, const EigenvalueDisk& y) {
    Rational mx = x.center_re * x.center_re + x.center_im * x.center_im;
    Rational my = y.center_re * y.center_re + y.center_im * y.center_im;
    if (mx != my) return mx > my;
    return arg_less({x.center_re, x.center_im}, {y.center_re, y.center_im});
  });
  out.eigenvalues = std::move(disks);
  int total = 0;
  for (const auto& d : out.eigenvalues) total += d.multiplicity;
  if (total != map.dim) throw Error("spectral_data: multiplicities do not sum to dim");
  return out;
}

EntropyReport entropy_report(const ToralMap& map, const SpectralData& spec) {
  EntropyReport rep;
  double h_lo = 0, h_hi = 0;
  // The expanding eigenvalue with the smallest log is the one whose removal
  // maximizes the remaining sum.
  bool have_min = false;
  double min_lo = 0, min_hi = 0;
  int expanding_copies = 0;
  for (const auto& d : spec.eigenvalues) {
    switch (d.side) {
      case CircleSide::on_circle:
        rep.neutral_dim += d.multiplicity;
        break;
      case CircleSide::inside:
        rep.contracting_dim += d.multiplicity;
        break;
      case CircleSide::outside: {
        rep.expanding_dim += d.multiplicity;
        expanding_copies += d.multiplicity;
        double lo = std::log(d.abs_lower());
        double hi = std::log(d.abs_upper());
        h_lo += d.multiplicity * lo;
        h_hi += d.multiplicity * hi;
        if (!have_min || hi < min_hi) {
          have_min = true;
          min_lo = lo;
          min_hi = hi;
        }
        break;
      }
    }
  }
  rep.h_top = expanding_copies == 0 ? ValErr::exact(0.0) : ValErr::from_bounds(h_lo, h_hi);
  if (expanding_copies <= 1) {
    rep.kappa = ValErr::exact(0.0);
    rep.kappa_degenerate = true;
  } else {
    // kappa = (h - log|lambda_min_expanding|) / h, h > 0 certified.
    double lo = (h_lo - min_hi) / h_hi;
    double hi = (h_hi - min_lo) / h_lo;
    lo = std::max(0.0, lo);
    hi = std::min(hi, 1.0);
    rep.kappa = ValErr::from_bounds(lo, hi);
    rep.kappa_degenerate = false;
  }
  rep.hyperbolic = rep.neutral_dim == 0;
  rep.ergodic = cyclotomic_divisors(spec.characteristic).empty();
  (void)map;
  return rep;
}

}  // namespace torodyn::spectral
