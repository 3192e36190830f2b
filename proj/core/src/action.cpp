#include "torodyn/action.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "torodyn/errors.hpp"
#include "torodyn/spectral.hpp"

namespace torodyn::action {

namespace {

// Cache of integer powers; negative exponents require unimodularity.
class PowerCache {
 public:
  explicit PowerCache(const ToralMap& m) : map_(m), dim_(m.dim) {
    pos_.push_back(IMat::identity(dim_));
    if (m.kind == MapKind::automorphism) inv_ = unimodular_inverse(m.entries);
  }

  bool allows_negative() const { return inv_.has_value(); }

  const IMat& power(long long e) {
    if (e >= 0) {
      while (static_cast<long long>(pos_.size()) <= e)
        pos_.push_back(pos_.back() * map_.entries);
      return pos_[static_cast<size_t>(e)];
    }
    if (!inv_) throw PreconditionError("negative power of a non-invertible map");
    while (static_cast<long long>(neg_.size()) < -e)
      neg_.push_back(neg_.empty() ? *inv_ : neg_.back() * *inv_);
    return neg_[static_cast<size_t>(-e) - 1];
  }

 private:
  ToralMap map_;
  int dim_;
  std::vector<IMat> pos_;
  std::vector<IMat> neg_;
  std::optional<IMat> inv_;
};

std::optional<QMat> qmat_inverse(const QMat& m) {
  if (m.rows != m.cols) return std::nullopt;
  return solve(m, QMat::identity(m.rows));
}

QMat qmat_pow(const QMat& m, long long e) {
  if (e < 0) {
    auto inv = qmat_inverse(m);
    if (!inv) throw PreconditionError("negative power of singular block");
    return qmat_pow(*inv, -e);
  }
  QMat r = QMat::identity(m.rows);
  QMat base = m;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

// Pairs (t, s) with max(|t|,|s|) == shell, both nonzero allowed plus axis
// pairs; sorted lexicographically.
std::vector<std::pair<long long, long long>> shell_pairs(long long shell) {
  std::vector<std::pair<long long, long long>> out;
  for (long long t = -shell; t <= shell; ++t)
    for (long long s = -shell; s <= shell; ++s) {
      if (std::max(std::llabs(t), std::llabs(s)) != shell) continue;
      if (t == 0 && s == 0) continue;
      out.emplace_back(t, s);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool commutes(const ToralMap& a, const ToralMap& b) {
  if (a.dim != b.dim) throw DimensionMismatch("commutation test needs equal dimensions");
  return a.entries * b.entries == b.entries * a.entries;
}

CommutingPair CommutingPair::make(ToralMap t, ToralMap s) {
  CommutingPair p;
  p.verified_commuting = commutes(t, s);
  p.t_map = std::move(t);
  p.s_map = std::move(s);
  if (!p.verified_commuting) throw PreconditionError("maps do not commute");
  return p;
}

DependenceCertificate multiplicative_dependence(const CommutingPair& pair, long long bound) {
  if (!pair.verified_commuting) throw PreconditionError("pair is not verified commuting");
  if (bound < 1) throw PreconditionError("search bound must be positive");
  const ToralMap& T = pair.t_map;
  const ToralMap& S = pair.s_map;
  if (T.kind == MapKind::singular || S.kind == MapKind::singular)
    throw PreconditionError("dependence search requires nonsingular maps");

  PowerCache tp(T), sp(S);
  auto sign_ok = [&](long long t, long long s) {
    if (t < 0 && !tp.allows_negative()) return false;
    if (s < 0 && !sp.allows_negative()) return false;
    return true;
  };

  DependenceCertificate cert;
  cert.search_bound = bound;

  for (long long shell = 1; shell <= bound && !cert.relation; ++shell) {
    std::vector<std::pair<long long, long long>> hits;
    for (auto [t, s] : shell_pairs(shell)) {
      if (!sign_ok(t, s)) continue;
      if (tp.power(t) == sp.power(s)) hits.emplace_back(t, s);
    }
    if (hits.empty()) continue;
    // Canonicalize: fold each hit onto its negation when that lies on the
    // preferred side (t > 0, or t = 0 and s > 0) and is itself admissible.
    for (auto& [t, s] : hits) {
      bool wrong_side = (t < 0) || (t == 0 && s < 0);
      if (wrong_side && sign_ok(-t, -s)) {
        t = -t;
        s = -s;
      }
    }
    std::sort(hits.begin(), hits.end());
    cert.relation = hits.front();
  }

  if (cert.relation) {
    auto [t, s] = *cert.relation;
    if (!(tp.power(t) == sp.power(s)))
      throw Error("relation failed exact re-verification");
  }

  // Entropy-ratio witness: t h(T) = s h(S) is necessary for T^t = S^s.
  try {
    auto ht = spectral::entropy_report(T, spectral::spectral_data(T)).h_top;
    auto hs = spectral::entropy_report(S, spectral::spectral_data(S)).h_top;
    std::ostringstream os;
    os << "h(T)=" << ht.value << ", h(S)=" << hs.value << "; ";
    if (cert.relation) {
      auto [t, s] = *cert.relation;
      os << "relation forces " << t << "*h(T) = " << s << "*h(S), residual "
         << std::abs(static_cast<double>(t) * ht.value - static_cast<double>(s) * hs.value);
    } else if (ht.value > 0 && hs.value > 0) {
      double ratio = hs.value / ht.value;
      double worst = 2.0;
      for (long long s = 1; s <= bound; ++s) {
        double target = static_cast<double>(s) * ratio;
        double miss = std::abs(target - std::llround(target));
        worst = std::min(worst, miss);
      }
      os << "any relation forces t/s = h(S)/h(T) = " << ratio
         << "; best integer approximation within the bound misses by " << worst;
    } else {
      os << "at least one map has zero entropy; no ratio obstruction applies";
    }
    cert.log_ratio_witness = os.str();
  } catch (const Error&) {
    cert.log_ratio_witness.clear();
  }
  return cert;
}

std::vector<ToralMap> find_commuting_partners(const ToralMap& seed, long long coeff_bound) {
  const int d = seed.dim;
  if (d < 1) throw PreconditionError("empty seed");
  IPoly chi = char_poly(seed.entries);
  if (!is_irreducible(chi))
    throw ReducibleSeed("seed characteristic polynomial factors over Z");

  // Powers of the seed for the Horner evaluation and the exclusion list.
  std::vector<IMat> pows;
  pows.push_back(IMat::identity(d));
  for (int k = 1; k < d; ++k) pows.push_back(pows.back() * seed.entries);

  std::vector<IMat> excluded;
  {
    IMat p = IMat::identity(d);
    for (int k = 0; k <= 2; ++k) {
      excluded.push_back(p);
      excluded.push_back(-p);
      if (k < 2) p = p * seed.entries;
    }
    if (seed.kind == MapKind::automorphism) {
      IMat inv = unimodular_inverse(seed.entries);
      IMat q = inv;
      excluded.push_back(q);
      excluded.push_back(-q);
      q = q * inv;
      excluded.push_back(q);
      excluded.push_back(-q);
    }
  }
  auto is_excluded = [&](const IMat& m) {
    for (const auto& e : excluded)
      if (m == e) return true;
    return false;
  };

  std::vector<ToralMap> out;
  std::vector<long long> coeffs(static_cast<size_t>(d), -coeff_bound);
  const BigInt one = 1;
  while (true) {
    IMat cand(d);
    for (int k = 0; k < d; ++k) {
      if (coeffs[static_cast<size_t>(k)] == 0) continue;
      BigInt c = coeffs[static_cast<size_t>(k)];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cand.at(i, j) += c * pows[static_cast<size_t>(k)].at(i, j);
    }
    if (iabs(det(cand)) == one && !is_excluded(cand))
      out.push_back(ToralMap::from_matrix(cand));

    int pos = 0;
    while (pos < d && coeffs[static_cast<size_t>(pos)] == coeff_bound) {
      coeffs[static_cast<size_t>(pos)] = -coeff_bound;
      ++pos;
    }
    if (pos == d) break;
    ++coeffs[static_cast<size_t>(pos)];
  }
  return out;
}

namespace {

// Basis columns spanning ker(f(M)^mult) inside the ambient space.
std::vector<std::vector<Rational>> primary_kernel(const QMat& m, const QPoly& factor,
                                                  int mult) {
  // Evaluate factor(m)^mult by Horner then repeated product.
  QMat f(m.rows, m.cols);
  for (int i = static_cast<int>(factor.size()) - 1; i >= 0; --i) {
    f = f * m;
    for (int j = 0; j < m.rows; ++j) f.at(j, j) += factor[static_cast<size_t>(i)];
  }
  QMat p = f;
  for (int k = 1; k < mult; ++k) p = p * f;
  return kernel_basis(p);
}

struct Block {
  // Columns: ambient coordinates of the block basis.
  std::vector<std::vector<Rational>> basis;
};

QMat basis_matrix(const std::vector<std::vector<Rational>>& cols, int ambient) {
  QMat b(ambient, static_cast<int>(cols.size()));
  for (int j = 0; j < b.cols; ++j)
    for (int i = 0; i < ambient; ++i) b.at(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
  return b;
}

// Integer char poly of a rational matrix known to be conjugate to an integer
// one (restriction of an integer map to an invariant rational subspace).
IPoly integral_char_poly(const QMat& m) {
  QPoly cq = char_poly(m);
  IPoly out(cq.size());
  for (size_t i = 0; i < cq.size(); ++i) {
    if (den(cq[i]) != 1)
      throw Error("restricted characteristic polynomial is not integral");
    out[i] = num(cq[i]);
  }
  return out;
}

}  // namespace

FactorScanReport rank_one_factor_scan(const CommutingPair& pair, long long bound,
                                      int twist_cap) {
  if (!pair.verified_commuting) throw PreconditionError("pair is not verified commuting");
  if (bound < 1 || twist_cap < 1) throw PreconditionError("bounds must be positive");
  const int d = pair.t_map.dim;
  QMat tq(pair.t_map.entries);
  QMat sq(pair.s_map.entries);

  // Iterated primary decomposition: refine under T and S alternately until
  // every block has a primary characteristic polynomial under both.
  std::vector<Block> blocks;
  {
    Block all;
    QMat id = QMat::identity(d);
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> col(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) col[static_cast<size_t>(i)] = id.at(i, j);
      all.basis.push_back(std::move(col));
    }
    blocks.push_back(std::move(all));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Block> next;
    for (auto& blk : blocks) {
      bool split_done = false;
      for (const QMat* map : {&tq, &sq}) {
        QMat b = basis_matrix(blk.basis, d);
        QMat rest = restrict_to_subspace(*map, b);
        IPoly chi = integral_char_poly(rest);
        auto factors = factor_integer_poly(chi);
        // Collect distinct non-constant irreducible factors with multiplicity.
        std::map<IPoly, int> primary;
        for (const auto& [f, mult] : factors)
          if (degree(f) >= 1) primary[f] += mult;
        if (primary.size() <= 1) continue;
        for (const auto& [f, mult] : primary) {
          auto ker = primary_kernel(rest, to_qpoly(f), mult);
          Block sub;
          for (const auto& v : ker) {
            // Lift block coordinates to ambient coordinates.
            std::vector<Rational> amb(static_cast<size_t>(d));
            for (size_t c = 0; c < blk.basis.size(); ++c)
              for (int i = 0; i < d; ++i)
                amb[static_cast<size_t>(i)] += v[c] * blk.basis[c][static_cast<size_t>(i)];
            sub.basis.push_back(std::move(amb));
          }
          next.push_back(std::move(sub));
        }
        split_done = true;
        changed = true;
        break;
      }
      if (!split_done) next.push_back(std::move(blk));
    }
    blocks = std::move(next);
  }

  FactorScanReport report;
  report.bound = bound;
  report.twist_cap = twist_cap;

  const bool t_auto = pair.t_map.kind == MapKind::automorphism;
  const bool s_auto = pair.s_map.kind == MapKind::automorphism;

  for (auto& blk : blocks) {
    QMat b = basis_matrix(blk.basis, d);
    QMat tb = restrict_to_subspace(tq, b);
    QMat sb = restrict_to_subspace(sq, b);

    BlockVerdict verdict;
    verdict.t_char = integral_char_poly(tb);
    verdict.s_char = integral_char_poly(sb);
    for (const auto& col : blk.basis)
      verdict.integer_basis.push_back(primitive_integer_vector(col));

    auto t_pow_ok = [&](long long t) { return t >= 0 || t_auto; };
    auto s_pow_ok = [&](long long s) { return s >= 0 || s_auto; };
    bool sb_invertible = rank(sb) == sb.rows;

    for (long long shell = 1; shell <= bound && !verdict.relation; ++shell) {
      std::vector<std::tuple<long long, long long, int>> hits;
      for (auto [t, s] : shell_pairs(shell)) {
        if (!t_pow_ok(t) || !s_pow_ok(s)) continue;
        QMat a = qmat_pow(tb, t);
        QMat c = qmat_pow(sb, s);
        if (a == c) {
          hits.emplace_back(t, s, 1);
          continue;
        }
        if (!sb_invertible && s > 0) continue;
        auto cinv = qmat_inverse(c);
        if (!cinv) continue;
        QMat u = a * *cinv;
        QMat upow = u;
        const QMat id = QMat::identity(u.rows);
        for (int k = 1; k <= twist_cap; ++k) {
          if (upow == id) {
            hits.emplace_back(t, s, k);
            break;
          }
          upow = upow * u;
        }
      }
      if (hits.empty()) continue;
      for (auto& [t, s, k] : hits) {
        bool wrong_side = (t < 0) || (t == 0 && s < 0);
        if (wrong_side && t_pow_ok(-t) && s_pow_ok(-s)) {
          t = -t;
          s = -s;
        }
      }
      std::sort(hits.begin(), hits.end());
      verdict.relation = hits.front();
    }
    verdict.dependent = verdict.relation.has_value();
    report.rank_one_found = report.rank_one_found || verdict.dependent;
    report.blocks.push_back(std::move(verdict));
  }
  return report;
}

}  // namespace torodyn::action
