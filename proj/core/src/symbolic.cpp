#include "torodyn/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "torodyn/errors.hpp"
#include "torodyn/exact.hpp"
#include "torodyn/rng.hpp"

namespace torodyn::symbolic {

namespace {

constexpr std::uint64_t kMaxWords = 1ull << 26;  // resource cap on b^L

std::uint64_t word_count(int base, int window) {
  std::uint64_t n = 1;
  for (int i = 0; i < window; ++i) {
    n *= static_cast<std::uint64_t>(base);
    if (n > kMaxWords) throw PreconditionError("window too large for this base");
  }
  return n;
}

}  // namespace

BallSpec BallSpec::make(Rational center, Rational radius) {
  center -= Rational(floor_rat(center));  // circle position, so reduce mod 1
  if (radius <= 0 || 2 * radius >= 1)
    throw PreconditionError("ball radius must lie in (0, 1/2)");
  return BallSpec{std::move(center), std::move(radius)};
}

bool SftSpec::is_forbidden(std::uint32_t word) const {
  return std::binary_search(forbidden.begin(), forbidden.end(), word);
}

std::string SftSpec::word_string(std::uint32_t word) const {
  std::string s(static_cast<size_t>(window), '0');
  for (int i = window - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] = static_cast<char>('0' + word % static_cast<std::uint32_t>(base));
    word /= static_cast<std::uint32_t>(base);
  }
  return s;
}

bool SftSpec::admissible(const std::vector<int>& digits) const {
  if (static_cast<long long>(digits.size()) < window) return true;
  const std::uint32_t modulus =
      static_cast<std::uint32_t>(word_count(base, window));
  std::uint32_t w = 0;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= base) return false;
    w = (w * static_cast<std::uint32_t>(base) + static_cast<std::uint32_t>(digits[i])) % modulus;
    if (i + 1 >= static_cast<size_t>(window) && is_forbidden(w)) return false;
  }
  return true;
}

std::pair<SftSpec, SftSpec> avoid_ball_sft(int base, const BallSpec& ball, int window) {
  if (base < 2) throw PreconditionError("base must be at least 2");
  if (window < 1) throw PreconditionError("window must be at least 1");
  const std::uint64_t total = word_count(base, window);
  const Rational cyl_len = Rational(1, BigInt(total));
  if (cyl_len > 2 * ball.radius)
    throw WindowTooCoarse("no length-" + std::to_string(window) +
                          " cylinder fits inside the ball");

  const Rational lo = ball.center - ball.radius;
  const Rational hi = ball.center + ball.radius;
  const BigInt n = BigInt(total);

  std::vector<std::uint32_t> inner_words, outer_words;
  for (int k = -1; k <= 1; ++k) {
    const Rational a = (lo - k) * n;  // ball start in cylinder-index units
    const Rational b = (hi - k) * n;
    {
      // Cylinder [j, j+1)/n meets the open ball: j > a - 1 and j < b.
      BigInt jmin = floor_rat(a - 1) + 1;
      BigInt jmax = (den(b) == 1) ? num(b) - 1 : floor_rat(b);
      if (jmin < 0) jmin = 0;
      if (jmax > n - 1) jmax = n - 1;
      for (BigInt j = jmin; j <= jmax; ++j)
        inner_words.push_back(static_cast<std::uint32_t>(j));
    }
    {
      // Cylinder inside the closed ball: j >= a and j + 1 <= b.
      BigInt jmin = -floor_rat(-a);
      BigInt jmax = floor_rat(b) - 1;
      if (jmin < 0) jmin = 0;
      if (jmax > n - 1) jmax = n - 1;
      for (BigInt j = jmin; j <= jmax; ++j)
        outer_words.push_back(static_cast<std::uint32_t>(j));
    }
  }
  auto dedupe = [](std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(inner_words);
  dedupe(outer_words);

  SftSpec inner{base, window, std::move(inner_words), Polarity::inner};
  SftSpec outer{base, window, std::move(outer_words), Polarity::outer};
  return {std::move(inner), std::move(outer)};
}

namespace {

struct Graph {
  std::vector<std::uint32_t> states;   // state words (length L-1), sorted
  std::vector<std::vector<int>> succ;  // indices into states
};

// De Bruijn graph on length-(L-1) words, dead states pruned to fixpoint.
Graph build_pruned_graph(const SftSpec& spec) {
  const std::uint64_t n_states = word_count(spec.base, spec.window - 1);
  const std::uint32_t state_mod = static_cast<std::uint32_t>(n_states);
  const int b = spec.base;

  std::vector<char> alive(n_states, 1);
  auto successors_alive = [&](std::uint32_t u, auto&& fn) {
    for (int s = 0; s < b; ++s) {
      std::uint32_t w = u * static_cast<std::uint32_t>(b) + static_cast<std::uint32_t>(s);
      std::uint32_t v = w % state_mod;
      if (alive[v] && !spec.is_forbidden(w)) fn(v);
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> has_in(n_states, 0), has_out(n_states, 0);
    for (std::uint64_t u = 0; u < n_states; ++u) {
      if (!alive[u]) continue;
      successors_alive(static_cast<std::uint32_t>(u), [&](std::uint32_t v) {
        has_out[u] = 1;
        has_in[v] = 1;
      });
    }
    for (std::uint64_t u = 0; u < n_states; ++u) {
      if (alive[u] && (!has_in[u] || !has_out[u])) {
        alive[u] = 0;
        changed = true;
      }
    }
  }

  Graph g;
  std::vector<int> index(n_states, -1);
  for (std::uint64_t u = 0; u < n_states; ++u)
    if (alive[u]) {
      index[u] = static_cast<int>(g.states.size());
      g.states.push_back(static_cast<std::uint32_t>(u));
    }
  g.succ.resize(g.states.size());
  for (size_t i = 0; i < g.states.size(); ++i)
    successors_alive(g.states[i], [&](std::uint32_t v) { g.succ[i].push_back(index[v]); });
  return g;
}

// Iterative Tarjan; returns component id per node, components in reverse
// topological order of discovery.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& succ) {
  const int n = static_cast<int>(succ.size());
  std::vector<int> idx(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;

  struct Frame {
    int v;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < succ[f.v].size()) {
        int w = succ[f.v][f.edge++];
        if (idx[w] == -1) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        if (low[f.v] == idx[f.v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
          } while (w != f.v);
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return comps;
}

struct ComponentPerron {
  std::vector<int> nodes;        // ambient indices, sorted
  std::vector<double> right;     // max-normalized
  std::vector<double> left;
  Rational lo, hi;               // certified bracket for the component's rho
};

// Power iteration on A+I over one strongly connected component, then one
// exact rational Collatz-Wielandt pass to certify the bracket.
ComponentPerron component_perron(const std::vector<std::vector<int>>& succ,
                                 const std::vector<int>& nodes, double tolerance) {
  const int m = static_cast<int>(nodes.size());
  std::vector<int> local(*std::max_element(nodes.begin(), nodes.end()) + 1, -1);
  for (int i = 0; i < m; ++i) local[nodes[static_cast<size_t>(i)]] = i;
  // Local adjacency (edges staying inside the component).
  std::vector<std::vector<int>> adj(static_cast<size_t>(m));
  std::vector<std::vector<int>> radj(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int w : succ[static_cast<size_t>(nodes[static_cast<size_t>(i)])]) {
      if (w >= static_cast<int>(local.size()) || local[static_cast<size_t>(w)] < 0) continue;
      int j = local[static_cast<size_t>(w)];
      adj[static_cast<size_t>(i)].push_back(j);
      radj[static_cast<size_t>(j)].push_back(i);
    }

  auto iterate = [&](const std::vector<std::vector<int>>& edges) {
    std::vector<double> v(static_cast<size_t>(m), 1.0), next(static_cast<size_t>(m));
    double lo = 0, hi = 0;
    const long long cap = 2'000'000;
    for (long long it = 0; it < cap; ++it) {
      double vmax = 0;
      lo = 1e300;
      hi = 0;
      for (int i = 0; i < m; ++i) {
        double acc = v[static_cast<size_t>(i)];  // the +I term
        for (int j : edges[static_cast<size_t>(i)]) acc += v[static_cast<size_t>(j)];
        next[static_cast<size_t>(i)] = acc;
        double ratio = acc / v[static_cast<size_t>(i)];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        vmax = std::max(vmax, acc);
      }
      for (int i = 0; i < m; ++i) v[static_cast<size_t>(i)] = next[static_cast<size_t>(i)] / vmax;
      if (hi - lo <= tolerance * 0.25) break;
    }
    return v;
  };

  ComponentPerron out;
  out.nodes = nodes;
  out.right = iterate(adj);
  out.left = iterate(radj);

  // Exact certification: ratios of ((A+I)v)_i / v_i over the component.
  bool first = true;
  for (int i = 0; i < m; ++i) {
    Rational vi(out.right[static_cast<size_t>(i)]);
    Rational acc = vi;
    for (int j : adj[static_cast<size_t>(i)]) acc += Rational(out.right[static_cast<size_t>(j)]);
    Rational ratio = acc / vi;
    if (first || ratio < out.lo) out.lo = ratio;
    if (first || ratio > out.hi) out.hi = ratio;
    first = false;
  }
  out.lo -= 1;  // undo the +I shift
  out.hi -= 1;
  if (out.lo < 0) out.lo = 0;
  return out;
}

}  // namespace

PerronData perron(const SftSpec& spec, double tolerance) {
  if (tolerance <= 0) throw PreconditionError("tolerance must be positive");
  Graph g = build_pruned_graph(spec);
  if (g.states.empty())
    throw EmptyShift("all states pruned: no bi-infinite admissible word at this window");

  auto comps = strongly_connected_components(g.succ);
  // Recurrent components only: size > 1, or a singleton with a self-loop.
  std::vector<ComponentPerron> certified;
  for (const auto& comp : comps) {
    if (comp.size() == 1) {
      int v = comp[0];
      const auto& s = g.succ[static_cast<size_t>(v)];
      if (std::find(s.begin(), s.end(), v) == s.end()) continue;
    }
    certified.push_back(component_perron(g.succ, comp, tolerance));
  }
  if (certified.empty())
    throw EmptyShift("no recurrent component in the pruned transfer graph");

  // Dominant component: largest certified upper bound, earliest on ties.
  size_t best = 0;
  for (size_t i = 1; i < certified.size(); ++i)
    if (certified[i].hi > certified[best].hi) best = i;
  const ComponentPerron& dom = certified[best];

  // The global spectral radius is the max over components.
  Rational glo = dom.lo, ghi = dom.hi;
  for (const auto& c : certified) {
    if (c.lo > glo) glo = c.lo;
    if (c.hi > ghi) ghi = c.hi;
  }
  if (ghi - glo > Rational(tolerance))
    throw Error("spectral radius bracket did not reach the requested tolerance");

  PerronData pd;
  pd.states = std::move(g.states);
  pd.succ = std::move(g.succ);
  pd.dominant = dom.nodes;
  pd.right_vector = dom.right;
  pd.left_vector = dom.left;
  pd.spectral_radius = ValErr::from_bounds(to_double(glo), to_double(ghi));

  // Residual bound on the dominant component at the midpoint estimate.
  {
    std::vector<int> local(pd.succ.size(), -1);
    for (size_t i = 0; i < dom.nodes.size(); ++i)
      local[static_cast<size_t>(dom.nodes[i])] = static_cast<int>(i);
    Rational rho = (glo + ghi) / 2;
    Rational worst = 0;
    bool first = true;
    BigInt min_deg = 0, max_deg = 0;
    for (size_t i = 0; i < dom.nodes.size(); ++i) {
      Rational acc = 0;
      BigInt deg = 0;
      for (int w : pd.succ[static_cast<size_t>(dom.nodes[i])]) {
        if (local[static_cast<size_t>(w)] < 0) continue;
        acc += Rational(pd.right_vector[static_cast<size_t>(local[static_cast<size_t>(w)])]);
        ++deg;
      }
      Rational res = acc - rho * Rational(pd.right_vector[i]);
      if (res < 0) res = -res;
      if (res > worst) worst = res;
      if (first || deg < min_deg) min_deg = deg;
      if (first || deg > max_deg) max_deg = deg;
      first = false;
    }
    pd.residual_bound = std::nextafter(to_double(worst), 1e300);
    pd.min_row_sum = min_deg;
    pd.max_row_sum = max_deg;
  }

  pd.entropy = log_interval(pd.spectral_radius.lower(), pd.spectral_radius.upper());
  ValErr logb = log_interval(static_cast<double>(spec.base), static_cast<double>(spec.base));
  double dlo = pd.entropy.lower() / logb.upper();
  double dhi = pd.entropy.upper() / logb.lower();
  pd.dimension = ValErr::from_bounds(std::clamp(dlo, 0.0, 1.0), std::clamp(dhi, 0.0, 1.0));
  return pd;
}

std::vector<int> parry_sample(const SftSpec& spec, const PerronData& perron_data,
                              long long length, std::uint64_t seed) {
  if (length < 0) throw PreconditionError("sample length must be nonnegative");
  const PerronData& pd = perron_data;
  if (pd.dominant.empty())
    throw DegenerateShift("no recurrent component to sample from");

  std::vector<int> local(pd.succ.size(), -1);
  for (size_t i = 0; i < pd.dominant.size(); ++i)
    local[static_cast<size_t>(pd.dominant[i])] = static_cast<int>(i);

  CounterRng rng(seed);

  // Initial state from the stationary law (left * right, normalized).
  const size_t m = pd.dominant.size();
  std::vector<double> pi(m);
  double total = 0;
  for (size_t i = 0; i < m; ++i) {
    pi[i] = pd.left_vector[i] * pd.right_vector[i];
    total += pi[i];
  }
  size_t state = m - 1;
  {
    double r = rng.next_unit() * total;
    double acc = 0;
    for (size_t i = 0; i < m; ++i) {
      acc += pi[i];
      if (r < acc) {
        state = i;
        break;
      }
    }
  }

  std::vector<int> digits;
  digits.reserve(static_cast<size_t>(length));
  // Emit the initial state's word (length L-1), most significant digit first.
  {
    std::uint32_t w = pd.states[static_cast<size_t>(pd.dominant[state])];
    std::vector<int> head(static_cast<size_t>(spec.window - 1));
    for (int i = spec.window - 2; i >= 0; --i) {
      head[static_cast<size_t>(i)] = static_cast<int>(w % static_cast<std::uint32_t>(spec.base));
      w /= static_cast<std::uint32_t>(spec.base);
    }
    for (int d : head) {
      if (static_cast<long long>(digits.size()) >= length) break;
      digits.push_back(d);
    }
  }

  const std::uint32_t b = static_cast<std::uint32_t>(spec.base);
  const std::uint32_t state_mod =
      static_cast<std::uint32_t>(word_count(spec.base, spec.window - 1));

  // Per-symbol transitions (handles window 1, where all states coincide and
  // the appended symbol alone carries the digit).
  struct Step {
    int symbol;
    int next_local;
  };
  std::vector<Step> steps;
  while (static_cast<long long>(digits.size()) < length) {
    std::uint32_t u_word = pd.states[static_cast<size_t>(pd.dominant[state])];
    steps.clear();
    double row = 0;
    for (std::uint32_t s = 0; s < b; ++s) {
      std::uint32_t w = u_word * b + s;
      if (spec.is_forbidden(w)) continue;
      std::uint32_t v_word = w % state_mod;
      auto it = std::lower_bound(pd.states.begin(), pd.states.end(), v_word);
      if (it == pd.states.end() || *it != v_word) continue;
      int v = static_cast<int>(it - pd.states.begin());
      if (local[static_cast<size_t>(v)] < 0) continue;  // leaves the component
      steps.push_back({static_cast<int>(s), local[static_cast<size_t>(v)]});
      row += pd.right_vector[static_cast<size_t>(local[static_cast<size_t>(v)])];
    }
    if (steps.empty())
      throw DegenerateShift("no admissible continuation inside the component");
    // Weight each transition by the right eigenvector at the successor; the
    // exact row normalization keeps the chain stochastic without dividing by
    // the rho v_i estimate.
    double r = rng.next_unit() * row;
    double acc = 0;
    const Step* chosen = &steps.back();
    for (const Step& st : steps) {
      acc += pd.right_vector[static_cast<size_t>(st.next_local)];
      if (r < acc) {
        chosen = &st;
        break;
      }
    }
    state = static_cast<size_t>(chosen->next_local);
    digits.push_back(chosen->symbol);
  }
  return digits;
}

BigInt count_admissible_words(const SftSpec& spec, long long length) {
  if (length < 0) throw PreconditionError("word length must be nonnegative");
  if (length == 0) return 1;  // the empty word
  const std::uint64_t n_states = word_count(spec.base, spec.window - 1);
  if (length < spec.window) {
    // No constraint can fire yet: all base^length words.
    return ipow(BigInt(spec.base), static_cast<unsigned>(length));
  }
  const std::uint32_t state_mod = static_cast<std::uint32_t>(n_states);
  std::vector<BigInt> count(n_states, BigInt(1));  // one prefix per state
  for (long long step = 0; step < length - (spec.window - 1); ++step) {
    std::vector<BigInt> next(n_states, BigInt(0));
    for (std::uint64_t u = 0; u < n_states; ++u) {
      if (count[u] == 0) continue;
      for (int s = 0; s < spec.base; ++s) {
        std::uint32_t w =
            static_cast<std::uint32_t>(u) * static_cast<std::uint32_t>(spec.base) +
            static_cast<std::uint32_t>(s);
        if (spec.is_forbidden(w)) continue;
        next[w % state_mod] += count[u];
      }
    }
    count = std::move(next);
  }
  BigInt total = 0;
  for (const BigInt& c : count) total += c;
  return total;
}

}  // namespace torodyn::symbolic
