#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "torodyn/exact.hpp"
#include "torodyn/interval.hpp"

namespace torodyn::symbolic {

// Open/closed ball on the circle, taken mod 1 (may wrap).
struct BallSpec {
  Rational center;  // in [0,1)
  Rational radius;  // 0 < radius < 1/2

  static BallSpec make(Rational center, Rational radius);
};

enum class Polarity { inner, outer };

// Subshift of finite type over {0..base-1} given by forbidden length-L words.
// Words are encoded as integers with the first (most significant) digit the
// earliest symbol, so the encoding of w is also the index of its cylinder
// [w b^-L, (w+1) b^-L).
struct SftSpec {
  int base = 2;
  int window = 1;
  std::vector<std::uint32_t> forbidden;  // sorted, unique
  Polarity polarity = Polarity::inner;

  bool is_forbidden(std::uint32_t word) const;
  std::string word_string(std::uint32_t word) const;
  // True when every length-L factor of the digit word is allowed.
  bool admissible(const std::vector<int>& digits) const;
};

// Inner: forbids every word whose cylinder meets the open ball (subshift is
// contained in the avoid set). Outer: forbids only words whose cylinder lies
// inside the closed ball (subshift contains the avoid set). A window is
// usable when a cylinder fits inside the ball: b^-L <= 2 radius.
std::pair<SftSpec, SftSpec> avoid_ball_sft(int base, const BallSpec& ball, int window);

// Certified Perron data of the de Bruijn transfer graph (states are words of
// length L-1; the edge u -> v appends the last digit of v and is present when
// the combined length-L word is allowed).
struct PerronData {
  std::vector<std::uint32_t> states;    // surviving states after pruning
  std::vector<std::vector<int>> succ;   // adjacency on surviving states
  std::vector<int> dominant;            // state indices of the dominant component
  ValErr spectral_radius;
  std::vector<double> right_vector;     // over dominant states, positive, max = 1
  std::vector<double> left_vector;
  double residual_bound = 0.0;          // sup norm of A v - rho v on the component
  BigInt min_row_sum, max_row_sum;      // out-degrees over the dominant component
  ValErr entropy;                       // log spectral_radius
  ValErr dimension;                     // entropy / log base, in [0,1]
};

// Power iteration per strongly connected component with exact rational
// Collatz-Wielandt certification of the final bracket.
PerronData perron(const SftSpec& spec, double tolerance = 1e-12);

// Length-N word sampled from the maximal-entropy Markov chain on the dominant
// component: start from the stationary law, step with p(u -> v) proportional
// to A_uv v_j. Deterministic given the seed.
std::vector<int> parry_sample(const SftSpec& spec, const PerronData& perron_data,
                              long long length, std::uint64_t seed);

// Exact number of admissible words of the given length (transfer-matrix
// counting on the full de Bruijn graph, dead ends included).
BigInt count_admissible_words(const SftSpec& spec, long long length);

}  // namespace torodyn::symbolic
