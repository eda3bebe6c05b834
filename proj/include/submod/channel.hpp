#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submod/codes.hpp"
#include "submod/rng.hpp"

namespace submod {

Elem random_element(const Ring& r, Rng& rng);
Elem random_unit(const Ring& r, Rng& rng);
Matrix random_matrix(const RingPtr& r, std::size_t rows, std::size_t cols, Rng& rng);

/// Random invertible N×N matrix as a product of elementary unimodular operations.
Matrix random_invertible(const RingPtr& r, std::size_t N, Rng& rng);
/// A = P·[0; I_t] with P random invertible; left-invertible by construction.
Matrix sample_transfer(const RingPtr& r, std::size_t N, std::size_t t, Rng& rng);
/// v×n matrix whose rows span a free module of rank v.
Matrix sample_free_rows(const RingPtr& r, unsigned v, std::size_t n, Rng& rng);
/// N×n matrix with v free rows at random positions and zeros elsewhere.
Matrix sample_noise(const RingPtr& r, std::size_t N, std::size_t n, unsigned v, Rng& rng);

/// Received module within the decoding radius of word `index`, built by
/// dropping generators of the word and adding random vectors.
SubModule corrupt_within_radius(const Code& code, std::size_t index, Rng& rng);

enum class NoiseModel { channel, within_radius };

struct ChannelConfig {
  RingPtr ring;
  std::size_t n = 0, t = 0, N = 0;
  unsigned v = 0;
  std::optional<Code> code;
  NoiseModel model = NoiseModel::channel;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct TrialReport {
  std::size_t trial = 0;
  std::size_t sent = 0;
  unsigned rho = 0, e = 0;
  DecodeStatus status = DecodeStatus::no_codeword;
  std::optional<std::size_t> decoded;
  bool success = false;
  bool certified = false;
  unsigned nearest = 0;
  std::optional<unsigned> second;

  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

struct SimulationSummary {
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t certified_successes = 0;
  std::size_t within_radius = 0;
  std::size_t radius_violations = 0;
  double success_rate = 0;
  double certified_rate = 0;
  double mean_rho = 0, mean_e = 0;
  std::vector<TrialReport> reports;
};

void validate(const ChannelConfig& config);
SimulationSummary run_trials(const ChannelConfig& config);

/// Unit-pivot RREF matrices padded with u zero columns, as a code.
struct TrappingCodebook {
  Code code;
  std::vector<Matrix> xbars;
  std::size_t u = 0;
  std::size_t rows = 0, cols = 0;
};

struct TrappingParams {
  std::size_t n = 0, N = 0, t = 0;
  unsigned u = 0, v = 0;
};

/// Rows of X̄: N-u when t+v > N, t otherwise.
std::size_t trapping_rows(const TrappingParams& p);
TrappingCodebook error_trapping_codebook(const RingPtr& ring, const TrappingParams& p);
/// Embeds X̄ as [0 | X̄] in R^n.
SubModule pad_trapping_word(const Ambient& ambient, std::size_t u, const Matrix& xbar);

struct TrappingReport {
  std::size_t codewords = 0;
  std::size_t instances = 0;
  std::size_t comparisons = 0;
  std::size_t violations = 0;
  std::vector<std::string> details;
};

/// For every codeword X̄ and `instances_per_word` draws of Y = G·[[H,K],[0,X̄]],
/// checks d(row Y, T̄) ≥ d(row Y, X̄) with equality iff T̄ = X̄.
TrappingReport check_trapping_is_min_distance(const RingPtr& ring, const TrappingParams& p,
                                              std::size_t instances_per_word, std::uint64_t seed);

/// Same check over every free H and every K for each codeword; G is drawn at random.
TrappingReport check_trapping_exhaustive(const RingPtr& ring, const TrappingParams& p, std::uint64_t seed,
                                         std::uint64_t cap = 10000000);

}  // namespace submod
