#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "submod/submodule.hpp"

namespace submod {

/// A constant-length submodule code with at least two words.
class Code {
 public:
  static Code from_words(std::vector<SubModule> words);

  const Ambient& ambient() const noexcept { return words_.front().ambient(); }
  const std::vector<SubModule>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  unsigned constant_length() const noexcept { return words_.front().length(); }
  /// Brute-force pairwise minimum, computed once at construction.
  unsigned min_distance() const noexcept { return min_distance_; }
  unsigned radius() const noexcept { return (min_distance_ - 1) / 2; }

 private:
  explicit Code(std::vector<SubModule> words);
  std::vector<SubModule> words_;
  unsigned min_distance_ = 0;
};

unsigned min_distance(const Code& c);

enum class DecodeStatus { decoded, ambiguous, no_codeword };
std::string to_string(DecodeStatus s);

struct DecodeResult {
  DecodeStatus status = DecodeStatus::no_codeword;
  std::optional<std::size_t> index;
  std::optional<SubModule> word;
  unsigned distance = 0;
  std::optional<unsigned> second_distance;
  bool certified = false;
};

/// Exhaustive nearest-codeword search; ties are reported as ambiguous.
DecodeResult decode_min_distance(const Code& c, const SubModule& received);

/// h×(h+ρ) matrices over a chain ring whose pairwise differences span
/// modules of length h·λ(R).
struct DifferenceSet {
  RingPtr ring;
  unsigned h = 0;
  unsigned rho = 0;
  std::vector<Matrix> matrices;
};

DifferenceSet difference_set(const RingPtr& ring, unsigned h, unsigned rho);
/// Checks the defining length property over all pairs.
bool verify_difference_set(const DifferenceSet& set);

Code construct_spread(const RingPtr& ring, std::size_t n, unsigned k);
/// Re-reads a code over Z_p as a code over a ring of characteristic p.
Code construct_tensor(const Code& code, const RingPtr& target);

/// Code over a product ring together with the factor codes it came from.
struct ProductCode {
  RingPtr ring;
  std::vector<Code> factors;
  Code code;
  bool stacked = false;
};

ProductCode construct_product(const std::vector<Code>& codes);
ProductCode construct_stacked(const std::vector<Code>& codes);

struct ProductDecode {
  DecodeResult overall;
  std::vector<DecodeResult> components;
};

/// Decodes each factor projection separately and reassembles.
ProductDecode decode_product(const ProductCode& code, const SubModule& received);

/// Carries every word to a ring with the same chain components.
Code transport(const Code& code, const RingPtr& target);

}  // namespace submod
