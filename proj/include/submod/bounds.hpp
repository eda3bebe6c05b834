#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submod/submodule.hpp"

namespace submod {

/// q-ary binomial coefficient [n choose k]_q; 0 when k > n.
std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k);

/// Number of length-ell submodules of M ⊆ (Z_p^m)^n with dim(e_i M) = dims[i].
std::uint64_t zpm_count(std::uint64_t p, const std::vector<unsigned>& dims, unsigned ell);
/// b(λ,k,δ): minimum of zpm_count over dims summing to λ-δ+1, each at most cap.
std::uint64_t zpm_b(std::uint64_t p, unsigned m, unsigned lambda, unsigned k, unsigned delta, unsigned cap);

/// (q^n - q^{h+ρ} + q^h - 1)/(q^h - 1) with ρ = n mod h.
std::uint64_t spread_cardinality(std::uint64_t q, unsigned n, unsigned h);

/// How a bound was obtained.
enum class BoundMethod { closed_form, enumeration };

struct BoundValue {
  std::string name;
  std::uint64_t value = 0;
  BoundMethod method = BoundMethod::closed_form;
  std::string detail;
};

/// Field size q and component count m when R ≅ F_q^m with all factors equal.
struct SplitField {
  std::uint64_t q = 0;
  unsigned m = 0;
};
std::optional<SplitField> split_field(const Ring& r);

BoundValue bound_singleton(const Ambient& ambient, unsigned k, unsigned delta,
                           std::uint64_t cap = kDefaultModuleCap);
BoundValue bound_singleton_enumerated(const Ambient& ambient, unsigned k, unsigned delta,
                                      std::uint64_t cap = kDefaultModuleCap);
BoundValue bound_sphere(const Ambient& ambient, unsigned k, unsigned delta, std::uint64_t cap = kDefaultModuleCap);
BoundValue bound_sphere_enumerated(const Ambient& ambient, unsigned k, unsigned delta,
                                   std::uint64_t cap = kDefaultModuleCap);

/// Chain-ring bound for δ = k over R × (π^{a_2}) × … × (π^{a_n}).
std::uint64_t bound_chain_ring(const Ring& ring, std::size_t n, const std::vector<unsigned>& exponents, unsigned k);

struct ZpmBounds {
  std::optional<std::uint64_t> bb1, bb2, bb3, bb4;
  std::uint64_t best = 0;
};
ZpmBounds bound_zpm(std::uint64_t p, unsigned m, unsigned n, unsigned k, unsigned delta);

}  // namespace submod
