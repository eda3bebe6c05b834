#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "submod/matrix.hpp"

namespace submod {

inline constexpr std::uint64_t kDefaultModuleCap = 100000;

/// Ω = (c_1) × … × (c_n) ⊆ R^n with canonical column generators.
struct Ambient {
  RingPtr ring;
  std::size_t n = 0;
  Row column_ideals;

  static Ambient full(RingPtr ring, std::size_t n);
  static Ambient with_ideals(RingPtr ring, Row ideals);
  /// R × (π^{a_2}) × … × (π^{a_n}) over a chain ring.
  static Ambient chain_family(RingPtr ring, const std::vector<unsigned>& exponents);

  unsigned length() const;
  bool is_full() const;
  bool contains(std::span<const Elem> v) const;
  /// Diagonal generator matrix of Ω.
  Matrix generators() const;
  std::uint64_t cardinality() const;

  friend bool operator==(const Ambient& a, const Ambient& b);
};

/// A submodule of an ambient, stored as its RREF basis.
class SubModule {
 public:
  static SubModule from_generators(const Ambient& ambient, const Matrix& rows);
  static SubModule zero(const Ambient& ambient);
  static SubModule whole(const Ambient& ambient);

  const Ambient& ambient() const noexcept { return ambient_; }
  const Ring& ring() const noexcept { return *ambient_.ring; }
  const Matrix& basis() const noexcept { return form_.base; }
  const std::vector<std::size_t>& pivot_cols() const noexcept { return form_.pivot_cols; }
  std::vector<IdealHandle> pivot_ideals() const;
  unsigned length() const noexcept { return length_; }
  std::uint64_t cardinality() const;

  bool contains(std::span<const Elem> v) const;
  bool contains(const SubModule& other) const;

  friend bool operator==(const SubModule& a, const SubModule& b);
  /// Deterministic total order: by length, then basis entries.
  friend bool operator<(const SubModule& a, const SubModule& b);

 private:
  SubModule(Ambient ambient, EchelonMatrix form);

  Ambient ambient_;
  EchelonMatrix form_;
  unsigned length_ = 0;
};

struct LossError {
  unsigned rho = 0;  // erasures
  unsigned e = 0;    // errors
};

void require_same_ambient(const SubModule& a, const SubModule& b, const char* what);

SubModule sum(const SubModule& m, const SubModule& n);
unsigned distance(const SubModule& m, const SubModule& n);
unsigned intersection_length(const SubModule& m, const SubModule& n);
LossError loss_and_error(const SubModule& sent, const SubModule& received);

/// Every element of M, each exactly once.
std::vector<Row> elements(const SubModule& m, std::uint64_t cap = kDefaultModuleCap);
/// M ∩ N by enumerating M and filtering by membership in N.
SubModule intersection_oracle(const SubModule& m, const SubModule& n, std::uint64_t cap = kDefaultModuleCap);
/// All submodules of M of length at most max_length, sorted.
std::vector<SubModule> submodules_of(const SubModule& m, unsigned max_length,
                                     std::uint64_t cap = kDefaultModuleCap);
/// All submodules of Ω of length exactly ell, sorted.
std::vector<SubModule> enumerate_submodules(const Ambient& ambient, unsigned ell,
                                            std::uint64_t cap = kDefaultModuleCap);
/// Number of submodules of each length in a list.
std::size_t count_of_length(std::span<const SubModule> lattice, unsigned ell);
/// Length of a composition series built by minimal one-element extensions
/// of explicit element sets; independent of the echelon machinery.
unsigned composition_length_oracle(const SubModule& m, std::uint64_t cap = 512);

// Decomposition along product factors and chain components.
SubModule project_factor(const SubModule& m, std::size_t i);
SubModule project_component(const SubModule& m, std::size_t i);
/// M_1 × … × M_k over product(R_1, …, R_k).
SubModule combine_factors(const RingPtr& product_ring, std::span<const SubModule> parts);
/// Re-reads M over a ring with the same chain components.
SubModule transport(const SubModule& m, const RingPtr& target);

}  // namespace submod
