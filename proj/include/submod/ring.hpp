#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "submod/errors.hpp"

namespace submod {

/// A ring element, stored as its canonical integer code inside the owning
/// ring. Codes are only meaningful together with a Ring.
struct Elem {
  std::uint32_t code = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Canonical generator of a principal ideal together with its length.
struct IdealHandle {
  Elem generator;
  unsigned length = 0;

  friend bool operator==(const IdealHandle&, const IdealHandle&) = default;
};

/// Unimodular 2x2 transform [x y; z t] with [x y; z t]·[a; b] = [g; 0],
/// xt - yz = 1 and (g) = (a) + (b).
struct Transform2 {
  Elem x, y, z, t, g;
};

/// a = rep + quotient·g, with rep the canonical residue of a modulo (g).
struct Reduction {
  Elem rep;
  Elem quotient;
};

/// unit·a = generator, with generator the canonical generator of (a).
struct Normalization {
  Elem generator;
  Elem unit;
};

struct ChainComponent {
  std::string label;
  std::uint64_t characteristic = 0;
  std::uint64_t residue_order = 0;  // q
  unsigned chain_length = 0;        // e
};

/// Decomposition of a finite PIR into local chain rings.
struct Structure {
  std::vector<ChainComponent> components;
  // Square roots of -1 used for the CRT split of Z_p[i], p = 1 mod 4.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> gaussian_roots;

  unsigned length() const;
  bool is_chain() const { return components.size() == 1; }
};

/// Data needed to work with a finite chain ring R: uniformizer, residue
/// field and a set-theoretic section of R -> R/(pi).
struct ChainInfo {
  std::uint64_t residue_order = 0;
  unsigned chain_length = 0;
  Elem uniformizer;
  RingPtr residue_field;
  std::vector<Elem> section;  // section[c] lifts residue field code c into R

  Elem lift(Elem residue) const { return section.at(residue.code); }
};

inline constexpr std::uint64_t kDefaultElementCap = 10000;

/// A finite principal ideal ring: Z/mZ, Z_p[i], or a finite product of
/// such rings. Instances are immutable and shared through RingPtr.
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  enum class Kind { residue, gaussian, product };

  static RingPtr residue(std::uint64_t m);
  static RingPtr gaussian(std::uint64_t p);
  static RingPtr product(std::vector<RingPtr> factors);
  /// Parses `Z<m>`, `Zi<p>` or `product(<spec>,...)`.
  static RingPtr parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  std::uint64_t size() const noexcept { return size_; }
  /// m for Z/mZ, p for Z_p[i], 0 for products.
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t characteristic() const;
  const std::vector<RingPtr>& factors() const noexcept { return factors_; }

  bool same_as(const Ring& other) const noexcept { return this == &other || name_ == other.name_; }

  // Arithmetic.
  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const;
  Elem from_integer(std::int64_t z) const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  bool is_zero(Elem a) const noexcept { return a.code == 0; }
  bool is_unit(Elem a) const;
  Elem inverse(Elem a) const;

  // Ideal structure.
  Normalization normalize(Elem a) const;
  Elem canonical_generator(Elem a) const { return normalize(a).generator; }
  IdealHandle ideal(Elem a) const;
  IdealHandle annihilator(Elem a) const;
  bool divides(Elem a, Elem b) const;
  /// Some h with h·g = b; the smallest canonical choice when not unique.
  Elem divide(Elem b, Elem g) const;
  IdealHandle ideal_gcd(std::span<const Elem> elems) const;
  unsigned ideal_length(Elem a) const;
  unsigned length() const { return structure_.length(); }
  Elem residue_of(Elem a, Elem g) const;
  Reduction reduce(Elem a, Elem g) const;
  Transform2 stab2(Elem a, Elem b) const;

  // Decomposition into chain components.
  const Structure& structure() const noexcept { return structure_; }
  std::size_t component_count() const noexcept { return structure_.components.size(); }
  RingPtr component_ring(std::size_t i) const;
  std::vector<Elem> to_components(Elem a) const;
  Elem from_components(std::span<const Elem> parts) const;
  std::vector<Elem> idempotents() const;
  std::optional<ChainInfo> chain() const;

  // Product factors (kind() == product).
  Elem factor_part(Elem a, std::size_t i) const;
  Elem from_factors(std::span<const Elem> parts) const;

  // Enumeration.
  std::vector<Elem> elements(std::uint64_t cap = kDefaultElementCap) const;
  std::vector<Elem> ideal_elements(Elem g) const;
  std::vector<Elem> residues(Elem g) const;
  std::vector<Elem> units() const;

  // Literals: integer, a+bi, (x,y,...).
  std::string format(Elem a) const;
  Elem parse_element(std::string_view text) const;

 private:
  enum class GaussMode { split, field, ramified };

  Ring() = default;
  void finish();
  Elem checked(Elem a) const;

  // Local chain helpers for Z_p[i] with p = 2 or p = 3 mod 4.
  unsigned valuation(Elem a) const;
  Elem unit_part(Elem a) const;
  Elem pi_power(unsigned k) const;
  unsigned local_e() const;

  // Z_p[i] (p = 1 mod 4) <-> Z_p x Z_p.
  Elem to_split(Elem a) const;
  Elem from_split(Elem a) const;

  std::vector<Elem> split_product(Elem a) const;
  Elem join_product(std::span<const Elem> parts) const;

  Kind kind_ = Kind::residue;
  std::string name_;
  std::uint64_t size_ = 0;
  std::uint64_t modulus_ = 0;
  std::vector<std::pair<std::uint64_t, unsigned>> factorization_;
  GaussMode gauss_mode_ = GaussMode::field;
  std::uint64_t root_ = 0;
  std::uint64_t inv2_ = 0;
  std::uint64_t inv2root_ = 0;
  RingPtr split_;
  std::vector<RingPtr> factors_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::size_t> component_offsets_;
  Structure structure_;
};

/// Throws DomainError unless both rings are the same.
void require_same_ring(const Ring& a, const Ring& b, std::string_view what);

// Integer helpers shared by the constructions and bounds.
std::uint64_t ipow(std::uint64_t base, unsigned exp);
bool is_prime(std::uint64_t n);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

}  // namespace submod
