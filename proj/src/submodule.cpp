#include "submod/submodule.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace submod {

// ---------------------------------------------------------------------------
// Ambient

Ambient Ambient::full(RingPtr ring, std::size_t n) {
  Row ideals(n, ring->one());
  return Ambient{std::move(ring), n, std::move(ideals)};
}

Ambient Ambient::with_ideals(RingPtr ring, Row ideals) {
  for (Elem& c : ideals) c = ring->canonical_generator(c);
  const std::size_t n = ideals.size();
  return Ambient{std::move(ring), n, std::move(ideals)};
}

Ambient Ambient::chain_family(RingPtr ring, const std::vector<unsigned>& exponents) {
  auto info = ring->chain();
  if (!info) throw DomainError(ring->name() + " is not a chain ring");
  Row ideals{ring->one()};
  unsigned previous = 0;
  for (unsigned a : exponents) {
    if (a < previous || a >= info->chain_length)
      throw DomainError("ambient exponents must be nondecreasing and below the chain length");
    previous = a;
    Elem g = ring->one();
    for (unsigned k = 0; k < a; ++k) g = ring->mul(g, info->uniformizer);
    ideals.push_back(g);
  }
  return with_ideals(std::move(ring), std::move(ideals));
}

unsigned Ambient::length() const {
  unsigned total = 0;
  for (Elem c : column_ideals) total += ring->ideal_length(c);
  return total;
}

bool Ambient::is_full() const {
  return std::all_of(column_ideals.begin(), column_ideals.end(), [&](Elem c) { return ring->is_unit(c); });
}

bool Ambient::contains(std::span<const Elem> v) const {
  if (v.size() != n) return false;
  for (std::size_t j = 0; j < n; ++j)
    if (!ring->divides(column_ideals[j], v[j])) return false;
  return true;
}

Matrix Ambient::generators() const {
  Matrix m(ring, n, n);
  for (std::size_t j = 0; j < n; ++j) m.set(j, j, column_ideals[j]);
  return m;
}

std::uint64_t Ambient::cardinality() const {
  std::uint64_t total = 1;
  for (Elem c : column_ideals) total *= ring->ideal_elements(c).size();
  return total;
}

bool operator==(const Ambient& a, const Ambient& b) {
  return a.ring->same_as(*b.ring) && a.n == b.n && a.column_ideals == b.column_ideals;
}

// ---------------------------------------------------------------------------
// SubModule

SubModule::SubModule(Ambient ambient, EchelonMatrix form) : ambient_(std::move(ambient)), form_(std::move(form)) {
  for (std::size_t i = 0; i < form_.base.rows(); ++i) length_ += ambient_.ring->ideal_length(form_.pivot(i));
}

SubModule SubModule::from_generators(const Ambient& ambient, const Matrix& rows) {
  require_same_ring(*ambient.ring, rows.ring(), "from_generators");
  if (rows.cols() != ambient.n) throw DomainError("generator width does not match the ambient dimension");
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!ambient.contains(rows.row(i)))
      throw DomainError("generator row " + std::to_string(i + 1) + " lies outside the ambient module");
  return SubModule(ambient, rref(rows));
}

SubModule SubModule::zero(const Ambient& ambient) {
  return SubModule(ambient, rref(Matrix(ambient.ring, 0, ambient.n)));
}

SubModule SubModule::whole(const Ambient& ambient) { return from_generators(ambient, ambient.generators()); }

std::vector<IdealHandle> SubModule::pivot_ideals() const {
  std::vector<IdealHandle> out;
  for (std::size_t i = 0; i < form_.base.rows(); ++i) out.push_back(ring().ideal(form_.pivot(i)));
  return out;
}

std::uint64_t SubModule::cardinality() const {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < form_.base.rows(); ++i) total *= ring().ideal_elements(form_.pivot(i)).size();
  return total;
}

bool SubModule::contains(std::span<const Elem> v) const { return member(v, form_.base).member; }

bool SubModule::contains(const SubModule& other) const {
  for (const auto& row : other.basis().row_list())
    if (!contains(row)) return false;
  return true;
}

bool operator==(const SubModule& a, const SubModule& b) {
  return a.ambient_ == b.ambient_ && a.form_.base == b.form_.base;
}

bool operator<(const SubModule& a, const SubModule& b) {
  if (a.length_ != b.length_) return a.length_ < b.length_;
  return a.form_.base.row_list() < b.form_.base.row_list();
}

void require_same_ambient(const SubModule& a, const SubModule& b, const char* what) {
  if (!(a.ambient() == b.ambient())) throw DomainError(std::string(what) + ": ambient mismatch");
}

// ---------------------------------------------------------------------------
// Lengths and distances

SubModule sum(const SubModule& m, const SubModule& n) {
  require_same_ambient(m, n, "sum");
  return SubModule::from_generators(m.ambient(), stack(m.basis(), n.basis()));
}

unsigned distance(const SubModule& m, const SubModule& n) {
  return 2 * sum(m, n).length() - m.length() - n.length();
}

unsigned intersection_length(const SubModule& m, const SubModule& n) {
  return m.length() + n.length() - sum(m, n).length();
}

LossError loss_and_error(const SubModule& sent, const SubModule& received) {
  const unsigned common = intersection_length(sent, received);
  return {sent.length() - common, received.length() - common};
}

// ---------------------------------------------------------------------------
// Oracles

std::vector<Row> elements(const SubModule& m, std::uint64_t cap) {
  const Ring& r = m.ring();
  if (m.cardinality() > cap)
    throw DomainError("module has " + std::to_string(m.cardinality()) + " elements, above the cap " +
                      std::to_string(cap));
  std::vector<Row> out{Row(m.ambient().n, Elem{0})};
  for (std::size_t i = 0; i < m.basis().rows(); ++i) {
    const auto coeffs = r.residues(r.annihilator(m.basis().at(i, m.pivot_cols()[i])).generator);
    std::vector<Row> next;
    next.reserve(out.size() * coeffs.size());
    for (const auto& v : out)
      for (Elem c : coeffs) next.push_back(axpy(r, v, c, m.basis().row(i)));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubModule intersection_oracle(const SubModule& m, const SubModule& n, std::uint64_t cap) {
  require_same_ambient(m, n, "intersection_oracle");
  SubModule acc = SubModule::zero(m.ambient());
  for (const auto& v : elements(m, cap)) {
    if (!n.contains(v) || acc.contains(v)) continue;
    Matrix g = acc.basis();
    g.append_row(v);
    acc = SubModule::from_generators(m.ambient(), g);
  }
  return acc;
}

std::vector<SubModule> submodules_of(const SubModule& m, unsigned max_length, std::uint64_t cap) {
  const auto candidates = elements(m, cap);
  std::set<SubModule> seen{SubModule::zero(m.ambient())};
  std::vector<SubModule> frontier{*seen.begin()};
  while (!frontier.empty()) {
    std::vector<SubModule> next;
    for (const auto& base : frontier) {
      if (base.length() >= max_length) continue;
      for (const auto& v : candidates) {
        if (base.contains(v)) continue;
        Matrix g = base.basis();
        g.append_row(v);
        SubModule grown = SubModule::from_generators(m.ambient(), g);
        if (grown.length() > max_length) continue;
        if (seen.insert(grown).second) next.push_back(std::move(grown));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<SubModule> enumerate_submodules(const Ambient& ambient, unsigned ell, std::uint64_t cap) {
  if (ambient.cardinality() > cap)
    throw DomainError("ambient has " + std::to_string(ambient.cardinality()) + " elements, above the cap " +
                      std::to_string(cap));
  auto all = submodules_of(SubModule::whole(ambient), ell, cap);
  std::vector<SubModule> out;
  for (auto& s : all)
    if (s.length() == ell) out.push_back(std::move(s));
  return out;
}

std::size_t count_of_length(std::span<const SubModule> lattice, unsigned ell) {
  return static_cast<std::size_t>(
      std::count_if(lattice.begin(), lattice.end(), [ell](const SubModule& s) { return s.length() == ell; }));
}

unsigned composition_length_oracle(const SubModule& m, std::uint64_t cap) {
  const Ring& r = m.ring();
  const auto all = elements(m, cap);
  const auto scalars = r.elements();
  std::set<Row> current{Row(m.ambient().n, Elem{0})};
  unsigned steps = 0;
  while (current.size() < all.size()) {
    std::set<Row> best;
    for (const auto& v : all) {
      if (current.count(v)) continue;
      std::set<Row> grown;
      for (const auto& c : current)
        for (Elem s : scalars) grown.insert(axpy(r, c, s, v));
      if (best.empty() || grown.size() < best.size()) best = std::move(grown);
    }
    current = std::move(best);
    ++steps;
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

SubModule map_module(const SubModule& m, const RingPtr& target, Row ideals, auto&& map_elem) {
  Ambient amb = Ambient::with_ideals(target, std::move(ideals));
  Matrix g(target, 0, m.ambient().n);
  for (const auto& row : m.basis().row_list()) {
    Row mapped;
    for (Elem e : row) mapped.push_back(map_elem(e));
    g.append_row(std::move(mapped));
  }
  return SubModule::from_generators(amb, g);
}

}  // namespace

SubModule project_factor(const SubModule& m, std::size_t i) {
  const Ring& r = m.ring();
  if (r.kind() != Ring::Kind::product || i >= r.factors().size())
    throw DomainError("project_factor: " + r.name() + " has no factor " + std::to_string(i));
  Row ideals;
  for (Elem c : m.ambient().column_ideals) ideals.push_back(r.factor_part(c, i));
  return map_module(m, r.factors()[i], std::move(ideals), [&](Elem e) { return r.factor_part(e, i); });
}

SubModule project_component(const SubModule& m, std::size_t i) {
  const Ring& r = m.ring();
  RingPtr target = r.component_ring(i);
  Row ideals;
  for (Elem c : m.ambient().column_ideals) ideals.push_back(r.to_components(c)[i]);
  return map_module(m, target, std::move(ideals), [&](Elem e) { return r.to_components(e)[i]; });
}

SubModule combine_factors(const RingPtr& product_ring, std::span<const SubModule> parts) {
  const Ring& r = *product_ring;
  if (r.kind() != Ring::Kind::product || r.factors().size() != parts.size())
    throw DomainError("combine_factors: factor count does not match " + r.name());
  const std::size_t n = parts.front().ambient().n;
  Row ideals(n);
  std::vector<Elem> slot(parts.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].ambient().n != n) throw DomainError("combine_factors: dimensions differ");
      require_same_ring(*r.factors()[i], parts[i].ring(), "combine_factors");
      slot[i] = parts[i].ambient().column_ideals[j];
    }
    ideals[j] = r.from_factors(slot);
  }
  Ambient amb = Ambient::with_ideals(product_ring, ideals);
  Matrix g(product_ring, 0, n);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const auto& row : parts[i].basis().row_list()) {
      Row lifted(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::fill(slot.begin(), slot.end(), Elem{0});
        slot[i] = row[j];
        lifted[j] = r.from_factors(slot);
      }
      g.append_row(std::move(lifted));
    }
  return SubModule::from_generators(amb, g);
}

SubModule transport(const SubModule& m, const RingPtr& target) {
  const Ring& src = m.ring();
  if (src.component_count() != target->component_count())
    throw DomainError("transport: " + src.name() + " and " + target->name() + " have different components");
  for (std::size_t i = 0; i < src.component_count(); ++i)
    if (src.component_ring(i)->name() != target->component_ring(i)->name())
      throw DomainError("transport: component " + std::to_string(i) + " differs between " + src.name() + " and " +
                        target->name());
  auto map = [&](Elem e) { return target->from_components(src.to_components(e)); };
  Row ideals;
  for (Elem c : m.ambient().column_ideals) ideals.push_back(map(c));
  return map_module(m, target, std::move(ideals), map);
}

}  // namespace submod
