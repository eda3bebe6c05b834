#include "submod/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace submod {

std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k) {
  if (k > n) return 0;
  // Pascal-type recurrence [n,k] = [n-1,k-1] + q^k [n-1,k].
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = std::min(i, k); j >= 1; --j) row[j] = row[j - 1] + ipow(q, j) * row[j];
  return row[k];
}

namespace {

void for_each_composition(unsigned total, unsigned parts, unsigned cap,
                          const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> cur(parts, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned idx, unsigned left) {
    if (idx + 1 == parts) {
      if (left <= cap) {
        cur[idx] = left;
        fn(cur);
      }
      return;
    }
    for (unsigned v = 0; v <= std::min(left, cap); ++v) {
      cur[idx] = v;
      rec(idx + 1, left - v);
    }
  };
  if (parts > 0) rec(0, total);
}

void check_parameters(unsigned lambda, unsigned k, unsigned delta) {
  if (k < 1 || k + 1 > lambda || delta < 1 || delta > k)
    throw DomainError("bound parameters need 1 <= k <= lambda(Omega)-1 and 1 <= delta <= k (lambda=" +
                      std::to_string(lambda) + ", k=" + std::to_string(k) + ", delta=" + std::to_string(delta) + ")");
}

/// Exponent a with c = unit·π^a, for column generators of a chain ring.
std::optional<std::vector<unsigned>> chain_exponents(const Ambient& amb) {
  auto info = amb.ring->chain();
  if (!info || amb.n == 0 || !amb.ring->is_unit(amb.column_ideals[0])) return std::nullopt;
  std::vector<unsigned> out;
  for (std::size_t j = 1; j < amb.n; ++j) {
    const unsigned len = amb.ring->ideal_length(amb.column_ideals[j]);
    if (len == 0) return std::nullopt;
    const unsigned a = info->chain_length - len;
    if (!out.empty() && a < out.back()) return std::nullopt;
    out.push_back(a);
  }
  return out;
}

}  // namespace

std::uint64_t zpm_count(std::uint64_t p, const std::vector<unsigned>& dims, unsigned ell) {
  std::uint64_t total = 0;
  for_each_composition(ell, static_cast<unsigned>(dims.size()), ell, [&](const std::vector<unsigned>& parts) {
    std::uint64_t prod = 1;
    for (std::size_t i = 0; i < dims.size(); ++i) prod *= gaussian_binomial(p, dims[i], parts[i]);
    total += prod;
  });
  return total;
}

std::uint64_t zpm_b(std::uint64_t p, unsigned m, unsigned lambda, unsigned k, unsigned delta, unsigned cap) {
  if (lambda + 1 < delta || k + 1 < delta) throw DomainError("b(lambda,k,delta): delta too large");
  std::optional<std::uint64_t> best;
  for_each_composition(lambda - delta + 1, m, cap, [&](const std::vector<unsigned>& u) {
    const std::uint64_t v = zpm_count(p, u, k - delta + 1);
    if (!best || v < *best) best = v;
  });
  if (!best) throw DomainError("b(lambda,k,delta): no admissible dimension vector");
  return *best;
}

std::uint64_t spread_cardinality(std::uint64_t q, unsigned n, unsigned h) {
  const unsigned rho = n % h;
  return (ipow(q, n) - ipow(q, h + rho) + ipow(q, h) - 1) / (ipow(q, h) - 1);
}

std::optional<SplitField> split_field(const Ring& r) {
  const auto& comps = r.structure().components;
  for (const auto& c : comps)
    if (c.chain_length != 1 || c.residue_order != comps[0].residue_order) return std::nullopt;
  return SplitField{comps[0].residue_order, static_cast<unsigned>(comps.size())};
}

BoundValue bound_singleton_enumerated(const Ambient& ambient, unsigned k, unsigned delta, std::uint64_t cap) {
  const unsigned lambda = ambient.length();
  check_parameters(lambda, k, delta);
  const unsigned big = lambda - delta + 1, small = k - delta + 1;
  if (ambient.cardinality() > cap) throw DomainError("singleton bound: ambient above the enumeration cap");
  const auto lattice = submodules_of(SubModule::whole(ambient), big, cap);
  std::optional<std::uint64_t> best;
  for (const auto& m : lattice) {
    if (m.length() != big) continue;
    std::uint64_t count = 0;
    for (const auto& n : lattice)
      if (n.length() == small && m.contains(n)) ++count;
    if (!best || count < *best) best = count;
  }
  return {"singleton", best.value_or(0), BoundMethod::enumeration,
          "min over M of length " + std::to_string(big) + " of #submodules of length " + std::to_string(small)};
}

BoundValue bound_singleton(const Ambient& ambient, unsigned k, unsigned delta, std::uint64_t cap) {
  const unsigned lambda = ambient.length();
  check_parameters(lambda, k, delta);
  if (auto sf = split_field(*ambient.ring); sf && ambient.is_full()) {
    const unsigned n = static_cast<unsigned>(ambient.n);
    return {"singleton", zpm_b(sf->q, sf->m, lambda, k, delta, n), BoundMethod::closed_form,
            "q-binomial sum over component dimensions (q=" + std::to_string(sf->q) + ", m=" + std::to_string(sf->m) +
                ")"};
  }
  if (delta == k)
    if (auto ex = chain_exponents(ambient))
      return {"singleton", bound_chain_ring(*ambient.ring, ambient.n, *ex, k), BoundMethod::closed_form,
              "chain ring, delta = k"};
  return bound_singleton_enumerated(ambient, k, delta, cap);
}

BoundValue bound_sphere_enumerated(const Ambient& ambient, unsigned k, unsigned delta, std::uint64_t cap) {
  const unsigned lambda = ambient.length();
  check_parameters(lambda, k, delta);
  const unsigned small = k - delta + 1;
  if (ambient.cardinality() > cap) throw DomainError("sphere bound: ambient above the enumeration cap");
  const auto lattice = submodules_of(SubModule::whole(ambient), k, cap);
  const std::uint64_t numerator = count_of_length(lattice, small);
  std::optional<std::uint64_t> denom;
  for (const auto& m : lattice) {
    if (m.length() != k) continue;
    std::uint64_t count = 0;
    for (const auto& n : lattice)
      if (n.length() == small && m.contains(n)) ++count;
    if (!denom || count < *denom) denom = count;
  }
  if (!denom || *denom == 0) throw DomainError("sphere bound: no submodule of length k");
  return {"sphere", numerator / *denom, BoundMethod::enumeration,
          std::to_string(numerator) + " / " + std::to_string(*denom)};
}

BoundValue bound_sphere(const Ambient& ambient, unsigned k, unsigned delta, std::uint64_t cap) {
  const unsigned lambda = ambient.length();
  check_parameters(lambda, k, delta);
  if (auto sf = split_field(*ambient.ring); sf && ambient.is_full()) {
    const unsigned n = static_cast<unsigned>(ambient.n);
    const std::uint64_t numerator = zpm_count(sf->q, std::vector<unsigned>(sf->m, n), k - delta + 1);
    const std::uint64_t denom = zpm_b(sf->q, sf->m, k + delta - 1, k, delta, n);
    return {"sphere", numerator / denom, BoundMethod::closed_form,
            std::to_string(numerator) + " / " + std::to_string(denom)};
  }
  return bound_sphere_enumerated(ambient, k, delta, cap);
}

std::uint64_t bound_chain_ring(const Ring& ring, std::size_t n, const std::vector<unsigned>& exponents, unsigned k) {
  auto info = ring.chain();
  if (!info) throw DomainError("chain bound: " + ring.name() + " is not a chain ring");
  if (n == 0) throw DomainError("chain bound: n must be positive");
  std::vector<unsigned> a(n, 0);  // a[j] is the exponent of column j (0-based)
  if (!exponents.empty()) {
    if (exponents.size() != n - 1) throw DomainError("chain bound: expected n-1 exponents");
    std::copy(exponents.begin(), exponents.end(), a.begin() + 1);
  }
  const unsigned e = info->chain_length;
  for (std::size_t j = 1; j < n; ++j)
    if (a[j] < a[j - 1] || a[j] >= e) throw DomainError("chain bound: exponents must be nondecreasing and below e");
  if (k == 0) throw DomainError("chain bound: k must be positive");
  for (std::size_t i = 1; i <= n; ++i) {
    long long tail = static_cast<long long>(n - i) * e;
    for (std::size_t j = i; j < n; ++j) tail -= a[j];
    if (tail <= static_cast<long long>(k) - 1) {
      const std::uint64_t q = info->residue_order;
      return (ipow(q, static_cast<unsigned>(i)) - 1) / (q - 1);
    }
  }
  throw DomainError("chain bound: no admissible m");
}

ZpmBounds bound_zpm(std::uint64_t p, unsigned m, unsigned n, unsigned k, unsigned delta) {
  if (p < 2 || m < 1 || n < 1) throw DomainError("zpm bound: need p >= 2, m >= 1, n >= 1");
  check_parameters(m * n, k, delta);
  ZpmBounds out;
  out.bb1 = zpm_b(p, m, m * n, k, delta, n);
  out.bb2 = zpm_count(p, std::vector<unsigned>(m, n), k - delta + 1) / zpm_b(p, m, k + delta - 1, k, delta, n);
  if (delta == k) {
    const std::uint64_t top = (ipow(p, n) - 1) / (p - 1);
    std::uint64_t bottom;
    if (k % m == 0) {
      bottom = (ipow(p, k / m) - 1) / (p - 1);
      if ((ipow(p, k / m) - 1) % (p - 1) != 0) ++bottom;
    } else {
      const long double v = (std::pow(static_cast<long double>(p), static_cast<long double>(k) / m) - 1) / (p - 1);
      bottom = static_cast<std::uint64_t>(std::ceil(v - 1e-12L));
    }
    if (bottom > 0) out.bb3 = top / bottom;
    if (m == 2 && k % 2 == 1) {
      const unsigned h = (k + 1) / 2;
      const std::uint64_t denom = ipow(p, h) + ipow(p, h - 1) - 2;
      if (denom > 0) out.bb4 = 2 * (ipow(p, n) - 1) / denom;
    }
  }
  out.best = std::numeric_limits<std::uint64_t>::max();
  for (const auto& b : {out.bb1, out.bb2, out.bb3, out.bb4})
    if (b) out.best = std::min(out.best, *b);
  return out;
}

}  // namespace submod
