#include "submod/codes.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace submod {

// ---------------------------------------------------------------------------
// Code

Code::Code(std::vector<SubModule> words) : words_(std::move(words)) {
  min_distance_ = std::numeric_limits<unsigned>::max();
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (std::size_t j = i + 1; j < words_.size(); ++j)
      min_distance_ = std::min(min_distance_, distance(words_[i], words_[j]));
}

Code Code::from_words(std::vector<SubModule> words) {
  if (words.size() < 2) throw DomainError("a code needs at least two words");
  for (std::size_t i = 1; i < words.size(); ++i) {
    require_same_ambient(words[0], words[i], "code");
    if (words[i].length() != words[0].length())
      throw DomainError("code words must share one length (" + std::to_string(words[0].length()) + " vs " +
                        std::to_string(words[i].length()) + ")");
  }
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      if (words[i] == words[j]) throw DomainError("code words must be distinct");
  return Code(std::move(words));
}

unsigned min_distance(const Code& c) { return c.min_distance(); }

std::string to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::decoded: return "decoded";
    case DecodeStatus::ambiguous: return "ambiguous";
    case DecodeStatus::no_codeword: return "no_codeword";
  }
  return "unknown";
}

DecodeResult decode_min_distance(const Code& c, const SubModule& received) {
  DecodeResult out;
  std::vector<unsigned> dist;
  for (const auto& w : c.words()) dist.push_back(distance(w, received));
  std::vector<unsigned> sorted = dist;
  std::sort(sorted.begin(), sorted.end());
  out.distance = sorted[0];
  out.second_distance = sorted[1];
  if (sorted[0] == sorted[1]) {
    out.status = DecodeStatus::ambiguous;
    return out;
  }
  const auto idx = static_cast<std::size_t>(std::find(dist.begin(), dist.end(), sorted[0]) - dist.begin());
  out.status = DecodeStatus::decoded;
  out.index = idx;
  out.word = c.words()[idx];
  out.certified = out.distance <= c.radius();
  return out;
}

// ---------------------------------------------------------------------------
// Difference sets from extension-field multiplication

namespace {

using Poly = std::vector<Elem>;  // low degree first

Poly poly_mod(const Ring& f, Poly a, const Poly& m) {
  const std::size_t dm = m.size() - 1;
  const Elem lead_inv = f.inverse(m.back());
  while (a.size() > dm) {
    const Elem c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    if (c.code != 0)
      for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    a.pop_back();
  }
  return a;
}

Poly poly_from_index(std::uint64_t index, std::size_t degree, std::uint64_t q) {
  Poly p(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    p[i] = Elem{static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
  return p;
}

bool irreducible(const Ring& f, const Poly& m) {
  const std::size_t d = m.size() - 1;
  const std::uint64_t q = f.size();
  for (std::size_t k = 1; 2 * k <= d; ++k)
    for (std::uint64_t idx = 0; idx < ipow(q, static_cast<unsigned>(k)); ++idx) {
      Poly g = poly_from_index(idx, k, q);
      g.push_back(f.one());
      Poly r = poly_mod(f, m, g);
      if (std::all_of(r.begin(), r.end(), [](Elem e) { return e.code == 0; })) return false;
    }
  return true;
}

/// Least monic irreducible of the given degree, ordered by Σ c_i q^i.
Poly least_irreducible(const Ring& f, std::size_t degree) {
  const std::uint64_t q = f.size();
  for (std::uint64_t idx = 0; idx < ipow(q, static_cast<unsigned>(degree)); ++idx) {
    Poly m = poly_from_index(idx, degree, q);
    m.push_back(f.one());
    if (irreducible(f, m)) return m;
  }
  throw DomainError("no irreducible polynomial found");
}

}  // namespace

DifferenceSet difference_set(const RingPtr& ring, unsigned h, unsigned rho) {
  auto info = ring->chain();
  if (!info) throw DomainError("difference_set: " + ring->name() + " is not a chain ring");
  if (h == 0 || rho >= h) throw DomainError("difference_set requires h >= 1 and 0 <= rho <= h-1");
  const Ring& f = *info->residue_field;
  const std::uint64_t q = f.size();
  const std::size_t hp = h + rho;
  const std::uint64_t count = ipow(q, static_cast<unsigned>(hp));
  if (count > 1000000) throw DomainError("difference_set: q^(h+rho) too large");

  const Poly modulus = least_irreducible(f, hp);
  DifferenceSet out{ring, h, rho, {}};
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly alpha = poly_from_index(idx, hp, q);
    Matrix m(ring, h, hp);
    Poly power = alpha;  // alpha·x^j
    for (std::size_t j = 0; j < hp; ++j) {
      if (j >= rho)
        for (std::size_t c = 0; c < hp; ++c) m.set(j - rho, c, info->lift(power[c]));
      Poly shifted(hp + 1, Elem{0});
      for (std::size_t c = 0; c < hp; ++c) shifted[c + 1] = power[c];
      power = poly_mod(f, shifted, modulus);
      power.resize(hp, Elem{0});
    }
    out.matrices.push_back(std::move(m));
  }
  return out;
}

bool verify_difference_set(const DifferenceSet& set) {
  const Ring& r = *set.ring;
  const unsigned target = set.h * r.length();
  const std::size_t cols = set.h + set.rho;
  Ambient amb = Ambient::full(set.ring, cols);
  for (std::size_t a = 0; a < set.matrices.size(); ++a)
    for (std::size_t b = a + 1; b < set.matrices.size(); ++b) {
      Matrix d(set.ring, set.h, cols);
      for (std::size_t i = 0; i < set.h; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          d.set(i, j, r.sub(set.matrices[a].at(i, j), set.matrices[b].at(i, j)));
      if (SubModule::from_generators(amb, d).length() != target) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

Code construct_spread(const RingPtr& ring, std::size_t n, unsigned k) {
  auto info = ring->chain();
  if (!info) throw DomainError("construct spread: " + ring->name() + " is not a chain ring");
  const unsigned e = ring->length();
  if (k == 0) throw DomainError("construct spread: k must be positive");
  const unsigned h = (k + e - 1) / e;
  const unsigned r = h * e - k;
  if (n < 2 * static_cast<std::size_t>(h))
    throw DomainError("construct spread: need n >= 2h (n=" + std::to_string(n) + ", h=" + std::to_string(h) + ")");
  const std::size_t nu = n / h;
  const unsigned rho = static_cast<unsigned>(n % h);

  const DifferenceSet a = difference_set(ring, h, 0);
  const DifferenceSet a_last = difference_set(ring, h, rho);

  Elem zeta = ring->one();
  for (unsigned i = 0; i < r; ++i) zeta = ring->mul(zeta, info->uniformizer);

  const Ambient amb = Ambient::full(ring, n);
  std::vector<SubModule> words;
  auto emit = [&](Matrix m) {
    m.row(h - 1) = scale_row(*ring, zeta, m.row(h - 1));
    words.push_back(SubModule::from_generators(amb, m));
  };

  // Block i (1-based) holds I; blocks i+1..nu-1 range over a, block nu over a_last.
  for (std::size_t i = 1; i < nu; ++i) {
    const std::size_t free_blocks = nu - 1 - i;
    std::vector<std::size_t> choice(free_blocks + 1, 0);
    while (true) {
      Matrix m(ring, h, n);
      const std::size_t base = (i - 1) * h;
      for (std::size_t d = 0; d < h; ++d) m.set(d, base + d, ring->one());
      for (std::size_t b = 0; b < free_blocks; ++b) {
        const Matrix& blk = a.matrices[choice[b]];
        const std::size_t col0 = (i + b) * h;
        for (std::size_t x = 0; x < h; ++x)
          for (std::size_t y = 0; y < h; ++y) m.set(x, col0 + y, blk.at(x, y));
      }
      const Matrix& tail = a_last.matrices[choice[free_blocks]];
      const std::size_t col0 = (nu - 1) * h;
      for (std::size_t x = 0; x < h; ++x)
        for (std::size_t y = 0; y < h + rho; ++y) m.set(x, col0 + y, tail.at(x, y));
      emit(std::move(m));

      // Odometer: last digit ranges over a_last, the others over a.
      std::size_t pos = free_blocks + 1;
      while (pos-- > 0) {
        const std::size_t limit = pos == free_blocks ? a_last.matrices.size() : a.matrices.size();
        if (++choice[pos] < limit) break;
        choice[pos] = 0;
      }
      if (pos == static_cast<std::size_t>(-1)) break;
    }
  }
  Matrix last(ring, h, n);
  for (std::size_t d = 0; d < h; ++d) last.set(d, n - h + d, ring->one());
  emit(std::move(last));
  return Code::from_words(std::move(words));
}

Code construct_tensor(const Code& code, const RingPtr& target) {
  const Ring& src = *code.ambient().ring;
  if (src.kind() != Ring::Kind::residue || !is_prime(src.modulus()))
    throw DomainError("construct tensor: source ring " + src.name() + " is not a prime field Z_p");
  if (target->characteristic() != src.modulus())
    throw DomainError("construct tensor: unsupported embedding of " + src.name() + " into " + target->name() +
                      " (characteristic " + std::to_string(target->characteristic()) + ")");
  if (!code.ambient().is_full()) throw DomainError("construct tensor: source ambient must be F^n");
  const Ambient amb = Ambient::full(target, code.ambient().n);
  std::vector<SubModule> words;
  for (const auto& w : code.words()) {
    Matrix g(target, 0, amb.n);
    for (const auto& row : w.basis().row_list()) {
      Row lifted;
      for (Elem e : row) lifted.push_back(target->from_integer(e.code));
      g.append_row(std::move(lifted));
    }
    words.push_back(SubModule::from_generators(amb, g));
  }
  return Code::from_words(std::move(words));
}

namespace {

RingPtr product_ring_of(const std::vector<Code>& codes) {
  if (codes.empty()) throw DomainError("product construction needs at least one code");
  std::vector<RingPtr> rings;
  for (const auto& c : codes) {
    if (c.ambient().n != codes[0].ambient().n) throw DomainError("product construction: codes differ in n");
    rings.push_back(c.ambient().ring);
  }
  return Ring::product(std::move(rings));
}

}  // namespace

ProductCode construct_product(const std::vector<Code>& codes) {
  RingPtr ring = product_ring_of(codes);
  std::vector<SubModule> words;
  std::vector<std::size_t> choice(codes.size(), 0);
  while (true) {
    std::vector<SubModule> parts;
    for (std::size_t i = 0; i < codes.size(); ++i) parts.push_back(codes[i].words()[choice[i]]);
    words.push_back(combine_factors(ring, parts));
    std::size_t pos = codes.size();
    while (pos-- > 0) {
      if (++choice[pos] < codes[pos].size()) break;
      choice[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return ProductCode{ring, codes, Code::from_words(std::move(words)), false};
}

ProductCode construct_stacked(const std::vector<Code>& codes) {
  if (codes.size() == 1) return ProductCode{codes[0].ambient().ring, codes, codes[0], true};
  RingPtr ring = product_ring_of(codes);
  std::size_t c = codes[0].size();
  for (const auto& code : codes) c = std::min(c, code.size());
  std::vector<SubModule> words;
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<SubModule> parts;
    for (const auto& code : codes) parts.push_back(code.words()[j]);
    words.push_back(combine_factors(ring, parts));
  }
  return ProductCode{ring, codes, Code::from_words(std::move(words)), true};
}

ProductDecode decode_product(const ProductCode& pc, const SubModule& received) {
  ProductDecode out;
  if (pc.factors.size() == 1) {
    out.overall = decode_min_distance(pc.code, received);
    out.components.push_back(out.overall);
    return out;
  }
  std::vector<SubModule> parts;
  bool ambiguous = false, missing = false;
  for (std::size_t i = 0; i < pc.factors.size(); ++i) {
    DecodeResult d = decode_min_distance(pc.factors[i], project_factor(received, i));
    if (d.status == DecodeStatus::ambiguous) ambiguous = true;
    if (d.status == DecodeStatus::no_codeword) missing = true;
    if (d.word) parts.push_back(*d.word);
    out.components.push_back(std::move(d));
  }
  if (ambiguous || missing) {
    out.overall.status = ambiguous ? DecodeStatus::ambiguous : DecodeStatus::no_codeword;
    return out;
  }
  SubModule joined = combine_factors(pc.ring, parts);
  const auto& words = pc.code.words();
  auto it = std::find(words.begin(), words.end(), joined);
  if (it == words.end()) {
    out.overall.status = DecodeStatus::no_codeword;
    return out;
  }
  out.overall.status = DecodeStatus::decoded;
  out.overall.index = static_cast<std::size_t>(it - words.begin());
  out.overall.word = joined;
  out.overall.distance = distance(joined, received);
  out.overall.certified = out.overall.distance <= pc.code.radius();
  return out;
}

Code transport(const Code& code, const RingPtr& target) {
  std::vector<SubModule> words;
  for (const auto& w : code.words()) words.push_back(transport(w, target));
  return Code::from_words(std::move(words));
}

}  // namespace submod
