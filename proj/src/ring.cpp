#include "submod/ring.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

namespace submod {

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw DomainError("element is not invertible");
  std::int64_t res = old_s % static_cast<std::int64_t>(m);
  if (res < 0) res += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(res);
}

unsigned big_omega(std::uint64_t n) {
  unsigned count = 0;
  for (auto [p, k] : factorize(n)) count += k;
  return count;
}

std::uint64_t reduce_signed(std::int64_t z, std::uint64_t m) {
  std::int64_t r = z % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(s.substr(start)));
  return parts;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return negative ? -value : value;
}

}  // namespace

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw DomainError("integer overflow in power");
    r *= base;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k > 0) out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

unsigned Structure::length() const {
  unsigned total = 0;
  for (const auto& c : components) total += c.chain_length;
  return total;
}

void require_same_ring(const Ring& a, const Ring& b, std::string_view what) {
  if (!a.same_as(b))
    throw DomainError(std::string(what) + ": ring mismatch (" + a.name() + " vs " + b.name() + ")");
}

// ---------------------------------------------------------------------------
// Construction

RingPtr Ring::residue(std::uint64_t m) {
  if (m < 2) throw DomainError("Z<m> requires m >= 2");
  if (m > std::numeric_limits<std::uint32_t>::max()) throw DomainError("modulus too large");
  std::shared_ptr<Ring> r(new Ring());
  r->kind_ = Kind::residue;
  r->modulus_ = m;
  r->size_ = m;
  r->name_ = "Z" + std::to_string(m);
  r->factorization_ = factorize(m);
  for (auto [p, k] : r->factorization_)
    r->structure_.components.push_back({"Z" + std::to_string(ipow(p, k)), ipow(p, k), p, k});
  return r;
}

RingPtr Ring::gaussian(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("Zi<p> requires p prime, got " + std::to_string(p));
  if (p > 46337) throw DomainError("Zi<p>: p too large");
  std::shared_ptr<Ring> r(new Ring());
  r->kind_ = Kind::gaussian;
  r->modulus_ = p;
  r->size_ = p * p;
  r->name_ = "Zi" + std::to_string(p);
  if (p == 2) {
    r->gauss_mode_ = GaussMode::ramified;
    r->structure_.components.push_back({"Zi2", 2, 2, 2});
  } else if (p % 4 == 3) {
    r->gauss_mode_ = GaussMode::field;
    r->structure_.components.push_back({r->name_, p, p * p, 1});
  } else {
    r->gauss_mode_ = GaussMode::split;
    std::uint64_t s = 1;
    while ((s * s + 1) % p != 0) ++s;
    r->root_ = s;
    r->inv2_ = mod_inverse(2, p);
    r->inv2root_ = mod_inverse((2 * s) % p, p);
    r->split_ = Ring::product({Ring::residue(p), Ring::residue(p)});
    r->structure_.components = r->split_->structure().components;
    r->structure_.gaussian_roots = std::make_pair(s, p - s);
  }
  return r;
}

RingPtr Ring::product(std::vector<RingPtr> factors) {
  if (factors.empty()) throw DomainError("product() requires at least one factor");
  std::shared_ptr<Ring> r(new Ring());
  r->kind_ = Kind::product;
  r->factors_ = std::move(factors);
  r->size_ = 1;
  r->name_ = "product(";
  for (std::size_t i = 0; i < r->factors_.size(); ++i) {
    if (!r->factors_[i]) throw DomainError("product(): null factor");
    if (r->size_ > std::numeric_limits<std::uint32_t>::max() / r->factors_[i]->size())
      throw DomainError("product ring too large");
    r->size_ *= r->factors_[i]->size();
    r->name_ += (i ? "," : "") + r->factors_[i]->name();
  }
  r->name_ += ")";
  r->strides_.assign(r->factors_.size(), 1);
  for (std::size_t i = r->factors_.size(); i-- > 1;)
    r->strides_[i - 1] = r->strides_[i] * r->factors_[i]->size();
  std::size_t offset = 0;
  for (const auto& f : r->factors_) {
    r->component_offsets_.push_back(offset);
    offset += f->component_count();
    for (const auto& c : f->structure().components) r->structure_.components.push_back(c);
  }
  return r;
}

RingPtr Ring::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.starts_with("product(") && s.ends_with(")")) {
    std::string_view inner = s.substr(8, s.size() - 9);
    std::vector<RingPtr> factors;
    for (auto part : split_top_level(inner)) factors.push_back(parse(part));
    return product(std::move(factors));
  }
  auto number = [&](std::string_view digits) -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
      throw ParseError("invalid ring spec '" + std::string(text) + "'");
    return v;
  };
  if (s.starts_with("Zi")) return gaussian(number(s.substr(2)));
  if (s.starts_with("Z")) return residue(number(s.substr(1)));
  throw ParseError("invalid ring spec '" + std::string(text) + "'");
}

std::uint64_t Ring::characteristic() const {
  switch (kind_) {
    case Kind::residue: return modulus_;
    case Kind::gaussian: return modulus_;
    case Kind::product: {
      std::uint64_t c = 1;
      for (const auto& f : factors_) c = std::lcm(c, f->characteristic());
      return c;
    }
  }
  return 0;
}

Elem Ring::checked(Elem a) const {
  if (a.code >= size_) throw DomainError("element code out of range for " + name_);
  return a;
}

// ---------------------------------------------------------------------------
// Product and split helpers

std::vector<Elem> Ring::split_product(Elem a) const {
  std::vector<Elem> parts(factors_.size());
  std::uint64_t c = a.code;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    parts[i] = Elem{static_cast<std::uint32_t>(c / strides_[i])};
    c %= strides_[i];
  }
  return parts;
}

Elem Ring::join_product(std::span<const Elem> parts) const {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) c += parts[i].code * strides_[i];
  return Elem{static_cast<std::uint32_t>(c)};
}

Elem Ring::factor_part(Elem a, std::size_t i) const {
  if (kind_ != Kind::product) throw DomainError(name_ + " is not a product ring");
  return split_product(a).at(i);
}

Elem Ring::from_factors(std::span<const Elem> parts) const {
  if (kind_ != Kind::product || parts.size() != factors_.size())
    throw DomainError("from_factors: arity mismatch for " + name_);
  return join_product(parts);
}

Elem Ring::to_split(Elem a) const {
  const std::uint64_t p = modulus_;
  std::uint64_t re = a.code % p, im = a.code / p;
  std::uint64_t x = (re + root_ * im) % p;
  std::uint64_t y = (re + (p - root_) * im) % p;
  return Elem{static_cast<std::uint32_t>(x * p + y)};
}

Elem Ring::from_split(Elem a) const {
  const std::uint64_t p = modulus_;
  std::uint64_t x = a.code / p, y = a.code % p;
  std::uint64_t re = ((x + y) % p) * inv2_ % p;
  std::uint64_t im = ((x + p - y) % p) * inv2root_ % p;
  return Elem{static_cast<std::uint32_t>(re + im * p)};
}

// ---------------------------------------------------------------------------
// Arithmetic

Elem Ring::one() const { return from_integer(1); }

Elem Ring::from_integer(std::int64_t z) const {
  switch (kind_) {
    case Kind::residue:
    case Kind::gaussian: return Elem{static_cast<std::uint32_t>(reduce_signed(z, modulus_))};
    case Kind::product: {
      std::vector<Elem> parts;
      for (const auto& f : factors_) parts.push_back(f->from_integer(z));
      return join_product(parts);
    }
  }
  return {};
}

Elem Ring::add(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::residue: return Elem{static_cast<std::uint32_t>((std::uint64_t{a.code} + b.code) % modulus_)};
    case Kind::gaussian: {
      const std::uint64_t p = modulus_;
      std::uint64_t re = (a.code % p + b.code % p) % p, im = (a.code / p + b.code / p) % p;
      return Elem{static_cast<std::uint32_t>(re + im * p)};
    }
    case Kind::product: {
      auto x = split_product(a), y = split_product(b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->add(x[i], y[i]);
      return join_product(x);
    }
  }
  return {};
}

Elem Ring::neg(Elem a) const {
  switch (kind_) {
    case Kind::residue: return Elem{static_cast<std::uint32_t>((modulus_ - a.code % modulus_) % modulus_)};
    case Kind::gaussian: {
      const std::uint64_t p = modulus_;
      std::uint64_t re = (p - a.code % p) % p, im = (p - a.code / p) % p;
      return Elem{static_cast<std::uint32_t>(re + im * p)};
    }
    case Kind::product: {
      auto x = split_product(a);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->neg(x[i]);
      return join_product(x);
    }
  }
  return {};
}

Elem Ring::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Ring::mul(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::residue: return Elem{static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % modulus_)};
    case Kind::gaussian: {
      const std::uint64_t p = modulus_;
      std::uint64_t ar = a.code % p, ai = a.code / p, br = b.code % p, bi = b.code / p;
      std::uint64_t re = (ar * br + (p - ai * bi % p)) % p;
      std::uint64_t im = (ar * bi + ai * br) % p;
      return Elem{static_cast<std::uint32_t>(re + im * p)};
    }
    case Kind::product: {
      auto x = split_product(a), y = split_product(b);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->mul(x[i], y[i]);
      return join_product(x);
    }
  }
  return {};
}

bool Ring::is_unit(Elem a) const {
  switch (kind_) {
    case Kind::residue: return std::gcd(std::uint64_t{a.code}, modulus_) == 1;
    case Kind::gaussian:
      if (gauss_mode_ == GaussMode::split) return split_->is_unit(to_split(a));
      return valuation(a) == 0;
    case Kind::product: {
      auto x = split_product(a);
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!factors_[i]->is_unit(x[i])) return false;
      return true;
    }
  }
  return false;
}

Elem Ring::inverse(Elem a) const {
  switch (kind_) {
    case Kind::residue: return Elem{static_cast<std::uint32_t>(mod_inverse(a.code, modulus_))};
    case Kind::gaussian: {
      if (gauss_mode_ == GaussMode::split) return from_split(split_->inverse(to_split(a)));
      if (valuation(a) != 0) throw DomainError("element is not invertible");
      const std::uint64_t p = modulus_;
      std::uint64_t re = a.code % p, im = a.code / p;
      std::uint64_t norm_inv = mod_inverse((re * re + im * im) % p, p);
      return Elem{static_cast<std::uint32_t>(re * norm_inv % p + ((p - im) % p) * norm_inv % p * p)};
    }
    case Kind::product: {
      auto x = split_product(a);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->inverse(x[i]);
      return join_product(x);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Local chain helpers (Z_2[i] with uniformizer 1+i, and the fields Z_p[i])

unsigned Ring::local_e() const { return gauss_mode_ == GaussMode::ramified ? 2 : 1; }

unsigned Ring::valuation(Elem a) const {
  if (a.code == 0) return local_e();
  if (gauss_mode_ == GaussMode::ramified && a.code == 3) return 1;
  return 0;
}

Elem Ring::unit_part(Elem a) const {
  if (a.code == 0) return Elem{1};
  if (gauss_mode_ == GaussMode::ramified && a.code == 3) return Elem{1};
  return a;
}

Elem Ring::pi_power(unsigned k) const {
  if (k >= local_e()) return Elem{0};
  if (k == 0) return Elem{1};
  return Elem{3};  // 1+i
}

// ---------------------------------------------------------------------------
// Ideal structure

Normalization Ring::normalize(Elem a) const {
  switch (kind_) {
    case Kind::residue: {
      const std::uint64_t m = modulus_;
      if (a.code == 0) return {Elem{0}, Elem{1}};
      std::uint64_t d = std::gcd(std::uint64_t{a.code}, m);
      std::uint64_t md = m / d;
      std::uint64_t u = mod_inverse((a.code / d) % md, md);
      while (std::gcd(u, m) != 1) u += md;
      return {Elem{static_cast<std::uint32_t>(d % m)}, Elem{static_cast<std::uint32_t>(u % m)}};
    }
    case Kind::gaussian: {
      if (gauss_mode_ == GaussMode::split) {
        auto n = split_->normalize(to_split(a));
        return {from_split(n.generator), from_split(n.unit)};
      }
      return {pi_power(valuation(a)), inverse(unit_part(a))};
    }
    case Kind::product: {
      auto x = split_product(a);
      std::vector<Elem> g(x.size()), u(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto n = factors_[i]->normalize(x[i]);
        g[i] = n.generator;
        u[i] = n.unit;
      }
      return {join_product(g), join_product(u)};
    }
  }
  return {};
}

IdealHandle Ring::ideal(Elem a) const { return {canonical_generator(a), ideal_length(a)}; }

IdealHandle Ring::annihilator(Elem a) const {
  Elem gen{};
  switch (kind_) {
    case Kind::residue: {
      std::uint64_t d = std::gcd(std::uint64_t{a.code}, modulus_);
      gen = Elem{static_cast<std::uint32_t>((modulus_ / d) % modulus_)};
      break;
    }
    case Kind::gaussian:
      if (gauss_mode_ == GaussMode::split)
        gen = from_split(split_->annihilator(to_split(a)).generator);
      else
        gen = pi_power(local_e() - valuation(a));
      break;
    case Kind::product: {
      auto x = split_product(a);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->annihilator(x[i]).generator;
      gen = join_product(x);
      break;
    }
  }
  return {gen, ideal_length(gen)};
}

bool Ring::divides(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::residue: {
      std::uint64_t da = std::gcd(std::uint64_t{a.code}, modulus_);
      std::uint64_t db = std::gcd(std::uint64_t{b.code}, modulus_);
      return db % da == 0;
    }
    case Kind::gaussian:
      if (gauss_mode_ == GaussMode::split) return split_->divides(to_split(a), to_split(b));
      return valuation(a) <= valuation(b);
    case Kind::product: {
      auto x = split_product(a), y = split_product(b);
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!factors_[i]->divides(x[i], y[i])) return false;
      return true;
    }
  }
  return false;
}

Elem Ring::divide(Elem b, Elem g) const {
  switch (kind_) {
    case Kind::residue: {
      const std::uint64_t m = modulus_;
      std::uint64_t d = std::gcd(std::uint64_t{g.code}, m);
      if (b.code % d != 0) throw DomainError(format(g) + " does not divide " + format(b) + " in " + name_);
      std::uint64_t md = m / d;
      std::uint64_t h = (std::uint64_t{b.code} / d % md) * mod_inverse((g.code / d) % md, md) % md;
      return Elem{static_cast<std::uint32_t>(h)};
    }
    case Kind::gaussian: {
      if (gauss_mode_ == GaussMode::split) return from_split(split_->divide(to_split(b), to_split(g)));
      unsigned vb = valuation(b), vg = valuation(g);
      if (vg > vb) throw DomainError(format(g) + " does not divide " + format(b) + " in " + name_);
      if (b.code == 0) return Elem{0};
      Elem h = mul(mul(unit_part(b), inverse(unit_part(g))), pi_power(vb - vg));
      return residue_of(h, pi_power(local_e() - vg));
    }
    case Kind::product: {
      auto x = split_product(b), y = split_product(g);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->divide(x[i], y[i]);
      return join_product(x);
    }
  }
  return {};
}

IdealHandle Ring::ideal_gcd(std::span<const Elem> elems) const {
  if (elems.empty()) throw DomainError("ideal_gcd of an empty list");
  auto gcd2 = [this](Elem a, Elem b) -> Elem {
    switch (kind_) {
      case Kind::residue: {
        std::uint64_t d = std::gcd(std::gcd(std::uint64_t{a.code}, std::uint64_t{b.code}), modulus_);
        return Elem{static_cast<std::uint32_t>(d % modulus_)};
      }
      case Kind::gaussian:
        if (gauss_mode_ == GaussMode::split) {
          std::array<Elem, 2> pair{to_split(a), to_split(b)};
          return from_split(split_->ideal_gcd(pair).generator);
        }
        return pi_power(std::min(valuation(a), valuation(b)));
      case Kind::product: {
        auto x = split_product(a), y = split_product(b);
        for (std::size_t i = 0; i < x.size(); ++i) {
          std::array<Elem, 2> pair{x[i], y[i]};
          x[i] = factors_[i]->ideal_gcd(pair).generator;
        }
        return join_product(x);
      }
    }
    return {};
  };
  Elem g = canonical_generator(elems[0]);
  for (std::size_t i = 1; i < elems.size(); ++i) g = gcd2(g, elems[i]);
  return {g, ideal_length(g)};
}

unsigned Ring::ideal_length(Elem a) const {
  switch (kind_) {
    case Kind::residue: return big_omega(modulus_ / std::gcd(std::uint64_t{a.code}, modulus_));
    case Kind::gaussian:
      if (gauss_mode_ == GaussMode::split) return split_->ideal_length(to_split(a));
      return local_e() - valuation(a);
    case Kind::product: {
      auto x = split_product(a);
      unsigned total = 0;
      for (std::size_t i = 0; i < x.size(); ++i) total += factors_[i]->ideal_length(x[i]);
      return total;
    }
  }
  return 0;
}

Elem Ring::residue_of(Elem a, Elem g) const {
  switch (kind_) {
    case Kind::residue: {
      std::uint64_t d = std::gcd(std::uint64_t{g.code}, modulus_);
      return Elem{static_cast<std::uint32_t>(a.code % d)};
    }
    case Kind::gaussian: {
      if (gauss_mode_ == GaussMode::split) return from_split(split_->residue_of(to_split(a), to_split(g)));
      unsigned w = valuation(g);
      if (w == 0) return Elem{0};
      if (w >= local_e()) return a;
      for (std::uint32_t c = 0; c < size_; ++c)
        if (valuation(sub(Elem{c}, a)) >= w) return Elem{c};
      return a;
    }
    case Kind::product: {
      auto x = split_product(a), y = split_product(g);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = factors_[i]->residue_of(x[i], y[i]);
      return join_product(x);
    }
  }
  return {};
}

Reduction Ring::reduce(Elem a, Elem g) const {
  Elem rep = residue_of(a, g);
  return {rep, divide(sub(a, rep), g)};
}

Transform2 Ring::stab2(Elem a, Elem b) const {
  // b in (a): plain elimination keeps the first operand as the pivot.
  if (divides(a, b)) return {one(), zero(), neg(divide(b, a)), one(), a};
  if (is_zero(a)) return {zero(), one(), neg(one()), zero(), b};
  switch (kind_) {
    case Kind::residue: {
      const std::uint64_t m = modulus_;
      const std::uint64_t alpha = a.code, beta = b.code;
      const std::uint64_t eta = std::gcd(std::gcd(alpha, beta), m);
      const std::uint64_t alpha_red = alpha / eta;
      std::uint64_t gamma = m / eta;
      for (std::uint64_t g = std::gcd(gamma, alpha_red); g != 1; g = std::gcd(gamma, alpha_red)) gamma /= g;
      Elem c{static_cast<std::uint32_t>(gamma % m)};
      Elem g = add(a, mul(c, b));
      Elem h = divide(b, g);
      return {one(), c, neg(h), sub(one(), mul(c, h)), g};
    }
    case Kind::gaussian: {
      if (gauss_mode_ == GaussMode::split) {
        auto t = split_->stab2(to_split(a), to_split(b));
        return {from_split(t.x), from_split(t.y), from_split(t.z), from_split(t.t), from_split(t.g)};
      }
      // Chain ring: either a | b (handled above) or b | a.
      return {zero(), one(), neg(one()), divide(a, b), b};
    }
    case Kind::product: {
      auto x = split_product(a), y = split_product(b);
      std::vector<Elem> tx(x.size()), ty(x.size()), tz(x.size()), tt(x.size()), tg(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto t = factors_[i]->stab2(x[i], y[i]);
        tx[i] = t.x;
        ty[i] = t.y;
        tz[i] = t.z;
        tt[i] = t.t;
        tg[i] = t.g;
      }
      return {join_product(tx), join_product(ty), join_product(tz), join_product(tt), join_product(tg)};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Components

RingPtr Ring::component_ring(std::size_t i) const {
  if (i >= component_count()) throw DomainError("component index out of range");
  switch (kind_) {
    case Kind::residue:
      if (factorization_.size() == 1) return shared_from_this();
      return Ring::residue(ipow(factorization_[i].first, factorization_[i].second));
    case Kind::gaussian:
      if (gauss_mode_ == GaussMode::split) return split_->component_ring(i);
      return shared_from_this();
    case Kind::product:
      for (std::size_t f = factors_.size(); f-- > 0;)
        if (i >= component_offsets_[f]) return factors_[f]->component_ring(i - component_offsets_[f]);
  }
  return nullptr;
}

std::vector<Elem> Ring::to_components(Elem a) const {
  switch (kind_) {
    case Kind::residue: {
      std::vector<Elem> out;
      for (auto [p, k] : factorization_)
        out.push_back(Elem{static_cast<std::uint32_t>(a.code % ipow(p, k))});
      return out;
    }
    case Kind::gaussian:
      if (gauss_mode_ == GaussMode::split) return split_->to_components(to_split(a));
      return {a};
    case Kind::product: {
      std::vector<Elem> out;
      auto x = split_product(a);
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto part = factors_[i]->to_components(x[i]);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
  }
  return {};
}

Elem Ring::from_components(std::span<const Elem> parts) const {
  if (parts.size() != component_count()) throw DomainError("from_components: arity mismatch");
  switch (kind_) {
    case Kind::residue: {
      // CRT: x = sum parts_i * (m/q_i) * inv(m/q_i mod q_i).
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        std::uint64_t qi = ipow(factorization_[i].first, factorization_[i].second);
        std::uint64_t rest = modulus_ / qi;
        std::uint64_t coeff = rest * mod_inverse(rest % qi, qi) % modulus_;
        x = (x + std::uint64_t{parts[i].code} * coeff % modulus_) % modulus_;
      }
      return Elem{static_cast<std::uint32_t>(x)};
    }
    case Kind::gaussian:
      if (gauss_mode_ == GaussMode::split) return from_split(split_->from_components(parts));
      return parts[0];
    case Kind::product: {
      std::vector<Elem> x;
      for (std::size_t i = 0; i < factors_.size(); ++i)
        x.push_back(factors_[i]->from_components(parts.subspan(component_offsets_[i], factors_[i]->component_count())));
      return join_product(x);
    }
  }
  return {};
}

std::vector<Elem> Ring::idempotents() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < component_count(); ++i) {
    std::vector<Elem> parts(component_count(), Elem{0});
    parts[i] = component_ring(i)->one();
    out.push_back(from_components(parts));
  }
  return out;
}

std::optional<ChainInfo> Ring::chain() const {
  if (!structure_.is_chain()) return std::nullopt;
  ChainInfo info;
  const auto& c = structure_.components[0];
  info.residue_order = c.residue_order;
  info.chain_length = c.chain_length;
  switch (kind_) {
    case Kind::residue: {
      const std::uint64_t p = factorization_[0].first;
      info.uniformizer = Elem{static_cast<std::uint32_t>(p % modulus_)};
      info.residue_field = Ring::residue(p);
      for (std::uint32_t r = 0; r < p; ++r) info.section.push_back(Elem{r});
      return info;
    }
    case Kind::gaussian:
      if (gauss_mode_ == GaussMode::ramified) {
        info.uniformizer = Elem{3};
        info.residue_field = Ring::residue(2);
        info.section = {Elem{0}, Elem{1}};
      } else {
        info.uniformizer = Elem{0};
        info.residue_field = shared_from_this();
        for (std::uint32_t r = 0; r < size_; ++r) info.section.push_back(Elem{r});
      }
      return info;
    case Kind::product: {
      // Exactly one factor; codes coincide with that factor's codes.
      auto inner = factors_[0]->chain();
      inner->residue_order = info.residue_order;
      return inner;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Elem> Ring::elements(std::uint64_t cap) const {
  if (size_ > cap)
    throw DomainError(name_ + " has " + std::to_string(size_) + " elements, above the enumeration cap " +
                      std::to_string(cap));
  std::vector<Elem> out(size_);
  for (std::uint32_t c = 0; c < size_; ++c) out[c] = Elem{c};
  return out;
}

std::vector<Elem> Ring::ideal_elements(Elem g) const {
  if (kind_ == Kind::residue) {
    std::uint64_t d = std::gcd(std::uint64_t{g.code}, modulus_);
    std::vector<Elem> out;
    for (std::uint64_t v = 0; v < modulus_; v += d) out.push_back(Elem{static_cast<std::uint32_t>(v)});
    return out;
  }
  std::set<Elem> seen;
  for (Elem r : elements(std::numeric_limits<std::uint32_t>::max())) seen.insert(mul(r, g));
  return {seen.begin(), seen.end()};
}

std::vector<Elem> Ring::residues(Elem g) const {
  if (kind_ == Kind::residue) {
    std::uint64_t d = std::gcd(std::uint64_t{g.code}, modulus_);
    std::vector<Elem> out;
    for (std::uint64_t v = 0; v < d; ++v) out.push_back(Elem{static_cast<std::uint32_t>(v)});
    return out;
  }
  std::set<Elem> seen;
  for (Elem r : elements(std::numeric_limits<std::uint32_t>::max())) seen.insert(residue_of(r, g));
  return {seen.begin(), seen.end()};
}

std::vector<Elem> Ring::units() const {
  std::vector<Elem> out;
  for (std::uint32_t c = 0; c < size_; ++c)
    if (is_unit(Elem{c})) out.push_back(Elem{c});
  return out;
}

// ---------------------------------------------------------------------------
// Literals

std::string Ring::format(Elem a) const {
  switch (kind_) {
    case Kind::residue: return std::to_string(a.code);
    case Kind::gaussian: {
      const std::uint64_t p = modulus_;
      std::uint64_t re = a.code % p, im = a.code / p;
      if (im == 0) return std::to_string(re);
      std::string imag = (im == 1 ? "" : std::to_string(im)) + "i";
      if (re == 0) return imag;
      return std::to_string(re) + "+" + imag;
    }
    case Kind::product: {
      auto x = split_product(a);
      std::string out = "(";
      for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + factors_[i]->format(x[i]);
      return out + ")";
    }
  }
  return {};
}

Elem Ring::parse_element(std::string_view text) const {
  std::string_view s = trim(text);
  auto fail = [&]() -> ParseError {
    return ParseError("invalid element literal '" + std::string(text) + "' for ring " + name_);
  };
  if (s.empty()) throw fail();
  if (s.front() == '(') {
    if (kind_ != Kind::product || s.back() != ')') throw fail();
    auto parts = split_top_level(s.substr(1, s.size() - 2));
    if (parts.size() != factors_.size()) throw fail();
    std::vector<Elem> x;
    for (std::size_t i = 0; i < parts.size(); ++i) x.push_back(factors_[i]->parse_element(parts[i]));
    return join_product(x);
  }
  if (auto z = parse_int(s)) return from_integer(*z);
  if (kind_ != Kind::gaussian) throw fail();
  // Signed terms, each an integer or an optional integer followed by i.
  std::int64_t re = 0, im = 0;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    if (k < s.size() && s[k] != '+' && s[k] != '-') continue;
    std::string_view term = trim(s.substr(start, k - start));
    start = k;
    if (term.empty()) throw fail();
    if (term.back() == 'i') {
      std::string_view coeff = trim(term.substr(0, term.size() - 1));
      if (coeff.empty() || coeff == "+") {
        im += 1;
      } else if (coeff == "-") {
        im -= 1;
      } else if (auto v = parse_int(coeff)) {
        im += *v;
      } else {
        throw fail();
      }
    } else if (auto v = parse_int(term)) {
      re += *v;
    } else {
      throw fail();
    }
  }
  const std::uint64_t p = modulus_;
  return Elem{static_cast<std::uint32_t>(reduce_signed(re, p) + reduce_signed(im, p) * p)};
}

}  // namespace submod
