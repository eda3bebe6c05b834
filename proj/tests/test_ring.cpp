#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "submod/ring.hpp"

using namespace submod;

namespace {

std::set<std::uint32_t> principal_ideal(const Ring& r, Elem a) {
  std::set<std::uint32_t> out;
  for (Elem x : r.elements()) out.insert(r.mul(x, a).code);
  return out;
}

// Longest strictly increasing chain of ideals from 0 up to (a).
unsigned ideal_length_oracle(const Ring& r, Elem a) {
  std::vector<std::set<std::uint32_t>> ideals;
  for (Elem x : r.elements()) {
    auto s = principal_ideal(r, x);
    if (std::find(ideals.begin(), ideals.end(), s) == ideals.end()) ideals.push_back(s);
  }
  std::map<std::set<std::uint32_t>, unsigned> memo;
  std::function<unsigned(const std::set<std::uint32_t>&)> depth = [&](const std::set<std::uint32_t>& top) {
    if (top.size() == 1) return 0u;
    if (auto it = memo.find(top); it != memo.end()) return it->second;
    unsigned best = 0;
    for (const auto& s : ideals)
      if (s.size() < top.size() && std::includes(top.begin(), top.end(), s.begin(), s.end()))
        best = std::max(best, depth(s) + 1);
    return memo[top] = best;
  };
  return depth(principal_ideal(r, a));
}

std::vector<RingPtr> sweep_rings() {
  return {Ring::residue(6),  Ring::residue(8),  Ring::residue(12), Ring::gaussian(5),
          Ring::gaussian(2), Ring::gaussian(3), Ring::parse("product(Z2,Z3)"), Ring::parse("product(Z4,Z2)")};
}

}  // namespace

TEST_CASE("classification") {
  auto z12 = Ring::residue(12);
  REQUIRE(z12->component_count() == 2);
  CHECK(z12->structure().components[0].characteristic == 4);
  CHECK(z12->structure().components[0].residue_order == 2);
  CHECK(z12->structure().components[0].chain_length == 2);
  CHECK(z12->structure().components[1].characteristic == 3);
  CHECK(z12->structure().components[1].chain_length == 1);
  CHECK(z12->length() == 3);

  auto zi5 = Ring::gaussian(5);
  CHECK(zi5->component_count() == 2);
  CHECK(zi5->structure().components[0].residue_order == 5);
  CHECK(zi5->structure().components[1].residue_order == 5);
  REQUIRE(zi5->structure().gaussian_roots.has_value());
  auto [s1, s2] = *zi5->structure().gaussian_roots;
  CHECK((s1 * s1 + 1) % 5 == 0);
  CHECK((s2 * s2 + 1) % 5 == 0);
  CHECK(zi5->length() == 2);

  auto zi2 = Ring::gaussian(2);
  REQUIRE(zi2->component_count() == 1);
  CHECK(zi2->structure().components[0].residue_order == 2);
  CHECK(zi2->structure().components[0].chain_length == 2);

  auto zi3 = Ring::gaussian(3);
  CHECK(zi3->structure().components[0].residue_order == 9);
  CHECK(zi3->structure().components[0].chain_length == 1);

  CHECK_THROWS_AS(Ring::gaussian(9), DomainError);
  CHECK_THROWS_AS(Ring::residue(1), DomainError);
  CHECK_THROWS_AS(Ring::parse("Q7"), ParseError);
}

TEST_CASE("length of Z_m is the number of prime factors") {
  CHECK(Ring::residue(2)->length() == 1);
  CHECK(Ring::residue(8)->length() == 3);
  CHECK(Ring::residue(360)->length() == 6);
}

TEST_CASE("arithmetic") {
  auto z6 = Ring::residue(6);
  CHECK(z6->mul(Elem{4}, Elem{5}) == Elem{2});
  auto zi5 = Ring::gaussian(5);
  CHECK(zi5->mul(zi5->parse_element("2+i"), zi5->parse_element("2+4i")) == zi5->zero());
  CHECK(zi5->parse_element("2-i") == zi5->parse_element("2+4i"));
  auto z2z2 = Ring::parse("product(Z2,Z2)");
  CHECK(z2z2->add(z2z2->parse_element("(1,0)"), z2z2->parse_element("(0,1)")) == z2z2->parse_element("(1,1)"));
  CHECK(z2z2->format(z2z2->one()) == "(1,1)");
}

TEST_CASE("ring axioms on small rings") {
  for (const auto& rp : sweep_rings()) {
    const Ring& r = *rp;
    CAPTURE(r.name());
    auto els = r.elements();
    for (Elem a : els)
      for (Elem b : els) {
        CHECK(r.add(a, b) == r.add(b, a));
        CHECK(r.mul(a, b) == r.mul(b, a));
        CHECK(r.sub(r.add(a, b), b) == a);
        for (Elem c : {Elem{0}, r.one(), els.back()}) {
          CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
          CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
        }
      }
  }
}

TEST_CASE("annihilators") {
  auto z6 = Ring::residue(6);
  CHECK(z6->annihilator(Elem{2}).generator == Elem{3});
  CHECK(z6->annihilator(Elem{5}).generator == Elem{0});
  auto z8 = Ring::residue(8);
  // ann(u·2^a) = (2^(3-a)).
  CHECK(z8->annihilator(Elem{6}).generator == Elem{4});
  CHECK(z8->annihilator(Elem{4}).generator == Elem{2});
  for (const auto& rp : sweep_rings()) {
    const Ring& r = *rp;
    CAPTURE(r.name());
    for (Elem a : r.elements()) {
      Elem x = r.annihilator(a).generator;
      CHECK(r.mul(x, a) == r.zero());
      for (Elem y : r.elements())
        if (r.mul(y, a) == r.zero()) CHECK(r.divides(x, y));
      CHECK(r.ideal_length(a) + r.ideal_length(x) == r.length());
    }
  }
}

TEST_CASE("divides matches exhaustive search") {
  auto z6 = Ring::residue(6);
  auto z4 = Ring::residue(4);
  CHECK(z6->divides(Elem{2}, Elem{4}));
  CHECK_FALSE(z4->divides(Elem{2}, Elem{1}));
  for (const auto& rp : sweep_rings()) {
    const Ring& r = *rp;
    CAPTURE(r.name());
    for (Elem a : r.elements())
      for (Elem b : r.elements()) {
        bool found = false;
        for (Elem x : r.elements()) found = found || r.mul(x, a) == b;
        CHECK(r.divides(a, b) == found);
        if (found) CHECK(r.mul(r.divide(b, a), a) == b);
      }
  }
}

TEST_CASE("divide picks the smallest canonical quotient") {
  auto z6 = Ring::residue(6);
  auto z4 = Ring::residue(4);
  CHECK(z6->divide(Elem{4}, Elem{2}) == Elem{2});
  CHECK(z4->divide(Elem{2}, Elem{2}) == Elem{1});
  CHECK(z6->divide(Elem{0}, Elem{3}) == Elem{0});
  CHECK_THROWS_AS(z4->divide(Elem{1}, Elem{2}), DomainError);
}

TEST_CASE("ideal gcd") {
  auto z6 = Ring::residue(6);
  std::vector<Elem> a{Elem{2}, Elem{3}};
  CHECK(z6->ideal_gcd(a).generator == Elem{1});
  auto z12 = Ring::residue(12);
  std::vector<Elem> b{Elem{4}, Elem{6}};
  CHECK(z12->ideal_gcd(b).generator == Elem{2});
  auto zi5 = Ring::gaussian(5);
  std::vector<Elem> c{zi5->parse_element("2+i"), zi5->parse_element("2-i")};
  CHECK(zi5->is_unit(zi5->ideal_gcd(c).generator));
  CHECK(zi5->ideal_gcd(c).generator == zi5->one());
  CHECK_THROWS_AS(z6->ideal_gcd({}), DomainError);
}

TEST_CASE("ideal lengths") {
  auto z6 = Ring::residue(6);
  CHECK(z6->ideal_length(Elem{2}) == 1);
  CHECK(z6->ideal_length(Elem{5}) == 2);
  CHECK(z6->ideal_length(Elem{3}) == 1);
  auto z4 = Ring::residue(4);
  CHECK(z4->ideal_length(Elem{1}) == 2);
  CHECK(z4->ideal_length(Elem{2}) == 1);
  auto zi5 = Ring::gaussian(5);
  CHECK(zi5->ideal_length(zi5->parse_element("2+i")) == 1);
  for (const auto& rp : sweep_rings()) {
    const Ring& r = *rp;
    CAPTURE(r.name());
    for (Elem a : r.elements()) CHECK(r.ideal_length(a) == ideal_length_oracle(r, a));
  }
}

TEST_CASE("canonical generators and residues") {
  for (const auto& rp : sweep_rings()) {
    const Ring& r = *rp;
    CAPTURE(r.name());
    for (Elem a : r.elements()) {
      Normalization n = r.normalize(a);
      CHECK(r.is_unit(n.unit));
      CHECK(r.mul(n.unit, a) == n.generator);
      for (Elem b : r.elements())
        CHECK((principal_ideal(r, a) == principal_ideal(r, b)) == (n.generator == r.canonical_generator(b)));
      // Residues modulo (a): one per coset, and reduce() is consistent.
      auto reps = r.residues(a);
      CHECK(reps.size() * principal_ideal(r, a).size() == r.size());
      for (Elem b : r.elements()) {
        Reduction red = r.reduce(b, a);
        CHECK(r.add(red.rep, r.mul(red.quotient, a)) == b);
        CHECK(std::find(reps.begin(), reps.end(), red.rep) != reps.end());
      }
    }
  }
  auto z12 = Ring::residue(12);
  CHECK(z12->canonical_generator(Elem{10}) == Elem{2});
  CHECK(z12->canonical_generator(Elem{0}) == Elem{0});
  CHECK(z12->residue_of(Elem{11}, Elem{4}) == Elem{3});
}

TEST_CASE("stab2 identities, exhaustive") {
  for (const auto& rp : sweep_rings()) {
    const Ring& r = *rp;
    CAPTURE(r.name());
    for (Elem a : r.elements())
      for (Elem b : r.elements()) {
        Transform2 t = r.stab2(a, b);
        CAPTURE(a.code);
        CAPTURE(b.code);
        CHECK(r.add(r.mul(t.x, a), r.mul(t.y, b)) == t.g);
        CHECK(r.add(r.mul(t.z, a), r.mul(t.t, b)) == r.zero());
        CHECK(r.sub(r.mul(t.x, t.t), r.mul(t.y, t.z)) == r.one());
        std::array<Elem, 2> pair{a, b};
        CHECK(r.canonical_generator(t.g) == r.ideal_gcd(pair).generator);
        CHECK(r.divides(t.g, a));
        CHECK(r.divides(t.g, b));
      }
  }
}

TEST_CASE("stab2 worked example in Z6") {
  auto z6 = Ring::residue(6);
  Transform2 t = z6->stab2(Elem{2}, Elem{3});
  Elem g = z6->add(z6->mul(t.x, Elem{2}), z6->mul(t.y, Elem{3}));
  CHECK((g == Elem{1} || g == Elem{5}));
  Transform2 u = z6->stab2(Elem{4}, Elem{1});
  CHECK(z6->is_unit(u.g));
}

TEST_CASE("idempotents") {
  auto z6 = Ring::residue(6);
  auto e = z6->idempotents();
  REQUIRE(e.size() == 2);
  CHECK(e[0] == Elem{3});
  CHECK(e[1] == Elem{4});
  for (const auto& rp : sweep_rings()) {
    const Ring& r = *rp;
    CAPTURE(r.name());
    auto es = r.idempotents();
    Elem sum = r.zero();
    for (std::size_t i = 0; i < es.size(); ++i) {
      sum = r.add(sum, es[i]);
      CHECK(r.mul(es[i], es[i]) == es[i]);
      for (std::size_t j = 0; j < es.size(); ++j)
        if (i != j) CHECK(r.mul(es[i], es[j]) == r.zero());
    }
    CHECK(sum == r.one());
  }
  auto z2z2 = Ring::parse("product(Z2,Z2)");
  auto f = z2z2->idempotents();
  CHECK(z2z2->format(f[0]) == "(1,0)");
  CHECK(z2z2->format(f[1]) == "(0,1)");
  CHECK(Ring::residue(4)->idempotents() == std::vector<Elem>{Elem{1}});
}

TEST_CASE("component round trip and homomorphism") {
  for (const auto& rp : sweep_rings()) {
    const Ring& r = *rp;
    CAPTURE(r.name());
    for (Elem a : r.elements()) {
      auto parts = r.to_components(a);
      CHECK(r.from_components(parts) == a);
      for (Elem b : {r.one(), r.elements().back()}) {
        auto pb = r.to_components(b);
        auto pab = r.to_components(r.mul(a, b));
        for (std::size_t i = 0; i < parts.size(); ++i)
          CHECK(pab[i] == r.component_ring(i)->mul(parts[i], pb[i]));
      }
    }
  }
}

TEST_CASE("enumeration") {
  CHECK(Ring::residue(4)->elements().size() == 4);
  CHECK(Ring::parse("product(Z2,Z2)")->elements().size() == 4);
  CHECK(Ring::gaussian(3)->elements().size() == 9);
  CHECK_THROWS_AS(Ring::residue(20000)->elements(), DomainError);
  CHECK(Ring::residue(20000)->elements(30000).size() == 20000);
}

TEST_CASE("literals round trip") {
  auto zi7 = Ring::gaussian(7);
  for (Elem a : zi7->elements()) CHECK(zi7->parse_element(zi7->format(a)) == a);
  CHECK(zi7->parse_element("i") == Elem{7});
  CHECK(zi7->parse_element("3i") == Elem{21});
  CHECK(zi7->parse_element("-1") == Elem{6});
  auto p = Ring::parse("product(Z4,Zi3)");
  CHECK(p->name() == "product(Z4,Zi3)");
  for (Elem a : p->elements()) CHECK(p->parse_element(p->format(a)) == a);
  CHECK_THROWS_AS(zi7->parse_element("2+x"), ParseError);
  CHECK_THROWS_AS(p->parse_element("(1,2,3)"), ParseError);
}

TEST_CASE("chain data") {
  auto z8 = Ring::residue(8);
  auto c = z8->chain();
  REQUIRE(c.has_value());
  CHECK(c->residue_order == 2);
  CHECK(c->chain_length == 3);
  CHECK(c->uniformizer == Elem{2});
  auto zi2 = Ring::gaussian(2);
  auto d = zi2->chain();
  REQUIRE(d.has_value());
  CHECK(zi2->ideal_length(d->uniformizer) == 1);
  CHECK(zi2->mul(d->uniformizer, d->uniformizer) == zi2->zero());
  CHECK_FALSE(Ring::residue(6)->chain().has_value());
}
