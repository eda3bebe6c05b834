#include "doctest.h"
#include "submod/bounds.hpp"
#include "submod/channel.hpp"
#include "submod/codes.hpp"

using namespace submod;

namespace {

SubModule module_of(const RingPtr& r, std::size_t n, std::initializer_list<std::initializer_list<long long>> rows) {
  return SubModule::from_generators(Ambient::full(r, n), Matrix::from_ints(r, n, rows));
}

unsigned brute_min_distance(const Code& c) {
  unsigned best = ~0u;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (i != j) best = std::min(best, distance(c.words()[i], c.words()[j]));
  return best;
}

Code remark_code() {
  auto z5 = Ring::residue(5);
  return Code::from_words({module_of(z5, 4, {{1, 0, 1, 0}, {0, 1, 0, 1}}), module_of(z5, 4, {{1, 0, 2, 1}, {0, 1, 1, 0}})});
}

}  // namespace

TEST_CASE("code invariants") {
  auto z2 = Ring::residue(2);
  auto a = module_of(z2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  auto b = module_of(z2, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  auto c = Code::from_words({a, b});
  CHECK(c.min_distance() == 4);
  CHECK_THROWS_AS(Code::from_words({a}), DomainError);
  CHECK_THROWS_AS(Code::from_words({a, a}), DomainError);
  CHECK_THROWS_AS(Code::from_words({a, module_of(z2, 4, {{1, 1, 1, 1}})}), DomainError);
}

TEST_CASE("decoding") {
  auto c = remark_code();
  auto d = decode_min_distance(c, c.words()[1]);
  CHECK(d.status == DecodeStatus::decoded);
  CHECK(d.index == 1u);
  CHECK(d.distance == 0);
  CHECK(d.certified);
  auto z5 = Ring::residue(5);
  // Equidistant from both words.
  auto mid = SubModule::zero(c.ambient());
  CHECK(decode_min_distance(c, mid).status == DecodeStatus::ambiguous);
}

TEST_CASE("tensor construction and decoding") {
  auto c = remark_code();
  CHECK(c.min_distance() == 4);
  auto zi5 = Ring::gaussian(5);
  auto t = construct_tensor(c, zi5);
  CHECK(t.size() == 2);
  CHECK(t.constant_length() == 4);
  CHECK(t.min_distance() == 8);
  Matrix g(zi5, 4, {Row{zi5->parse_element("i+2"), Elem{0}, zi5->parse_element("i+2"), Elem{0}},
                    Row{Elem{0}, zi5->one(), Elem{0}, zi5->parse_element("i-1")}});
  auto n = SubModule::from_generators(t.ambient(), g);
  auto d = decode_min_distance(t, n);
  CHECK(d.status == DecodeStatus::decoded);
  CHECK(d.index == 0u);
  CHECK(d.distance == 3);
  CHECK(d.certified);
  // N ∩ Z_5^4 = 0: no nonzero element of N has only real entries.
  std::size_t real_points = 0;
  for (const auto& v : elements(n))
    if (std::all_of(v.begin(), v.end(), [](Elem e) { return e.code < 5; })) ++real_points;
  CHECK(real_points == 1);
  CHECK_THROWS_AS(construct_tensor(c, Ring::residue(4)), DomainError);
  auto z2 = Ring::residue(2);
  auto spread2 = construct_spread(z2, 4, 2);
  CHECK_THROWS_AS(construct_tensor(spread2, Ring::residue(4)), DomainError);
  auto lifted = construct_tensor(spread2, Ring::parse("product(Z2,Z2)"));
  CHECK(lifted.size() == spread2.size());
  CHECK(lifted.min_distance() == 2 * spread2.min_distance());
  CHECK(brute_min_distance(lifted) == lifted.min_distance());
}

TEST_CASE("tensor codes keep intersections") {
  auto z2 = Ring::residue(2);
  auto spread = construct_spread(z2, 4, 2);
  auto r = Ring::parse("product(Z2,Z2)");
  auto lifted = construct_tensor(spread, r);
  for (std::size_t i = 0; i < spread.size(); ++i)
    for (std::size_t j = 0; j < spread.size(); ++j) {
      auto vw = intersection_oracle(spread.words()[i], spread.words()[j]);
      auto lifted_int = intersection_oracle(lifted.words()[i], lifted.words()[j]);
      CHECK(lifted_int.length() == r->length() * vw.length());
    }
}

TEST_CASE("difference sets") {
  auto z2 = difference_set(Ring::residue(2), 1, 0);
  REQUIRE(z2.matrices.size() == 2);
  CHECK(z2.matrices[0] == Matrix::from_ints(Ring::residue(2), 1, {{0}}));
  CHECK(z2.matrices[1] == Matrix::from_ints(Ring::residue(2), 1, {{1}}));
  auto z4 = difference_set(Ring::residue(4), 2, 0);
  CHECK(z4.matrices.size() == 4);
  CHECK(verify_difference_set(z4));
  auto f9 = difference_set(Ring::residue(3), 2, 0);
  CHECK(f9.matrices.size() == 9);
  CHECK(verify_difference_set(f9));
  auto rect = difference_set(Ring::residue(8), 2, 1);
  CHECK(rect.matrices.size() == 8);
  CHECK(rect.matrices[0].rows() == 2);
  CHECK(rect.matrices[0].cols() == 3);
  CHECK(verify_difference_set(rect));
  CHECK(verify_difference_set(difference_set(Ring::gaussian(3), 2, 0)));
  CHECK(verify_difference_set(difference_set(Ring::gaussian(2), 3, 0)));
  CHECK_THROWS_AS(difference_set(Ring::residue(6), 1, 0), DomainError);
}

TEST_CASE("spread construction") {
  auto z4 = Ring::residue(4);
  for (unsigned k : {3u, 4u}) {
    CAPTURE(k);
    auto c = construct_spread(z4, 4, k);
    CHECK(c.size() == 5);
    CHECK(c.size() == spread_cardinality(2, 4, 2));
    CHECK(c.constant_length() == k);
    CHECK(brute_min_distance(c) == 2 * k);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) CHECK(intersection_length(c.words()[i], c.words()[j]) == 0);
    CHECK(c.size() <= bound_chain_ring(*z4, 4, {}, k));
  }
  auto f2 = construct_spread(Ring::residue(2), 4, 2);
  CHECK(f2.size() == 5);
  CHECK(f2.min_distance() == 4);
  auto z8 = construct_spread(Ring::residue(8), 5, 5);
  CHECK(z8.size() == spread_cardinality(2, 5, 2));
  CHECK(z8.min_distance() == 10);
  auto z9 = construct_spread(Ring::residue(9), 4, 3);
  CHECK(z9.size() == spread_cardinality(3, 4, 2));
  CHECK(z9.min_distance() == 6);
  CHECK_THROWS_AS(construct_spread(Ring::residue(6), 4, 2), DomainError);
  CHECK_THROWS_AS(construct_spread(z4, 3, 4), DomainError);
}

TEST_CASE("product and stacked constructions") {
  auto z2 = Ring::residue(2);
  auto a = module_of(z2, 4, {{1, 0, 1, 0}, {0, 1, 0, 1}});
  auto b = module_of(z2, 4, {{1, 0, 1, 1}, {0, 1, 1, 0}});
  auto c1 = Code::from_words({a, b});
  CHECK(c1.min_distance() == 4);

  auto prod = construct_product({c1, c1});
  CHECK(prod.code.size() == 4);
  CHECK(prod.code.constant_length() == 4);
  CHECK(brute_min_distance(prod.code) == 4);

  auto stacked = construct_stacked({c1, c1});
  CHECK(stacked.code.size() == 2);
  CHECK(stacked.code.min_distance() == 8);
  CHECK(construct_stacked({c1}).code.words() == c1.words());

  // Received module of the counterexample.
  auto r = stacked.ring;
  Matrix g(r, 4,
           {Row{r->parse_element("(1,0)"), r->zero(), r->parse_element("(1,0)"), r->zero()},
            Row{r->zero(), r->parse_element("(1,1)"), r->parse_element("(0,1)"), r->parse_element("(1,1)")}});
  auto n = SubModule::from_generators(stacked.code.ambient(), g);
  auto global = decode_min_distance(stacked.code, n);
  CHECK(global.status == DecodeStatus::decoded);
  CHECK(global.index == 0u);
  CHECK(global.distance == 3);
  CHECK(global.certified);
  auto pd = decode_product(stacked, n);
  CHECK(pd.overall.status == DecodeStatus::ambiguous);
  REQUIRE(pd.components.size() == 2);
  CHECK(pd.components[0].status == DecodeStatus::decoded);
  CHECK(pd.components[1].status == DecodeStatus::ambiguous);
  CHECK(pd.components[1].distance == 3);
  CHECK(pd.components[1].second_distance == 3u);
  CHECK(project_factor(n, 1) == module_of(z2, 4, {{0, 1, 1, 1}}));

  auto same = decode_product(prod, prod.code.words()[2]);
  CHECK(same.overall.status == DecodeStatus::decoded);
  CHECK(same.overall.index == 2u);
  CHECK(same.components[0].index == 1u);
  CHECK(same.components[1].index == 0u);

  CHECK_THROWS_AS(construct_product({c1, construct_spread(Ring::residue(3), 5, 2)}), DomainError);
}

TEST_CASE("product decoding agrees with global decoding inside the radius") {
  auto z2 = Ring::residue(2);
  auto c1 = construct_spread(z2, 4, 2);
  auto prod = construct_product({c1, c1});
  CHECK(prod.code.min_distance() == 4);
  // Radius 1: received = codeword plus or minus one length unit.
  auto amb = prod.code.ambient();
  auto all = submodules_of(SubModule::whole(amb), 5);
  std::size_t checked = 0;
  for (const auto& n : all) {
    auto global = decode_min_distance(prod.code, n);
    if (!global.certified) continue;
    auto local = decode_product(prod, n);
    CHECK(local.overall.status == DecodeStatus::decoded);
    CHECK(local.overall.index == global.index);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("stacked code over Z6 from two spreads") {
  auto s2 = construct_spread(Ring::residue(2), 4, 2);
  auto s3 = construct_spread(Ring::residue(3), 4, 2);
  auto stacked = construct_stacked({s2, s3});
  auto z6code = transport(stacked.code, Ring::residue(6));
  CHECK(z6code.size() == std::min(s2.size(), s3.size()));
  CHECK(z6code.constant_length() == 4);
  CHECK(brute_min_distance(z6code) >= s2.min_distance() + s3.min_distance());
}

TEST_CASE("gaussian binomial") {
  CHECK(gaussian_binomial(2, 3, 1) == 7);
  CHECK(gaussian_binomial(2, 4, 2) == 35);
  CHECK(gaussian_binomial(3, 4, 2) == 130);
  CHECK(gaussian_binomial(5, 2, 3) == 0);
  CHECK(gaussian_binomial(7, 5, 0) == 1);
}

TEST_CASE("bounds over Z12") {
  Ambient amb = Ambient::full(Ring::residue(12), 2);
  auto s = bound_singleton(amb, 2, 2);
  CHECK(s.value == 4);
  CHECK(s.method == BoundMethod::enumeration);
  auto p = bound_sphere(amb, 2, 2);
  CHECK(p.value == 7);
}

TEST_CASE("field bounds") {
  for (unsigned n : {4u, 6u}) {
    Ambient amb = Ambient::full(Ring::residue(2), n);
    unsigned k = 2;
    CHECK(bound_singleton(amb, k, k).value == gaussian_binomial(2, n - k + 1, 1));
    CHECK(bound_sphere(amb, k, k).value == (ipow(2, n) - 1) / (ipow(2, k) - 1));
  }
  Ambient amb = Ambient::full(Ring::residue(3), 4);
  CHECK(bound_singleton(amb, 3, 2).value == bound_singleton_enumerated(amb, 3, 2).value);
  CHECK(bound_sphere(amb, 3, 2).value == bound_sphere_enumerated(amb, 3, 2).value);
}

TEST_CASE("closed forms agree with enumeration") {
  for (const auto& r : {Ring::parse("product(Z2,Z2)"), Ring::gaussian(5), Ring::residue(4), Ring::gaussian(2)}) {
    CAPTURE(r->name());
    Ambient amb = Ambient::full(r, 2);
    const unsigned lambda = amb.length();
    for (unsigned k = 1; k < lambda; ++k)
      for (unsigned delta = 1; delta <= k; ++delta) {
        CAPTURE(k);
        CAPTURE(delta);
        CHECK(bound_singleton(amb, k, delta).value == bound_singleton_enumerated(amb, k, delta).value);
        CHECK(bound_sphere(amb, k, delta).value == bound_sphere_enumerated(amb, k, delta).value);
      }
  }
  auto z4 = Ring::residue(4);
  Ambient amb = Ambient::full(z4, 2);
  CHECK(bound_singleton_enumerated(amb, 2, 2).value == 3);
  CHECK(bound_sphere_enumerated(amb, 2, 2).value == 3);
  CHECK_THROWS_AS(bound_singleton(amb, 4, 2), DomainError);
}

TEST_CASE("chain ring bound") {
  auto z4 = Ring::residue(4);
  CHECK(bound_chain_ring(*z4, 4, {}, 4) == 7);
  CHECK(bound_chain_ring(*z4, 4, {}, 3) == 7);
  CHECK(bound_chain_ring(*Ring::residue(5), 5, {}, 2) == (ipow(5, 4) - 1) / 4);
  // Cross-check against the length-one submodules of a minimizing module.
  Ambient amb = Ambient::full(z4, 4);
  auto m = SubModule::from_generators(amb, Matrix::from_ints(z4, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}));
  CHECK(m.length() == amb.length() - 4 + 1 + 1);
  CHECK(count_of_length(submodules_of(m, 1), 1) == 7);
  // Constrained ambient agrees with enumeration.
  Ambient constrained = Ambient::chain_family(z4, {0, 1});
  for (unsigned k = 1; k < constrained.length(); ++k)
    CHECK(bound_chain_ring(*z4, 3, {0, 1}, k) == bound_singleton_enumerated(constrained, k, k).value);
  CHECK_THROWS_AS(bound_chain_ring(*Ring::residue(6), 2, {}, 1), DomainError);
}

TEST_CASE("zpm bounds") {
  CHECK(zpm_count(2, {2, 1}, 1) == 4);
  auto b = bound_zpm(2, 2, 4, 2, 2);
  REQUIRE(b.bb3.has_value());
  CHECK(*b.bb3 == 15);
  CHECK_FALSE(b.bb4.has_value());
  auto c = bound_zpm(2, 2, 4, 3, 3);
  REQUIRE(c.bb4.has_value());
  CHECK(*c.bb4 == 7);
  CHECK(c.best <= *c.bb1);
  auto d = bound_zpm(2, 2, 3, 2, 1);
  CHECK_FALSE(d.bb3.has_value());
  // The Z_2 x Z_2 singleton bound equals bb1.
  CHECK(*bound_zpm(2, 2, 2, 2, 2).bb1 == bound_singleton(Ambient::full(Ring::parse("product(Z2,Z2)"), 2), 2, 2).value);
}

TEST_CASE("counting formula over (Z2 x Z2)^2 and (Z3 x Z3)^2") {
  for (const auto& r : {Ring::parse("product(Z2,Z2)"), Ring::parse("product(Z3,Z3)")}) {
    CAPTURE(r->name());
    const std::uint64_t p = r->factors()[0]->size();
    Ambient amb = Ambient::full(r, 2);
    auto lattice = submodules_of(SubModule::whole(amb), amb.length());
    for (const auto& m : lattice) {
      std::vector<unsigned> dims{project_component(m, 0).length(), project_component(m, 1).length()};
      for (unsigned ell = 0; ell <= m.length(); ++ell) {
        std::size_t oracle = 0;
        for (const auto& n : lattice)
          if (n.length() == ell && m.contains(n)) ++oracle;
        CHECK(zpm_count(p, dims, ell) == oracle);
      }
    }
  }
}

TEST_CASE("constructed codes respect the bounds") {
  auto z4 = Ring::residue(4);
  for (unsigned k : {3u, 4u}) {
    auto c = construct_spread(z4, 4, k);
    const unsigned delta = c.min_distance() / 2;
    CHECK(c.size() <= bound_singleton(c.ambient(), k, delta).value);
    CHECK(c.size() <= bound_chain_ring(*z4, 4, {}, k));
  }
  auto f2 = construct_spread(Ring::residue(2), 4, 2);
  CHECK(f2.size() <= bound_singleton(f2.ambient(), 2, 2).value);
  CHECK(f2.size() <= bound_sphere(f2.ambient(), 2, 2).value);
  auto lifted = construct_tensor(f2, Ring::parse("product(Z2,Z2)"));
  auto z = bound_zpm(2, 2, 4, lifted.constant_length(), lifted.min_distance() / 2);
  CHECK(lifted.size() <= z.best);
  CHECK(lifted.size() <= bound_singleton(lifted.ambient(), 4, 4).value);
  CHECK(lifted.size() <= bound_sphere(lifted.ambient(), 4, 4).value);
}

TEST_CASE("length of a row module is at most rows times the ring length") {
  Rng rng(5);
  for (const char* spec : {"Z8", "Z12", "Zi5", "Zi2", "product(Z2,Z3)"}) {
    auto r = Ring::parse(spec);
    for (int i = 0; i < 200; ++i) {
      const std::size_t t = 1 + rng.below(3), s = 1 + rng.below(4);
      const auto m = SubModule::from_generators(Ambient::full(r, s), random_matrix(r, t, s, rng));
      CHECK(m.length() <= t * r->length());
    }
  }
}
