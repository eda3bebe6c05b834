#include <random>

#include "doctest.h"
#include "submod/submodule.hpp"

using namespace submod;

namespace {

SubModule module_of(const RingPtr& r, std::size_t n, std::initializer_list<std::initializer_list<long long>> rows) {
  return SubModule::from_generators(Ambient::full(r, n), Matrix::from_ints(r, n, rows));
}

SubModule random_module(const RingPtr& r, std::size_t n, std::mt19937_64& gen) {
  std::size_t t = gen() % 3;
  Matrix m(r, t, n);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, Elem{static_cast<std::uint32_t>(gen() % r->size())});
  return SubModule::from_generators(Ambient::full(r, n), m);
}

}  // namespace

TEST_CASE("lengths from pivots") {
  auto z6 = Ring::residue(6);
  auto m = module_of(z6, 3, {{2, 1, 3}, {4, 1, 2}});
  CHECK(m.length() == 4);
  auto ideals = m.pivot_ideals();
  REQUIRE(ideals.size() == 3);
  CHECK(ideals[0].generator == Elem{2});
  CHECK(ideals[1].generator == Elem{1});
  CHECK(ideals[2].generator == Elem{3});
  CHECK(SubModule::zero(Ambient::full(z6, 3)).length() == 0);

  auto z12 = Ring::residue(12);
  auto d = module_of(z12, 2, {{1, 0}, {0, 3}});
  CHECK(d.basis() == Matrix::from_ints(z12, 2, {{1, 0}, {0, 3}}));
  CHECK(d.length() == 5);
}

TEST_CASE("distance example over Z4") {
  auto z4 = Ring::residue(4);
  auto m = module_of(z4, 4, {{1, 1, 1, 0}, {0, 2, 1, 2}, {0, 0, 2, 0}});
  auto n = module_of(z4, 4, {{1, 3, 0, 2}, {0, 0, 1, 0}});
  CHECK(m.length() == 4);
  CHECK(n.length() == 4);
  CHECK(sum(m, n).length() == 5);
  CHECK(distance(m, n) == 2);
  CHECK(intersection_length(m, n) == 3);
  auto le = loss_and_error(m, n);
  CHECK(le.rho == 1);
  CHECK(le.e == 1);
  CHECK(intersection_oracle(m, n).length() == 3);
  CHECK(intersection_oracle(m, m) == m);
  CHECK(intersection_oracle(m, SubModule::zero(m.ambient())).length() == 0);
  CHECK(sum(m, SubModule::zero(m.ambient())) == m);
  CHECK(sum(m, m) == m);
  CHECK(distance(m, m) == 0);
  auto zero = SubModule::zero(m.ambient());
  CHECK(loss_and_error(m, m).rho == 0);
  CHECK(loss_and_error(m, zero).rho == m.length());
  CHECK(loss_and_error(m, zero).e == 0);
}

TEST_CASE("Gaussian distance example") {
  auto r = Ring::gaussian(5);
  Ambient amb = Ambient::full(r, 4);
  auto v1 = module_of(r, 4, {{1, 0, 1, 0}, {0, 1, 0, 1}});
  Matrix g(r, 4, {Row{r->parse_element("2+i"), Elem{0}, r->parse_element("2+i"), Elem{0}},
                  Row{Elem{0}, r->one(), Elem{0}, r->parse_element("i-1")}});
  auto n = SubModule::from_generators(amb, g);
  CHECK(v1.length() == 4);
  CHECK(distance(n, v1) == 3);
}

TEST_CASE("ambient membership") {
  auto z4 = Ring::residue(4);
  Ambient amb = Ambient::with_ideals(z4, Row{Elem{1}, Elem{2}});
  CHECK(amb.length() == 3);
  CHECK(amb.contains(Row{Elem{3}, Elem{2}}));
  CHECK_FALSE(amb.contains(Row{Elem{3}, Elem{1}}));
  CHECK_THROWS_AS(SubModule::from_generators(amb, Matrix::from_ints(z4, 2, {{1, 1}})), DomainError);
  Ambient chain = Ambient::chain_family(Ring::residue(8), {1, 2});
  CHECK(chain.column_ideals == Row{Elem{1}, Elem{2}, Elem{4}});
  CHECK(chain.length() == 3 + 2 + 1);
  CHECK_THROWS_AS(Ambient::chain_family(Ring::residue(6), {}), DomainError);
}

TEST_CASE("enumeration of length-one submodules") {
  auto z12 = Ring::residue(12);
  Ambient amb = Ambient::full(z12, 2);
  auto ones = enumerate_submodules(amb, 1);
  std::vector<SubModule> expected;
  for (auto v : {std::pair{4, 0}, {4, 4}, {4, 8}, {6, 0}, {6, 6}, {0, 4}, {0, 6}})
    expected.push_back(SubModule::from_generators(amb, Matrix(z12, 2, {Row{z12->from_integer(v.first),
                                                                            z12->from_integer(v.second)}})));
  std::sort(expected.begin(), expected.end());
  CHECK(ones == expected);

  CHECK(enumerate_submodules(amb, 0).size() == 1);
  CHECK(enumerate_submodules(Ambient::full(Ring::residue(2), 3), 1).size() == 7);
  CHECK(enumerate_submodules(Ambient::full(Ring::residue(2), 4), 2).size() == 35);
  CHECK_THROWS_AS(enumerate_submodules(Ambient::full(Ring::residue(12), 5), 1), DomainError);
}

TEST_CASE("length-one submodules of the chosen module") {
  auto z12 = Ring::residue(12);
  auto m = module_of(z12, 2, {{1, 0}, {0, 3}});
  auto subs = submodules_of(m, 1);
  CHECK(count_of_length(subs, 1) == 4);
  auto n = module_of(z12, 2, {{0, 3}});
  CHECK(count_of_length(submodules_of(n, 1), 1) == 1);
}

TEST_CASE("submodules of a product ring split into pairs of subspaces") {
  auto r = Ring::parse("product(Z2,Z2)");
  auto all = submodules_of(SubModule::whole(Ambient::full(r, 2)), 4);
  CHECK(all.size() == 25);
}

TEST_CASE("projections, combination and transport") {
  auto r = Ring::parse("product(Z2,Z3)");
  auto z2 = Ring::residue(2), z3 = Ring::residue(3), z6 = Ring::residue(6);
  auto a = module_of(z2, 2, {{1, 1}});
  auto b = module_of(z3, 2, {{1, 2}, {0, 1}});
  std::vector<SubModule> parts{a, b};
  auto c = combine_factors(r, parts);
  CHECK(c.length() == 3);
  CHECK(project_factor(c, 0) == a);
  CHECK(project_factor(c, 1) == b);
  CHECK(project_component(c, 1) == b);
  auto t = transport(c, z6);
  CHECK(t.length() == 3);
  CHECK(transport(t, r) == c);
  CHECK_THROWS_AS(transport(module_of(Ring::residue(4), 1, {{1}}), Ring::gaussian(2)), DomainError);
}

TEST_CASE("random metric and oracle properties") {
  std::mt19937_64 gen(11);
  for (const auto& r : {Ring::residue(6), Ring::residue(8), Ring::residue(12), Ring::gaussian(5),
                        Ring::parse("product(Z2,Z3)")}) {
    CAPTURE(r->name());
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + gen() % 3;
      auto m = random_module(r, n, gen);
      auto k = random_module(r, n, gen);
      auto p = random_module(r, n, gen);
      CHECK(distance(m, k) == distance(k, m));
      CHECK((distance(m, k) == 0) == (m == k));
      CHECK(distance(m, k) <= distance(m, p) + distance(p, k));
      auto inter = intersection_oracle(m, k);
      CHECK(inter.length() == intersection_length(m, k));
      CHECK(m.length() + k.length() == sum(m, k).length() + inter.length());
      CHECK(m.contains(inter));
      CHECK(sum(m, k).contains(m));
      CHECK(inter.length() <= m.length());
      CHECK((inter.length() == m.length()) == (inter == m));
      auto le = loss_and_error(m, k);
      CHECK(le.rho + le.e == distance(m, k));
      CHECK(elements(m).size() == m.cardinality());
      if (m.cardinality() <= 512) CHECK(composition_length_oracle(m) == m.length());
    }
  }
}
