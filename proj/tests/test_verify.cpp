#include <doctest.h>

#include "support.hpp"

using namespace uhecke;
using namespace uhecke::testing;

namespace {

bool all_pass(const ConjectureReport& r) {
  for (const auto& p : r.results)
    if (p.status != Status::Pass) return false;
  return true;
}

std::shared_ptr<HeckeAlgebra> f4_algebra(int a, int b) {
  auto sys = CoxeterSystem::type_F4();
  auto W = std::make_shared<const CoxeterGroup>(sys);
  const Exponent e = Exponent::unit(0);
  auto G = OrderedGroup::integers();
  return std::make_shared<HeckeAlgebra>(W, G, WeightFunction(sys, G, {a * e, a * e, b * e, b * e}));
}

}  // namespace

TEST_CASE("property lists") {
  CHECK(parse_property_list("all").size() == 15);
  CHECK(parse_property_list("").size() == 15);
  CHECK(parse_property_list("E") == std::vector<std::string>{"E1", "E2", "E3", "E4"});
  CHECK(parse_property_list("P1..P3,E2") == std::vector<std::string>{"P1", "P2", "P3", "E2"});
  CHECK_THROWS_AS(parse_property_list("P16"), std::invalid_argument);
  CHECK(parse_p15_mode("p15prime") == P15Mode::Prime);
  CHECK(parse_p15_mode("direct") == P15Mode::Direct);
  CHECK_THROWS_AS(parse_p15_mode("fast"), std::invalid_argument);
}

TEST_CASE("all properties hold on small instances") {
  std::vector<std::shared_ptr<Instance>> cases{dihedral(8, 3, 2), equal_params(CoxeterSystem::type_A(2)),
                                               equal_params(CoxeterSystem::type_B(2)), equal_params(CoxeterSystem::dihedral(5)),
                                               dihedral_lex(6)};
  for (const auto& inst : cases) {
    VerifyOptions opts;
    opts.props = parse_property_list("P,E");
    auto r = verify(*inst, opts);
    CHECK(r.ok());
    for (const auto& p : r.results) CHECK_MESSAGE(p.status != Status::Fail, inst->describe() << " " << p.name << " " << p.detail);
    for (const auto& p : r.auxiliary) CHECK_MESSAGE(p.status == Status::Pass, inst->describe() << " " << p.name);
  }
}

TEST_CASE("E1 and E2 need representation data") {
  auto r = verify(*equal_params(CoxeterSystem::type_A(3)), {parse_property_list("E"), {}, nullptr, false});
  CHECK(r.find("E1")->status == Status::Skipped);
  CHECK(r.find("E3")->status == Status::Pass);
  CHECK(r.find("E4")->status == Status::Pass);
}

TEST_CASE("a flipped gamma sign breaks cyclic symmetry") {
  auto inst = dihedral(6, 3, 2);
  auto in = VerifyInput::of(*inst);
  REQUIRE(verify_P(in, 7).status == Status::Pass);
  JData bad = *in.jd;
  auto it = std::find_if(bad.gamma.begin(), bad.gamma.end(), [](const GammaEntry& e) { return e.x != e.y || e.y != e.z; });
  REQUIRE(it != bad.gamma.end());
  it->value = -it->value;
  in.jd = std::make_shared<const JData>(bad);
  auto r = verify_P(in, 7);
  CHECK(r.status == Status::Fail);
  CHECK(r.witness.size() == 3);
}

TEST_CASE("permuted a-values fail E1") {
  auto inst = dihedral(6, 3, 2);
  auto in = VerifyInput::of(*inst);
  auto rep = RepInvariantData::dihedral(inst->algebra());
  REQUIRE(verify_E(in, 1, &rep).status == Status::Pass);
  std::swap(rep.a[rep.index_of("eps1")], rep.a[rep.index_of("eps2")]);
  auto r = verify_E(in, 1, &rep);
  CHECK(r.status == Status::Fail);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("star condition rejects a collapsed cell partition") {
  auto inst = dihedral(4, 2, 1);
  auto in = VerifyInput::of(*inst);
  P15Options opts;
  REQUIRE(verify_P15(in, opts).status == Status::Pass);
  const std::size_t n = inst->group().size();
  std::vector<std::vector<int>> all(n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t y = 0; y < n; ++y) all[w].push_back(static_cast<int>(y));
  CellPartition collapsed{CellPreorder(n, all), CellPreorder(n, all), CellPreorder(n, all)};
  in.cells = &collapsed;
  auto r = verify_P15(in, opts);
  CHECK(r.status == Status::Fail);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("P15 modes agree") {
  for (auto inst : {dihedral(4, 2, 1), dihedral(6, 3, 2), equal_params(CoxeterSystem::type_A(3))}) {
    auto in = VerifyInput::of(*inst);
    for (auto mode : {P15Mode::Star, P15Mode::Direct, P15Mode::Prime}) {
      P15Options opts;
      opts.mode = mode;
      auto r = verify_P15(in, opts);
      CHECK_MESSAGE(r.status == Status::Pass, inst->describe() << " " << p15_mode_name(mode) << " " << r.detail);
    }
  }
}

TEST_CASE("dihedral representation data") {
  auto inst = dihedral(8, 3, 2);
  auto rep = RepInvariantData::dihedral(inst->algebra());
  const Exponent e = Exponent::unit(0);
  CHECK(rep.a[rep.index_of("1_W")] == Exponent{});
  CHECK(rep.a[rep.index_of("eps1")] == 2 * e);
  CHECK(rep.a[rep.index_of("rho_1")] == 3 * e);
  CHECK(rep.a[rep.index_of("eps2")] == 6 * e);
  CHECK(rep.a[rep.index_of("eps")] == 20 * e);
  REQUIRE(rep.f[rep.index_of("rho_1")].has_value());
  CHECK(rep.f[rep.index_of("rho_1")]->to_double() == doctest::Approx(8.0 / (2.0 - 2.0 * std::cos(4 * M_PI / 8))));
  auto in = VerifyInput::of(*inst);
  CHECK(compare_cell_a_values(in, rep).status == Status::Pass);
  auto labels = attach_labels(in, rep);
  CHECK(labels.size() == inst->cells().left.num_cells());
}

TEST_CASE("F4 table columns") {
  for (auto [a, b, regime] : {std::tuple{1, 3, "b>2a"}, {1, 2, "b=2a"}, {2, 3, "2a>b>a"}, {1, 1, "b=a"}}) {
    auto alg = f4_algebra(a, b);
    auto rep = RepInvariantData::f4(*alg);
    CHECK(rep.regime == regime);
    CHECK(rep.labels.size() == 25);
    int sum = 0;
    for (int d : rep.degrees) sum += d * d;
    CHECK(sum == 1152);
    CHECK(rep.a[rep.index_of("1_1")] == Exponent{});
    CHECK(rep.a[rep.index_of("1_4")] == (12 * a + 12 * b) * Exponent::unit(0));
  }
  auto rep = RepInvariantData::f4(*f4_algebra(1, 3));
  CHECK(rep.a[rep.index_of("4_2")] == 3 * Exponent::unit(0));
  CHECK_THROWS_AS(RepInvariantData::f4(*f4_algebra(2, 1)), std::invalid_argument);
}

TEST_CASE("left relation versus left cells") {
  auto s = left_relation_summary(VerifyInput::of(*dihedral(6, 3, 2)));
  CHECK(s.closure_matches_left_cells);
  CHECK(s.classes > 0);
}

TEST_CASE("the dihedral oracle needs even m and L(s1) > L(s2)") {
  CHECK_THROWS_AS(dihedral_oracle(equal_params(CoxeterSystem::dihedral(5))->algebra()), std::invalid_argument);
  CHECK_THROWS_AS(dihedral_oracle(dihedral(6, 2, 3)->algebra()), std::invalid_argument);
  CHECK_THROWS_AS(dihedral_oracle(equal_params(CoxeterSystem::dihedral(6))->algebra()), std::invalid_argument);
  auto inst = dihedral(8, 3, 1);
  auto o = dihedral_oracle(inst->algebra());
  CHECK(o.chain.size() == 5);
  CHECK(o.left_cells.size() == 6);
  CHECK(compare_with_oracle(o, *inst).ok);
}
