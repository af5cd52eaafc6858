#include <doctest.h>

#include "triplel/central.hpp"

using namespace triplel;

namespace {

const NewformData& form(std::int64_t level, int weight, std::size_t index = 0) {
  static std::map<std::pair<std::int64_t, int>, std::vector<NewformData>> cache;
  auto& v = cache[{level, weight}];
  if (v.empty()) v = enumerate_newforms(level, weight, 4000);
  return v.at(index);
}

}  // namespace

TEST_CASE("newform enumeration and labels") {
  const auto& f = form(11, 2);
  CHECK(f.label == "11.2.1");
  const long a[] = {0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2};
  for (int n = 1; n <= 10; ++n) CHECK(f.a(n) == a[n]);
  CHECK(f.al_eigen.at(11) == -1);
  CHECK(enumerate_newforms(33, 2, 100).size() == 1);
  auto w4 = enumerate_newforms(11, 4, 100);
  REQUIRE(w4.size() == 2);
  CHECK(w4[0].a(2) < w4[1].a(2));
  CHECK(w4[1].label == "11.4.2");
  CHECK_THROWS_AS(enumerate_newforms(12, 2, 100), PreconditionError);
  CHECK_THROWS_AS(enumerate_newforms(11, 3, 100), PreconditionError);
}

TEST_CASE("decomposition and Lambda sets") {
  auto t = make_triple(form(11, 2), form(11, 2), form(33, 2));
  auto d = select_decomposition(t);
  CHECK_FALSE(d.zero);
  CHECK(d.m1 == 11);
  CHECK(d.m2 == 3);
  auto lam = lambda_assignment(t);
  CHECK(lam[0] == std::vector<std::int64_t>{3});
  CHECK(lam[1].empty());
  CHECK(lam[2].empty());

  auto t2 = make_triple(form(33, 2), form(11, 2), form(11, 2));
  CHECK(lambda_assignment(t2)[1] == std::vector<std::int64_t>{3});

  auto coprime = make_triple(form(11, 2), form(14, 2), form(14, 2));
  auto z = select_decomposition(coprime);
  CHECK(z.zero);
  CHECK(z.reason == "no admissible definite algebra");
}

TEST_CASE("constants") {
  WeightProfile w2 = make_triple(form(11, 2), form(11, 2), form(11, 2)).profile;
  CHECK(central_constant(w2, 11) == 16);
  CHECK(central_constant(w2, 33) == 8);
  CHECK(central_pi_power(w2) == 5);
}

TEST_CASE("height of (11a)^3 against the two-class hand computation") {
  // Classes with e = (4, 6): the cusp form is c (2, -3) with 5/2 c^2 = 1,
  // so H = (8/4 - 27/6) c^3 and H^2 = 2/5.
  auto t = make_triple(form(11, 2), form(11, 2), form(11, 2));
  auto d = select_decomposition(t);
  auto h = height_pairing(t, d, lambda_assignment(t));
  REQUIRE(h.square_exact);
  CHECK(*h.square_exact == QuadNum(Rational(2, 5)));
  CHECK(h.classes == 2);

  HeightOptions wrong;
  wrong.unit_orders_override = {2, 3};
  auto hw = height_pairing(t, d, lambda_assignment(t), wrong);
  CHECK(hw.square != doctest::Approx(h.square));
}

TEST_CASE("central report is deterministic and well formed") {
  auto t = make_triple(form(11, 2), form(11, 2), form(11, 2));
  auto r1 = central_value(t);
  auto r2 = central_value(t);
  CHECK(r1.kv() == r2.kv());
  CHECK(r1.text() == r2.text());
  CHECK(r1.sign == 1);
  CHECK(r1.calibration == 1);
  CHECK_FALSE(r1.calibrated);
  CHECK(r1.afe_value > 0);
  CHECK(r1.central_value == doctest::Approx(r1.constant.get_d() * std::pow(M_PI, 5) * r1.petersson[0].value() *
                                            r1.petersson[1].value() * r1.petersson[2].value() * r1.height.square));
  CHECK(r1.kv().find("height_squared=2/5\n") != std::string::npos);
}
