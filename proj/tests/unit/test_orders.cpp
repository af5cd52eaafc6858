#include <doctest.h>

#include "triplel/orders.hpp"
#include "triplel/theta.hpp"

#include <set>

using namespace triplel;

TEST_CASE("maximal orders") {
  for (std::int64_t m1 : {2, 3, 5, 7, 11, 13, 17, 30}) {
    auto alg = make_algebra(m1);
    auto o = maximal_order(alg);
    CHECK(is_order(o));
    CHECK(order_discriminant(o) == m1);
    CHECK(determinant(2 * gram_matrix(o)) == m1 * m1);
  }
}

TEST_CASE("Eichler orders") {
  auto d2 = make_algebra(2);
  auto r2 = eichler_order(d2, 2, 1);
  CHECK(unit_count(r2.lattice) == 24);
  auto d11 = make_algebra(11);
  auto r11 = eichler_order(d11, 11, 1);
  CHECK(determinant(2 * gram_matrix(r11.lattice)) == 121);
  auto r33 = eichler_order(d11, 11, 3);
  CHECK(is_order(r33.lattice));
  CHECK(r11.lattice.contains(r33.lattice));
  CHECK(r33.lattice.covolume() / r11.lattice.covolume() == 3);
  CHECK(determinant(2 * gram_matrix(r33.lattice)) == 33 * 33);
  CHECK_THROWS_AS(eichler_order(d11, 11, 11), PreconditionError);
  CHECK_THROWS_AS(eichler_order(d11, 2, 1), PreconditionError);
}

TEST_CASE("ideal classes at small levels") {
  auto cs2 = right_ideal_classes(eichler_order(make_algebra(2), 2, 1));
  CHECK(cs2.size() == 1);
  CHECK(cs2.unit_orders == std::vector<int>{24});

  auto cs11 = right_ideal_classes(eichler_order(make_algebra(11), 11, 1));
  CHECK(cs11.size() == 2);
  CHECK(cs11.mass() == Rational(5, 12));
  CHECK(cs11.reps[0] == cs11.order.lattice);
  CHECK(cs11.unit_orders[0] == unit_count(cs11.order.lattice));
}

TEST_CASE("mass formula against exhaustive enumeration") {
  for (std::int64_t n : {2, 3, 5, 6, 7, 10, 11}) {
    for (auto m1 : {2, 3, 5, 7, 11}) {
      if (n % m1 != 0) continue;
      auto cs = right_ideal_classes(eichler_order(make_algebra(m1), m1, n / m1), {.stop_at_mass = false});
      CHECK(cs.mass() == eichler_mass(m1, n / m1));
    }
  }
}

TEST_CASE("transporters, non-equivalence and class maps") {
  auto d11 = make_algebra(11);
  auto cs33 = right_ideal_classes(eichler_order(d11, 11, 3));
  auto cs11 = right_ideal_classes(eichler_order(d11, 11, 1));
  for (std::size_t i = 0; i < cs33.size(); ++i) {
    for (std::size_t j = 0; j < cs33.size(); ++j) {
      auto g = lattice_isometry(cs33.reps[i], cs33.reps[j]);
      CHECK(g.has_value() == (i == j));
      auto tij = theta_series(ideal_transporter(cs33, i, j), 50);
      auto tji = theta_series(ideal_transporter(cs33, j, i), 50);
      CHECK(tij == tji);
    }
    CHECK(ideal_transporter(cs33, i, i) == cs33.left_orders[i]);
    CHECK(theta_series(ideal_transporter(cs33, i, i), 1)[1] == cs33.unit_orders[i]);
  }
  auto m = class_map(cs33, cs11);
  std::set<std::size_t> hit;
  for (std::size_t i = 0; i < m.size(); ++i) {
    hit.insert(m[i].index);
    CHECK(left_multiply(m[i].gamma, cs11.reps[m[i].index]) == cs33.reps[i] * cs11.order.lattice);
  }
  CHECK(hit.size() == 2);
  auto id = class_map(cs11, cs11);
  for (std::size_t i = 0; i < id.size(); ++i) {
    CHECK(id[i].index == i);
    CHECK(d11->nrd(id[i].gamma) == 1);
  }
}

TEST_CASE("class maps compose along a chain") {
  auto d11 = make_algebra(11);
  auto cs66 = right_ideal_classes(eichler_order(d11, 11, 6));
  auto cs33 = right_ideal_classes(eichler_order(d11, 11, 3));
  auto cs11 = right_ideal_classes(eichler_order(d11, 11, 1));
  auto a = class_map(cs66, cs33);
  auto b = class_map(cs33, cs11);
  auto direct = class_map(cs66, cs11);
  for (std::size_t i = 0; i < cs66.size(); ++i) {
    const auto& mid = b[a[i].index];
    CHECK(direct[i].index == mid.index);
    QuatElement composed = d11->mul(a[i].gamma, mid.gamma);
    QuatElement unit = d11->mul(d11->inverse(composed), direct[i].gamma);
    CHECK(d11->nrd(unit) == 1);
    CHECK(cs11.left_orders[mid.index].contains(unit));
  }
}
