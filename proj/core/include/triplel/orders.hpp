#pragma once

// Eichler orders, right ideal classes and maps between nested orders.

#include "triplel/quat.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace triplel {

/// A maximal order in a definite algebra, obtained from Z<1,i,j,k> by
/// adjoining integral elements of (1/p)O until the discriminant is right.
QuatLattice maximal_order(const AlgebraPtr& alg);

struct EichlerOrder {
  QuatLattice lattice;
  QuatLattice maximal;  // the containing maximal order
  std::int64_t m1 = 1;
  std::int64_t m2 = 1;

  std::int64_t level() const { return m1 * m2; }
  const AlgebraPtr& algebra() const { return lattice.algebra(); }
};

/// R(M1, M2) = O intersected with the left orders of fixed ideals of norm p
/// for p | M2. For M2' | M2 the construction gives R(M1, M2) inside R(M1, M2').
EichlerOrder eichler_order(const AlgebraPtr& alg, std::int64_t m1, std::int64_t m2);

/// (1/24) prod_{p|M1}(p-1) prod_{p|M2}(p+1).
Rational eichler_mass(std::int64_t m1, std::int64_t m2);

/// Number of elements of reduced norm 1 in an order.
int unit_count(const QuatLattice& order);

struct IdealClassSet {
  EichlerOrder order;
  std::vector<QuatLattice> reps;         // right ideals, reps[0] == order
  std::vector<QuatLattice> left_orders;
  std::vector<int> unit_orders;          // e_i
  std::vector<std::vector<std::int64_t>> theta;  // normalized theta of each rep

  std::size_t size() const { return reps.size(); }
  Rational mass() const;
};

struct ClassEnumerationOptions {
  /// Stop as soon as the mass is reached. When false the neighbour graph
  /// is explored exhaustively and the mass is checked afterwards.
  bool stop_at_mass = true;
};

/// Throws ConsistencyError if the enumerated mass differs from the formula.
IdealClassSet right_ideal_classes(const EichlerOrder& order, ClassEnumerationOptions opts = {});

/// I_i * conj(I_j) / nrd(I_j), with lattice scale 1 / nrd so that the norm
/// form is primitive integral.
QuatLattice ideal_transporter(const IdealClassSet& classes, std::size_t i, std::size_t j);

/// Index of the class of a right ideal together with gamma such that
/// gamma * reps[index] == ideal.
std::pair<std::size_t, QuatElement> classify_ideal(const IdealClassSet& classes, const QuatLattice& ideal);

struct ClassMapEntry {
  std::size_t index;
  QuatElement gamma;  // gamma * big.reps[index] == small.reps[i] * R_big
};

std::vector<ClassMapEntry> class_map(const IdealClassSet& small, const IdealClassSet& big);

/// Smallest prime not dividing n.
std::int64_t smallest_prime_not_dividing(std::int64_t n);

}  // namespace triplel
