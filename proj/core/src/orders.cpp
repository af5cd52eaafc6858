#include "triplel/orders.hpp"

#include "triplel/enumerate.hpp"
#include "triplel/theta.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace triplel {

namespace {

constexpr std::int64_t kThetaFilterLength = 12;

/// Calls f(c) for every c in [0, p)^4 except zero, lexicographically.
template <class F>
bool for_each_residue(std::int64_t p, F&& f) {
  std::array<std::int64_t, 4> c{0, 0, 0, 0};
  while (true) {
    int k = 3;
    while (k >= 0 && ++c[static_cast<std::size_t>(k)] == p) c[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) return false;
    if (f(c)) return true;
  }
}

QuatElement combine(const std::array<QuatElement, 4>& basis, const std::array<std::int64_t, 4>& c) {
  QuatElement x;
  for (std::size_t k = 0; k < 4; ++k)
    if (c[k] != 0) x = x + Rational(c[k]) * basis[k];
  return x;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Right ideal of `order` with minimal norm in the class of `ideal`.
QuatLattice normalize_ideal(const QuatLattice& ideal) {
  NormalizedLattice nl(ideal);
  std::int64_t bound = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < 4; ++i) bound = std::min(bound, nl.form().entry(i, i));
  std::int64_t best = bound + 1;
  std::vector<std::int64_t> arg;
  nl.form().for_each_half(bound, [&](const std::vector<std::int64_t>& x, std::int64_t v) {
    if (v < best) {
      best = v;
      arg = x;
    }
  });
  QuatElement x = nl.element(arg);
  return left_multiply(Rational(1) / nl.norm() * x.conj(), ideal);
}

std::vector<QuatLattice> p_neighbors(const QuatLattice& ideal, const QuatLattice& order, std::int64_t p) {
  const auto& alg = *ideal.algebra();
  const Rational n = ideal.norm();
  std::set<std::vector<std::string>> seen;
  std::vector<QuatLattice> out;
  for_each_residue(p, [&](const std::array<std::int64_t, 4>& c) {
    QuatElement x = combine(ideal.basis(), c);
    Rational q = alg.nrd(x) / (n * Rational(p));
    if (!is_integer(q)) return false;
    std::vector<QuatElement> gens;
    for (const auto& r : order.basis()) gens.push_back(alg.mul(x, r));
    for (const auto& b : ideal.basis()) gens.push_back(Rational(p) * b);
    QuatLattice j(ideal.algebra(), gens);
    std::vector<std::string> key;
    for (const auto& b : j.basis()) key.push_back(b.str());
    if (seen.insert(key).second) out.push_back(std::move(j));
    return false;
  });
  if (out.size() != static_cast<std::size_t>(p + 1))
    throw ConsistencyError("expected p+1 neighbours at p = " + std::to_string(p) + ", found " +
                           std::to_string(out.size()));
  return out;
}

std::vector<Rational> gram_key(const QuatLattice& l) {
  QMatrix g = (Rational(1) / l.norm()) * gram_matrix(*l.algebra(), l.basis());
  return g.data();
}

}  // namespace

std::int64_t smallest_prime_not_dividing(std::int64_t n) {
  for (std::int64_t p = 2;; ++p)
    if (is_prime(p) && n % p != 0) return p;
}

QuatLattice maximal_order(const AlgebraPtr& alg) {
  const std::int64_t m1 = alg->discriminant();
  QuatLattice o = standard_order(alg);
  while (true) {
    Integer disc = order_discriminant(o);
    if (disc == m1) return o;
    Integer ratio = disc / m1;
    if (ratio * m1 != disc) throw ConsistencyError("order discriminant not divisible by the ramification");
    const std::int64_t p = prime_factors(ratio.get_si()).front();
    std::optional<QuatLattice> bigger;
    for_each_residue(p, [&](const std::array<std::int64_t, 4>& c) {
      QuatElement x = Rational(1, p) * combine(o.basis(), c);
      if (!is_integer(x.trd()) || !is_integer(alg->nrd(x))) return false;
      std::vector<QuatElement> gens(o.basis().begin(), o.basis().end());
      gens.push_back(x);
      try {
        bigger = multiplicative_closure(QuatLattice(alg, gens));
      } catch (const PreconditionError&) {
        return false;
      }
      return true;
    });
    if (!bigger) throw ConsistencyError("maximal order construction stalled at p = " + std::to_string(p));
    o = *bigger;
  }
}

EichlerOrder eichler_order(const AlgebraPtr& alg, std::int64_t m1, std::int64_t m2) {
  if (alg->discriminant() != m1) throw PreconditionError("ramification of the algebra does not match M1");
  if (m2 < 1 || !is_squarefree(m2) || gcd64(m1, m2) != 1)
    throw PreconditionError("M2 must be squarefree and coprime to M1");
  EichlerOrder e;
  e.maximal = maximal_order(alg);
  e.lattice = e.maximal;
  e.m1 = m1;
  e.m2 = m2;
  for (auto p : prime_factors(m2)) {
    std::optional<QuatLattice> ideal;
    for_each_residue(p, [&](const std::array<std::int64_t, 4>& c) {
      QuatElement x = combine(e.maximal.basis(), c);
      if (!is_integer(alg->nrd(x) / Rational(p))) return false;
      std::vector<QuatElement> gens;
      for (const auto& r : e.maximal.basis()) gens.push_back(alg->mul(x, r));
      for (const auto& r : e.maximal.basis()) gens.push_back(Rational(p) * r);
      ideal = QuatLattice(alg, gens);
      return true;
    });
    if (!ideal || ideal->norm() != p) throw ConsistencyError("no ideal of norm p found for the Eichler order");
    e.lattice = intersect(e.lattice, left_order(*ideal));
  }
  if (order_discriminant(e.lattice) != m1 * m2) throw ConsistencyError("Eichler order has the wrong discriminant");
  return e;
}

Rational eichler_mass(std::int64_t m1, std::int64_t m2) {
  Rational m(1, 24);
  for (auto p : prime_factors(m1)) m *= p - 1;
  for (auto p : prime_factors(m2)) m *= p + 1;
  return m;
}

int unit_count(const QuatLattice& order) { return static_cast<int>(theta_series(order, 1)[1]); }

Rational IdealClassSet::mass() const {
  Rational m = 0;
  for (int e : unit_orders) m += Rational(1, e);
  return m;
}

namespace {

std::optional<std::pair<std::size_t, QuatElement>> find_class(const std::vector<QuatLattice>& reps,
                                                              const std::vector<std::vector<std::int64_t>>& thetas,
                                                              const QuatLattice& ideal) {
  auto th = theta_series(ideal, kThetaFilterLength);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (thetas[k] != th) continue;
    if (auto g = lattice_isometry(ideal, reps[k])) return std::make_pair(k, *g);
  }
  return std::nullopt;
}

}  // namespace

IdealClassSet right_ideal_classes(const EichlerOrder& order, ClassEnumerationOptions opts) {
  const Rational target = eichler_mass(order.m1, order.m2);
  const std::int64_t p = smallest_prime_not_dividing(order.level());
  IdealClassSet cs;
  cs.order = order;
  auto add = [&](const QuatLattice& ideal) {
    cs.reps.push_back(ideal);
    cs.left_orders.push_back(left_order(ideal));
    cs.unit_orders.push_back(unit_count(cs.left_orders.back()));
    cs.theta.push_back(theta_series(ideal, kThetaFilterLength));
  };
  add(order.lattice);
  Rational mass = Rational(1, cs.unit_orders[0]);
  std::deque<std::size_t> queue{0};
  while (!queue.empty() && (!opts.stop_at_mass || mass < target)) {
    QuatLattice current = cs.reps[queue.front()];
    queue.pop_front();
    for (const auto& nb : p_neighbors(current, order.lattice, p)) {
      if (opts.stop_at_mass && mass >= target) break;
      if (find_class(cs.reps, cs.theta, nb)) continue;
      add(normalize_ideal(nb));
      mass += Rational(1, cs.unit_orders.back());
      queue.push_back(cs.reps.size() - 1);
    }
  }
  if (mass != target)
    throw ConsistencyError("class enumeration mass " + mass.get_str() + " differs from Eichler mass " +
                           target.get_str() + " at level " + std::to_string(order.level()));

  // Canonical order: the order itself first, then by theta series and Gram.
  std::vector<std::size_t> idx(cs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<Rational>> keys;
  for (const auto& r : cs.reps) keys.push_back(gram_key(r));
  std::sort(idx.begin() + 1, idx.end(), [&](std::size_t a, std::size_t b) {
    if (cs.theta[a] != cs.theta[b]) return cs.theta[a] < cs.theta[b];
    return keys[a] < keys[b];
  });
  IdealClassSet sorted;
  sorted.order = cs.order;
  for (auto k : idx) {
    sorted.reps.push_back(cs.reps[k]);
    sorted.left_orders.push_back(cs.left_orders[k]);
    sorted.unit_orders.push_back(cs.unit_orders[k]);
    sorted.theta.push_back(cs.theta[k]);
  }
  return sorted;
}

QuatLattice ideal_transporter(const IdealClassSet& classes, std::size_t i, std::size_t j) {
  const auto& ii = classes.reps.at(i);
  const auto& ij = classes.reps.at(j);
  QuatLattice t = scaled(Rational(1) / ij.norm(), ii * conjugate(ij));
  return t.with_scale(Rational(1) / t.norm());
}

std::pair<std::size_t, QuatElement> classify_ideal(const IdealClassSet& classes, const QuatLattice& ideal) {
  auto hit = find_class(classes.reps, classes.theta, ideal);
  if (!hit) throw ConsistencyError("ideal does not belong to any enumerated class");
  return *hit;
}

std::vector<ClassMapEntry> class_map(const IdealClassSet& small, const IdealClassSet& big) {
  if (!big.order.lattice.contains(small.order.lattice))
    throw PreconditionError("class_map: the small order is not contained in the big order");
  if (small.order.level() % big.order.level() != 0)
    throw PreconditionError("class_map: level of the big order must divide the small level");
  std::vector<ClassMapEntry> out;
  for (const auto& rep : small.reps) {
    QuatLattice extended = rep * big.order.lattice;
    auto [idx, gamma] = classify_ideal(big, extended);
    out.push_back({idx, gamma});
  }
  return out;
}

}  // namespace triplel
