#include "triplel/brandt.hpp"

#include "triplel/polyroots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

namespace triplel {

namespace {

template <class T>
std::array<T, 4> qmul(const Rational& a, const Rational& b, const std::array<T, 4>& x, const std::array<T, 4>& y) {
  const Rational ab = a * b;
  return {x[0] * y[0] + a * (x[1] * y[1]) + b * (x[2] * y[2]) - ab * (x[3] * y[3]),
          x[0] * y[1] + x[1] * y[0] - b * (x[2] * y[3]) + b * (x[3] * y[2]),
          x[0] * y[2] + x[2] * y[0] + a * (x[1] * y[3]) - a * (x[3] * y[1]),
          x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
}

std::vector<QuatElement> norm_one_elements(const QuatLattice& order) {
  NormalizedLattice nl(order);
  if (nl.norm() != 1) throw PreconditionError("norm_one_elements: lattice is not an order");
  std::vector<QuatElement> units;
  nl.form().for_each_half(2, [&](const std::vector<std::int64_t>& x, std::int64_t v) {
    if (v == 2) units.push_back(nl.element(x));
  });
  return units;
}

// Rows `rows` of m.
QMatrix select_rows(const QMatrix& m, const std::vector<std::size_t>& rows) {
  QMatrix out(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(rows[r], c);
  return out;
}

// Writes the block-i coordinates of the Gamma_i-invariant columns of `img`
// into rows of `dst` starting at (row0, col0); verifies invariance.
void place_block(const FormSpace& s, std::size_t i, const QMatrix& img, QMatrix& dst, std::size_t col0) {
  QMatrix coords = select_rows(img, s.free_rows(i));
  if (s.invariant_basis(i) * coords != img)
    throw ConsistencyError("image is not invariant under the left order units");
  const std::size_t row0 = s.block_offset(i);
  for (std::size_t r = 0; r < coords.rows(); ++r)
    for (std::size_t c = 0; c < coords.cols(); ++c) dst(row0 + r, col0 + c) = coords(r, c);
}

Rational rational_pow(const Rational& x, int e) {
  Rational r = 1;
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

}  // namespace

// --- FormSpace ---------------------------------------------------------------

FormSpace::FormSpace(ClassSetPtr classes, int nu)
    : classes_(std::move(classes)), nu_(nu), harmonics_(nu, classes_->order.algebra()->trace_zero_metric()) {
  const std::size_t u = harmonics_.dim();
  const std::size_t h = classes_->size();
  for (std::size_t i = 0; i < h; ++i) {
    if (nu_ == 0) {
      invariant_.push_back(QMatrix::identity(1));
      free_rows_.push_back({0});
    } else {
      auto units = norm_one_elements(classes_->left_orders[i]);
      QMatrix stacked(units.size() * u, u);
      for (std::size_t k = 0; k < units.size(); ++k) {
        QMatrix t = tau(units[k]) - QMatrix::identity(u);
        for (std::size_t r = 0; r < u; ++r)
          for (std::size_t c = 0; c < u; ++c) stacked(k * u + r, c) = t(r, c);
      }
      QMatrix work = stacked;
      auto pivots = rref(work);
      std::vector<std::size_t> free;
      for (std::size_t c = 0; c < u; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.push_back(c);
      auto kernel = nullspace(stacked);
      invariant_.push_back(from_columns(kernel, u));
      free_rows_.push_back(std::move(free));
    }
    offset_.push_back(dim_);
    dim_ += invariant_.back().cols();
  }
  gram_ = QMatrix(dim_, dim_);
  for (std::size_t i = 0; i < h; ++i) {
    const QMatrix& v = invariant_[i];
    QMatrix g = v.transpose() * harmonics_.gram() * v;
    Rational w(1, classes_->unit_orders[i]);
    for (std::size_t r = 0; r < v.cols(); ++r)
      for (std::size_t c = 0; c < v.cols(); ++c) gram_(offset_[i] + r, offset_[i] + c) = w * g(r, c);
  }
}

QMatrix FormSpace::tau(const QuatElement& gamma) const {
  const auto& alg = *algebra();
  return harmonics_.matrix_of([&](const MPoly& p) { return tau_action(alg, gamma, p); });
}

// --- tau as a polynomial in lattice coordinates ---------------------------

std::vector<QMatrix> tau_monomial_matrices(const QuaternionAlgebra& alg, const std::array<QuatElement, 4>& basis,
                                           const HarmonicSpace& u) {
  const int nu = u.degree();
  const auto exps = monomial_exponents(4, 2 * nu);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < exps.size(); ++k) index[exps[k]] = k;

  // Variables 0..3: lattice coordinates c; 4..6: trace-zero coordinates x.
  constexpr int nv = 7;
  std::array<MPoly, 4> v{MPoly(nv), MPoly(nv), MPoly(nv), MPoly(nv)};
  for (std::size_t t = 0; t < 4; ++t)
    for (int k = 0; k < 4; ++k) v[t] += basis[static_cast<std::size_t>(k)].c[t] * MPoly::variable(nv, k);
  std::array<MPoly, 4> vbar{v[0], Rational(-1) * v[1], Rational(-1) * v[2], Rational(-1) * v[3]};
  std::array<MPoly, 4> x{MPoly(nv), MPoly::variable(nv, 4), MPoly::variable(nv, 5), MPoly::variable(nv, 6)};
  auto y = qmul(alg.a_coef(), alg.b_coef(), qmul(alg.a_coef(), alg.b_coef(), vbar, x), v);

  std::array<std::vector<MPoly>, 3> powers;
  for (std::size_t k = 0; k < 3; ++k) {
    powers[k].push_back(MPoly::constant(nv, 1));
    for (int e = 1; e <= nu; ++e) powers[k].push_back(powers[k].back() * y[k + 1]);
  }

  const std::size_t d = u.dim();
  std::vector<QMatrix> out(exps.size(), QMatrix(d, d));
  for (std::size_t col = 0; col < d; ++col) {
    MPoly img(nv);
    for (const auto& [e, c] : u.basis()[col].terms()) {
      MPoly t = MPoly::constant(nv, c);
      for (std::size_t k = 0; k < 3; ++k)
        if (e[k]) t = t * powers[k][static_cast<std::size_t>(e[k])];
      img += t;
    }
    std::map<std::vector<int>, MPoly> by_c;
    for (const auto& [e, c] : img.terms()) {
      std::vector<int> ce(e.begin(), e.begin() + 4);
      MPoly::Exponent xe(e.begin() + 4, e.end());
      auto it = by_c.try_emplace(ce, 3).first;
      it->second.add_term(xe, c);
    }
    for (const auto& [ce, p] : by_c) {
      auto coords = u.coordinates(p);
      QMatrix& t = out.at(index.at(ce));
      for (std::size_t r = 0; r < d; ++r) t(r, col) = coords[r];
    }
  }
  return out;
}

// --- Brandt matrices ---------------------------------------------------------

BrandtEngine::BrandtEngine(FormSpacePtr space, std::int64_t nmax, std::vector<std::size_t> rows)
    : space_(std::move(space)), nmax_(nmax), rows_(std::move(rows)) {
  if (nmax_ < 1) throw PreconditionError("BrandtEngine: nmax must be positive");
  const auto& cs = space_->classes();
  const std::size_t h = cs.size();
  if (rows_.empty())
    for (std::size_t i = 0; i < h; ++i) rows_.push_back(i);
  row_slot_.assign(h, -1);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k] >= h) throw PreconditionError("BrandtEngine: row index out of range");
    row_slot_[rows_[k]] = static_cast<int>(k);
  }
  const int nu = space_->nu();
  for (auto i : rows_)
    for (std::size_t j = 0; j < h; ++j) {
      NormalizedLattice nl(ideal_transporter(cs, i, j));
      Pair pr;
      pr.moments = theta_moments(nl, 2 * nu, nmax_);
      pr.tau_terms = tau_monomial_matrices(*space_->algebra(), nl.basis(), space_->harmonics());
      Rational scale = Rational(1) / (Rational(cs.unit_orders[j]) * rational_pow(nl.norm(), nu));
      for (auto& t : pr.tau_terms) t = scale * t;
      pairs_.push_back(std::move(pr));
    }
}

const BrandtEngine::Pair& BrandtEngine::pair(std::size_t i, std::size_t j) const {
  if (i >= row_slot_.size() || row_slot_[i] < 0) throw PreconditionError("BrandtEngine: row not computed");
  return pairs_[static_cast<std::size_t>(row_slot_[i]) * space_->classes_count() + j];
}

QMatrix BrandtEngine::block(std::size_t i, std::size_t j, std::int64_t n) const {
  if (n < 1 || n > nmax_) throw PreconditionError("BrandtEngine: n outside the computed range");
  const Pair& pr = pair(i, j);
  const std::size_t d = space_->harmonics().dim();
  QMatrix b(d, d);
  const std::int64_t* s = pr.moments.at(n);
  for (std::size_t a = 0; a < pr.tau_terms.size(); ++a) {
    if (s[a] == 0) continue;
    const QMatrix& t = pr.tau_terms[a];
    Rational sa(s[a]);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (t(r, c) != 0) b(r, c) += sa * t(r, c);
  }
  return b;
}

BrandtMatrix BrandtEngine::brandt_matrix(std::int64_t n) const {
  BrandtMatrix m;
  m.n = n;
  m.nu = space_->nu();
  m.h = space_->classes_count();
  for (std::size_t i = 0; i < m.h; ++i)
    for (std::size_t j = 0; j < m.h; ++j) m.blocks.push_back(block(i, j, n));
  return m;
}

QMatrix BrandtEngine::matrix(std::int64_t n) const {
  const FormSpace& s = *space_;
  QMatrix out(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.classes_count(); ++i)
    for (std::size_t j = 0; j < s.classes_count(); ++j) {
      if (s.block_dim(i) == 0 || s.block_dim(j) == 0) continue;
      place_block(s, i, block(i, j, n) * s.invariant_basis(j), out, s.block_offset(j));
    }
  return out;
}

BrandtMatrix brandt_matrix(const FormSpacePtr& space, std::int64_t n) {
  return BrandtEngine(space, n).brandt_matrix(n);
}

// --- Atkin-Lehner and pullbacks -----------------------------------------

ALInvolution atkin_lehner_involution(const IdealClassSet& classes, std::int64_t p) {
  const std::int64_t level = classes.order.level();
  if (!is_prime(p) || level % p != 0) throw PreconditionError("atkin_lehner_involution: p must be a prime dividing the level");
  const QuatLattice& r = classes.order.lattice;
  QuatLattice ideal = intersect(r, scaled(Rational(p), dual(r)));
  if (ideal.norm() != p || left_order(ideal) != r || right_order(ideal) != r)
    throw ConsistencyError("atkin_lehner_involution: no two-sided ideal of norm p");
  ALInvolution w;
  w.p = p;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto [k, gamma] = classify_ideal(classes, classes.reps[i] * ideal);
    w.target.push_back(k);
    w.twist.push_back(gamma);
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (w.target[w.target[i]] != i) throw ConsistencyError("atkin_lehner_involution: not an involution");
  return w;
}

QMatrix atkin_lehner_matrix(const FormSpace& space, const ALInvolution& w) {
  QMatrix out(space.dim(), space.dim());
  for (std::size_t i = 0; i < space.classes_count(); ++i) {
    std::size_t k = w.target[i];
    if (space.block_dim(i) == 0) continue;
    place_block(space, i, space.tau(w.twist[i]) * space.invariant_basis(k), out, space.block_offset(k));
  }
  return out;
}

QMatrix pullback_matrix(const FormSpace& fine, const FormSpace& coarse) {
  if (fine.nu() != coarse.nu() || !(*fine.algebra() == *coarse.algebra()))
    throw PreconditionError("pullback_matrix: spaces must share algebra and weight");
  auto cm = class_map(fine.classes(), coarse.classes());
  QMatrix out(fine.dim(), coarse.dim());
  for (std::size_t i = 0; i < fine.classes_count(); ++i) {
    if (fine.block_dim(i) == 0) continue;
    const auto& entry = cm[i];
    place_block(fine, i, fine.tau(entry.gamma) * coarse.invariant_basis(entry.index), out,
                coarse.block_offset(entry.index));
  }
  return out;
}

// --- eigenforms ----------------------------------------------------------------

std::vector<double> QuatEigenform::value(std::size_t i) const { return space->value(normalized, i); }

std::vector<QuadNum> QuatEigenform::exact_value(std::size_t i) const {
  if (!exact) throw PreconditionError("exact_value: eigenform is only known numerically");
  return space->value(coords, i);
}

namespace {

struct RawEigenvector {
  bool exact = true;
  std::vector<QuadNum> v;
  std::vector<double> approx;
};

std::optional<std::vector<RawEigenvector>> decompose(const QMatrix& m, const QMatrix& gram) {
  const std::size_t d = m.rows();
  auto cp = charpoly(m);
  auto fac = factor_low_degree(cp);
  std::vector<RawEigenvector> out;
  for (const auto& r : fac.linear_roots) {
    auto ns = nullspace(m - r * QMatrix::identity(d));
    if (ns.size() != 1) return std::nullopt;
    RawEigenvector e;
    for (const auto& x : ns[0]) e.v.emplace_back(x);
    out.push_back(std::move(e));
  }
  for (const auto& [u, v] : fac.quadratics) {
    for (const auto& lambda : quadratic_roots(u, v)) {
      Matrix<QuadNum> mq = to_quad(m);
      for (std::size_t i = 0; i < d; ++i) mq(i, i) -= lambda;
      auto ns = nullspace(mq);
      if (ns.size() != 1) return std::nullopt;
      RawEigenvector e;
      e.v = ns[0];
      out.push_back(std::move(e));
    }
  }
  if (fac.remainder.size() > 1) {
    auto roots = numeric_roots(fac.remainder);
    for (std::size_t a = 0; a < roots.size(); ++a) {
      if (std::abs(roots[a].imag()) > 1e-8) return std::nullopt;
      for (std::size_t b = a + 1; b < roots.size(); ++b)
        if (std::abs(roots[a] - roots[b]) < 1e-6) return std::nullopt;
    }
    Eigen::MatrixXd s(static_cast<long>(d), static_cast<long>(d)), g(static_cast<long>(d), static_cast<long>(d));
    QMatrix gm = gram * m;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        s(static_cast<long>(i), static_cast<long>(j)) = gm(i, j).get_d();
        g(static_cast<long>(i), static_cast<long>(j)) = gram(i, j).get_d();
      }
    s = (s + s.transpose()) / 2;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(s, g);
    for (const auto& root : roots) {
      long best = -1;
      double bestd = 1e300;
      for (long k = 0; k < static_cast<long>(d); ++k) {
        double dist = std::abs(es.eigenvalues()(k) - root.real());
        if (dist < bestd) {
          bestd = dist;
          best = k;
        }
      }
      if (bestd > 1e-6 * std::max(1.0, std::abs(root.real()))) return std::nullopt;
      RawEigenvector e;
      e.exact = false;
      for (long k = 0; k < static_cast<long>(d); ++k) e.approx.push_back(es.eigenvectors()(k, best));
      out.push_back(std::move(e));
    }
  }
  if (out.size() != d) return std::nullopt;
  return out;
}

template <class T>
std::vector<T> mat_vec(const QMatrix& m, const std::vector<T>& v) {
  std::vector<T> out(m.rows(), T(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out[i] += from_rational<T>(m(i, j)) * v[j];
  return out;
}

QuadNum exact_eigenvalue(const QMatrix& m, const std::vector<QuadNum>& v) {
  auto mv = mat_vec(m, v);
  std::size_t k = 0;
  while (v[k].is_zero()) ++k;
  QuadNum lambda = mv[k] / v[k];
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mv[i] != lambda * v[i]) throw ConsistencyError("eigenforms: vector is not a common eigenvector");
  return lambda;
}

double approx_eigenvalue(const QMatrix& m, const std::vector<double>& v) {
  auto mv = mat_vec(m, v);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += mv[i] * v[i];
    den += v[i] * v[i];
  }
  double lambda = num / den;
  double res = 0;
  for (std::size_t i = 0; i < v.size(); ++i) res = std::max(res, std::abs(mv[i] - lambda * v[i]));
  if (res > 1e-6 * std::max(1.0, std::abs(lambda)) * std::sqrt(den))
    throw ConsistencyError("eigenforms: vector is not a common eigenvector");
  return lambda;
}

}  // namespace

std::vector<QuatEigenform> eigenforms(const FormSpacePtr& space, const EigenformOptions& opts) {
  const std::size_t d = space->dim();
  if (d == 0) return {};
  const std::int64_t level = space->level();
  std::vector<std::int64_t> pool;
  for (auto p : primes_up_to(100))
    if (level % p != 0) pool.push_back(p);
  std::vector<std::int64_t> primes = opts.primes_used;
  for (auto p : primes)
    if (level % p == 0 || !is_prime(p)) throw PreconditionError("eigenforms: primes_used must be good primes");
  for (std::size_t k = 0; primes.size() < 3 && k < pool.size(); ++k)
    if (std::find(primes.begin(), primes.end(), pool[k]) == primes.end()) primes.push_back(pool[k]);

  std::map<std::int64_t, QMatrix> hecke_mats;
  auto refresh_hecke = [&] {
    std::int64_t pmax = *std::max_element(primes.begin(), primes.end());
    bool missing = false;
    for (auto p : primes) missing |= !hecke_mats.count(p);
    if (!missing) return;
    BrandtEngine engine(space, pmax);
    for (auto p : primes)
      if (!hecke_mats.count(p)) hecke_mats[p] = engine.matrix(p);
  };
  std::map<std::int64_t, QMatrix> al_mats;
  for (auto q : prime_factors(level))
    al_mats[q] = atkin_lehner_matrix(*space, atkin_lehner_involution(space->classes(), q));

  std::mt19937 rng(20240601u);
  std::uniform_int_distribution<int> coef(-9, 9);
  std::optional<std::vector<RawEigenvector>> raw;
  for (int attempt = 0; !raw; ++attempt) {
    if (attempt > 0 && attempt % 3 == 0) {
      auto next = std::find_if(pool.begin(), pool.end(), [&](std::int64_t p) {
        return std::find(primes.begin(), primes.end(), p) == primes.end();
      });
      if (next == pool.end()) throw ConsistencyError("eigenforms: needs more primes to separate eigenspaces");
      primes.push_back(*next);
    }
    refresh_hecke();
    QMatrix m(d, d);
    auto pick = [&] {
      int c = 0;
      while (c == 0) c = coef(rng);
      return Rational(c);
    };
    for (auto p : primes) m = m + pick() * hecke_mats.at(p);
    for (const auto& [q, w] : al_mats) m = m + pick() * w;
    raw = decompose(m, space->gram());
  }

  // Old spaces at p | M2 from the order of level M1 * M2 / p.
  std::map<std::int64_t, std::vector<std::vector<Rational>>> old_vectors;
  if (opts.essential_test) {
    const auto& ord = space->classes().order;
    for (auto p : prime_factors(ord.m2)) {
      auto coarse_order = eichler_order(space->algebra(), ord.m1, ord.m2 / p);
      auto coarse_classes = std::make_shared<const IdealClassSet>(right_ideal_classes(coarse_order));
      FormSpace coarse(coarse_classes, space->nu());
      QMatrix pb = pullback_matrix(*space, coarse);
      QMatrix wpb = al_mats.at(p) * pb;
      auto& vecs = old_vectors[p];
      for (std::size_t c = 0; c < pb.cols(); ++c) {
        vecs.push_back(pb.col(c));
        vecs.push_back(wpb.col(c));
      }
    }
  }

  std::vector<QuatEigenform> forms;
  for (auto& r : *raw) {
    QuatEigenform f;
    f.space = space;
    f.exact = r.exact;
    std::vector<double> approx;
    if (r.exact) {
      std::size_t k = 0;
      while (r.v[k].is_zero()) ++k;
      QuadNum lead = r.v[k];
      for (auto& x : r.v) x /= lead;
      f.coords = r.v;
      f.field = 1;
      for (const auto& x : f.coords)
        if (!x.is_rational()) f.field = x.field();
      f.norm_sq = space->inner(f.coords, f.coords);
      f.norm_sq_approx = f.norm_sq.to_double();
      for (const auto& x : f.coords) approx.push_back(x.to_double());
      for (const auto& [p, m] : hecke_mats) {
        f.hecke_exact[p] = exact_eigenvalue(m, f.coords);
        f.hecke[p] = f.hecke_exact[p].to_double();
      }
      for (const auto& [q, w] : al_mats) {
        QuadNum e = exact_eigenvalue(w, f.coords);
        if (e != QuadNum(1) && e != QuadNum(-1)) throw ConsistencyError("eigenforms: w_p eigenvalue is not +-1");
        f.atkin_lehner[q] = e == QuadNum(1) ? 1 : -1;
      }
      if (space->nu() == 0)
        f.constant = std::all_of(f.coords.begin(), f.coords.end(), [&](const QuadNum& x) { return x == f.coords[0]; });
      for (const auto& [p, vecs] : old_vectors)
        for (const auto& v : vecs) {
          std::vector<QuadNum> vq(v.begin(), v.end());
          if (!space->inner(f.coords, vq).is_zero()) {
            f.old_at.push_back(p);
            break;
          }
        }
    } else {
      f.field = 0;
      approx = r.approx;
      double scale = 0;
      for (double x : approx) scale = std::abs(x) > std::abs(scale) ? x : scale;
      for (double& x : approx) x /= scale;
      f.norm_sq_approx = space->inner(approx, approx);
      for (const auto& [p, m] : hecke_mats) f.hecke[p] = approx_eigenvalue(m, approx);
      for (const auto& [q, w] : al_mats) {
        double e = approx_eigenvalue(w, approx);
        if (std::abs(std::abs(e) - 1) > 1e-6) throw ConsistencyError("eigenforms: w_p eigenvalue is not +-1");
        f.atkin_lehner[q] = e > 0 ? 1 : -1;
      }
      if (space->nu() == 0) {
        f.constant = true;
        for (double x : approx) f.constant &= std::abs(x - approx[0]) < 1e-9;
      }
      for (const auto& [p, vecs] : old_vectors)
        for (const auto& v : vecs) {
          std::vector<double> vd;
          double vn = 0;
          for (const auto& x : v) {
            vd.push_back(x.get_d());
            vn += vd.back() * vd.back();
          }
          if (std::abs(space->inner(approx, vd)) > 1e-8 * std::sqrt(vn * f.norm_sq_approx)) {
            f.old_at.push_back(p);
            break;
          }
        }
    }
    double s = std::sqrt(f.norm_sq_approx);
    for (double x : approx) f.normalized.push_back(x / s);
    forms.push_back(std::move(f));
  }
  std::stable_sort(forms.begin(), forms.end(), [](const QuatEigenform& a, const QuatEigenform& b) {
    if (a.constant != b.constant) return a.constant;
    for (const auto& [p, x] : a.hecke) {
      double y = b.hecke.at(p);
      if (std::abs(x - y) > 1e-9) return x < y;
    }
    return a.atkin_lehner < b.atkin_lehner;
  });
  return forms;
}

// --- Eichler correspondence --------------------------------------------------

int epsilon_from_quaternionic(int w, bool ramified) { return ramified ? -w : w; }

namespace {

template <class T>
std::vector<T> hecke_ap(const QuatEigenform& form, std::int64_t nmax, const std::vector<T>& coords) {
  const FormSpace& s = *form.space;
  const std::int64_t level = s.level();
  const int nu = s.nu();
  // The class and coordinate where |phi| is largest.
  std::size_t i0 = 0, r0 = 0;
  double best = -1;
  for (std::size_t i = 0; i < s.classes_count(); ++i) {
    auto v = form.value(i);
    for (std::size_t r = 0; r < v.size(); ++r)
      if (std::abs(v[r]) > best) {
        best = std::abs(v[r]);
        i0 = i;
        r0 = r;
      }
  }
  const auto phi0 = s.value(coords, i0);
  BrandtEngine engine(form.space, std::max<std::int64_t>(nmax, 1), {i0});
  const auto& ramified = s.algebra()->ramified_finite();
  std::vector<T> ap(static_cast<std::size_t>(nmax + 1), T(0));
  for (auto p : primes_up_to(nmax)) {
    if (level % p == 0) {
      bool ram = std::find(ramified.begin(), ramified.end(), p) != ramified.end();
      int eps = epsilon_from_quaternionic(form.atkin_lehner.at(p), ram);
      ap[static_cast<std::size_t>(p)] = from_rational<T>(Rational(-eps) * rational_pow(Rational(p), nu));
      continue;
    }
    auto y = engine.apply_at(i0, p, coords);
    T lambda = y[r0] / phi0[r0];
    ap[static_cast<std::size_t>(p)] = lambda;
  }
  return ap;
}

}  // namespace

NewformData newform_coeffs(const QuatEigenform& form, std::int64_t nmax) {
  if (!form.cuspidal()) throw PreconditionError("newform_coeffs: form is not cuspidal");
  const FormSpace& s = *form.space;
  NewformData nf;
  nf.level = s.level();
  nf.weight = 2 + 2 * s.nu();
  nf.field = form.field;
  if (form.exact) {
    auto ap = hecke_ap(form, nmax, form.coords);
    auto a = extend_multiplicative(ap, nf.level, nf.weight);
    for (const auto& x : a) nf.coeffs.push_back(x.to_double());
    nf.exact = std::move(a);
  } else {
    auto ap = hecke_ap(form, nmax, form.normalized);
    nf.coeffs = extend_multiplicative(ap, nf.level, nf.weight);
  }
  const auto& ramified = s.algebra()->ramified_finite();
  for (auto p : prime_factors(nf.level)) {
    bool ram = std::find(ramified.begin(), ramified.end(), p) != ramified.end();
    nf.al_eigen[p] = epsilon_from_quaternionic(form.atkin_lehner.at(p), ram);
  }
  validate_newform(nf, 1e-6);
  return nf;
}

std::vector<QuadNum> yoshida_lift0(const QuatEigenform& form, std::int64_t q_prec) {
  const FormSpace& s = *form.space;
  if (s.nu() != 0) throw PreconditionError("yoshida_lift0: only weight 2");
  if (!form.exact) throw PreconditionError("yoshida_lift0: needs an exact eigenform");
  const auto& cs = s.classes();
  const std::size_t h = cs.size();
  std::vector<QuadNum> out(static_cast<std::size_t>(q_prec + 1), QuadNum(0));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      QuadNum w = form.coords[i] * form.coords[j] /
                  QuadNum(Rational(cs.unit_orders[i]) * Rational(cs.unit_orders[j]));
      if (w.is_zero()) continue;
      auto theta = theta_series(ideal_transporter(cs, i, j), q_prec);
      for (std::int64_t n = 0; n <= q_prec; ++n)
        if (theta[static_cast<std::size_t>(n)]) out[static_cast<std::size_t>(n)] += w * QuadNum(theta[static_cast<std::size_t>(n)]);
    }
  if (q_prec < 1 || out[1].is_zero()) throw ConsistencyError("yoshida_lift0: lift has vanishing first coefficient");
  QuadNum c1 = out[1];
  for (auto& x : out) x /= c1;
  return out;
}

}  // namespace triplel
