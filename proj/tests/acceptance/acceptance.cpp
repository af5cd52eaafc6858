// Acceptance criteria 1-10: one PASS/FAIL line each.
// Usage: triplel_acceptance [criterion numbers...]

#include "triplel/central.hpp"
#include "triplel_cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace triplel;

namespace {

class Outcome {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool pass() const { return failed_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream o;
    o << checks_ - failed_ << "/" << checks_ << " checks";
    for (const auto& n : notes_) o << "; " << n;
    for (const auto& f : failures_) o << "; failed: " << f;
    return o.str();
  }

 private:
  long checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_, notes_;
};

std::string fmt(double x, const char* spec = "%.3e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

Rational mass_oracle(std::int64_t m1, std::int64_t m2) {
  Rational m(1, 24);
  for (auto p : prime_factors(m1)) m *= p - 1;
  for (auto p : prime_factors(m2)) m *= p + 1;
  return m;
}

std::vector<std::int64_t> divisors_of(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

FormSpacePtr space_for(std::int64_t m1, std::int64_t m2, int nu) {
  auto cs = std::make_shared<const IdealClassSet>(right_ideal_classes(eichler_order(make_algebra(m1), m1, m2)));
  return std::make_shared<const FormSpace>(cs, nu);
}

std::vector<long> eta_11(long nmax) {
  std::vector<long> s(static_cast<std::size_t>(nmax + 1), 0);
  s[1] = 1;
  auto mul_factor = [&](long step) {
    for (long k = nmax; k >= step; --k) s[static_cast<std::size_t>(k)] -= s[static_cast<std::size_t>(k - step)];
  };
  for (long n = 1; n <= nmax; ++n) {
    mul_factor(n);
    mul_factor(n);
    if (11 * n <= nmax) {
      mul_factor(11 * n);
      mul_factor(11 * n);
    }
  }
  return s;
}

// Newforms by label, regenerated with more coefficients on demand.
class Forms {
 public:
  NewformData get(const std::string& label, std::int64_t nmax) {
    long long level = 0;
    int weight = 0;
    long index = 0;
    std::sscanf(label.c_str(), "%lld.%d.%ld", &level, &weight, &index);
    auto& slot = table_[{level, weight}];
    if (slot.empty() || slot.front().nmax() < nmax) slot = enumerate_newforms(level, weight, nmax);
    return slot.at(static_cast<std::size_t>(index - 1));
  }

  TripleL triple(const std::array<std::string, 3>& l, std::int64_t nmax) {
    return make_triple(get(l[0], nmax), get(l[1], nmax), get(l[2], nmax));
  }

  /// Enough coefficients for the FE check at the offsets and for the central value.
  TripleL full(const std::array<std::string, 3>& l, const std::vector<cplx>& offsets) {
    auto probe = triple(l, 64);
    std::int64_t need = central_terms(probe);
    const cplx kappa(probe.center(), 0);
    for (auto o : offsets)
      need = std::max({need, lambda_terms(probe, kappa + o, 1e-10), lambda_terms(probe, kappa - o, 1e-10)});
    return triple(l, (need + 999) / 1000 * 1000);
  }

 private:
  std::map<std::pair<long long, int>, std::vector<NewformData>> table_;
};

Forms& forms() {
  static Forms f;
  return f;
}

const std::vector<cplx> kOffsets{{0.1, 0}, {0.3, 0}, {0.7, 0}, {0, 0.2}};
const std::array<std::string, 3> kT111{"11.2.1", "11.2.1", "11.2.1"};
const std::array<std::string, 3> kT113{"11.2.1", "11.2.1", "33.2.1"};

// 1
Outcome mass_certification() {
  Outcome out;
  for (std::int64_t m = 2; m <= 11; ++m) {
    if (!is_squarefree(m)) continue;
    for (auto m1 : divisors_of(m)) {
      if (omega(m1) % 2 == 0) continue;
      auto cs = right_ideal_classes(eichler_order(make_algebra(m1), m1, m / m1), {.stop_at_mass = false});
      out.expect(cs.mass() == mass_oracle(m1, m / m1), "exhaustive mass at M1=" + std::to_string(m1) + ", M=" + std::to_string(m));
    }
  }
  int cases = 0;
  for (std::int64_t n = 2; n <= 50; ++n) {
    if (!is_squarefree(n)) continue;
    for (auto m1 : divisors_of(n)) {
      if (omega(m1) % 2 == 0) continue;
      auto cs = right_ideal_classes(eichler_order(make_algebra(m1), m1, n / m1));
      Rational sum = 0;
      for (int e : cs.unit_orders) sum += Rational(1, e);
      out.expect(sum == mass_oracle(m1, n / m1), "mass at M1=" + std::to_string(m1) + ", N=" + std::to_string(n));
      ++cases;
    }
  }
  out.note(std::to_string(cases) + " (M1, M2) pairs");
  return out;
}

// 2
Outcome brandt_suite() {
  Outcome out;
  const std::vector<std::pair<std::int64_t, std::int64_t>> levels{{2, 1}, {11, 1}, {3, 11}, {2, 7}, {3, 5}};
  constexpr std::int64_t kMax = 400;
  for (auto [m1, m2] : levels)
    for (int nu : {0, 1}) {
      const std::string tag = " (M1=" + std::to_string(m1) + ", M2=" + std::to_string(m2) + ", nu=" + std::to_string(nu) + ")";
      auto s = space_for(m1, m2, nu);
      const std::int64_t level = m1 * m2;
      BrandtEngine eng(s, kMax);
      std::map<std::int64_t, QMatrix> b;
      auto B = [&](std::int64_t n) -> const QMatrix& {
        auto it = b.find(n);
        if (it == b.end()) it = b.emplace(n, eng.matrix(n)).first;
        return it->second;
      };
      const QMatrix id = QMatrix::identity(s->dim());
      out.expect(B(1) == id, "B(1) = I" + tag);
      for (std::int64_t m = 1; m <= 20; ++m)
        for (std::int64_t n = m + 1; n <= 20; ++n) {
          out.expect(B(m) * B(n) == B(n) * B(m), "commutativity " + std::to_string(m) + "," + std::to_string(n) + tag);
          if (gcd64(m, n) == 1)
            out.expect(B(m) * B(n) == B(m * n), "multiplicativity " + std::to_string(m) + "," + std::to_string(n) + tag);
        }
      for (std::int64_t p : {2, 3}) {
        Rational c = 1;
        for (int k = 0; k < 2 * nu + 1; ++k) c *= p;
        std::int64_t pl = p;
        while (pl * p <= kMax) {
          if (level % p != 0)
            out.expect(B(p) * B(pl) == B(pl * p) + c * (pl == p ? id : B(pl / p)),
                       "Hecke recursion at " + std::to_string(pl * p) + tag);
          else
            out.expect(B(p) * B(pl) == B(pl * p), "U_p power at " + std::to_string(pl * p) + tag);
          pl *= p;
        }
        if (nu == 0 && level % p != 0)
          for (std::size_t i = 0; i < B(p).rows(); ++i) {
            Rational sum = 0;
            for (std::size_t j = 0; j < B(p).cols(); ++j) sum += B(p)(i, j);
            out.expect(sum == p + 1, "row sum at p=" + std::to_string(p) + tag);
          }
      }
      const QMatrix& hg = s->harmonics().gram();
      const QMatrix hinv = inverse(hg);
      const auto& e = s->classes().unit_orders;
      for (std::int64_t n = 1; n <= 20; ++n) {
        auto raw = eng.brandt_matrix(n);
        for (std::size_t i = 0; i < raw.h; ++i)
          for (std::size_t j = 0; j < raw.h; ++j)
            out.expect(Rational(e[j]) * raw.block(i, j) == hinv * (Rational(e[i]) * raw.block(j, i)).transpose() * hg,
                       "e-weighted adjointness n=" + std::to_string(n) + tag);
      }
    }
  return out;
}

// 3
Outcome eichler_oracle() {
  Outcome out;
  auto s = space_for(11, 1, 0);
  auto eta = eta_11(100);
  BrandtEngine eng(s, 100);
  int cusp = 0;
  for (const auto& f : eigenforms(s)) {
    if (f.constant) continue;
    ++cusp;
    for (auto p : primes_up_to(100)) {
      QMatrix bp = eng.matrix(p);
      for (std::size_t r = 0; r < bp.rows(); ++r) {
        QuadNum y = 0;
        for (std::size_t c = 0; c < bp.cols(); ++c) y += QuadNum(bp(r, c)) * f.coords[c];
        out.expect(y == QuadNum(eta[static_cast<std::size_t>(p)]) * f.coords[r], "B(" + std::to_string(p) + ") eigenvalue");
      }
    }
    auto nf = newform_coeffs(f, 100);
    for (long n = 1; n <= 100; ++n)
      out.expect(nf.exact && (*nf.exact)[static_cast<std::size_t>(n)] == QuadNum(eta[static_cast<std::size_t>(n)]),
                 "a(" + std::to_string(n) + ")");
    auto lift = yoshida_lift0(f, 49);
    out.expect(lift[0].is_zero(), "lift constant term");
    for (long n = 1; n <= 49; ++n)
      out.expect(lift[static_cast<std::size_t>(n)] == QuadNum(eta[static_cast<std::size_t>(n)]), "lift q^" + std::to_string(n));
  }
  out.expect(cusp == 1, "one cusp form at level 11");
  return out;
}

// 4
Outcome euler_structure() {
  Outcome out;
  auto t111 = forms().triple(kT111, 600);
  auto t113 = forms().triple(kT113, 600);
  auto t133 = forms().triple({"11.2.1", "33.2.1", "33.2.1"}, 600);
  out.expect(local_factor(11, t111).kind == LocalCase::IA && local_factor(11, t111).degree() == 3, "IA degree 3");
  out.expect(local_factor(3, t133).kind == LocalCase::IB && local_factor(3, t133).degree() == 4, "IB degree 4");
  out.expect(local_factor(3, t113).kind == LocalCase::IC && local_factor(3, t113).degree() == 4, "IC degree 4");
  for (const TripleL* t : {&t111, &t113, &t133}) {
    for (auto p : primes_up_to(500)) {
      if (t->level % p == 0) continue;
      auto lf = local_factor(p, *t);
      out.expect(lf.kind == LocalCase::ID && lf.degree() == 8, "ID degree 8");
      QuadNum prod = 1;
      for (const auto& f : t->forms) prod *= (*f.exact)[static_cast<std::size_t>(p)];
      out.expect(lf.exact && (*lf.exact)[1] == -prod, "b(p) = a_f a_phi a_psi (p) at p=" + std::to_string(p));
    }
    auto b = dirichlet_coeffs_exact(*t, 500);
    out.expect(b.has_value(), "exact coefficients");
    if (!b) continue;
    for (std::int64_t m = 2; m <= 500; ++m)
      for (std::int64_t n = m + 1; m * n <= 500; ++n)
        if (gcd64(m, n) == 1)
          out.expect((*b)[m * n] == (*b)[m] * (*b)[n], "b multiplicative at " + std::to_string(m) + "*" + std::to_string(n));
  }
  return out;
}

// 5
Outcome functional_equation() {
  Outcome out;
  for (const auto& l : {kT111, kT113}) {
    auto start = std::chrono::steady_clock::now();
    auto t = forms().full(l, kOffsets);
    auto rep = check_fe(t, kOffsets, true);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.expect(rep.max_residual < 1e-6, t.label() + " residual " + fmt(rep.max_residual));
    out.expect(rep.nominal_is_best, t.label() + " an alternative conductor fits better");
    out.expect(secs < 600, t.label() + " runtime");
    out.note(t.label() + " max residual " + fmt(rep.max_residual) + " in " + fmt(secs, "%.0f") + " s");
  }
  return out;
}

// 6
Outcome central_weight2() {
  Outcome out;
  for (const auto& l : {kT111, kT113}) {
    auto start = std::chrono::steady_clock::now();
    auto t = forms().full(l, kOffsets);
    auto r = central_value(t);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& p : r.petersson) out.expect(p.rel_diff < 1e-6, "Petersson methods agree");
    out.expect(r.calibration == 1 && !r.calibrated, "parameter-free");
    out.expect(r.rel_diff <= 1e-4, t.label() + " formula " + fmt(r.central_value, "%.10g") + " vs AFE " +
                                       fmt(r.afe_value, "%.10g"));
    out.expect(secs < 1200, t.label() + " runtime");
    out.note(t.label() + " formula/AFE = " + fmt(r.central_value / r.afe_value, "%.10f") + ", height^2 = " +
             (r.height.square_exact ? r.height.square_exact->str() : fmt(r.height.square)));
  }
  return out;
}

// 7
Outcome vanishing_coherence() {
  Outcome out;
  const std::vector<std::array<std::string, 3>> triples{
      kT111, kT113, {"11.4.1", "11.4.2", "11.2.1"}, {"11.4.1", "11.4.1", "11.2.1"}, {"11.4.2", "11.4.2", "11.2.1"},
      {"11.4.1", "11.4.1", "11.4.1"}, {"11.4.1", "11.4.1", "11.4.2"}, {"11.4.1", "11.4.2", "11.4.2"},
      {"11.4.2", "11.4.2", "11.4.2"}};
  int fired = 0;
  for (const auto& l : triples) {
    auto t = forms().full(l, kOffsets);
    auto d = select_decomposition(t);
    auto sc = sign_and_conductor(t);
    if (!d.zero && sc.w == 1) continue;
    ++fired;
    auto fe = check_fe(t, kOffsets);
    auto v = lambda_value(t, cplx(t.center(), 0));
    const double rel = std::abs(v.completed) / fe.scale;
    auto r = central_value(t);
    const bool small = rel < 1e-6;
    out.expect(small || !r.findings.empty(), t.label() + " nonvanishing without a finding");
    out.note(t.label() + (d.zero ? " zero certificate" : "") + (sc.w == -1 ? " w=-1" : "") + ", |Lambda*(kappa)|/scale " +
             fmt(rel));
  }
  out.expect(fired > 0, "no triple exercised the vanishing conditions");
  return out;
}

MPoly var(int k) { return MPoly::variable(3, k); }

// 8
Outcome harmonics_suite() {
  Outcome out;
  std::mt19937 rng(8);
  auto rnd = [&] {
    std::uniform_int_distribution<long> n(-7, 7), d(1, 4);
    return make_rational(n(rng), d(rng));
  };
  auto random_harmonic = [&](const HarmonicSpace& u) {
    std::vector<Rational> c(u.dim());
    for (auto& v : c) v = rnd();
    return u.element(c);
  };
  for (std::int64_t m1 : {1, 11}) {
    const QMatrix metric = m1 == 1 ? QMatrix::identity(3) : make_algebra(m1)->trace_zero_metric();
    for (int nu = 0; nu <= 4; ++nu) {
      HarmonicSpace u(nu, metric);
      for (const auto& b : u.basis()) out.expect(laplacian(b, metric).is_zero(), "basis is harmonic");
      for (int k = 0; k < 5; ++k) {
        std::vector<Rational> xp{rnd(), rnd(), rnd()};
        MPoly kern = reproducing_kernel(nu, xp, metric);
        out.expect(laplacian(kern, metric).is_zero(), "kernel is harmonic");
        for (const auto& q : u.basis()) out.expect(inner_product(kern, q, metric) == q.evaluate(xp), "reproducing property");
      }
    }
  }
  for (int n1 = 0; n1 <= 3; ++n1)
    for (int n2 = 0; n2 <= 3; ++n2)
      for (int n3 = 0; n3 <= 3; ++n3) {
        HarmonicSpace u1(n1), u2(n2), u3(n3);
        Rational t = trilinear_T0(random_harmonic(u1), random_harmonic(u2), random_harmonic(u3));
        if (n3 > n1 + n2 || n3 < std::abs(n1 - n2)) out.expect(t == 0, "selection rule");
      }
  auto alg = make_algebra(11);
  const QMatrix metric = alg->trace_zero_metric();
  HarmonicSpace u1(1, metric), u2(2, metric);
  for (int k = 0; k < 20; ++k) {
    QuatElement g{rnd(), rnd(), rnd(), rnd()};
    if (g.is_zero()) g = QuatElement{1, 0, 0, 0};
    auto p = random_harmonic(u2), r1 = random_harmonic(u1), r2 = random_harmonic(u1);
    out.expect(laplacian(tau_action(*alg, g, p), metric).is_zero(), "tau preserves harmonicity");
    out.expect(trilinear_T0(tau_action(*alg, g, r1), tau_action(*alg, g, r2), tau_action(*alg, g, p), metric) ==
                   trilinear_T0(r1, r2, p, metric),
               "T0 tau-invariance");
  }
  for (int k = 0; k < 10; ++k) {
    int k3 = 2 * (1 + static_cast<int>(rng() % 4)), k2 = k3 + 2 * static_cast<int>(rng() % 3);
    int k1 = k2 + 2 * static_cast<int>(rng() % static_cast<unsigned>(k3 / 2));
    out.expect(c_factor(WeightProfile::from_weights(k1, k2, k3), Rational(0)) == 1, "c_r(0) = 1");
  }
  auto one = MPoly::constant(3, 1);
  out.expect(trilinear_T0(var(0), var(0), one) == Rational(1, 3), "T0(x1, x1, 1) = 1/3");
  return out;
}

// 9
Outcome mixed_weight() {
  Outcome out;
  std::ostringstream o, e;
  const int code = cli::run({"central", "--triple", "11.4.1,11.2.1,11.2.1"}, o, e);
  out.expect(code == cli::kPrecondition, "(4, 2, 2) exit code " + std::to_string(code));

  const std::array<std::string, 3> base{"11.4.1", "11.4.2", "11.2.1"};
  auto t = forms().full(base, kOffsets);
  auto fe = check_fe(t, kOffsets);
  out.expect(fe.max_residual < 1e-4, "FE residual " + fmt(fe.max_residual));
  auto r = central_value(t);
  out.expect(r.calibrated && r.pass, "calibrated identity on " + t.label());
  out.note("calibration " + fmt(r.calibration, "%.12f") + " from " + t.label() + ", FE residual " + fmt(fe.max_residual));
  for (const auto& l : std::vector<std::array<std::string, 3>>{{"11.4.1", "11.4.1", "11.2.1"}, {"11.4.2", "11.4.2", "11.2.1"}}) {
    auto t2 = forms().full(l, kOffsets);
    CentralOptions opts;
    opts.calibration = r.calibration;
    opts.tol = 1e-3;
    auto r2 = central_value(t2, opts);
    out.expect(r2.pass && !r2.calibrated, "prediction for " + t2.label() + " rel diff " + fmt(r2.rel_diff));
    out.note(t2.label() + " predicted to " + fmt(r2.rel_diff));
  }
  return out;
}

// 10
Outcome determinism() {
  Outcome out;
  const std::vector<std::vector<std::string>> pipeline{
      {"classes", "--m1", "11", "--m2", "3"},
      {"brandt", "--m1", "11", "--n", "3", "--nu", "1"},
      {"newforms", "--level", "33", "--weight", "2"},
      {"newforms", "--level", "11", "--weight", "4"},
      {"lfun", "coeffs", "--triple", "11.2.1,11.2.1,33.2.1", "--nmax", "60"},
      {"lfun", "value", "--triple", "11.2.1,11.2.1,11.2.1", "--s", "5+0.5i"},
      {"lfun", "check-fe", "--triple", "11.2.1,11.2.1,11.2.1"},
      {"central", "--triple", "11.2.1,11.2.1,11.2.1", "--format", "kv"},
      {"central", "--triple", "11.4.1,11.4.2,11.2.1", "--format", "kv"},
  };
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("triplel-acceptance-" + std::to_string(std::random_device{}()));
  auto run_all = [&](const fs::path& cache) {
    std::string all;
    for (auto args : pipeline) {
      args.insert(args.begin(), {"--cache", cache.string()});
      std::ostringstream o, e;
      const int code = cli::run(args, o, e);
      out.expect(code == 0, args[2] + " exit " + std::to_string(code) + " " + e.str());
      all += o.str();
    }
    return all;
  };
  const std::string first = run_all(root / "a");
  const std::string second = run_all(root / "b");
  const std::string warm = run_all(root / "a");
  out.expect(first == second, "cold runs differ");
  out.expect(first == warm, "warm cache changes the reports");
  out.note(std::to_string(first.size()) + " report bytes");
  std::error_code ec;
  fs::remove_all(root, ec);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"mass certification", mass_certification},
      {"Brandt algebra suite", brandt_suite},
      {"Eichler correspondence oracle", eichler_oracle},
      {"Euler factor structure", euler_structure},
      {"functional equation", functional_equation},
      {"central value, weight 2", central_weight2},
      {"vanishing coherence", vanishing_coherence},
      {"harmonics suite", harmonics_suite},
      {"mixed weight", mixed_weight},
      {"determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = error.empty() && o.pass();
    if (!pass) ++failed;
    std::printf("criterion %2d %s: %s (%.1f s) %s\n", id, pass ? "PASS" : "FAIL", criteria[i].first, secs,
                error.empty() ? o.summary().c_str() : ("exception: " + error).c_str());
  }
  return failed == 0 ? 0 : 1;
}
