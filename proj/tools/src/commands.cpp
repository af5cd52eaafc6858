#include "triplel_cli/commands.hpp"

#include "triplel_cli/cache.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace triplel::cli {

namespace {

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(cplx z) { return fmt(z.real()) + " " + fmt(z.imag()); }

struct Label {
  std::int64_t level = 0;
  int weight = 0;
  std::size_t index = 0;
};

Label parse_label(const std::string& text) {
  Label l;
  char extra = 0;
  long long level = 0;
  int weight = 0;
  long index = 0;
  if (std::sscanf(text.c_str(), "%lld.%d.%ld%c", &level, &weight, &index, &extra) != 3 || index < 1)
    throw PreconditionError("bad newform label '" + text + "', expected level.weight.index");
  l.level = level;
  l.weight = weight;
  l.index = static_cast<std::size_t>(index - 1);
  return l;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::int64_t round_up(std::int64_t n) { return (n + 999) / 1000 * 1000; }

class Session {
 public:
  Session(const std::string& cache_dir, std::ostream& err) : cache_(cache_dir, &err) {}

  const Cache& cache() const { return cache_; }

  std::vector<NewformData> forms(std::int64_t level, int weight, std::int64_t nmax) {
    const std::string key = std::to_string(level) + "." + std::to_string(weight) + ".n" + std::to_string(nmax);
    auto& slot = memo_[key];
    if (slot.empty())
      slot = cache_.fetch<std::vector<NewformData>>(
          "coeffs", key, [&] { return enumerate_newforms(level, weight, nmax); }, encode_forms, decode_forms);
    return slot;
  }

  NewformData form(const std::string& label, std::int64_t nmax) {
    Label l = parse_label(label);
    auto all = forms(l.level, l.weight, nmax);
    if (l.index >= all.size())
      throw PreconditionError("no newform " + label + " (there are " + std::to_string(all.size()) + ")");
    return all[l.index];
  }

  TripleL triple(const std::vector<std::string>& labels, std::int64_t nmax) {
    return make_triple(form(labels[0], nmax), form(labels[1], nmax), form(labels[2], nmax));
  }

 private:
  Cache cache_;
  std::map<std::string, std::vector<NewformData>> memo_;
};

std::vector<std::string> triple_labels(const std::string& text) {
  auto labels = split(text, ',');
  if (labels.size() != 3) throw PreconditionError("--triple needs three comma-separated labels");
  for (const auto& l : labels) parse_label(l);
  return labels;
}

constexpr std::int64_t kProbe = 64;

std::string classes_report(std::int64_t m1, std::int64_t m2) {
  if (m1 < 2 || !is_squarefree(m1) || omega(m1) % 2 == 0)
    throw PreconditionError("M1 must be squarefree with an odd number of prime factors");
  if (m2 < 1 || !is_squarefree(m1 * m2)) throw PreconditionError("M1 M2 must be squarefree");
  auto cs = right_ideal_classes(eichler_order(make_algebra(m1), m1, m2));
  std::ostringstream o;
  o << "m1=" << m1 << "\nm2=" << m2 << "\nh=" << cs.size() << "\ne=";
  for (std::size_t i = 0; i < cs.size(); ++i) o << (i ? "," : "") << cs.unit_orders[i];
  o << "\nmass=" << to_string(cs.mass()) << "\n";
  return o.str();
}

std::string brandt_report(std::int64_t m1, std::int64_t m2, std::int64_t n, int nu) {
  if (m1 < 2 || !is_squarefree(m1) || omega(m1) % 2 == 0)
    throw PreconditionError("M1 must be squarefree with an odd number of prime factors");
  if (n < 1 || nu < 0) throw PreconditionError("need n >= 1 and nu >= 0");
  auto cs = std::make_shared<const IdealClassSet>(right_ideal_classes(eichler_order(make_algebra(m1), m1, m2)));
  auto space = std::make_shared<const FormSpace>(cs, nu);
  auto b = brandt_matrix(space, n);
  const std::size_t d = 2 * static_cast<std::size_t>(nu) + 1;
  std::ostringstream o;
  o << "m1=" << m1 << "\nm2=" << m2 << "\nn=" << n << "\nnu=" << nu << "\nh=" << b.h << "\nsize=" << b.h * d << "\n";
  for (std::size_t i = 0; i < b.h; ++i)
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t j = 0; j < b.h; ++j)
        for (std::size_t c = 0; c < d; ++c) o << (j + c ? " " : "") << to_string(b.block(i, j)(r, c));
      o << "\n";
    }
  return o.str();
}

std::string field_name(long d) { return d == 1 ? "Q" : d == 0 ? "unknown" : "Q(sqrt(" + std::to_string(d) + "))"; }

std::string coefficient(const NewformData& f, std::int64_t n) {
  if (f.exact) return (*f.exact)[static_cast<std::size_t>(n)].str();
  return fmt17(f.a(n));
}

std::string newforms_report(const std::vector<NewformData>& forms, std::int64_t shown) {
  std::ostringstream o;
  o << "count=" << forms.size() << "\n";
  for (const auto& f : forms) {
    o << "label=" << f.label << "\nfield=" << field_name(f.field) << "\n";
    for (const auto& [p, e] : f.al_eigen) o << "al" << p << "=" << (e > 0 ? "+1" : "-1") << "\n";
    o << "a=";
    for (std::int64_t n = 1; n <= std::min(shown, f.nmax()); ++n) o << (n > 1 ? " " : "") << coefficient(f, n);
    o << "\n";
  }
  return o.str();
}

}  // namespace

std::complex<double> parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text += c;
  if (text.empty()) throw PreconditionError("empty complex number");
  auto number = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw PreconditionError("bad complex number '" + raw + "'");
    return v;
  };
  if (text.back() != 'i') return {number(text), 0};
  text.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;)
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0, number(text)};
  return {number(text.substr(0, split)), number(text.substr(split))};
}

std::string encode_forms(const std::vector<NewformData>& forms) {
  std::ostringstream o;
  o << "forms " << forms.size() << "\n";
  for (const auto& f : forms) {
    o << "form " << f.label << " level=" << f.level << " weight=" << f.weight << " field=" << f.field
      << " nmax=" << f.nmax() << " exact=" << (f.exact ? 1 : 0) << "\n";
    for (const auto& [p, e] : f.al_eigen) o << "AL " << p << " " << e << "\n";
    for (std::int64_t n = 1; n <= f.nmax(); ++n) {
      if (f.exact) {
        const auto& x = (*f.exact)[static_cast<std::size_t>(n)];
        o << n << " " << to_string(x.rational_part()) << " " << to_string(x.sqrt_part()) << "\n";
      } else {
        o << n << " " << fmt17(f.a(n)) << "\n";
      }
    }
  }
  o << "end\n";
  return o.str();
}

std::vector<NewformData> decode_forms(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "forms") throw PreconditionError("bad forms header");
  std::vector<NewformData> out;
  for (std::size_t k = 0; k < count; ++k) {
    NewformData f;
    std::string label, level, weight, field, nmax, exact;
    if (!(in >> word >> label >> level >> weight >> field >> nmax >> exact) || word != "form")
      throw PreconditionError("bad form header");
    auto value = [](const std::string& kv, const char* key) {
      const std::string prefix = std::string(key) + "=";
      if (kv.rfind(prefix, 0) != 0) throw PreconditionError("expected " + prefix);
      return std::stoll(kv.substr(prefix.size()));
    };
    f.label = label;
    f.level = value(level, "level");
    f.weight = static_cast<int>(value(weight, "weight"));
    f.field = static_cast<long>(value(field, "field"));
    const auto n = value(nmax, "nmax");
    const bool is_exact = value(exact, "exact") != 0;
    for (std::size_t p = 0; p < prime_factors(f.level).size(); ++p) {
      std::int64_t prime = 0;
      int e = 0;
      if (!(in >> word >> prime >> e) || word != "AL") throw PreconditionError("bad AL line");
      f.al_eigen[prime] = e;
    }
    f.coeffs.assign(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<QuadNum> ex(static_cast<std::size_t>(n + 1), QuadNum(0));
    for (std::int64_t m = 1; m <= n; ++m) {
      std::int64_t idx = 0;
      if (!(in >> idx) || idx != m) throw PreconditionError("coefficient index out of order");
      if (is_exact) {
        std::string a, b;
        in >> a >> b;
        ex[static_cast<std::size_t>(m)] = QuadNum(parse_rational(a), parse_rational(b), f.field == 0 ? 1 : f.field);
        f.coeffs[static_cast<std::size_t>(m)] = ex[static_cast<std::size_t>(m)].to_double();
      } else {
        std::string a;
        in >> a;
        f.coeffs[static_cast<std::size_t>(m)] = std::stod(a);
      }
    }
    if (is_exact) f.exact = std::move(ex);
    out.push_back(std::move(f));
  }
  if (!(in >> word) || word != "end") throw PreconditionError("truncated forms entry");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triple product L-functions of elliptic newforms and their central values"};
  app.require_subcommand(1);
  std::string cache_dir;
  int threads = 1;
  app.add_option("--cache", cache_dir, "cache directory (default: $TRIPLEL_CACHE)");
  app.add_option("--threads", threads, "upper bound on worker threads")->check(CLI::PositiveNumber);

  std::int64_t m1 = 0, m2 = 1, n = 1, level = 0, nmax = 0;
  int nu = 0, weight = 2;
  auto* classes = app.add_subcommand("classes", "right ideal classes of an Eichler order");
  classes->add_option("--m1", m1)->required();
  classes->add_option("--m2", m2);

  auto* brandt = app.add_subcommand("brandt", "Brandt matrix B(n) in harmonic coordinates");
  brandt->add_option("--m1", m1)->required();
  brandt->add_option("--m2", m2);
  brandt->add_option("--n", n)->required();
  brandt->add_option("--nu", nu);

  std::int64_t shown = 20;
  auto* newforms = app.add_subcommand("newforms", "newforms of a level and weight");
  newforms->add_option("--level", level)->required();
  newforms->add_option("--weight", weight)->required();
  newforms->add_option("--show", shown, "coefficients to print");

  std::string triple_text, s_text, offsets_text = "0.1,0.3,0.7,0.2i", format = "text", file;
  double prec = 1e-10, tol = 1e-4, calibration = 0;
  bool diagnostic = false;
  auto* lfun = app.add_subcommand("lfun", "triple product L-function");
  lfun->require_subcommand(1);
  auto* coeffs = lfun->add_subcommand("coeffs", "Dirichlet coefficients b(n)");
  coeffs->add_option("--triple", triple_text)->required();
  coeffs->add_option("--nmax", nmax)->required()->check(CLI::PositiveNumber);
  auto* value = lfun->add_subcommand("value", "completed and finite L-value at s");
  value->add_option("--triple", triple_text)->required();
  value->add_option("--s", s_text)->required();
  value->add_option("--prec", prec);
  auto* check = lfun->add_subcommand("check-fe", "functional equation residuals");
  check->add_option("--triple", triple_text)->required();
  check->add_option("--offsets", offsets_text);
  check->add_flag("--diagnostic", diagnostic, "scan alternative conductors and signs");

  auto* central = app.add_subcommand("central", "central value against the height formula");
  central->add_option("--triple", triple_text)->required();
  central->add_option("--tol", tol);
  central->add_option("--format", format)->check(CLI::IsMember({"text", "kv"}));
  central->add_option("--calibration", calibration, "calibration scalar for weights other than (2, 2, 2)");

  auto* import = app.add_subcommand("import", "validate a COEFFS v1 file and compare with internal forms");
  import->add_option("--file", file)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  if (cache_dir.empty())
    if (const char* env = std::getenv("TRIPLEL_CACHE")) cache_dir = env;

  try {
    Session session(cache_dir, err);
    const Cache& cache = session.cache();
    auto cached_text = [&](const std::string& kind, const std::string& key, const std::function<std::string()>& f) {
      return cache.fetch<std::string>(
          kind, key, f, [](const std::string& s) { return s; }, [](const std::string& s) { return s; });
    };

    if (*classes) {
      out << cached_text("classes", std::to_string(m1) + "." + std::to_string(m2), [&] { return classes_report(m1, m2); });
    } else if (*brandt) {
      const std::string key = std::to_string(m1) + "." + std::to_string(m2) + ".n" + std::to_string(n) + ".nu" +
                              std::to_string(nu);
      out << cached_text("brandt", key, [&] { return brandt_report(m1, m2, n, nu); });
    } else if (*newforms) {
      out << newforms_report(session.forms(level, weight, std::max<std::int64_t>(shown, 1)), shown);
    } else if (*coeffs) {
      auto t = session.triple(triple_labels(triple_text), nmax);
      out << "triple=" << t.label() << "\n";
      auto exact = dirichlet_coeffs_exact(t, nmax);
      auto b = dirichlet_coeffs(t, nmax);
      for (std::int64_t k = 1; k <= nmax; ++k)
        out << k << " " << (exact ? (*exact)[static_cast<std::size_t>(k)].str() : fmt17(b[static_cast<std::size_t>(k)]))
            << "\n";
    } else if (*value) {
      const auto labels = triple_labels(triple_text);
      const cplx s = parse_complex(s_text);
      auto probe = session.triple(labels, kProbe);
      const std::int64_t need = round_up(lambda_terms(probe, s, prec));
      auto t = session.triple(labels, need);
      auto v = lambda_value(t, s, prec);
      const cplx l = v.value / gamma_factor(t, s);
      out << "triple=" << t.label() << "\ns=" << fmt(s) << "\nLambda*=" << fmt(v.completed) << "\nLambda=" << fmt(v.value)
          << "\nL=" << fmt(l) << "\nterms=" << v.terms << "\ntail_bound=" << fmt(v.tail_bound) << "\n";
      const double abscissa = (t.forms[0].weight + t.forms[1].weight + t.forms[2].weight - 3) / 2.0 + 1;
      if (s.real() > abscissa + 1) {
        auto direct = dirichlet_sum(triple_lseries(t, need), s);
        out << "direct_sum=" << fmt(direct) << "\ndirect_rel_diff=" << fmt(std::abs(direct - l) / std::abs(l)) << "\n";
      }
    } else if (*check) {
      const auto labels = triple_labels(triple_text);
      std::vector<cplx> offsets;
      for (const auto& o : split(offsets_text, ',')) offsets.push_back(parse_complex(o));
      if (offsets.empty()) throw PreconditionError("--offsets is empty");
      auto probe = session.triple(labels, kProbe);
      std::int64_t need = 0;
      const cplx kappa(probe.center(), 0);
      for (auto o : offsets)
        need = std::max({need, lambda_terms(probe, kappa + o, 1e-10), lambda_terms(probe, kappa - o, 1e-10)});
      auto t = session.triple(labels, round_up(need));
      auto rep = check_fe(t, offsets, diagnostic);
      auto sc = sign_and_conductor(t);
      out << "triple=" << t.label() << "\nsign=" << sc.w << "\nconductor=" << sc.conductor << "\n";
      for (const auto& p : rep.points)
        out << "offset=" << fmt(p.t) << " left=" << fmt(p.left) << " right=" << fmt(p.right)
            << " residual=" << fmt(p.residual) << "\n";
      out << "max_residual=" << fmt(rep.max_residual) << "\n";
      if (diagnostic) {
        for (const auto& a : rep.alternatives)
          out << "alternative N^" << a.n_exp << " gcd^" << a.g_exp << " sign=" << a.sign
              << " residual=" << (a.precision > 0 ? fmt(a.residual) : std::string("unavailable")) << "\n";
        out << "nominal_is_best=" << (rep.nominal_is_best ? "yes" : "no") << "\n";
      }
    } else if (*central) {
      const auto labels = triple_labels(triple_text);
      std::ostringstream key;
      key << labels[0] << "," << labels[1] << "," << labels[2] << ".tol" << fmt17(tol) << ".cal" << fmt17(calibration)
          << "." << format;
      out << cached_text("report", "central." + key.str(), [&] {
        auto probe = session.triple(labels, kProbe);
        auto t = session.triple(labels, round_up(central_terms(probe)));
        CentralOptions opts;
        opts.tol = tol;
        if (calibration != 0) opts.calibration = calibration;
        auto r = central_value(t, opts);
        return format == "kv" ? r.kv() : r.text();
      });
    } else if (*import) {
      std::ifstream in(file);
      if (!in) throw PreconditionError("cannot read " + file);
      std::ostringstream buf;
      buf << in.rdbuf();
      NewformData f = read_coeffs(buf.str());
      out << "level=" << f.level << "\nweight=" << f.weight << "\nnmax=" << f.nmax() << "\nvalid=yes\n";
      std::string match = "none";
      for (const auto& g : session.forms(f.level, f.weight, f.nmax())) {
        bool same = true;
        for (std::int64_t k = 1; k <= f.nmax() && same; ++k)
          same = std::abs(f.a(k) - g.a(k)) <= 1e-9 * std::max(1.0, std::abs(g.a(k)));
        if (same && f.al_eigen == g.al_eigen) match = g.label;
      }
      out << "matches=" << match << "\n";
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << "\n";
    return kPrecision;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return kConsistency;
  }
  return kOk;
}

}  // namespace triplel::cli
