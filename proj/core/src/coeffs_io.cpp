#include "triplel/lfun.hpp"

#include <cstdio>
#include <sstream>

namespace triplel {

std::string write_coeffs(const NewformData& f) {
  std::ostringstream out;
  out << "COEFFS v1 level=" << f.level << " weight=" << f.weight << "\n";
  for (const auto& [p, e] : f.al_eigen) out << "AL " << p << " " << (e > 0 ? "+1" : "-1") << "\n";
  bool rational = f.exact.has_value();
  if (rational)
    for (const auto& x : *f.exact) rational = rational && x.is_rational();
  char buf[64];
  for (std::int64_t n = 1; n <= f.nmax(); ++n) {
    out << n << " ";
    if (rational) {
      out << to_string((*f.exact)[static_cast<std::size_t>(n)].rational_part());
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", f.a(n));
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

[[noreturn]] void reject(const std::string& why) { throw PreconditionError("COEFFS: " + why); }

bool is_rational_token(const std::string& s) { return s.find_first_of(".eE") == std::string::npos; }

}  // namespace

NewformData read_coeffs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  NewformData f;
  bool header = false, exact = true;
  std::vector<Rational> exact_vals{Rational(0)};
  std::vector<double> vals{0.0};
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (!header) {
      std::string version;
      ls >> version;
      if (tok != "COEFFS" || version != "v1") reject("expected header 'COEFFS v1 level=<N> weight=<k>'");
      bool have_level = false, have_weight = false;
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) reject("malformed header field '" + tok + "'");
        std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
        try {
          if (key == "level") {
            f.level = std::stoll(value);
            have_level = true;
          } else if (key == "weight") {
            f.weight = std::stoi(value);
            have_weight = true;
          }
        } catch (const std::exception&) {
          reject("bad header value '" + tok + "'");
        }
      }
      if (!have_level || !have_weight) reject("header needs level and weight");
      if (f.level < 1 || !is_squarefree(f.level)) reject("level must be squarefree");
      if (f.weight < 2 || f.weight % 2 != 0) reject("weight must be even and at least 2");
      header = true;
      continue;
    }
    if (tok == "AL") {
      std::int64_t p = 0;
      std::string sign;
      if (!(ls >> p >> sign) || (sign != "+1" && sign != "-1" && sign != "1")) reject("bad AL line " + std::to_string(lineno));
      if (f.level % p != 0 || !is_prime(p)) reject("AL line for a prime not dividing the level: " + std::to_string(p));
      f.al_eigen[p] = sign == "-1" ? -1 : 1;
      continue;
    }
    std::int64_t n = 0;
    try {
      n = std::stoll(tok);
    } catch (const std::exception&) {
      reject("bad line " + std::to_string(lineno));
    }
    std::string value;
    if (!(ls >> value)) reject("missing value on line " + std::to_string(lineno));
    if (n != static_cast<std::int64_t>(vals.size())) reject("coefficients must be listed for n = 1, 2, ... in order; got n = " + std::to_string(n));
    try {
      if (is_rational_token(value)) {
        Rational r = parse_rational(value);
        exact_vals.push_back(r);
        vals.push_back(r.get_d());
      } else {
        exact = false;
        vals.push_back(std::stod(value));
      }
    } catch (const PreconditionError&) {
      throw;
    } catch (const std::exception&) {
      reject("bad value '" + value + "' for n = " + std::to_string(n));
    }
  }
  if (!header) reject("missing header");
  if (vals.size() < 2) reject("no coefficients");
  for (std::int64_t p : prime_factors(f.level))
    if (!f.al_eigen.count(p)) reject("missing AL line for p = " + std::to_string(p));
  f.coeffs = std::move(vals);
  f.label = std::to_string(f.level) + "." + std::to_string(f.weight) + ".import";
  if (exact) {
    std::vector<QuadNum> q;
    q.reserve(exact_vals.size());
    for (const auto& r : exact_vals) q.emplace_back(r);
    f.exact = std::move(q);
    f.field = 1;
  } else {
    f.field = 0;
  }
  try {
    validate_newform(f, exact ? 0.0 : 1e-6);
  } catch (const ConsistencyError& e) {
    reject(e.what());
  }
  return f;
}

}  // namespace triplel
