#include "triplel/afe.hpp"

#include "triplel/arith.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>

namespace triplel {

namespace {

cplx lngamma(cplx z) {
  gsl_sf_result lnr, arg;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS) throw PrecisionError("complex log-gamma failed");
  return {lnr.val, arg.val};
}

double contour_abscissa(const LSeriesData& l, cplx s) {
  double c = 0.6;
  for (const auto& g : l.gamma) c = std::max(c, 0.6 - (s.real() + g.mu));
  return c;
}

}  // namespace

cplx log_gamma_factor(const std::vector<GammaShift>& gamma, cplx s) {
  const double log2pi = std::log(2 * M_PI);
  const double logpi = std::log(M_PI);
  cplx out = 0;
  for (const auto& g : gamma) {
    cplx z = s + g.mu;
    if (g.complex_type)
      out += -z * log2pi + lngamma(z);
    else
      out += -z * 0.5 * logpi + lngamma(z * 0.5);
  }
  return out;
}

MellinKernel::MellinKernel(const LSeriesData& l, cplx s, double step) : sigma_(contour_abscissa(l, s)), step_(step) {
  const double logq = std::log(l.conductor);
  auto log_integrand = [&](double t) {
    cplx z(sigma_, t);
    return (s + z) * 0.5 * logq + log_gamma_factor(l.gamma, s + z) - std::log(z);
  };
  const double w = step / (2 * M_PI);
  const double peak = log_integrand(0).real();
  for (int dir = 0; dir < 2; ++dir) {
    auto& out = dir == 0 ? weights_ : weights_neg_;
    for (long j = dir == 0 ? 0 : 1;; ++j) {
      double t = (dir == 0 ? 1.0 : -1.0) * static_cast<double>(j) * step;
      cplx li = log_integrand(t);
      out.push_back(w * std::exp(li));
      scale_ += std::abs(out.back());
      if (li.real() < peak - 46 && j > 10) break;
      if (j > 200000) throw PrecisionError("Mellin kernel integrand does not decay");
    }
  }
}

cplx MellinKernel::operator()(double y) const {
  const double ly = std::log(y);
  const cplx r = std::polar(1.0, -step_ * ly);
  cplx acc = 0;
  for (std::size_t j = weights_.size(); j-- > 0;) acc = acc * r + weights_[j];
  cplx accn = 0;
  const cplx rinv = std::conj(r);
  for (std::size_t j = weights_neg_.size(); j-- > 0;) accn = accn * rinv + weights_neg_[j];
  return std::exp(-sigma_ * ly) * (acc + accn * rinv);
}

namespace {

struct Side {
  MellinKernel kernel;
  cplx s;
  double factor;  // argument of V is n * factor
};

std::int64_t side_length(const LSeriesData& l, const Side& side, double eps, double reference) {
  // Smallest n0 on a geometric grid beyond which the estimated tail is below eps * reference.
  double n = 1;
  for (int it = 0; it < 4000; ++it) {
    double term = l.degree * std::pow(n, l.coeff_growth - side.s.real() + 0.25) * std::abs(side.kernel(n * side.factor));
    if (term * n < eps * reference) return static_cast<std::int64_t>(std::ceil(n));
    n *= 1.03;
  }
  throw PrecisionError("approximate functional equation needs too many terms");
}

double tail_estimate(const LSeriesData& l, const Side& side, std::int64_t n0) {
  double n = static_cast<double>(n0);
  return l.degree * std::pow(n, l.coeff_growth - side.s.real() + 1.25) * std::abs(side.kernel(n * side.factor));
}

}  // namespace

std::int64_t afe_length(const LSeriesData& l, cplx s, double x, double eps) {
  Side a{MellinKernel(l, s), s, 1 / x};
  Side b{MellinKernel(l, 2 * l.center - s), 2 * l.center - s, x};
  double reference = std::abs(a.kernel(1 / x)) + std::abs(b.kernel(x));
  return std::max(side_length(l, a, eps / 2, reference), side_length(l, b, eps / 2, reference));
}

AfeResult completed_value(const LSeriesData& l, cplx s, double x, double eps) {
  if (x <= 0) throw PreconditionError("AFE parameter must be positive");
  Side a{MellinKernel(l, s), s, 1 / x};
  Side b{MellinKernel(l, 2 * l.center - s), 2 * l.center - s, x};
  double reference = std::abs(a.kernel(1 / x)) + std::abs(b.kernel(x));
  std::int64_t na = side_length(l, a, eps / 2, reference);
  std::int64_t nb = side_length(l, b, eps / 2, reference);
  std::int64_t have = static_cast<std::int64_t>(l.coeffs.size()) - 1;
  if (std::max(na, nb) > have)
    throw PrecisionError("approximate functional equation needs " + std::to_string(std::max(na, nb)) +
                         " coefficients, have " + std::to_string(have));
  AfeResult r;
  r.terms = std::max(na, nb);
  for (std::int64_t n = 1; n <= r.terms; ++n) {
    double bn = l.coeffs[static_cast<std::size_t>(n)];
    if (bn == 0) continue;
    const double ln = std::log(static_cast<double>(n));
    if (n <= na) {
      cplx t = bn * std::exp(-a.s * ln) * a.kernel(n * a.factor);
      r.value += t;
      r.abs_sum += std::abs(t);
    }
    if (n <= nb) {
      cplx t = static_cast<double>(l.sign) * bn * std::exp(-b.s * ln) * b.kernel(n * b.factor);
      r.value += t;
      r.abs_sum += std::abs(t);
    }
  }
  r.tail_bound = tail_estimate(l, a, na) + tail_estimate(l, b, nb);
  return r;
}

cplx dirichlet_sum(const LSeriesData& l, cplx s) {
  cplx out = 0;
  for (std::size_t n = 1; n < l.coeffs.size(); ++n)
    if (l.coeffs[n] != 0) out += l.coeffs[n] * std::exp(-s * std::log(static_cast<double>(n)));
  return out;
}

}  // namespace triplel
