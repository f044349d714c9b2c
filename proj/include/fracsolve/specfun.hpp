#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "fracsolve/errors.hpp"
#include "fracsolve/types.hpp"

// Gamma and the one- and two-variable Mittag-Leffler functions. The double
// series is the primary evaluation route; for non-positive arguments in the
// diffusion regime (0 < a < b < 1, rho <= b+1) a branch-cut Laplace inversion
// takes over where the series would lose precision to cancellation.

namespace fracsolve::specfun {

/// Gamma function. Throws PoleError at non-positive integers and
/// OverflowError when the result leaves the floating range.
template <class Scalar = double>
Scalar gamma(Scalar x) {
  if (x <= Scalar(0) && x == std::floor(x))
    throw PoleError("gamma: pole at x=" + std::to_string(static_cast<double>(x)));
  const Scalar g = std::tgamma(x);
  if (!std::isfinite(g))
    throw OverflowError("gamma: overflow at x=" + std::to_string(static_cast<double>(x)));
  return g;
}

namespace detail {

/// 1/Gamma(s) for s > 0; underflows to zero for large s instead of overflowing.
template <class Scalar>
Scalar reciprocal_gamma(Scalar s) {
  if (s <= Scalar(170)) return Scalar(1) / std::tgamma(s);
  const Scalar lg = std::lgamma(s);
  return lg > Scalar(745) ? Scalar(0) : std::exp(-lg);
}

/// Neumaier-compensated accumulator.
template <class Scalar>
class CompensatedSum {
public:
  void add(Scalar v) {
    const Scalar t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

private:
  Scalar sum_{};
  Scalar comp_{};
};

/// z^n / Gamma(s) for s > 0, evaluated in log space when the direct product
/// would overflow. Returns +-inf when the term itself exceeds the range.
template <class Scalar>
Scalar power_over_gamma(Scalar z, int n, Scalar s) {
  if (z == Scalar(0)) return n == 0 ? reciprocal_gamma(s) : Scalar(0);
  const Scalar az = std::abs(z);
  const Scalar ln_pow = Scalar(n) * std::log(az);
  const Scalar sign = (z < Scalar(0) && (n & 1)) ? Scalar(-1) : Scalar(1);
  if (s <= Scalar(170) && std::abs(ln_pow) < Scalar(600))
    return sign * std::pow(az, Scalar(n)) / std::tgamma(s);
  const Scalar ln_mag = ln_pow - std::lgamma(s);
  if (ln_mag < Scalar(-745)) return Scalar(0);
  if (ln_mag > Scalar(709)) return sign * std::numeric_limits<Scalar>::infinity();
  return sign * std::exp(ln_mag);
}

/// binom(n,i) x^i y^{n-i} / Gamma(s): one inner term of the double series.
template <class Scalar>
Scalar binomial_term(int n, int i, Scalar x, Scalar y, Scalar s) {
  if (x == Scalar(0) && i > 0) return Scalar(0);
  if (y == Scalar(0) && i < n) return Scalar(0);
  Scalar sign = Scalar(1);
  if (x < Scalar(0) && (i & 1)) sign = -sign;
  if (y < Scalar(0) && ((n - i) & 1)) sign = -sign;
  const Scalar lx = (i > 0) ? Scalar(i) * std::log(std::abs(x)) : Scalar(0);
  const Scalar ly = (i < n) ? Scalar(n - i) * std::log(std::abs(y)) : Scalar(0);
  // log binom via lgamma: no accumulation error across the inner loop
  const Scalar lb = std::lgamma(Scalar(n + 1)) - std::lgamma(Scalar(i + 1)) -
                    std::lgamma(Scalar(n - i + 1));
  const Scalar ln_mag = lb + lx + ly - std::lgamma(s);
  if (ln_mag < Scalar(-745)) return Scalar(0);
  if (ln_mag > Scalar(709)) return sign * std::numeric_limits<Scalar>::infinity();
  if (ln_mag < Scalar(550) && n <= 55 && s <= Scalar(170)) {
    // small regime: exact binomial and direct product, ~few ulp
    Scalar c = Scalar(1);
    for (int j = 0; j < i; ++j) c = c * Scalar(n - j) / Scalar(j + 1);
    return c * std::pow(x, Scalar(i)) * std::pow(y, Scalar(n - i)) / std::tgamma(s);
  }
  return sign * std::exp(ln_mag);
}

enum class SeriesStatus { ok, no_convergence, precision_loss, overflow };

template <class Scalar>
struct SeriesResult {
  Scalar value{};
  SeriesStatus status = SeriesStatus::ok;
  int terms = 0;
};

/// Truncated sum of sum_n z^n / Gamma(rho + alpha n) with a geometric tail
/// bound (term ratios are eventually monotone decreasing by log-convexity of
/// Gamma) and a cancellation guard on the largest partial term.
template <class Scalar>
SeriesResult<Scalar> ml_series_univariate(Scalar alpha, Scalar rho, Scalar z,
                                          const SeriesControlT<Scalar>& ctrl) {
  CompensatedSum<Scalar> acc;
  Scalar max_abs = Scalar(0);
  Scalar prev_abs = Scalar(0);
  SeriesResult<Scalar> res;
  bool bounded = false;
  for (int n = 0; n <= ctrl.n_max; ++n) {
    const Scalar term = power_over_gamma(z, n, rho + alpha * Scalar(n));
    if (!std::isfinite(term)) {
      res.status = SeriesStatus::overflow;
      res.terms = n;
      return res;
    }
    acc.add(term);
    const Scalar a = std::abs(term);
    max_abs = std::max(max_abs, a);
    res.terms = n + 1;
    if (n >= 1 && prev_abs > Scalar(0)) {
      const Scalar r = a / prev_abs;
      if (r < Scalar(0.95)) {
        const Scalar tail = a * r / (Scalar(1) - r);
        if (tail < ctrl.tol) {
          bounded = true;
          break;
        }
      }
    }
    prev_abs = a;
  }
  res.value = acc.value();
  if (!bounded) {
    res.status = SeriesStatus::no_convergence;
    return res;
  }
  const Scalar scale = std::max(std::abs(res.value), std::numeric_limits<Scalar>::min());
  if (max_abs / scale > ctrl.cancel_guard) res.status = SeriesStatus::precision_loss;
  return res;
}

/// Double series of E_{(a,b),rho}(x,y): outer n, inner binomial sum, shared
/// compensated accumulator, guard on the largest inner term.
template <class Scalar>
SeriesResult<Scalar> ml_series_bivariate(const MLParamsT<Scalar>& p, Scalar x, Scalar y,
                                         const SeriesControlT<Scalar>& ctrl) {
  CompensatedSum<Scalar> acc;
  Scalar max_abs = Scalar(0);
  Scalar prev_row = Scalar(0);
  int small_ratios = 0;
  SeriesResult<Scalar> res;
  bool bounded = false;
  const Scalar ba = p.b - p.a;
  for (int n = 0; n <= ctrl.n_max; ++n) {
    Scalar row = Scalar(0);
    for (int i = 0; i <= n; ++i) {
      const Scalar s = p.rho + p.b * Scalar(n) - ba * Scalar(i);
      const Scalar term = binomial_term(n, i, x, y, s);
      if (!std::isfinite(term)) {
        res.status = SeriesStatus::overflow;
        res.terms = n;
        return res;
      }
      acc.add(term);
      row += term;
      max_abs = std::max(max_abs, std::abs(term));
    }
    res.terms = n + 1;
    const Scalar ar = std::abs(row);
    if (n >= 2 && prev_row > Scalar(0) && ar > Scalar(0)) {
      const Scalar r = ar / prev_row;
      if (r < Scalar(0.95)) {
        if (++small_ratios >= 2) {
          const Scalar tail = ar * r / (Scalar(1) - r);
          if (tail < ctrl.tol) {
            bounded = true;
            break;
          }
        }
      } else {
        small_ratios = 0;
      }
    }
    if (ar > Scalar(0)) prev_row = ar;
  }
  res.value = acc.value();
  if (!bounded) {
    res.status = SeriesStatus::no_convergence;
    return res;
  }
  const Scalar scale = std::max(std::abs(res.value), std::numeric_limits<Scalar>::min());
  if (max_abs / scale > ctrl.cancel_guard) res.status = SeriesStatus::precision_loss;
  return res;
}

/// Trapezoidal exp-sinh quadrature over (0,inf). The integrand may carry an
/// integrable algebraic singularity at 0 and must decay at least like e^{-r}.
/// f receives (r, ln r) so it can bail out before pow/exp overflow.
template <class Scalar, class F>
Scalar integrate_exp_sinh(F&& f, Scalar rel_tol) {
  const Scalar c = Scalar(1.5707963267948966);  // pi/2
  const Scalar u_max = Scalar(6.2);
  auto node = [&](Scalar u) -> Scalar {
    const Scalar ln_r = c * std::sinh(u);
    if (ln_r > Scalar(7.0)) return Scalar(0);  // e^{-r} below 1e-300
    const Scalar r = std::exp(ln_r);
    return f(r, ln_r) * r * c * std::cosh(u);
  };
  Scalar h = Scalar(0.5);
  Scalar sum = node(Scalar(0));
  for (Scalar u = h; u <= u_max; u += h) sum += node(u) + node(-u);
  Scalar integral = sum * h;
  int agreements = 0;
  for (int level = 0; level < 8; ++level) {
    const Scalar h2 = h / Scalar(2);
    Scalar mid = Scalar(0);
    for (Scalar u = h2; u <= u_max; u += h) mid += node(u) + node(-u);
    sum += mid;
    h = h2;
    const Scalar refined = sum * h;
    const Scalar scale = std::max(std::abs(refined), std::numeric_limits<Scalar>::min());
    if (std::abs(refined - integral) <= rel_tol * scale) {
      ++agreements;
      integral = refined;
      if (agreements >= 2) break;
    } else {
      agreements = 0;
      integral = refined;
    }
  }
  return integral;
}

/// E_{(a,b),rho}(-mu, -lambda) for mu >= 0, lambda > 0 via Bromwich inversion
/// of s^{b-rho} / (s^b + mu s^{b-a} + lambda) collapsed onto the branch cut.
/// Valid for 0 < b < 1, 0 <= a < b, 0 < rho <= b+1; the denominator has no
/// zeros off the cut there. For rho = b+1 the s=0 pole (the constant 1/lambda)
/// is split off first, leaving a positive integrand.
template <class Scalar>
Scalar ml_negative_laplace(Scalar a, Scalar b, Scalar rho, Scalar mu, Scalar lambda,
                           Scalar rel_tol) {
  const Scalar pi = Scalar(3.1415926535897932);
  const Scalar cb = std::cos(pi * b), sb = std::sin(pi * b);
  const Scalar cba = std::cos(pi * (b - a)), sba = std::sin(pi * (b - a));
  if (std::abs(rho - (b + Scalar(1))) <= Scalar(1e-12) * (b + Scalar(1))) {
    auto g = [&](Scalar r, Scalar) -> Scalar {
      const Scalar rb = std::pow(r, b);
      const Scalar rba = mu > Scalar(0) ? std::pow(r, b - a) : Scalar(0);
      const Scalar P = rb * cb + mu * rba * cba + lambda;
      const Scalar S = rb * sb + mu * rba * sba;
      // S/r without forming 0/0 at tiny r
      const Scalar S_over_r = std::pow(r, b - Scalar(1)) * sb +
                              (mu > Scalar(0) ? mu * std::pow(r, b - a - Scalar(1)) * sba
                                              : Scalar(0));
      return std::exp(-r) * S_over_r / (P * P + S * S);
    };
    return Scalar(1) / lambda - integrate_exp_sinh<Scalar>(g, rel_tol) / pi;
  }
  const Scalar d = b - rho;  // in (-1, b)
  const Scalar cd = std::cos(pi * d), sd = std::sin(pi * d);
  auto g = [&](Scalar r, Scalar) -> Scalar {
    const Scalar rb = std::pow(r, b);
    const Scalar rba = mu > Scalar(0) ? std::pow(r, b - a) : Scalar(0);
    const Scalar P = rb * cb + mu * rba * cba + lambda;
    const Scalar S = rb * sb + mu * rba * sba;
    return std::exp(-r) * std::pow(r, d) * (cd * S - sd * P) / (P * P + S * S);
  };
  return integrate_exp_sinh<Scalar>(g, rel_tol) / pi;
}

/// Whether the Laplace route applies to E_{(a,b),rho}(x,y).
template <class Scalar>
bool laplace_route_admissible(const MLParamsT<Scalar>& p, Scalar x, Scalar y) {
  if (!(x <= Scalar(0) && y < Scalar(0))) return false;
  if (!(p.b > Scalar(0) && p.b < Scalar(1))) return false;
  if (x < Scalar(0) && !(p.a > Scalar(0) && p.a < p.b)) return false;
  return p.rho > Scalar(0) && p.rho <= p.b + Scalar(1) + Scalar(1e-12);
}

/// Rough log of the peak-term / result ratio of the alternating series;
/// used only to route between the series and the Laplace integral.
template <class Scalar>
Scalar predicted_log_cancellation(const MLParamsT<Scalar>& p, Scalar x, Scalar y) {
  Scalar l = Scalar(0);
  if (x < Scalar(0)) l += std::pow(-x, Scalar(1) / p.a);
  if (y < Scalar(0)) l += std::pow(-y, Scalar(1) / p.b);
  return l;
}

template <class Scalar>
Scalar integral_rel_tol(const SeriesControlT<Scalar>& ctrl) {
  return std::max(std::min(ctrl.tol, Scalar(1e-8)), Scalar(5e-14));
}

[[noreturn]] inline void throw_series_failure(SeriesStatus s, const std::string& what) {
  switch (s) {
    case SeriesStatus::no_convergence:
      throw NoConvergence(what + ": term cap reached before the tail bound held");
    case SeriesStatus::overflow:
      throw OverflowError(what + ": series term exceeds the floating range");
    default:
      throw PrecisionLoss(what + ": cancellation guard tripped");
  }
}

}  // namespace detail

/// One-variable Mittag-Leffler function sum_n z^n / Gamma(rho + alpha n).
template <class Scalar = double>
Scalar ml_univariate(Scalar alpha, Scalar rho, Scalar z,
                     const SeriesControlT<Scalar>& ctrl = {}) {
  if (!(alpha > Scalar(0)) || !(rho > Scalar(0)))
    throw InvalidParams("ml_univariate: alpha and rho must be positive");
  ctrl.validate();
  const bool laplace_ok = z < Scalar(0) && alpha < Scalar(1) &&
                          rho <= alpha + Scalar(1) + Scalar(1e-12);
  if (laplace_ok && std::pow(-z, Scalar(1) / alpha) > Scalar(4))
    return detail::ml_negative_laplace(Scalar(0), alpha, rho, Scalar(0), -z,
                                       detail::integral_rel_tol(ctrl));
  auto res = detail::ml_series_univariate(alpha, rho, z, ctrl);
  if (res.status == detail::SeriesStatus::ok) return res.value;
  if (laplace_ok)
    return detail::ml_negative_laplace(Scalar(0), alpha, rho, Scalar(0), -z,
                                       detail::integral_rel_tol(ctrl));
  detail::throw_series_failure(res.status, "ml_univariate");
}

/// Two-variable Mittag-Leffler function E_{(a,b),rho}(x,y).
template <class Scalar = double>
Scalar ml_bivariate(const MLParamsT<Scalar>& p, Scalar x, Scalar y,
                    const SeriesControlT<Scalar>& ctrl = {}) {
  p.validate();
  ctrl.validate();
  if (x == Scalar(0) && y == Scalar(0)) return detail::reciprocal_gamma(p.rho);
  if (x == Scalar(0)) return ml_univariate(p.b, p.rho, y, ctrl);
  if (y == Scalar(0)) return ml_univariate(p.a, p.rho, x, ctrl);
  const bool laplace_ok = detail::laplace_route_admissible(p, x, y);
  if (laplace_ok && detail::predicted_log_cancellation(p, x, y) > Scalar(4))
    return detail::ml_negative_laplace(p.a, p.b, p.rho, -x, -y,
                                       detail::integral_rel_tol(ctrl));
  auto res = detail::ml_series_bivariate(p, x, y, ctrl);
  if (res.status == detail::SeriesStatus::ok) return res.value;
  if (laplace_ok)
    return detail::ml_negative_laplace(p.a, p.b, p.rho, -x, -y,
                                       detail::integral_rel_tol(ctrl));
  detail::throw_series_failure(res.status, "ml_bivariate");
}

/// Result of the Gamma monotonicity scan backing the second boundedness
/// estimate: Gamma(rho + n a + k(b-a)) > Gamma(rho + n a) for 1 <= k <= n.
struct GammaMonotonicityReport {
  bool holds = true;
  int n = -1;
  int k = -1;

  explicit operator bool() const { return holds; }
};

template <class Scalar = double>
GammaMonotonicityReport check_gamma_monotonicity(const MLParamsT<Scalar>& p, int n_max) {
  p.validate();
  if (n_max < 1) throw InvalidParams("check_gamma_monotonicity: n_max must be >= 1");
  GammaMonotonicityReport rep;
  const Scalar ba = p.b - p.a;
  for (int n = 1; n <= n_max; ++n) {
    const Scalar base = std::lgamma(p.rho + p.a * Scalar(n));
    for (int k = 1; k <= n; ++k) {
      const Scalar shifted = std::lgamma(p.rho + p.a * Scalar(n) + ba * Scalar(k));
      if (!(shifted > base)) {
        rep.holds = false;
        rep.n = n;
        rep.k = k;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace fracsolve::specfun
