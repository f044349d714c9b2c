#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>

#include "fracsolve/errors.hpp"

namespace fracsolve {

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Parameter triple (a, b, rho) of the two-variable Mittag-Leffler function
/// E_{(a,b),rho}(x, y) = sum_n sum_{i<=n} binom(n,i) x^i y^{n-i} / Gamma(rho + b n - (b-a) i).
template <class Scalar = double>
struct MLParamsT {
  Scalar a{};
  Scalar b{};
  Scalar rho{};

  void validate() const {
    if (!(a > Scalar(0)) || !(b > Scalar(0)) || !(rho > Scalar(0)))
      throw InvalidParams("MLParams: a, b, rho must all be positive");
  }

  /// Regime the diffusion application lives in (0 < a < b < 1).
  bool application_regime() const { return a > Scalar(0) && a < b && b < Scalar(1); }
};
using MLParams = MLParamsT<double>;

/// Truncation control for the Mittag-Leffler series.
template <class Scalar = double>
struct SeriesControlT {
  Scalar tol = Scalar(1e-12);          // absolute tail tolerance
  int n_max = 500;                     // outer-index cap
  Scalar cancel_guard = Scalar(1e12);  // max |term| / |result| allowed

  void validate() const {
    if (!(tol > Scalar(0))) throw InvalidParams("SeriesControl: tol must be positive");
    if (n_max < 1) throw InvalidParams("SeriesControl: n_max must be >= 1");
    if (!(cancel_guard > Scalar(1)))
      throw InvalidParams("SeriesControl: cancel_guard must exceed 1");
  }
};
using SeriesControl = SeriesControlT<double>;

/// Orders (alpha1, alpha2), types (beta1, beta2), coupling mu and horizon T of
/// the two-term fractional diffusion equation.
template <class Scalar = double>
struct FractionalOrdersT {
  Scalar alpha1{};
  Scalar alpha2{};
  Scalar beta1{};
  Scalar beta2{};
  Scalar mu{};
  Scalar T{};

  void validate() const {
    if (!(alpha2 > Scalar(0) && alpha2 < alpha1 && alpha1 < Scalar(1)))
      throw ValidationError("orders: require 0 < alpha2 < alpha1 < 1 (got alpha1=" +
                            std::to_string(alpha1) + ", alpha2=" + std::to_string(alpha2) + ")");
    if (!(beta1 >= Scalar(0) && beta1 <= Scalar(1)))
      throw ValidationError("orders: beta1 must lie in [0,1]");
    if (!(beta2 >= Scalar(0) && beta2 <= Scalar(1)))
      throw ValidationError("orders: beta2 must lie in [0,1]");
    if (!(T > Scalar(0))) throw ValidationError("orders: T must be positive");
    if (!std::isfinite(mu)) throw ValidationError("orders: mu must be finite");
  }

  /// ML parameters of the mode kernel z^{alpha1-1} E_{(a,b),alpha1}.
  MLParamsT<Scalar> kernel_params() const { return {alpha1 - alpha2, alpha1, alpha1}; }
  /// ML parameters of the integrated kernel t^{alpha1} E_{(a,b),alpha1+1}.
  MLParamsT<Scalar> primitive_params() const { return {alpha1 - alpha2, alpha1, alpha1 + 1}; }

  /// Eigenvalue of mode k on (0,1) with Dirichlet ends.
  static Scalar eigenvalue(int k) {
    const Scalar kp = Scalar(k) * Scalar(EIGEN_PI);
    return kp * kp;
  }
};
using FractionalOrders = FractionalOrdersT<double>;

/// Uniform grid with M+1 nodes on [0,1], endpoints included. M must be even
/// (Simpson quadrature) and at least 2.
template <class Scalar = double>
struct SpaceGridT {
  VectorX<Scalar> x;

  static SpaceGridT uniform(Eigen::Index m_intervals) {
    if (m_intervals < 2 || m_intervals % 2 != 0)
      throw ValidationError("SpaceGrid: M must be even and >= 2");
    SpaceGridT g;
    g.x = VectorX<Scalar>::LinSpaced(m_intervals + 1, Scalar(0), Scalar(1));
    return g;
  }

  Eigen::Index intervals() const { return x.size() - 1; }
  Scalar h() const { return Scalar(1) / Scalar(intervals()); }
};
using SpaceGrid = SpaceGridT<double>;

/// Uniform grid with N+1 nodes on [0,T].
template <class Scalar = double>
struct TimeGridT {
  VectorX<Scalar> t;

  static TimeGridT uniform(Scalar horizon, Eigen::Index n_intervals) {
    if (!(horizon > Scalar(0))) throw ValidationError("TimeGrid: horizon must be positive");
    if (n_intervals < 2) throw ValidationError("TimeGrid: need at least 2 intervals");
    TimeGridT g;
    g.t = VectorX<Scalar>::LinSpaced(n_intervals + 1, Scalar(0), horizon);
    return g;
  }

  Eigen::Index intervals() const { return t.size() - 1; }
  Scalar horizon() const { return t[t.size() - 1]; }
  Scalar h() const { return horizon() / Scalar(intervals()); }
};
using TimeGrid = TimeGridT<double>;

}  // namespace fracsolve
