#pragma once

// Universal Thomas-Fermi screening function Phi(x):
//   Phi'' = Phi^{3/2} / sqrt(x),  Phi(0) = 1,  Phi(inf) = 0.
// Solved once per process by shooting on the initial slope and cached.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "teff/error.hpp"

namespace teff {

class ThomasFermi {
 public:
  static const ThomasFermi& instance() {
    static const ThomasFermi table;
    return table;
  }

  double initial_slope() const { return slope_; }
  double match_point() const { return x_match_; }
  /// C in the large-x form Phi ~ 144/x^3 (1 - C x^-k + ...), k = (sqrt(73)-7)/2.
  double tail_coefficient() const { return tail_c_; }

  double value(double x) const {
    check(x);
    if (x >= x_match_) return series(x).value;
    return interpolate(x).value;
  }

  double derivative(double x) const {
    check(x);
    if (x >= x_match_) return series(x).slope;
    return interpolate(x).slope;
  }

  /// Taken from the differential equation itself; diverges like 2/sqrt(x) at 0.
  double second_derivative(double x) const {
    check(x);
    const double phi = value(x);
    if (x == 0.0) return INFINITY;
    return std::pow(std::max(phi, 0.0), 1.5) / std::sqrt(x);
  }

 private:
  using State = std::array<double, 2>;  // (Phi, dPhi/dx) as functions of t = sqrt(x)

  struct Sample {
    double value;
    double slope;
  };

  static constexpr double x_match_ = 20.0;
  static constexpr double x_shoot_ = 2500.0;
  static constexpr std::size_t table_intervals_ = 4096;
  static constexpr std::size_t series_terms_ = 30;

  double slope_ = 0.0;
  double tail_c_ = 0.0;
  double dt_ = 0.0;
  std::vector<double> phi_;
  std::vector<double> dphi_;
  std::array<double, series_terms_> coeff_{};
  double decay_exponent_ = 0.0;

  ThomasFermi() {
    decay_exponent_ = (std::sqrt(73.0) - 7.0) / 2.0;
    build_series();
    slope_ = shoot();
    build_table();
    fit_tail();
  }

  static void check(double x) {
    if (!(x >= 0.0)) throw Error(ErrorKind::Domain, "Thomas-Fermi argument must be >= 0");
  }

  // In t = sqrt(x) the system is regular at the origin.
  static void rhs(const State& y, State& dy, double t) {
    dy[0] = 2.0 * t * y[1];
    dy[1] = 2.0 * std::pow(std::max(y[0], 0.0), 1.5);
  }

  // -1: Phi crossed zero (slope too steep); +1: Phi turned upward (too shallow); 0: neither.
  static int classify(double slope, double t_end) {
    using namespace boost::numeric::odeint;
    auto stepper = make_dense_output(1e-18, 1e-15, runge_kutta_dopri5<State>());
    State y{1.0, slope};
    stepper.initialize(y, 0.0, 1e-4);
    while (stepper.current_time() < t_end) {
      stepper.do_step(rhs);
      const State& s = stepper.current_state();
      if (s[0] < 0.0) return -1;
      if (s[1] > 0.0) return +1;
    }
    return 0;
  }

  static double shoot() {
    double steep = -1.7;
    double shallow = -1.5;
    const double t_end = std::sqrt(x_shoot_);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (steep + shallow);
      if (mid == steep || mid == shallow) break;
      const int c = classify(mid, t_end);
      if (c == 0) return mid;
      if (c < 0)
        steep = mid;
      else
        shallow = mid;
    }
    return 0.5 * (steep + shallow);
  }

  void build_table() {
    using namespace boost::numeric::odeint;
    const double t_end = std::sqrt(x_match_);
    dt_ = t_end / static_cast<double>(table_intervals_);
    std::vector<double> times(table_intervals_ + 1);
    for (std::size_t i = 0; i <= table_intervals_; ++i) times[i] = dt_ * static_cast<double>(i);
    times.back() = t_end;
    phi_.clear();
    dphi_.clear();
    State y{1.0, slope_};
    auto stepper = make_dense_output(1e-18, 1e-15, runge_kutta_dopri5<State>());
    integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-4, [this](const State& s, double) {
      phi_.push_back(s[0]);
      dphi_.push_back(s[1]);
    });
  }

  Sample interpolate(double x) const {
    const double t = std::sqrt(x);
    std::size_t i = static_cast<std::size_t>(t / dt_);
    if (i >= table_intervals_) i = table_intervals_ - 1;
    const double t0 = dt_ * static_cast<double>(i);
    const double u = (t - t0) / dt_;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    const double t1 = t0 + dt_;
    // Hermite in t using the exact t-derivatives of both components.
    const double p0 = phi_[i], p1 = phi_[i + 1];
    const double q0 = dphi_[i], q1 = dphi_[i + 1];
    const double dp0 = 2 * t0 * q0, dp1 = 2 * t1 * q1;
    const double dq0 = 2 * std::pow(std::max(p0, 0.0), 1.5);
    const double dq1 = 2 * std::pow(std::max(p1, 0.0), 1.5);
    return {h00 * p0 + h10 * dt_ * dp0 + h01 * p1 + h11 * dt_ * dp1,
            h00 * q0 + h10 * dt_ * dq0 + h01 * q1 + h11 * dt_ * dq1};
  }

  // Phi = 144/x^3 u(s), s = C x^-k. Plugging in gives
  // ((3+jk)(4+jk) - 18) a_j = 12 [u^{3/2}]_j (nonlinear part), a_0 = 1, a_1 = -1.
  void build_series() {
    const double k = decay_exponent_;
    coeff_.fill(0.0);
    coeff_[0] = 1.0;
    coeff_[1] = -1.0;
    for (std::size_t j = 2; j < series_terms_; ++j) {
      coeff_[j] = 0.0;
      const double nonlinear = power_coefficient(j);
      const double jk = static_cast<double>(j) * k;
      coeff_[j] = 12.0 * nonlinear / ((3 + jk) * (4 + jk) - 18.0);
    }
  }

  // j-th coefficient of u^{3/2} (Miller's recurrence) with the current coeff_.
  double power_coefficient(std::size_t n) const {
    constexpr double p = 1.5;
    std::array<double, series_terms_> v{};
    v[0] = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
      double s = 0.0;
      for (std::size_t j = 1; j <= m; ++j)
        s += ((p + 1) * static_cast<double>(j) - static_cast<double>(m)) * coeff_[j] * v[m - j];
      v[m] = s / static_cast<double>(m);
    }
    return v[n];
  }

  Sample series_with(double x, double c) const {
    const double s = c * std::pow(x, -decay_exponent_);
    double u = 0.0, du = 0.0;
    for (std::size_t j = series_terms_; j-- > 0;) {
      du = du * s + u;
      u = u * s + coeff_[j];
    }
    const double x3 = x * x * x;
    return {144.0 / x3 * u, -144.0 / (x3 * x) * (3.0 * u + decay_exponent_ * s * du)};
  }

  Sample series(double x) const { return series_with(x, tail_c_); }

  void fit_tail() {
    const double target = phi_.back();
    double lo = 5.0, hi = 25.0;
    // series value decreases with C at the match point
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (series_with(x_match_, mid).value > target)
        lo = mid;
      else
        hi = mid;
    }
    tail_c_ = 0.5 * (lo + hi);
  }
};

/// Screening factor g = Phi(x) of the Thomas-Fermi atom.
inline double tf_screening(double x) { return ThomasFermi::instance().value(x); }

}  // namespace teff
