#pragma once

// Radial action I(E, lambda), moments M_d and bound-state estimates N_d.
//
// Every functional here is an integral of (W - lambda^2)_+^p over rho, split at
// the maximum rho_m. A side ending at a turning point is mapped by
//   rho = end + (rho_m - end)(1 - cos theta),  theta in [0, pi/2],
// which turns the (rho - end)^p endpoint behaviour into a smooth integrand.
// A side that never closes (lambda = 0 and W -> 0 asymptotically) is cut where
// the integrand is negligible and the remainder is added assuming a locally
// exponential decay of W in rho.

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "teff/error.hpp"
#include "teff/potential.hpp"
#include "teff/slice.hpp"

namespace teff {

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double tail_cut = 1e-12;          ///< truncate where the integrand < tail_cut * its peak
  unsigned max_subdivisions = 15;   ///< bisection depth of the adaptive Gauss-Kronrod rule

  void validate() const {
    if (!(rel_tol > 0.0)) throw Error(ErrorKind::Domain, "rel_tol must be > 0");
    if (!(tail_cut > 0.0 && tail_cut <= 1e-6)) throw Error(ErrorKind::Domain, "tail_cut must lie in (0, 1e-6]");
  }
};

namespace detail {

inline constexpr double kRhoWalkLimit = 340.0;  // keeps r^2 finite

enum class EndKind { Root, Wall, Tail };

struct End {
  double rho;
  EndKind kind;
};

struct Integrand {
  const Potential& p;
  double E;
  double level;  // lambda^2
  double power;

  // sign of W - level without forming W (no underflow at huge or tiny r)
  double gap(double rho) const {
    const double r = std::exp(rho);
    const double v = p.value(r);
    if (v == kInf) return -kInf;
    return (E - v) - level / (2.0 * r * r);
  }
  double W(double rho) const { return effective_W(p, E, rho); }
  double operator()(double rho) const {
    const double x = W(rho) - level;
    return x > 0.0 ? std::pow(x, power) : 0.0;
  }
  // d ln W / d rho = 2 - r V' / (E - V)
  double log_slope(double rho) const {
    const double r = std::exp(rho);
    const Derivatives d = p.derivatives(r);
    return 2.0 - r * d.dV / (E - d.V);
  }
};

inline double bisect_gap(const Integrand& f, double inside, double outside) {
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (inside + outside);
    if (m == inside || m == outside) break;
    (f.gap(m) > 0.0 ? inside : outside) = m;
  }
  return inside;
}

/// Walks from `start` in direction dir (+1/-1) to the end of the integration range.
/// With level == 0, W < wcut ends the range as a tail.
inline End find_end(const Integrand& f, double start, int dir, double wcut) {
  const auto [dlo, dhi] = f.p.domain();
  const bool edge = dir > 0 ? std::isfinite(dhi) : dlo > 0.0;
  const double limit = edge ? (dir > 0 ? std::log(dhi) : std::log(dlo)) : dir * kRhoWalkLimit;

  if (start == limit) return {limit, f.p.is_hard_wall() ? EndKind::Wall : EndKind::Tail};
  double inside = start, step = 0.25;
  while (true) {
    double probe = inside + dir * step;
    const bool at_limit = dir > 0 ? probe >= limit : probe <= limit;
    if (at_limit) probe = limit;
    if (!(f.gap(probe) > 0.0)) return {bisect_gap(f, inside, probe), EndKind::Root};
    if (f.level == 0.0 && f.W(probe) < wcut) return {probe, EndKind::Tail};
    if (at_limit) {
      if (f.p.is_hard_wall()) return {limit, EndKind::Wall};
      if (edge && f.level == 0.0) return {limit, EndKind::Tail};  // tabulated edge: extrapolate
      if (edge)
        throw Error(ErrorKind::Domain,
                    "classical region extends past the tabulated grid at E = " + std::to_string(f.E));
      throw Error(ErrorKind::Divergent, "W does not decay; integral diverges at E = " + std::to_string(f.E));
    }
    inside = probe;
    step = std::min(2.0 * step, 1.0);
  }
}

/// Remainder beyond a tail cut assuming W ~ W_c exp(k (rho - rho_c)).
inline double tail_remainder(const Integrand& f, double rho_c, int dir) {
  const double wc = f.W(rho_c);
  if (!(wc > 0.0)) return 0.0;
  const double k = f.log_slope(rho_c);
  if (!(dir * k < 0.0) || !std::isfinite(k))
    throw Error(ErrorKind::Divergent, "W does not decay beyond rho = " + std::to_string(rho_c) +
                                          " (local log-slope " + std::to_string(k) + ")");
  return std::pow(wc, f.power) / (f.power * std::abs(k));
}

template <class F>
double gk(F&& g, double a, double b, const QuadratureConfig& cfg) {
  if (a == b) return 0.0;
  if (a > b) return -gk(g, b, a, cfg);
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, a, b, cfg.max_subdivisions, cfg.rel_tol,
                                                                       &err);
}

/// Integral of f from rho_m to the end of one side (dir = +1 right, -1 left).
inline double side_integral(const Integrand& f, const EnergySlice& s, int dir, const QuadratureConfig& cfg) {
  // cut where the integrand W^p (not W) drops below tail_cut of its peak
  const double rel = std::max(std::min(cfg.tail_cut, std::pow(cfg.tail_cut, 1.0 / f.power)), 1e-280);
  const double wcut = rel * s.A2();
  const End end = find_end(f, s.rho_m, dir, wcut);
  const double span = s.rho_m - end.rho;
  if (end.kind != EndKind::Tail) {
    auto mapped = [&](double theta) {
      const double rho = end.rho + span * (1.0 - std::cos(theta));
      return f(rho) * std::abs(span) * std::sin(theta);
    };
    return gk(mapped, 0.0, M_PI / 2.0, cfg);
  }
  const double body = std::abs(gk(f, s.rho_m, end.rho, cfg));
  const double tail = tail_remainder(f, end.rho, dir);

  // the truncated estimate must survive a 10x deeper cut
  const End deeper = find_end(f, end.rho, dir, wcut * std::pow(0.1, 1.0 / f.power));
  double alt = tail;
  if (deeper.kind == EndKind::Tail)
    alt = std::abs(gk(f, end.rho, deeper.rho, cfg)) + tail_remainder(f, deeper.rho, dir);
  else if (deeper.kind == EndKind::Root)
    alt = std::abs(gk(f, end.rho, deeper.rho, cfg));
  if (std::abs(alt - tail) > 1e-6 * (body + tail))
    throw Error(ErrorKind::Divergent, "tail estimate unstable under a deeper cut at E = " + std::to_string(f.E));
  return body + alt;
}

/// Integral of (W - level)_+^power over rho.
inline double power_integral(const Potential& p, const EnergySlice& s, double level, double power,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  const Integrand f{p, s.E, level, power};
  return side_integral(f, s, -1, cfg) + side_integral(f, s, +1, cfg);
}

}  // namespace detail

/// I(E, lambda) = (1/pi) int sqrt(W - lambda^2) d rho.
inline double action_I(const Potential& p, const EnergySlice& s, double lambda, const QuadratureConfig& cfg = {}) {
  if (!(lambda >= 0.0)) throw Error(ErrorKind::Domain, "lambda must be >= 0");
  if (lambda >= s.A) {
    if (lambda - s.A <= 1e-12 * s.A) return 0.0;
    throw Error(ErrorKind::NoClassicalRegion,
                "lambda = " + std::to_string(lambda) + " exceeds A = " + std::to_string(s.A));
  }
  return detail::power_integral(p, s, lambda * lambda, 0.5, cfg) / M_PI;
}

inline double action_I(const Potential& p, double E, double lambda, const QuadratureConfig& cfg = {}) {
  return action_I(p, analyze_slice(p, E), lambda, cfg);
}

/// M_d = int W^{d/2} d rho over W > 0, for continuous d > 0.
inline double moment_M(const Potential& p, const EnergySlice& s, double d, const QuadratureConfig& cfg = {}) {
  if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorKind::Domain, "dimension must be > 0");
  return detail::power_integral(p, s, 0.0, 0.5 * d, cfg);
}

inline double moment_M(const Potential& p, double E, double d, const QuadratureConfig& cfg = {}) {
  return moment_M(p, analyze_slice(p, E), d, cfg);
}

/// N_d = B(3/2, (d-1)/2) / (pi (d-2)!) M_d, d >= 2.
inline double count_prefactor(int d) {
  if (d < 2) throw Error(ErrorKind::Domain, "bound-state count needs d >= 2");
  return boost::math::beta(1.5, 0.5 * (d - 1)) / (M_PI * std::tgamma(d - 1.0));
}

inline double bound_count_N(const Potential& p, const EnergySlice& s, int d, const QuadratureConfig& cfg = {}) {
  return count_prefactor(d) * moment_M(p, s, d, cfg);
}

inline double bound_count_N(const Potential& p, double E, int d, const QuadratureConfig& cfg = {}) {
  return bound_count_N(p, analyze_slice(p, E), d, cfg);
}

/// q = N_1 - I(E, lambda) - phi lambda.
inline double nonlinearity_residual(const Potential& p, double E, double lambda, double phi,
                                    const QuadratureConfig& cfg = {}) {
  const EnergySlice s = analyze_slice(p, E);
  return action_I(p, s, 0.0, cfg) - action_I(p, s, lambda, cfg) - phi * lambda;
}

/// int_0^A D~(lambda) I(E, lambda) d lambda with D~ = 2 lambda^{d-2}/(d-2)!,
/// by 64-point Gauss-Legendre; equals N_d when the order of integration is swapped.
inline double weighted_action_integral(const Potential& p, double E, int d, const QuadratureConfig& cfg = {}) {
  if (d < 2) throw Error(ErrorKind::Domain, "weighted integral needs d >= 2");
  const EnergySlice s = analyze_slice(p, E);
  const double norm = 2.0 / std::tgamma(d - 1.0);
  auto g = [&](double lam) { return norm * std::pow(lam, d - 2) * action_I(p, s, lam, cfg); };
  return boost::math::quadrature::gauss<double, 64>::integrate(g, 0.0, s.A);
}

}  // namespace teff
