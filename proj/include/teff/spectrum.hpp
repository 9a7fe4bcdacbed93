#pragma once

// Energies from the quantization conditions
//   linear:     A(E) chi_1(E) = nu + phi(E) lambda
//   non-linear: A(E) chi_1(E) = nu + F(lambda; E)
// A(E) chi_1(E) = N_1(E) = I(E, 0) is strictly increasing in E, so the inner
// solve is a bracketed root search; phi(E) (or T_non(E)) is iterated outside.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "teff/chi.hpp"
#include "teff/error.hpp"
#include "teff/levels.hpp"
#include "teff/parallel.hpp"
#include "teff/potential.hpp"
#include "teff/quadrature.hpp"
#include "teff/slice.hpp"

namespace teff {

enum class QuantizationMode { Linear, Nonlinear };

inline const char* to_string(QuantizationMode m) { return m == QuantizationMode::Linear ? "linear" : "nonlinear"; }

struct SpectrumEntry {
  QuantumLevel level;
  double T = 0.0;
  double E = 0.0;
  QuantizationMode mode = QuantizationMode::Linear;
  int iterations = 0;
  double residual = 0.0;  ///< N_1(E) - T
};

struct SolverConfig {
  double damping = 0.5;
  double phi_tol = 1e-8;
  int max_iterations = 50;
  QuadratureConfig quad;
};

namespace detail {

/// Depth below which a well certainly holds nothing: -10 Z^2 for the Coulomb
/// part of screened and quarkonium wells, scaled like the potential.
inline double energy_floor_guess(const Potential& p) {
  const double f = p.energy_floor();
  if (std::isfinite(f)) return f;
  double z = 1.0;
  if (auto* s = p.get_if<ScreenedCoulomb>()) z = s->Z;
  if (auto* q = p.get_if<Quarkonium>()) z = q->B * q->alpha;
  if (auto* w = p.get_if<PowerLaw>()) z = std::abs(w->b);
  z *= p.energy_scale() / p.radius_scale();
  return -10.0 * z * z;
}

/// N_1(E), with "no classical region" counting as zero states.
inline double count_N1(const Potential& p, double E, const QuadratureConfig& cfg) {
  try {
    return action_I(p, analyze_slice(p, E), 0.0, cfg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NoClassicalRegion) return 0.0;
    throw;
  }
}

struct Bracket {
  double lo, hi;
};

/// Brackets N_1(E) = T. Throws NoBoundState when the well's capacity is below T.
inline Bracket bracket_count(const Potential& p, double T, const QuadratureConfig& cfg) {
  const double ceiling = p.energy_ceiling();
  double lo = energy_floor_guess(p);
  double step = std::max(1.0, std::abs(lo));
  for (int i = 0; count_N1(p, lo, cfg) >= T; ++i) {
    if (i > 200) throw Error(ErrorKind::NoConvergence, "no lower energy bracket");
    lo -= step;
    step *= 2.0;
  }
  double hi;
  if (std::isfinite(ceiling)) {
    bool divergent = false;
    try {
      if (count_N1(p, ceiling, cfg) < T)
        throw Error(ErrorKind::NoBoundState, "T = " + std::to_string(T) + " exceeds the well capacity N_1(" +
                                                 std::to_string(ceiling) + ")");
      hi = ceiling;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Divergent && e.kind() != ErrorKind::NoClassicalRegion) throw;
      divergent = true;  // infinitely many states below the ceiling
    }
    if (divergent) {
      hi = lo;
      for (int i = 0;; ++i) {
        if (i > 400) throw Error(ErrorKind::NoConvergence, "no upper energy bracket below the ceiling");
        const double probe = ceiling - 0.5 * (ceiling - hi);
        if (count_N1(p, probe, cfg) > T) {
          hi = probe;
          break;
        }
        lo = probe;
        hi = probe;
      }
    }
  } else {
    hi = std::max(lo, 0.0) + 1.0;
    step = std::max(1.0, std::abs(hi));
    for (int i = 0; count_N1(p, hi, cfg) <= T; ++i) {
      if (i > 200) throw Error(ErrorKind::NoConvergence, "no upper energy bracket");
      lo = hi;
      hi += step;
      step *= 2.0;
    }
  }
  return {lo, hi};
}

/// Root of N_1(E) = T: bisection to a 1e-12 bracket, then a secant step.
inline double solve_count(const Potential& p, double T, const QuadratureConfig& cfg) {
  Bracket b = bracket_count(p, T, cfg);
  double glo = count_N1(p, b.lo, cfg) - T, ghi = count_N1(p, b.hi, cfg) - T;
  for (int it = 0; it < 300; ++it) {
    if (b.hi - b.lo <= 1e-12 * std::max(1.0, std::abs(b.lo))) break;
    const double m = 0.5 * (b.lo + b.hi);
    if (m == b.lo || m == b.hi) break;
    const double g = count_N1(p, m, cfg) - T;
    if (g < 0.0) {
      b.lo = m;
      glo = g;
    } else {
      b.hi = m;
      ghi = g;
    }
  }
  if (ghi == glo) return 0.5 * (b.lo + b.hi);
  const double x = b.lo - glo * (b.hi - b.lo) / (ghi - glo);
  return std::clamp(x, b.lo, b.hi);
}

inline double initial_energy(const Potential& p) {
  try {
    analyze_slice(p, 0.0);
    return 0.0;
  } catch (const Error&) {
  }
  return p.energy_floor() >= 0.0 ? p.energy_floor() + p.energy_scale() : -p.energy_scale();
}

}  // namespace detail

/// Solves the quantization condition for one level.
inline SpectrumEntry quantize_energy(const Potential& p, const QuantumLevel& q,
                                     QuantizationMode mode = QuantizationMode::Linear, const SolverConfig& cfg = {}) {
  SpectrumEntry out;
  out.level = q;
  out.mode = mode;
  const double d = q.d;
  const bool fixed_phi = p.get_if<PowerLaw>() != nullptr;  // phi independent of E

  // update value (phi or T) at energy E
  auto linear_phi = [&](double E) {
    const EnergySlice s = analyze_slice(p, E);
    return phi_additive(chi_d(p, s, 1.0, cfg.quad), chi_d(p, s, d, cfg.quad), d);
  };
  auto nonlinear_T = [&](double E) {
    const EnergySlice s = analyze_slice(p, E);
    return teff_nonlinear(q, chi_d(p, s, 1.0, cfg.quad), chi_infinity(p, s), s.A);
  };

  const double E0 = detail::initial_energy(p);
  double T = mode == QuantizationMode::Linear ? teff(q, linear_phi(E0)) : nonlinear_T(E0);
  double E = detail::solve_count(p, T, cfg.quad);
  out.iterations = 1;
  if (!(mode == QuantizationMode::Linear && fixed_phi)) {
    bool converged = false;
    double prev_E = E;
    for (int it = 2; it <= cfg.max_iterations; ++it) {
      const double target = mode == QuantizationMode::Linear ? teff(q, linear_phi(E)) : nonlinear_T(E);
      const double next = (1.0 - cfg.damping) * T + cfg.damping * target;
      const double change = std::abs(next - T);
      T = next;
      prev_E = E;
      E = detail::solve_count(p, T, cfg.quad);
      out.iterations = it;
      // |delta T| = lambda |delta phi| in linear mode
      if (change <= cfg.phi_tol * std::max(1.0, q.lambda())) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw Error(ErrorKind::NoConvergence, "fixed point on phi(E) did not settle; last energies [" +
                                                std::to_string(std::min(prev_E, E)) + ", " +
                                                std::to_string(std::max(prev_E, E)) + "]");
  }
  out.T = T;
  out.E = E;
  out.residual = detail::count_N1(p, E, cfg.quad) - T;
  return out;
}

/// All levels with E <= E_max for l = 0..l_max, sorted by energy.
inline std::vector<SpectrumEntry> enumerate_bound_states(const Potential& p, double E_max, int d, int l_max,
                                                         QuantizationMode mode = QuantizationMode::Linear,
                                                         const SolverConfig& cfg = {}) {
  std::vector<std::vector<SpectrumEntry>> per_l(l_max + 1);
  parallel_for(l_max + 1, [&](std::size_t l) {
    for (int n = 0;; ++n) {
      SpectrumEntry e;
      try {
        e = quantize_energy(p, QuantumLevel(n, static_cast<int>(l), d), mode, cfg);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::NoBoundState) break;
        throw;
      }
      if (e.E > E_max) break;
      per_l[l].push_back(e);
    }
  });
  std::vector<SpectrumEntry> all;
  for (auto& v : per_l) all.insert(all.end(), v.begin(), v.end());
  std::stable_sort(all.begin(), all.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.E < b.E; });
  return all;
}

struct ScalingReport {
  double slope = 0.0;           ///< fitted d ln E / d ln T
  double expected_slope = 0.0;  ///< 2 mu / (mu + 2)
  bool slope_ok = false;
  int convexity = 0;            ///< sign of the second difference of E(0, l) over l
  int expected_convexity = 0;   ///< sgn(mu - 2)
  bool convexity_ok = false;
};

/// E ~ T^{2mu/(mu+2)} and the sign of d^2 E(0,l)/dl^2 for V = b r^mu, mu > 0.
inline ScalingReport power_law_scaling_check(double b, double mu, int d, const std::vector<QuantumLevel>& levels,
                                             const SolverConfig& cfg = {}) {
  if (!(mu > 0.0)) throw Error(ErrorKind::Domain, "scaling check needs mu > 0");
  if (levels.size() < 2) throw Error(ErrorKind::Domain, "scaling check needs at least two levels");
  const Potential p = Potential::power_law(b, mu);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& q0 : levels) {
    const QuantumLevel q(q0.n_r, q0.l, d);
    const SpectrumEntry e = quantize_energy(p, q, QuantizationMode::Linear, cfg);
    const double x = std::log(e.T), y = std::log(e.E);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(levels.size());
  ScalingReport r;
  r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.expected_slope = 2.0 * mu / (mu + 2.0);
  r.slope_ok = std::abs(r.slope - r.expected_slope) <= 1e-3;

  double e[3];
  for (int l = 0; l < 3; ++l) e[l] = quantize_energy(p, QuantumLevel(0, l + 1, d), QuantizationMode::Linear, cfg).E;
  const double second = e[2] - 2.0 * e[1] + e[0];
  r.convexity = second > 1e-7 * std::abs(e[1]) ? 1 : (second < -1e-7 * std::abs(e[1]) ? -1 : 0);
  r.expected_convexity = mu > 2.0 ? 1 : (mu < 2.0 ? -1 : 0);
  r.convexity_ok = r.convexity == r.expected_convexity;
  return r;
}

}  // namespace teff
