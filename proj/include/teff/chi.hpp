#pragma once

// The chi_d transform of a potential and the phi estimators built from it.
//   chi_d = M_d / (A^d B(d/2, 1/2)),  chi_1 = N_1 / A
//   phi   = chi_1 + (chi_1 - chi_d)/(d - 1)          additive
//   phi_m = (chi_1^d / chi_d)^{1/(d-1)}              multiplicative
//   chi_inf = A sqrt(2/|W''(rho_m)|) = 1/sqrt(kappa(r_m) + 2)

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "teff/error.hpp"
#include "teff/potential.hpp"
#include "teff/quadrature.hpp"
#include "teff/slice.hpp"

namespace teff {

inline double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

/// Normalisation m_d = B(d/2, 1/2): the Coulomb value of M_d / A^d.
inline double coulomb_moment(double d) { return std::exp(log_beta(0.5 * d, 0.5)); }

inline double chi_d(const Potential& p, const EnergySlice& s, double d, const QuadratureConfig& cfg = {}) {
  if (!(d > 0.0)) throw Error(ErrorKind::Domain, "chi_d needs d > 0");
  const double M = moment_M(p, s, d, cfg);
  return std::exp(std::log(M) - d * std::log(s.A) - log_beta(0.5 * d, 0.5));
}

inline double chi_d(const Potential& p, double E, double d, const QuadratureConfig& cfg = {}) {
  return chi_d(p, analyze_slice(p, E), d, cfg);
}

/// Count form: chi_1 = N_1/A with N_1 = I(E, 0); chi_d = d! N_d / (2 A^d) for d >= 2.
inline double chi_d_from_count(const Potential& p, const EnergySlice& s, int d, const QuadratureConfig& cfg = {}) {
  if (d < 1) throw Error(ErrorKind::Domain, "chi_d needs d >= 1");
  if (d == 1) return action_I(p, s, 0.0, cfg) / s.A;
  return std::tgamma(d + 1.0) * bound_count_N(p, s, d, cfg) / (2.0 * std::pow(s.A, d));
}

struct ChiInfinity {
  double value = 0.0;                ///< curvature form
  std::optional<double> kappa_form;  ///< 1/sqrt(kappa(r_m) + 2) when kappa exists
  bool boundary = false;             ///< maximum on the domain edge: chi_d -> 0
};

/// W''(rho_m): 5-point centred differences, one Richardson step between h and 2h.
inline double curvature_at_max(const Potential& p, const EnergySlice& s, double h = 1e-3) {
  auto w = [&](double x) { return effective_W(p, s.E, s.rho_m + x); };
  auto d2 = [&](double k) {
    return (-w(2 * k) + 16.0 * w(k) - 30.0 * w(0.0) + 16.0 * w(-k) - w(-2 * k)) / (12.0 * k * k);
  };
  return (16.0 * d2(h) - d2(2.0 * h)) / 15.0;
}

inline ChiInfinity chi_infinity_detail(const Potential& p, const EnergySlice& s) {
  ChiInfinity c;
  if (s.boundary_max) {
    // M_d ~ A^d / d near a boundary maximum while m_d ~ d^{-1/2}: chi_d -> 0
    c.boundary = true;
    c.value = 0.0;
    return c;
  }
  c.value = s.A * std::sqrt(2.0 / std::abs(curvature_at_max(p, s)));
  if (s.kappa_at_rm && *s.kappa_at_rm > -2.0) c.kappa_form = 1.0 / std::sqrt(*s.kappa_at_rm + 2.0);
  return c;
}

inline double chi_infinity(const Potential& p, const EnergySlice& s) { return chi_infinity_detail(p, s).value; }
inline double chi_infinity(const Potential& p, double E) { return chi_infinity(p, analyze_slice(p, E)); }

inline void require_d_above_one(double d) {
  if (!(d > 1.0)) throw Error(ErrorKind::Domain, "phi estimators need d > 1");
}

inline double phi_additive(double chi1, double chid, double d) {
  require_d_above_one(d);
  return chi1 + (chi1 - chid) / (d - 1.0);
}

inline double phi_multiplicative(double chi1, double chid, double d) {
  require_d_above_one(d);
  return std::pow(std::pow(chi1, d) / chid, 1.0 / (d - 1.0));
}

inline double phi_additive(const Potential& p, double E, double d, const QuadratureConfig& cfg = {}) {
  const EnergySlice s = analyze_slice(p, E);
  return phi_additive(chi_d(p, s, 1.0, cfg), chi_d(p, s, d, cfg), d);
}

inline double phi_multiplicative(const Potential& p, double E, double d, const QuadratureConfig& cfg = {}) {
  const EnergySlice s = analyze_slice(p, E);
  return phi_multiplicative(chi_d(p, s, 1.0, cfg), chi_d(p, s, d, cfg), d);
}

struct PhiApproximations {
  double phi_as = 0.0;   ///< chi_1 + (chi_1 - chi_inf)/d
  double chi_Das = 0.0;  ///< chi_inf + (chi_1 - chi_inf)/D at D = d/(d+1); algebraically equal to phi_as
  double chi_D = 0.0;    ///< quadrature chi_D at D = d/(d+1)
  double ratio_R = 0.0;  ///< phi_m / phi
  double s = 0.0;        ///< phi_as / phi
  double w = 0.0;        ///< chi_D / phi
};

inline PhiApproximations phi_approximations(const Potential& p, const EnergySlice& sl, double d,
                                            const QuadratureConfig& cfg = {}) {
  require_d_above_one(d);
  const double chi1 = chi_d(p, sl, 1.0, cfg);
  const double chid = chi_d(p, sl, d, cfg);
  const double cinf = chi_infinity(p, sl);
  const double phi = phi_additive(chi1, chid, d);
  const double D = d / (d + 1.0);
  PhiApproximations a;
  a.phi_as = chi1 + (chi1 - cinf) / d;
  a.chi_Das = cinf + (chi1 - cinf) / D;
  a.chi_D = chi_d(p, sl, D, cfg);
  a.ratio_R = phi_multiplicative(chi1, chid, d) / phi;
  a.s = a.phi_as / phi;
  a.w = a.chi_D / phi;
  return a;
}

inline PhiApproximations phi_approximations(const Potential& p, double E, double d, const QuadratureConfig& cfg = {}) {
  return phi_approximations(p, analyze_slice(p, E), d, cfg);
}

namespace detail {

inline double log_chi_power_law(double mu, double d) {
  if (mu > 0.0)
    return 0.5 * (2.0 + mu) * d / mu * std::log(0.5 * (2.0 + mu)) + 0.5 * d * std::log(2.0) -
           (0.5 * d + 1.0) * std::log(mu) + log_beta(d / mu, 0.5 * d + 1.0) - log_beta(0.5 * d, 0.5);
  const double m = -mu;
  return 0.5 * (2.0 - m) * d / m * std::log(2.0 / (2.0 - m)) + 0.5 * d * std::log(2.0) -
         (0.5 * d + 1.0) * std::log(m) + log_beta(d * (2.0 - m) / (2.0 * m), 0.5 * d + 1.0) -
         log_beta(0.5 * d, 0.5);
}

}  // namespace detail

/// Closed-form chi_d for V = b r^mu (E-independent). mu = 0 is the logarithmic
/// limit, taken as the mean of mu = +-1e-6.
inline double chi_power_law_closed(double mu, double d) {
  if (!(mu > -2.0) || !std::isfinite(mu)) throw Error(ErrorKind::Domain, "power-law chi needs mu > -2");
  if (!(d > 0.0)) throw Error(ErrorKind::Domain, "power-law chi needs d > 0");
  if (mu == 0.0)
    return 0.5 * (std::exp(detail::log_chi_power_law(1e-6, d)) + std::exp(detail::log_chi_power_law(-1e-6, d)));
  return std::exp(detail::log_chi_power_law(mu, d));
}

/// chi_inf = 1/sqrt(mu + 2) for power laws.
inline double chi_infinity_power_law(double mu) {
  if (!(mu > -2.0)) throw Error(ErrorKind::Domain, "power-law chi needs mu > -2");
  return 1.0 / std::sqrt(mu + 2.0);
}

/// Box of any radius: chi_d = 1/(d B(d/2, 1/2)).
inline double chi_hard_wall_closed(double d) { return 1.0 / (d * coulomb_moment(d)); }

struct BCoefficients {
  double b1;
  double b3;
};

/// Leading coefficients of ln(chi_d/chi_inf) = b1/d + b3/d^3 + ... (b2 = b4 = 0).
inline BCoefficients b_coefficients(double mu) {
  if (!(mu > -2.0)) throw Error(ErrorKind::Domain, "b coefficients need mu > -2");
  const double b1 = (mu + 4.0) * (mu + 4.0) / (12.0 * (mu + 2.0)) - 0.75;
  const double b3 = (7.0 + 8.0 * mu * mu * mu / ((mu + 2.0) * (mu + 2.0))) / 360.0;
  return {b1, b3};
}

struct AdiabaticCorrection {
  double b1_add;
  double phi_add;
  double mu_m;  ///< kappa(r_m)
};

/// Correction from the r-dependence of kappa near r_m (zero for power laws).
inline AdiabaticCorrection adiabatic_correction(const Potential& p, const EnergySlice& s) {
  if (!s.kappa_at_rm) throw Error(ErrorKind::Domain, "adiabatic correction needs kappa at an interior maximum");
  const double k = *s.kappa_at_rm;
  const double h = 1e-4 * s.r_m;
  const double dk = (p.kappa(s.r_m + h) - p.kappa(s.r_m - h)) / (2.0 * h);
  const double b1 = (16.0 + k) / (24.0 * (k + 2.0)) * s.r_m * dk;
  return {b1, 4.0 * b1 / (3.0 * std::sqrt(k + 2.0)), k};
}

inline AdiabaticCorrection adiabatic_correction(const Potential& p, double E) {
  return adiabatic_correction(p, analyze_slice(p, E));
}

struct PhiEstimates {
  int d = 3;
  double chi_d = 0.0;
  double phi = 0.0;    ///< additive
  double phi_m = 0.0;  ///< multiplicative
  PhiApproximations approx;
};

/// Everything the transform yields at one (potential, E).
struct ChiProfile {
  double E = 0.0;
  double A = 0.0;
  double chi1 = 0.0;
  double chi_inf = 0.0;
  std::vector<PhiEstimates> per_d;

  const PhiEstimates& at(int d) const {
    for (const auto& e : per_d)
      if (e.d == d) return e;
    throw std::out_of_range("dimension " + std::to_string(d) + " not in profile");
  }
};

inline ChiProfile chi_profile(const Potential& p, const EnergySlice& s, const std::vector<int>& dims,
                              const QuadratureConfig& cfg = {}) {
  ChiProfile prof;
  prof.E = s.E;
  prof.A = s.A;
  prof.chi1 = chi_d(p, s, 1.0, cfg);
  prof.chi_inf = chi_infinity(p, s);
  for (int d : dims) {
    PhiEstimates e;
    e.d = d;
    e.chi_d = chi_d(p, s, d, cfg);
    e.phi = phi_additive(prof.chi1, e.chi_d, d);
    e.phi_m = phi_multiplicative(prof.chi1, e.chi_d, d);
    e.approx = phi_approximations(p, s, d, cfg);
    prof.per_d.push_back(e);
  }
  return prof;
}

inline ChiProfile chi_profile(const Potential& p, double E, const std::vector<int>& dims,
                              const QuadratureConfig& cfg = {}) {
  return chi_profile(p, analyze_slice(p, E), dims, cfg);
}

/// Operational "E -> -inf" for a screened well: the energy whose turning point
/// r_t has 1 - g(r_t) = variation, so g is flat to that level on (0, r_t).
inline double deep_energy(const Potential& p, double variation = 1e-4) {
  if (!p.get_if<ScreenedCoulomb>()) throw Error(ErrorKind::Domain, "deep-well energy is defined for screened wells");
  double lo = -60.0, hi = 20.0;  // in ln r
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (lo + hi);
    if (m == lo || m == hi) break;
    (1.0 - screening_factor(p, std::exp(m)) < variation ? lo : hi) = m;
  }
  return p.value(std::exp(lo));
}

}  // namespace teff
