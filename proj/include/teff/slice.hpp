#pragma once

// Energy-slice geometry: maximum of W(E, rho), amplitude A, outer turning point.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "teff/error.hpp"
#include "teff/potential.hpp"

namespace teff {

struct EnergySlice {
  double E = 0.0;
  double r_t = kInf;   ///< outer turning point V(r_t) = E; +inf when the well never closes
  double r_m = 0.0;    ///< argmax of W
  double rho_m = 0.0;  ///< ln r_m
  double A = 0.0;      ///< sqrt(max W)
  std::optional<double> kappa_at_rm;  ///< empty at a boundary maximum (hard wall)
  bool boundary_max = false;

  double A2() const { return A * A; }
};

namespace detail {

inline constexpr double kRhoScan = 80.0;
inline constexpr double kScanStep = 0.05;

/// Sign-bearing factor of dW/drho: 2(E - V) - r V'.
inline double w_slope_factor(const Potential& p, double E, double rho) {
  const double r = std::exp(rho);
  const Derivatives d = p.derivatives(r);
  return 2.0 * (E - d.V) - r * d.dV;
}

inline std::pair<double, double> rho_domain(const Potential& p) {
  const auto [lo, hi] = p.domain();
  const double a = lo > 0.0 ? std::log(lo) : -kRhoScan;
  const double b = std::isfinite(hi) ? std::log(hi) : kRhoScan;
  return {a, b};
}

}  // namespace detail

inline EnergySlice analyze_slice(const Potential& p, double E) {
  if (!std::isfinite(E)) throw Error(ErrorKind::Domain, "energy must be finite");
  const auto [lo, hi] = detail::rho_domain(p);
  const bool lo_is_edge = p.domain().first > 0.0;
  const bool hi_is_edge = std::isfinite(p.domain().second);

  const int n = std::max(8, static_cast<int>(std::ceil((hi - lo) / detail::kScanStep)));
  const double step = (hi - lo) / n;
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double v = effective_W(p, E, lo + i * step);
    w[i] = std::isnan(v) ? -kInf : v;
  }
  const int imax = static_cast<int>(std::max_element(w.begin(), w.end()) - w.begin());
  const double wmax = w[imax];
  if (!(wmax > 0.0))
    throw Error(ErrorKind::NoClassicalRegion, "W <= 0 everywhere at E = " + std::to_string(E));

  // Separate peaks: local maxima that stand out of the noise floor.
  int peaks = 0;
  for (int i = 0; i <= n; ++i) {
    if (!(w[i] > 1e-10 * wmax)) continue;
    const bool up = (i == 0) || w[i] > w[i - 1];
    const bool down = (i == n) || w[i] >= w[i + 1];
    if (up && down) ++peaks;
  }
  if (peaks > 1)
    throw Error(ErrorKind::MultipleMaxima,
                std::to_string(peaks) + " separated maxima of W at E = " + std::to_string(E));

  EnergySlice s;
  s.E = E;
  if (imax == n || imax == 0) {
    const bool edge = (imax == n) ? hi_is_edge : lo_is_edge;
    if (!edge) throw Error(ErrorKind::Divergent, "W grows without bound at E = " + std::to_string(E));
    s.boundary_max = true;
    s.rho_m = (imax == n) ? hi : lo;
    s.r_m = std::exp(s.rho_m);
    s.A = std::sqrt(wmax);
  } else {
    // golden section on the bracketing cells, then bisection on the sign of dW/drho
    double a = lo + (imax - 1) * step, b = lo + (imax + 1) * step;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = effective_W(p, E, x1), f2 = effective_W(p, E, x2);
    while (b - a > 1e-6) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = effective_W(p, E, x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = effective_W(p, E, x1);
      }
    }
    a -= 1e-6;
    b += 1e-6;
    if (detail::w_slope_factor(p, E, a) > 0.0 && detail::w_slope_factor(p, E, b) < 0.0) {
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        (detail::w_slope_factor(p, E, m) > 0.0 ? a : b) = m;
      }
    }
    s.rho_m = 0.5 * (a + b);
    s.r_m = std::exp(s.rho_m);
    s.A = std::sqrt(effective_W(p, E, s.rho_m));
  }

  // outer turning point: first r > r_m with V(r) >= E
  auto open = [&](double rho) { return p.value(std::exp(rho)) < E; };
  const double rho_end = hi_is_edge ? hi : 700.0;
  if (s.boundary_max && s.rho_m == hi) {
    s.r_t = s.r_m;
  } else if (E >= p.energy_ceiling()) {
    s.r_t = hi_is_edge ? std::exp(hi) : kInf;  // V < E everywhere beyond r_m
  } else {
    double inside = s.rho_m, dr = 0.5;
    while (true) {
      const double probe = std::min(inside + dr, rho_end);
      if (!open(probe)) {
        double a = inside, b = probe;
        for (int it = 0; it < 200; ++it) {
          const double m = 0.5 * (a + b);
          if (m == a || m == b || b - a < 1e-13) break;
          (open(m) ? a : b) = m;
        }
        s.r_t = std::exp(0.5 * (a + b));
        break;
      }
      if (probe >= rho_end) {
        s.r_t = hi_is_edge ? std::exp(hi) : kInf;
        break;
      }
      inside = probe;
      dr *= 2.0;
    }
  }

  if (!s.boundary_max) {
    try {
      s.kappa_at_rm = p.kappa(s.r_m);
    } catch (const Error&) {
      s.kappa_at_rm.reset();
    }
  }
  return s;
}

}  // namespace teff
