#pragma once

// T-versus-phi diagram: straight level lines T = nu + phi lambda, and for each
// potential the curve (phi(E), A(E) chi_1(E)) traced over an energy grid. A
// curve meets a line exactly where the linear quantization condition holds.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "teff/chi.hpp"
#include "teff/error.hpp"
#include "teff/levels.hpp"
#include "teff/parallel.hpp"
#include "teff/potential.hpp"
#include "teff/spectrum.hpp"

namespace teff {

struct DiagramPoint {
  double x = 0.0;
  double y = 0.0;
};

struct DiagramLine {
  QuantumLevel level;
  std::string label;
  std::vector<DiagramPoint> points;  ///< (phi, T)
};

struct CurvePoint {
  double E = 0.0;
  double phi = 0.0;
  double count = 0.0;  ///< A chi_1 = N_1(E)
};

struct DiagramCurve {
  std::string label;
  std::vector<CurvePoint> points;
  std::vector<std::string> notes;  ///< dropped grid points
};

struct Crossing {
  std::string curve;
  std::string line;
  double E = 0.0;
  double phi = 0.0;
  double T = 0.0;
};

struct DiagramData {
  double phi_min = 0.0;
  double phi_max = 0.0;
  int d = 3;
  std::vector<DiagramLine> lines;
  std::vector<DiagramCurve> curves;
  std::vector<Crossing> crossings;
};

struct DiagramSource {
  Potential potential;
  std::vector<double> energies;  ///< ascending
};

namespace detail {

inline std::optional<CurvePoint> curve_point(const Potential& p, double E, int d, const QuadratureConfig& cfg,
                                             std::string* why) {
  try {
    const EnergySlice s = analyze_slice(p, E);
    const double chi1 = chi_d(p, s, 1.0, cfg);
    const double phi = phi_additive(chi1, chi_d(p, s, d, cfg), d);
    return CurvePoint{E, phi, s.A * chi1};
  } catch (const Error& e) {
    if (why) *why = e.what();
    return std::nullopt;
  }
}

}  // namespace detail

/// Energies where N_1(E) runs uniformly over [count_lo, count_hi], capped by
/// the well capacity. Useful as a diagram grid because the curve's y axis is N_1.
inline std::vector<double> count_grid(const Potential& p, double count_lo, double count_hi, int points,
                                      const QuadratureConfig& cfg = {}) {
  if (points < 2) throw Error(ErrorKind::Domain, "count grid needs at least two points");
  if (!(count_lo > 0.0) || !(count_hi > count_lo)) throw Error(ErrorKind::Domain, "count grid needs 0 < lo < hi");
  const double ceiling = p.energy_ceiling();
  if (std::isfinite(ceiling)) {
    try {
      // stay strictly below the capacity so the top point is still bound
      count_hi = std::min(count_hi, (1.0 - 1e-6) * detail::count_N1(p, ceiling, cfg));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Divergent && e.kind() != ErrorKind::NoClassicalRegion) throw;
    }
    if (!(count_hi > count_lo)) throw Error(ErrorKind::NoBoundState, "well capacity below the requested count range");
  }
  std::vector<double> E(points);
  parallel_for(points, [&](std::size_t i) {
    const double t = count_lo + (count_hi - count_lo) * static_cast<double>(i) / (points - 1);
    E[i] = detail::solve_count(p, t, cfg);
  });
  return E;
}

inline DiagramData diagram_data(const std::vector<QuantumLevel>& levels, double phi_min, double phi_max,
                                const std::vector<DiagramSource>& sources, int d = 3,
                                const QuadratureConfig& cfg = {}) {
  if (!(phi_min > 0.0) || !(phi_max > phi_min) || phi_max > 2.5)
    throw Error(ErrorKind::Domain, "phi range must satisfy 0 < phi_min < phi_max <= 2.5");
  DiagramData out;
  out.phi_min = phi_min;
  out.phi_max = phi_max;
  out.d = d;

  for (const auto& q0 : levels) {
    const QuantumLevel q(q0.n_r, q0.l, d);
    DiagramLine line{q, level_label(q), {}};
    for (double phi : {phi_min, phi_max}) line.points.push_back({phi, teff(q, phi)});
    out.lines.push_back(std::move(line));
  }

  for (const auto& src : sources) {
    const auto& grid = src.energies;
    std::vector<std::optional<CurvePoint>> pts(grid.size());
    std::vector<std::string> why(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { pts[i] = detail::curve_point(src.potential, grid[i], d, cfg, &why[i]); });

    DiagramCurve curve;
    curve.label = src.potential.describe();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (pts[i]) {
        curve.points.push_back(*pts[i]);
      } else {
        std::ostringstream os;
        os.precision(10);
        os << "dropped E=" << grid[i] << ": " << why[i];
        curve.notes.push_back(os.str());
      }
    }

    // curve minus line: N_1(E) - nu - phi(E) lambda
    for (const auto& line : out.lines) {
      const QuantumLevel& q = line.level;
      auto gap = [&](const CurvePoint& c) { return c.count - teff(q, c.phi); };
      for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CurvePoint lo = curve.points[i - 1], hi = curve.points[i];
        const double glo = gap(lo), ghi = gap(hi);
        if (glo == 0.0 || (glo < 0.0) == (ghi < 0.0)) continue;
        bool ok = true;
        for (int it = 0; it < 200 && hi.E - lo.E > 1e-12 * std::max(1.0, std::abs(lo.E)); ++it) {
          const auto mid = detail::curve_point(src.potential, 0.5 * (lo.E + hi.E), d, cfg, nullptr);
          if (!mid) {
            ok = false;
            break;
          }
          ((gap(*mid) < 0.0) == (glo < 0.0) ? lo : hi) = *mid;
        }
        if (!ok) {
          curve.notes.push_back("crossing with " + line.label + " not refined");
          continue;
        }
        const CurvePoint& c = std::abs(gap(lo)) < std::abs(gap(hi)) ? lo : hi;
        if (c.phi < phi_min || c.phi > phi_max) continue;
        out.crossings.push_back({curve.label, line.label, c.E, c.phi, teff(q, c.phi)});
      }
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  // avoid "-0.0000"
  if (std::string(buf) == "-0.0000") return "0.0000";
  return buf;
}

}  // namespace detail

/// `kind,label,x,y` rows; x is phi and y is T (lines, crossings) or A chi_1 (curves).
inline std::string to_csv(const DiagramData& data) {
  std::ostringstream os;
  os << "# x = phi, y = T or A*chi_1; values rounded to 4 decimals\n";
  os << "kind,label,x,y\n";
  for (const auto& l : data.lines)
    for (const auto& p : l.points)
      os << "line," << detail::csv_quote(l.label) << ',' << detail::fixed4(p.x) << ',' << detail::fixed4(p.y) << '\n';
  for (const auto& c : data.curves)
    for (const auto& p : c.points)
      os << "curve," << detail::csv_quote(c.label) << ',' << detail::fixed4(p.phi) << ',' << detail::fixed4(p.count)
         << '\n';
  for (const auto& x : data.crossings)
    os << "crossing," << detail::csv_quote(x.curve + " x " + x.line) << ',' << detail::fixed4(x.phi) << ','
       << detail::fixed4(x.T) << '\n';
  return os.str();
}

}  // namespace teff
