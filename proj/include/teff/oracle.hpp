#pragma once

// Reference energies: closed-form Coulomb/oscillator ladders and a direct
// Numerov solve of psi'' = (lambda^2 - W(E, rho)) psi on a uniform rho grid.
// Deliberately independent of the action/moment quadrature.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "teff/error.hpp"
#include "teff/levels.hpp"
#include "teff/potential.hpp"
#include "teff/slice.hpp"

namespace teff {

enum class ReferenceKind { Coulomb, Oscillator };

/// Coulomb V = -Z/r: E = -Z^2 / (2 (nu + lambda)^2).
/// Oscillator V = b r^2: E = 2 sqrt(2 b) (nu + lambda/2).
inline double exact_reference_spectrum(ReferenceKind kind, double strength, const QuantumLevel& q) {
  if (!(strength > 0.0)) throw Error(ErrorKind::Domain, "reference strength must be > 0");
  if (kind == ReferenceKind::Coulomb) {
    const double n = q.nu() + q.lambda();
    return -strength * strength / (2.0 * n * n);
  }
  return 2.0 * std::sqrt(2.0 * strength) * (q.nu() + 0.5 * q.lambda());
}

struct ShootingConfig {
  double step = 2e-3;                 ///< h in rho
  double left_decay = 30.0;           ///< lambda (rho_m - rho_lo) at the left end
  double right_decay = 40.0;          ///< e-folds of WKB decay past the outer turning point
  double tolerance = 1e-13;           ///< relative eigenvalue tolerance
  std::optional<double> rho_lo;       ///< grid overrides
  std::optional<double> rho_hi;
  std::optional<double> match_rho;    ///< default: outer turning point at E
};

/// Numerov discretisation of one (potential, lambda) problem on a fixed grid.
class NumerovProblem {
 public:
  NumerovProblem(const Potential& p, double lambda, double E_top, const ShootingConfig& cfg)
      : lambda2_(lambda * lambda), cfg_(cfg) {
    const EnergySlice s = analyze_slice(p, E_top);
    const auto [dlo, dhi] = p.domain();
    const double rho_min = dlo > 0.0 ? std::log(dlo) : -700.0;

    double lo;
    if (cfg.rho_lo) {
      lo = *cfg.rho_lo;
    } else {
      // the growing partner e^{-lambda rho} of the seed dies out by e^{-2 left_decay};
      // for lambda = 0 the seed is a constant, so W itself must be negligible
      lo = lambda > 0.0 ? s.rho_m - cfg.left_decay / lambda : s.rho_m;
      while (lo > rho_min && effective_W(p, E_top, lo) > 1e-12 * s.A2()) lo -= 0.5;
    }
    lo = std::max(lo, rho_min);

    double hi;
    dirichlet_wall_ = p.is_hard_wall();
    if (cfg.rho_hi) {
      hi = *cfg.rho_hi;
    } else if (dirichlet_wall_ || std::isfinite(dhi)) {
      hi = std::log(dhi);
    } else {
      if (!std::isfinite(s.r_t))
        throw Error(ErrorKind::BracketMiss, "upper energy " + std::to_string(E_top) + " has no outer turning point");
      // walk out until the WKB decay exponent int sqrt(f) reaches right_decay
      hi = std::log(s.r_t);
      const double dx = 0.01;
      double decay = 0.0;
      while (decay < cfg.right_decay) {
        const double f = lambda2_ - effective_W(p, E_top, hi + dx);
        if (cfg.step * cfg.step * f > 1.0) break;  // Numerov stability limit
        hi += dx;
        decay += dx * std::sqrt(std::max(f, 0.0));
        if (hi > 700.0) break;
      }
    }
    if (!(hi > lo)) throw Error(ErrorKind::Domain, "empty shooting grid");
    n_ = static_cast<std::size_t>(std::ceil((hi - lo) / cfg.step));
    h_ = (hi - lo) / static_cast<double>(n_);
    rho0_ = lo;
    two_r2_.resize(n_ + 1);
    v_.resize(n_ + 1);
    for (std::size_t i = 0; i <= n_; ++i) {
      const double rho = rho0_ + h_ * static_cast<double>(i);
      const double r = std::exp(rho);
      two_r2_[i] = 2.0 * r * r;
      v_[i] = p.value(r);
    }
  }

  std::size_t size() const { return n_ + 1; }
  double step() const { return h_; }
  double rho(std::size_t i) const { return rho0_ + h_ * static_cast<double>(i); }

  /// Sign changes of the left-seeded solution over the whole grid: the number
  /// of eigenvalues below E.
  int count_below(double E) const {
    int nodes = 0;
    double prev = 0.0;
    sweep_left(E, n_, [&](std::size_t, double psi) {
      if (prev != 0.0 && psi * prev < 0.0) ++nodes;
      if (psi != 0.0) prev = psi;
    });
    return nodes;
  }

  struct Match {
    double mismatch;  ///< Numerov residual at the match point, both sides normalised to psi_m = 1
    int nodes;        ///< interior nodes of the matched solution
  };

  Match match(double E) const {
    const std::size_t m = match_index(E);
    double l_prev = 0.0, l_cur = 0.0, last = 0.0;
    int nodes = 0;
    sweep_left(E, m, [&](std::size_t i, double psi) {
      if (last != 0.0 && psi * last < 0.0) ++nodes;
      if (psi != 0.0) last = psi;
      if (i + 1 == m) l_prev = psi;
      if (i == m) l_cur = psi;
    });
    double r_next = 0.0, r_cur = 0.0;
    last = 0.0;
    sweep_right(E, m, [&](std::size_t i, double psi) {
      if (last != 0.0 && psi * last < 0.0) ++nodes;
      if (psi != 0.0) last = psi;
      if (i == m + 1) r_next = psi;
      if (i == m) r_cur = psi;
    });
    const double tm = t(E, m), tp = t(E, m - 1), tn = t(E, m + 1);
    const double res = (1.0 - tp) * l_prev / l_cur + (1.0 - tn) * r_next / r_cur - (2.0 + 10.0 * tm);
    return {res / h_, nodes};
  }

 private:
  double lambda2_;
  ShootingConfig cfg_;
  bool dirichlet_wall_ = false;
  std::size_t n_ = 0;
  double h_ = 0.0;
  double rho0_ = 0.0;
  std::vector<double> two_r2_;
  std::vector<double> v_;

  double f(double E, std::size_t i) const {
    if (v_[i] == kInf) return kInf;
    return lambda2_ - two_r2_[i] * (E - v_[i]);
  }
  double t(double E, std::size_t i) const { return h_ * h_ * f(E, i) / 12.0; }

  std::size_t match_index(double E) const {
    std::size_t m = 0;
    if (cfg_.match_rho) {
      m = static_cast<std::size_t>(std::llround((*cfg_.match_rho - rho0_) / h_));
    } else {
      for (std::size_t i = 0; i <= n_; ++i)
        if (f(E, i) < 0.0) m = i;  // last classically allowed point
    }
    return std::clamp<std::size_t>(m, 2, n_ - 2);
  }

  // psi ~ e^{lambda rho} seed at the left end, stepping to index `to`
  template <class Visit>
  void sweep_left(double E, std::size_t to, Visit&& visit) const {
    const double lam = std::sqrt(lambda2_);
    double a = 1.0, b = std::exp(lam * h_);
    visit(0, a);
    visit(1, b);
    for (std::size_t i = 1; i < to; ++i) {
      const double c = ((2.0 + 10.0 * t(E, i)) * b - (1.0 - t(E, i - 1)) * a) / (1.0 - t(E, i + 1));
      a = b;
      b = c;
      if (std::abs(b) > 1e150) {
        a *= 1e-150;
        b *= 1e-150;
      }
      visit(i + 1, b);
    }
  }

  // psi = 0 at the right end (decayed tail or hard wall), stepping down to `to`
  template <class Visit>
  void sweep_right(double E, std::size_t to, Visit&& visit) const {
    double a = 0.0, b = 1e-30;
    visit(n_, a);
    visit(n_ - 1, b);
    for (std::size_t i = n_ - 1; i > to; --i) {
      const double c = ((2.0 + 10.0 * t(E, i)) * b - (1.0 - t(E, i + 1)) * a) / (1.0 - t(E, i - 1));
      a = b;
      b = c;
      if (std::abs(b) > 1e150) {
        a *= 1e-150;
        b *= 1e-150;
      }
      visit(i - 1, b);
    }
  }
};

/// Energy of level q inside [E_lo, E_hi]: node-count bisection isolates the
/// n_r-th eigenvalue, then the matching residual at the outer turning point is
/// bisected to tolerance.
inline double numerov_eigenvalue(const Potential& p, const QuantumLevel& q, double E_lo, double E_hi,
                                 const ShootingConfig& cfg = {}) {
  if (!(E_hi > E_lo)) throw Error(ErrorKind::BracketMiss, "empty energy bracket");
  const NumerovProblem prob(p, q.lambda(), E_hi, cfg);
  const int n = q.n_r;
  const int c_lo = prob.count_below(E_lo), c_hi = prob.count_below(E_hi);
  if (c_lo > n || c_hi <= n)
    throw Error(ErrorKind::BracketMiss, "bracket [" + std::to_string(E_lo) + ", " + std::to_string(E_hi) +
                                            "] holds levels " + std::to_string(c_lo) + ".." +
                                            std::to_string(c_hi - 1) + ", not n_r = " + std::to_string(n));
  double a = E_lo, b = E_hi;
  auto narrow = [](double x, double y, double rel) { return y - x <= rel * std::max(1.0, std::abs(x)); };
  while (!narrow(a, b, 1e-8)) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    (prob.count_below(m) > n ? b : a) = m;
  }
  // matching residual: continuous through the eigenvalue inside this narrow bracket
  double ga = prob.match(a).mismatch, gb = prob.match(b).mismatch;
  if (ga * gb < 0.0) {
    while (!narrow(a, b, cfg.tolerance)) {
      const double m = 0.5 * (a + b);
      if (m == a || m == b) break;
      const double gm = prob.match(m).mismatch;
      if ((gm < 0.0) == (ga < 0.0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
    }
  } else {
    while (!narrow(a, b, cfg.tolerance)) {
      const double m = 0.5 * (a + b);
      if (m == a || m == b) break;
      (prob.count_below(m) > n ? b : a) = m;
    }
  }
  const double E = 0.5 * (a + b);
  const int nodes = prob.match(E).nodes;
  if (nodes != n)
    throw Error(ErrorKind::NodeCountMismatch,
                "eigenfunction at E = " + std::to_string(E) + " has " + std::to_string(nodes) +
                    " nodes, expected " + std::to_string(n));
  return E;
}

/// Expands a bracket around a guess until it holds level q, then solves.
/// Throws NoBoundState when the well has no such level below its continuum.
inline double numerov_search(const Potential& p, const QuantumLevel& q, double guess, const ShootingConfig& cfg = {}) {
  const double ceiling = p.energy_ceiling();
  const double floor = p.energy_floor();
  const double width = 0.05 * std::max(std::abs(guess), 1e-3 * p.energy_scale());
  double lo = guess - width, hi = guess + width;
  if (std::isfinite(floor)) lo = std::max(lo, floor);
  if (std::isfinite(ceiling) && hi >= ceiling) hi = ceiling - 0.5 * (ceiling - std::min(guess, lo));
  for (int it = 0; it < 200; ++it) {
    const NumerovProblem prob(p, q.lambda(), hi, cfg);
    const int c_lo = prob.count_below(lo), c_hi = prob.count_below(hi);
    if (c_lo <= q.n_r && c_hi > q.n_r) return numerov_eigenvalue(p, q, lo, hi, cfg);
    if (c_lo > q.n_r) {
      const double w = hi - lo;
      lo -= w;
      if (std::isfinite(floor)) lo = std::max(lo, floor);
    }
    if (c_hi <= q.n_r) {
      if (std::isfinite(ceiling)) {
        if (ceiling - hi < 1e-12 * std::max(1.0, std::abs(ceiling)))
          throw Error(ErrorKind::NoBoundState, "no level n_r = " + std::to_string(q.n_r) + " below the continuum");
        hi = ceiling - 0.25 * (ceiling - hi);
      } else {
        hi += 2.0 * (hi - lo);
      }
    }
  }
  throw Error(ErrorKind::BracketMiss, "could not bracket level n_r = " + std::to_string(q.n_r));
}

}  // namespace teff
