#pragma once

// Centrally symmetric potential families and the local geometry of the
// effective radial function W(E, rho) = 2 r^2 (E - V(r)), rho = ln r.
// Units: hbar = m = 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "teff/error.hpp"
#include "teff/thomas_fermi.hpp"

namespace teff {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// V = b r^mu with mu > -2 and b mu > 0.
struct PowerLaw {
  double b = 1.0;
  double mu = 2.0;
};

enum class Screening { Exponential, InverseSquare, InversePow25, ThomasFermi };

/// V = -Z g(r) / r with g(0) = 1, g > 0, g' < 0.
struct ScreenedCoulomb {
  double Z = 1.0;
  Screening kind = Screening::Exponential;
};

/// V = B (-alpha/r + (1 - alpha) r^delta).
struct Quarkonium {
  double alpha = 0.5;
  double delta = 1.0;
  double B = 1.0;
};

/// V = 0 for r <= R, +inf beyond.
struct HardWall {
  double R = 1.0;
};

/// Tabulated V on an ascending grid; monotone cubic (Fritsch-Carlson) interpolation.
class TabulatedGrid {
 public:
  TabulatedGrid(std::vector<double> r, std::vector<double> v) : r_(std::move(r)), v_(std::move(v)) {
    if (r_.size() != v_.size()) throw Error(ErrorKind::InvalidPotential, "table columns differ in length");
    if (r_.size() < 8) throw Error(ErrorKind::InvalidPotential, "TooFewPoints: a table needs at least 8 points");
    for (std::size_t i = 0; i < r_.size(); ++i) {
      if (!std::isfinite(r_[i]) || !std::isfinite(v_[i]))
        throw Error(ErrorKind::InvalidPotential, "table holds a non-finite value");
      if (r_[i] <= 0.0) throw Error(ErrorKind::InvalidPotential, "NonPositiveRadius: table radii must be > 0");
      if (i > 0 && !(r_[i] > r_[i - 1]))
        throw Error(ErrorKind::InvalidPotential, "NotAscending: table radii must be strictly increasing");
    }
    build_slopes();
  }

  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& v() const { return v_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }

  double operator()(double r) const {
    // exp(log(r)) round trips may land an ulp outside the grid
    const double slack = 1e-12 * r_.back();
    if (r < r_.front() - slack || r > r_.back() + slack)
      throw Error(ErrorKind::Domain, "radius " + std::to_string(r) + " outside the tabulated range");
    r = std::clamp(r, r_.front(), r_.back());
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t i = (it == r_.begin()) ? 0 : static_cast<std::size_t>(it - r_.begin()) - 1;
    if (i >= r_.size() - 1) i = r_.size() - 2;
    const double h = r_[i + 1] - r_[i];
    const double t = (r - r_[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return h00 * v_[i] + h10 * h * m_[i] + h01 * v_[i + 1] + h11 * h * m_[i + 1];
  }

 private:
  std::vector<double> r_;
  std::vector<double> v_;
  std::vector<double> m_;

  void build_slopes() {
    const std::size_t n = r_.size();
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (v_[i + 1] - v_[i]) / (r_[i + 1] - r_[i]);
    m_.assign(n, 0.0);
    m_[0] = delta[0];
    m_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      m_[i] = (delta[i - 1] * delta[i] <= 0.0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (delta[i] == 0.0) {
        m_[i] = m_[i + 1] = 0.0;
        continue;
      }
      const double a = m_[i] / delta[i];
      const double b = m_[i + 1] / delta[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        m_[i] = tau * a * delta[i];
        m_[i + 1] = tau * b * delta[i];
      }
    }
  }
};

struct Tabulated {
  std::shared_ptr<const TabulatedGrid> grid;
  std::string source;
};

/// (V, dV/dr) as returned by eval_potential.
struct PotentialValue {
  double V;
  double dV;
};

struct Derivatives {
  double V;
  double dV;
  double d2V;
};

/// Screening factor with its logarithmic derivative ratios g'/g and g''/g,
/// which stay finite where g itself underflows.
struct ScreeningValue {
  double g;
  double dlog;
  double d2log;
};

/// Thomas-Fermi length b = (1/2)(3 pi / 4)^{2/3} Z^{-1/3}; x = r / b.
inline double thomas_fermi_length(double Z) {
  return 0.5 * std::pow(3.0 * M_PI / 4.0, 2.0 / 3.0) * std::cbrt(1.0 / Z);
}

inline ScreeningValue screening_value(const ScreenedCoulomb& s, double r) {
  switch (s.kind) {
    case Screening::Exponential:
      return {std::exp(-r), -1.0, 1.0};
    case Screening::InverseSquare: {
      const double u = 1.0 + r;
      return {1.0 / (u * u), -2.0 / u, 6.0 / (u * u)};
    }
    case Screening::InversePow25: {
      const double u = 1.0 + r;
      return {std::pow(u, -2.5), -2.5 / u, 8.75 / (u * u)};
    }
    case Screening::ThomasFermi: {
      const auto& tf = ThomasFermi::instance();
      const double b = thomas_fermi_length(s.Z);
      const double x = r / b;
      const double g = tf.value(x);
      return {g, tf.derivative(x) / (b * g), tf.second_derivative(x) / (b * b * g)};
    }
  }
  return {1.0, 0.0, 0.0};
}

/// A validated potential V(r) = energy_scale * V_family(radius_scale * r).
class Potential {
 public:
  using Family = std::variant<PowerLaw, ScreenedCoulomb, Quarkonium, HardWall, Tabulated>;

  explicit Potential(Family family, double energy_scale = 1.0, double radius_scale = 1.0)
      : family_(std::move(family)), energy_scale_(energy_scale), radius_scale_(radius_scale) {
    validate();
  }

  static Potential power_law(double b, double mu) { return Potential(PowerLaw{b, mu}); }
  static Potential coulomb(double Z) { return Potential(PowerLaw{-Z, -1.0}); }
  static Potential oscillator(double b) { return Potential(PowerLaw{b, 2.0}); }
  static Potential screened(Screening kind, double Z) { return Potential(ScreenedCoulomb{Z, kind}); }
  static Potential quarkonium(double alpha, double delta, double B) {
    return Potential(Quarkonium{alpha, delta, B});
  }
  static Potential hard_wall(double R) { return Potential(HardWall{R}); }
  static Potential tabulated(std::vector<double> r, std::vector<double> v, std::string source = {}) {
    return Potential(Tabulated{std::make_shared<const TabulatedGrid>(std::move(r), std::move(v)), std::move(source)});
  }

  /// c V(a r): multiplies energies by c and lengths by 1/a.
  Potential scaled(double energy_factor, double radius_factor) const {
    return Potential(family_, energy_scale_ * energy_factor, radius_scale_ * radius_factor);
  }

  const Family& family() const { return family_; }
  double energy_scale() const { return energy_scale_; }
  double radius_scale() const { return radius_scale_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&family_);
  }

  bool is_hard_wall() const { return std::holds_alternative<HardWall>(family_); }

  /// Radii on which V is defined, (r_lo, r_hi) with 0 and +inf for analytic families.
  std::pair<double, double> domain() const {
    if (auto* t = get_if<Tabulated>()) return {t->grid->r_min() / radius_scale_, t->grid->r_max() / radius_scale_};
    if (auto* w = get_if<HardWall>()) return {0.0, w->R / radius_scale_};
    return {0.0, kInf};
  }

  /// Infimum of V; energies below it have no classical region.
  double energy_floor() const {
    double f = -kInf;
    if (auto* p = get_if<PowerLaw>()) f = p->mu > 0 ? 0.0 : -kInf;
    if (is_hard_wall()) f = 0.0;
    if (auto* t = get_if<Tabulated>()) f = *std::min_element(t->grid->v().begin(), t->grid->v().end());
    return energy_scale_ * f;
  }

  /// Supremum of bound-state energies (the asymptotic value of V).
  double energy_ceiling() const {
    double c = kInf;
    if (auto* p = get_if<PowerLaw>()) c = p->mu > 0 ? kInf : 0.0;
    if (get_if<ScreenedCoulomb>()) c = 0.0;
    if (auto* t = get_if<Tabulated>()) c = t->grid->v().back();
    return energy_scale_ * c;
  }

  double value(double r) const { return energy_scale_ * base_value(radius_scale_ * r); }

  Derivatives derivatives(double r) const {
    const Derivatives d = base_derivatives(radius_scale_ * r);
    const double c = energy_scale_, a = radius_scale_;
    return {c * d.V, c * a * d.dV, c * a * a * d.d2V};
  }

  /// kappa(r) = 1 + r V''/V'; invariant under both scalings.
  double kappa(double r) const {
    if (!(r > 0.0)) throw Error(ErrorKind::Domain, "kappa needs r > 0");
    const double x = radius_scale_ * r;
    if (auto* p = get_if<PowerLaw>()) return p->mu;
    if (auto* s = get_if<ScreenedCoulomb>()) {
      const ScreeningValue g = screening_value(*s, x);
      return -1.0 + g.d2log * x * x / (g.dlog * x - 1.0);
    }
    const Derivatives d = base_derivatives(x);
    if (d.dV == 0.0 || !std::isfinite(d.dV)) throw Error(ErrorKind::Domain, "kappa undefined where V' = 0");
    return 1.0 + x * d.d2V / d.dV;
  }

  /// Mini-language form; parse_potential(describe()) reproduces the potential.
  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&os](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, PowerLaw>) {
            os << "power:b=" << f.b << ",mu=" << f.mu;
          } else if constexpr (std::is_same_v<F, ScreenedCoulomb>) {
            const char* k = f.kind == Screening::Exponential     ? "exp"
                            : f.kind == Screening::InverseSquare ? "inv2"
                            : f.kind == Screening::InversePow25  ? "inv25"
                                                                 : "tf";
            os << "screened:kind=" << k << ",Z=" << f.Z;
          } else if constexpr (std::is_same_v<F, Quarkonium>) {
            os << "quark:alpha=" << f.alpha << ",delta=" << f.delta << ",B=" << f.B;
          } else if constexpr (std::is_same_v<F, HardWall>) {
            os << "wall:R=" << f.R;
          } else {
            os << "table:path=" << f.source;
          }
        },
        family_);
    if (energy_scale_ != 1.0) os << ",vscale=" << energy_scale_;
    if (radius_scale_ != 1.0) os << ",rscale=" << radius_scale_;
    return os.str();
  }

 private:
  Family family_;
  double energy_scale_ = 1.0;
  double radius_scale_ = 1.0;

  void validate() const {
    if (!(energy_scale_ > 0.0) || !std::isfinite(energy_scale_))
      throw Error(ErrorKind::InvalidPotential, "vscale must be a finite positive number");
    if (!(radius_scale_ > 0.0) || !std::isfinite(radius_scale_))
      throw Error(ErrorKind::InvalidPotential, "rscale must be a finite positive number");
    std::visit(
        [](const auto& f) {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, PowerLaw>) {
            if (!std::isfinite(f.mu) || !(f.mu > -2.0))
              throw Error(ErrorKind::InvalidPotential, "InvalidExponent: mu must be > -2");
            if (!std::isfinite(f.b) || !(f.b * f.mu > 0.0))
              throw Error(ErrorKind::InvalidPotential, "NotAttractive: b * mu must be > 0");
          } else if constexpr (std::is_same_v<F, ScreenedCoulomb>) {
            if (!std::isfinite(f.Z) || !(f.Z > 0.0)) throw Error(ErrorKind::InvalidPotential, "Z must be > 0");
          } else if constexpr (std::is_same_v<F, Quarkonium>) {
            if (!(f.alpha > 0.0 && f.alpha < 1.0))
              throw Error(ErrorKind::InvalidPotential, "alpha must lie in (0, 1)");
            if (!std::isfinite(f.delta) || !(f.delta > 0.0))
              throw Error(ErrorKind::InvalidPotential, "delta must be > 0");
            if (!std::isfinite(f.B) || !(f.B > 0.0)) throw Error(ErrorKind::InvalidPotential, "B must be > 0");
          } else if constexpr (std::is_same_v<F, HardWall>) {
            if (!std::isfinite(f.R) || !(f.R > 0.0)) throw Error(ErrorKind::InvalidPotential, "R must be > 0");
          } else {
            if (!f.grid) throw Error(ErrorKind::InvalidPotential, "empty table");
          }
        },
        family_);
  }

  double base_value(double x) const {
    return std::visit(
        [x](const auto& f) -> double {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, PowerLaw>) {
            return f.b * std::pow(x, f.mu);
          } else if constexpr (std::is_same_v<F, ScreenedCoulomb>) {
            return -f.Z * screening_value(f, x).g / x;
          } else if constexpr (std::is_same_v<F, Quarkonium>) {
            return f.B * (-f.alpha / x + (1.0 - f.alpha) * std::pow(x, f.delta));
          } else if constexpr (std::is_same_v<F, HardWall>) {
            return x <= f.R * (1.0 + 1e-12) ? 0.0 : kInf;
          } else {
            return (*f.grid)(x);
          }
        },
        family_);
  }

  Derivatives base_derivatives(double x) const {
    return std::visit(
        [x](const auto& f) -> Derivatives {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, PowerLaw>) {
            const double v = f.b * std::pow(x, f.mu);
            return {v, f.mu * v / x, f.mu * (f.mu - 1.0) * v / (x * x)};
          } else if constexpr (std::is_same_v<F, ScreenedCoulomb>) {
            const ScreeningValue s = screening_value(f, x);
            const double zg = f.Z * s.g;
            return {-zg / x, zg * (1.0 - x * s.dlog) / (x * x),
                    -zg * (x * x * s.d2log - 2.0 * x * s.dlog + 2.0) / (x * x * x)};
          } else if constexpr (std::is_same_v<F, Quarkonium>) {
            const double p = (1.0 - f.alpha) * std::pow(x, f.delta);
            return {f.B * (-f.alpha / x + p), f.B * (f.alpha / (x * x) + f.delta * p / x),
                    f.B * (-2.0 * f.alpha / (x * x * x) + f.delta * (f.delta - 1.0) * p / (x * x))};
          } else if constexpr (std::is_same_v<F, HardWall>) {
            return {x <= f.R * (1.0 + 1e-12) ? 0.0 : kInf, 0.0, 0.0};
          } else {
            const TabulatedGrid& g = *f.grid;
            // centered differences on the interpolant, one-sided at the ends
            const double h = 1e-4 * x;
            const double lo = std::max(x - h, g.r_min());
            const double hi = std::min(x + h, g.r_max());
            const double mid = 0.5 * (lo + hi);
            const double vlo = g(lo), vhi = g(hi), vmid = g(mid);
            const double half = 0.5 * (hi - lo);
            return {g(x), (vhi - vlo) / (hi - lo), (vhi - 2.0 * vmid + vlo) / (half * half)};
          }
        },
        family_);
  }
};

/// (V, V') at r > 0.
inline PotentialValue eval_potential(const Potential& p, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::Domain, "potential evaluated at r <= 0");
  const auto [lo, hi] = p.domain();
  if (p.get_if<Tabulated>() && (r < lo * (1.0 - 1e-12) || r > hi * (1.0 + 1e-12)))
    throw Error(ErrorKind::Domain, "radius outside the tabulated range");
  const Derivatives d = p.derivatives(r);
  return {d.V, d.dV};
}

inline double kappa(const Potential& p, double r) { return p.kappa(r); }

/// W(E, rho) = 2 e^{2 rho} (E - V(e^rho)); negative in forbidden regions.
inline double effective_W(const Potential& p, double E, double rho) {
  const double r = std::exp(rho);
  const double v = p.value(r);
  if (v == kInf) return -kInf;
  return 2.0 * r * r * (E - v);
}

/// Screening factor g(r) of a screened Coulomb potential (radius scaling applied).
inline double screening_factor(const Potential& p, double r) {
  const auto* s = p.get_if<ScreenedCoulomb>();
  if (!s) throw Error(ErrorKind::Domain, "screening factor requested for a non-screened potential");
  return screening_value(*s, p.radius_scale() * r).g;
}

}  // namespace teff
