#pragma once

// Level ordering by T: shell-filling sequences, the kappa sign theorems and
// the Regge-trajectory convexity check.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "teff/chi.hpp"
#include "teff/error.hpp"
#include "teff/levels.hpp"
#include "teff/potential.hpp"
#include "teff/slice.hpp"

namespace teff {

struct Shell {
  QuantumLevel level;
  double T = 0.0;
  std::int64_t degeneracy = 0;
  std::int64_t occupancy = 0;  ///< cumulative
  bool tie = false;            ///< shares its T with a neighbour
  std::string label;
};

struct ShellSequence {
  double phi = 0.0;
  int d = 3;
  int spin = 1;
  std::vector<Shell> shells;
};

inline bool same_T(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

/// All (n_r, l) with T up to the count-th smallest value, ascending; equal T
/// is ordered by smaller l first and flagged.
inline ShellSequence shell_sequence(double phi, int d, int count, int spin = 1) {
  if (!(phi > 0.0)) throw Error(ErrorKind::Domain, "phi must be > 0");
  if (count < 1) throw Error(ErrorKind::Domain, "count must be >= 1");
  if (d < 2) throw Error(ErrorKind::Domain, "dimension must be >= 2");
  // T >= n_r + 1/2 and T >= phi l, so these bounds hold every candidate below
  // the T of (count - 1, 0)
  const int nmax = count;
  const int lmax = static_cast<int>(std::ceil((count + 1.0) / phi)) + 1;
  std::vector<Shell> all;
  for (int n = 0; n < nmax; ++n)
    for (int l = 0; l <= lmax; ++l) {
      Shell s;
      s.level = QuantumLevel(n, l, d);
      s.T = teff(s.level, phi);
      all.push_back(s);
    }
  std::sort(all.begin(), all.end(), [](const Shell& a, const Shell& b) {
    if (!same_T(a.T, b.T)) return a.T < b.T;
    return a.level.l < b.level.l;
  });
  const double cutoff = all[count - 1].T;
  ShellSequence seq{phi, d, spin, {}};
  std::int64_t occ = 0;
  for (const Shell& s0 : all) {
    if (s0.T > cutoff && !same_T(s0.T, cutoff)) break;
    Shell s = s0;
    s.degeneracy = degeneracy(s.level.l, d, spin);
    occ += s.degeneracy;
    s.occupancy = occ;
    s.label = level_label(s.level);
    seq.shells.push_back(s);
  }
  for (std::size_t i = 0; i < seq.shells.size(); ++i) {
    const bool prev = i > 0 && same_T(seq.shells[i - 1].T, seq.shells[i].T);
    const bool next = i + 1 < seq.shells.size() && same_T(seq.shells[i + 1].T, seq.shells[i].T);
    seq.shells[i].tie = prev || next;
  }
  return seq;
}

enum class Verdict { Agree, Disagree, NotApplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::Disagree: return "disagree";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

inline int sign_with_tol(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }

struct SignIdentity {
  std::string kappa_side;  ///< "kappa+1" or "kappa-2"
  bool mixed = false;      ///< kappa side changes sign on the probe domain
  int kappa_sign = 0;
  int phi_sign = 0;        ///< sgn(1 - phi) or sgn(1 - 2 phi)
  Verdict verdict = Verdict::NotApplicable;
};

struct TheoremReport {
  double E = 0.0;
  double phi = 0.0;
  double r_lo = 0.0, r_hi = 0.0;  ///< probed kappa domain
  SignIdentity first;   ///< sgn(kappa + 1) vs sgn(1 - phi)
  SignIdentity second;  ///< sgn(kappa - 2) vs sgn(1 - 2 phi)
};

/// kappa signs over the classically accessible domain (256 log points in
/// (1e-3 r_t, r_t)) against the phi(3) signs they predict. Wells that never
/// close at E are probed on (1e-3 r_m, 1e3 r_m).
inline TheoremReport ordering_theorem_signs(const Potential& p, double E_probe, const QuadratureConfig& cfg = {}) {
  const EnergySlice s = analyze_slice(p, E_probe);
  TheoremReport rep;
  rep.E = E_probe;
  rep.phi = phi_additive(chi_d(p, s, 1.0, cfg), chi_d(p, s, 3.0, cfg), 3.0);
  const double top = std::isfinite(s.r_t) ? s.r_t : 1e3 * s.r_m;
  rep.r_lo = 1e-3 * top;
  rep.r_hi = top;
  if (!std::isfinite(s.r_t)) rep.r_lo = 1e-3 * s.r_m;

  auto probe = [&](double shift, const char* name, double phi_side) {
    SignIdentity id;
    id.kappa_side = name;
    const int n = 256;
    const double a = std::log(rep.r_lo), b = std::log(rep.r_hi);
    bool first = true;
    for (int i = 0; i < n; ++i) {
      // open interval: skip both end points
      const double r = std::exp(a + (b - a) * (i + 0.5) / n);
      const int sg = sign_with_tol(p.kappa(r) + shift, 1e-13);
      if (first) {
        id.kappa_sign = sg;
        first = false;
      } else if (sg != id.kappa_sign) {
        id.mixed = true;
      }
    }
    id.phi_sign = sign_with_tol(phi_side, 1e-7);
    if (id.mixed) id.verdict = Verdict::NotApplicable;
    else id.verdict = id.kappa_sign == id.phi_sign ? Verdict::Agree : Verdict::Disagree;
    return id;
  };
  rep.first = probe(1.0, "kappa+1", 1.0 - rep.phi);
  rep.second = probe(-2.0, "kappa-2", 1.0 - 2.0 * rep.phi);
  return rep;
}

struct ReggeCheck {
  double lambda = 0.0;
  double Lambda = 0.0;        ///< (l+1)ln(l+1) + (l-1)ln(l-1) - 2 l ln l, always > 0
  double second_diff = 0.0;   ///< second difference of T_non over lambda = (chi_1 - chi_inf) Lambda
  int lhs = 0;                ///< sgn((chi_inf - chi_1) Lambda)
  int rhs = 0;                ///< sgn(2 - mu)
  bool agree = false;
};

/// Convexity of the Regge trajectories of V = b r^mu read off T_non.
/// lambda is taken as continuous (l + (d-2)/2 need not be an integer).
inline std::vector<ReggeCheck> regge_sign_check(double mu, const std::vector<double>& l_values, int d = 3) {
  if (!(mu > -1.0)) throw Error(ErrorKind::Domain, "Regge check needs mu > -1");
  const double chi1 = chi_power_law_closed(mu, 1.0);
  const double cinf = chi_infinity_power_law(mu);
  std::vector<ReggeCheck> out;
  for (double l : l_values) {
    ReggeCheck c;
    c.lambda = l + 0.5 * (d - 2);
    if (!(c.lambda > 1.0)) throw Error(ErrorKind::Domain, "Regge check needs lambda > 1");
    const double x = c.lambda;
    c.Lambda = (x + 1.0) * std::log(x + 1.0) + (x - 1.0) * std::log(x - 1.0) - 2.0 * x * std::log(x);
    c.second_diff = (chi1 - cinf) * c.Lambda;
    c.lhs = sign_with_tol((cinf - chi1) * c.Lambda, 1e-9);
    c.rhs = sign_with_tol(2.0 - mu, 1e-12);
    c.agree = c.lhs == c.rhs;
    out.push_back(c);
  }
  return out;
}

}  // namespace teff
