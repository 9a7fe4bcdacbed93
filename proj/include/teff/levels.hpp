#pragma once

// Quantum numbers (n_r, l, d), the effective quantum number T = nu + phi lambda
// and the orbital degeneracies.

#include <cmath>
#include <cstdint>
#include <string>

#include "teff/error.hpp"

namespace teff {

struct QuantumLevel {
  int n_r = 0;
  int l = 0;
  int d = 3;

  QuantumLevel() = default;
  QuantumLevel(int n_r_, int l_, int d_ = 3) : n_r(n_r_), l(l_), d(d_) {
    if (n_r < 0) throw Error(ErrorKind::Domain, "n_r must be >= 0");
    if (l < 0) throw Error(ErrorKind::Domain, "l must be >= 0");
    if (d < 2) throw Error(ErrorKind::Domain, "dimension must be >= 2");
  }

  double nu() const { return n_r + 0.5; }
  double lambda() const { return l + 0.5 * (d - 2); }

  friend bool operator==(const QuantumLevel&, const QuantumLevel&) = default;
};

inline double teff(const QuantumLevel& q, double phi) {
  if (!(phi > 0.0)) throw Error(ErrorKind::Domain, "phi must be > 0");
  return q.nu() + phi * q.lambda();
}

/// F(lambda) = chi_1 lambda + (chi_1 - chi_inf) lambda ln(lambda/A).
inline double nonlinear_F(double lambda, double chi1, double chi_inf, double A) {
  if (!(lambda > 0.0) || !(A > 0.0) || lambda / A < 0.05)
    throw Error(ErrorKind::LambdaTooSmall,
                "lambda/A = " + std::to_string(A > 0.0 ? lambda / A : 0.0) + " below 0.05; the log form is invalid");
  return chi1 * lambda + (chi1 - chi_inf) * lambda * std::log(lambda / A);
}

inline double teff_nonlinear(const QuantumLevel& q, double chi1, double chi_inf, double A) {
  return q.nu() + nonlinear_F(q.lambda(), chi1, chi_inf, A);
}

namespace detail {

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// spin * (Pi_l - Pi_{l-2})/(d-1)!, Pi_l = (l+1)...(l+d-1), Pi_l = 0 for l < 0.
inline std::int64_t degeneracy(int l, int d, int spin = 1) {
  if (l < 0 || d < 2) throw Error(ErrorKind::Domain, "degeneracy needs l >= 0 and d >= 2");
  if (spin != 1 && spin != 2) throw Error(ErrorKind::Domain, "spin factor must be 1 or 2");
  // Pi_l/(d-1)! = C(l+d-1, d-1)
  return spin * (detail::binomial(l + d - 1, d - 1) - (l >= 2 ? detail::binomial(l + d - 3, d - 1) : 0));
}

/// Leading term D~ = 2 lambda^{d-2}/(d-2)!.
inline double degeneracy_leading(double lambda, int d) {
  if (d < 2) throw Error(ErrorKind::Domain, "degeneracy needs d >= 2");
  return 2.0 * std::pow(lambda, d - 2) / std::tgamma(d - 1.0);
}

/// "3d"-style label with n = n_r + l + 1 in d = 3, "(n_r,l)" otherwise.
inline std::string level_label(const QuantumLevel& q) {
  static const char* letters = "spdfghiklmnoqrtuvwxyz";
  if (q.d == 3 && q.l < 21) return std::to_string(q.n_r + q.l + 1) + letters[q.l];
  return "(" + std::to_string(q.n_r) + "," + std::to_string(q.l) + ")";
}

}  // namespace teff
