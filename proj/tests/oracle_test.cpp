#include <gtest/gtest.h>

#include <cmath>

#include "teff/oracle.hpp"
#include "teff/parse.hpp"

namespace teff {
namespace {

TEST(Exact, Formulas) {
  EXPECT_DOUBLE_EQ(exact_reference_spectrum(ReferenceKind::Coulomb, 1, QuantumLevel(0, 1)), -0.125);
  EXPECT_DOUBLE_EQ(exact_reference_spectrum(ReferenceKind::Oscillator, 0.5, QuantumLevel(2, 0)), 5.5);
  EXPECT_DOUBLE_EQ(exact_reference_spectrum(ReferenceKind::Coulomb, 2, QuantumLevel(0, 1, 4)), -0.32);
  EXPECT_THROW(exact_reference_spectrum(ReferenceKind::Coulomb, 0, QuantumLevel(0, 0)), Error);
}

TEST(Numerov, Examples) {
  EXPECT_NEAR(numerov_search(Potential::coulomb(1), QuantumLevel(0, 1), -0.1), -0.125, 1e-7);
  // first Airy zero 2.33810741 times 2^{-1/3}
  EXPECT_NEAR(numerov_search(Potential::power_law(1, 1), QuantumLevel(0, 0), 1.8), 1.85575708, 1e-5);
  EXPECT_NEAR(numerov_search(Potential::oscillator(0.5), QuantumLevel(2, 0), 5.0), 5.5, 1e-6);
  EXPECT_NEAR(numerov_search(Potential::coulomb(2), QuantumLevel(0, 1, 4), -0.3), -0.32, 1e-6);
}

TEST(Numerov, ReferenceFamilies) {
  for (int d : {2, 3, 5})
    for (int n = 0; n <= 2; ++n)
      for (int l = 0; l <= 2; ++l) {
        const QuantumLevel q(n, l, d);
        const double ec = exact_reference_spectrum(ReferenceKind::Coulomb, 1, q);
        EXPECT_NEAR(numerov_search(Potential::coulomb(1), q, 0.9 * ec), ec, 1e-5 * std::abs(ec)) << n << l << d;
        const double eo = exact_reference_spectrum(ReferenceKind::Oscillator, 2, q);
        EXPECT_NEAR(numerov_search(Potential::oscillator(2), q, 1.1 * eo), eo, 1e-5 * eo) << n << l << d;
      }
}

TEST(Numerov, FourthOrderConvergence) {
  const auto p = Potential::power_law(1, 1);
  double e[3];
  for (int k = 0; k < 3; ++k) {
    ShootingConfig c;
    c.step = 0.04 / (1 << k);
    e[k] = numerov_search(p, QuantumLevel(0, 0), 1.8, c);
  }
  EXPECT_NEAR((e[0] - e[1]) / (e[1] - e[2]), 16.0, 1.0);
}

TEST(Numerov, HardWall) {
  // j_l zeros: (0,0) pi, (0,1) 4.4934
  const auto w = Potential::hard_wall(1);
  EXPECT_NEAR(numerov_search(w, QuantumLevel(0, 0), 5.0), M_PI * M_PI / 2, 1e-5);
  EXPECT_NEAR(numerov_search(w, QuantumLevel(0, 1), 10.0), 4.493409457909064 * 4.493409457909064 / 2, 1e-5);
}

TEST(Numerov, Errors) {
  const auto c = Potential::coulomb(1);
  try {
    numerov_eigenvalue(c, QuantumLevel(0, 0), -0.4, -0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BracketMiss);
  }
  EXPECT_THROW(numerov_eigenvalue(c, QuantumLevel(0, 0), -0.3, -0.4), Error);
  try {
    numerov_search(parse_potential("screened:kind=exp,Z=1"), QuantumLevel(2, 0), -0.05);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoBoundState);
  }
}

}  // namespace
}  // namespace teff
