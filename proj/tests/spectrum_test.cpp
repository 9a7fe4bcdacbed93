#include <gtest/gtest.h>

#include <cmath>

#include "teff/oracle.hpp"
#include "teff/parse.hpp"
#include "teff/spectrum.hpp"

namespace teff {
namespace {

TEST(Quantize, ReferenceWellsAreExact) {
  for (int d : {2, 3, 5})
    for (int n = 0; n <= 2; ++n)
      for (int l = 0; l <= 2; ++l) {
        const QuantumLevel q(n, l, d);
        const auto c = quantize_energy(Potential::coulomb(2), q);
        EXPECT_NEAR(c.E, exact_reference_spectrum(ReferenceKind::Coulomb, 2, q), 1e-6 * std::abs(c.E));
        const auto o = quantize_energy(Potential::oscillator(0.5), q);
        EXPECT_NEAR(o.E, exact_reference_spectrum(ReferenceKind::Oscillator, 0.5, q), 1e-6 * o.E);
        EXPECT_LT(std::abs(c.residual), 1e-8);
      }
}

TEST(Quantize, PowerLawNeedsNoIteration) {
  const auto e = quantize_energy(Potential::power_law(1, 1), QuantumLevel(0, 0));
  EXPECT_EQ(e.iterations, 1);
  EXPECT_NEAR(e.E / 1.85575708, 1.0, 0.015);
}

TEST(Quantize, ScreenedWellConverges) {
  const auto p = parse_potential("screened:kind=exp,Z=20");
  const auto e = quantize_energy(p, QuantumLevel(0, 1));
  EXPECT_LT(e.E, 0.0);
  EXPECT_GT(e.iterations, 1);
  const EnergySlice s = analyze_slice(p, e.E);
  const double phi = phi_additive(chi_d(p, s, 1.0), chi_d(p, s, 3.0), 3.0);
  EXPECT_NEAR(e.T, teff(QuantumLevel(0, 1), phi), 1e-7);
  EXPECT_NEAR(e.E / numerov_search(p, QuantumLevel(0, 1), e.E), 1.0, 5e-3);
}

TEST(Quantize, NoBoundState) {
  const auto p = parse_potential("screened:kind=exp,Z=1");
  try {
    quantize_energy(p, QuantumLevel(3, 0));
    FAIL() << "expected NoBoundState";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoBoundState);
  }
}

TEST(Quantize, NonlinearMode) {
  const auto p = Potential::power_law(1, 1);
  for (int l = 1; l <= 3; ++l) {
    const QuantumLevel q(0, l);
    const auto e = quantize_energy(p, q, QuantizationMode::Nonlinear);
    EXPECT_EQ(e.mode, QuantizationMode::Nonlinear);
    EXPECT_NEAR(e.E / numerov_search(p, q, e.E), 1.0, 0.03) << l;
  }
  const auto c = quantize_energy(Potential::coulomb(1), QuantumLevel(1, 2), QuantizationMode::Nonlinear);
  EXPECT_NEAR(c.E, -1.0 / 32.0, 1e-7);
}

TEST(Quantize, Scaling) {
  const std::vector<QuantumLevel> lv = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {3, 2}};
  for (double mu : {1.0, 3.0, 0.5}) {
    const auto r = power_law_scaling_check(1.0, mu, 3, lv);
    EXPECT_TRUE(r.slope_ok) << mu << " " << r.slope;
    EXPECT_TRUE(r.convexity_ok) << mu;
  }
  EXPECT_EQ(power_law_scaling_check(1.0, 1.0, 3, lv).convexity, -1);
  EXPECT_EQ(power_law_scaling_check(1.0, 3.0, 3, lv).convexity, 1);
  EXPECT_THROW(power_law_scaling_check(1.0, -1.0, 3, lv), Error);
  EXPECT_THROW(power_law_scaling_check(1.0, 1.0, 3, {{0, 0}}), Error);
}

TEST(Enumerate, ScreenedWell) {
  const auto p = parse_potential("screened:kind=exp,Z=5");
  const auto all = enumerate_bound_states(p, 0.0, 3, 3);
  ASSERT_GE(all.size(), 3u);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_LE(all[i].E, 0.0);
    if (i) {
      EXPECT_LE(all[i - 1].E, all[i].E);
    }
  }
  EXPECT_EQ(all.front().level, QuantumLevel(0, 0));
  // every (n, l) below the top of each l-ladder is present
  for (int l = 0; l <= 3; ++l) {
    int count = 0;
    for (const auto& e : all)
      if (e.level.l == l) {
        EXPECT_EQ(e.level.n_r, count++);
      }
  }
  const auto tight = enumerate_bound_states(p, all[1].E, 3, 3);
  EXPECT_EQ(tight.size(), 2u);
}

}  // namespace
}  // namespace teff
