#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "teff/levels.hpp"
#include "teff/ordering.hpp"
#include "teff/parse.hpp"

namespace teff {
namespace {

std::vector<std::string> labels_of(const ShellSequence& s) {
  std::vector<std::string> out;
  for (const auto& sh : s.shells) out.push_back(sh.label);
  return out;
}

const std::vector<std::string> kAtomic = {"1s", "2s", "2p", "3s", "3p", "4s", "3d",
                                          "4p", "5s", "4d", "5p", "6s", "4f"};

TEST(Level, Validation) {
  EXPECT_THROW(QuantumLevel(-1, 0), Error);
  EXPECT_THROW(QuantumLevel(0, -1), Error);
  EXPECT_THROW(QuantumLevel(0, 0, 1), Error);
  const QuantumLevel q(2, 3, 5);
  EXPECT_DOUBLE_EQ(q.nu(), 2.5);
  EXPECT_DOUBLE_EQ(q.lambda(), 4.5);
}

TEST(Level, Teff) {
  EXPECT_DOUBLE_EQ(teff(QuantumLevel(0, 1), 1.75), 3.125);
  EXPECT_DOUBLE_EQ(teff(QuantumLevel(1, 0), 1.0), 2.0);
  EXPECT_DOUBLE_EQ(teff(QuantumLevel(0, 0, 2), 0.3), 0.5);
  EXPECT_THROW(teff(QuantumLevel(0, 0), 0.0), Error);
}

TEST(Level, Nonlinear) {
  EXPECT_NEAR(teff_nonlinear(QuantumLevel(0, 1), 1.0, 1.0, 2.0), 2.0, 1e-15);
  const double F = nonlinear_F(1.5, 0.5, 0.6, 3.0);
  EXPECT_NEAR(F, 0.75 - 0.1 * 1.5 * std::log(0.5), 1e-15);
  EXPECT_THROW(nonlinear_F(0.1, 1.0, 1.0, 3.0), Error);
  try {
    nonlinear_F(0.1, 1.0, 1.0, 3.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LambdaTooSmall);
  }
}

TEST(Level, Degeneracy) {
  for (int l = 0; l < 8; ++l) {
    EXPECT_EQ(degeneracy(l, 3), 2 * l + 1);
    EXPECT_EQ(degeneracy(l, 3, 2), 4 * l + 2);
    EXPECT_EQ(degeneracy(l, 4), (l + 1) * (l + 1));
    EXPECT_EQ(degeneracy(l, 2), l == 0 ? 1 : 2);
  }
  EXPECT_EQ(degeneracy(3, 2), 2);
  EXPECT_EQ(degeneracy(1, 4), 4);
  EXPECT_THROW(degeneracy(0, 3, 3), Error);
}

TEST(Level, LeadingDegeneracyExactUpToFour) {
  for (int d : {3, 4})
    for (int l = 1; l < 10; ++l) {
      const QuantumLevel q(0, l, d);
      EXPECT_NEAR(degeneracy(l, d), degeneracy_leading(q.lambda(), d), 1e-12) << d << " " << l;
    }
  for (int d : {5, 6}) {
    // the remainder is O(lambda^{d-4})
    for (int l : {10, 40, 160}) {
      const QuantumLevel q(0, l, d);
      const double rem = degeneracy(l, d) - degeneracy_leading(q.lambda(), d);
      EXPECT_LT(std::abs(rem) / std::pow(q.lambda(), d - 4), 1.0) << d << " " << l;
    }
  }
}

TEST(Level, Labels) {
  EXPECT_EQ(level_label(QuantumLevel(0, 0)), "1s");
  EXPECT_EQ(level_label(QuantumLevel(1, 2)), "4d");
  EXPECT_EQ(level_label(QuantumLevel(0, 3)), "4f");
  EXPECT_EQ(level_label(QuantumLevel(1, 2, 4)), "(1,2)");
}

TEST(Shells, AtomicSequence) {
  const auto seq = shell_sequence(1.75, 3, 13, 2);
  EXPECT_EQ(labels_of(seq), kAtomic);
  const std::vector<std::int64_t> occ = {2, 4, 10, 12, 18, 20, 30, 36, 38, 48, 54, 56, 70};
  for (std::size_t i = 0; i < occ.size(); ++i) EXPECT_EQ(seq.shells[i].occupancy, occ[i]);
  for (const auto& s : seq.shells) EXPECT_FALSE(s.tie);
}

TEST(Shells, AtomicWindow) {
  for (double phi : {1.70, 1.75, 1.80, 1.95}) EXPECT_EQ(labels_of(shell_sequence(phi, 3, 13, 2)), kAtomic) << phi;
  for (double phi : {1.60, 2.05}) EXPECT_NE(labels_of(shell_sequence(phi, 3, 13, 2)), kAtomic) << phi;
  // the two edges are the crossings T(5,0) = T(0,3) and T(0,1) = T(2,0)
  EXPECT_DOUBLE_EQ(teff(QuantumLevel(5, 0), 5.0 / 3.0), teff(QuantumLevel(0, 3), 5.0 / 3.0));
  EXPECT_DOUBLE_EQ(teff(QuantumLevel(0, 1), 2.0), teff(QuantumLevel(2, 0), 2.0));
  EXPECT_EQ(labels_of(shell_sequence(5.0 / 3.0 + 1e-6, 3, 13, 2)), kAtomic);
  EXPECT_EQ(labels_of(shell_sequence(2.0 - 1e-6, 3, 13, 2)), kAtomic);
}

TEST(Shells, CoulombTies) {
  const auto seq = shell_sequence(1.0, 3, 6);
  ASSERT_GE(seq.shells.size(), 6u);
  EXPECT_FALSE(seq.shells[0].tie);
  EXPECT_DOUBLE_EQ(seq.shells[1].T, 2.0);
  EXPECT_TRUE(seq.shells[1].tie);
  EXPECT_EQ(seq.shells[1].level, QuantumLevel(1, 0));
  EXPECT_EQ(seq.shells[2].level, QuantumLevel(0, 1));
  for (int i = 3; i <= 5; ++i) {
    EXPECT_DOUBLE_EQ(seq.shells[i].T, 3.0);
    EXPECT_EQ(seq.shells[i].level.l, i - 3);
  }
}

TEST(Shells, ClusterRule) {
  // phi = 1/3 orders by 3 n_r + l
  const auto seq = shell_sequence(1.0 / 3.0, 3, 40);
  for (std::size_t i = 1; i < seq.shells.size(); ++i) {
    const auto& a = seq.shells[i - 1].level;
    const auto& b = seq.shells[i].level;
    EXPECT_LE(3 * a.n_r + a.l, 3 * b.n_r + b.l);
  }
  const auto first = shell_sequence(1.0 / 3.0, 3, 8);
  const std::vector<QuantumLevel> expect = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {0, 3}, {1, 1}, {0, 4}, {1, 2}};
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(first.shells[i].level, expect[i]) << i;
}

TEST(Shells, OrderingLaw) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uphi(0.05, 2.5);
  for (int trial = 0; trial < 40; ++trial) {
    const double phi = uphi(rng);
    const int d = 2 + trial % 4;
    const auto seq = shell_sequence(phi, d, 30);
    for (std::size_t i = 1; i < seq.shells.size(); ++i) {
      const double Ta = teff(seq.shells[i - 1].level, phi), Tb = teff(seq.shells[i].level, phi);
      EXPECT_LE(Ta, Tb + 1e-12);
      if (same_T(Ta, Tb)) {
        EXPECT_LT(seq.shells[i - 1].level.l, seq.shells[i].level.l);
      }
    }
    // nothing below the cutoff is missing
    const double cutoff = seq.shells.back().T;
    std::size_t below = 0;
    for (int n = 0; n < 40; ++n)
      for (int l = 0; l < 200; ++l)
        if (teff(QuantumLevel(n, l, d), phi) <= cutoff + 1e-9) ++below;
    EXPECT_EQ(below, seq.shells.size()) << phi;
  }
}

TEST(Shells, Errors) {
  EXPECT_THROW(shell_sequence(0.0, 3, 5), Error);
  EXPECT_THROW(shell_sequence(1.0, 3, 0), Error);
  EXPECT_THROW(shell_sequence(1.0, 1, 3), Error);
}

TEST(Theorems, PowerLaws) {
  const auto r1 = ordering_theorem_signs(Potential::power_law(1, 1), 1.0);
  EXPECT_EQ(r1.first.verdict, Verdict::Agree);
  EXPECT_EQ(r1.second.verdict, Verdict::Agree);
  EXPECT_EQ(r1.second.kappa_sign, -1);
  const auto r3 = ordering_theorem_signs(Potential::power_law(1, 3), 1.0);
  EXPECT_EQ(r3.second.kappa_sign, 1);
  EXPECT_EQ(r3.second.verdict, Verdict::Agree);
  const auto c = ordering_theorem_signs(Potential::coulomb(1), -0.5);
  EXPECT_EQ(c.first.kappa_sign, 0);
  EXPECT_EQ(c.first.phi_sign, 0);
}

TEST(Theorems, QuarkFamily) {
  const auto q = parse_potential("quark:alpha=0.9,delta=3,B=1");
  const auto rep = ordering_theorem_signs(q, -2.0);
  EXPECT_EQ(rep.second.kappa_sign, -1);
  EXPECT_GT(rep.phi, 0.5);
  EXPECT_NE(rep.second.verdict, Verdict::Disagree);
}

TEST(Theorems, Screened) {
  for (const char* s : {"screened:kind=exp,Z=1", "screened:kind=tf,Z=1"}) {
    const auto rep = ordering_theorem_signs(parse_potential(s), -0.1);
    EXPECT_EQ(rep.first.kappa_sign, -1) << s;
    EXPECT_EQ(rep.first.verdict, Verdict::Agree) << s;
  }
}

TEST(Regge, Signs) {
  for (double mu : {-0.5, 0.5, 1.0, 2.0, 3.0, 6.0}) {
    for (const auto& c : regge_sign_check(mu, {1.0, 2.0, 5.0})) {
      EXPECT_TRUE(c.agree) << mu;
      EXPECT_GT(c.Lambda, 0.0);
    }
  }
  EXPECT_EQ(regge_sign_check(1.0, {1.0})[0].lhs, 1);
  EXPECT_EQ(regge_sign_check(3.0, {1.0})[0].lhs, -1);
  EXPECT_EQ(regge_sign_check(2.0, {1.0})[0].lhs, 0);
  EXPECT_THROW(regge_sign_check(-1.0, {1.0}), Error);
  EXPECT_THROW(regge_sign_check(1.0, {0.0}), Error);
}

}  // namespace
}  // namespace teff
