#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>

#include "teff/parse.hpp"
#include "teff/potential.hpp"
#include "teff/slice.hpp"
#include "teff/thomas_fermi.hpp"

namespace teff {
namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no teff::Error thrown";
  return ErrorKind::Io;
}

TEST(ParsePotential, Families) {
  const auto p = parse_potential("power:b=1,mu=2");
  ASSERT_NE(p.get_if<PowerLaw>(), nullptr);
  EXPECT_EQ(p.get_if<PowerLaw>()->b, 1.0);
  EXPECT_EQ(p.get_if<PowerLaw>()->mu, 2.0);

  const auto y = parse_potential("screened:kind=exp,Z=50");
  ASSERT_NE(y.get_if<ScreenedCoulomb>(), nullptr);
  EXPECT_EQ(y.get_if<ScreenedCoulomb>()->kind, Screening::Exponential);
  EXPECT_EQ(y.get_if<ScreenedCoulomb>()->Z, 50.0);

  EXPECT_NE(parse_potential(" quark: alpha=0.5, delta=1, B=3 ").get_if<Quarkonium>(), nullptr);
  EXPECT_TRUE(parse_potential("wall:R=2").is_hard_wall());
}

TEST(ParsePotential, DescribeRoundTrips) {
  for (const char* s : {"power:b=1,mu=2", "power:b=-1,mu=-1", "screened:kind=inv25,Z=3", "screened:kind=tf,Z=80",
                        "quark:alpha=0.9,delta=3,B=1", "wall:R=1.5", "power:b=2,mu=3,vscale=2,rscale=0.5"}) {
    const auto p = parse_potential(s);
    const auto q = parse_potential(p.describe());
    for (double r : {0.1, 0.7, 1.3})
      EXPECT_DOUBLE_EQ(p.value(r), q.value(r)) << s;
  }
}

TEST(ParsePotential, Errors) {
  EXPECT_EQ(kind_of([] { parse_potential("power:b=1,mu=-3"); }), ErrorKind::InvalidPotential);
  try {
    parse_potential("power:b=1,mu=-3");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("InvalidExponent"), std::string::npos);
  }
  EXPECT_EQ(kind_of([] { parse_potential("power:b=-1,mu=2"); }), ErrorKind::InvalidPotential);
  EXPECT_EQ(kind_of([] { parse_potential("power b=1"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("power:b=1"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("power:b=1,mu=2,mu=3"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("power:b=1,mu=2,c=3"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("power:b=one,mu=2"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("screened:kind=gauss,Z=1"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("quark:alpha=1.5,delta=1,B=1"); }), ErrorKind::InvalidPotential);
  EXPECT_EQ(kind_of([] { parse_potential("spline:x=1"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("wall:R=1,vscale=-1"); }), ErrorKind::InvalidPotential);
  EXPECT_EQ(kind_of([] { parse_potential("table:path=/nonexistent/teff.dat"); }), ErrorKind::Io);
}

TEST(EvalPotential, AnalyticValues) {
  auto v = eval_potential(Potential::power_law(1, 2), 2.0);
  EXPECT_DOUBLE_EQ(v.V, 4.0);
  EXPECT_DOUBLE_EQ(v.dV, 4.0);

  v = eval_potential(Potential::screened(Screening::Exponential, 1), 1.0);
  EXPECT_NEAR(v.V, -std::exp(-1.0), 1e-15);
  EXPECT_NEAR(v.dV, 2.0 * std::exp(-1.0), 1e-15);

  v = eval_potential(Potential::quarkonium(0.5, 1, 3), 1.0);
  EXPECT_NEAR(v.V, 0.0, 1e-15);
  EXPECT_NEAR(v.dV, 3.0, 1e-15);

  EXPECT_EQ(kind_of([] { eval_potential(Potential::coulomb(1), 0.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { eval_potential(Potential::coulomb(1), -1.0); }), ErrorKind::Domain);
}

TEST(EvalPotential, DerivativesMatchFiniteDifferences) {
  for (const char* s : {"screened:kind=exp,Z=2", "screened:kind=inv2,Z=1", "screened:kind=inv25,Z=1",
                        "screened:kind=tf,Z=30", "quark:alpha=0.3,delta=1.7,B=2"}) {
    const auto p = parse_potential(s);
    for (double r : {0.05, 0.4, 2.0, 7.0}) {
      const double h = 1e-5 * r;
      const double fd = (p.value(r + h) - p.value(r - h)) / (2 * h);
      const auto d = p.derivatives(r);
      EXPECT_NEAR(d.dV, fd, 1e-6 * std::abs(fd) + 1e-12) << s << " r=" << r;
      const double fd2 = (p.derivatives(r + h).dV - p.derivatives(r - h).dV) / (2 * h);
      EXPECT_NEAR(d.d2V, fd2, 1e-5 * std::abs(fd2) + 1e-10) << s << " r=" << r;
    }
  }
}

TEST(Kappa, PowerLawIsExponent) {
  for (double mu : {-1.5, -1.0, 0.5, 3.0})
    for (double r : {0.01, 1.0, 50.0}) EXPECT_DOUBLE_EQ(kappa(Potential::power_law(mu > 0 ? 1 : -1, mu), r), mu);
}

TEST(Kappa, ScreenedBelowMinusOne) {
  for (const char* s : {"screened:kind=exp,Z=1", "screened:kind=inv2,Z=1", "screened:kind=inv25,Z=1",
                        "screened:kind=tf,Z=1"}) {
    const auto p = parse_potential(s);
    for (int i = 0; i <= 60; ++i) {
      const double r = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
      EXPECT_LT(kappa(p, r), -1.0) << s << " r=" << r;
    }
  }
}

TEST(Kappa, QuarkoniumBoundedAndIncreasing) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ua(0.05, 0.95), ud(0.2, 4.0), ub(0.1, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double delta = ud(rng);
    const auto p = Potential::quarkonium(ua(rng), delta, ub(rng));
    double prev = -1.0;
    for (int i = 0; i <= 60; ++i) {
      const double r = std::pow(10.0, -3.0 + 6.0 * i / 60.0);
      const double k = kappa(p, r);
      EXPECT_GT(k, -1.0);
      EXPECT_LT(k, delta);
      EXPECT_GE(k, prev);
      prev = k;
    }
  }
  const auto q = Potential::quarkonium(0.5, 2.0, 1.0);
  EXPECT_NEAR(kappa(q, 1e-6), -1.0, 1e-5);
  EXPECT_NEAR(kappa(q, 1e4), 2.0, 1e-5);
}

TEST(EffectiveW, Examples) {
  EXPECT_DOUBLE_EQ(effective_W(Potential::power_law(1, 2), 3.0, 0.0), 4.0);
  EXPECT_DOUBLE_EQ(effective_W(Potential::coulomb(1), -0.5, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(effective_W(Potential::screened(Screening::InverseSquare, 1), 0.0, 0.0), 0.5);
  EXPECT_TRUE(std::isinf(effective_W(Potential::hard_wall(1), 1.0, 0.5)));
}

TEST(ThomasFermi, ScreeningFunction) {
  const auto& tf = ThomasFermi::instance();
  EXPECT_DOUBLE_EQ(tf_screening(0.0), 1.0);
  EXPECT_NEAR(tf.initial_slope(), -1.588071, 1e-5);
  double prev = 1.0, prev_slope = tf.derivative(1e-6);
  for (int i = 1; i <= 200; ++i) {
    const double x = 0.05 * i * i;
    const double v = tf_screening(x);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 0.0);
    EXPECT_GT(tf.derivative(x), prev_slope - 1e-12);  // convex
    prev = v;
    prev_slope = tf.derivative(x);
  }
  // large-x limit 144/x^3
  EXPECT_NEAR(tf_screening(1e6) * 1e18 / 144.0, 1.0, 1e-3);
  // residual of Phi'' = Phi^{3/2}/sqrt(x)
  for (double x : {0.3, 2.0, 15.0, 80.0}) {
    const double lhs = tf.second_derivative(x);
    const double rhs = std::pow(tf.value(x), 1.5) / std::sqrt(x);
    EXPECT_NEAR(lhs / rhs, 1.0, 1e-5) << x;
  }
}

TEST(Tabulated, LoadsAndInterpolates) {
  const auto path = temp_file("teff_tab.dat",
                              "# r V\n0.5 -2\n1 -1   # inline comment\n\n1.5 -0.6666666667\n2 -0.5\n2.5 -0.4\n"
                              "3 -0.3333333333\n3.5 -0.2857142857\n4 -0.25\n");
  const auto p = parse_potential("table:path=" + path);
  EXPECT_DOUBLE_EQ(p.value(1.0), -1.0);
  EXPECT_GT(p.value(1.5), -1.0);
  EXPECT_LT(p.value(1.5), -0.5);
  EXPECT_EQ(kind_of([&] { eval_potential(p, 5.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { eval_potential(p, 0.1); }), ErrorKind::Domain);
}

TEST(Tabulated, RejectsBadTables) {
  EXPECT_EQ(kind_of([] { parse_potential("table:path=" + temp_file("t1.dat", "1 2 3\n")); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("table:path=" + temp_file("t2.dat", "1 x\n2 3\n")); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_potential("table:path=" + temp_file("t3.dat", "1 -1\n")); }),
            ErrorKind::InvalidPotential);
  const std::string tail = "2 -0.5\n3 -0.3\n4 -0.2\n5 -0.1\n6 -0.05\n7 -0.01\n";
  auto message = [](const std::string& path) {
    try {
      parse_potential("table:path=" + path);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidPotential);
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(temp_file("t4.dat", "1 -1\n0.5 -2\n" + tail)).find("NotAscending"), std::string::npos);
  EXPECT_NE(message(temp_file("t5.dat", "0 -1\n1 -2\n" + tail)).find("NonPositiveRadius"), std::string::npos);
  EXPECT_NE(message(temp_file("t6.dat", "1 -1\n")).find("TooFewPoints"), std::string::npos);
}

TEST(Tabulated, MonotoneDataStaysMonotone) {
  std::vector<double> r, v;
  for (int i = 0; i < 30; ++i) {
    r.push_back(0.1 * std::pow(1.3, i));
    v.push_back(-std::exp(-r.back()) / r.back());
  }
  const auto p = Potential::tabulated(r, v);
  double prev = p.value(r.front());
  for (int i = 1; i < 2000; ++i) {
    const double x = r.front() + (r.back() - r.front()) * i / 2000.0;
    const double y = p.value(x);
    EXPECT_GE(y, prev);
    prev = y;
  }
}

TEST(Slice, Examples) {
  auto s = analyze_slice(Potential::coulomb(1), -0.5);
  EXPECT_NEAR(s.r_m, 1.0, 1e-9);
  EXPECT_NEAR(s.A, 1.0, 1e-12);
  EXPECT_NEAR(s.r_t, 2.0, 1e-10);

  s = analyze_slice(Potential::oscillator(1), 2.0);
  EXPECT_NEAR(s.r_m, 1.0, 1e-9);
  EXPECT_NEAR(s.A, std::sqrt(2.0), 1e-12);

  s = analyze_slice(Potential::hard_wall(1), 2.0);
  EXPECT_TRUE(s.boundary_max);
  EXPECT_NEAR(s.r_m, 1.0, 1e-12);
  EXPECT_NEAR(s.A, 2.0, 1e-12);
  EXPECT_FALSE(s.kappa_at_rm.has_value());
}

TEST(Slice, ErrorsAndOpenWells) {
  EXPECT_EQ(kind_of([] { analyze_slice(Potential::oscillator(1), -1.0); }), ErrorKind::NoClassicalRegion);
  EXPECT_EQ(kind_of([] { analyze_slice(Potential::coulomb(1), 0.5); }), ErrorKind::Divergent);
  const auto y = analyze_slice(parse_potential("screened:kind=exp,Z=1"), 0.0);
  EXPECT_TRUE(std::isinf(y.r_t));
  EXPECT_GT(y.A, 0.0);
}

TEST(Slice, MultipleMaximaRejected) {
  // deep narrow dip far out in a confining well gives W a second hump
  std::vector<double> r, v;
  for (int i = 0; i < 400; ++i) {
    const double x = 0.01 + 10.0 * i / 399.0;
    r.push_back(x);
    v.push_back(x * x - 40.0 * std::exp(-(x - 5.0) * (x - 5.0) / 0.05));
  }
  EXPECT_EQ(kind_of([&] { analyze_slice(Potential::tabulated(r, v), 10.0); }), ErrorKind::MultipleMaxima);
}

TEST(Slice, MaximumIsStationary) {
  for (const char* s : {"power:b=1,mu=1", "screened:kind=exp,Z=1", "screened:kind=tf,Z=20", "quark:alpha=0.5,delta=1,B=6"}) {
    const auto p = parse_potential(s);
    const double E = p.get_if<ScreenedCoulomb>() ? -0.3 : 2.0;
    const auto sl = analyze_slice(p, E);
    const double h = 1e-5;
    const double dW = (effective_W(p, E, sl.rho_m + h) - effective_W(p, E, sl.rho_m - h)) / (2 * h);
    EXPECT_LT(std::abs(dW), 1e-8 * sl.A2()) << s;
  }
}

TEST(Slice, RadialRescalingKeepsShape) {
  for (const char* s : {"screened:kind=inv25,Z=1", "quark:alpha=0.4,delta=1.5,B=2"}) {
    const auto p = parse_potential(s);
    for (double a : {2.0, 0.5}) {
      const auto q = p.scaled(1.0, a);  // V(a r)
      const auto s1 = analyze_slice(p, -0.2);
      const auto s2 = analyze_slice(q, -0.2);
      EXPECT_NEAR(s2.A, s1.A / a, 1e-9 * s1.A);
      EXPECT_NEAR(s2.r_m, s1.r_m / a, 1e-7 * s1.r_m);
      EXPECT_NEAR(*s2.kappa_at_rm, *s1.kappa_at_rm, 1e-7);
    }
  }
}

}  // namespace
}  // namespace teff
