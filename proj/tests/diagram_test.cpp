#include <gtest/gtest.h>

#include <sstream>

#include "teff/diagram.hpp"
#include "teff/parse.hpp"
#include "teff/serialize.hpp"

namespace teff {
namespace {

std::vector<QuantumLevel> small_levels() {
  std::vector<QuantumLevel> lv;
  for (int n = 0; n <= 2; ++n)
    for (int l = 0; l <= 2; ++l) lv.emplace_back(n, l);
  return lv;
}

DiagramData sample_diagram() {
  std::vector<DiagramSource> src;
  // the screened grid is capped by the well capacity
  const auto y = parse_potential("screened:kind=exp,Z=50");
  src.push_back({y, count_grid(y, 0.05, 1e6, 24)});
  const auto q = parse_potential("quark:alpha=0.5,delta=1,B=6");
  src.push_back({q, count_grid(q, 0.05, 6.0, 24)});
  return diagram_data(small_levels(), 0.5, 2.2, src);
}

TEST(Diagram, Lines) {
  const auto dd = diagram_data({QuantumLevel(0, 1)}, 1.0, 2.0, {});
  ASSERT_EQ(dd.lines.size(), 1u);
  const auto& pts = dd.lines[0].points;
  ASSERT_GE(pts.size(), 2u);
  const double slope = (pts.back().y - pts.front().y) / (pts.back().x - pts.front().x);
  EXPECT_NEAR(pts.front().y + slope * (1.75 - pts.front().x), 3.125, 1e-12);
  EXPECT_THROW(diagram_data({}, 0.0, 1.0, {}), Error);
  EXPECT_THROW(diagram_data({}, 1.0, 2.6, {}), Error);
}

TEST(Diagram, CountGrid) {
  const auto p = parse_potential("screened:kind=exp,Z=50");
  const auto E = count_grid(p, 0.5, 3.0, 6);
  ASSERT_EQ(E.size(), 6u);
  for (std::size_t i = 1; i < E.size(); ++i) EXPECT_GT(E[i], E[i - 1]);
  EXPECT_NEAR(action_I(p, E.front(), 0.0), 0.5, 1e-7);
  EXPECT_NEAR(action_I(p, E.back(), 0.0), 3.0, 1e-7);
  EXPECT_THROW(count_grid(parse_potential("screened:kind=exp,Z=1"), 5.0, 6.0, 4), Error);
}

TEST(Diagram, CurveEnds) {
  const auto dd = sample_diagram();
  ASSERT_EQ(dd.curves.size(), 2u);
  // the screened curve runs toward its threshold value, the quark curve toward 1 at depth
  EXPECT_NEAR(dd.curves[0].points.back().phi, 1.286, 0.03);
  EXPECT_NEAR(dd.curves[1].points.front().phi, 1.0, 0.05);
  for (const auto& c : dd.curves)
    for (std::size_t i = 1; i < c.points.size(); ++i) EXPECT_GT(c.points[i].count, c.points[i - 1].count);
}

TEST(Diagram, CrossingsLieOnBoth) {
  const auto dd = sample_diagram();
  ASSERT_FALSE(dd.crossings.empty());
  for (const auto& x : dd.crossings) {
    const auto p = parse_potential(x.curve);
    EXPECT_NEAR(action_I(p, x.E, 0.0), x.T, 1e-6) << x.curve << " x " << x.line;
    EXPECT_GE(x.phi, 0.5);
    EXPECT_LE(x.phi, 2.2);
  }
}

TEST(Diagram, DroppedPointsAreNoted) {
  const auto p = parse_potential("screened:kind=exp,Z=50");
  auto E = count_grid(p, 0.5, 2.0, 4);
  E.push_back(1.0);  // above the continuum
  const auto dd = diagram_data(small_levels(), 0.5, 2.2, {{p, E}});
  EXPECT_EQ(dd.curves[0].points.size(), 4u);
  EXPECT_EQ(dd.curves[0].notes.size(), 1u);
}

TEST(Diagram, Csv) {
  const auto csv = to_csv(sample_diagram());
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line.rfind("# ", 0), 0u);
  std::getline(is, line);
  EXPECT_EQ(line, "kind,label,x,y");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_TRUE(line.rfind("line,", 0) == 0 || line.rfind("curve,", 0) == 0 || line.rfind("crossing,", 0) == 0);
    EXPECT_EQ(line.find("-0.0000"), std::string::npos);
  }
  EXPECT_GT(rows, 40);
  EXPECT_EQ(csv, to_csv(sample_diagram()));
}

TEST(Diagram, Json) {
  const auto j = to_json(sample_diagram());
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["kind"], "diagram");
  EXPECT_EQ(j["lines"].size(), 9u);
  EXPECT_EQ(j["curves"].size(), 2u);
  EXPECT_TRUE(j["curves"][0]["points"][0].contains("A_chi1"));
  EXPECT_EQ(j.dump(), to_json(sample_diagram()).dump());
}

}  // namespace
}  // namespace teff
