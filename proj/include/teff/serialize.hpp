#pragma once

// JSON documents for the command-line front end. Every document carries
// "schema": 1. Doubles are written in shortest round-trip form.

#include <json.hpp>

#include "teff/chi.hpp"
#include "teff/diagram.hpp"
#include "teff/ordering.hpp"
#include "teff/spectrum.hpp"

namespace teff {

inline constexpr int kJsonSchema = 1;

inline nlohmann::json to_json(const DiagramData& data) {
  using nlohmann::json;
  json lines = json::array();
  for (const auto& l : data.lines) {
    json pts = json::array();
    for (const auto& p : l.points) pts.push_back({p.x, p.y});
    lines.push_back({{"label", l.label}, {"n_r", l.level.n_r}, {"l", l.level.l}, {"points", pts}});
  }
  json curves = json::array();
  for (const auto& c : data.curves) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({{"E", p.E}, {"phi", p.phi}, {"A_chi1", p.count}});
    curves.push_back({{"label", c.label}, {"points", pts}, {"notes", c.notes}});
  }
  json crossings = json::array();
  for (const auto& x : data.crossings)
    crossings.push_back({{"curve", x.curve}, {"line", x.line}, {"E", x.E}, {"phi", x.phi}, {"T", x.T}});
  return {{"schema", kJsonSchema},
          {"kind", "diagram"},
          {"d", data.d},
          {"phi_range", {data.phi_min, data.phi_max}},
          {"lines", lines},
          {"curves", curves},
          {"crossings", crossings}};
}

inline nlohmann::json to_json(const ShellSequence& seq) {
  nlohmann::json shells = nlohmann::json::array();
  for (const auto& s : seq.shells)
    shells.push_back({{"label", s.label},
                      {"n_r", s.level.n_r},
                      {"l", s.level.l},
                      {"T", s.T},
                      {"degeneracy", s.degeneracy},
                      {"occupancy", s.occupancy},
                      {"tie", s.tie}});
  return {{"schema", kJsonSchema}, {"kind", "order"}, {"phi", seq.phi}, {"d", seq.d}, {"spin", seq.spin},
          {"shells", shells}};
}

inline nlohmann::json to_json(const SpectrumEntry& e) {
  return {{"n_r", e.level.n_r}, {"l", e.level.l},         {"d", e.level.d},
          {"T", e.T},           {"E", e.E},                {"mode", to_string(e.mode)},
          {"iterations", e.iterations}, {"residual", e.residual}};
}

}  // namespace teff
