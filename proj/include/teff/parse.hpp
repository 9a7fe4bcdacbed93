#pragma once

// Potential mini-language:
//   power:b=<f>,mu=<f>
//   screened:kind=exp|inv2|inv25|tf,Z=<f>
//   quark:alpha=<f>,delta=<f>,B=<f>
//   wall:R=<f>
//   table:path=<file>
// Every family also accepts optional vscale=<f> and rscale=<f>, giving
// vscale * V(rscale * r).

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "teff/error.hpp"
#include "teff/potential.hpp"

namespace teff {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw Error(ErrorKind::Syntax, "value of '" + std::string(key) + "' is not a number: '" + std::string(text) + "'");
  return v;
}

class KeyValues {
 public:
  KeyValues(std::string_view family, std::string_view body) : family_(family) {
    if (trim(body).empty()) return;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const auto comma = body.find(',', pos);
      const auto item = trim(body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || trim(item.substr(0, eq)).empty())
        throw Error(ErrorKind::Syntax, "expected key=value in '" + std::string(item) + "'");
      std::string key(trim(item.substr(0, eq)));
      if (values_.count(key)) throw Error(ErrorKind::Syntax, "duplicate key '" + key + "'");
      values_[key] = std::string(trim(item.substr(eq + 1)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }

  std::string text(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end())
      throw Error(ErrorKind::Syntax, family_ + ": missing required key '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  double number(const std::string& key) { return parse_number(key, text(key)); }

  double number_or(const std::string& key, double fallback) {
    return values_.count(key) ? number(key) : fallback;
  }

  void reject_unknown() const {
    for (const auto& [k, v] : values_)
      if (!used_.count(k)) throw Error(ErrorKind::Syntax, family_ + ": unknown key '" + k + "'");
  }

 private:
  std::string family_;
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

}  // namespace detail

/// Reads a two-column "r V" file; blank lines and '#' comments are skipped.
inline Potential load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open table '" + path + "'");
  std::vector<double> r, v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra))
      throw Error(ErrorKind::Syntax, path + ":" + std::to_string(lineno) + ": expected two columns 'r V'");
    r.push_back(detail::parse_number("r", a));
    v.push_back(detail::parse_number("V", b));
  }
  return Potential::tabulated(std::move(r), std::move(v), path);
}

inline Potential parse_potential(std::string_view spec) {
  spec = detail::trim(spec);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::Syntax, "expected '<family>:<key>=<value>,...', got '" + std::string(spec) + "'");
  const std::string family(detail::trim(spec.substr(0, colon)));
  detail::KeyValues kv(family, spec.substr(colon + 1));

  auto finish = [&kv](Potential base) {
    const double c = kv.number_or("vscale", 1.0);
    const double a = kv.number_or("rscale", 1.0);
    kv.reject_unknown();
    return (c == 1.0 && a == 1.0) ? base : base.scaled(c, a);
  };

  if (family == "power") {
    const double b = kv.number("b");
    const double mu = kv.number("mu");
    return finish(Potential::power_law(b, mu));
  }
  if (family == "screened") {
    const std::string kind = kv.text("kind");
    Screening s;
    if (kind == "exp") s = Screening::Exponential;
    else if (kind == "inv2") s = Screening::InverseSquare;
    else if (kind == "inv25") s = Screening::InversePow25;
    else if (kind == "tf") s = Screening::ThomasFermi;
    else throw Error(ErrorKind::Syntax, "screened: unknown kind '" + kind + "' (exp|inv2|inv25|tf)");
    return finish(Potential::screened(s, kv.number("Z")));
  }
  if (family == "quark") {
    const double alpha = kv.number("alpha");
    const double delta = kv.number("delta");
    const double B = kv.number("B");
    return finish(Potential::quarkonium(alpha, delta, B));
  }
  if (family == "wall") return finish(Potential::hard_wall(kv.number("R")));
  if (family == "table") return finish(load_tabulated(kv.text("path")));
  throw Error(ErrorKind::Syntax, "unknown potential family '" + family + "' (power|screened|quark|wall|table)");
}

}  // namespace teff
