// teff: command-line front end for the chi transforms, T-ordering, spectra,
// diagram data and the acceptance suite.
//
// Exit codes: 0 ok, 1 verification failure, 2 configuration error,
// 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "teff/chi.hpp"
#include "teff/diagram.hpp"
#include "teff/error.hpp"
#include "teff/oracle.hpp"
#include "teff/ordering.hpp"
#include "teff/parse.hpp"
#include "teff/serialize.hpp"
#include "teff/spectrum.hpp"
#include "teff/verify.hpp"

namespace {

using nlohmann::json;
using teff::verify::TableRow;

enum Exit { kOk = 0, kVerifyFailed = 1, kConfig = 2, kNumerical = 3 };

int exit_code_for(teff::ErrorKind k) {
  switch (k) {
    case teff::ErrorKind::Syntax:
    case teff::ErrorKind::InvalidPotential:
    case teff::ErrorKind::Domain:
    case teff::ErrorKind::Io:
      return kConfig;
    default:
      return kNumerical;
  }
}

std::string num(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// Writes to --output when given, stdout otherwise.
void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw teff::Error(teff::ErrorKind::Io, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw teff::Error(teff::ErrorKind::Io, "write to " + path + " failed");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- chi-table

struct ChiRow {
  std::string potential;
  std::string energy;
  TableRow values{};
  std::string error;
  std::optional<double> E;  // numeric energy when the row has one
};

ChiRow profile_row(const std::string& label, const teff::Potential& p, double E, const teff::QuadratureConfig& q) {
  ChiRow row{label, num(E, 6), {}, {}, E};
  try {
    const auto c = teff::chi_profile(p, E, {3, 2}, q);
    row.values = {c.chi_inf, c.at(3).chi_d, c.at(2).chi_d, c.chi1, c.at(3).phi, c.at(2).phi, c.at(3).phi_m};
  } catch (const teff::Error& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<ChiRow> table1_rows(const teff::QuadratureConfig& q) {
  std::vector<ChiRow> rows;
  for (int r = 0; r < 4; ++r) {
    const auto p = teff::verify::detail::screened_row_potential(r);
    rows.push_back(profile_row(p.describe(), p, 0.0, q));
  }
  // one row for the deep limit of all four wells: the kind furthest from 1
  {
    ChiRow worst{"screened (all kinds)", "-inf", {}, {}, {}};
    double dev = -1.0;
    for (int r = 0; r < 4; ++r) {
      const auto p = teff::verify::detail::screened_row_potential(r);
      ChiRow row = profile_row(p.describe(), p, teff::deep_energy(p), q);
      if (!row.error.empty()) {
        worst = row;
        break;
      }
      double d = 0.0;
      for (double v : row.values) d = std::max(d, std::abs(v - 1.0));
      if (d > dev) {
        dev = d;
        worst.values = row.values;
        worst.energy = "-inf (" + row.potential + " at E=" + row.energy + ")";
        worst.E = row.E;
      }
    }
    rows.push_back(worst);
  }
  for (int r = 0; r < 6; ++r) {
    if (r == 1) {
      rows.push_back({"power:mu->0", "any", teff::verify::detail::log_limit_row(), {}, {}});
      continue;
    }
    const auto p = teff::verify::detail::power_law_row_potential(r);
    ChiRow row = profile_row(p.describe(), p, teff::verify::detail::power_law_row_energy(r), q);
    row.energy = "any";
    row.E.reset();
    rows.push_back(row);
  }
  return rows;
}

std::string render_chi_table(const std::vector<ChiRow>& rows, const std::string& format) {
  static const char* cols[] = {"chi_inf", "chi_3", "chi_2", "chi_1", "phi_3", "phi_2", "phi_m_3"};
  std::ostringstream os;
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json o = {{"potential", r.potential}, {"E_label", r.energy}};
      o["E"] = r.E ? json(*r.E) : json(nullptr);
      if (!r.error.empty()) {
        o["error"] = r.error;
      } else {
        for (int c = 0; c < 7; ++c) o[cols[c]] = r.values[c];
      }
      arr.push_back(o);
    }
    return dump({{"schema", teff::kJsonSchema}, {"kind", "chi-table"}, {"rows", arr}});
  }
  if (format == "csv") {
    os << "# values rounded to 6 decimals\npotential,E";
    for (const char* c : cols) os << ',' << c;
    os << ",error\n";
    for (const auto& r : rows) {
      os << teff::detail::csv_quote(r.potential) << ',' << teff::detail::csv_quote(r.energy);
      for (double v : r.values) os << ',' << (r.error.empty() ? num(v, 6) : "");
      os << ',' << teff::detail::csv_quote(r.error) << '\n';
    }
    return os.str();
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-34s %-10s %8s %8s %8s %8s %8s %8s %8s\n", "potential", "E", "chi_inf", "chi_3",
                "chi_2", "chi_1", "phi(3)", "phi(2)", "phi_m(3)");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-34s %-10s", r.potential.c_str(), r.energy.c_str());
    os << buf;
    if (!r.error.empty()) {
      os << " error: " << r.error << '\n';
      continue;
    }
    for (double v : r.values) {
      std::snprintf(buf, sizeof buf, " %8.4f", v);
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- spectrum

std::vector<std::pair<int, int>> parse_levels(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw teff::Error(teff::ErrorKind::Syntax, "level '" + item + "' is not n_r:l");
    const double n = teff::detail::parse_number("n_r", item.substr(0, colon));
    const double l = teff::detail::parse_number("l", item.substr(colon + 1));
    if (n != std::floor(n) || l != std::floor(l) || n < 0 || l < 0)
      throw teff::Error(teff::ErrorKind::Syntax, "level '" + item + "' needs non-negative integers");
    out.emplace_back(static_cast<int>(n), static_cast<int>(l));
  }
  if (out.empty()) throw teff::Error(teff::ErrorKind::Syntax, "empty level list");
  return out;
}

struct SpectrumRow {
  teff::SpectrumEntry entry;
  std::optional<double> oracle;
  std::string error;
  std::pair<int, int> level;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective quantum numbers T = nu + phi lambda from chi_d transforms of a radial potential"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::string format = "text";
  std::string output;
  double rel_tol = teff::QuadratureConfig{}.rel_tol;

  // chi-table
  auto* chi = app.add_subcommand("chi-table", "Table of chi_inf, chi_3, chi_2, chi_1, phi(3), phi(2), phi_m(3)");
  std::string suite;
  std::vector<std::string> chi_potentials;
  std::optional<double> chi_energy;
  chi->add_option("--suite", suite, "Named row set")->check(CLI::IsMember({"table1"}));
  chi->add_option("--potential", chi_potentials, "Potential spec, repeatable");
  chi->add_option("--energy", chi_energy, "Energy E (default: a valid energy for the well)");
  chi->add_option("--format", format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
  chi->add_option("--output", output, "Output file");
  chi->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance");

  // order
  auto* order = app.add_subcommand("order", "Shell sequence ordered by T");
  double phi = 0.0;
  int order_d = 3, count = 0, spin = 1;
  order->add_option("--phi", phi, "phi")->required();
  order->add_option("--d", order_d, "Dimension")->check(CLI::Range(2, 64));
  order->add_option("--count", count, "Number of distinct T values")->required()->check(CLI::Range(1, 10000));
  order->add_option("--spin", spin, "Spin factor")->check(CLI::Range(1, 64));
  order->add_option("--format", format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
  order->add_option("--output", output, "Output file");

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "Energies from the quantization condition");
  std::string spec_potential, levels_text, mode_text = "linear";
  int spec_d = 3;
  std::optional<double> e_max;
  int l_max = 4;
  bool with_oracle = false;
  spec->add_option("--potential", spec_potential, "Potential spec")->required();
  auto* levels_opt = spec->add_option("--levels", levels_text, "Comma list of n_r:l");
  auto* emax_opt = spec->add_option("--e-max", e_max, "Enumerate all levels up to this energy");
  levels_opt->excludes(emax_opt);
  spec->add_option("--l-max", l_max, "Largest l when enumerating")->check(CLI::Range(0, 100));
  spec->add_option("--d", spec_d, "Dimension")->check(CLI::Range(2, 64));
  spec->add_option("--mode", mode_text, "linear | nonlinear")->check(CLI::IsMember({"linear", "nonlinear"}));
  spec->add_flag("--oracle", with_oracle, "Also solve the radial equation by shooting");
  spec->add_option("--format", format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
  spec->add_option("--output", output, "Output file");
  spec->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance");

  // diagram
  auto* diag = app.add_subcommand("diagram", "T-versus-phi diagram data");
  std::vector<std::string> diag_potentials;
  double phi_min = 0.3, phi_max = 2.2;
  int points = 64, diag_d = 3, max_nr = 3, max_l = 3;
  diag->add_option("--potential", diag_potentials, "Potential spec, repeatable");
  diag->add_option("--phi-min", phi_min, "Smallest phi");
  diag->add_option("--phi-max", phi_max, "Largest phi");
  diag->add_option("--points", points, "Energy grid points per curve")->check(CLI::Range(2, 100000));
  diag->add_option("--max-nr", max_nr, "Lines for n_r = 0..max-nr")->check(CLI::Range(0, 50));
  diag->add_option("--max-l", max_l, "Lines for l = 0..max-l")->check(CLI::Range(0, 50));
  diag->add_option("--d", diag_d, "Dimension")->check(CLI::Range(2, 64));
  std::string diag_format = "csv";
  diag->add_option("--format", diag_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  diag->add_option("--output", output, "Output file");
  diag->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
  std::string verify_suite = "all";
  ver->add_option("--suite", verify_suite, "Suite name")->check(CLI::IsMember({"all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    teff::QuadratureConfig quad;
    quad.rel_tol = rel_tol;
    quad.validate();

    if (*chi) {
      if (suite.empty() == chi_potentials.empty())
        throw teff::Error(teff::ErrorKind::Syntax, "give either --suite or --potential");
      std::vector<ChiRow> rows;
      if (!suite.empty()) {
        rows = table1_rows(quad);
      } else {
        for (const auto& s : chi_potentials) {
          const auto p = teff::parse_potential(s);
          const double E = chi_energy ? *chi_energy : teff::detail::initial_energy(p);
          rows.push_back(profile_row(p.describe(), p, E, quad));
        }
      }
      emit(render_chi_table(rows, format), output);
      for (const auto& r : rows)
        if (!r.error.empty()) return kNumerical;
      return kOk;
    }

    if (*order) {
      const auto seq = teff::shell_sequence(phi, order_d, count, spin);
      std::ostringstream os;
      if (format == "json") {
        os << dump(teff::to_json(seq));
      } else if (format == "csv") {
        os << "# T rounded to 6 decimals\nlabel,n_r,l,T,degeneracy,occupancy,tie\n";
        for (const auto& s : seq.shells)
          os << teff::detail::csv_quote(s.label) << ',' << s.level.n_r << ',' << s.level.l << ',' << num(s.T, 6)
             << ',' << s.degeneracy << ',' << s.occupancy << ',' << (s.tie ? "tie" : "") << '\n';
      } else {
        for (const auto& s : seq.shells)
          os << s.label << "  T=" << num(s.T, 6) << "  D=" << s.degeneracy << "  occupancy=" << s.occupancy
             << (s.tie ? "  (tie)" : "") << '\n';
      }
      emit(os.str(), output);
      return kOk;
    }

    if (*spec) {
      const auto p = teff::parse_potential(spec_potential);
      const auto mode = mode_text == "linear" ? teff::QuantizationMode::Linear : teff::QuantizationMode::Nonlinear;
      teff::SolverConfig cfg;
      cfg.quad = quad;
      std::vector<SpectrumRow> rows;
      if (e_max) {
        for (const auto& e : teff::enumerate_bound_states(p, *e_max, spec_d, l_max, mode, cfg))
          rows.push_back({e, std::nullopt, {}, {e.level.n_r, e.level.l}});
      } else {
        if (levels_text.empty()) throw teff::Error(teff::ErrorKind::Syntax, "give --levels or --e-max");
        const auto lv = parse_levels(levels_text);
        rows.resize(lv.size());
        teff::parallel_for(lv.size(), [&](std::size_t i) {
          rows[i].level = lv[i];
          try {
            rows[i].entry = teff::quantize_energy(p, teff::QuantumLevel(lv[i].first, lv[i].second, spec_d), mode, cfg);
          } catch (const teff::Error& e) {
            if (exit_code_for(e.kind()) == kConfig) throw;
            rows[i].error = e.what();
          }
        });
      }
      if (with_oracle) {
        teff::parallel_for(rows.size(), [&](std::size_t i) {
          if (!rows[i].error.empty()) return;
          try {
            rows[i].oracle = teff::numerov_search(p, rows[i].entry.level, rows[i].entry.E);
          } catch (const teff::Error& e) {
            rows[i].error = std::string("oracle: ") + e.what();
          }
        });
      }
      std::ostringstream os;
      bool failed = false;
      if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
          json o = r.error.empty() ? teff::to_json(r.entry) : json{{"n_r", r.level.first}, {"l", r.level.second}};
          if (r.oracle) {
            o["oracle_E"] = *r.oracle;
            o["relative_deviation"] = r.entry.E / *r.oracle - 1.0;
          }
          if (!r.error.empty()) o["error"] = r.error;
          arr.push_back(o);
        }
        os << dump({{"schema", teff::kJsonSchema},
                    {"kind", "spectrum"},
                    {"potential", p.describe()},
                    {"d", spec_d},
                    {"mode", mode_text},
                    {"levels", arr}});
      } else {
        const bool csv = format == "csv";
        if (csv) os << "# values rounded to 10 significant digits\nn_r,l,T,E,iterations,oracle_E,relative_deviation,error\n";
        for (const auto& r : rows) {
          char buf[512];
          if (!r.error.empty()) failed = true;
          if (csv) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.10g,%d,", r.level.first, r.level.second, r.entry.T,
                          r.entry.E, r.entry.iterations);
            os << buf;
            if (r.oracle) {
              std::snprintf(buf, sizeof buf, "%.10g,%.6e", *r.oracle, r.entry.E / *r.oracle - 1.0);
              os << buf;
            } else {
              os << ',';
            }
            os << ',' << teff::detail::csv_quote(r.error) << '\n';
            continue;
          }
          std::snprintf(buf, sizeof buf, "(%d,%d)", r.level.first, r.level.second);
          os << buf;
          if (!r.error.empty()) {
            os << "  error: " << r.error << '\n';
            continue;
          }
          std::snprintf(buf, sizeof buf, "  T=%.8f  E=%.10g  iterations=%d", r.entry.T, r.entry.E,
                        r.entry.iterations);
          os << buf;
          if (r.oracle) {
            std::snprintf(buf, sizeof buf, "  oracle=%.10g  deviation=%+.4f%%", *r.oracle,
                          100.0 * (r.entry.E / *r.oracle - 1.0));
            os << buf;
          }
          os << '\n';
        }
      }
      for (const auto& r : rows)
        if (!r.error.empty()) failed = true;
      emit(os.str(), output);
      return failed ? kNumerical : kOk;
    }

    if (*diag) {
      if (diag_potentials.empty()) throw teff::Error(teff::ErrorKind::Syntax, "diagram needs at least one --potential");
      std::vector<teff::QuantumLevel> lines;
      for (int n = 0; n <= max_nr; ++n)
        for (int l = 0; l <= max_l; ++l) lines.emplace_back(n, l, diag_d);
      double top = 0.0;
      for (const auto& q : lines) top = std::max(top, teff::teff(q, phi_max));
      std::vector<teff::DiagramSource> sources;
      for (const auto& s : diag_potentials) {
        const auto p = teff::parse_potential(s);
        // curve y runs from the deepest level up to the highest line
        sources.push_back({p, teff::count_grid(p, 0.05, top, points, quad)});
      }
      const auto data = teff::diagram_data(lines, phi_min, phi_max, sources, diag_d, quad);
      emit(diag_format == "json" ? dump(teff::to_json(data)) : teff::to_csv(data), output);
      return kOk;
    }

    if (*ver) {
      const auto results = teff::verify::run_all(&std::cout);
      int failed = 0;
      for (const auto& r : results) failed += r.passed ? 0 : 1;
      std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
      return failed ? kVerifyFailed : kOk;
    }
  } catch (const teff::Error& e) {
    std::cerr << "teff: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "teff: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
