#include "qdiscord/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qdiscord/chain_models.hpp"
#include "qdiscord/csv.hpp"
#include "qdiscord/errors.hpp"
#include "qdiscord/scaling_lab.hpp"
#include "qdiscord/svg.hpp"
#include "qdiscord/thermal.hpp"
#include "qdiscord/xstate.hpp"

namespace qdiscord::cli {

namespace {

using csv::format_bool;
using csv::format_number;

struct ModelArgs {
  std::string model = "tfim";
  double delta = 0.0;
  double alpha = 0.0;
  double h = 0.0;
  double gamma = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "xxz, xy, tfim or xyfield")
        ->check(CLI::IsMember({"xxz", "xy", "tfim", "xyfield"}));
    app->add_option("--delta", delta, "XXZ anisotropy");
    app->add_option("--alpha", alpha, "XY anisotropy in [0, 1]");
    app->add_option("--h", h, "transverse field");
    app->add_option("--gamma", gamma, "XY-in-field anisotropy in (0, 1]");
  }

  ModelSpec spec() const {
    ModelSpec m;
    if (model == "xxz")
      m = XXZ{delta};
    else if (model == "xy")
      m = XY{alpha};
    else if (model == "tfim")
      m = TFIM{h};
    else
      m = XYField{gamma, h};
    validate(m);
    return m;
  }
};

double parse_beta(const std::string& s) {
  if (s == "inf" || s == "infinity") return kGroundState;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("cannot parse beta: " + s);
  }
  if (used != s.size()) throw ArgumentError("cannot parse beta: " + s);
  return v;
}

std::string format_beta(double beta) { return std::isinf(beta) ? "inf" : format_number(beta); }

std::string join_sites(const std::vector<std::size_t>& sites) {
  std::string s;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(sites[i]);
  }
  return s;
}

std::string replace_extension(const std::string& path, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
  return path.substr(0, dot) + ext;
}

// Metadata on the model: regime and the prefactors that apply to it.
void model_metadata(const ModelSpec& m, std::vector<std::pair<std::string, std::string>>& md) {
  const auto tag = classify_regime(m);
  md.emplace_back("model", describe(m));
  md.emplace_back("regime", std::string(to_string(tag.regime)));
  if (tag.regime == Regime::XXZ_Critical) {
    md.emplace_back("eta", format_number(tag.eta));
    const auto p = xxz_prefactors(tag.eta);
    md.emplace_back("A_x", format_number(p.a_x));
    md.emplace_back("A_z", format_number(p.a_z));
  }
  if (std::holds_alternative<TFIM>(m) || std::holds_alternative<XYField>(m)) {
    const double sz = magnetization(m);
    const double xinf = long_range_order<double>(m);
    md.emplace_back("magnetization", format_number(sz));
    md.emplace_back("xx_inf", format_number(xinf));
    md.emplace_back("A1", format_number(field_prefactor_a1(sz)));
    if (has_long_range_order(tag.regime)) {
      try {
        const auto p = field_prefactors(sz, xinf);
        md.emplace_back("A2", format_number(p.a2));
        md.emplace_back("A3", format_number(p.a3));
        if (tag.regime == Regime::XYF_FerroInner) {
          const auto& f = std::get<XYField>(m);
          md.emplace_back("A4", format_number(a4_prefactor(f.gamma, f.h, p.a3)));
        }
      } catch (const DomainError&) {
        md.emplace_back("A2", "undefined");
      }
    }
    if (const auto* f = std::get_if<XYField>(&m); f && f->h > 0.0)
      md.emplace_back("lambda_modulus", format_number(lambda_param(f->gamma, f->h).modulus));
  }
  if (has_long_range_order(tag.regime))
    md.emplace_back("D_limit", format_number(limit_discord(limit_correlators(m))));
}

int cmd_discord(double sz, std::optional<double> sz_j, double xx, double yy, double zz,
                bool force_oracle, std::ostream& out) {
  PairCorrelators c{sz, sz_j.value_or(sz), xx, yy, zz};
  const auto s = from_correlators(c);
  const bool symmetric = c.sz_i == c.sz_j;
  const double margin = lemma1_margin(s);
  const bool lemma = margin >= -kLemmaMargin;
  double d = 0.0, i = 0.0;
  std::string method;
  if (symmetric && lemma && !force_oracle) {
    d = discord_analytic(c, kLemmaMargin);
    i = xstate_mutual_information(c);
    method = "analytic";
  } else {
    const auto r = discord_numeric(to_density_matrix(s));
    d = r.discord;
    i = r.mutual_information;
    method = "oracle";
  }
  out << "D = " << format_number(d) << '\n';
  out << "J = " << format_number(i - d) << '\n';
  out << "I = " << format_number(i) << '\n';
  out << "lemma1 = " << format_bool(lemma) << '\n';
  out << "lemma1_margin = " << format_number(margin) << '\n';
  out << "method = " << method << '\n';
  return kExitOk;
}

struct ScanArgs {
  int r_min = 2;
  int r_max = 60;
  std::string source = "exact";
  std::string precision = "auto";
  std::string out_path;
  std::string svg_path;
  std::string format = "csv";
  bool fit = false;
};

int cmd_scan(const ModelSpec& m, const ScanArgs& a, std::ostream& out) {
  const bool want_csv = a.format != "svg";
  const bool want_svg = a.format != "csv";
  std::string svg_path = a.svg_path;
  if (want_svg && svg_path.empty()) {
    if (a.out_path.empty()) throw ArgumentError("svg output needs --out or --svg");
    svg_path = replace_extension(a.out_path, ".svg");
  }

  ProfileOptions options;
  if (a.precision == "double") options.precision = PrecisionMode::standard;
  if (a.precision == "extended") options.precision = PrecisionMode::extended;
  const auto source =
      a.source == "exact" ? CorrelatorSource::exact : CorrelatorSource::asymptotic;
  const auto records = discord_profile(m, a.r_min, a.r_max, source, options);
  const auto tag = classify_regime(m);

  csv::Table t;
  model_metadata(m, t.metadata);
  t.metadata.emplace_back("source", std::string(to_string(source)));
  t.metadata.emplace_back("precision",
                          records.front().precision == Precision::extended ? "extended" : "double");
  std::optional<FitReport> fit;
  if (a.fit) {
    fit = fit_decay(records);
    t.metadata.emplace_back("fit_law", std::string(to_string(fit->law)));
    t.metadata.emplace_back("fit_exponent_or_rate", format_number(fit->exponent_or_rate));
    t.metadata.emplace_back("fit_amplitude", format_number(fit->amplitude));
    t.metadata.emplace_back("fit_r_squared", format_number(fit->r_squared));
    t.metadata.emplace_back("fit_ratio_n", format_number(fit->ratio_n));
  }
  std::size_t fallbacks = 0;
  for (const auto& rec : records) fallbacks += rec.oracle_fallback ? 1 : 0;
  t.metadata.emplace_back("oracle_fallbacks", std::to_string(fallbacks));

  t.header = {"r", "sz", "xx", "yy", "zz", "D", "D_asym", "J", "I", "lemma1"};
  for (const auto& rec : records) {
    const auto& c = rec.correlators;
    t.add_row({std::to_string(rec.r), format_number(c.sz_i), format_number(c.xx),
               format_number(c.yy), format_number(c.zz), format_number(rec.D),
               format_number(rec.D_asym), format_number(rec.J), format_number(rec.I),
               format_bool(rec.lemma1)});
  }

  if (want_csv) {
    if (a.out_path.empty())
      csv::write(out, t);
    else
      csv::write_file(a.out_path, t);
  }
  if (want_svg) {
    const bool ordered = has_long_range_order(tag.regime);
    svg::Plot p;
    p.title = describe(m) + " (" + std::string(to_string(tag.regime)) + ")";
    p.x_label = "r";
    p.y_label = ordered ? "D(r) - D_limit" : "D(r)";
    p.log_x = is_critical(tag.regime);
    p.log_y = true;
    svg::Series s_data{std::string(to_string(source)), {}, {}, "#1f77b4", false};
    svg::Series s_asym{"asymptotic formula", {}, {}, "#d62728", true};
    for (const auto& rec : records) {
      s_data.x.push_back(rec.r);
      s_data.y.push_back(ordered ? rec.D_excess : rec.D);
      if (std::isfinite(rec.D_asym)) {
        s_asym.x.push_back(rec.r);
        s_asym.y.push_back(ordered ? asymptotic_discord_parts(m, rec.r).correction : rec.D_asym);
      }
    }
    p.series.push_back(std::move(s_data));
    if (!s_asym.x.empty()) p.series.push_back(std::move(s_asym));
    svg::write_file(svg_path, p);
  }
  if (!a.out_path.empty() || !want_csv) {
    out << "rows = " << records.size() << '\n';
    if (fit)
      out << "fit = " << to_string(fit->law) << " exponent_or_rate="
          << format_number(fit->exponent_or_rate) << " r_squared=" << format_number(fit->r_squared)
          << " ratio_n=" << format_number(fit->ratio_n) << '\n';
  }
  return kExitOk;
}

struct ThermalArgs {
  std::size_t n = 8;
  std::vector<std::string> betas{"1"};
  std::optional<std::size_t> cut;
  bool all_cuts = false;
  std::string geometry = "open";
  std::size_t cols = 0;
  std::string out_path;
};

int cmd_thermal(const ModelSpec& m, const ThermalArgs& a, std::ostream& out) {
  const Geometry g = a.geometry == "open"       ? Geometry::open_chain
                     : a.geometry == "periodic" ? Geometry::periodic_chain
                                                : Geometry::grid;
  const auto h = build_chain_hamiltonian(m, a.n, g, a.cols);
  std::vector<double> betas;
  for (const auto& b : a.betas) betas.push_back(parse_beta(b));
  std::vector<std::vector<std::size_t>> cuts;
  if (a.all_cuts) {
    cuts = contiguous_cuts(a.n);
  } else {
    const std::size_t k = a.cut.value_or(a.n / 2);
    if (k == 0 || k >= a.n) throw ArgumentError("--cut must lie in [1, n-1]");
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    cuts.push_back(std::move(c));
  }
  const auto checks = area_law_sweep(h, betas, cuts);

  csv::Table t;
  model_metadata(m, t.metadata);
  t.metadata.emplace_back("sites", std::to_string(a.n));
  t.metadata.emplace_back("geometry", a.geometry);
  t.header = {"beta",       "cut",       "boundary",       "max_term_norm", "bound",
              "I",          "satisfied", "F_joint",        "F_product",     "free_energy_ok",
              "D_oracle"};
  bool all_ok = true;
  for (const auto& c : checks) {
    all_ok = all_ok && c.satisfied && c.free_energy_ok && c.discord_ok;
    t.add_row({format_beta(c.beta), join_sites(c.cut), std::to_string(c.boundary_size),
               format_number(c.max_term_norm), format_number(c.bound),
               format_number(c.mutual_info), format_bool(c.satisfied),
               c.free_energy_checked ? format_number(c.free_energy_joint) : "",
               c.free_energy_checked ? format_number(c.free_energy_product) : "",
               format_bool(c.free_energy_ok),
               c.oracle_checked ? format_number(c.oracle_discord) : ""});
    out << "beta=" << format_beta(c.beta) << " cut=" << join_sites(c.cut)
        << " I=" << format_number(c.mutual_info) << " bound=" << format_number(c.bound)
        << " satisfied=" << format_bool(c.satisfied);
    if (c.free_energy_checked) out << " free_energy_ok=" << format_bool(c.free_energy_ok);
    if (c.oracle_checked) out << " D_oracle=" << format_number(c.oracle_discord);
    out << '\n';
  }
  if (!a.out_path.empty()) csv::write_file(a.out_path, t);
  out << "all_satisfied = " << format_bool(all_ok) << '\n';
  return kExitOk;
}

int cmd_prefactors(const ModelSpec& m, std::optional<double> eta, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> md;
  if (eta) {
    const auto p = xxz_prefactors(*eta);
    md.emplace_back("eta", format_number(*eta));
    md.emplace_back("A_x", format_number(p.a_x));
    md.emplace_back("A_z", format_number(p.a_z));
  } else {
    model_metadata(m, md);
  }
  md.emplace_back("glaisher", format_number(glaisher_constant()));
  for (const auto& [k, v] : md) out << k << " = " << v << '\n';
  return kExitOk;
}

struct ContinuityArgs {
  std::size_t pairs = 500;
  std::uint64_t seed = 1;
  double t_min = 1e-4;
  double t_max = 0.1;
  double slack = kContinuitySlack;
  std::string out_path;
};

int cmd_continuity(const ContinuityArgs& a, std::ostream& out) {
  const auto pairs = perturbed_xstate_pairs(a.seed, a.pairs, a.t_min, a.t_max);
  const auto rows = continuity_report(pairs, a.slack);
  csv::Table t;
  t.metadata.emplace_back("pairs", std::to_string(a.pairs));
  t.metadata.emplace_back("seed", std::to_string(a.seed));
  t.metadata.emplace_back("slack", format_number(a.slack));
  t.header = {"t", "delta_D", "bound_term", "ratio", "flagged"};
  std::size_t flagged = 0;
  std::map<int, double> decade_max;
  for (const auto& r : rows) {
    flagged += r.flagged ? 1 : 0;
    const int decade = static_cast<int>(std::floor(std::log10(r.t)));
    decade_max[decade] = std::max(decade_max[decade], r.ratio);
    t.add_row({format_number(r.t), format_number(r.delta_discord), format_number(r.bound_term),
               format_number(r.ratio), format_bool(r.flagged)});
  }
  if (!a.out_path.empty()) csv::write_file(a.out_path, t);
  out << "pairs = " << rows.size() << '\n';
  out << "flagged = " << flagged << '\n';
  for (const auto& [d, v] : decade_max)
    out << "max_ratio[1e" << d << ", 1e" << d + 1 << ") = " << format_number(v) << '\n';
  return kExitOk;
}

// Splices "key = value" lines from --config into args after the subcommand.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ArgumentError("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;
  std::ifstream f(*path);
  if (!f) throw ArgumentError("cannot read config file: " + *path);

  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };

  std::vector<std::string> extra;
  std::optional<std::string> command;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("config line " + std::to_string(lineno) + " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ArgumentError("config line " + std::to_string(lineno) + " has no key");
    if (key == "command") {
      command = value;
      continue;
    }
    if (given(key)) continue;
    if (value == "true") {
      extra.push_back("--" + key);
    } else if (value == "false") {
      continue;
    } else {
      extra.push_back("--" + key);
      extra.push_back(value);
    }
  }
  const bool has_command = !args.empty() && args.front().rfind("-", 0) != 0;
  if (!has_command) {
    if (!command) throw ArgumentError("no subcommand given on the command line or in the config");
    args.insert(args.begin(), *command);
  }
  args.insert(args.begin() + 1, extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum discord of spin-chain X states", "qdiscord"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "qdiscord 1.0");

  auto* discord = app.add_subcommand("discord", "Discord of a two-qubit X state from correlators");
  double sz = 0.0, xx = 0.0, yy = 0.0, zz = 0.0;
  std::optional<double> sz_j;
  bool force_oracle = false;
  discord->add_option("--sz", sz, "<sigma^z> on both sites (first site with --sz2)");
  discord->add_option("--sz2", sz_j, "<sigma^z> on the second site");
  discord->add_option("--xx", xx, "<sigma^x sigma^x>")->required();
  discord->add_option("--yy", yy, "<sigma^y sigma^y>")->required();
  discord->add_option("--zz", zz, "<sigma^z sigma^z>")->required();
  discord->add_flag("--oracle", force_oracle, "use the numeric oracle");

  ModelArgs scan_model;
  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Discord versus separation for a spin chain");
  scan_model.attach(scan);
  scan->add_option("--rmin", scan_args.r_min, "smallest separation (>= 2)");
  scan->add_option("--rmax", scan_args.r_max, "largest separation (<= 512)");
  scan->add_option("--source", scan_args.source, "exact or asymptotic")
      ->check(CLI::IsMember({"exact", "asymptotic"}));
  scan->add_option("--precision", scan_args.precision, "auto, double or extended")
      ->check(CLI::IsMember({"auto", "double", "extended"}));
  scan->add_option("--out", scan_args.out_path, "CSV path (stdout when omitted)");
  scan->add_option("--svg", scan_args.svg_path, "SVG path (default: --out with .svg)");
  scan->add_option("--format", scan_args.format, "csv, svg or both")
      ->check(CLI::IsMember({"csv", "svg", "both"}));
  scan->add_flag("--fit", scan_args.fit, "fit the decay law");

  ModelArgs thermal_model;
  ThermalArgs thermal_args;
  auto* thermal = app.add_subcommand("thermal", "Area-law check on a small lattice");
  thermal_model.attach(thermal);
  thermal->add_option("--n", thermal_args.n, "number of sites (<= 12)");
  thermal->add_option("--beta", thermal_args.betas, "inverse temperatures (inf allowed)")
      ->delimiter(',');
  thermal->add_option("--cut", thermal_args.cut, "A = the first k sites (default n/2)");
  thermal->add_flag("--all-cuts", thermal_args.all_cuts, "every contiguous cut");
  thermal->add_option("--geometry", thermal_args.geometry, "open, periodic or grid")
      ->check(CLI::IsMember({"open", "periodic", "grid"}));
  thermal->add_option("--cols", thermal_args.cols, "grid columns");
  thermal->add_option("--out", thermal_args.out_path, "CSV path");

  ModelArgs pre_model;
  std::optional<double> eta;
  auto* prefactors = app.add_subcommand("prefactors", "Regime and amplitude prefactors");
  pre_model.attach(prefactors);
  prefactors->add_option("--eta", eta, "XXZ exponent in (0, 1); overrides --model");

  ContinuityArgs cont_args;
  auto* continuity = app.add_subcommand("continuity", "Continuity experiment on random X states");
  continuity->add_option("--pairs", cont_args.pairs, "number of pairs");
  continuity->add_option("--seed", cont_args.seed, "random seed");
  continuity->add_option("--tmin", cont_args.t_min, "smallest trace distance");
  continuity->add_option("--tmax", cont_args.t_max, "largest trace distance (<= 0.2)");
  continuity->add_option("--slack", cont_args.slack, "constant C in -4 t ln t + C t");
  continuity->add_option("--out", cont_args.out_path, "CSV path");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (*discord) return cmd_discord(sz, sz_j, xx, yy, zz, force_oracle, out);
    if (*scan) return cmd_scan(scan_model.spec(), scan_args, out);
    if (*thermal) return cmd_thermal(thermal_model.spec(), thermal_args, out);
    if (*prefactors) return cmd_prefactors(eta ? ModelSpec{} : pre_model.spec(), eta, out);
    if (*continuity) return cmd_continuity(cont_args, out);
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.category() == ErrorCategory::validation ? kExitValidation : kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qdiscord::cli
