#include "necklace/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "necklace/bloch.hpp"
#include "necklace/comb1.hpp"
#include "necklace/error.hpp"
#include "necklace/graph.hpp"
#include "necklace/mixing.hpp"
#include "necklace/oracle.hpp"
#include "necklace/parallel.hpp"
#include "necklace/walk.hpp"

namespace necklace::cli {
namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  std::string text;
  int code = kSuccess;
};

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

Pearl resolve_pearl(const RunConfig& cfg) {
  const int sources = (cfg.cycle ? 1 : 0) + (cfg.comb_d ? 1 : 0) + (cfg.pearl_file ? 1 : 0);
  if (sources != 1) throw ConfigError("give exactly one of --cycle, --comb-d, --pearl-file");
  if (cfg.cycle) return Pearl::cycle();
  if (cfg.comb_d) return Pearl::comb(*cfg.comb_d);
  return load_pearl_file(*cfg.pearl_file);
}

int single_k(const RunConfig& cfg) {
  if (cfg.k_spec.empty()) throw ConfigError("--K is required");
  const auto ks = parse_int_list(cfg.k_spec, cfg.log_spacing.value_or(false), cfg.range_points);
  if (ks.size() != 1) throw ConfigError("this command takes a single --K value");
  return ks.front();
}

std::string vertex_type(const Pearl& pearl, int m) {
  const int d = pearl.comb_spacing();
  if (d == 0) return "ring";
  if (d > 0) {
    if (m == 1) return "base";
    if (m == pearl.size()) return "tooth";
    return "ring";
  }
  return "vertex";
}

/// "j", "j,m", "j,base" or "j,tooth", 0-based; returns 1-based (j, m).
std::pair<int, int> resolve_start(const Necklace& necklace, const std::string& text) {
  const auto comma = text.find(',');
  const int j = parse_int(text.substr(0, comma)) + 1;
  int m = 1;
  if (comma != std::string::npos) {
    const std::string site = text.substr(comma + 1);
    if (site == "base") {
      if (necklace.pearl().comb_spacing() < 1) throw ConfigError("'base' needs a comb pearl");
      m = 1;
    } else if (site == "tooth") {
      if (necklace.pearl().comb_spacing() < 1) throw ConfigError("'tooth' needs a comb pearl");
      m = necklace.pearl_size();
    } else {
      m = parse_int(site) + 1;
    }
  }
  if (j < 1 || j > necklace.pearls() || m < 1 || m > necklace.pearl_size()) {
    throw ConfigError("start vertex '" + text + "' outside the necklace");
  }
  return {j, m};
}

double tolerance_for(const RunConfig& cfg, const FullSpectrum& spectrum) {
  return cfg.tau > 0.0 ? cfg.tau : default_degeneracy_tolerance(spectrum);
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
  const Necklace necklace(resolve_pearl(cfg), single_k(cfg));
  const FullSpectrum spectrum = full_spectrum(necklace, false);
  std::ostringstream os;
  if (cfg.format == Format::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : spectrum.entries()) rows.push_back({{"k", e.k}, {"n", e.n}, {"lambda", e.value}});
    os << nlohmann::json{{"K", necklace.pearls()}, {"M", necklace.pearl_size()}, {"spectrum", rows}}.dump(2) << '\n';
  } else {
    os << "k,n,lambda\n";
    for (const auto& e : spectrum.entries()) os << e.k << ',' << e.n << ',' << format_number(e.value) << '\n';
  }
  if (!cfg.vectors_out.empty()) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& s : spectrum.sectors()) {
      for (int n = 0; n < necklace.pearl_size(); ++n) {
        std::vector<double> re, im;
        for (int m = 0; m < necklace.pearl_size(); ++m) {
          re.push_back(s.vectors(m, n).real());
          im.push_back(s.vectors(m, n).imag());
        }
        list.push_back({{"k", s.k}, {"n", n}, {"lambda", s.values(n)}, {"re", re}, {"im", im}});
      }
    }
    nlohmann::json doc{{"K", necklace.pearls()},
                       {"M", necklace.pearl_size()},
                       {"pearl", pearl_to_json(necklace.pearl())},
                       {"lifting", "psi[j*M + m] = exp(2 pi i k (j+1) / K) * y[m] / sqrt(K), j,m 0-based"},
                       {"sector_vectors", list}};
    std::ofstream f(cfg.vectors_out, std::ios::binary);
    if (!f) throw IoError("cannot open " + cfg.vectors_out);
    f << doc.dump(2) << '\n';
    if (!f) throw IoError("failed writing " + cfg.vectors_out);
  }
  return {os.str()};
}

CommandResult cmd_limiting(const RunConfig& cfg) {
  const Necklace necklace(resolve_pearl(cfg), single_k(cfg));
  const auto [j0, m0] = resolve_start(necklace, cfg.start);
  const int comb_d = necklace.pearl().comb_spacing();
  if (cfg.closed_form && comb_d != 0 && comb_d != 1) {
    throw ConfigError("--closed-form is available for --cycle and --comb-d 1 only");
  }
  const FullSpectrum spectrum = full_spectrum(necklace);
  const auto limit = limiting_distribution(spectrum, InitialState::vertex(necklace, j0, m0), tolerance_for(cfg, spectrum));
  const Distribution& pi = limit.distribution;

  std::vector<double> closed;
  double max_dev = 0.0;
  if (cfg.closed_form) {
    for (int j = 1; j <= necklace.pearls(); ++j) {
      for (int m = 1; m <= necklace.pearl_size(); ++m) {
        double v = 0.0;
        if (comb_d == 0) {
          v = cycle_limiting(necklace.pearls(), j, j0);
        } else {
          v = comb1_limiting(necklace.pearls(), m0 == 1 ? Site::base : Site::tooth, m == 1 ? Site::base : Site::tooth, j, j0);
        }
        max_dev = std::max(max_dev, std::abs(v - pi[necklace.index(j, m)]));
        closed.push_back(v);
      }
    }
  }

  std::ostringstream os;
  if (cfg.format == Format::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (int j = 1; j <= necklace.pearls(); ++j) {
      for (int m = 1; m <= necklace.pearl_size(); ++m) {
        const int x = necklace.index(j, m);
        nlohmann::json row{{"j", j - 1}, {"m", m - 1}, {"vertex_type", vertex_type(necklace.pearl(), m)}, {"pi", pi[x]}};
        if (cfg.closed_form) row["closed_form"] = closed[x];
        rows.push_back(row);
      }
    }
    nlohmann::json doc{{"K", necklace.pearls()}, {"M", necklace.pearl_size()}, {"start", {j0 - 1, m0 - 1}},
                       {"tau", limit.partition.tolerance}, {"ambiguous_degeneracy", limit.partition.ambiguous},
                       {"distribution", rows}};
    if (cfg.closed_form) doc["max_abs_deviation"] = max_dev;
    os << doc.dump(2) << '\n';
  } else {
    os << "j,m,vertex_type,pi" << (cfg.closed_form ? ",closed_form,abs_deviation" : "") << '\n';
    for (int j = 1; j <= necklace.pearls(); ++j) {
      for (int m = 1; m <= necklace.pearl_size(); ++m) {
        const int x = necklace.index(j, m);
        os << j - 1 << ',' << m - 1 << ',' << vertex_type(necklace.pearl(), m) << ',' << format_number(pi[x]);
        if (cfg.closed_form) os << ',' << format_number(closed[x]) << ',' << format_number(std::abs(closed[x] - pi[x]));
        os << '\n';
      }
    }
    if (cfg.closed_form) os << "# max_abs_deviation," << format_number(max_dev) << '\n';
    if (limit.partition.ambiguous) os << "# warning,ambiguous-degeneracy\n";
  }
  return {os.str()};
}

CommandResult cmd_mix(const RunConfig& cfg) {
  const Necklace necklace(resolve_pearl(cfg), single_k(cfg));
  const auto [j0, m0] = resolve_start(necklace, cfg.start);
  if (!(cfg.eps > 0.0 && cfg.eps <= 2.0)) throw ConfigError("--eps must lie in (0, 2]");
  if (!(cfg.horizon_hi > 0.0) || !(cfg.horizon_lo > 0.0) || !(cfg.ratio > 1.0)) {
    throw ConfigError("--T-lo, --T-hi must be positive and --ratio > 1");
  }
  if (cfg.bound_c && !(*cfg.bound_c > 0.0)) throw ConfigError("--c must be positive");
  const FullSpectrum spectrum = full_spectrum(necklace);
  const InitialState start = InitialState::vertex(necklace, j0, m0);
  const double tau = tolerance_for(cfg, spectrum);
  const MixingTimeResult mix = mixing_time(spectrum, start, cfg.eps, cfg.horizon_hi, tau, cfg.horizon_lo, cfg.ratio);
  const TimeAverager avg(spectrum, start, tau);

  std::vector<double> bounds, curves;
  for (double t : mix.grid) {
    bounds.push_back(avg.lemma43_bound(t));
    if (cfg.bound_c) curves.push_back(cfg.bound_pairs * mixing_bound_curve(*cfg.bound_c, necklace.pearls(), t));
  }

  std::ostringstream os;
  if (cfg.format == Format::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < mix.grid.size(); ++i) {
      nlohmann::json row{{"T", mix.grid[i]}, {"tv_distance", mix.tv[i]}, {"lemma43_bound", bounds[i]}};
      if (cfg.bound_c) row["mixing_bound_curve"] = curves[i];
      rows.push_back(row);
    }
    nlohmann::json doc{{"K", necklace.pearls()}, {"M", necklace.pearl_size()}, {"eps", cfg.eps},
                       {"tv_convention", "sum_x |p_x - q_x| (un-halved)"}, {"rows", rows},
                       {"tv_at_T_hi", mix.tv_at_horizon}};
    doc["T_mix"] = mix.mixing_time ? nlohmann::json(*mix.mixing_time) : nlohmann::json(nullptr);
    os << doc.dump(2) << '\n';
  } else {
    os << "T,tv_distance,lemma43_bound" << (cfg.bound_c ? ",mixing_bound_curve" : "") << '\n';
    for (std::size_t i = 0; i < mix.grid.size(); ++i) {
      os << format_number(mix.grid[i]) << ',' << format_number(mix.tv[i]) << ',' << format_number(bounds[i]);
      if (cfg.bound_c) os << ',' << format_number(curves[i]);
      os << '\n';
    }
    if (mix.mixing_time) {
      os << "# T_mix," << format_number(*mix.mixing_time) << '\n';
    } else {
      os << "# T_mix,not-found,tv_at_T_hi=" << format_number(mix.tv_at_horizon) << '\n';
    }
  }
  return {os.str()};
}

CommandResult cmd_gap_scan(const RunConfig& cfg) {
  if (cfg.d_spec.empty() || cfg.k_spec.empty()) throw ConfigError("gap-scan needs --d and --K");
  const auto ds = parse_int_list(cfg.d_spec, false);
  const auto ks = parse_int_list(cfg.k_spec, cfg.log_spacing.value_or(true), cfg.range_points);
  for (int k : ks) {
    if (k < 3) throw ConfigError("every K must be >= 3");
  }
  const GapScan scan = gap_scan(ds, ks);
  std::ostringstream os;
  if (cfg.format == Format::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : scan.records) rows.push_back({{"d", r.d}, {"K", r.pearls}, {"min_gap", r.min_gap}, {"tau", r.tolerance}});
    nlohmann::json slopes = nlohmann::json::array();
    for (const auto& s : scan.slopes) {
      slopes.push_back({{"d", s.d}, {"slope", s.points >= 2 ? nlohmann::json(s.slope) : nlohmann::json(nullptr)}});
    }
    os << nlohmann::json{{"records", rows}, {"slopes", slopes}}.dump(2) << '\n';
  } else {
    os << "d,K,min_gap\n";
    for (const auto& r : scan.records) os << r.d << ',' << r.pearls << ',' << format_number(r.min_gap) << '\n';
    for (const auto& s : scan.slopes) {
      if (s.points >= 2) os << "# slope," << s.d << ',' << format_number(s.slope) << '\n';
    }
  }
  return {os.str()};
}

CommandResult cmd_oracle_check(const RunConfig& cfg) {
  const Necklace necklace(resolve_pearl(cfg), single_k(cfg));
  if (necklace.vertex_count() > 2000) throw ConfigError("oracle-check needs K*M <= 2000");
  const auto [j0, m0] = resolve_start(necklace, cfg.start);
  const FullSpectrum probe = full_spectrum(necklace, false);
  const oracle::Report report = oracle::run_checks(necklace, j0, m0, tolerance_for(cfg, probe));
  nlohmann::json doc = report.to_json();
  doc["K"] = necklace.pearls();
  doc["M"] = necklace.pearl_size();
  std::ostringstream os;
  os << doc.dump(2) << '\n';
  return {os.str(), report.passed() ? kSuccess : kOracleFailure};
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_flag("--cycle", cfg.cycle, "Plain cycle (single-vertex pearl)");
  sub->add_option("--comb-d", cfg.comb_d, "Comb pearl with tooth spacing d");
  sub->add_option("--pearl-file", cfg.pearl_file, "Pearl JSON file (0-based vertices)");
  sub->add_option("--K", cfg.k_spec, "Pearl count, list a,b,c or range a..b")->required();
  sub->add_option("--points", cfg.range_points, "Points per log-spaced K range");
  sub->add_flag("--linear{false}", cfg.log_spacing, "Expand a..b as every integer");
  sub->add_flag("--log{true}", cfg.log_spacing, "Expand a..b log-spaced");
  sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
  sub->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  sub->add_option("--threads", cfg.threads, "Worker threads (overrides NECKLACE_THREADS)");
  sub->add_option("--tau", cfg.tau, "Degeneracy tolerance (default 1e-8 * max|lambda|)");
}

void add_start(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--start", cfg.start, "Start vertex: j | j,m | j,base | j,tooth (0-based)");
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text, bool log, int points) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    const int a = parse_int(item.substr(0, dots));
    const int b = parse_int(item.substr(dots + 2));
    if (a > b) throw ConfigError("empty range '" + item + "'");
    if (!log) {
      for (int v = a; v <= b; ++v) out.push_back(v);
      continue;
    }
    if (a < 1) throw ConfigError("log-spaced range needs a positive start");
    int count = points;
    if (count <= 0) count = static_cast<int>(std::lround(2.0 * std::log2(static_cast<double>(b) / a))) + 1;
    count = std::max(count, a == b ? 1 : 2);
    std::set<int> seen;
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      const int v = static_cast<int>(std::lround(a * std::pow(static_cast<double>(b) / a, t)));
      if (seen.insert(v).second) out.push_back(v);
    }
  }
  if (out.empty()) throw ConfigError("empty list '" + text + "'");
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra, limiting distributions and mixing of quantum walks on necklace graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* spectrum = app.add_subcommand("spectrum", "Sector eigenvalues k,n,lambda");
  add_common(spectrum, cfg);
  spectrum->add_option("--vectors-out", cfg.vectors_out, "Write sector eigenvectors as JSON");

  auto* limiting = app.add_subcommand("limiting", "Limiting distribution from a vertex start");
  add_common(limiting, cfg);
  add_start(limiting, cfg);
  limiting->add_flag("--closed-form", cfg.closed_form, "Compare against the closed form (cycle, comb d=1)");

  auto* mix = app.add_subcommand("mix", "Time-averaged TV distance, pair bound and mixing time");
  add_common(mix, cfg);
  add_start(mix, cfg);
  mix->add_option("--eps", cfg.eps, "Precision eps for T_mix");
  mix->add_option("--T-hi", cfg.horizon_hi, "Largest averaging time");
  mix->add_option("--T-lo", cfg.horizon_lo, "Smallest averaging time");
  mix->add_option("--ratio", cfg.ratio, "Geometric grid ratio");
  mix->add_option("--c", cfg.bound_c, "Cos-bound constant; adds the mixing_bound_curve column");
  mix->add_option("--pairs", cfg.bound_pairs, "Governing branch pairs multiplying the curve");

  auto* scan = app.add_subcommand("gap-scan", "Smallest nonzero eigenvalue gap over (d, K)");
  scan->add_option("--d", cfg.d_spec, "Tooth spacings (0 = cycle)")->required();
  scan->add_option("--K", cfg.k_spec, "Pearl counts; a..b is log-spaced unless --linear")->required();
  scan->add_option("--points", cfg.range_points, "Points per log-spaced K range");
  scan->add_flag("--linear{false}", cfg.log_spacing, "Expand a..b as every integer");
  scan->add_flag("--log{true}", cfg.log_spacing, "Expand a..b log-spaced");
  scan->add_option("-o,--output", cfg.output, "Output file (default stdout)");
  scan->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  scan->add_option("--threads", cfg.threads, "Worker threads (overrides NECKLACE_THREADS)");

  auto* check = app.add_subcommand("oracle-check", "Compare against brute-force references");
  add_common(check, cfg);
  add_start(check, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.threads > 0) set_thread_count(cfg.threads);

  CommandResult result;
  try {
    if (cfg.command == "spectrum") {
      result = cmd_spectrum(cfg);
    } else if (cfg.command == "limiting") {
      result = cmd_limiting(cfg);
    } else if (cfg.command == "mix") {
      result = cmd_mix(cfg);
    } else if (cfg.command == "gap-scan") {
      result = cmd_gap_scan(cfg);
    } else {
      result = cmd_oracle_check(cfg);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (cfg.output.empty() || cfg.output == "-") {
    out << result.text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    f << result.text;
    if (!f) {
      err << "error: cannot write " << cfg.output << '\n';
      return kIoError;
    }
  }
  if (result.code == kOracleFailure) err << "error: oracle check failed\n";
  return result.code;
}

}  // namespace necklace::cli
