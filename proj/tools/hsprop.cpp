#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hsp/hsp.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

enum class Kind { number, extended, integer, list, text, flag };

struct OptionSpec {
  const char* flag;
  const char* key;
  Kind kind;
  const char* help;
};

const std::vector<OptionSpec> kGrid{
    {"--half-extent", "half_extent", Kind::number, "grid half extent (default 12)"},
    {"--n-points", "n_points", Kind::integer, "grid points (default 2048)"},
};

const std::vector<OptionSpec> kInitial{
    {"--initial", "initial", Kind::text, "gaussian, hermite or random"},
    {"--n", "n", Kind::integer, "Hermite order for --initial hermite"},
    {"--n-band", "n_band", Kind::integer, "highest Hermite order of random data"},
    {"--seed", "seed", Kind::integer, "seed for random data"},
};

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<std::vector<OptionSpec>> groups;
};

const std::vector<Subcommand> kCommands{
    {"propagate", "propagate a datum by the Mehler, spectral or transfer route",
     {kGrid, kInitial,
      {{"--method", "method", Kind::text, "mehler, spectral or transfer"},
       {"--t", "t", Kind::number, "time"},
       {"--tolerance", "tolerance", Kind::number, "eigenflow and norm tolerance"}}}},
    {"verify-transfer", "compare the transfer formula with the Mehler propagator",
     {kGrid,
      {{"--n-band", "n_band", Kind::integer, "highest Hermite order of random data"},
       {"--n-functions", "n_functions", Kind::integer, "number of random data"},
       {"--seed", "seed", Kind::integer, "first seed"},
       {"--v-values", "v_values", Kind::list, "comma-separated v values"},
       {"--tolerance", "tolerance", Kind::number, "residual tolerance"}}}},
    {"strichartz", "both sides of the Hermite/free Strichartz equality",
     {kGrid, kInitial,
      {{"--p", "p", Kind::extended, "space exponent (number or inf)"},
       {"--q", "q", Kind::extended, "time exponent (number or inf)"},
       {"--n-t", "n_t", Kind::integer, "time samples on the Hermite side"},
       {"--n-v", "n_v", Kind::integer, "time samples on the free side"},
       {"--v-max", "v_max", Kind::number, "free-side cut before the analytic tail"},
       {"--x-resolution", "x_resolution", Kind::number, "free-side grid density factor"},
       {"--tolerance", "tolerance", Kind::number, "relative tolerance"}}}},
    {"oscillatory", "quartic oscillatory integral against its bound",
     {{{"--sweep", "sweep", Kind::text, "default or none"},
       {"--a", "a", Kind::number, "quadratic coefficient (sweep none)"},
       {"--b", "b", Kind::number, "quartic coefficient (sweep none)"},
       {"--lo", "lo", Kind::extended, "interval start (number or -inf)"},
       {"--hi", "hi", Kind::extended, "interval end (number or inf)"},
       {"--k-lo", "k_lo", Kind::integer, "smallest decade of the sweep"},
       {"--k-hi", "k_hi", Kind::integer, "largest decade of the sweep"},
       {"--max-extensions", "max_extensions", Kind::integer, "sweep widenings"},
       {"--ceiling", "ceiling", Kind::number, "recorded ratio ceiling"},
       {"--no-subintervals", "subintervals", Kind::flag, "skip the sub-interval scan"}}}},
    {"maximal", "maximal function over 0 < t < pi/8",
     {kGrid, kInitial,
      {{"--n-t", "n_t", Kind::integer, "log-spaced time samples"},
       {"--t-min", "t_min", Kind::number, "smallest time"},
       {"--no-refinement", "refinement", Kind::flag, "skip the refinement diagnostic"}}}},
    {"local-l1", "local L1 norm of the maximal function over random data",
     {kGrid,
      {{"--n-band", "n_band", Kind::integer, "highest Hermite order of random data"},
       {"--n-functions", "n_functions", Kind::integer, "number of random data"},
       {"--seed", "seed", Kind::integer, "first seed"},
       {"--lo", "lo", Kind::number, "interval start"},
       {"--hi", "hi", Kind::number, "interval end"},
       {"--n-t", "n_t", Kind::integer, "log-spaced time samples"},
       {"--t-min", "t_min", Kind::number, "smallest time"},
       {"--x-spacing", "x_spacing", Kind::number, "spacing of the x quadrature"},
       {"--stability-tolerance", "stability_tolerance", Kind::number,
        "allowed ceiling change under doubling"}}}},
    {"divergence", "finite-depth divergence construction",
     {{{"--K", "K", Kind::integer, "depth"},
       {"--t1", "t1", Kind::number, "first dilation"},
       {"--max-halvings", "max_halvings", Kind::integer, "search cap per level"},
       {"--n-x", "n_x", Kind::integer, "sample points in I'"},
       {"--n-v", "n_v", Kind::integer, "sample v per condition check"},
       {"--sobolev-s", "sobolev_s", Kind::list, "Sobolev orders of the partial sums"},
       {"--slope-s", "slope_s", Kind::list, "Sobolev orders of the scaling fit"},
       {"--lower-bound-t", "lower_bound_t", Kind::number, "t of the closed-form scan"}}}},
    {"theorem3-bump", "bump counterexample at several x0",
     {{{"--x0-values", "x0_values", Kind::list, "comma-separated x0 values"},
       {"--p-values", "p_values", Kind::list, "comma-separated exponents"},
       {"--n-x", "n_x", Kind::integer, "sample points per interval"},
       {"--n-t", "n_t", Kind::integer, "log-spaced time samples"},
       {"--t-min", "t_min", Kind::number, "smallest time"},
       {"--sobolev-s", "sobolev_s", Kind::number, "Sobolev order"}}}},
    {"theorem3-logtail", "log-tail counterexample at several v0",
     {{{"--v0-values", "v0_values", Kind::list, "comma-separated decreasing v0 values"},
       {"--x0", "x0", Kind::number, "target point"},
       {"--n-x", "n_x", Kind::integer, "sample points per interval"},
       {"--jitter", "jitter", Kind::number, "allowed relative drop of the minimum"},
       {"--band-factor", "band_factor", Kind::number, "allowed width of the ratio band"}}}},
};

struct Parsed {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> text;
  std::map<std::string, std::vector<double>> lists;
  std::map<std::string, bool> flags;
};

Json to_value(const OptionSpec& o, const std::string& s) {
  try {
    std::size_t used = 0;
    if (o.kind == Kind::integer) {
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } else if (o.kind == Kind::extended && (s == "inf" || s == "-inf")) {
      return s;
    } else if (o.kind == Kind::number || o.kind == Kind::extended) {
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } else {
      return s;
    }
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(o.flag, "cannot parse \"" + s + "\"");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

int exit_code(hsp_status s) { return hsp_status_is_input_error(s) ? 2 : 3; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite-Schroedinger propagator experiments"};
  app.set_version_flag("--version", std::string(hsp_version()));
  app.require_subcommand(1);

  bool check = false, no_csv = false;
  std::string output, csv_dir, config_file;
  std::vector<std::unique_ptr<Parsed>> parsed;
  for (const auto& cmd : kCommands) {
    auto p = std::make_unique<Parsed>();
    p->app = app.add_subcommand(cmd.name, cmd.help);
    auto* sub = p->app;
    for (const auto& group : cmd.groups) {
      for (const auto& o : group) {
        if (o.kind == Kind::flag) {
          sub->add_flag(o.flag, p->flags[o.key], o.help);
        } else if (o.kind == Kind::list) {
          sub->add_option(o.flag, p->lists[o.key], o.help)->delimiter(',')->type_name("LIST");
        } else {
          const char* type = o.kind == Kind::integer ? "INT"
                             : o.kind == Kind::text  ? "TEXT"
                                                     : "NUMBER";
          sub->add_option(o.flag, p->text[o.key], o.help)->type_name(type);
        }
      }
    }
    sub->add_option("--config", config_file, "JSON file with parameters; flags override it");
    sub->add_flag("--check", check, "exit 4 when a check fails");
    sub->add_option("--output", output,
                    "JSON summary path, - for stdout (default $HSP_OUTPUT_DIR/<name>.json)");
    sub->add_option("--csv-dir", csv_dir, "directory for CSV tables (default: next to the JSON)");
    sub->add_flag("--no-csv", no_csv, "do not write CSV tables");
    parsed.push_back(std::move(p));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::size_t which = 0;
  while (!parsed[which]->app->parsed()) ++which;
  const Subcommand& cmd = kCommands[which];
  const Parsed& p = *parsed[which];

  Json config = Json::object();
  try {
    if (!config_file.empty()) {
      config = Json::parse(slurp(config_file));
      if (!config.is_object()) throw std::runtime_error(config_file + ": expected a JSON object");
    }
    for (const auto& group : cmd.groups) {
      for (const auto& o : group) {
        if (p.app->count(o.flag) == 0) continue;
        if (o.kind == Kind::flag) config[o.key] = false;
        else if (o.kind == Kind::list) config[o.key] = p.lists.at(o.key);
        else config[o.key] = to_value(o, p.text.at(o.key));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  hsp_run* run = nullptr;
  const hsp_status st = hsp_run_experiment(cmd.name, config.dump().c_str(), &run);
  if (st != HSP_OK) {
    std::cerr << "error (" << hsp_status_name(st) << "): " << hsp_last_error() << "\n";
    return exit_code(st);
  }
  std::unique_ptr<hsp_run, decltype(&hsp_run_free)> guard(run, hsp_run_free);

  const char* env = std::getenv("HSP_OUTPUT_DIR");
  const fs::path out_dir = env && *env ? fs::path(env) : fs::path(".");
  const bool to_stdout = output == "-";
  const fs::path json_path = output.empty() ? out_dir / (std::string(cmd.name) + ".json")
                                            : fs::path(output);
  try {
    if (to_stdout) {
      std::cout << hsp_run_json(run);
    } else {
      write_file(json_path, hsp_run_json(run));
    }
    if (!no_csv) {
      fs::path dir = !csv_dir.empty() ? fs::path(csv_dir)
                     : to_stdout     ? out_dir
                                     : json_path.parent_path();
      for (std::size_t k = 0; k < hsp_run_table_count(run); ++k) {
        const std::string file =
            std::string(cmd.name) + "_" + hsp_run_table_name(run, k) + ".csv";
        write_file(dir / file, hsp_run_table_csv(run, k));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const Json summary = Json::parse(hsp_run_json(run));
  std::ostream& log = to_stdout ? std::cerr : std::cout;
  for (const auto& c : summary["checks"]) {
    log << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>()
        << ": " << c["value"].dump() << " " << c["relation"].get<std::string>() << " "
        << c["threshold"].dump() << "\n";
  }
  if (!to_stdout) log << "wrote " << json_path.string() << "\n";
  return check && !hsp_run_passed(run) ? 4 : 0;
}
