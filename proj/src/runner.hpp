#pragma once

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

namespace hsp::detail {

using Json = nlohmann::ordered_json;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// One finished experiment: the JSON summary and its tables.
struct RunOutput {
  Json summary;
  std::vector<Table> tables;
  bool passed = true;
};

/// Reads parameters from a JSON object, fills in defaults and records the
/// resolved value of each.  Every violation is a precondition error naming
/// the parameter.
class Params {
 public:
  explicit Params(const Json& input);

  double number(const std::string& key, double def);
  /// Like number() but also accepts the strings "inf" and "-inf".
  double extended(const std::string& key, double def);
  int integer(const std::string& key, int def);
  bool flag(const std::string& key, bool def);
  std::string choice(const std::string& key, const std::string& def,
                     std::initializer_list<const char*> options);
  std::vector<double> numbers(const std::string& key, std::vector<double> def);

  void expect(bool cond, const std::string& key, const std::string& what) const;
  /// Rejects keys that no reader consumed.
  void finish() const;
  const Json& resolved() const noexcept { return resolved_; }

 private:
  const Json* find(const std::string& key);

  Json input_;
  Json resolved_ = Json::object();
  std::vector<std::string> used_;
};

/// Collects results, checks and tables for one run.
class Report {
 public:
  Report(std::string experiment, Json config);

  Json& results() noexcept { return results_; }
  void check_at_most(const std::string& name, double value, double threshold);
  void check_at_least(const std::string& name, double value, double threshold);
  void check_true(const std::string& name, bool value);
  Table& table(std::string name, std::vector<std::string> columns);
  RunOutput finish();

 private:
  void add_check(const std::string& name, bool passed, const Json& value,
                 const Json& threshold, const char* relation);

  std::string experiment_;
  Json config_;
  Json results_ = Json::object();
  Json checks_ = Json::array();
  std::vector<Table> tables_;
  bool passed_ = true;
};

/// Finite doubles as numbers, others as "inf", "-inf" or "nan".
Json number_json(double x);

std::string to_csv(const Table& table);

const std::vector<std::string>& experiment_names();
RunOutput run_experiment(const std::string& name, const Json& config);

using Experiment = std::function<RunOutput(Params&)>;

RunOutput run_propagate(Params& p);
RunOutput run_verify_transfer(Params& p);
RunOutput run_strichartz(Params& p);
RunOutput run_oscillatory(Params& p);
RunOutput run_maximal(Params& p);
RunOutput run_local_l1(Params& p);
RunOutput run_divergence(Params& p);
RunOutput run_theorem3_bump(Params& p);
RunOutput run_theorem3_logtail(Params& p);

}  // namespace hsp::detail

#include <cstdint>

#include "hsp/grid.hpp"

namespace hsp::detail {

/// Test datum selected by the "initial" parameter.
struct InitialSpec {
  std::string kind;  // gaussian, hermite or random
  int n = 0;
  int n_band = 12;
  std::uint64_t seed = 1;
};

Grid read_grid(Params& p);
InitialSpec read_initial(Params& p, const Grid& grid, const std::string& def);
GridFunction build_initial(const InitialSpec& spec, const Grid& grid);
std::uint64_t read_seed(Params& p);

}  // namespace hsp::detail
