#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "hsp/error.hpp"

#ifndef HSP_VERSION
#define HSP_VERSION "0.0.0"
#endif

namespace hsp::detail {

namespace {

std::string quoted(const std::string& key) { return "config '" + key + "': "; }

double parse_extended(const Json& v, const std::string& key, bool allow_inf) {
  if (v.is_number()) return v.get<double>();
  if (allow_inf && v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
  }
  fail(ErrorKind::precondition,
       quoted(key) + "expected a number" + (allow_inf ? " or \"inf\"" : "") +
           ", got " + v.dump());
}

}  // namespace

Json number_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Params::Params(const Json& input) : input_(input.is_null() ? Json::object() : input) {
  require(input_.is_object(), "config must be a JSON object");
}

const Json* Params::find(const std::string& key) {
  used_.push_back(key);
  auto it = input_.find(key);
  return it == input_.end() ? nullptr : &*it;
}

double Params::number(const std::string& key, double def) {
  const Json* v = find(key);
  const double x = v ? parse_extended(*v, key, false) : def;
  expect(std::isfinite(x), key, "must be finite");
  resolved_[key] = x;
  return x;
}

double Params::extended(const std::string& key, double def) {
  const Json* v = find(key);
  const double x = v ? parse_extended(*v, key, true) : def;
  expect(!std::isnan(x), key, "must not be NaN");
  resolved_[key] = number_json(x);
  return x;
}

int Params::integer(const std::string& key, int def) {
  const Json* v = find(key);
  int n = def;
  if (v) {
    expect(v->is_number_integer(), key, "expected an integer, got " + v->dump());
    const auto wide = v->get<long long>();
    expect(wide >= -1000000000LL && wide <= 1000000000LL, key, "out of range");
    n = static_cast<int>(wide);
  }
  resolved_[key] = n;
  return n;
}

bool Params::flag(const std::string& key, bool def) {
  const Json* v = find(key);
  bool b = def;
  if (v) {
    expect(v->is_boolean(), key, "expected true or false, got " + v->dump());
    b = v->get<bool>();
  }
  resolved_[key] = b;
  return b;
}

std::string Params::choice(const std::string& key, const std::string& def,
                           std::initializer_list<const char*> options) {
  const Json* v = find(key);
  std::string s = def;
  if (v) {
    expect(v->is_string(), key, "expected a string, got " + v->dump());
    s = v->get<std::string>();
  }
  std::string list;
  for (const char* o : options) {
    if (s == o) {
      resolved_[key] = s;
      return s;
    }
    list += std::string(list.empty() ? "" : ", ") + o;
  }
  fail(ErrorKind::precondition,
       quoted(key) + "must be one of {" + list + "}, got \"" + s + "\"");
}

std::vector<double> Params::numbers(const std::string& key,
                                    std::vector<double> def) {
  const Json* v = find(key);
  if (v) {
    expect(v->is_array() && !v->empty(), key, "expected a non-empty array");
    def.clear();
    for (const auto& e : *v) {
      const double x = parse_extended(e, key, false);
      expect(std::isfinite(x), key, "entries must be finite");
      def.push_back(x);
    }
  }
  expect(!def.empty(), key, "must not be empty");
  resolved_[key] = def;
  return def;
}

void Params::expect(bool cond, const std::string& key,
                    const std::string& what) const {
  if (!cond) fail(ErrorKind::precondition, quoted(key) + what);
}

void Params::finish() const {
  for (const auto& [key, value] : input_.items()) {
    if (std::find(used_.begin(), used_.end(), key) == used_.end())
      fail(ErrorKind::precondition, quoted(key) + "unknown parameter");
  }
}

Report::Report(std::string experiment, Json config)
    : experiment_(std::move(experiment)), config_(std::move(config)) {}

void Report::add_check(const std::string& name, bool passed, const Json& value,
                       const Json& threshold, const char* relation) {
  Json c = Json::object();
  c["name"] = name;
  c["passed"] = passed;
  c["value"] = value;
  c["relation"] = relation;
  c["threshold"] = threshold;
  checks_.push_back(std::move(c));
  passed_ = passed_ && passed;
}

void Report::check_at_most(const std::string& name, double value, double threshold) {
  add_check(name, value <= threshold, number_json(value), number_json(threshold), "<=");
}

void Report::check_at_least(const std::string& name, double value, double threshold) {
  add_check(name, value >= threshold, number_json(value), number_json(threshold), ">=");
}

void Report::check_true(const std::string& name, bool value) {
  add_check(name, value, value, true, "==");
}

Table& Report::table(std::string name, std::vector<std::string> columns) {
  tables_.push_back({std::move(name), std::move(columns), {}});
  return tables_.back();
}

RunOutput Report::finish() {
  RunOutput out;
  out.summary["experiment"] = experiment_;
  out.summary["version"] = HSP_VERSION;
  out.summary["config"] = config_;
  out.summary["results"] = results_;
  Json tables = Json::object();
  for (const auto& t : tables_) {
    tables[t.name]["columns"] = t.columns;
    tables[t.name]["rows"] = t.rows.size();
  }
  out.summary["tables"] = tables;
  out.summary["checks"] = checks_;
  out.summary["passed"] = passed_;
  out.tables = std::move(tables_);
  out.passed = passed_;
  return out;
}

std::string to_csv(const Table& table) {
  std::string s;
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    s += (j ? "," : "") + table.columns[j];
  s += '\n';
  char buf[32];
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", row[j]);
      s += (j ? "," : "");
      s += buf;
    }
    s += '\n';
  }
  return s;
}

namespace {

const std::map<std::string, Experiment>& registry() {
  static const std::map<std::string, Experiment> r{
      {"propagate", run_propagate},
      {"verify-transfer", run_verify_transfer},
      {"strichartz", run_strichartz},
      {"oscillatory", run_oscillatory},
      {"maximal", run_maximal},
      {"local-l1", run_local_l1},
      {"divergence", run_divergence},
      {"theorem3-bump", run_theorem3_bump},
      {"theorem3-logtail", run_theorem3_logtail},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "propagate", "verify-transfer", "strichartz",
      "oscillatory", "maximal", "local-l1",
      "divergence", "theorem3-bump", "theorem3-logtail"};
  return names;
}

RunOutput run_experiment(const std::string& name, const Json& config) {
  const auto& r = registry();
  const auto it = r.find(name);
  require(it != r.end(), "unknown experiment \"" + name + "\"");
  Params params(config);
  return it->second(params);
}

}  // namespace hsp::detail
