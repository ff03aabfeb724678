#include "hsp/hsp.h"

#include <cmath>
#include <exception>
#include <memory>
#include <string>
#include <vector>

#include "hsp/error.hpp"
#include "hsp/experiments.hpp"
#include "hsp/hermite_basis.hpp"
#include "hsp/oscillatory.hpp"
#include "hsp/propagators.hpp"
#include "runner.hpp"

struct hsp_function {
  hsp::GridFunction f;
};

struct hsp_run {
  std::string json;
  bool passed = false;
  std::vector<std::string> names;
  std::vector<std::string> csv;
};

namespace {

thread_local std::string last_error;

hsp_status status_of(hsp::ErrorKind k) {
  switch (k) {
    case hsp::ErrorKind::precondition: return HSP_ERR_PRECONDITION;
    case hsp::ErrorKind::domain: return HSP_ERR_DOMAIN;
    case hsp::ErrorKind::resolution: return HSP_ERR_RESOLUTION;
    case hsp::ErrorKind::singularity: return HSP_ERR_SINGULARITY;
    case hsp::ErrorKind::tail_leak: return HSP_ERR_TAIL_LEAK;
    case hsp::ErrorKind::truncation: return HSP_ERR_TRUNCATION;
    case hsp::ErrorKind::convergence: return HSP_ERR_CONVERGENCE;
    case hsp::ErrorKind::search_failure: return HSP_ERR_SEARCH_FAILURE;
    case hsp::ErrorKind::undefined_ratio: return HSP_ERR_UNDEFINED_RATIO;
  }
  return HSP_ERR_INTERNAL;
}

template <class Fn>
hsp_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return HSP_OK;
  } catch (const hsp::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("config: ") + e.what();
    return HSP_ERR_CONFIG;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HSP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return HSP_ERR_INTERNAL;
  }
}

void require_ptr(const void* p, const char* what) {
  hsp::require(p != nullptr, std::string(what) + " must not be NULL");
}

hsp_status wrap(hsp::GridFunction g, hsp_function** out) {
  *out = new hsp_function{std::move(g)};
  return HSP_OK;
}

}  // namespace

extern "C" {

const char* hsp_version(void) { return HSP_VERSION; }

const char* hsp_status_name(hsp_status s) {
  switch (s) {
    case HSP_OK: return "ok";
    case HSP_ERR_PRECONDITION: return "precondition";
    case HSP_ERR_DOMAIN: return "domain";
    case HSP_ERR_RESOLUTION: return "resolution";
    case HSP_ERR_SINGULARITY: return "singularity";
    case HSP_ERR_TAIL_LEAK: return "tail_leak";
    case HSP_ERR_TRUNCATION: return "truncation";
    case HSP_ERR_CONVERGENCE: return "convergence";
    case HSP_ERR_SEARCH_FAILURE: return "search_failure";
    case HSP_ERR_UNDEFINED_RATIO: return "undefined_ratio";
    case HSP_ERR_CONFIG: return "config";
    case HSP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* hsp_last_error(void) { return last_error.c_str(); }

int hsp_status_is_input_error(hsp_status s) {
  return s == HSP_ERR_PRECONDITION || s == HSP_ERR_DOMAIN || s == HSP_ERR_CONFIG;
}

hsp_status hsp_function_create(double half_extent, size_t n_points,
                               const double* re, const double* im,
                               hsp_function** out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = nullptr;
    hsp::GridFunction g{hsp::Grid(half_extent, n_points)};
    for (size_t k = 0; k < n_points; ++k)
      g.values[k] = {re ? re[k] : 0.0, im ? im[k] : 0.0};
    g.validate();
    wrap(std::move(g), out);
  });
}

hsp_status hsp_function_hermite(int n, double half_extent, size_t n_points,
                                hsp_function** out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = nullptr;
    hsp::require(n >= 0, "Hermite order must be nonnegative");
    wrap(hsp::sample_hermite(n, hsp::Grid(half_extent, n_points)), out);
  });
}

void hsp_function_free(hsp_function* f) { delete f; }

size_t hsp_function_size(const hsp_function* f) { return f ? f->f.size() : 0; }

double hsp_function_half_extent(const hsp_function* f) {
  return f ? f->f.grid.half_extent() : 0.0;
}

hsp_status hsp_function_values(const hsp_function* f, double* re, double* im) {
  return guarded([&] {
    require_ptr(f, "f");
    for (size_t k = 0; k < f->f.size(); ++k) {
      if (re) re[k] = f->f.values[k].real();
      if (im) im[k] = f->f.values[k].imag();
    }
  });
}

hsp_status hsp_propagate_mehler(const hsp_function* f, double t, hsp_function** out) {
  return guarded([&] {
    require_ptr(f, "f");
    require_ptr(out, "out");
    *out = nullptr;
    wrap(hsp::propagate_mehler(f->f, t), out);
  });
}

hsp_status hsp_propagate_spectral(const hsp_function* f, double t, hsp_function** out) {
  return guarded([&] {
    require_ptr(f, "f");
    require_ptr(out, "out");
    *out = nullptr;
    const auto c = hsp::analyze(f->f, hsp::max_supported_order(f->f.grid));
    wrap(hsp::synthesize(hsp::propagate_spectral(c, t), f->f.grid), out);
  });
}

hsp_status hsp_hermite_via_free(const hsp_function* f, double v, hsp_function** out) {
  return guarded([&] {
    require_ptr(f, "f");
    require_ptr(out, "out");
    *out = nullptr;
    wrap(hsp::hermite_via_free(f->f, v), out);
  });
}

hsp_status hsp_sobolev_norm(const hsp_function* f, double s, double* out) {
  return guarded([&] {
    require_ptr(f, "f");
    require_ptr(out, "out");
    *out = hsp::sobolev_norm_fourier(f->f, s);
  });
}

hsp_status hsp_osc_integral(double a, double b, double lo, double hi, double* re,
                            double* im) {
  return guarded([&] {
    hsp::require(!std::isnan(lo) && !std::isnan(hi) && lo <= hi,
                 "osc_integral: need lo <= hi");
    const hsp::cplx v = hsp::osc_integral({a, b, {lo, hi}});
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

hsp_status hsp_selector_v(double x, double t, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = hsp::selector_v(x, t);
  });
}

const char* const* hsp_experiment_names(void) {
  static const std::vector<const char*> names = [] {
    std::vector<const char*> v;
    for (const auto& n : hsp::detail::experiment_names()) v.push_back(n.c_str());
    v.push_back(nullptr);
    return v;
  }();
  return names.data();
}

hsp_status hsp_run_experiment(const char* name, const char* config_json,
                              hsp_run** out) {
  return guarded([&] {
    require_ptr(name, "name");
    require_ptr(out, "out");
    *out = nullptr;
    const auto config = (config_json && *config_json)
                            ? hsp::detail::Json::parse(config_json)
                            : hsp::detail::Json::object();
    auto result = hsp::detail::run_experiment(name, config);
    auto run = std::make_unique<hsp_run>();
    run->json = result.summary.dump(2) + "\n";
    run->passed = result.passed;
    for (const auto& t : result.tables) {
      run->names.push_back(t.name);
      run->csv.push_back(hsp::detail::to_csv(t));
    }
    *out = run.release();
  });
}

void hsp_run_free(hsp_run* run) { delete run; }

const char* hsp_run_json(const hsp_run* run) { return run ? run->json.c_str() : ""; }

int hsp_run_passed(const hsp_run* run) { return run && run->passed ? 1 : 0; }

size_t hsp_run_table_count(const hsp_run* run) { return run ? run->names.size() : 0; }

const char* hsp_run_table_name(const hsp_run* run, size_t i) {
  return run && i < run->names.size() ? run->names[i].c_str() : nullptr;
}

const char* hsp_run_table_csv(const hsp_run* run, size_t i) {
  return run && i < run->csv.size() ? run->csv[i].c_str() : nullptr;
}

}  // extern "C"
