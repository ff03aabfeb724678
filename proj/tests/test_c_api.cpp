#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "hsp/hsp.h"
#include "json.hpp"

TEST_CASE("version and status names") {
  CHECK(std::string(hsp_version()) == "0.1.0");
  CHECK(std::string(hsp_status_name(HSP_ERR_RESOLUTION)) == "resolution");
  CHECK(hsp_status_is_input_error(HSP_ERR_DOMAIN));
  CHECK_FALSE(hsp_status_is_input_error(HSP_ERR_TRUNCATION));
  int n = 0;
  for (const char* const* p = hsp_experiment_names(); *p; ++p) ++n;
  CHECK(n == 9);
}

TEST_CASE("function handles and propagation") {
  hsp_function* h = nullptr;
  REQUIRE(hsp_function_hermite(3, 12.0, 512, &h) == HSP_OK);
  REQUIRE(hsp_function_size(h) == 512);
  CHECK(hsp_function_half_extent(h) == 12.0);

  hsp_function* a = nullptr;
  hsp_function* b = nullptr;
  REQUIRE(hsp_propagate_spectral(h, 0.4, &a) == HSP_OK);
  REQUIRE(hsp_hermite_via_free(h, std::tan(0.8), &b) == HSP_OK);
  std::vector<double> h_re(512), a_re(512), a_im(512), b_re(512), b_im(512);
  hsp_function_values(h, h_re.data(), nullptr);
  hsp_function_values(a, a_re.data(), a_im.data());
  hsp_function_values(b, b_re.data(), b_im.data());
  double err = 0.0, diff = 0.0;
  for (std::size_t k = 0; k < 512; ++k) {
    err = std::max(err, std::abs(a_re[k] - std::cos(7 * 0.4) * h_re[k]));
    err = std::max(err, std::abs(a_im[k] + std::sin(7 * 0.4) * h_re[k]));
    diff = std::max(diff, std::hypot(a_re[k] - b_re[k], a_im[k] - b_im[k]));
  }
  CHECK(err < 1e-10);
  CHECK(diff < 1e-8);

  double s = 0.0;
  REQUIRE(hsp_sobolev_norm(h, 0.0, &s) == HSP_OK);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  hsp_function_free(a);
  hsp_function_free(b);
  hsp_function_free(h);
  hsp_function_free(nullptr);
}

TEST_CASE("errors are reported through status and message") {
  hsp_function* f = nullptr;
  CHECK(hsp_function_create(1.0, 1, nullptr, nullptr, &f) == HSP_ERR_PRECONDITION);
  CHECK(f == nullptr);
  CHECK(std::string(hsp_last_error()).find("n_points") != std::string::npos);
  double v = 0.0;
  CHECK(hsp_selector_v(2.0, 1.0, &v) == HSP_ERR_DOMAIN);
  CHECK(hsp_selector_v(1.0, 1.0, &v) == HSP_OK);
  CHECK(std::string(hsp_last_error()).empty());
  CHECK(v == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(hsp_propagate_mehler(nullptr, 0.1, &f) == HSP_ERR_PRECONDITION);
}

TEST_CASE("oscillatory integral") {
  double re = 0.0, im = 0.0;
  REQUIRE(hsp_osc_integral(0.0, 1.0, -INFINITY, INFINITY, &re, &im) == HSP_OK);
  CHECK(std::hypot(re, im) == doctest::Approx(std::tgamma(0.25)).epsilon(1e-10));
  CHECK(hsp_osc_integral(1.0, 1.0, 2.0, 1.0, &re, &im) == HSP_ERR_PRECONDITION);
}

TEST_CASE("experiment runner") {
  hsp_run* run = nullptr;
  REQUIRE(hsp_run_experiment("theorem3-logtail", "{\"v0_values\": [1e-3, 1e-4]}", &run) ==
          HSP_OK);
  CHECK(hsp_run_passed(run) == 1);
  const auto j = nlohmann::json::parse(hsp_run_json(run));
  CHECK(j["experiment"] == "theorem3-logtail");
  CHECK(j["version"] == "0.1.0");
  CHECK(j["config"]["x0"] == 4.0);
  CHECK(j["config"]["v0_values"].size() == 2);
  CHECK(j["passed"] == true);
  REQUIRE(hsp_run_table_count(run) == 1);
  CHECK(std::string(hsp_run_table_name(run, 0)) == "logtail");
  const std::string csv = hsp_run_table_csv(run, 0);
  CHECK(csv.rfind("v0,interval_lo,interval_hi,min_value,ratio,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(hsp_run_table_csv(run, 1) == nullptr);
  hsp_run_free(run);

  run = nullptr;
  CHECK(hsp_run_experiment("nope", nullptr, &run) == HSP_ERR_PRECONDITION);
  CHECK(run == nullptr);
  CHECK(hsp_run_experiment("maximal", "{not json", &run) == HSP_ERR_CONFIG);
  CHECK(hsp_run_experiment("maximal", "{\"n_t\": 8}", &run) == HSP_ERR_PRECONDITION);
  CHECK(std::string(hsp_last_error()).find("'n_t'") != std::string::npos);
  CHECK(hsp_run_experiment("maximal", "{\"nt\": 64}", &run) == HSP_ERR_PRECONDITION);
  CHECK(hsp_run_experiment("strichartz", "{\"p\": 4, \"q\": 4}", &run) ==
        HSP_ERR_PRECONDITION);
  CHECK(std::string(hsp_last_error()).find("admissibility") != std::string::npos);
}

TEST_CASE("runs are deterministic") {
  const char* cfg = "{\"n_functions\": 2, \"n_t\": 32, \"seed\": 7}";
  hsp_run* a = nullptr;
  hsp_run* b = nullptr;
  REQUIRE(hsp_run_experiment("local-l1", cfg, &a) == HSP_OK);
  REQUIRE(hsp_run_experiment("local-l1", cfg, &b) == HSP_OK);
  CHECK(std::string(hsp_run_json(a)) == std::string(hsp_run_json(b)));
  CHECK(std::string(hsp_run_table_csv(a, 0)) == std::string(hsp_run_table_csv(b, 0)));
  hsp_run_free(a);
  hsp_run_free(b);
}
