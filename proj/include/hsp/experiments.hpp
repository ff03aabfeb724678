#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hsp/grid.hpp"
#include "hsp/hermite_basis.hpp"
#include "hsp/oscillatory.hpp"
#include "hsp/propagators.hpp"

namespace hsp {

/// Real profile with compact support [lo, hi], evaluable anywhere.
struct Profile {
  std::function<double(double)> value;
  double lo = 0.0;
  double hi = 0.0;
  std::string name;

  double operator()(double y) const {
    return (y <= lo || y >= hi) ? 0.0 : value(y);
  }
};

/// exp(-1/(1-u^2)) for |u| < 1, mapped affinely onto (lo, hi).
Profile bump_profile(double lo, double hi, double scale = 1.0);
/// Default base: the bump on (-2, -1).
Profile default_base_profile();
/// Bump on (-1, 1) scaled to unit integral.
Profile default_tau();

/// Integral of a profile by composite Gauss-Legendre.
double profile_integral(const Profile& f);

// -- maximal function --------------------------------------------------------

struct MaximalOptions {
  int n_t = 1024;      // log-spaced samples of t in [t_min, pi/8]
  double t_min = 1e-4;
};

/// max over the t-grid of |exp(-itH) f| at f's grid points, computed through
/// the free evolution with v = tan 2t.  Real values stored as complex.
GridFunction maximal_function(const GridFunction& f,
                              const MaximalOptions& opts = {});

/// Same at arbitrary points.
std::vector<double> maximal_function_at(const GridFunction& f,
                                        std::span<const double> x,
                                        const MaximalOptions& opts = {});

/// Same for a datum given by transform samples that resolve the free flow
/// up to time 1/2 at the points x sqrt 2.
std::vector<double> maximal_function_at(const FreqFunction& fhat,
                                        std::span<const double> x,
                                        const MaximalOptions& opts = {});

/// Sup-norm change of maximal_function when n_t is doubled.
double maximal_refinement(const GridFunction& f, const MaximalOptions& opts = {});

struct LocalL1Options {
  MaximalOptions maximal;
  double x_spacing = 0.0;  // 0: the grid spacing of f
};

/// int_I Mf dx / ||f||_{W^{1/4}}.
double local_l1_ratio(const GridFunction& f, const Interval& I,
                      const LocalL1Options& opts = {});

/// Random band-limited datum with unit W^{1/4} norm on the given grid.
GridFunction random_unit_w14(int n_band, std::uint64_t seed, const Grid& grid);

// -- divergence construction -------------------------------------------------

/// Grid for f_t: half extent 2.5 t (scaled by the base support), spacing
/// pi t^2 / 16 divided by the refinement factor.
Grid ft_grid(const Profile& base, double t, double refine = 1.0);

/// f(y/t) exp(2iy/t^2) on the grid; spacing must be below pi t^2 / 4.
GridFunction ft_family(const Profile& base, double t, const Grid& grid);

/// x t^2 / sqrt(4 - x^2 t^4); requires |x| t^2 <= 2 - 1e-9.
double selector_v(double x, double t);

/// int f(y) exp(i y^2 / z) dy.
cplx phi_map(const Profile& base, cplx z);

struct PhiScan {
  std::vector<double> z;
  std::vector<double> modulus;
  double max_modulus = 0.0;
  Interval I;         // largest dyadic subinterval of (1/2, 1) with |Phi| > max/2
  double min_on_I = 0.0;
  double epsilon = 0.1;
  Interval I_prime;   // I shrunk by 1e-4 at both ends
  double c = 0.0;     // lower constant for the propagated profile on I'
};

PhiScan scan_phi(const Profile& base, int n_samples = 512);

struct LowerBoundScan {
  std::vector<double> x;
  std::vector<double> direct;       // |L_{iv/2} f_t (x sqrt(1+v^2))| by propagation
  std::vector<double> closed_form;  // pi^{-1/2} (1+v^2)^{-1/4} x^{-1/2} |Phi(z)|
  double min_value = 0.0;
  double max_deviation = 0.0;
};

LowerBoundScan lower_bound_scan(const Profile& base, double t,
                                const Interval& I_prime, int n_x = 64);

/// e^{i s Laplacian} f_t at X by quadrature over the base support.
cplx ft_free_value(const Profile& base, double t, double s, double X);

struct DivergenceOptions {
  double t1 = 0.05;
  int max_halvings = 80;
  int n_x = 16;       // sample points in I'
  int n_v = 5;        // sample v in (v_k/2, 2 v_k) for condition checks
  std::vector<double> sobolev_s{0.1, 0.2};
};

struct DivergenceRow {
  int k = 0;
  double t = 0.0;
  int halvings = 0;
  double min_observed = 0.0;   // min over x of |L_{iv/2} phi_K| at v = v(x, t_k),
                               // less the bounds of terms too steep to integrate
  double predicted = 0.0;      // c k - sum_{j != k} j 2^{-j}
  double cond4_max = 0.0;      // largest sampled value entering condition (4)
  double cond5_bound = 0.0;    // kernel bound used for condition (5)
};

struct DivergenceReport {
  PhiScan scan;
  std::vector<DivergenceRow> rows;
  bool all_exceed = false;     // every observed value above its prediction
  bool monotone = false;       // min_observed increases with k
  std::vector<double> sobolev_s;
  std::vector<std::vector<double>> sobolev_partial;  // per s: sum_{j<=k} j ||f_{t_j}||
  std::vector<double> schedule_sum;                  // per s: sum_j j t_j^{1/2-2s}
  std::vector<double> sobolev_tail_ratio;            // per s: last increment / previous
};

DivergenceReport divergence_demo(const Profile& base, int K,
                                 const DivergenceOptions& opts = {});

/// Fitted slope of log ||f_t||_{W^s} against log t.
double ft_sobolev_slope(const Profile& base, double s,
                        std::span<const double> t_values);

// -- second counterexample ---------------------------------------------------

struct BumpOptions {
  std::vector<double> p_values{2.0, 4.0};
  int n_x = 256;
  MaximalOptions maximal{512, 1e-4};
  double sobolev_s = 0.25;
};

struct BumpReport {
  double x0 = 0.0;
  double min_real = 0.0;                 // min over I of Re int tau e^{-iv xi^2/2}
  double min_real_perturbed = 0.0;       // same with v scaled by 0.99 and 1.01
  std::vector<double> x;
  std::vector<double> maximal;           // lower bound for Mf on I
  std::vector<double> norms;             // ||Mf||_{L^p(I)} per p
  double sobolev = 0.0;
};

/// f with f^(xi) = 2 pi e^{-i x0 xi} tau(xi); everything evaluated from the
/// transform samples through the free flow.
BumpReport theorem3_bump(double x0, const Profile& tau,
                         const BumpOptions& opts = {});

/// log-log slope of the p-norm column across reports.
double fitted_growth(std::span<const BumpReport> reports, std::size_t p_index);

struct LogtailReport {
  double v0 = 0.0;
  double x0 = 4.0;
  Interval I;
  double min_value = 0.0;
  double ratio = 0.0;          // min_value / (log 1/v0)^{1/3}
  double sobolev_half = 0.0;   // ||f||_{W^{1/2}} with cut Xi and analytic tail
  double sobolev_half_doubled = 0.0;
};

/// xi^{-1} (log xi)^{-2/3} for xi > 2, blended smoothly to 0 below 1.5.
double logtail_tau(double xi);

LogtailReport theorem3_logtail(double v0, double x0 = 4.0, int n_x = 32);

// -- W^s_H versus W^s --------------------------------------------------------

struct SobolevComparison {
  double fourier = 0.0;
  double hermite = 0.0;
  double ratio = 0.0;
};

SobolevComparison compare_sobolev(const GridFunction& f, double s);

}  // namespace hsp
