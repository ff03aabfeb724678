#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hsp/grid.hpp"

namespace hsp {

/// Coefficients c_n against the L2-normalized Hermite functions h_n,
/// with the sign convention h_0(x) = pi^{-1/4} exp(-x^2/2) > 0.
struct HermiteCoeffs {
  std::vector<cplx> coeffs;

  int n_max() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  double l2_norm() const;
};

/// Values of h_0..h_{n_max} on a grid, row-major (row n = h_n).
class HermiteTable {
 public:
  HermiteTable(int n_max, std::size_t n_points)
      : n_max_(n_max), n_points_(n_points),
        data_(static_cast<std::size_t>(n_max + 1) * n_points) {}

  int n_max() const noexcept { return n_max_; }
  std::size_t n_points() const noexcept { return n_points_; }
  std::span<const double> row(int n) const {
    return {data_.data() + static_cast<std::size_t>(n) * n_points_, n_points_};
  }
  std::span<double> row(int n) {
    return {data_.data() + static_cast<std::size_t>(n) * n_points_, n_points_};
  }

 private:
  int n_max_;
  std::size_t n_points_;
  std::vector<double> data_;
};

/// Throws a resolution error unless spacing < pi / sqrt(2 n_max + 1).
void check_hermite_resolution(const Grid& grid, int n_max);

/// Largest order that passes the resolution guard and whose turning point
/// sqrt(2n+1) stays inside 70% of the grid half extent.
int max_supported_order(const Grid& grid);

/// h_0..h_{n_max} at the grid points via the normalized three-term recurrence.
HermiteTable eval_hermite(int n_max, const Grid& grid);

/// h_0..h_{n_max} at a single point.
std::vector<double> eval_hermite_at(int n_max, double x);

GridFunction sample_hermite(int n, const Grid& grid);

HermiteCoeffs analyze(const GridFunction& f, int n_max);
GridFunction synthesize(const HermiteCoeffs& c, const Grid& grid);

/// sqrt((1/2pi) int (1+xi^2)^s |f^(xi)|^2 dxi), f^ under exp(-i x xi).
/// Throws tail_leak when f has not decayed at the grid ends.
double sobolev_norm_fourier(const GridFunction& f, double s);
/// Same norm for a function given by its transform samples.
double sobolev_norm_fourier(const FreqFunction& fhat, double s);

/// sqrt(sum (2n+1)^s |c_n|^2).
double sobolev_norm_hermite(const HermiteCoeffs& c, double s);

/// Random coefficients on h_0..h_{n_band}, normal entries, deterministic in
/// seed.  With real_valued the imaginary parts are zero.
HermiteCoeffs random_coefficients(int n_band, std::uint64_t seed,
                                  bool real_valued = false);

/// Relative tolerance on edge_ratio() above which a function is treated as
/// not decaying.
inline constexpr double kTailTolerance = 1e-6;

void check_decay(const GridFunction& f, const char* what);

}  // namespace hsp
