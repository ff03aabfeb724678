#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hsp {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform grid on [-half_extent, half_extent], endpoints included.
class Grid {
 public:
  Grid(double half_extent, std::size_t n_points);

  double half_extent() const noexcept { return half_extent_; }
  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return spacing_; }
  /// -half_extent + k*spacing, evaluated about the centre so that
  /// point(n-1-k) == -point(k) holds bitwise.
  double point(std::size_t k) const noexcept {
    return (static_cast<double>(k) - 0.5 * static_cast<double>(n_points_ - 1)) *
           spacing_;
  }
  std::vector<double> points() const;
  /// Composite trapezoid weights (spacing, halved at the endpoints).
  std::vector<double> trapezoid_weights() const;

  /// Same extent, 2n-1 points; every old point is a point of the new grid.
  Grid refined() const { return Grid(half_extent_, 2 * n_points_ - 1); }

  bool operator==(const Grid& other) const noexcept {
    return half_extent_ == other.half_extent_ && n_points_ == other.n_points_;
  }

 private:
  double half_extent_;
  std::size_t n_points_;
  double spacing_;
};

/// Default spatial grid: [-12, 12] with 2048 points.
Grid default_grid();

/// Complex samples of a function on a Grid.
struct GridFunction {
  Grid grid;
  std::vector<cplx> values;

  explicit GridFunction(Grid g);
  GridFunction(Grid g, std::vector<cplx> v);

  std::size_t size() const noexcept { return values.size(); }
  double max_abs() const;
  /// max(|f(first)|, |f(last)|) / max|f|, 0 for the zero function.
  double edge_ratio() const;
  /// Checks length and finiteness; throws on violation.
  void validate() const;
};

/// Samples of a Fourier transform on a uniform frequency grid.
struct FreqFunction {
  Grid freq_grid;
  std::vector<cplx> values;

  FreqFunction(Grid g, std::vector<cplx> v);
};

/// Trapezoid rule on a uniform grid with arbitrary real integrand samples.
double trapezoid(std::span<const double> values, double spacing);
cplx trapezoid(std::span<const cplx> values, double spacing);

}  // namespace hsp
