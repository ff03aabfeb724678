#include "hsp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsp/error.hpp"

namespace hsp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::domain: return "domain";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::tail_leak: return "tail_leak";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::search_failure: return "search_failure";
    case ErrorKind::undefined_ratio: return "undefined_ratio";
  }
  return "unknown";
}

Grid::Grid(double half_extent, std::size_t n_points)
    : half_extent_(half_extent), n_points_(n_points), spacing_(0.0) {
  require(std::isfinite(half_extent) && half_extent > 0.0,
          "grid half_extent must be positive and finite, got " +
              std::to_string(half_extent));
  require(n_points >= 2,
          "grid n_points must be at least 2, got " + std::to_string(n_points));
  spacing_ = 2.0 * half_extent_ / static_cast<double>(n_points_ - 1);
}

std::vector<double> Grid::points() const {
  std::vector<double> x(n_points_);
  for (std::size_t k = 0; k < n_points_; ++k) x[k] = point(k);
  return x;
}

std::vector<double> Grid::trapezoid_weights() const {
  std::vector<double> w(n_points_, spacing_);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

Grid default_grid() { return Grid(12.0, 2048); }

GridFunction::GridFunction(Grid g) : grid(g), values(g.size()) {}

GridFunction::GridFunction(Grid g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
  validate();
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const auto& z : values) m = std::max(m, std::abs(z));
  return m;
}

double GridFunction::edge_ratio() const {
  const double m = max_abs();
  if (m == 0.0) return 0.0;
  return std::max(std::abs(values.front()), std::abs(values.back())) / m;
}

void GridFunction::validate() const {
  require(values.size() == grid.size(),
          "grid function has " + std::to_string(values.size()) +
              " values but its grid has " + std::to_string(grid.size()) +
              " points");
  for (const auto& z : values) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()),
            "grid function contains a non-finite value");
  }
}

FreqFunction::FreqFunction(Grid g, std::vector<cplx> v)
    : freq_grid(g), values(std::move(v)) {
  require(values.size() == freq_grid.size(),
          "frequency function length does not match its grid");
  for (const auto& z : values) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()),
            "frequency function contains a non-finite value");
  }
}

double trapezoid(std::span<const double> values, double spacing) {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) s += values[k];
  return s * spacing;
}

cplx trapezoid(std::span<const cplx> values, double spacing) {
  if (values.size() < 2) return 0.0;
  cplx s = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) s += values[k];
  return s * spacing;
}

}  // namespace hsp
