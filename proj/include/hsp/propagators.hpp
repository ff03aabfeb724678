#pragma once

#include <span>
#include <vector>

#include "hsp/grid.hpp"
#include "hsp/hermite_basis.hpp"

namespace hsp {

/// Mehler kernel K_{it}(x, y) of exp(-itH) in dimension d = x.size().
/// The argument of (2 pi sin 2t)^{d/2} is floor(2t/pi) * pi d / 2, for
/// negative t as well.  Throws singularity when |sin 2t| <= 1e-12.
cplx mehler_kernel(double t, std::span<const double> x,
                   std::span<const double> y);
cplx mehler_kernel(double t, double x, double y);

/// c_n -> exp(-i(2n+1)t) c_n.
HermiteCoeffs propagate_spectral(const HermiteCoeffs& c, double t);

/// exp(-itH) f by trapezoid quadrature against the Mehler kernel.  Times
/// with |sin 2t| < 1e-3 are routed through the spectral path.
GridFunction propagate_mehler(const GridFunction& f, double t);

/// [-64, 64] with 4096 points.
Grid default_frequency_grid();

/// f^(xi) = int f(x) exp(-i x xi) dx by direct trapezoid sums.
FreqFunction fourier_forward(const GridFunction& f,
                             const Grid& freq_grid = default_frequency_grid());

enum class FreeRoute {
  automatic,
  frequency,  // (1/2pi) sum over xi of exp(i x xi - i t xi^2) f^(xi)
  kernel      // quadrature against the free Schrodinger kernel
};

/// Free Schrodinger evolution exp(it Laplacian) of one initial datum,
/// evaluated at arbitrary output points.  Immutable after construction;
/// evaluate() may be called concurrently.
class FreeEvolution {
 public:
  explicit FreeEvolution(const GridFunction& f);

  const GridFunction& initial() const noexcept { return f_; }
  double band_lo() const noexcept { return xi_lo_; }
  double band_hi() const noexcept { return xi_hi_; }
  /// Numerical support of the initial datum on its grid.
  double support_lo() const noexcept { return f_.grid.point(k_lo_); }
  double support_hi() const noexcept { return f_.grid.point(k_hi_); }
  bool is_zero() const noexcept { return zero_; }

  std::vector<cplx> evaluate(double t, std::span<const double> out_points,
                             FreeRoute route = FreeRoute::automatic) const;

  /// Route evaluate() would take in automatic mode; throws resolution when
  /// neither route resolves the requested evaluation.
  FreeRoute choose_route(double t, std::span<const double> out_points) const;

 private:
  struct Plan {
    bool feasible = false;
    double cost = 0.0;
    double dxi = 0.0;  // frequency route only
  };
  Plan frequency_plan(double t, std::span<const double> out) const;
  Plan kernel_plan(double t, std::span<const double> out) const;
  std::vector<cplx> eval_frequency(double t, std::span<const double> out,
                                   double dxi) const;
  std::vector<cplx> eval_kernel(double t, std::span<const double> out) const;

  GridFunction f_;
  std::size_t k_lo_ = 0, k_hi_ = 0;  // support indices, inclusive
  double xi_lo_ = 0.0, xi_hi_ = 0.0;
  bool zero_ = false;
};

std::vector<cplx> free_propagate(const GridFunction& f, double t,
                                 std::span<const double> out_points,
                                 FreeRoute route = FreeRoute::automatic);

/// Free evolution of a function given by transform samples; the caller is
/// responsible for the frequency grid resolving exp(i x xi - i t xi^2).
std::vector<cplx> free_propagate(const FreqFunction& fhat, double t,
                                 std::span<const double> out_points);

/// exp(-i (arctan v)/2 H) f on f's grid through the free evolution:
/// exp(-i v x^2 / 2) (1+v^2)^{1/4} [exp(i (v/2) Laplacian) f](x sqrt(1+v^2)).
GridFunction hermite_via_free(const GridFunction& f, double v);
GridFunction hermite_via_free(const FreeEvolution& evo, double v);
std::vector<cplx> hermite_via_free_at(const FreeEvolution& evo, double v,
                                      std::span<const double> x);
/// Transfer formula for a datum given by transform samples (v > 0).
std::vector<cplx> hermite_via_free_at(const FreqFunction& fhat, double v,
                                      std::span<const double> x);

}  // namespace hsp
