#include "spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace hsp::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Owns a forward plan and its buffer; the FFTW planner is not reentrant.
class ForwardPlan {
 public:
  explicit ForwardPlan(std::size_t n) : n_(n) {
    buf_ = fftw_alloc_complex(n_);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n_), buf_, buf_, FFTW_FORWARD,
                             FFTW_ESTIMATE);
  }
  ~ForwardPlan() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(buf_);
  }
  ForwardPlan(const ForwardPlan&) = delete;
  ForwardPlan& operator=(const ForwardPlan&) = delete;

  cplx* data() { return reinterpret_cast<cplx*>(buf_); }
  void execute() { fftw_execute(plan_); }

 private:
  std::size_t n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace

SampledSpectrum sampled_spectrum(const GridFunction& f, std::size_t pad) {
  const Grid& g = f.grid;
  const std::size_t n = g.size();
  const std::size_t m_total = pad * n;
  const double h = g.spacing();
  const auto w = g.trapezoid_weights();

  ForwardPlan plan(m_total);
  cplx* buf = plan.data();
  for (std::size_t k = 0; k < m_total; ++k) buf[k] = 0.0;
  for (std::size_t k = 0; k < n; ++k) buf[k] = w[k] * f.values[k];
  plan.execute();

  SampledSpectrum out;
  out.dxi = 2.0 * kPi / (static_cast<double>(m_total) * h);
  const std::size_t half = m_total / 2;
  out.xi0 = -static_cast<double>(half) * out.dxi;
  out.values.resize(m_total);
  const double x0 = g.point(0);
  // FFT index j carries frequency j*dxi (aliased to negative for j >= M - half)
  for (std::size_t m = 0; m < m_total; ++m) {
    const std::size_t j = (m + m_total - half) % m_total;
    const double xi = out.frequency(m);
    out.values[m] = buf[j] * std::polar(1.0, -x0 * xi);
  }
  return out;
}

}  // namespace hsp::detail
