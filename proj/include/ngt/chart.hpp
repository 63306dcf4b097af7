#pragma once
#include <array>
#include <cstddef>
#include <vector>

#include "ngt/error.hpp"
#include "ngt/jet.hpp"

namespace ngt {

inline constexpr std::size_t GRID_CAP = 1000000;

// Flat torus chart: coordinates live on [0, period_k) with the same
// resolution along every axis. Grid points are uniform left endpoints,
// which makes the product trapezoidal rule exact to machine precision
// for smooth periodic integrands resolved by the grid.
struct TorusChart {
  int dim = 0;
  std::array<double, MAXDIM> periods{};
  int resolution = 0;

  std::size_t npoints() const {
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(resolution);
    return n;
  }

  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= periods[static_cast<std::size_t>(i)] / resolution;
    return v;
  }

  // Row-major decoding: the last coordinate varies fastest.
  void point(std::size_t flat, double* x) const {
    for (int i = dim - 1; i >= 0; --i) {
      std::size_t r = static_cast<std::size_t>(resolution);
      std::size_t idx = flat % r;
      flat /= r;
      x[i] = periods[static_cast<std::size_t>(i)] * static_cast<double>(idx) / resolution;
    }
  }

  void validate() const {
    if (dim < 1 || dim > MAXDIM) throw NgtError("chart dimension must be between 1 and 4");
    if (resolution < 2) throw NgtError("grid resolution must be at least 2");
    for (int i = 0; i < dim; ++i)
      if (!(periods[static_cast<std::size_t>(i)] > 0.0))
        throw NgtError("chart periods must be positive");
    if (npoints() > GRID_CAP) throw NgtError("grid exceeds the 10^6 point cap");
  }
};

// Deterministic compensated reduction: fixed pairwise tree, independent of
// summand magnitudes.
inline double pairwise_sum(const double* a, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(a, half) + pairwise_sum(a + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& a) { return pairwise_sum(a.data(), a.size()); }

// Integral of a sampled scalar (values must already include the metric
// volume density).
inline double integrate_samples(const std::vector<double>& vals, const TorusChart& chart) {
  return pairwise_sum(vals) * chart.cell_volume();
}

// Up to cap indices out of [0, total), evenly strided from zero.
inline std::vector<std::size_t> stride_sample(std::size_t total, std::size_t cap) {
  std::vector<std::size_t> out;
  if (total == 0 || cap == 0) return out;
  std::size_t step = (total + cap - 1) / cap;
  for (std::size_t i = 0; i < total; i += step) out.push_back(i);
  return out;
}

}  // namespace ngt
