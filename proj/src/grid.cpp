#include "ymh/grid.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

#include "ymh/parallel.hpp"

namespace ymh {

TorusGrid::TorusGrid(int n_, int points, double side)
    : n(n_), points_per_axis(points), side_length(side) {
  if (n < 1 || n > 2) throw std::invalid_argument("TorusGrid: n must be 1 or 2");
  if (points < 4 || points % 2 != 0)
    throw std::invalid_argument("TorusGrid: points_per_axis must be even and >= 4");
  if (!(side > 0.0)) throw std::invalid_argument("TorusGrid: side_length must be positive");
}

double TorusGrid::cell_volume() const {
  double v = 1.0;
  for (int k = 0; k < axes(); ++k) v *= spacing();
  return v;
}

std::size_t TorusGrid::sites() const {
  std::size_t s = 1;
  for (int k = 0; k < axes(); ++k) s *= static_cast<std::size_t>(points_per_axis);
  return s;
}

std::size_t TorusGrid::axis_stride(int axis) const {
  std::size_t s = 1;
  for (int k = 0; k < axis; ++k) s *= static_cast<std::size_t>(points_per_axis);
  return s;
}

std::size_t TorusGrid::shift(std::size_t site, int axis, int step) const {
  if (axis < 0 || axis >= axes()) throw std::out_of_range("TorusGrid::shift: axis");
  const std::size_t stride = axis_stride(axis);
  const int N = points_per_axis;
  const int j = static_cast<int>((site / stride) % static_cast<std::size_t>(N));
  int jn = (j + step) % N;
  if (jn < 0) jn += N;
  return site + (static_cast<std::size_t>(jn) - static_cast<std::size_t>(j)) * stride;
}

int TorusGrid::lattice_index(std::size_t site, int axis) const {
  return static_cast<int>((site / axis_stride(axis)) %
                          static_cast<std::size_t>(points_per_axis));
}

double TorusGrid::coord(std::size_t site, int axis) const {
  return lattice_index(site, axis) * spacing();
}

// ---- thread cap -----------------------------------------------------------

namespace {
std::atomic<int> g_thread_cap{-1};

int read_env_cap() {
  const char* env = std::getenv("YMH_THREADS");
  if (!env) return 0;
  const int v = std::atoi(env);
  return v > 0 ? v : 0;
}
}  // namespace

int thread_cap() {
  int v = g_thread_cap.load(std::memory_order_relaxed);
  if (v < 0) {
    v = read_env_cap();
    g_thread_cap.store(v, std::memory_order_relaxed);
  }
  return v;
}

void set_thread_cap(int threads) {
  g_thread_cap.store(threads < 0 ? -1 : threads, std::memory_order_relaxed);
}

// ---- small dense determinant ---------------------------------------------

cplx mat_det(int r, const cplx* a) {
  if (r == 1) return a[0];
  if (r == 2) return a[0] * a[3] - a[1] * a[2];
  std::vector<cplx> m(a, a + static_cast<std::size_t>(r) * r);
  cplx det(1.0, 0.0);
  for (int col = 0; col < r; ++col) {
    int piv = col;
    for (int i = col + 1; i < r; ++i)
      if (std::abs(m[i * r + col]) > std::abs(m[piv * r + col])) piv = i;
    if (m[piv * r + col] == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
    if (piv != col) {
      for (int j = 0; j < r; ++j) std::swap(m[piv * r + j], m[col * r + j]);
      det = -det;
    }
    det *= m[col * r + col];
    for (int i = col + 1; i < r; ++i) {
      const cplx f = m[i * r + col] / m[col * r + col];
      for (int j = col; j < r; ++j) m[i * r + j] -= f * m[col * r + j];
    }
  }
  return det;
}

}  // namespace ymh
