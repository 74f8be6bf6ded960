#include <cmath>
#include <numbers>

#include "ymh/form.hpp"
#include "ymh/parallel.hpp"

namespace ymh {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform in [-1, 1), bit-reproducible for a given key.
double key_uniform(std::uint64_t key) {
  const std::uint64_t bits = splitmix64(key) >> 11;  // 53 bits
  return static_cast<double>(bits) * (2.0 / 9007199254740992.0) - 1.0;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (b * 0xd1342543de82ef95ULL));
}

struct Mode {
  int k[4] = {0, 0, 0, 0};
};

std::vector<Mode> enumerate_modes(int axes, int k_max) {
  std::vector<Mode> modes;
  const int width = 2 * k_max + 1;
  int total = 1;
  for (int d = 0; d < axes; ++d) total *= width;
  modes.reserve(total);
  for (int idx = 0; idx < total; ++idx) {
    Mode m;
    int rem = idx;
    for (int d = 0; d < axes; ++d) {
      m.k[d] = rem % width - k_max;
      rem /= width;
    }
    modes.push_back(m);
  }
  return modes;
}

/// Evaluate one real trig polynomial with per-mode coefficients drawn from
/// the stream keyed by `entry_key`, at every site.
void fill_trig(const TorusGrid& g, const std::vector<Mode>& modes,
               std::uint64_t entry_key, double scale, double* out) {
  const int axes = g.axes();
  const int N = g.points_per_axis;
  for_sites(g.sites(), [&](std::size_t s) {
    int j[4];
    for (int d = 0; d < axes; ++d) j[d] = g.lattice_index(s, d);
    double v = 0.0;
    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
      long long dot = 0;
      for (int d = 0; d < axes; ++d) dot += static_cast<long long>(modes[mi].k[d]) * j[d];
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(dot) / N;
      const double ac = key_uniform(mix(entry_key, 2 * mi));
      const double as = key_uniform(mix(entry_key, 2 * mi + 1));
      v += ac * std::cos(phase) + as * std::sin(phase);
    }
    out[s] = scale * v;
  });
}

}  // namespace

EndForm random_bandlimited(const TorusGrid& grid, int rank, int p, int q,
                           std::uint64_t seed, int k_max, double amplitude) {
  if (k_max < 0 || 2 * k_max >= grid.points_per_axis)
    throw std::invalid_argument("random_bandlimited: k_max too large for grid");
  EndForm out(grid, rank, p, q);
  const auto modes = enumerate_modes(grid.axes(), k_max);
  const double scale = amplitude / static_cast<double>(modes.size());
  std::vector<double> re(grid.sites()), im(grid.sites());
  for (int c = 0; c < out.num_components(); ++c) {
    for (int e = 0; e < rank * rank; ++e) {
      const std::uint64_t key =
          mix(mix(mix(seed, 0x1000 + c), 0x2000 + e), 0x3000);
      fill_trig(grid, modes, mix(key, 0), scale, re.data());
      fill_trig(grid, modes, mix(key, 1), scale, im.data());
      for_sites(grid.sites(), [&](std::size_t s) {
        out.at(c, s)[e] = cplx(re[s], im[s]);
      });
    }
  }
  return out;
}

std::vector<double> random_scalar_bandlimited(const TorusGrid& grid,
                                              std::uint64_t seed, int k_max,
                                              double amplitude) {
  if (k_max < 0 || 2 * k_max >= grid.points_per_axis)
    throw std::invalid_argument("random_scalar_bandlimited: k_max too large");
  const auto modes = enumerate_modes(grid.axes(), k_max);
  const double scale = amplitude / static_cast<double>(modes.size());
  std::vector<double> out(grid.sites());
  fill_trig(grid, modes, mix(seed, 0x4000), scale, out.data());
  return out;
}

}  // namespace ymh
