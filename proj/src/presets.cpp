#include "ymh/presets.hpp"

#include <stdexcept>

#include "ymh/parallel.hpp"

namespace ymh {

void fill_constant(EndForm& f, int comp, const std::vector<cplx>& matrix) {
  if (matrix.size() != f.block())
    throw std::invalid_argument("fill_constant: matrix size mismatch");
  for_sites(f.grid().sites(), [&](std::size_t site) {
    cplx* m = f.at(comp, site);
    for (std::size_t e = 0; e < f.block(); ++e) m[e] = matrix[e];
  });
}

HitchinPairState preset_trivial(const TorusGrid& grid, int rank) {
  return {EndForm(grid, rank, 0, 1), EndForm(grid, rank, 1, 0)};
}

HitchinPairState preset_diagonal_higgs(const TorusGrid& grid,
                                       const std::vector<cplx>& diag) {
  const int r = static_cast<int>(diag.size());
  if (r < 1) throw std::invalid_argument("preset_diagonal_higgs: empty diagonal");
  EndForm phi(grid, r, 1, 0);
  std::vector<cplx> m(static_cast<std::size_t>(r) * r, cplx(0.0, 0.0));
  for (int i = 0; i < r; ++i) m[static_cast<std::size_t>(i) * r + i] = diag[i];
  fill_constant(phi, 0, m);
  return {EndForm(grid, r, 0, 1), std::move(phi)};
}

HitchinPairState preset_nilpotent(const TorusGrid& grid, double c) {
  EndForm phi(grid, 2, 1, 0);
  fill_constant(phi, 0, {cplx(0.0, 0.0), cplx(c, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)});
  return {EndForm(grid, 2, 0, 1), std::move(phi)};
}

HitchinPairState preset_holomorphic(const TorusGrid& grid, std::uint64_t seed,
                                    int k_max, double amplitude) {
  // Gauge-transform constant commuting diagonals by g = Id + f E12 with a
  // band-limited scalar f.  Because E12 is nilpotent and the difference
  // stencils commute, the holomorphy residual, phi ^ phi, and F^{0,2} all
  // vanish identically on the lattice while the pair still varies in space.
  const EndForm f = random_bandlimited(grid, 1, 0, 0, seed, k_max, amplitude);
  EndForm a(grid, 2, 0, 1);
  for (int be = 0; be < grid.n; ++be) {
    const EndForm df = delbar(f, be);
    const int c = a.component_index(0, static_cast<std::uint8_t>(1u << be));
    for_sites(grid.sites(), [&](std::size_t site) {
      a.at(c, site)[1] = -df.at(0, site)[0];
    });
  }
  // phi_a = g diag(d1_a, d2_a) g^{-1} = diag(d1_a, d2_a) + f (d2_a - d1_a) E12
  static const double d1[2] = {0.7, -0.2}, d2[2] = {-0.3, 0.5};
  EndForm phi(grid, 2, 1, 0);
  for (int al = 0; al < grid.n; ++al) {
    const int c = phi.component_index(static_cast<std::uint8_t>(1u << al), 0);
    const cplx delta(d2[al] - d1[al], 0.0);
    for_sites(grid.sites(), [&](std::size_t site) {
      cplx* m = phi.at(c, site);
      m[0] = cplx(d1[al], 0.0);
      m[1] = delta * f.at(0, site)[0];
      m[3] = cplx(d2[al], 0.0);
    });
  }
  return {std::move(a), std::move(phi)};
}

HitchinPairState preset_random(const TorusGrid& grid, int rank,
                               std::uint64_t seed, int k_max, double amplitude) {
  return {random_bandlimited(grid, rank, 0, 1, seed, k_max, amplitude),
          random_bandlimited(grid, rank, 1, 0, seed ^ 0x9e3779b97f4a7c15ULL,
                             k_max, amplitude)};
}

DeformationPair deformation_constant(const TorusGrid& grid,
                                     const std::vector<cplx>& M,
                                     const std::vector<cplx>& P) {
  if (M.size() != P.size() || M.empty())
    throw std::invalid_argument("deformation_constant: M and P must be equal-size square matrices");
  int r = 1;
  while (static_cast<std::size_t>(r) * r < M.size()) ++r;
  if (static_cast<std::size_t>(r) * r != M.size())
    throw std::invalid_argument("deformation_constant: matrix size is not a square");
  EndForm alpha01(grid, r, 0, 1);
  EndForm beta(grid, r, 1, 0);
  fill_constant(alpha01, 0, M);
  fill_constant(beta, 0, P);
  return {std::move(alpha01), std::move(beta)};
}

DeformationPair deformation_random(const TorusGrid& grid, int rank,
                                   std::uint64_t seed, int k_max,
                                   double amplitude) {
  return {random_bandlimited(grid, rank, 0, 1, seed, k_max, amplitude),
          random_bandlimited(grid, rank, 1, 0, seed ^ 0xd1342543de82ef95ULL,
                             k_max, amplitude)};
}

}  // namespace ymh
