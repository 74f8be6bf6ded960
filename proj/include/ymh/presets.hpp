#pragma once

#include "ymh/state.hpp"

namespace ymh {

// Canned initial data used by the CLI and the test batteries.  All presets are
// deterministic functions of their parameters.

/// a = 0, phi = 0 on the trivial rank-r bundle.
HitchinPairState preset_trivial(const TorusGrid& grid, int rank);

/// a = 0, phi = diag(c_1..c_r) dz^0.  Strong and degenerate when some c_i = 0
/// or the c_i collide only in pairs of opposite sign; always a Hitchin pair.
HitchinPairState preset_diagonal_higgs(const TorusGrid& grid,
                                       const std::vector<cplx>& diag);

/// Rank 2, a = 0, phi = c N dz^0 with N = [[0,1],[0,0]].
HitchinPairState preset_nilpotent(const TorusGrid& grid, double c);

/// Rank 2 pair obtained by gauge-transforming constant commuting diagonal
/// Higgs coefficients with g = Id + f E12, f a band-limited scalar.  The
/// holomorphy residual, phi ^ phi, and F^{0,2} are machine-exact zero on the
/// lattice at every resolution, so this is the spatially varying input of
/// choice for identities that only hold on such pairs.
HitchinPairState preset_holomorphic(const TorusGrid& grid, std::uint64_t seed,
                                    int k_max, double amplitude);

/// Band-limited pseudo-random (a, phi); bit-reproducible in the seed.
HitchinPairState preset_random(const TorusGrid& grid, int rank,
                               std::uint64_t seed, int k_max, double amplitude);

/// alpha01 = M dzbar^0, beta = P dz^0 with constant row-major r x r matrices.
DeformationPair deformation_constant(const TorusGrid& grid,
                                     const std::vector<cplx>& M,
                                     const std::vector<cplx>& P);

/// Band-limited pseudo-random deformation direction.
DeformationPair deformation_random(const TorusGrid& grid, int rank,
                                   std::uint64_t seed, int k_max,
                                   double amplitude);

/// Writes a constant matrix into component `comp` at every site.
void fill_constant(EndForm& f, int comp, const std::vector<cplx>& matrix);

}  // namespace ymh
