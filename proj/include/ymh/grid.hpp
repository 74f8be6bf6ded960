#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ymh/matrix.hpp"

namespace ymh {

/// Flat Kaehler torus C^n / (side Z + i side Z)^n, discretized with the same
/// even number of points on every real axis.  Real axis 2a is the x-direction
/// of complex axis a, real axis 2a+1 its y-direction.  Sites are indexed
/// row-major with axis 0 as the fastest stride.
struct TorusGrid {
  int n = 1;
  int points_per_axis = 16;
  double side_length = 1.0;

  TorusGrid() = default;
  TorusGrid(int n_, int points, double side = 1.0);

  int axes() const { return 2 * n; }
  double spacing() const { return side_length / points_per_axis; }
  double cell_volume() const;
  std::size_t sites() const;

  std::size_t axis_stride(int axis) const;
  /// Periodic neighbor `step` lattice units along a real axis.
  std::size_t shift(std::size_t site, int axis, int step) const;
  /// Coordinate of a site along a real axis, in [0, side).
  double coord(std::size_t site, int axis) const;
  /// Lattice index of a site along a real axis.
  int lattice_index(std::size_t site, int axis) const;

  bool operator==(const TorusGrid& o) const {
    return n == o.n && points_per_axis == o.points_per_axis &&
           side_length == o.side_length;
  }
};

}  // namespace ymh
