#pragma once

#include <vector>

#include "jhol/disc_grid.hpp"

namespace jhol {

struct Zero {
  Complex zeta;
  int multiplicity = 1;
  bool certified = true;  ///< false for the proximity heuristic used when n > 1
};

struct ZeroOptions {
  double location_tol = 1e-10;  ///< refinement stops once a cell is this small
  int upsample = 8;             ///< theta refinement before interpolation
  int interp_points = 12;       ///< Lagrange nodes per direction
  int edge_samples = 16;        ///< initial samples per edge of a refined cell
};

/// Preimages of p. For n = 1 each polar cell (and the central polygon) is
/// tested by the winding number of u - p along its boundary; cells with
/// nonzero winding are bisected down to the zero. For n > 1 nearby local
/// minima of |u - p| are clustered and flagged uncertified.
std::vector<Zero> extract_zeros(const DiscGrid& u, const CVec& p, const ZeroOptions& opts = {});

/// sum m_k (1 - |zeta_k|). Throws InputError when some |zeta_k| >= 1.
double blaschke_sum(const std::vector<Zero>& zeros);

}  // namespace jhol
