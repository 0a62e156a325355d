#pragma once

// Restriction and prolongation between consecutive levels.
//
// Cell-centered: 2^d-point average and piecewise-constant prolongation.
//
// Edge-centered (u on x-faces shown, 0-based native indices; coarse face I
// coincides with fine face 2I, coarse cell J covers fine cells 2J, 2J+1):
//
//   R: U(I,J) = sum over t in {2J, 2J+1} of (u(2I-1,t) + 2 u(2I,t) + u(2I+1,t)) / 8
//      i.e. (1,2,1)/4 across faces and a pair average along the face; in 3D the
//      pair average runs over both tangential axes (weights /16).
//   P: u(2I, 2J)   = (3 U(I,J) + U(I,J-1)) / 4
//      u(2I, 2J+1) = (3 U(I,J) + U(I,J+1)) / 4
//      u(2I+1, t)  = (u(2I, t) + u(2I+2, t)) / 2
//      in 3D the tangential step uses the (3,1)x(3,1)/16 tensor weights.
//
// Coarse values outside the active range are read through ghosts, so P needs
// fresh coarse ghosts (and coarse boundary values on staggered axes).
// Outputs are written on active points only and marked stale.

#include "mgfas/grid.hpp"

namespace mgfas {

Field restrict_cc(const Field& fine);
void restrict_cc_into(const Field& fine, Field& coarse);

Field prolong_cc(const Field& coarse);
/// fine += P(coarse)
void prolong_add_cc(const Field& coarse, Field& fine);

Field restrict_edge(const Field& fine);
void restrict_edge_into(const Field& fine, Field& coarse);

Field prolong_edge(const Field& coarse);
void prolong_add_edge(const Field& coarse, Field& fine);

/// Dispatch on location.
void restrict_into(const Field& fine, Field& coarse);
void prolong_add(const Field& coarse, Field& fine);

} // namespace mgfas
