#pragma once

// Matrix-free staggered-grid operators.
//
// The Helmholtz-family operator is L(p) = a*p - b*lap_h(p) with the (2d+1)-point
// Laplacian. Its exact floating-point evaluation order is part of the contract
// (the serial reference and the tests reproduce it):
//
//     sum = (p[i-x] + p[i+x]) + (p[i-y] + p[i+y]) [+ (p[i-z] + p[i+z])]
//     L   = a*p[i] - b*((sum - 2d*p[i]) * (1/h^2))

#include "mgfas/grid.hpp"

#include <array>

namespace mgfas {

struct OperatorCoeffs {
    double a = 1.0;
    double b = 1.0;

    /// Throws InvalidParams unless a >= 0, b > 0.
    void validate() const;
};

/// Staggered vector field: component c lives on edge_location(c).
struct StaggeredVector {
    std::array<Field, 3> comp;
    int dim = 2;

    Field& operator[](int c) { return comp[static_cast<std::size_t>(c)]; }
    const Field& operator[](int c) const { return comp[static_cast<std::size_t>(c)]; }

    /// Zero-initialised components with the given ghost width.
    static StaggeredVector zeros(const GridLevel& grid, int ghost = 1);
};

/// out = L(p) on active points, zero elsewhere. Throws UnfilledGhosts when p's ghosts are stale.
Field apply_operator(const Field& p, const OperatorCoeffs& coeffs);
void apply_operator_into(const Field& p, const OperatorCoeffs& coeffs, Field& out);

/// acc += L(p) on active points.
void add_operator(const Field& p, const OperatorCoeffs& coeffs, Field& acc);

/// r = f - L(p) on active points, zero elsewhere. Throws LocationMismatch for differing layouts.
Field residual(const Field& f, const Field& p, const OperatorCoeffs& coeffs);
void residual_into(const Field& f, const Field& p, const OperatorCoeffs& coeffs, Field& r);

/// Cell-to-edge gradient, (p[i] - p[i-1]) / h at every native edge point
/// (boundary points included, read through ghosts).
StaggeredVector gradient_cc_to_edges(const Field& p, int ghost = 1);

/// Edge-to-cell divergence over all cells.
Field divergence_edges_to_cc(const StaggeredVector& u);

/// h^d times the sum of the cell divergences.
double integral_divergence(const StaggeredVector& u);

/// Boundary-flux form of the same integral: h^{d-1} times the net outward normal flux.
double boundary_flux(const StaggeredVector& u);

/// Regularisation of the WENO3 smoothness weights.
inline constexpr double kWenoEpsilon = 1e-6;

/// Convective derivative (adv . grad) q at the active points of the edge field q,
/// with component-wise upwind WENO3 differences. Advecting components that do
/// not live on q's location are averaged from the four surrounding points.
/// q needs two ghost layers.
Field weno3_convect(const StaggeredVector& advecting, const Field& advected);

/// Convenience: advects vel[target] by vel.
Field weno3_convect(const StaggeredVector& vel, int target);

/// One-dimensional WENO3 derivative at the centre of the five-point window
/// q[-2..2] for advecting speed `speed`, spacing h.
double weno3_derivative(double qm2, double qm1, double q0, double qp1, double qp2, double speed, double h);

/// Interpolates advecting component `c` to the points of a field at location `loc`.
double advecting_speed(const StaggeredVector& advecting, int c, Location loc, int i, int j, int k);

} // namespace mgfas
