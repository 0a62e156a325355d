#pragma once

// Uniform staggered grids, ghost-padded fields and boundary ghost fill.
//
// Index conventions (0-based, per axis of extent M cells):
//   - cell-centered axis: native points 0..M-1 at x = lo + (i + 1/2) h,
//     ghosts at -g..-1 and M..M-1+g;
//   - staggered (edge-normal) axis: native points 0..M at x = lo + i h,
//     where 0 and M lie on the boundary; ghosts at -g..-1 and M+1..M+g.
// An EdgeX field (east-west edges, the u component) is staggered along x and
// cell-centered along the other axes; EdgeY / EdgeZ are analogous.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mgfas {

enum class Location { Cell, EdgeX, EdgeY, EdgeZ };

std::string to_string(Location loc);

/// Axis along which an edge location is staggered, or -1 for cell-centered.
constexpr int staggered_axis(Location loc) {
    switch (loc) {
    case Location::EdgeX: return 0;
    case Location::EdgeY: return 1;
    case Location::EdgeZ: return 2;
    default: return -1;
    }
}

constexpr Location edge_location(int axis) {
    return axis == 0 ? Location::EdgeX : axis == 1 ? Location::EdgeY : Location::EdgeZ;
}

/// Geometry of one uniform grid level.
struct GridLevel {
    int level = 0;
    int dim = 2;
    std::array<int, 3> cells{1, 1, 1};
    std::array<double, 3> lo{0.0, 0.0, 0.0};
    std::array<double, 3> hi{1.0, 1.0, 1.0};
    double h = 1.0;
    std::array<bool, 3> periodic{false, false, false};

    /// Builds a level from cell counts and a box; throws InvalidGrid unless the
    /// spacing is identical on every axis.
    static GridLevel make(int dim, std::array<int, 3> cells, std::array<double, 3> lo,
                          std::array<double, 3> hi);
    /// [0,1]^dim with n cells per axis.
    static GridLevel unit(int dim, int n);

    GridLevel coarsened() const;
    long long cell_count() const;
    bool operator==(const GridLevel&) const = default;
};

/// Coarsening chain, finest level first.
using GridHierarchy = std::vector<GridLevel>;

/// Returns meshLevel+1 levels; every level must have an even number of cells on
/// each active axis, otherwise NonDivisibleGrid is thrown.
GridHierarchy make_hierarchy(const GridLevel& fine, int meshLevel);

enum class BcKind { DirichletReflected, NeumannCopy, Periodic };

struct FaceBc {
    BcKind kind = BcKind::DirichletReflected;
    double value = 0.0;
};

/// Boundary condition per face: face[axis][0] is the low side, face[axis][1] the high side.
/// For an edge field, the faces normal to its staggered axis prescribe the
/// boundary value itself; the other faces prescribe the wall value reached by reflection.
struct BoundaryCondition {
    std::array<std::array<FaceBc, 2>, 3> face{};

    static BoundaryCondition dirichlet(double value = 0.0);
    static BoundaryCondition neumann();
    static BoundaryCondition periodic_all();

    BoundaryCondition& set(int axis, int side, FaceBc bc);
    BoundaryCondition& set_axis(int axis, FaceBc bc);

    /// Throws InvalidBoundary if a periodic face is unpaired or disagrees with the grid topology.
    void validate(const GridLevel& grid) const;
    bool any_dirichlet(int dim) const;
    /// Same kinds with all values zeroed.
    BoundaryCondition homogeneous() const;
};

/// Scalar array on one location class of a grid level, padded with ghost layers.
/// Storage is x-fastest.
class Field {
public:
    Field() = default;
    Field(const GridLevel& grid, Location loc, int ghost = 1);

    const GridLevel& grid() const { return grid_; }
    Location location() const { return loc_; }
    int dim() const { return grid_.dim; }
    int ghost() const { return ghost_; }
    double h() const { return grid_.h; }

    /// Native (non-ghost) point count along an axis.
    int extent(int axis) const { return n_[axis]; }
    /// Half-open range of unknowns along an axis. Boundary points of a
    /// non-periodic staggered axis are excluded.
    int active_begin(int axis) const { return ab_[axis]; }
    int active_end(int axis) const { return ae_[axis]; }
    long long active_count() const;

    bool staggered(int axis) const { return staggered_axis(loc_) == axis; }
    /// Coordinate of native index i along axis.
    double coord(int axis, int i) const;

    std::ptrdiff_t stride(int axis) const { return stride_[axis]; }
    std::ptrdiff_t index(int i, int j, int k = 0) const {
        return (i + pad_[0]) + (j + pad_[1]) * stride_[1] + (k + pad_[2]) * stride_[2];
    }

    double operator()(int i, int j, int k = 0) const { return data_[static_cast<std::size_t>(index(i, j, k))]; }
    /// Mutable element access; marks ghosts stale.
    double& operator()(int i, int j, int k = 0) {
        fresh_ = false;
        return data_[static_cast<std::size_t>(index(i, j, k))];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }
    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    bool ghosts_fresh() const { return fresh_; }
    void mark_stale() { fresh_ = false; }
    void mark_fresh() { fresh_ = true; }

    /// Sets every stored value, ghosts included.
    void fill(double v);
    bool same_layout(const Field& other) const;
    bool empty() const { return data_.empty(); }

private:
    GridLevel grid_{};
    Location loc_ = Location::Cell;
    int ghost_ = 1;
    std::array<int, 3> n_{1, 1, 1};
    std::array<int, 3> pad_{0, 0, 0};
    std::array<int, 3> ab_{0, 0, 0};
    std::array<int, 3> ae_{1, 1, 1};
    std::array<std::ptrdiff_t, 3> stride_{1, 1, 1};
    std::vector<double> data_;
    bool fresh_ = false;
};

/// Fills the ghost layer of a cell-centered field.
///   DirichletReflected(v): ghost = 2v - mirrored interior
///   NeumannCopy:           ghost = mirrored interior
///   Periodic:              ghost = interior on the opposite side
/// Faces are filled highest axis first; each axis covers the full padded range
/// of the higher axes, so the x-face fill owns the corners.
void apply_ghost_cell(Field& field, const BoundaryCondition& bc);

/// Ghost fill for an edge field. Boundary points on the staggered axis are set
/// to the prescribed normal value (Dirichlet) or copied from the neighbour
/// (Neumann); everything else follows apply_ghost_cell's rules.
void apply_ghost_edge(Field& field, const BoundaryCondition& bc);

/// Dispatches on the field location.
void apply_ghosts(Field& field, const BoundaryCondition& bc);

/// Refreshes only periodic wraps; no-op on non-periodic grids. Used on
/// residual-type fields whose ghosts carry no boundary condition.
void wrap_periodic(Field& field);

/// h^{d/2} * sqrt(sum of squares over active points), summed in a fixed order.
double norm_l2_scaled(const Field& field);

/// Mean over active points.
double mean_active(const Field& field);

/// Adds c to every active point.
void shift_active(Field& field, double c);

/// dst = src on every stored value (layouts must match).
void copy_values(const Field& src, Field& dst);

/// Maximum |a - b| over active points.
double max_abs_diff(const Field& a, const Field& b);

} // namespace mgfas
