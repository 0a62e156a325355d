#pragma once

// Multi-color Gauss-Seidel smoothing.
//
// Color sets are defined by index parity. Parities are taken on the
// 1-based cell numbering (cell i is "odd" when i+1 is odd) and on the edge
// numbering x_{i+1/2} = lo + i*h for staggered axes; any neighbour along an
// axis therefore has the opposite parity on that axis.
//
// The 2D four-color orderings (i = x index, j = y index):
//   X: (odd,even) (even,odd) (even,even) (odd,odd)
//   Z: (odd,odd)  (odd,even) (even,odd)  (even,even)   raster order of the 2x2 block
//   U: (odd,odd)  (even,odd) (even,even) (odd,even)    boustrophedon (Gray-code) order
// In 3D, X follows the eight-color order
//   (o,e,e) (e,o,e) (e,e,o) (o,o,o) (o,e,o) (e,o,o) (e,e,e) (o,o,e),
// Z the raster order with x slowest and U the reflected Gray code.

#include "mgfas/grid.hpp"
#include "mgfas/stencil.hpp"

#include <array>
#include <string>
#include <vector>

namespace mgfas {

using Parity = std::array<int, 3>; // 1 = odd, 0 = even; unused axes are ignored

/// Union of parity classes updated together.
struct ColorSet {
    std::vector<Parity> parities;

    bool contains(const Field& f, int i, int j, int k) const;
};

enum class SweepShape { X, U, Z, RedBlack };
enum class SweepSequence { ForwardForward, ForwardBackward };

std::string to_string(SweepShape s);
std::string to_string(SweepSequence s);
SweepShape parse_shape(const std::string& s);
SweepSequence parse_sequence(const std::string& s);

/// Ordered color visits making up one smoothing step.
struct SweepPlan {
    SweepShape shape = SweepShape::X;
    SweepSequence sequence_kind = SweepSequence::ForwardForward;
    int dim = 2;
    std::vector<ColorSet> colors;
    std::vector<int> sequence;

    /// Two colored iterations per step: 1234-1234 (forward-forward) or
    /// 1234-4321 (forward-backward); red-black uses 12-12 / 12-21.
    static SweepPlan make(SweepShape shape, SweepSequence seq, int dim);
    /// Explicit color list and visit order, for custom mappings.
    static SweepPlan custom(int dim, std::vector<ColorSet> colors, std::vector<int> sequence);

    /// Throws InvalidParams if the colors are not a partition or a color is never visited.
    void validate() const;
};

/// The default: X-shape, 1234-1234.
SweepPlan default_plan(int dim);

/// Parity classes in the order of the given shape.
std::vector<Parity> shape_order(SweepShape shape, int dim);

/// Gauss-Seidel update of every active point of one color set:
///   p = (h^2 f + b * sum_neighbours) / (a h^2 + 2d b)
/// with neighbours summed in the operator's order. p's ghosts must be fresh.
void gs_update(const Field& f, Field& p, const OperatorCoeffs& coeffs, const ColorSet& set);

/// Within-set traversal order; only used to demonstrate order independence.
enum class Traversal { Forward, Reverse };
void gs_update(const Field& f, Field& p, const OperatorCoeffs& coeffs, const ColorSet& set, Traversal order);

/// One smoothing step: visits plan.sequence in order, refreshing ghosts before
/// every color and once at the end. Throws PlanDimMismatch for a plan of the wrong dimension.
void smooth(const Field& f, Field& p, const OperatorCoeffs& coeffs, const SweepPlan& plan,
            const BoundaryCondition& bc);

} // namespace mgfas
