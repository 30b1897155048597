#pragma once

#include <arbor/isometry.hpp>

namespace arbor {

// How the axes of two hyperbolic isometries interact, reconstructed from the
// four translation lengths l1, l2, l(g1 g2), l(g1 g2^{-1}) alone.
//
//   Disjoint     axes at distance d >= 1; both products have length
//                l1 + l2 + 2d.
//   TouchPoint   axes share exactly one vertex; both products equal l1 + l2.
//   Overlap      overlap of length 0 < delta < min(l1, l2); the
//                same-orientation product is l1 + l2, the other is
//                l1 + l2 - 2 delta.
//   LargeOverlap overlap of length >= min(l1, l2); the exact length is not
//                determined by the four lengths (it may even be infinite),
//                so only the lower bound is reported.
//
// Any other combination of lengths is geometrically impossible and reported
// as InconsistentLengths.
enum class AxisKind { Disjoint, TouchPoint, Overlap, LargeOverlap };

struct AxisRelation {
    AxisKind kind = AxisKind::TouchPoint;
    long d = 0;                       // Disjoint: axis distance, >= 1
    long delta = 0;                   // Overlap: overlap length, < min(l1,l2)
    bool same_orientation = false;    // Overlap: g1, g2 translate the overlap the same way
    long delta_lower_bound = 0;       // LargeOverlap: min(l1, l2)
};

struct InconsistentLengths : std::invalid_argument {
    InconsistentLengths(long l1, long l2, long lp, long li)
        : std::invalid_argument("no axis configuration yields lengths l1=" + std::to_string(l1) +
                                " l2=" + std::to_string(l2) + " l(g1g2)=" + std::to_string(lp) +
                                " l(g1g2^-1)=" + std::to_string(li)) {}
};

// The decision table on (l1, l2, l(g1 g2), l(g1 g2^{-1})); exposed separately
// so the table itself can be exercised on constructed length combinations.
AxisRelation classify_from_lengths(long l1, long l2, long l_prod, long l_prod_inv);

// Requires both hyperbolic, same p.
AxisRelation classify_pair(const Isometry& g1, const Isometry& g2);

// The pairwise free-group criterion: axes disjoint, touching at a point, or
// overlapping strictly shorter than both translation lengths.
bool pair_pingpong(const Isometry& g1, const Isometry& g2);

// For hyperbolic g1, g2 with elliptic product: the distance from the
// terminal overlap vertex q (the end toward which g1 translates) to a fixed
// vertex of g1 g2 is |l1 - l2| / 2.
long elliptic_product_prediction(const Isometry& g1, const Isometry& g2);

}  // namespace arbor
