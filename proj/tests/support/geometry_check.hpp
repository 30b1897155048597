#pragma once

#include <arbor/axes.hpp>
#include <arbor/tree.hpp>

#include <cstdlib>
#include <optional>
#include <stdexcept>

// Geometric measurement of how two axes interact, done entirely with the
// tree oracle, plus the product lengths the measured configuration dictates.
// This is the forward direction: measure the geometry, predict the lengths,
// and compare against both the trace formula and the inverse decision table.
namespace geom {

struct MeasuredPair {
    bool disjoint = false;
    long d = 0;           // axis distance when disjoint
    long delta = 0;       // overlap length otherwise
    bool same_orientation = false;  // of (g1, g2); meaningless when delta == 0
    long q_coord_on_1 = 0;          // overlap endpoint toward which g1 translates
};

// Distance from a vertex to the axis of g, via d(x, gx) = l + 2 d(x, axis).
inline long dist_to_axis(const arbor::Tree& tree, const arbor::Isometry& g, long len,
                         const arbor::Vertex& v) {
    long disp = tree.distance(v, tree.apply(g, v));
    if ((disp - len) % 2 != 0) throw std::logic_error("dist_to_axis: parity violation");
    return (disp - len) / 2;
}

inline MeasuredPair measure_pair(const arbor::Tree& tree, const arbor::AxisFrame& f1,
                                 const arbor::AxisFrame& f2, long cutoff) {
    arbor::CoordInterval proj = arbor::projection_interval(f1, f2, cutoff);
    MeasuredPair m;
    long gap = dist_to_axis(tree, f2.g(), f2.length(), f1.at(proj.lo));
    if (gap > 0) {
        if (proj.diameter() != 0)
            throw std::logic_error("measure_pair: disjoint axes with a fat projection");
        m.disjoint = true;
        m.d = gap;
        return m;
    }
    m.delta = proj.diameter();
    m.q_coord_on_1 = proj.hi;
    if (m.delta >= 1) {
        long s0 = f2.coordinate(f1.at(proj.lo));
        long s1 = f2.coordinate(f1.at(proj.lo + 1));
        if (std::labs(s1 - s0) != 1) throw std::logic_error("measure_pair: bad overlap walk");
        m.same_orientation = (s1 == s0 + 1);
    }
    return m;
}

// Expected l(a b) when the axes overlap with opposite orientations along a
// path of length delta. The delta == min case needs the overlap of the
// second axis with its translate under the shorter element, measured here
// with fresh frames; nullopt means that measurement ran past the cutoff but
// is already >= |l1 - l2| / 2, forcing the product to be elliptic.
inline long opposite_case_length(const arbor::Tree& tree, const arbor::Isometry& a,
                                 const arbor::Isometry& b, long delta, long cutoff) {
    const long la = a.len, lb = b.len;
    const long lmin = std::min(la, lb);
    const long gap = std::labs(la - lb);
    if (delta < lmin) return la + lb - 2 * delta;
    if (delta > lmin) return gap;
    if (gap == 0) return 0;  // delta == min and equal lengths: always elliptic
    // delta == min: conjugate the longer element's axis by the shorter one;
    // the translate always meets the axis (at the overlap endpoint).
    const arbor::Isometry& shorter = la <= lb ? a : b;
    const arbor::Isometry& longer = la <= lb ? b : a;
    arbor::AxisFrame longer_frame(tree, longer);
    arbor::AxisFrame moved(tree, shorter * longer * arbor::inverse(shorter));
    long delta_prime = 0;
    try {
        arbor::CoordInterval proj = arbor::projection_interval(longer_frame, moved, cutoff);
        if (dist_to_axis(tree, moved.g(), moved.length(), longer_frame.at(proj.lo)) > 0)
            throw std::logic_error("opposite_case_length: translated axis misses the original");
        delta_prime = proj.diameter();
    } catch (const arbor::OverlapBeyondCutoff&) {
        if (cutoff < gap / 2) throw;  // cannot conclude; caller skips the pair
        return 0;                     // delta' >= cutoff >= gap/2 forces an elliptic product
    }
    if (2 * delta_prime < gap) return gap - 2 * delta_prime;
    return 0;
}

// Expected lengths of g1 g2 and g1 g2^{-1} from the measured configuration.
struct ExpectedLengths {
    long prod = 0, prod_inv = 0;
};

inline ExpectedLengths expected_lengths(const arbor::Tree& tree, const arbor::Isometry& g1,
                                        const arbor::Isometry& g2, const MeasuredPair& m,
                                        long cutoff) {
    const long l1 = g1.len, l2 = g2.len, sum = l1 + l2;
    ExpectedLengths e;
    if (m.disjoint) {
        e.prod = e.prod_inv = sum + 2 * m.d;
        return e;
    }
    if (m.delta == 0) {
        e.prod = e.prod_inv = sum;
        return e;
    }
    if (m.same_orientation) {
        e.prod = sum;
        e.prod_inv = opposite_case_length(tree, g1, arbor::inverse(g2), m.delta, cutoff);
    } else {
        e.prod = opposite_case_length(tree, g1, g2, m.delta, cutoff);
        e.prod_inv = sum;
    }
    return e;
}

}  // namespace geom
