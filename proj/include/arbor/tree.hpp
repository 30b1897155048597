#pragma once

#include <arbor/isometry.hpp>

#include <deque>
#include <stdexcept>
#include <vector>

namespace arbor {

// A vertex of the Bruhat-Tits tree T_p: the homothety class of a rank-2
// lattice over the p-integral rationals, stored as the canonical
// upper-triangular basis [[p^h, u], [0, 1]] with u reduced modulo
// p^h Z_(p). Every vertex reachable from rational input matrices has such
// an exact rational representative, so no p-adic truncation is ever needed.
struct Vertex {
    long h = 0;
    Rational u = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

// Raised by overlap measurements that would have to sample past the
// configured cutoff radius; surfaces possibly-infinite axis overlaps as
// indeterminate instead of silently wrong answers.
struct OverlapBeyondCutoff : std::runtime_error {
    explicit OverlapBeyondCutoff(long radius)
        : std::runtime_error("axis overlap measurement exceeded cutoff radius " +
                             std::to_string(radius)) {}
};

class Tree {
public:
    explicit Tree(long p) : p_(p) { require_prime(p); }

    long p() const { return p_; }
    Vertex base() const { return {}; }

    // Canonical reduced representative of u modulo p^h Z_(p).
    Rational reduce_mod(const Rational& u, long h) const;

    // Lattice class spanned by the columns of an invertible rational matrix.
    Vertex canonical(const Mat2& basis) const;
    Mat2 basis(const Vertex& v) const;

    // Difference of the two elementary-divisor valuations of the
    // change-of-basis matrix.
    long distance(const Vertex& a, const Vertex& b) const;

    // The p+1 vertices at distance 1.
    std::vector<Vertex> neighbors(const Vertex& v) const;

    Vertex apply(const Isometry& g, const Vertex& v) const;

    // The unique geodesic, by greedy neighbor descent: each step takes the
    // unique neighbor strictly closer to the target.
    std::vector<Vertex> geodesic(const Vertex& a, const Vertex& b) const;

    // Midpoint of the geodesic; distances between same-type vertices are
    // even (SL2 acts without inversions, asserted wherever this is used).
    Vertex midpoint(const Vertex& a, const Vertex& b) const;

    // min over vertices of d(x, gx), computed by midpoint descent: the
    // midpoint of [x, gx] strictly decreases d(x, gx) by >= 2 until it
    // stabilizes at the minimum. Independent of the trace formula.
    long oracle_translation_length(const Isometry& g) const;

    // A vertex fixed by an elliptic isometry, found by midpoint descent
    // from `start`; rejects hyperbolic input.
    Vertex fixed_vertex(const Isometry& g) const { return fixed_vertex(g, base()); }
    Vertex fixed_vertex(const Isometry& g, const Vertex& start) const;

private:
    long p_;
};

// The axis of a hyperbolic isometry with integer coordinates along it:
// origin at coordinate 0, coordinates increasing in the translation
// direction, so g maps the vertex at t to the vertex at t + l(g).
class AxisFrame {
public:
    AxisFrame(const Tree& tree, const Isometry& g);

    long length() const { return len_; }
    const Isometry& g() const { return g_; }
    const Vertex& origin() const { return window_[static_cast<size_t>(-lo_)]; }

    // Axis vertex at coordinate t (window grows on demand).
    const Vertex& at(long t) const;

    // d(v, gv) == l(g) exactly on the axis.
    bool on_axis(const Vertex& v) const;

    // Signed coordinate of an axis vertex.
    long coordinate(const Vertex& v) const;

    // Coordinate of the closest axis vertex to v: the first vertex of the
    // geodesic from v to the origin that lies on the axis.
    long project(const Vertex& v) const;

private:
    void extend_pos() const;
    void extend_neg() const;

    const Tree* tree_;
    Isometry g_, g_inv_;
    long len_;
    Vertex g_origin_;
    mutable std::deque<Vertex> window_;  // coordinates lo_..hi_
    mutable long lo_ = 0, hi_ = 0;
};

// Closed integer interval of axis coordinates.
struct CoordInterval {
    long lo = 0, hi = 0;
    long diameter() const { return hi - lo; }
    friend bool operator==(const CoordInterval&, const CoordInterval&) = default;
};

// Proj_{target}(other) = the vertices of the target axis closest to the
// other axis, as a coordinate interval in the target frame: a single point
// when the axes are disjoint, the overlap segment otherwise. Sampling along
// the other axis is extended until the projected interval is unchanged for
// two consecutive extensions; throws OverlapBeyondCutoff past the cutoff.
CoordInterval projection_interval(const AxisFrame& target, const AxisFrame& other, long cutoff);

// Default cutoff radius for overlap measurements on a given tuple.
long default_cutoff(const std::vector<Isometry>& tuple);

struct PingPongIndexReport {
    int index = 0;  // 1-based
    long len = 0;
    long union_diameter = 0;  // of the determinate projections
    bool pass = false;
    bool determinate = true;
};

enum class PingPongStatus { Pass, Fail, Indeterminate };

struct PingPongReport {
    PingPongStatus status = PingPongStatus::Indeterminate;
    std::vector<PingPongIndexReport> per_index;
};

// For each i, the union of the projections of all other axes onto axis i
// must fit inside an open segment of length l(g_i); implemented as
// diameter(union) <= l - 1, or <= l - 2 under the strict convention.
PingPongReport check_pingpong(const Tree& tree, const std::vector<Isometry>& tuple, long cutoff,
                              bool strict_open = false);

}  // namespace arbor
