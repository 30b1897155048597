#include <arbor/tree.hpp>

#include <algorithm>
#include <cstdlib>

namespace arbor {

Rational Tree::reduce_mod(const Rational& u, long h) const {
    if (u == 0) return 0;
    long vu = vp(u, p_).value();
    if (vu >= h) return 0;
    long m = std::max(0L, -vu);
    // w = u * p^m is p-integral; reduce it modulo p^{h+m} and scale back.
    Rational w = u * rat_pow(p_, m);
    Int modulus = int_pow(p_, h + m);
    Int den_inv;
    int ok = mpz_invert(den_inv.backend().data(), denominator(w).backend().data(),
                        modulus.backend().data());
    check(ok != 0, "reduce_mod: denominator not invertible modulo p^k");
    Int t = (numerator(w) * den_inv) % modulus;
    if (t < 0) t += modulus;
    return Rational(t) / rat_pow(p_, m);
}

Vertex Tree::canonical(const Mat2& basis) const {
    Rational dt = det(basis);
    if (dt == 0) throw std::invalid_argument("canonical: singular basis");
    Rational a = basis.a, b = basis.b, c = basis.c, d = basis.d;
    // Columns span the lattice; arrange the smaller bottom-row valuation
    // into the second column so c/d is p-integral.
    bool swap_cols = (d == 0) || (c != 0 && vp(c, p_).value() < vp(d, p_).value());
    if (swap_cols) {
        std::swap(a, b);
        std::swap(c, d);
    }
    // Clearing the bottom-left entry leaves det/d in the top-left, so
    // h = v_p(det) - 2 v_p(d) and the off-diagonal reduces to b/d.
    long vd = vp(d, p_).value();
    long h = vp(dt, p_).value() - 2 * vd;
    return {h, reduce_mod(b / d, h)};
}

Mat2 Tree::basis(const Vertex& v) const { return {rat_pow(p_, v.h), v.u, 0, 1}; }

long Tree::distance(const Vertex& a, const Vertex& b) const {
    // Change of basis: [[p^{hb-ha}, (b.u - a.u) p^{-ha}], [0, 1]].
    long vdet = b.h - a.h;
    long minval = std::min(0L, vdet);
    Rational w = b.u - a.u;
    if (w != 0) minval = std::min(minval, vp(w, p_).value() - a.h);
    return vdet - 2 * minval;
}

std::vector<Vertex> Tree::neighbors(const Vertex& v) const {
    // The p+1 index-p sublattice classes: p nudges of the off-diagonal one
    // level down, plus the class one level up.
    std::vector<Vertex> out;
    out.reserve(p_ + 1);
    out.push_back({v.h - 1, reduce_mod(v.u, v.h - 1)});
    Rational ph = rat_pow(p_, v.h);
    for (long t = 0; t < p_; ++t)
        out.push_back({v.h + 1, reduce_mod(v.u + Rational(t) * ph, v.h + 1)});
    return out;
}

Vertex Tree::apply(const Isometry& g, const Vertex& v) const {
    if (g.p != p_) throw std::invalid_argument("apply: isometry bound to a different prime");
    Rational ph = rat_pow(p_, v.h);
    return canonical({g.m.a * ph, g.m.a * v.u + g.m.b, g.m.c * ph, g.m.c * v.u + g.m.d});
}

std::vector<Vertex> Tree::geodesic(const Vertex& a, const Vertex& b) const {
    std::vector<Vertex> path{a};
    long dist = distance(a, b);
    path.reserve(dist + 1);
    Vertex cur = a;
    while (dist > 0) {
        bool found = false;
        for (Vertex& w : neighbors(cur)) {
            if (distance(w, b) == dist - 1) {
                check(!found, "geodesic: non-unique descent step");
                cur = std::move(w);
                found = true;
            }
        }
        check(found, "geodesic: no neighbor closer to target");
        path.push_back(cur);
        --dist;
    }
    return path;
}

Vertex Tree::midpoint(const Vertex& a, const Vertex& b) const {
    long dist = distance(a, b);
    check(dist % 2 == 0, "midpoint: odd distance (inversion observed)");
    return geodesic(a, b)[static_cast<size_t>(dist / 2)];
}

long Tree::oracle_translation_length(const Isometry& g) const {
    Vertex x = base();
    Vertex gx = apply(g, x);
    long dist = distance(x, gx);
    while (dist > 0) {
        check(dist % 2 == 0, "translation: odd displacement (inversion observed)");
        Vertex m = geodesic(x, gx)[static_cast<size_t>(dist / 2)];
        Vertex gm = apply(g, m);
        long dm = distance(m, gm);
        if (dm >= dist) return dist;  // stabilized at the minimum
        x = std::move(m);
        gx = std::move(gm);
        dist = dm;
    }
    return 0;
}

Vertex Tree::fixed_vertex(const Isometry& g, const Vertex& start) const {
    Vertex x = start;
    Vertex gx = apply(g, x);
    long dist = distance(x, gx);
    while (dist > 0) {
        check(dist % 2 == 0, "fixed_vertex: odd displacement (inversion observed)");
        Vertex m = geodesic(x, gx)[static_cast<size_t>(dist / 2)];
        Vertex gm = apply(g, m);
        long dm = distance(m, gm);
        if (dm >= dist) throw std::invalid_argument("fixed_vertex: isometry is not elliptic");
        x = std::move(m);
        gx = std::move(gm);
        dist = dm;
    }
    return x;
}

AxisFrame::AxisFrame(const Tree& tree, const Isometry& g)
    : tree_(&tree), g_(g), g_inv_(inverse(g)), len_(tree.oracle_translation_length(g)) {
    check(len_ > 0, "axis frame: isometry is not hyperbolic");
    // Any start vertex x works: the vertex of [x, gx] at distance
    // (d(x, gx) - l)/2 from x lies on the axis.
    Vertex x = tree.base();
    Vertex gx = tree.apply(g_, x);
    long dist = tree.distance(x, gx);
    Vertex origin = x;
    if (dist > len_) {
        check((dist - len_) % 2 == 0, "axis frame: displacement parity");
        origin = tree.geodesic(x, gx)[static_cast<size_t>((dist - len_) / 2)];
    }
    g_origin_ = tree.apply(g_, origin);
    check(tree.distance(origin, g_origin_) == len_, "axis frame: origin not on axis");
    auto seg = tree.geodesic(origin, g_origin_);
    window_.assign(seg.begin(), seg.end());
    lo_ = 0;
    hi_ = len_;
}

void AxisFrame::extend_pos() const {
    // Coordinates hi+1 .. hi+len are g applied to hi-len+1 .. hi.
    size_t first = window_.size() - static_cast<size_t>(len_);
    for (long k = 0; k < len_; ++k) window_.push_back(tree_->apply(g_, window_[first + k]));
    hi_ += len_;
}

void AxisFrame::extend_neg() const {
    for (long k = 0; k < len_; ++k)
        window_.push_front(tree_->apply(g_inv_, window_[static_cast<size_t>(len_ - 1)]));
    lo_ -= len_;
}

const Vertex& AxisFrame::at(long t) const {
    while (t > hi_) extend_pos();
    while (t < lo_) extend_neg();
    return window_[static_cast<size_t>(t - lo_)];
}

bool AxisFrame::on_axis(const Vertex& v) const {
    return tree_->distance(v, tree_->apply(g_, v)) == len_;
}

long AxisFrame::coordinate(const Vertex& v) const {
    long d0 = tree_->distance(v, origin());
    if (d0 == 0) return 0;
    long d1 = tree_->distance(v, g_origin_);
    if (d1 == std::labs(d0 - len_)) return d0;
    check(d1 == d0 + len_, "coordinate: vertex not on axis");
    return -d0;
}

long AxisFrame::project(const Vertex& v) const {
    // The geodesic from v to any axis vertex enters the axis at the gate,
    // which is the closest axis vertex to v.
    for (const Vertex& w : tree_->geodesic(v, origin()))
        if (on_axis(w)) return coordinate(w);
    throw std::logic_error("project: geodesic reached origin without meeting the axis");
}

CoordInterval projection_interval(const AxisFrame& target, const AxisFrame& other, long cutoff) {
    long step = std::max(other.length(), 2L);
    CoordInterval prev{};
    bool have_prev = false;
    int stable = 0;
    for (long radius = step;; radius += step) {
        if (radius > cutoff) throw OverlapBeyondCutoff(cutoff);
        long a = target.project(other.at(-radius));
        long b = target.project(other.at(radius));
        CoordInterval cur{std::min(a, b), std::max(a, b)};
        if (have_prev && cur == prev) {
            if (++stable >= 2) return cur;
        } else {
            stable = 0;
        }
        prev = cur;
        have_prev = true;
    }
}

long default_cutoff(const std::vector<Isometry>& tuple) {
    long max_len = 0;
    for (const auto& g : tuple) max_len = std::max(max_len, g.len);
    return 4 * max_len + 8;
}

PingPongReport check_pingpong(const Tree& tree, const std::vector<Isometry>& tuple, long cutoff,
                              bool strict_open) {
    const int n = static_cast<int>(tuple.size());
    for (const auto& g : tuple)
        if (!g.hyperbolic()) throw std::invalid_argument("check_pingpong: elliptic element");

    std::vector<AxisFrame> frames;
    frames.reserve(n);
    for (const auto& g : tuple) frames.emplace_back(tree, g);

    PingPongReport report;
    bool any_fail = false, any_indet = false;
    for (int i = 0; i < n; ++i) {
        PingPongIndexReport r;
        r.index = i + 1;
        r.len = frames[i].length();
        long lo = 0, hi = 0;
        bool have = false;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            try {
                CoordInterval ival = projection_interval(frames[i], frames[j], cutoff);
                lo = have ? std::min(lo, ival.lo) : ival.lo;
                hi = have ? std::max(hi, ival.hi) : ival.hi;
                have = true;
            } catch (const OverlapBeyondCutoff&) {
                r.determinate = false;
            }
        }
        r.union_diameter = have ? hi - lo : 0;
        long limit = r.len - (strict_open ? 2 : 1);
        bool known_fail = r.union_diameter > limit;
        // An indeterminate projection can only grow the union, so a failure
        // on the determinate part is already final.
        r.pass = r.determinate && !known_fail;
        if (known_fail) {
            r.determinate = true;
            any_fail = true;
        } else if (!r.determinate) {
            any_indet = true;
        }
        report.per_index.push_back(std::move(r));
    }
    report.status = any_fail      ? PingPongStatus::Fail
                    : any_indet   ? PingPongStatus::Indeterminate
                                  : PingPongStatus::Pass;
    return report;
}

}  // namespace arbor
