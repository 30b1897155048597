#pragma once

#include <arbor/isometry.hpp>

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace arbor {

// An n-tuple of tracked isometries together with the input generators the
// words refer to.
struct TrackedTuple {
    long p = 2;
    std::vector<TrackedElement> elems;
    std::shared_ptr<const std::vector<Mat2>> originals;

    int n() const { return static_cast<int>(elems.size()); }
};

TrackedTuple make_tracked_tuple(const std::vector<Mat2>& generators, long p);

// Simultaneous product replacement with pivot j: g_i -> g_j g_i for i in S1,
// g_i -> g_i g_j^{-1} for i in S2, and g_i -> g_j g_i g_j^{-1} for i in both.
// Indices are 1-based; j may not occur in S1 or S2.
struct ReplacementSpec {
    int j = 1;
    std::vector<int> s1, s2;

    friend bool operator==(const ReplacementSpec&, const ReplacementSpec&) = default;
};

// One record in the descent trace. The leading record carries only the
// starting value of L; every later record names the move applied and the
// strictly smaller L it produced.
struct TraceStep {
    std::optional<ReplacementSpec> move;
    long L = 0;
};

struct Certificate {
    bool free_discrete = false;
    TrackedTuple final_tuple;               // valid when free_discrete
    std::optional<TrackedElement> witness;  // valid otherwise; translation length 0
    std::vector<TraceStep> trace;
    long initial_L = 0;
    long iterations = 0;
};

// L(X) = sum of l(g_i) plus, over all i < j, l(g_i g_j) + l(g_i g_j^{-1}).
long big_L(const TrackedTuple& x);

// The 2*C(n,2) pair-product translation lengths l(g_i g_k), l(g_i g_k^{-1})
// over i < k.
std::vector<long> pair_product_lengths(const TrackedTuple& x);

TrackedTuple apply_replacement(const TrackedTuple& x, const ReplacementSpec& r);

// First strictly improving replacement in canonical order: pivot j ascending,
// then (S1, S2) as a pair of bitmasks over the non-pivot indices in ascending
// order, S1-mask major, S2-mask minor, bit k addressing the k-th smallest
// non-pivot index. Returns the spec and the new (smaller) L, or nothing if
// the tuple is minimal.
std::optional<std::pair<ReplacementSpec, long>> find_improving_move(const TrackedTuple& x);

bool is_minimal(const TrackedTuple& x);

// The decision procedure: check for elliptic elements, otherwise descend on L
// until minimal. Deterministic; L strictly decreases each iteration and the
// iteration count is bounded by the initial L.
Certificate decide(const std::vector<Mat2>& generators, long p);

}  // namespace arbor
