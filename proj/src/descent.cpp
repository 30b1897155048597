#include <arbor/descent.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace arbor {

namespace {

// Cached lengths of all elements and pairwise products for the current
// tuple. Candidate evaluation reuses every term whose indices the candidate
// does not touch.
struct LengthTable {
    int n = 0;
    std::vector<long> single;             // l(g_i)
    std::vector<std::vector<long>> prod;  // i<k: l(g_i g_k)
    std::vector<std::vector<long>> pinv;  // i<k: l(g_i g_k^{-1})
    long total = 0;

    void recompute_total() {
        total = 0;
        for (int i = 0; i < n; ++i) total += single[i];
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) total += prod[i][k] + pinv[i][k];
    }
};

LengthTable build_table(const std::vector<Isometry>& g, long p) {
    LengthTable t;
    t.n = static_cast<int>(g.size());
    t.single.resize(t.n);
    t.prod.assign(t.n, std::vector<long>(t.n, 0));
    t.pinv.assign(t.n, std::vector<long>(t.n, 0));
    for (int i = 0; i < t.n; ++i) t.single[i] = g[i].len;
    for (int i = 0; i < t.n; ++i)
        for (int k = i + 1; k < t.n; ++k) {
            t.prod[i][k] = translation_length_from_trace(trace_mul(g[i].m, g[k].m), p);
            t.pinv[i][k] = translation_length_from_trace(trace_mul_inv(g[i].m, g[k].m), p);
        }
    t.recompute_total();
    return t;
}

// A candidate in the canonical enumeration: pivot j (0-based here) and two
// bitmasks over the non-pivot indices, bit k addressing the k-th smallest.
struct RawSpec {
    int j;
    unsigned m1, m2;
};

std::vector<int> non_pivot(int n, int j) {
    std::vector<int> others;
    others.reserve(n - 1);
    for (int i = 0; i < n; ++i)
        if (i != j) others.push_back(i);
    return others;
}

// Replaced matrix for index i under pivot j.
Mat2 replaced_matrix(const Mat2& gi, const Mat2& gj, const Mat2& gj_inv, bool in_s1, bool in_s2) {
    if (in_s1 && in_s2) return gj * gi * gj_inv;
    if (in_s1) return gj * gi;
    return gi * gj_inv;
}

// Evaluate L of the candidate tuple, reusing untouched terms and pruning as
// soon as the partial sum reaches the current L (all terms are >= 0).
std::optional<long> eval_candidate(const std::vector<Isometry>& g, long p, const LengthTable& t,
                                   const RawSpec& c, const std::vector<int>& others,
                                   const Mat2& gj_inv) {
    const int n = t.n;
    const unsigned touched_mask = c.m1 | c.m2;

    long touched_old = 0;
    std::vector<char> in_t(n, 0);
    for (size_t k = 0; k < others.size(); ++k)
        if (touched_mask & (1u << k)) in_t[others[k]] = 1;
    for (int i = 0; i < n; ++i)
        if (in_t[i]) touched_old += t.single[i];
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            if (in_t[i] || in_t[k]) touched_old += t.prod[i][k] + t.pinv[i][k];

    long acc = t.total - touched_old;

    // New matrices and element lengths for the touched indices. Conjugation
    // preserves the trace, hence the length.
    std::vector<Mat2> newmat(n);
    for (size_t k = 0; k < others.size(); ++k) {
        if (!(touched_mask & (1u << k))) continue;
        int i = others[k];
        bool s1 = (c.m1 >> k) & 1u, s2 = (c.m2 >> k) & 1u;
        newmat[i] = replaced_matrix(g[i].m, g[c.j].m, gj_inv, s1, s2);
        acc += (s1 && s2) ? t.single[i] : translation_length_from_trace(trace(newmat[i]), p);
        if (acc >= t.total) return std::nullopt;
    }

    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            if (!in_t[i] && !in_t[k]) continue;
            const Mat2& A = in_t[i] ? newmat[i] : g[i].m;
            const Mat2& B = in_t[k] ? newmat[k] : g[k].m;
            acc += translation_length_from_trace(trace_mul(A, B), p);
            if (acc >= t.total) return std::nullopt;
            acc += translation_length_from_trace(trace_mul_inv(A, B), p);
            if (acc >= t.total) return std::nullopt;
        }
    }
    return acc;
}

std::optional<std::pair<RawSpec, long>> first_improving(const std::vector<Isometry>& g, long p,
                                                        const LengthTable& t) {
    const int n = t.n;
    if (n < 2) return std::nullopt;
    const unsigned mask_count = 1u << (n - 1);
    for (int j = 0; j < n; ++j) {
        std::vector<int> others = non_pivot(n, j);
        Mat2 gj_inv = mat_inv(g[j].m);
        for (unsigned m1 = 0; m1 < mask_count; ++m1)
            for (unsigned m2 = 0; m2 < mask_count; ++m2) {
                if (m1 == 0 && m2 == 0) continue;
                RawSpec c{j, m1, m2};
                if (auto newL = eval_candidate(g, p, t, c, others, gj_inv))
                    return std::make_pair(c, *newL);
            }
    }
    return std::nullopt;
}

ReplacementSpec to_public(const RawSpec& c, const std::vector<int>& others) {
    ReplacementSpec r;
    r.j = c.j + 1;
    for (size_t k = 0; k < others.size(); ++k) {
        if ((c.m1 >> k) & 1u) r.s1.push_back(others[k] + 1);
        if ((c.m2 >> k) & 1u) r.s2.push_back(others[k] + 1);
    }
    return r;
}

// Apply a raw candidate in place; returns the touched indices.
std::vector<int> apply_raw(TrackedTuple& x, const RawSpec& c, const std::vector<int>& others) {
    std::vector<int> touched;
    TrackedElement pivot = x.elems[c.j];
    TrackedElement pivot_inv = tracked_inv(pivot);
    for (size_t k = 0; k < others.size(); ++k) {
        bool s1 = (c.m1 >> k) & 1u, s2 = (c.m2 >> k) & 1u;
        if (!s1 && !s2) continue;
        int i = others[k];
        TrackedElement e = x.elems[i];
        if (s1) e = tracked_mul(pivot, e);
        if (s2) e = tracked_mul(e, pivot_inv);
        x.elems[i] = std::move(e);
        touched.push_back(i);
    }
    return touched;
}

void refresh_table(LengthTable& t, const std::vector<Isometry>& g, long p,
                   const std::vector<int>& touched) {
    std::vector<char> in_t(t.n, 0);
    for (int i : touched) in_t[i] = 1;
    for (int i : touched) t.single[i] = g[i].len;
    for (int i = 0; i < t.n; ++i)
        for (int k = i + 1; k < t.n; ++k) {
            if (!in_t[i] && !in_t[k]) continue;
            t.prod[i][k] = translation_length_from_trace(trace_mul(g[i].m, g[k].m), p);
            t.pinv[i][k] = translation_length_from_trace(trace_mul_inv(g[i].m, g[k].m), p);
        }
    t.recompute_total();
}

std::vector<Isometry> isometries_of(const TrackedTuple& x) {
    std::vector<Isometry> g;
    g.reserve(x.elems.size());
    for (const auto& e : x.elems) g.push_back(e.iso);
    return g;
}

void validate_spec(const TrackedTuple& x, const ReplacementSpec& r) {
    const int n = x.n();
    if (r.j < 1 || r.j > n) throw std::invalid_argument("replacement: pivot out of range");
    auto check_set = [&](const std::vector<int>& s, const char* name) {
        std::vector<char> seen(n + 1, 0);
        for (int i : s) {
            if (i < 1 || i > n) throw std::invalid_argument(std::string("replacement: ") + name + " index out of range");
            if (i == r.j) throw std::invalid_argument(std::string("replacement: pivot occurs in ") + name);
            if (seen[i]) throw std::invalid_argument(std::string("replacement: duplicate index in ") + name);
            seen[i] = 1;
        }
    };
    check_set(r.s1, "S1");
    check_set(r.s2, "S2");
}

}  // namespace

TrackedTuple make_tracked_tuple(const std::vector<Mat2>& generators, long p) {
    require_prime(p);
    if (generators.empty()) throw std::invalid_argument("empty generator list");
    TrackedTuple x;
    x.p = p;
    x.originals = std::make_shared<const std::vector<Mat2>>(generators);
    for (size_t i = 0; i < generators.size(); ++i)
        x.elems.push_back({Isometry(generators[i], p), Word{static_cast<int>(i) + 1}});
    return x;
}

long big_L(const TrackedTuple& x) {
    return build_table(isometries_of(x), x.p).total;
}

std::vector<long> pair_product_lengths(const TrackedTuple& x) {
    auto g = isometries_of(x);
    std::vector<long> out;
    for (int i = 0; i < x.n(); ++i)
        for (int k = i + 1; k < x.n(); ++k) {
            out.push_back(translation_length_from_trace(trace_mul(g[i].m, g[k].m), x.p));
            out.push_back(translation_length_from_trace(trace_mul_inv(g[i].m, g[k].m), x.p));
        }
    return out;
}

TrackedTuple apply_replacement(const TrackedTuple& x, const ReplacementSpec& r) {
    validate_spec(x, r);
    TrackedTuple y = x;
    TrackedElement pivot = y.elems[r.j - 1];
    TrackedElement pivot_inv = tracked_inv(pivot);
    std::vector<char> s1(x.n() + 1, 0), s2(x.n() + 1, 0);
    for (int i : r.s1) s1[i] = 1;
    for (int i : r.s2) s2[i] = 1;
    for (int i = 1; i <= x.n(); ++i) {
        if (!s1[i] && !s2[i]) continue;
        TrackedElement e = y.elems[i - 1];
        if (s1[i]) e = tracked_mul(pivot, e);
        if (s2[i]) e = tracked_mul(e, pivot_inv);
        y.elems[i - 1] = std::move(e);
    }
    return y;
}

std::optional<std::pair<ReplacementSpec, long>> find_improving_move(const TrackedTuple& x) {
    auto g = isometries_of(x);
    LengthTable t = build_table(g, x.p);
    auto found = first_improving(g, x.p, t);
    if (!found) return std::nullopt;
    return std::make_pair(to_public(found->first, non_pivot(t.n, found->first.j)), found->second);
}

bool is_minimal(const TrackedTuple& x) { return !find_improving_move(x).has_value(); }

Certificate decide(const std::vector<Mat2>& generators, long p) {
    TrackedTuple x = make_tracked_tuple(generators, p);
    auto g = isometries_of(x);
    LengthTable t = build_table(g, p);

    Certificate cert;
    cert.initial_L = t.total;
    cert.trace.push_back({std::nullopt, t.total});

    // Only indices modified by the last replacement need re-checking for
    // ellipticity; on first entry that is all of them.
    std::vector<int> to_check(x.n());
    for (int i = 0; i < x.n(); ++i) to_check[i] = i;

    while (true) {
        for (int i : to_check) {
            if (g[i].elliptic()) {
                cert.free_discrete = false;
                cert.witness = x.elems[i];
                return cert;
            }
        }
        auto found = first_improving(g, p, t);
        if (!found) break;
        const auto& [raw, newL] = *found;
        check(newL < t.total, "descent: accepted move does not decrease L");
        std::vector<int> others = non_pivot(t.n, raw.j);
        to_check = apply_raw(x, raw, others);
        g = isometries_of(x);
        refresh_table(t, g, p, to_check);
        check(t.total == newL, "descent: table out of sync with candidate evaluation");
        cert.trace.push_back({to_public(raw, others), newL});
        ++cert.iterations;
        check(cert.iterations <= cert.initial_L, "descent: iteration bound exceeded");
    }

    cert.free_discrete = true;
    cert.final_tuple = std::move(x);
    return cert;
}

}  // namespace arbor
