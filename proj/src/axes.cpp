#include <arbor/axes.hpp>

#include <algorithm>
#include <cstdlib>

namespace arbor {

AxisRelation classify_from_lengths(long l1, long l2, long l_prod, long l_prod_inv) {
    if (l1 <= 0 || l2 <= 0) throw std::invalid_argument("classify: non-hyperbolic lengths");
    const long sum = l1 + l2;
    const long gap = std::labs(l1 - l2);
    const long s = std::min(l_prod, l_prod_inv);
    const long m = std::max(l_prod, l_prod_inv);

    if (l_prod == l_prod_inv) {
        // Orientation cannot matter: the axes share at most one vertex.
        if (s > sum) {
            if ((s - sum) % 2 != 0) throw InconsistentLengths(l1, l2, l_prod, l_prod_inv);
            AxisRelation r;
            r.kind = AxisKind::Disjoint;
            r.d = (s - sum) / 2;
            return r;
        }
        if (s == sum) return {AxisKind::TouchPoint};
        throw InconsistentLengths(l1, l2, l_prod, l_prod_inv);
    }

    // A proper overlap orients one of the two products the same way as the
    // axes, and that product has length exactly l1 + l2.
    if (m != sum) throw InconsistentLengths(l1, l2, l_prod, l_prod_inv);
    if (s > gap) {
        if ((sum - s) % 2 != 0) throw InconsistentLengths(l1, l2, l_prod, l_prod_inv);
        AxisRelation r;
        r.kind = AxisKind::Overlap;
        r.delta = (sum - s) / 2;
        r.same_orientation = (l_prod == m);
        return r;
    }
    AxisRelation r;
    r.kind = AxisKind::LargeOverlap;
    r.delta_lower_bound = std::min(l1, l2);
    return r;
}

AxisRelation classify_pair(const Isometry& g1, const Isometry& g2) {
    if (g1.p != g2.p) throw std::invalid_argument("classify_pair: mixed primes");
    if (!g1.hyperbolic() || !g2.hyperbolic())
        throw std::invalid_argument("classify_pair: both isometries must be hyperbolic");
    long l_prod = translation_length_from_trace(trace_mul(g1.m, g2.m), g1.p);
    long l_prod_inv = translation_length_from_trace(trace_mul_inv(g1.m, g2.m), g1.p);
    return classify_from_lengths(g1.len, g2.len, l_prod, l_prod_inv);
}

bool pair_pingpong(const Isometry& g1, const Isometry& g2) {
    return classify_pair(g1, g2).kind != AxisKind::LargeOverlap;
}

long elliptic_product_prediction(const Isometry& g1, const Isometry& g2) {
    if (!g1.hyperbolic() || !g2.hyperbolic())
        throw std::invalid_argument("elliptic_product_prediction: factors must be hyperbolic");
    if (translation_length_from_trace(trace_mul(g1.m, g2.m), g1.p) != 0)
        throw std::invalid_argument("elliptic_product_prediction: product is not elliptic");
    return std::labs(g1.len - g2.len) / 2;
}

}  // namespace arbor
