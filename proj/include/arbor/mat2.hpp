#pragma once

#include <arbor/rational.hpp>

namespace arbor {

// 2x2 rational matrix [[a,b],[c,d]]. Determinant-1 is enforced at the
// isometry layer, not here. Entries are global rational objects; nothing is
// ever normalized modulo p-powers.
struct Mat2 {
    Rational a, b, c, d;

    friend bool operator==(const Mat2&, const Mat2&) = default;

    static Mat2 identity() { return {1, 0, 0, 1}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

inline Rational trace(const Mat2& m) { return m.a + m.d; }
inline Rational det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

// Inverse of a determinant-1 matrix (the adjugate).
inline Mat2 mat_inv(const Mat2& m) {
    if (det(m) != 1) throw std::invalid_argument("mat_inv: determinant is not 1");
    return {m.d, -m.b, -m.c, m.a};
}

// tr(x*y) without forming the product.
inline Rational trace_mul(const Mat2& x, const Mat2& y) {
    return x.a * y.a + x.b * y.c + x.c * y.b + x.d * y.d;
}

// tr(x*y^{-1}) for det(y) = 1, via the adjugate.
inline Rational trace_mul_inv(const Mat2& x, const Mat2& y) {
    return x.a * y.d - x.b * y.c - x.c * y.b + x.d * y.a;
}

}  // namespace arbor
