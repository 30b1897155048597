#pragma once

#include <arbor/mat2.hpp>

#include <vector>

namespace arbor {

// l(A) = -2 min{0, v_p(tr A)} for A in SL2(Q_p) acting on the Bruhat-Tits
// tree T_p. Always even and >= 0; zero exactly for elliptic elements.
inline long translation_length_from_trace(const Rational& tr, long p) {
    return -2 * vp_min_zero(tr, p);
}

inline long translation_length(const Mat2& m, long p) {
    return translation_length_from_trace(trace(m), p);
}

// A determinant-1 matrix bound to a prime p, with its translation length
// cached at construction: the descent reads lengths O(n^2) times per
// candidate and n*4^{n-1} candidates per pivot.
struct Isometry {
    Mat2 m;
    long p = 2;
    long len = 0;

    Isometry() : m(Mat2::identity()) {}
    Isometry(Mat2 mat, long prime) : m(std::move(mat)), p(prime) {
        if (det(m) != 1) throw std::invalid_argument("isometry: determinant is not 1");
        len = translation_length(m, p);
    }

    bool elliptic() const { return len == 0; }
    bool hyperbolic() const { return len > 0; }

    friend Isometry operator*(const Isometry& x, const Isometry& y) {
        if (x.p != y.p) throw std::invalid_argument("isometry: mixed primes");
        return Isometry(x.m * y.m, x.p);
    }
};

inline Isometry inverse(const Isometry& g) { return Isometry(mat_inv(g.m), g.p); }

// A word in the original generators: signed 1-based indices, +i for h_i and
// -i for h_i^{-1}. Stored freely reduced.
using Word = std::vector<int>;

inline void word_push_reduced(Word& w, int letter) {
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}

inline Word word_concat(const Word& x, const Word& y) {
    Word r = x;
    for (int letter : y) word_push_reduced(r, letter);
    return r;
}

inline Word word_inverse(const Word& w) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
    return r;
}

inline bool word_is_reduced(const Word& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == -w[i + 1]) return false;
    return true;
}

// Evaluate a word over the original generator matrices.
inline Mat2 evaluate_word(const Word& w, const std::vector<Mat2>& gens) {
    Mat2 acc = Mat2::identity();
    for (int letter : w) {
        int i = letter > 0 ? letter : -letter;
        if (i < 1 || static_cast<size_t>(i) > gens.size())
            throw std::invalid_argument("word letter out of range");
        acc = letter > 0 ? acc * gens[i - 1] : acc * mat_inv(gens[i - 1]);
    }
    return acc;
}

// An isometry carrying its expression in the input generators. The word
// always evaluates back to the matrix exactly; this is what turns an
// elliptic element found mid-descent into a witness.
struct TrackedElement {
    Isometry iso;
    Word word;
};

inline TrackedElement tracked_mul(const TrackedElement& x, const TrackedElement& y) {
    return {x.iso * y.iso, word_concat(x.word, y.word)};
}

inline TrackedElement tracked_inv(const TrackedElement& x) {
    return {inverse(x.iso), word_inverse(x.word)};
}

}  // namespace arbor
