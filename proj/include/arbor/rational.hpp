#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <gmp.h>

#include <limits>
#include <stdexcept>
#include <string>

namespace arbor {

// All arithmetic in the primary data path is exact. Int/Rational are
// GMP-backed; Rational is always stored reduced with positive denominator,
// and equality is structural.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline void check(bool cond, const char* msg) {
    if (!cond) throw std::logic_error(msg);
}

inline bool is_prime(long p) {
    if (p < 2) return false;
    Int n(p);
    return mpz_probab_prime_p(n.backend().data(), 32) != 0;
}

inline void require_prime(long p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
}

// p^e for e >= 0.
inline Int int_pow(long p, long e) {
    check(e >= 0, "int_pow: negative exponent");
    Int r;
    mpz_ui_pow_ui(r.backend().data(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

// p^e as a rational, e of either sign.
inline Rational rat_pow(long p, long e) {
    if (e >= 0) return Rational(int_pow(p, e));
    return Rational(1, int_pow(p, -e));
}

// The p-adic valuation, with v_p(0) = Infinity as a distinguished value
// (never an integer sentinel): it propagates correctly through
// min{0, v_p(tr)}, giving translation length 0 for trace-zero elements.
struct Valuation {
    bool infinite = false;
    long v = 0;

    static Valuation infinity() { return {true, 0}; }
    static Valuation finite(long v) { return {false, v}; }

    bool is_infinite() const { return infinite; }
    long value() const {
        check(!infinite, "Valuation: value() on Infinity");
        return v;
    }
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

// Multiplicity of p in a nonzero integer.
inline long vp_int(const Int& n, const Int& p) {
    check(n != 0, "vp_int: zero");
    Int r;
    unsigned long k = mpz_remove(r.backend().data(), n.backend().data(), p.backend().data());
    return static_cast<long>(k);
}

// v_p(x) = r where x = p^r a/b with p dividing neither a nor b.
inline Valuation vp(const Rational& x, long p) {
    if (x == 0) return Valuation::infinity();
    Int pp(p);
    long vnum = vp_int(numerator(x), pp);
    long vden = vp_int(denominator(x), pp);
    return Valuation::finite(vnum - vden);
}

// min{0, v_p(x)}; Infinity collapses to 0.
inline long vp_min_zero(const Rational& x, long p) {
    Valuation v = vp(x, p);
    if (v.is_infinite()) return 0;
    return v.value() < 0 ? v.value() : 0;
}

// "num/den" with the denominator omitted when 1, e.g. "-178/49", "5".
inline std::string format_rational(const Rational& x) {
    std::string s = numerator(x).str();
    if (denominator(x) != 1) s += "/" + denominator(x).str();
    return s;
}

inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    try {
        Rational r(s);
        // The mpq string constructor stores the literal as-is; reduce it so
        // equality stays structural.
        if (denominator(r) == 0) throw std::invalid_argument("zero denominator");
        mpq_canonicalize(r.backend().data());
        return r;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

}  // namespace arbor
