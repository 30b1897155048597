#pragma once

#include <arbor/descent.hpp>

#include <vector>

// Two worked tuples with known behavior, used across the suites.
//
// q5_triple: three hyperbolic elements over Q_5, each of translation
// length 2. The union of the projections of the first two axes onto the
// third spans a subpath of length 2 = l(g3), so the triple fails the
// ping-pong criterion, yet no replacement reduces the plain sum of the
// three translation lengths.
//
// q7_quintuple: five hyperbolic elements over Q_7 with lengths
// (4,4,4,4,2) and L = 146. No single replacement and no one-sided subset
// replacement improves L, but the two-sided family with pivot 5,
// S1 = {1,3}, S2 = {3} lowers it to 144.
namespace fixtures {

inline arbor::Mat2 m(const char* a, const char* b, const char* c, const char* d) {
    return {arbor::parse_rational(a), arbor::parse_rational(b), arbor::parse_rational(c),
            arbor::parse_rational(d)};
}

inline std::vector<arbor::Mat2> q5_triple() {
    return {m("1/5", "-1/5", "-1/5", "26/5"), m("-1", "1", "-1/5", "-4/5"),
            m("5", "0", "0", "1/5")};
}

inline constexpr long q5_prime = 5;

inline std::vector<arbor::Mat2> q7_quintuple() {
    return {m("129/49", "-178/49", "6/49", "31/147"), m("-688/49", "-1/7", "1031/49", "1/7"),
            m("-1/49", "-3/49", "2", "-43"), m("9/7", "-25/21", "-60/49", "281/147"),
            m("7", "7", "-3/7", "-2/7")};
}

inline constexpr long q7_prime = 7;

}  // namespace fixtures
