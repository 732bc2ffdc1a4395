#pragma once

#include "decide/core.hpp"

namespace fixtures {

using decide::DecisionProblem;
using decide::Matrix;

// a is best in s0, b in s1, each by one unit.
inline DecisionProblem<double> p1() {
    Matrix<double> w(2, 2);
    w << 1, 0,
         0, 1;
    return DecisionProblem<double>({"a", "b"}, {"s0", "s1"}, w);
}

// a dominates b.
inline DecisionProblem<double> p2() {
    Matrix<double> w(2, 2);
    w << 2, 2,
         1, 1;
    return DecisionProblem<double>({"a", "b"}, {"s0", "s1"}, w);
}

// Asymmetric version of p1: b's advantage in s1 is twice a's in s0.
inline DecisionProblem<double> p3() {
    Matrix<double> w(2, 2);
    w << 1, 0,
         0, 2;
    return DecisionProblem<double>({"a", "b"}, {"s0", "s1"}, w);
}

// Both minima attained in s1, with a's minimum larger.
inline DecisionProblem<double> p4() {
    Matrix<double> w(2, 2);
    w << 3, 1,
         2, 0;
    return DecisionProblem<double>({"a", "b"}, {"s0", "s1"}, w);
}

// Three states in which neither corner pair (alpha_L, beta_U) nor
// (alpha_U, beta_L) is realized.
inline DecisionProblem<double> non_rectangular() {
    Matrix<double> w(2, 3);
    w << 1.0, 0.0, 0.9,
         0.8, 0.5, 0.0;
    return DecisionProblem<double>({"a", "b"}, {"s0", "s1", "s2"}, w);
}

} // namespace fixtures
