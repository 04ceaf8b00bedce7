#pragma once

// Independent reference computations used only by tests. They share no code
// paths with the library beyond Rational and the plain data structures.

#include <map>
#include <tuple>
#include <vector>

#include "cdr/rational.hpp"

namespace oracle {

/// Dense product of two polynomials in (q, y) with integer exponents, double loop.
using Dense = std::map<std::pair<long, long>, long>;
Dense convolve(const Dense& a, const Dense& b, long q_max);

/// Coefficients of (1 - q)^{-2} up to q^n by repeated convolution of geometric series.
std::vector<long> inverse_square(long n);

/// Fiber character of a twisted Fock module by explicit enumeration of occupation numbers.
/// exponents m_i / order; returns {(weight ticks, charge offset) -> count}.
std::map<std::pair<long, long>, long> enumerate_character(const std::vector<int>& exponents, int order, long max_ticks);

/// One-line fiber trace of the graded bundle, formal in the line eigenvalue u:
/// {(q ticks, y, u exponent) -> coefficient}, with q measured in units of 1/den.
using LineTrace = std::map<std::tuple<long, long, long>, long>;
LineTrace line_trace(long lambda_num, long den, long q_max_ticks);

/// Equivariant Euler characteristic of T^{\otimes m} on P^1 for z -> a z, as
/// {exponent of a -> coefficient}, from the monomial bases of H^0 and H^1.
std::map<long, long> p1_euler_characteristic(long m);

/// h-trace of the Euler characteristic with a = zeta t: {(zeta power, t power) -> coefficient}
/// where zeta is a fixed root of unity of the given order.
std::map<std::pair<long, long>, long> p1_lefschetz(long m, long zeta_k, long zeta_order);

}  // namespace oracle
