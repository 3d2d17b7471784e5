/**
 * Exact rational arithmetic for DoF values and half-plane regions.
 *
 * Every DoF quantity in this library is a half-integer; floating point
 * comparison would misclassify regime boundaries (e.g. the equality case of
 * the dominant-user test), so bound computations run on exact rationals.
 */
#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

#include <json.hpp>

namespace mimodof {

using Rational = boost::rational<long long>;

/// Exact DoF quantity; everything this library produces has denominator 1 or 2.
using DoFValue = Rational;

inline Rational half(long long n) { return Rational(n, 2); }

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline nlohmann::json rational_json(const Rational& r) {
    return nlohmann::json{{"num", r.numerator()}, {"den", r.denominator()}};
}

}  // namespace mimodof
