#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bfc {

using Rational = mpq_class;
using BigInt = mpz_class;

inline double to_double(const Rational& q) { return q.get_d(); }

// Accepts "p/q", integers, and plain decimals ("0.75" -> 3/4).
std::optional<Rational> parse_rational(const std::string& text);

// True when the literal carries a decimal point or exponent; exact-mode
// front ends reject those and ask for fractions instead.
bool is_decimal_literal(const std::string& text);

// Exact dyadic conversion; every finite double is a rational.
Rational rational_from_double(double x);

// Scales v by the lcm of denominators; returns integer multipliers.
std::vector<BigInt> scale_to_integers(const std::vector<Rational>& v);

// Fits a BigInt into int64, or nullopt on overflow.
std::optional<int64_t> to_int64(const BigInt& z);

Rational dot(const std::vector<Rational>& w, uint32_t point_mask, int n);

Rational norm_sq(const std::vector<Rational>& w);

std::string rational_str(const Rational& q);

}  // namespace bfc
