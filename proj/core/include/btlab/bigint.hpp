#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace btlab
{
    // Exact arithmetic everywhere instances are involved: capacities must be
    // able to dwarf 3^n, so no fixed-width type survives parameter changes.
    using BigInt = boost::multiprecision::cpp_int;
    using Rational = boost::multiprecision::cpp_rational;

    auto pow3(unsigned exponent) -> BigInt;

    // Strict decimal integer: optional minus sign, then digits.
    auto parse_decimal(const std::string & text) -> BigInt;
    auto to_decimal(const BigInt & value) -> std::string;

    // Exact fraction "p/q" or plain integer "p". Floats are rejected so that
    // divisibility checks stay exact.
    auto parse_fraction(const std::string & text) -> Rational;
    auto to_fraction(const Rational & value) -> std::string;

    auto floor_rational(const Rational & value) -> BigInt;
    auto ceil_rational(const Rational & value) -> BigInt;
    auto is_integer(const Rational & value) -> bool;

    auto binomial(unsigned n, unsigned k) -> BigInt;
}
