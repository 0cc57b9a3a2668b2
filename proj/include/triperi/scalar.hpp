#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "triperi/errors.hpp"

namespace triperi {

using BigInt = boost::multiprecision::cpp_int;

enum class NumericMode { Exact, Float };

/// Tolerances used wherever float-mode values are compared for equality or
/// ordering with slack (betweenness, axiom checks, convergence, tie-breaks).
struct FloatTolerance {
    double relative = 1e-9;
    double absolute = 1e-12;
};

/// Two-mode number: an exact reduced rational, or a finite double.
///
/// Exact values are kept reduced with positive denominator. Intermediates are
/// computed at arbitrary precision, then the reduced result is checked against
/// a fixed capacity (|num|, den < 2^255); exceeding it raises CapacityError,
/// never a silent wraparound. Float values must be finite; NaN and infinity
/// are rejected on construction and on every operation result.
///
/// Mixing modes in arithmetic or comparison coerces the exact operand to
/// float. Same-mode operations stay in that mode.
class Scalar {
public:
    /// Reduced values must stay below 2^255 in magnitude.
    static constexpr unsigned kCapacityBits = 255;

    Scalar() : mode_(NumericMode::Exact), num_(0), den_(1) {}

    static Scalar from_int(long long v);
    static Scalar from_ratio(BigInt numerator, BigInt denominator);
    static Scalar from_double(double v);
    static Scalar zero(NumericMode mode);
    static Scalar one(NumericMode mode);

    /// Accepts an integer, a `num/den` rational, or a decimal literal.
    /// Float mode additionally accepts exponent notation.
    static Scalar parse(std::string_view text, NumericMode mode);

    NumericMode mode() const { return mode_; }
    bool is_exact() const { return mode_ == NumericMode::Exact; }

    const BigInt& numerator() const;
    const BigInt& denominator() const;
    double as_double() const;

    bool is_zero() const;
    bool is_negative() const;
    bool is_positive() const;

    Scalar abs() const;
    Scalar pow(std::uint64_t exponent) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

    /// Exact mode: `num/den` (plain integer when den == 1), never decimal.
    /// Float mode: shortest round-trip decimal.
    std::string str() const;

private:
    Scalar(NumericMode mode, BigInt num, BigInt den, double value)
        : mode_(mode), num_(std::move(num)), den_(std::move(den)), value_(value) {}

    void reduce_and_check();

    NumericMode mode_;
    BigInt num_; // exact payload, reduced, den_ > 0
    BigInt den_;
    double value_ = 0.0; // float payload
};

/// a == b with float slack: |a-b| <= abs + rel*max(|a|,|b|). Exact pairs
/// compare exactly.
bool approx_equal(const Scalar& a, const Scalar& b, const FloatTolerance& tol);

/// a <= b with float slack on the high side. Exact pairs compare exactly.
bool approx_leq(const Scalar& a, const Scalar& b, const FloatTolerance& tol);

} // namespace triperi
