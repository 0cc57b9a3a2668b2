#include "triperi/scalar.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <utility>

namespace triperi {

namespace {

namespace mp = boost::multiprecision;

BigInt parse_integer_token(std::string_view text, std::string_view original) {
    if (text.empty()) {
        throw DomainError("empty numeric literal in '" + std::string(original) + "'");
    }
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        ++i;
    }
    if (i == text.size()) {
        throw DomainError("sign without digits in '" + std::string(original) + "'");
    }
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] < '0' || text[k] > '9') {
            throw DomainError("invalid digit in numeric literal '" + std::string(original) + "'");
        }
    }
    return BigInt(std::string(text));
}

double parse_double_token(std::string_view text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw DomainError("invalid float literal '" + std::string(text) + "'");
    }
    return value;
}

BigInt pow10(std::size_t k) {
    BigInt r = 1;
    for (std::size_t i = 0; i < k; ++i) {
        r *= 10;
    }
    return r;
}

} // namespace

Scalar Scalar::from_int(long long v) {
    return Scalar(NumericMode::Exact, BigInt(v), BigInt(1), 0.0);
}

Scalar Scalar::from_ratio(BigInt numerator, BigInt denominator) {
    if (denominator == 0) {
        throw DomainError("rational with zero denominator");
    }
    Scalar s(NumericMode::Exact, std::move(numerator), std::move(denominator), 0.0);
    s.reduce_and_check();
    return s;
}

Scalar Scalar::from_double(double v) {
    if (!std::isfinite(v)) {
        throw DomainError("non-finite float value rejected");
    }
    return Scalar(NumericMode::Float, BigInt(0), BigInt(1), v);
}

Scalar Scalar::zero(NumericMode mode) {
    return mode == NumericMode::Exact ? Scalar() : from_double(0.0);
}

Scalar Scalar::one(NumericMode mode) {
    return mode == NumericMode::Exact ? from_int(1) : from_double(1.0);
}

Scalar Scalar::parse(std::string_view text, NumericMode mode) {
    if (text.empty()) {
        throw DomainError("empty numeric literal");
    }
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        BigInt num = parse_integer_token(text.substr(0, slash), text);
        BigInt den = parse_integer_token(text.substr(slash + 1), text);
        Scalar exact = from_ratio(std::move(num), std::move(den));
        return mode == NumericMode::Exact ? exact : from_double(exact.as_double());
    }
    const auto dot = text.find('.');
    const bool has_exponent =
        text.find_first_of("eE") != std::string_view::npos;
    if (mode == NumericMode::Float) {
        return from_double(parse_double_token(text));
    }
    if (has_exponent) {
        throw DomainError("exponent notation not accepted in exact mode: '" +
                          std::string(text) + "'");
    }
    if (dot == std::string_view::npos) {
        return from_ratio(parse_integer_token(text, text), BigInt(1));
    }
    // Decimal literal converts exactly: int.frac -> (int*10^k + frac) / 10^k.
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.empty()) {
        throw DomainError("decimal literal missing fractional digits: '" +
                          std::string(text) + "'");
    }
    for (char c : frac_part) {
        if (c < '0' || c > '9') {
            throw DomainError("invalid digit in decimal literal '" + std::string(text) + "'");
        }
    }
    bool negative = false;
    if (!int_part.empty() && (int_part[0] == '+' || int_part[0] == '-')) {
        negative = int_part[0] == '-';
        int_part.remove_prefix(1);
    }
    BigInt whole = int_part.empty() ? BigInt(0) : parse_integer_token(int_part, text);
    BigInt scale = pow10(frac_part.size());
    BigInt num = whole * scale + BigInt(std::string(frac_part));
    if (negative) {
        num = -num;
    }
    return from_ratio(std::move(num), std::move(scale));
}

const BigInt& Scalar::numerator() const {
    if (!is_exact()) {
        throw DomainError("numerator() requires exact mode");
    }
    return num_;
}

const BigInt& Scalar::denominator() const {
    if (!is_exact()) {
        throw DomainError("denominator() requires exact mode");
    }
    return den_;
}

double Scalar::as_double() const {
    if (!is_exact()) {
        return value_;
    }
    return mp::cpp_rational(num_, den_).convert_to<double>();
}

bool Scalar::is_zero() const {
    return is_exact() ? num_ == 0 : value_ == 0.0;
}

bool Scalar::is_negative() const {
    return is_exact() ? num_ < 0 : value_ < 0.0;
}

bool Scalar::is_positive() const {
    return is_exact() ? num_ > 0 : value_ > 0.0;
}

Scalar Scalar::abs() const {
    if (is_exact()) {
        return Scalar(NumericMode::Exact, mp::abs(num_), den_, 0.0);
    }
    return from_double(std::fabs(value_));
}

Scalar Scalar::pow(std::uint64_t exponent) const {
    if (!is_exact()) {
        double r = std::pow(value_, static_cast<double>(exponent));
        if (!std::isfinite(r)) {
            throw CapacityError("float pow overflowed to non-finite");
        }
        return from_double(r);
    }
    if (exponent > 100000) {
        throw CapacityError("exponent too large for exact pow");
    }
    BigInt n = mp::pow(num_, static_cast<unsigned>(exponent));
    BigInt d = mp::pow(den_, static_cast<unsigned>(exponent));
    return from_ratio(std::move(n), std::move(d));
}

void Scalar::reduce_and_check() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
    } else {
        BigInt g = mp::gcd(mp::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }
    if (num_ != 0 && mp::msb(mp::abs(num_)) >= kCapacityBits) {
        throw CapacityError("exact numerator exceeds checked width");
    }
    if (mp::msb(den_) >= kCapacityBits) {
        throw CapacityError("exact denominator exceeds checked width");
    }
}

namespace {

Scalar float_result(double v) {
    if (!std::isfinite(v)) {
        throw CapacityError("float operation produced non-finite value");
    }
    return Scalar::from_double(v);
}

} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        return Scalar::from_ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    return float_result(a.as_double() + b.as_double());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        return Scalar::from_ratio(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    return float_result(a.as_double() - b.as_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        return Scalar::from_ratio(a.num_ * b.num_, a.den_ * b.den_);
    }
    return float_result(a.as_double() * b.as_double());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) {
        throw DomainError("division by zero");
    }
    if (a.is_exact() && b.is_exact()) {
        return Scalar::from_ratio(a.num_ * b.den_, a.den_ * b.num_);
    }
    return float_result(a.as_double() / b.as_double());
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    return a.as_double() == b.as_double();
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
        // Cross products at arbitrary precision: comparison never overflows.
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    return a.as_double() < b.as_double();
}

std::string Scalar::str() const {
    if (is_exact()) {
        if (den_ == 1) {
            return num_.str();
        }
        return num_.str() + "/" + den_.str();
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
    if (ec != std::errc()) {
        throw Error("float rendering failed");
    }
    return std::string(buf, ptr);
}

bool approx_equal(const Scalar& a, const Scalar& b, const FloatTolerance& tol) {
    if (a.is_exact() && b.is_exact()) {
        return a == b;
    }
    const double x = a.as_double();
    const double y = b.as_double();
    const double scale = std::max(std::fabs(x), std::fabs(y));
    return std::fabs(x - y) <= tol.absolute + tol.relative * scale;
}

bool approx_leq(const Scalar& a, const Scalar& b, const FloatTolerance& tol) {
    if (a.is_exact() && b.is_exact()) {
        return a <= b;
    }
    const double x = a.as_double();
    const double y = b.as_double();
    const double scale = std::max(std::fabs(x), std::fabs(y));
    return x <= y + tol.absolute + tol.relative * scale;
}

} // namespace triperi
