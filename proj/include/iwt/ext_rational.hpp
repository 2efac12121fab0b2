#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace iwt {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
std::string to_string(const Rational& q);
// Parses "a", "a/b" (b may be negative); throws std::invalid_argument.
Rational parse_rational(const std::string& s);
BigInt floor_of(const Rational& q);

// A valuation value: a finite rational, +infinity, or a lower bound ">= b"
// produced when an element vanishes at working precision.
class ExtRational {
public:
    enum class Kind : std::uint8_t { Finite, Infinite, AtLeast };

    ExtRational() : kind_(Kind::Infinite) {}
    ExtRational(const Rational& q) : kind_(Kind::Finite), value_(q) {}  // NOLINT
    ExtRational(std::int64_t n) : kind_(Kind::Finite), value_(n) {}     // NOLINT
    ExtRational(int n) : kind_(Kind::Finite), value_(n) {}              // NOLINT

    static ExtRational infinity() { return ExtRational(); }
    static ExtRational at_least(const Rational& bound) {
        ExtRational r;
        r.kind_ = Kind::AtLeast;
        r.value_ = bound;
        return r;
    }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_lower_bound() const { return kind_ == Kind::AtLeast; }
    // The rational value (finite) or the bound (AtLeast). Throws on infinity.
    const Rational& value() const;

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator-(const ExtRational& a, const Rational& b);
    friend ExtRational operator*(const ExtRational& a, const Rational& b);
    friend ExtRational min(const ExtRational& a, const ExtRational& b);

    // Structural equality (kind and value).
    friend bool operator==(const ExtRational& a, const ExtRational& b);

    // Certain strict comparison: true only when a < b holds for every value
    // consistent with the operands.
    friend bool certainly_less(const ExtRational& a, const ExtRational& b);

    std::string str() const;

private:
    Kind kind_;
    Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtRational& x);

// 2x2 matrix of valuations under min-plus multiplication.
class ValMatrix {
public:
    ValMatrix() = default;
    ValMatrix(ExtRational a, ExtRational b, ExtRational c, ExtRational d) : e_{a, b, c, d} {}

    static ValMatrix identity() { return ValMatrix(0, ExtRational::infinity(), ExtRational::infinity(), 0); }

    const ExtRational& operator()(int i, int j) const { return e_[2 * i + j]; }
    ExtRational& operator()(int i, int j) { return e_[2 * i + j]; }

    // Minimum of the four entries.
    ExtRational val() const;

    friend bool operator==(const ValMatrix& a, const ValMatrix& b) { return a.e_ == b.e_; }
    std::string str() const;

private:
    std::array<ExtRational, 4> e_{};
};

// Entry (i,k) = min_j (A(i,j) + B(j,k)).
ValMatrix tropical_mul(const ValMatrix& a, const ValMatrix& b);

std::ostream& operator<<(std::ostream& os, const ValMatrix& m);

}  // namespace iwt
