#include "iwt/ext_rational.hpp"

#include <ostream>
#include <stdexcept>

#include "iwt/errors.hpp"

namespace iwt {

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    auto parse_int = [](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("empty integer");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("bad integer: " + t);
        for (std::size_t k = i; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9') throw std::invalid_argument("bad integer: " + t);
        return BigInt(t[0] == '+' ? t.substr(1) : t);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
}

BigInt floor_of(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt f = n / d;
    if (n < 0 && f * d != n) f -= 1;
    return f;
}

const Rational& ExtRational::value() const {
    if (kind_ == Kind::Infinite) throw InvalidParams("value() of infinity");
    return value_;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite() || b.is_infinite()) return ExtRational::infinity();
    if (a.is_lower_bound() || b.is_lower_bound()) return ExtRational::at_least(a.value_ + b.value_);
    return ExtRational(a.value_ + b.value_);
}

ExtRational operator-(const ExtRational& a, const Rational& b) { return a + ExtRational(Rational(-b)); }

ExtRational operator*(const ExtRational& a, const Rational& b) {
    if (b < 0) throw InvalidParams("ExtRational scaled by a negative rational");
    if (a.is_infinite()) return b == 0 ? ExtRational(0) : a;
    ExtRational r = a;
    r.value_ = a.value_ * b;
    return r;
}

ExtRational min(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite()) return b;
    if (b.is_infinite()) return a;
    if (a.is_finite() && b.is_finite()) return a.value_ <= b.value_ ? a : b;
    if (a.is_lower_bound() && b.is_lower_bound()) return a.value_ <= b.value_ ? a : b;
    const ExtRational& fin = a.is_finite() ? a : b;
    const ExtRational& low = a.is_finite() ? b : a;
    if (fin.value_ < low.value_) return fin;
    return ExtRational::at_least(low.value_);
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    return a.is_infinite() || a.value_ == b.value_;
}

bool certainly_less(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite()) return false;
    if (a.is_lower_bound()) return false;
    if (b.is_infinite()) return true;
    return a.value_ < b.value_ || (b.is_lower_bound() && a.value_ < b.value_);
}

std::string ExtRational::str() const {
    switch (kind_) {
        case Kind::Infinite: return "inf";
        case Kind::AtLeast: return ">=" + to_string(value_);
        default: return to_string(value_);
    }
}

std::ostream& operator<<(std::ostream& os, const ExtRational& x) { return os << x.str(); }

ExtRational ValMatrix::val() const {
    ExtRational m = e_[0];
    for (int i = 1; i < 4; ++i) m = min(m, e_[i]);
    return m;
}

std::string ValMatrix::str() const {
    return "[[" + e_[0].str() + "," + e_[1].str() + "],[" + e_[2].str() + "," + e_[3].str() + "]]";
}

ValMatrix tropical_mul(const ValMatrix& a, const ValMatrix& b) {
    ValMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) r(i, k) = min(a(i, 0) + b(0, k), a(i, 1) + b(1, k));
    return r;
}

std::ostream& operator<<(std::ostream& os, const ValMatrix& m) { return os << m.str(); }

}  // namespace iwt
