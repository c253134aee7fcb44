#include "anosov/quadfield.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace anosov {

namespace {
using Dec = boost::multiprecision::cpp_dec_float_100;
}

void QuadVal::normalize() {
    if (den_ == 0) throw Error("QuadVal: zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        a_ = -a_;
        b_ = -b_;
    }
    if (b_ == 0) disc_ = 0;
    BigInt g = boost::multiprecision::gcd(
        boost::multiprecision::gcd(boost::multiprecision::abs(a_), boost::multiprecision::abs(b_)),
        den_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        den_ /= g;
    }
}

std::int64_t QuadVal::join_disc(const QuadVal& x, const QuadVal& y) {
    if (x.disc_ == 0) return y.disc_;
    if (y.disc_ == 0) return x.disc_;
    if (x.disc_ != y.disc_) throw Error("QuadVal: mixed field discriminants");
    return x.disc_;
}

QuadVal QuadVal::from_double(double x) {
    if (!std::isfinite(x)) throw Error("QuadVal: non-finite double");
    if (x == 0.0) return QuadVal();
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [1/2, 1)
    auto mantissa = static_cast<long long>(std::ldexp(m, 53));
    int e2 = exp - 53;
    QuadVal v;
    v.a_ = mantissa;
    v.den_ = 1;
    if (e2 >= 0) {
        v.a_ <<= e2;
    } else {
        v.den_ <<= -e2;
    }
    v.normalize();
    return v;
}

int QuadVal::sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 against b^2 * disc
    BigInt lhs = a_ * a_;
    BigInt rhs = b_ * b_ * disc_;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
}

double QuadVal::to_double() const {
    const long double a = a_.convert_to<long double>();
    const long double den = den_.convert_to<long double>();
    if (b_ == 0) return static_cast<double>(a / den);
    const long double b = b_.convert_to<long double>() *
                          sqrtl(static_cast<long double>(disc_));
    const long double sum = a + b;
    // fast path unless the two terms cancel by more than ~3 digits
    if (fabsl(sum) > 1e-3L * (fabsl(a) + fabsl(b))) return static_cast<double>(sum / den);
    const Dec r = sqrt(Dec(disc_));
    const Dec v = (Dec(a_) + Dec(b_) * r) / Dec(den_);
    return static_cast<double>(v);
}

QuadVal operator+(const QuadVal& x, const QuadVal& y) {
    QuadVal v;
    v.disc_ = QuadVal::join_disc(x, y);
    v.a_ = x.a_ * y.den_ + y.a_ * x.den_;
    v.b_ = x.b_ * y.den_ + y.b_ * x.den_;
    v.den_ = x.den_ * y.den_;
    v.normalize();
    return v;
}

QuadVal operator*(const QuadVal& x, const QuadVal& y) {
    QuadVal v;
    std::int64_t d = QuadVal::join_disc(x, y);
    v.disc_ = d;
    v.a_ = x.a_ * y.a_ + x.b_ * y.b_ * d;
    v.b_ = x.a_ * y.b_ + x.b_ * y.a_;
    v.den_ = x.den_ * y.den_;
    v.normalize();
    return v;
}

QuadVal QuadVal::div_rational(const BigInt& p, const BigInt& q) const {
    if (p == 0) throw Error("QuadVal: division by zero");
    QuadVal v(*this);
    v.a_ *= q;
    v.b_ *= q;
    v.den_ *= p;
    v.normalize();
    return v;
}

std::string QuadVal::str() const {
    return a_.str() + "," + b_.str() + "," + den_.str();
}

QuadVal QuadVal::parse(const std::string& triple, std::int64_t disc) {
    const auto c1 = triple.find(',');
    const auto c2 = triple.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw Error("QuadVal::parse: expected 'a,b,den'");
    return make(BigInt(triple.substr(0, c1)), BigInt(triple.substr(c1 + 1, c2 - c1 - 1)),
                BigInt(triple.substr(c2 + 1)), disc);
}

}  // namespace anosov
