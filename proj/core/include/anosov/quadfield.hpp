#pragma once

// Exact arithmetic in the real quadratic field Q(sqrt(disc)).
//
// Every coordinate the partition machinery touches (eigen coordinates of
// rational points, cell edges, images under the map) is of the form
// (a + b*sqrt(disc)) / den with integer a, b, den.  Keeping that form exact
// is what makes interior-disjointness, boundary invariance and the
// transition matrix decidable instead of tolerance-based.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <cmath>
#include <string>

#include "anosov/errors.hpp"

namespace anosov {

using BigInt = boost::multiprecision::cpp_int;

/// Value (a + b*sqrt(disc)) / den with den > 0 and gcd(a, b, den) = 1.
/// disc must be a positive non-square integer shared by all operands of any
/// binary operation; a zero value carries disc = 0 and mixes with anything.
class QuadVal {
  public:
    QuadVal() : a_(0), b_(0), den_(1), disc_(0) {}

    static QuadVal rational(BigInt num, BigInt den) {
        QuadVal v;
        v.a_ = std::move(num);
        v.den_ = std::move(den);
        v.normalize();
        return v;
    }

    static QuadVal integer(long long n) { return rational(BigInt(n), 1); }

    /// Exact embedding of a finite double (every double is a dyadic rational).
    static QuadVal from_double(double x);

    static QuadVal make(BigInt a, BigInt b, BigInt den, std::int64_t disc) {
        QuadVal v;
        v.a_ = std::move(a);
        v.b_ = std::move(b);
        v.den_ = std::move(den);
        v.disc_ = disc;
        v.normalize();
        return v;
    }

    /// sqrt(disc) itself.
    static QuadVal root(std::int64_t disc) { return make(0, 1, 1, disc); }

    const BigInt& num_rat() const { return a_; }
    const BigInt& num_irr() const { return b_; }
    const BigInt& den() const { return den_; }
    std::int64_t disc() const { return disc_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    int sign() const;
    double to_double() const;

    QuadVal operator-() const {
        QuadVal v(*this);
        v.a_ = -v.a_;
        v.b_ = -v.b_;
        return v;
    }

    friend QuadVal operator+(const QuadVal& x, const QuadVal& y);
    friend QuadVal operator-(const QuadVal& x, const QuadVal& y) { return x + (-y); }
    friend QuadVal operator*(const QuadVal& x, const QuadVal& y);

    friend bool operator==(const QuadVal& x, const QuadVal& y) { return (x - y).is_zero(); }
    friend bool operator!=(const QuadVal& x, const QuadVal& y) { return !(x == y); }
    friend bool operator<(const QuadVal& x, const QuadVal& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadVal& x, const QuadVal& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QuadVal& x, const QuadVal& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QuadVal& x, const QuadVal& y) { return (x - y).sign() >= 0; }

    QuadVal& operator+=(const QuadVal& y) { return *this = *this + y; }
    QuadVal& operator-=(const QuadVal& y) { return *this = *this - y; }
    QuadVal& operator*=(const QuadVal& y) { return *this = *this * y; }

    /// Exact division by a nonzero rational p/q.
    QuadVal div_rational(const BigInt& p, const BigInt& q) const;

    QuadVal abs() const { return sign() < 0 ? -*this : *this; }

    std::string str() const;  // "a,b,den" exact decimal triple
    static QuadVal parse(const std::string& triple, std::int64_t disc);

  private:
    void normalize();
    static std::int64_t join_disc(const QuadVal& x, const QuadVal& y);

    BigInt a_, b_, den_;
    std::int64_t disc_;
};

inline QuadVal min(const QuadVal& x, const QuadVal& y) { return x <= y ? x : y; }
inline QuadVal max(const QuadVal& x, const QuadVal& y) { return x >= y ? x : y; }

/// Point or vector of R^2 with exact field coordinates.
struct QuadVec {
    QuadVal x, y;

    friend QuadVec operator+(const QuadVec& p, const QuadVec& q) { return {p.x + q.x, p.y + q.y}; }
    friend QuadVec operator-(const QuadVec& p, const QuadVec& q) { return {p.x - q.x, p.y - q.y}; }
    friend QuadVec operator*(const QuadVal& t, const QuadVec& p) { return {t * p.x, t * p.y}; }
    friend bool operator==(const QuadVec& p, const QuadVec& q) { return p.x == q.x && p.y == q.y; }
};

/// Closed interval [lo, hi] of field values, lo <= hi.
struct QuadInterval {
    QuadVal lo, hi;

    QuadVal length() const { return hi - lo; }
    bool contains(const QuadVal& t, bool open) const {
        return open ? (t > lo && t < hi) : (t >= lo && t <= hi);
    }
    bool subset_of(const QuadInterval& other) const { return lo >= other.lo && hi <= other.hi; }
    /// Overlap with positive length.
    bool overlaps_open(const QuadInterval& other) const {
        return max(lo, other.lo) < min(hi, other.hi);
    }
    /// Overlap allowing a single shared endpoint.
    bool overlaps_closed(const QuadInterval& other) const {
        return max(lo, other.lo) <= min(hi, other.hi);
    }
};

inline QuadInterval intersect(const QuadInterval& a, const QuadInterval& b) {
    return {max(a.lo, b.lo), min(a.hi, b.hi)};
}

}  // namespace anosov
