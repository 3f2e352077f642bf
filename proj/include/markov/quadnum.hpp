#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace markov {

// Exact element a + b*sqrt(2) of the quadratic field Q(sqrt 2).
//
// Both coefficients are arbitrary-precision rationals kept in canonical form
// (positive denominator, gcd 1), so equal values compare equal structurally.
// Values are immutable once built.
class QuadNum {
public:
    QuadNum() = default;
    QuadNum(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
    explicit QuadNum(mpq_class a, mpq_class b = 0);

    static QuadNum sqrt2() { return QuadNum(0, 1); }
    static QuadNum ratio(long num, long den);

    const mpq_class& rational_part() const noexcept { return a_; }
    const mpq_class& sqrt2_part() const noexcept { return b_; }

    bool is_rational() const noexcept { return sgn(b_) == 0; }
    bool is_zero() const noexcept { return sgn(a_) == 0 && sgn(b_) == 0; }

    // Sign of the real value, decided exactly.
    int sign() const;

    // Nearest float64; overflow saturates to +-infinity.
    double to_double() const;

    // Conjugate a - b*sqrt2 and field norm a^2 - 2b^2.
    QuadNum conjugate() const { return QuadNum(a_, -b_); }
    mpq_class norm() const { return a_ * a_ - 2 * b_ * b_; }

    // Textual form "a" or "a+b*sqrt2" / "a-b*sqrt2"; "b*sqrt2" when a = 0.
    std::string str() const;

    std::size_t hash() const;

    friend QuadNum operator+(const QuadNum& p, const QuadNum& q);
    friend QuadNum operator-(const QuadNum& p, const QuadNum& q);
    friend QuadNum operator*(const QuadNum& p, const QuadNum& q);
    // Throws division_by_zero when q == 0.
    friend QuadNum operator/(const QuadNum& p, const QuadNum& q);
    friend QuadNum operator-(const QuadNum& p);

    QuadNum& operator+=(const QuadNum& q) { return *this = *this + q; }
    QuadNum& operator-=(const QuadNum& q) { return *this = *this - q; }
    QuadNum& operator*=(const QuadNum& q) { return *this = *this * q; }
    QuadNum& operator/=(const QuadNum& q) { return *this = *this / q; }

    friend bool operator==(const QuadNum& p, const QuadNum& q) { return p.a_ == q.a_ && p.b_ == q.b_; }
    friend std::strong_ordering operator<=>(const QuadNum& p, const QuadNum& q);

private:
    mpq_class a_{0};
    mpq_class b_{0};
};

QuadNum abs(const QuadNum& q);
QuadNum min(const QuadNum& p, const QuadNum& q);
QuadNum max(const QuadNum& p, const QuadNum& q);

// Nonnegative integer power by repeated squaring.
QuadNum pow(const QuadNum& base, unsigned exponent);

std::ostream& operator<<(std::ostream& os, const QuadNum& q);

// Free-function spellings of the field operations.
inline QuadNum add(const QuadNum& p, const QuadNum& q) { return p + q; }
inline QuadNum sub(const QuadNum& p, const QuadNum& q) { return p - q; }
inline QuadNum mul(const QuadNum& p, const QuadNum& q) { return p * q; }
inline QuadNum div(const QuadNum& p, const QuadNum& q) { return p / q; }
inline int sign(const QuadNum& q) { return q.sign(); }
inline bool is_rational(const QuadNum& q) { return q.is_rational(); }
inline double to_float(const QuadNum& q) { return q.to_double(); }

}  // namespace markov

template <>
struct std::hash<markov::QuadNum> {
    std::size_t operator()(const markov::QuadNum& q) const { return q.hash(); }
};
