#include "markov/quadnum.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include <mpfr.h>

#include "markov/errors.hpp"

namespace markov {

QuadNum::QuadNum(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
}

QuadNum QuadNum::ratio(long num, long den) {
    if (den == 0) {
        throw division_by_zero("rational with zero denominator");
    }
    return QuadNum(mpq_class(num, den));
}

int QuadNum::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| against |b|*sqrt2, i.e. a^2 against 2b^2.
    const int cmp = ::cmp(a_ * a_, 2 * b_ * b_);
    return cmp > 0 ? sa : sb;
}

namespace {

std::size_t bit_size(const mpq_class& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace

double QuadNum::to_double() const {
    if (is_rational()) {
        // mpq -> double truncates; round through MPFR for the nearest value.
        mpfr_t r;
        mpfr_init2(r, 128 + static_cast<mpfr_prec_t>(bit_size(a_)));
        mpfr_set_q(r, a_.get_mpq_t(), MPFR_RNDN);
        const double out = mpfr_get_d(r, MPFR_RNDN);
        mpfr_clear(r);
        return out;
    }
    // Enough precision to survive cancellation between a and b*sqrt2:
    // |a + b sqrt2| >= 1 / (den^2 * |a - b sqrt2|) bounds the lost bits.
    const auto prec = static_cast<mpfr_prec_t>(128 + 4 * (bit_size(a_) + bit_size(b_)));
    mpfr_t s, t, u;
    mpfr_inits2(prec, s, t, u, static_cast<mpfr_ptr>(nullptr));
    mpfr_sqrt_ui(s, 2, MPFR_RNDN);
    mpfr_mul_q(t, s, b_.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(u, a_.get_mpq_t(), MPFR_RNDN);
    mpfr_add(t, t, u, MPFR_RNDN);
    const double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clears(s, t, u, static_cast<mpfr_ptr>(nullptr));
    return out;
}

std::string QuadNum::str() const {
    if (is_rational()) return a_.get_str();
    std::string out;
    if (sgn(a_) != 0) {
        out = a_.get_str();
        out += sgn(b_) < 0 ? "-" : "+";
        out += mpq_class(::abs(b_)).get_str();
    } else {
        out = b_.get_str();
    }
    out += "*sqrt2";
    return out;
}

std::size_t QuadNum::hash() const {
    const std::hash<std::string> h;
    return h(a_.get_str(16)) * 31u + h(b_.get_str(16));
}

QuadNum operator+(const QuadNum& p, const QuadNum& q) { return QuadNum(p.a_ + q.a_, p.b_ + q.b_); }

QuadNum operator-(const QuadNum& p, const QuadNum& q) { return QuadNum(p.a_ - q.a_, p.b_ - q.b_); }

QuadNum operator*(const QuadNum& p, const QuadNum& q) {
    return QuadNum(p.a_ * q.a_ + 2 * p.b_ * q.b_, p.a_ * q.b_ + p.b_ * q.a_);
}

QuadNum operator/(const QuadNum& p, const QuadNum& q) {
    if (q.is_zero()) {
        throw division_by_zero("division of " + p.str() + " by zero");
    }
    // p/q = p * conj(q) / norm(q); norm(q) != 0 since sqrt2 is irrational.
    const mpq_class n = q.norm();
    const QuadNum num = p * q.conjugate();
    return QuadNum(num.a_ / n, num.b_ / n);
}

QuadNum operator-(const QuadNum& p) { return QuadNum(-p.a_, -p.b_); }

std::strong_ordering operator<=>(const QuadNum& p, const QuadNum& q) {
    const int s = (p - q).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

QuadNum abs(const QuadNum& q) { return q.sign() < 0 ? -q : q; }

QuadNum min(const QuadNum& p, const QuadNum& q) { return q < p ? q : p; }

QuadNum max(const QuadNum& p, const QuadNum& q) { return p < q ? q : p; }

QuadNum pow(const QuadNum& base, unsigned exponent) {
    QuadNum result(1);
    QuadNum b = base;
    while (exponent != 0) {
        if (exponent & 1u) result *= b;
        exponent >>= 1u;
        if (exponent != 0) b *= b;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const QuadNum& q) { return os << q.str(); }

}  // namespace markov
