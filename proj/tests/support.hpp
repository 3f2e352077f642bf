#pragma once

#include <random>
#include <string>
#include <vector>

#include "markov/expr.hpp"
#include "markov/function.hpp"
#include "markov/parser.hpp"
#include "markov/quadnum.hpp"

namespace markov::test {

inline const Domain unit_domain{QuadNum(-1), QuadNum(1)};

inline IntervalFunction lemma1() {
    return parse_function_file(
        "f = piecewise(rational(t): t, else: 0)\n"
        "g = piecewise(rational(t): 1, else: t + 1)\n"
        "omega = (-1, 1)\n");
}

inline IntervalFunction make(const std::string& f, const std::string& g, Domain omega = unit_domain) {
    return IntervalFunction{parse_expr(f), parse_expr(g), std::move(omega)};
}

inline IntervalFunction abs_pair() { return make("-abs(t)", "abs(t)"); }
inline IntervalFunction smooth() { return make("t", "t^2 + 1"); }
inline IntervalFunction affine() { return make("t", "t + 1"); }
inline IntervalFunction unit_jump() {
    return make("piecewise(t > 0: 1, else: 0)", "piecewise(t > 0: 1, else: 0) + 1");
}

inline QuadNum q(long num, long den = 1) { return QuadNum::ratio(num, den); }
inline QuadNum qs(long a_num, long a_den, long b_num, long b_den) {
    return QuadNum(mpq_class(a_num, a_den), mpq_class(b_num, b_den));
}

// Hand-rolled generators with a fixed seed per test.
class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    mpq_class rational(long span = 20, long max_den = 12) {
        return mpq_class(integer(-span, span), integer(1, max_den));
    }

    QuadNum quad(long span = 20, long max_den = 12) {
        QuadNum v(rational(span, max_den), coin(0.6) ? rational(span, max_den) : mpq_class(0));
        return v;
    }

    // Random exact interval with lo <= hi.
    Interval<QuadNum> interval() {
        QuadNum a = quad();
        QuadNum b = quad();
        if (b < a) std::swap(a, b);
        return Interval<QuadNum>(a, b);
    }

    // Expression in the image of the parser: literal constants are
    // nonnegative rationals or sqrt2.
    Expr expr(int depth) {
        if (depth <= 0 || coin(0.25)) return leaf();
        switch (integer(0, 8)) {
            case 0: return dsl::neg(expr(depth - 1));
            case 1: return dsl::abs(expr(depth - 1));
            case 2: return expr(depth - 1) + expr(depth - 1);
            case 3: return expr(depth - 1) - expr(depth - 1);
            case 4: return expr(depth - 1) * expr(depth - 1);
            case 5: return expr(depth - 1) / expr(depth - 1);
            case 6: return coin() ? dsl::min(expr(depth - 1), expr(depth - 1)) : dsl::max(expr(depth - 1), expr(depth - 1));
            case 7: return dsl::pow(expr(depth - 1), static_cast<unsigned>(integer(0, 4)));
            default: {
                std::vector<node::Branch> branches;
                const long n = integer(1, 2);
                for (long i = 0; i < n; ++i) branches.push_back({predicate(2), expr(depth - 1)});
                return dsl::piecewise(std::move(branches), expr(depth - 1));
            }
        }
    }

    Predicate predicate(int depth) {
        if (depth <= 0 || coin(0.5)) {
            if (coin(0.3)) return dsl::rational();
            return dsl::compare(static_cast<CompareOp>(integer(0, 3)), quad(3, 4));
        }
        return coin() ? dsl::conj(predicate(depth - 1), predicate(depth - 1))
                      : dsl::disj(predicate(depth - 1), predicate(depth - 1));
    }

    // Polynomial sum_k c_k t^k with small rational coefficients.
    std::vector<mpq_class> coefficients(int degree, long span = 3, long max_den = 4) {
        std::vector<mpq_class> c;
        for (int k = 0; k <= degree; ++k) c.push_back(rational(span, max_den));
        return c;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    Expr leaf() {
        switch (integer(0, 3)) {
            case 0: return dsl::t();
            case 1: return dsl::sqrt2();
            default: return dsl::constant(QuadNum(mpq_class(integer(0, 30), integer(1, 9))));
        }
    }

    std::mt19937_64 rng_;
};

// sum_k c_k * (t - center)^k as an expression.
inline Expr polynomial(const std::vector<mpq_class>& c, const QuadNum& center = QuadNum(0)) {
    const Expr shifted = center.is_zero() ? dsl::t() : dsl::t() - dsl::constant(center);
    Expr out = dsl::constant(QuadNum(c[0]));
    for (std::size_t k = 1; k < c.size(); ++k) {
        out = out + dsl::constant(QuadNum(c[k])) * dsl::pow(shifted, static_cast<unsigned>(k));
    }
    return out;
}

}  // namespace markov::test
