#pragma once

#include <string>

#include "markov/expr.hpp"
#include "markov/interval.hpp"
#include "markov/quadnum.hpp"

namespace markov {

// Open interval (lo, hi).
struct Domain {
    QuadNum lo;
    QuadNum hi;

    bool contains(const QuadNum& t) const { return lo < t && t < hi; }

    // Distance from t to the nearer end of the domain.
    QuadNum distance_to_boundary(const QuadNum& t) const { return min(t - lo, hi - t); }

    std::string str() const { return "(" + lo.str() + ", " + hi.str() + ")"; }
};

// F(t) = [f(t), g(t)] over the open domain omega, f(t) <= g(t).
struct IntervalFunction {
    Expr f;
    Expr g;
    Domain omega;

    // Throws out_of_domain when t is outside omega and
    // endpoint_order_violation when f(t) > g(t).
    template <class Scalar>
    Interval<Scalar> at(const QuadNum& t) const;
};

inline ExactInterval eval_interval(const IntervalFunction& F, const QuadNum& t) {
    return F.at<QuadNum>(t);
}

}  // namespace markov
