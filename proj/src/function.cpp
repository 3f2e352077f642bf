#include "markov/function.hpp"

#include "markov/errors.hpp"

namespace markov {

template <class Scalar>
Interval<Scalar> IntervalFunction::at(const QuadNum& t) const {
    if (!omega.contains(t)) {
        throw out_of_domain("t = " + t.str() + " lies outside the domain " + omega.str());
    }
    Scalar lo = eval<Scalar>(f, t);
    Scalar hi = eval<Scalar>(g, t);
    if (hi < lo) {
        throw endpoint_order_violation("f(t) > g(t) at t = " + t.str());
    }
    return Interval<Scalar>(std::move(lo), std::move(hi));
}

template Interval<QuadNum> IntervalFunction::at<QuadNum>(const QuadNum&) const;
template Interval<double> IntervalFunction::at<double>(const QuadNum&) const;

}  // namespace markov
