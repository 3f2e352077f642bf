#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "markov/errors.hpp"
#include "markov/quadnum.hpp"

namespace markov {

// Closed interval [lo, hi] with lo <= hi. Scalar is QuadNum (exact mode) or
// double (float mode). Degenerate intervals are allowed; lo > hi is rejected,
// never reordered.
template <class Scalar>
class Interval {
public:
    Interval() = default;

    Interval(Scalar lo, Scalar hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (hi_ < lo_) {
            throw endpoint_order_violation("interval lower endpoint " + render(lo_) +
                                           " exceeds upper endpoint " + render(hi_));
        }
    }

    static Interval point(const Scalar& v) { return Interval(v, v); }

    const Scalar& lo() const noexcept { return lo_; }
    const Scalar& hi() const noexcept { return hi_; }

    bool is_degenerate() const { return lo_ == hi_; }

    friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

    std::string str() const { return "[" + render(lo_) + ", " + render(hi_) + "]"; }

private:
    static std::string render(const QuadNum& v) { return v.str(); }
    static std::string render(double v);

    Scalar lo_{};
    Scalar hi_{};
};

using ExactInterval = Interval<QuadNum>;
using FloatInterval = Interval<double>;

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

template <class Scalar>
std::string Interval<Scalar>::render(double v) {
    return format_double(v);
}

template <class Scalar>
std::ostream& operator<<(std::ostream& os, const Interval<Scalar>& a) {
    return os << a.str();
}

namespace detail {

inline QuadNum scalar_abs(const QuadNum& v) { return abs(v); }
inline double scalar_abs(double v) { return std::fabs(v); }
inline bool scalar_is_zero(const QuadNum& v) { return v.is_zero(); }
inline bool scalar_is_zero(double v) { return v == 0.0; }
inline bool scalar_negative(const QuadNum& v) { return v.sign() < 0; }
inline bool scalar_negative(double v) { return v < 0.0; }

}  // namespace detail

// A ⊖ B = [min(a.lo - b.lo, a.hi - b.hi), max(a.lo - b.lo, a.hi - b.hi)].
template <class Scalar>
Interval<Scalar> markov_diff(const Interval<Scalar>& a, const Interval<Scalar>& b) {
    Scalar dl = a.lo() - b.lo();
    Scalar dh = a.hi() - b.hi();
    if (dh < dl) std::swap(dl, dh);
    return Interval<Scalar>(std::move(dl), std::move(dh));
}

// Hausdorff distance max(|a.lo - b.lo|, |a.hi - b.hi|).
template <class Scalar>
Scalar hausdorff_dist(const Interval<Scalar>& a, const Interval<Scalar>& b) {
    Scalar dl = detail::scalar_abs(a.lo() - b.lo());
    Scalar dh = detail::scalar_abs(a.hi() - b.hi());
    return dh < dl ? dl : dh;
}

// A / s, endpoints swapped when s < 0.
template <class Scalar>
Interval<Scalar> scale_div(const Interval<Scalar>& a, const Scalar& s) {
    if (detail::scalar_is_zero(s)) {
        throw division_by_zero("interval " + a.str() + " divided by zero");
    }
    if (detail::scalar_negative(s)) {
        return Interval<Scalar>(a.hi() / s, a.lo() / s);
    }
    return Interval<Scalar>(a.lo() / s, a.hi() / s);
}

template <class Scalar>
Interval<Scalar> negate(const Interval<Scalar>& a) {
    return Interval<Scalar>(-a.hi(), -a.lo());
}

inline FloatInterval to_float(const ExactInterval& a) {
    return FloatInterval(a.lo().to_double(), a.hi().to_double());
}

}  // namespace markov
