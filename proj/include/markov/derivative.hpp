#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "markov/expr.hpp"
#include "markov/function.hpp"
#include "markov/interval.hpp"
#include "markov/quadnum.hpp"

namespace markov {

enum class Side { left, right };
enum class Flavor { rational, irrational };
enum class Mode { exact, floating };

enum class Verdict { exists, not_exists_divergent, not_exists_oscillating, inconclusive };

std::string_view to_string(Side s);
std::string_view to_string(Flavor f);
std::string_view to_string(Mode m);
std::string_view to_string(Verdict v);

inline bool is_nonexistence(Verdict v) {
    return v == Verdict::not_exists_divergent || v == Verdict::not_exists_oscillating;
}

// How limits t -> x are sampled. Rung k of a ladder sits at x +- h0 * ratio^k,
// with the step multiplied by sqrt2/2 on the irrational flavor.
struct LadderConfig {
    Mode mode = Mode::exact;
    // Unset: the largest power of two not above a quarter of the distance
    // from x to the boundary of the domain. Must be rational when set.
    std::optional<QuadNum> h0;
    mpq_class ratio{1, 2};
    int depth = 40;
    // Exact mode stops a ladder once its first constant_probe quotients are
    // identical and takes that value as the limit.
    int constant_probe = 12;
    double tol_abs = 1e-9;
    double tol_rel = 1e-7;
    double divergence_bound = 1e12;
    // Value gaps |F(t_k) - F(x)| that stay above this floor while t_k -> x
    // mark a discontinuity.
    double jump_floor = 1e-6;

    // Throws precondition_failed on out-of-range fields.
    void validate() const;

    // |a - b| <= tol_abs + tol_rel * max(|a|, |b|)
    bool close(double a, double b) const;
    bool close(const FloatInterval& a, const FloatInterval& b) const;
};

LadderConfig default_config(Mode mode = Mode::exact);

// Largest power of two <= distance_to_boundary(x) / 4.
QuadNum default_step(const QuadNum& x, const Domain& omega);

// Points x +- step_k for k = 0 .. depth-1; points outside omega are dropped.
// Throws empty_ladder when none remain.
std::vector<QuadNum> ladder_points(const QuadNum& x, Side side, Flavor flavor, const LadderConfig& cfg,
                                   const Domain& omega);

// (F(t) ⊖ F(x)) / (t - x).
template <class Scalar>
Interval<Scalar> difference_quotient(const IntervalFunction& F, const QuadNum& x, const QuadNum& t);

inline ExactInterval difference_quotient(const IntervalFunction& F, const QuadNum& x, const QuadNum& t) {
    return difference_quotient<QuadNum>(F, x, t);
}

struct TracePoint {
    QuadNum t;
    FloatInterval quotient;
    std::optional<ExactInterval> exact;  // exact mode only
    double gap = 0;                      // hausdorff_dist(F(t), F(x))
    double noise = 0;                    // float mode: rounding error bound of the quotient
};

struct LadderTrace {
    Side side = Side::right;
    Flavor flavor = Flavor::rational;
    Verdict status = Verdict::inconclusive;
    std::optional<FloatInterval> limit;
    std::optional<ExactInterval> exact_limit;  // set when every exact quotient is identical
    std::vector<TracePoint> points;
};

struct ScalarDerivative {
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> value;
    std::optional<QuadNum> exact;
    // Per-flavor limits, kept as evidence when the flavors disagree.
    std::optional<double> rational_limit;
    std::optional<double> irrational_limit;
    std::string note;

    bool exists() const { return verdict == Verdict::exists; }
};

struct OneSidedDerivatives {
    ScalarDerivative f_minus;
    ScalarDerivative f_plus;
    ScalarDerivative g_minus;
    ScalarDerivative g_plus;

    bool all_exist() const { return f_minus.exists() && f_plus.exists() && g_minus.exists() && g_plus.exists(); }
};

struct DerivativeResult {
    Verdict verdict = Verdict::inconclusive;
    std::optional<FloatInterval> value;
    std::optional<ExactInterval> exact_value;
    std::optional<FloatInterval> left;
    std::optional<FloatInterval> right;
    std::vector<LadderTrace> ladders;
    std::optional<OneSidedDerivatives> one_sided;
    std::vector<std::string> notes;

    bool exists() const { return verdict == Verdict::exists; }
};

// Limit of (e(t) - e(x)) / (t - x) as t approaches x from one side, over
// both flavors. Requires x in the interior of the domain.
ScalarDerivative one_sided_scalar_derivative(const Expr& e, const QuadNum& x, Side side, const LadderConfig& cfg,
                                             const Domain& omega);

// ∂F+(x) or ∂F-(x).
DerivativeResult one_sided_markov_derivative(const IntervalFunction& F, const QuadNum& x, Side side,
                                             const LadderConfig& cfg);

// ∂F(x); also fills one_sided.
DerivativeResult markov_derivative(const IntervalFunction& F, const QuadNum& x, const LadderConfig& cfg);

OneSidedDerivatives one_sided_all(const IntervalFunction& F, const QuadNum& x, const LadderConfig& cfg);

struct ContinuityCheck {
    bool continuous = true;
    std::string detail;
};

// Ladder check that e(t) -> e(p) as t -> p on the requested sides, over both
// flavors.
ContinuityCheck check_continuity_at(const Expr& e, const QuadNum& p, const Domain& omega, const LadderConfig& cfg,
                                    bool left = true, bool right = true);

// Continuity at p = x and at sample points of omega on the given sides of x.
ContinuityCheck check_continuity_near(const Expr& e, const QuadNum& x, const Domain& omega, const LadderConfig& cfg,
                                      bool left, bool right, bool include_x);

}  // namespace markov
