#include "markov/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>

#include "markov/errors.hpp"

namespace markov {

std::string_view to_string(Side s) { return s == Side::left ? "left" : "right"; }

std::string_view to_string(Flavor f) { return f == Flavor::rational ? "rational" : "irrational"; }

std::string_view to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::exists: return "EXISTS";
        case Verdict::not_exists_divergent: return "NOT_EXISTS_DIVERGENT";
        case Verdict::not_exists_oscillating: return "NOT_EXISTS_OSCILLATING";
        case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

void LadderConfig::validate() const {
    if (h0 && (!h0->is_rational() || h0->sign() <= 0)) {
        throw precondition_failed("h0 must be a positive rational, got " + h0->str());
    }
    if (sgn(ratio) <= 0 || ratio >= 1) {
        throw precondition_failed("ratio must lie in (0, 1), got " + ratio.get_str());
    }
    if (depth < 8) throw precondition_failed("depth must be at least 8, got " + std::to_string(depth));
    if (constant_probe < 4) {
        throw precondition_failed("constant_probe must be at least 4, got " + std::to_string(constant_probe));
    }
    if (!(tol_abs >= 0) || !(tol_rel >= 0)) throw precondition_failed("tolerances must be nonnegative");
    if (!(divergence_bound > 0)) throw precondition_failed("divergence_bound must be positive");
    if (!(jump_floor > 0)) throw precondition_failed("jump_floor must be positive");
}

bool LadderConfig::close(double a, double b) const {
    if (a == b) return true;
    return std::fabs(a - b) <= tol_abs + tol_rel * std::max(std::fabs(a), std::fabs(b));
}

bool LadderConfig::close(const FloatInterval& a, const FloatInterval& b) const {
    return close(a.lo(), b.lo()) && close(a.hi(), b.hi());
}

LadderConfig default_config(Mode mode) {
    LadderConfig cfg;
    cfg.mode = mode;
    return cfg;
}

QuadNum default_step(const QuadNum& x, const Domain& omega) {
    const QuadNum quarter = omega.distance_to_boundary(x) / QuadNum(4);
    if (quarter.sign() <= 0) throw out_of_domain("x = " + x.str() + " is not interior to " + omega.str());
    QuadNum h(1);
    const QuadNum two(2);
    while (h > quarter) h /= two;
    while (h * two <= quarter) h *= two;
    return h;
}

std::vector<QuadNum> ladder_points(const QuadNum& x, Side side, Flavor flavor, const LadderConfig& cfg,
                                   const Domain& omega) {
    if (cfg.depth < 1) throw precondition_failed("ladder depth must be positive");
    if (sgn(cfg.ratio) <= 0 || cfg.ratio >= 1) throw precondition_failed("ratio must lie in (0, 1)");
    const QuadNum h0 = cfg.h0 ? *cfg.h0 : default_step(x, omega);
    if (!h0.is_rational() || h0.sign() <= 0) throw precondition_failed("h0 must be a positive rational");

    std::vector<QuadNum> out;
    out.reserve(static_cast<std::size_t>(cfg.depth));
    mpq_class step = h0.rational_part();
    for (int k = 0; k < cfg.depth; ++k, step *= cfg.ratio) {
        // Irrational rungs use step * sqrt2/2.
        const QuadNum offset = flavor == Flavor::rational ? QuadNum(step) : QuadNum(0, step / 2);
        QuadNum t = side == Side::right ? x + offset : x - offset;
        if (omega.contains(t)) out.push_back(std::move(t));
    }
    if (out.empty()) {
        throw empty_ladder("no " + std::string(to_string(flavor)) + " " + std::string(to_string(side)) +
                           " ladder point of x = " + x.str() + " lies in " + omega.str());
    }
    return out;
}

template <class Scalar>
Interval<Scalar> difference_quotient(const IntervalFunction& F, const QuadNum& x, const QuadNum& t) {
    if (t == x) throw precondition_failed("difference quotient needs t != x");
    const Interval<Scalar> ft = F.at<Scalar>(t);
    const Interval<Scalar> fx = F.at<Scalar>(x);
    const QuadNum step = t - x;
    if constexpr (std::is_same_v<Scalar, QuadNum>) {
        return scale_div(markov_diff(ft, fx), step);
    } else {
        return scale_div(markov_diff(ft, fx), step.to_double());
    }
}

template Interval<QuadNum> difference_quotient<QuadNum>(const IntervalFunction&, const QuadNum&, const QuadNum&);
template Interval<double> difference_quotient<double>(const IntervalFunction&, const QuadNum&, const QuadNum&);

namespace {

int severity(Verdict v) {
    switch (v) {
        case Verdict::exists: return 0;
        case Verdict::inconclusive: return 1;
        case Verdict::not_exists_oscillating: return 2;
        case Verdict::not_exists_divergent: return 3;
    }
    return 1;
}

Verdict worst(Verdict a, Verdict b) { return severity(a) >= severity(b) ? a : b; }

// The last four gaps stay above floor and shrink by less than ratio^2 over
// three rungs, where a Lipschitz endpoint shrinks by ratio^3.
bool gaps_stall(std::span<const double> gaps, double floor, double ratio) {
    const std::size_t n = gaps.size();
    if (n < 4) return false;
    for (std::size_t k = n - 4; k < n; ++k) {
        if (!(gaps[k] >= floor)) return false;
    }
    return gaps[n - 1] > ratio * ratio * gaps[n - 4];
}

Verdict series_verdict(std::span<const double> values, std::span<const double> gaps, std::span<const double> noise,
                       const LadderConfig& cfg) {
    const std::size_t n = values.size();
    int run = 0;
    for (const double v : values) {
        run = (!std::isfinite(v) || std::fabs(v) > cfg.divergence_bound) ? run + 1 : 0;
        if (run >= 3) return Verdict::not_exists_divergent;
    }
    if (gaps_stall(gaps, cfg.jump_floor, cfg.ratio.get_d())) return Verdict::not_exists_divergent;
    if (n < 4) return Verdict::inconclusive;

    bool converged = true;
    for (std::size_t i = n - 4; i < n && converged; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!cfg.close(values[i], values[j])) {
                converged = false;
                break;
            }
        }
    }
    if (converged) return Verdict::exists;

    // Spread within float rounding error says nothing about the limit.
    double spread = 0;
    double worst_noise = 0;
    for (std::size_t i = n - 4; i < n; ++i) {
        worst_noise = std::max(worst_noise, noise[i]);
        for (std::size_t j = i + 1; j < n; ++j) spread = std::max(spread, std::fabs(values[i] - values[j]));
    }
    if (worst_noise > 0 && spread <= 2 * worst_noise + cfg.tol_abs) return Verdict::inconclusive;

    // Bounded but not Cauchy. Steadily shrinking steps only mean the ladder
    // ran out before the trace settled.
    const double d1 = std::fabs(values[n - 3] - values[n - 4]);
    const double d2 = std::fabs(values[n - 2] - values[n - 3]);
    const double d3 = std::fabs(values[n - 1] - values[n - 2]);
    if (d2 < 0.9 * d1 && d3 < 0.9 * d2) return Verdict::inconclusive;
    return Verdict::not_exists_oscillating;
}

using PointEvaluator = std::function<TracePoint(const QuadNum&)>;

LadderTrace run_ladder(const QuadNum& x, Side side, Flavor flavor, const LadderConfig& cfg, const Domain& omega,
                       const PointEvaluator& evaluate) {
    LadderTrace trace;
    trace.side = side;
    trace.flavor = flavor;
    const auto points = ladder_points(x, side, flavor, cfg, omega);
    bool constant = cfg.mode == Mode::exact;
    for (const auto& t : points) {
        trace.points.push_back(evaluate(t));
        const auto& last = trace.points.back();
        if (constant && last.exact && !(*last.exact == *trace.points.front().exact)) constant = false;
        if (constant && trace.points.size() == static_cast<std::size_t>(cfg.constant_probe)) break;
    }

    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<double> gaps;
    std::vector<double> noise;
    for (const auto& p : trace.points) {
        lo.push_back(p.quotient.lo());
        hi.push_back(p.quotient.hi());
        gaps.push_back(p.gap);
        noise.push_back(p.noise);
    }
    trace.status = worst(series_verdict(lo, gaps, noise, cfg), series_verdict(hi, gaps, noise, cfg));
    if (trace.status == Verdict::exists) {
        trace.limit = trace.points.back().quotient;
        if (constant && trace.points.front().exact) trace.exact_limit = trace.points.front().exact;
    }
    return trace;
}

struct SideOutcome {
    Verdict verdict = Verdict::inconclusive;
    std::optional<FloatInterval> value;
    std::optional<ExactInterval> exact;
    std::string note;
};

SideOutcome merge_flavors(const LadderTrace& rational, const LadderTrace& irrational, const LadderConfig& cfg) {
    SideOutcome out;
    out.verdict = worst(rational.status, irrational.status);
    if (out.verdict != Verdict::exists) {
        if (rational.status != irrational.status) {
            out.note = std::string(to_string(rational.side)) + " ladders: rational " +
                       std::string(to_string(rational.status)) + ", irrational " +
                       std::string(to_string(irrational.status));
        }
        return out;
    }
    if (!cfg.close(*rational.limit, *irrational.limit)) {
        out.verdict = Verdict::not_exists_oscillating;
        out.note = std::string(to_string(rational.side)) + " ladders disagree: rational -> " + rational.limit->str() +
                   ", irrational -> " + irrational.limit->str();
        return out;
    }
    out.value = rational.limit;
    if (rational.exact_limit && irrational.exact_limit && *rational.exact_limit == *irrational.exact_limit) {
        out.exact = rational.exact_limit;
        out.value = to_float(*out.exact);
    }
    return out;
}

void require_interior(const QuadNum& x, const Domain& omega) {
    if (!omega.contains(x)) {
        throw out_of_domain("x = " + x.str() + " is not interior to the domain " + omega.str());
    }
}

const char* irrational_x_note =
    "x is irrational: both flavors of ladder points are irrational, so rational/irrational branches are not separated";

// Error bound for a float difference quotient of values of magnitude `scale`
// taken over `step`; a few ulps of evaluation error per endpoint.
double rounding_noise(double scale, double step) {
    return 16 * std::numeric_limits<double>::epsilon() * scale / std::fabs(step);
}

PointEvaluator interval_evaluator(const IntervalFunction& F, const QuadNum& x, Mode mode) {
    const ExactInterval fx = F.at<QuadNum>(x);
    if (mode == Mode::exact) {
        return [&F, x, fx](const QuadNum& t) {
            const ExactInterval ft = F.at<QuadNum>(t);
            const ExactInterval q = scale_div(markov_diff(ft, fx), t - x);
            return TracePoint{t, to_float(q), q, hausdorff_dist(ft, fx).to_double()};
        };
    }
    const FloatInterval fx_float = F.at<double>(x);
    return [&F, x, fx_float](const QuadNum& t) {
        const FloatInterval ft = F.at<double>(t);
        const double step = (t - x).to_double();
        const FloatInterval q = scale_div(markov_diff(ft, fx_float), step);
        const double scale = std::max({std::fabs(ft.lo()), std::fabs(ft.hi()), std::fabs(fx_float.lo()),
                                       std::fabs(fx_float.hi())});
        return TracePoint{t, q, std::nullopt, hausdorff_dist(ft, fx_float), rounding_noise(scale, step)};
    };
}

PointEvaluator scalar_evaluator(const Expr& e, const QuadNum& x, Mode mode) {
    if (mode == Mode::exact) {
        const QuadNum ex = eval_exact(e, x);
        return [&e, x, ex](const QuadNum& t) {
            const QuadNum diff = eval_exact(e, t) - ex;
            const QuadNum q = diff / (t - x);
            return TracePoint{t, to_float(ExactInterval::point(q)), ExactInterval::point(q), abs(diff).to_double()};
        };
    }
    const double ex = eval_float(e, x);
    return [&e, x, ex](const QuadNum& t) {
        const double diff = eval_float(e, t) - ex;
        const double step = (t - x).to_double();
        const double q = diff / step;
        const double scale = std::max(std::fabs(ex), std::fabs(ex + diff));
        return TracePoint{t, FloatInterval::point(q), std::nullopt, std::fabs(diff), rounding_noise(scale, step)};
    };
}

}  // namespace

ScalarDerivative one_sided_scalar_derivative(const Expr& e, const QuadNum& x, Side side, const LadderConfig& cfg,
                                             const Domain& omega) {
    cfg.validate();
    require_interior(x, omega);
    const auto evaluate = scalar_evaluator(e, x, cfg.mode);
    const LadderTrace rational = run_ladder(x, side, Flavor::rational, cfg, omega, evaluate);
    const LadderTrace irrational = run_ladder(x, side, Flavor::irrational, cfg, omega, evaluate);

    ScalarDerivative out;
    if (rational.limit) out.rational_limit = rational.limit->lo();
    if (irrational.limit) out.irrational_limit = irrational.limit->lo();
    const SideOutcome merged = merge_flavors(rational, irrational, cfg);
    out.verdict = merged.verdict;
    out.note = merged.note;
    if (merged.value) out.value = merged.value->lo();
    if (merged.exact) out.exact = merged.exact->lo();
    if (!x.is_rational()) out.note += (out.note.empty() ? "" : "; ") + std::string(irrational_x_note);
    return out;
}

DerivativeResult one_sided_markov_derivative(const IntervalFunction& F, const QuadNum& x, Side side,
                                             const LadderConfig& cfg) {
    cfg.validate();
    require_interior(x, F.omega);
    const auto evaluate = interval_evaluator(F, x, cfg.mode);

    DerivativeResult out;
    out.ladders.push_back(run_ladder(x, side, Flavor::rational, cfg, F.omega, evaluate));
    out.ladders.push_back(run_ladder(x, side, Flavor::irrational, cfg, F.omega, evaluate));
    const SideOutcome merged = merge_flavors(out.ladders[0], out.ladders[1], cfg);
    out.verdict = merged.verdict;
    out.value = merged.value;
    out.exact_value = merged.exact;
    (side == Side::left ? out.left : out.right) = merged.value;
    if (!merged.note.empty()) out.notes.push_back(merged.note);
    if (!x.is_rational()) out.notes.emplace_back(irrational_x_note);
    return out;
}

DerivativeResult markov_derivative(const IntervalFunction& F, const QuadNum& x, const LadderConfig& cfg) {
    DerivativeResult left = one_sided_markov_derivative(F, x, Side::left, cfg);
    DerivativeResult right = one_sided_markov_derivative(F, x, Side::right, cfg);

    DerivativeResult out;
    out.left = left.value;
    out.right = right.value;
    for (auto* part : {&left, &right}) {
        for (auto& ladder : part->ladders) out.ladders.push_back(std::move(ladder));
        for (auto& note : part->notes) {
            if (std::find(out.notes.begin(), out.notes.end(), note) == out.notes.end()) out.notes.push_back(note);
        }
    }

    if (left.exists() && right.exists()) {
        if (cfg.close(*left.value, *right.value)) {
            out.verdict = Verdict::exists;
            out.value = right.value;
            if (left.exact_value && right.exact_value && *left.exact_value == *right.exact_value) {
                out.exact_value = right.exact_value;
            }
        } else {
            out.verdict = Verdict::not_exists_oscillating;
            out.notes.push_back("one-sided limits differ: left " + left.value->str() + ", right " +
                                right.value->str());
        }
    } else {
        out.verdict = worst(left.verdict, right.verdict);
        if (out.verdict == Verdict::exists) out.verdict = Verdict::inconclusive;
    }
    if (out.verdict == Verdict::not_exists_divergent) {
        out.notes.emplace_back("difference quotients blow up: F is not continuous at x");
    }
    out.one_sided = one_sided_all(F, x, cfg);
    return out;
}

OneSidedDerivatives one_sided_all(const IntervalFunction& F, const QuadNum& x, const LadderConfig& cfg) {
    OneSidedDerivatives out;
    out.f_minus = one_sided_scalar_derivative(F.f, x, Side::left, cfg, F.omega);
    out.f_plus = one_sided_scalar_derivative(F.f, x, Side::right, cfg, F.omega);
    out.g_minus = one_sided_scalar_derivative(F.g, x, Side::left, cfg, F.omega);
    out.g_plus = one_sided_scalar_derivative(F.g, x, Side::right, cfg, F.omega);
    return out;
}

ContinuityCheck check_continuity_at(const Expr& e, const QuadNum& p, const Domain& omega, const LadderConfig& cfg,
                                    bool left, bool right) {
    cfg.validate();
    require_interior(p, omega);
    const QuadNum h0 = default_step(p, omega);
    const double ratio = cfg.ratio.get_d();
    const bool exact = cfg.mode == Mode::exact;
    const QuadNum ep = eval_exact(e, p);
    const double ep_float = exact ? ep.to_double() : eval_float(e, p);
    const double floor = cfg.jump_floor * (1 + std::fabs(ep_float));

    // Only the deepest rungs matter for a limit.
    mpq_class step = h0.rational_part();
    const int first = cfg.depth - 4;
    for (int k = 0; k < first; ++k) step *= cfg.ratio;

    for (const Side side : {Side::left, Side::right}) {
        if ((side == Side::left && !left) || (side == Side::right && !right)) continue;
        for (const Flavor flavor : {Flavor::rational, Flavor::irrational}) {
            std::vector<double> gaps;
            mpq_class s = step;
            for (int k = first; k < cfg.depth; ++k, s *= cfg.ratio) {
                const QuadNum offset = flavor == Flavor::rational ? QuadNum(s) : QuadNum(0, s / 2);
                const QuadNum t = side == Side::right ? p + offset : p - offset;
                gaps.push_back(exact ? abs(eval_exact(e, t) - ep).to_double()
                                     : std::fabs(eval_float(e, t) - ep_float));
            }
            if (gaps_stall(gaps, floor, ratio)) {
                return ContinuityCheck{false, "`" + print(e) + "` jumps at t = " + p.str() + " along the " +
                                                  std::string(to_string(flavor)) + " " +
                                                  std::string(to_string(side)) + " ladder (gap " +
                                                  format_double(gaps.back()) + ")"};
            }
        }
    }
    return ContinuityCheck{};
}

ContinuityCheck check_continuity_near(const Expr& e, const QuadNum& x, const Domain& omega, const LadderConfig& cfg,
                                      bool left, bool right, bool include_x) {
    if (include_x) {
        if (auto at_x = check_continuity_at(e, x, omega, cfg, left, right); !at_x.continuous) return at_x;
    }
    // Sample points x +- h * ratio^j, j = 0, 2, 4, 6, all rational.
    const QuadNum h = default_step(x, omega);
    for (const Side side : {Side::left, Side::right}) {
        if ((side == Side::left && !left) || (side == Side::right && !right)) continue;
        mpq_class s = h.rational_part();
        for (int j = 0; j <= 6; ++j, s *= cfg.ratio) {
            if (j % 2 != 0) continue;
            const QuadNum p = side == Side::right ? x + QuadNum(s) : x - QuadNum(s);
            if (auto at_p = check_continuity_at(e, p, omega, cfg); !at_p.continuous) return at_p;
        }
    }
    return ContinuityCheck{};
}

}  // namespace markov
