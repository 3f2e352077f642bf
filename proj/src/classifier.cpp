#include "markov/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "markov/errors.hpp"

namespace markov {

std::string_view to_string(Case c) {
    switch (c) {
        case Case::both_differentiable: return "CASE_A_BOTH_DIFFERENTIABLE";
        case Case::crossed_derivatives: return "CASE_B_CROSSED_DERIVATIVES";
        case Case::beyond_theorem1: return "CASE_C_BEYOND_THEOREM1";
        case Case::not_differentiable: return "NOT_DIFFERENTIABLE";
        case Case::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

std::string_view to_string(ContinuityWitness w) {
    switch (w) {
        case ContinuityWitness::f_continuous: return "F_CONT";
        case ContinuityWitness::g_continuous: return "G_CONT";
        case ContinuityWitness::length_continuous: return "LENGTH_CONT";
    }
    return "F_CONT";
}

namespace {

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool near(const FloatInterval& a, const FloatInterval& b, double tol) {
    return near(a.lo(), b.lo(), tol) && near(a.hi(), b.hi(), tol);
}

FloatInterval hull(double a, double b) { return FloatInterval(std::min(a, b), std::max(a, b)); }

void require_all(const OneSidedDerivatives& d) {
    std::string missing;
    auto check = [&](const ScalarDerivative& s, const char* name) {
        if (!s.exists()) missing += std::string(missing.empty() ? "" : ", ") + name;
    };
    check(d.f_minus, "f'-");
    check(d.f_plus, "f'+");
    check(d.g_minus, "g'-");
    check(d.g_plus, "g'+");
    if (!missing.empty()) throw missing_one_sided("one-sided derivatives missing: " + missing);
}

std::string describe(const char* name, const ScalarDerivative& s) {
    std::ostringstream out;
    out << name << " " << to_string(s.verdict);
    if (s.value) out << " = " << format_double(*s.value);
    if (!s.exists() && (s.rational_limit || s.irrational_limit)) {
        out << " (rational ladder -> " << (s.rational_limit ? format_double(*s.rational_limit) : "none")
            << ", irrational ladder -> " << (s.irrational_limit ? format_double(*s.irrational_limit) : "none") << ")";
    }
    return out.str();
}

std::string describe(const OneSidedDerivatives& d) {
    return describe("f'-", d.f_minus) + "; " + describe("f'+", d.f_plus) + "; " + describe("g'-", d.g_minus) + "; " +
           describe("g'+", d.g_plus);
}

}  // namespace

bool check_dpm(const OneSidedDerivatives& d, double tol) {
    require_all(d);
    return near(*d.f_minus.value, *d.g_plus.value, tol) && near(*d.g_minus.value, *d.f_plus.value, tol);
}

ClassificationReport classify(const IntervalFunction& F, const QuadNum& x, const LadderConfig& cfg, double tol) {
    ClassificationReport report;
    report.markov = markov_derivative(F, x, cfg);
    report.one_sided = *report.markov.one_sided;
    const OneSidedDerivatives& d = report.one_sided;
    if (d.all_exist()) report.dpm_holds = check_dpm(d, tol);

    if (!report.markov.exists()) {
        report.kind = is_nonexistence(report.markov.verdict) ? Case::not_differentiable : Case::inconclusive;
        std::string evidence = "∂F(x) " + std::string(to_string(report.markov.verdict));
        for (const auto& note : report.markov.notes) evidence += "; " + note;
        report.evidence = evidence;
        return report;
    }

    const FloatInterval& value = *report.markov.value;
    if (d.all_exist()) {
        const FloatInterval left = hull(*d.f_minus.value, *d.g_minus.value);
        const FloatInterval right = hull(*d.f_plus.value, *d.g_plus.value);
        report.ufa_checked = near(left, value, tol) && near(right, value, tol);
        if (near(*d.f_minus.value, *d.f_plus.value, tol) && near(*d.g_minus.value, *d.g_plus.value, tol)) {
            report.kind = Case::both_differentiable;
            report.evidence = "f and g differentiable at x: " + describe(d);
        } else if (*report.dpm_holds) {
            report.kind = Case::crossed_derivatives;
            report.evidence = "crossed one-sided derivatives f'- = g'+, g'- = f'+: " + describe(d);
        } else {
            report.kind = Case::inconclusive;
            report.evidence = "∂F(x) exists but the one-sided derivatives fit neither case: " + describe(d);
        }
        return report;
    }

    const bool any_missing = is_nonexistence(d.f_minus.verdict) || is_nonexistence(d.f_plus.verdict) ||
                             is_nonexistence(d.g_minus.verdict) || is_nonexistence(d.g_plus.verdict);
    if (any_missing) {
        report.kind = Case::beyond_theorem1;
        report.evidence = "∂F(x) = " + value.str() + " exists although one-sided endpoint derivatives do not: " +
                          describe(d);
    } else {
        report.kind = Case::inconclusive;
        report.evidence = "∂F(x) exists; one-sided endpoint derivatives undecided: " + describe(d);
    }
    return report;
}

bool verify_theorem2(const IntervalFunction& F, const QuadNum& x, Side side, const LadderConfig& cfg, double tol) {
    const ScalarDerivative fs = one_sided_scalar_derivative(F.f, x, side, cfg, F.omega);
    const ScalarDerivative gs = one_sided_scalar_derivative(F.g, x, side, cfg, F.omega);
    if (!fs.exists() || !gs.exists()) {
        throw missing_one_sided("the " + std::string(to_string(side)) +
                                " derivatives of f and g are needed: " + describe("f", fs) + "; " + describe("g", gs));
    }
    const DerivativeResult measured = one_sided_markov_derivative(F, x, side, cfg);
    if (!measured.exists()) return false;
    return near(*measured.value, hull(*fs.value, *gs.value), tol);
}

bool verify_corollary_ufa(const IntervalFunction& F, const QuadNum& x, ContinuityWitness witness,
                          const LadderConfig& cfg, double tol) {
    const DerivativeResult markov = markov_derivative(F, x, cfg);
    if (!markov.exists()) {
        throw precondition_failed("∂F(x) must exist, verdict is " + std::string(to_string(markov.verdict)));
    }
    const Expr e = witness == ContinuityWitness::f_continuous   ? F.f
                   : witness == ContinuityWitness::g_continuous ? F.g
                                                                : F.g - F.f;
    const ContinuityCheck cont = check_continuity_near(e, x, F.omega, cfg, true, true, true);
    if (!cont.continuous) {
        throw witness_not_continuous(std::string(to_string(witness)) + " witness fails: " + cont.detail);
    }
    const OneSidedDerivatives& d = *markov.one_sided;
    if (!d.all_exist()) return false;
    return near(hull(*d.f_minus.value, *d.g_minus.value), *markov.value, tol) &&
           near(hull(*d.f_plus.value, *d.g_plus.value), *markov.value, tol);
}

LinearRelationCheck check_linear_relation(const IntervalFunction& F, const LinearRelationWitness& w, Side side,
                                          const QuadNum& x, const LadderConfig& cfg, double tol) {
    cfg.validate();
    auto reject = [](std::string why) { return LinearRelationCheck{false, std::move(why)}; };
    if (w.mu.sign() <= 0) return reject("mu must be positive, got " + w.mu.str());
    if (!F.omega.contains(x)) throw out_of_domain("x = " + x.str() + " is not interior to " + F.omega.str());

    const bool exact = cfg.mode == Mode::exact;
    const double mu = w.mu.to_double();
    for (const Flavor flavor : {Flavor::rational, Flavor::irrational}) {
        for (const QuadNum& t : ladder_points(x, side, flavor, cfg, F.omega)) {
            const std::string at = " at t = " + t.str();
            if (exact) {
                const QuadNum a = eval_exact(w.alpha, t);
                const QuadNum b = eval_exact(w.beta, t);
                if (a * eval_exact(F.f, t) + b * eval_exact(F.g, t) != eval_exact(w.c, t) + eval_exact(w.d, t)) {
                    return reject("alpha*f + beta*g != c + d" + at);
                }
                if (abs(a) + abs(b) > w.mu) return reject("|alpha| + |beta| > mu" + at);
                if (w.mu * abs(a - b) < QuadNum(1)) return reject("mu*|alpha - beta| < 1" + at);
            } else {
                const double a = eval_float(w.alpha, t);
                const double b = eval_float(w.beta, t);
                const double lhs = a * eval_float(F.f, t) + b * eval_float(F.g, t);
                const double rhs = eval_float(w.c, t) + eval_float(w.d, t);
                if (std::fabs(lhs - rhs) > tol * (1 + std::fabs(lhs))) return reject("alpha*f + beta*g != c + d" + at);
                if (std::fabs(a) + std::fabs(b) > mu * (1 + tol)) return reject("|alpha| + |beta| > mu" + at);
                if (mu * std::fabs(a - b) < 1 - tol) return reject("mu*|alpha - beta| < 1" + at);
            }
        }
    }

    const bool left = side == Side::left;
    for (const auto* part : {&w.alpha, &w.beta, &w.c}) {
        const ContinuityCheck cont = check_continuity_near(*part, x, F.omega, cfg, left, !left, false);
        if (!cont.continuous) return reject("not continuous on the " + std::string(to_string(side)) + " of x: " + cont.detail);
    }

    const bool d_vanishes = exact ? eval_exact(w.d, x).is_zero() : std::fabs(eval_float(w.d, x)) <= tol;
    if (!d_vanishes) return reject("d(x) != 0");
    const ScalarDerivative dd = one_sided_scalar_derivative(w.d, x, side, cfg, F.omega);
    if (!dd.exists() || std::fabs(*dd.value) > tol) {
        return reject("one-sided derivative of d at x is not 0 (" + std::string(to_string(dd.verdict)) + ")");
    }
    return LinearRelationCheck{true, ""};
}

}  // namespace markov
