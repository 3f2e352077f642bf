#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "markov/derivative.hpp"
#include "markov/expr.hpp"
#include "markov/function.hpp"

namespace markov {

// Which branch of the existence characterization describes F at x.
enum class Case {
    both_differentiable,   // f and g differentiable at x
    crossed_derivatives,   // f'- = g'+ and g'- = f'+
    beyond_theorem1,       // ∂F(x) exists with some one-sided endpoint derivative missing
    not_differentiable,
    inconclusive,
};

std::string_view to_string(Case c);

struct ClassificationReport {
    Case kind = Case::inconclusive;
    DerivativeResult markov;
    OneSidedDerivatives one_sided;
    std::optional<bool> dpm_holds;
    std::optional<bool> ufa_checked;
    std::string evidence;
};

// Default tolerance for the crossed-equality and min/max interval checks.
inline constexpr double classifier_tol = 1e-7;

ClassificationReport classify(const IntervalFunction& F, const QuadNum& x, const LadderConfig& cfg,
                              double tol = classifier_tol);

// f'-(x) = g'+(x) and g'-(x) = f'+(x) within tol. Throws missing_one_sided.
bool check_dpm(const OneSidedDerivatives& d, double tol = classifier_tol);

// Measured ∂F±(x) equals [min, max] of the endpoint one-sided derivatives on
// that side. Throws missing_one_sided when either endpoint derivative is
// missing on the side.
bool verify_theorem2(const IntervalFunction& F, const QuadNum& x, Side side, const LadderConfig& cfg,
                     double tol = classifier_tol);

enum class ContinuityWitness { f_continuous, g_continuous, length_continuous };

std::string_view to_string(ContinuityWitness w);

// Both one-sided min/max intervals equal ∂F(x). Requires ∂F(x) to exist
// (precondition_failed otherwise); throws witness_not_continuous when the
// named witness fails its continuity check around x.
bool verify_corollary_ufa(const IntervalFunction& F, const QuadNum& x, ContinuityWitness witness,
                          const LadderConfig& cfg, double tol = classifier_tol);

// alpha * f + beta * g = c + d with |alpha| + |beta| <= mu and
// mu * |alpha - beta| >= 1.
struct LinearRelationWitness {
    Expr alpha;
    Expr beta;
    Expr c;
    Expr d;
    QuadNum mu;
};

struct LinearRelationCheck {
    bool holds = false;
    std::string reason;

    explicit operator bool() const { return holds; }
};

// Verifies the witness on the given side of x: the identity and both bounds
// at every ladder point, continuity of alpha, beta and c on that side of x,
// d(x) = 0 and a vanishing one-sided derivative of d.
LinearRelationCheck check_linear_relation(const IntervalFunction& F, const LinearRelationWitness& w, Side side,
                                          const QuadNum& x, const LadderConfig& cfg, double tol = classifier_tol);

}  // namespace markov
