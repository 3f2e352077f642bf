#include <doctest.h>

#include "markov/classifier.hpp"
#include "markov/errors.hpp"
#include "markov/report.hpp"
#include "support.hpp"

using namespace markov;
using markov::test::q;

namespace {

ScalarDerivative known(double v) {
    ScalarDerivative d;
    d.verdict = Verdict::exists;
    d.value = v;
    return d;
}

OneSidedDerivatives slopes(double fm, double fp, double gm, double gp) {
    return OneSidedDerivatives{known(fm), known(fp), known(gm), known(gp)};
}

LinearRelationWitness f_witness(const IntervalFunction& F) {
    return {dsl::constant(q(1)), dsl::constant(q(0)), F.f, dsl::constant(q(0)), q(1)};
}

LinearRelationWitness length_witness(const IntervalFunction& F) {
    return {dsl::constant(q(-1)), dsl::constant(q(1)), F.g - F.f, dsl::constant(q(0)), q(2)};
}

}  // namespace

TEST_CASE("classify the three documented cases") {
    const LadderConfig cfg = default_config();
    const ClassificationReport a = classify(test::smooth(), q(0), cfg);
    CHECK(a.kind == Case::both_differentiable);
    CHECK(a.dpm_holds == false);
    CHECK(a.ufa_checked == true);

    const ClassificationReport b = classify(test::abs_pair(), q(0), cfg);
    CHECK(b.kind == Case::crossed_derivatives);
    CHECK(b.markov.exact_value == ExactInterval(q(-1), q(1)));
    CHECK(b.dpm_holds == true);
    CHECK(b.ufa_checked == true);

    const ClassificationReport c = classify(test::lemma1(), q(0), cfg);
    CHECK(c.kind == Case::beyond_theorem1);
    CHECK(c.markov.exact_value == ExactInterval(q(0), q(1)));
    CHECK_FALSE(c.dpm_holds.has_value());
    CHECK(c.evidence.find("rational ladder -> 1, irrational ladder -> 0") != std::string::npos);

    const ClassificationReport d = classify(test::unit_jump(), q(0), cfg);
    CHECK(d.kind == Case::not_differentiable);
    CHECK(d.markov.verdict == Verdict::not_exists_divergent);
}

TEST_CASE("crossed-derivative condition") {
    CHECK(check_dpm(slopes(1, -1, -1, 1)));
    CHECK(check_dpm(slopes(1, 1, 1, 1)));
    CHECK_FALSE(check_dpm(slopes(1, 1, 0, 0)));
    CHECK(check_dpm(slopes(1, -1, -1, 1 + 5e-8)));
    CHECK_FALSE(check_dpm(slopes(1, -1, -1, 1 + 5e-7)));
    OneSidedDerivatives missing = slopes(1, 1, 1, 1);
    missing.g_plus = ScalarDerivative{};
    CHECK_THROWS_AS(check_dpm(missing), missing_one_sided);
}

TEST_CASE("one-sided formula check") {
    const LadderConfig cfg = default_config();
    CHECK(verify_theorem2(test::smooth(), q(0), Side::right, cfg));
    CHECK(verify_theorem2(test::smooth(), q(0), Side::left, cfg));
    CHECK(verify_theorem2(test::affine(), q(0), Side::right, cfg));
    CHECK(verify_theorem2(test::abs_pair(), q(0), Side::right, cfg));
    CHECK_THROWS_AS(verify_theorem2(test::lemma1(), q(0), Side::right, cfg), missing_one_sided);
}

TEST_CASE("corollary with continuity witnesses") {
    const LadderConfig cfg = default_config();
    CHECK(verify_corollary_ufa(test::abs_pair(), q(0), ContinuityWitness::f_continuous, cfg));
    CHECK(verify_corollary_ufa(test::smooth(), q(0), ContinuityWitness::g_continuous, cfg));
    CHECK(verify_corollary_ufa(test::smooth(), q(0), ContinuityWitness::length_continuous, cfg));
    CHECK_THROWS_AS(verify_corollary_ufa(test::lemma1(), q(0), ContinuityWitness::length_continuous, cfg),
                    witness_not_continuous);
    CHECK_THROWS_AS(verify_corollary_ufa(test::lemma1(), q(0), ContinuityWitness::f_continuous, cfg),
                    witness_not_continuous);
    CHECK_THROWS_AS(verify_corollary_ufa(test::unit_jump(), q(0), ContinuityWitness::f_continuous, cfg),
                    precondition_failed);
}

TEST_CASE("linear-relation witnesses") {
    const LadderConfig cfg = default_config();
    for (const Side side : {Side::left, Side::right}) {
        CHECK(check_linear_relation(test::smooth(), f_witness(test::smooth()), side, q(0), cfg));
        CHECK(check_linear_relation(test::abs_pair(), length_witness(test::abs_pair()), side, q(0), cfg));
        const auto rejected = check_linear_relation(test::lemma1(), f_witness(test::lemma1()), side, q(0), cfg);
        CHECK_FALSE(rejected);
        CHECK(rejected.reason.find("not continuous") != std::string::npos);
        CHECK_FALSE(check_linear_relation(test::lemma1(), length_witness(test::lemma1()), side, q(0), cfg));
    }

    // (-1, 1) has |alpha| + |beta| = 2, so mu = 1 is not a valid bound for it.
    LinearRelationWitness tight = length_witness(test::abs_pair());
    tight.mu = q(1);
    CHECK(check_linear_relation(test::abs_pair(), tight, Side::right, q(0), cfg).reason.find("> mu") != std::string::npos);

    const IntervalFunction F = test::smooth();
    LinearRelationWitness w = f_witness(F);
    w.c = F.g;
    CHECK(check_linear_relation(F, w, Side::right, q(0), cfg).reason.find("!= c + d") != std::string::npos);
    w = f_witness(F);
    w.mu = q(1, 2);
    CHECK(check_linear_relation(F, w, Side::right, q(0), cfg).reason.find("> mu") != std::string::npos);
    w = length_witness(F);
    w.alpha = dsl::constant(q(1));
    w.c = F.g + F.f;
    w.mu = q(2);
    CHECK(check_linear_relation(F, w, Side::right, q(0), cfg).reason.find("alpha - beta") != std::string::npos);
    // d = t^2 has d(0) = 0 and a vanishing derivative; d = t does not.
    w = f_witness(F);
    w.c = F.f - dsl::pow(dsl::t(), 2);
    w.d = dsl::pow(dsl::t(), 2);
    CHECK(check_linear_relation(F, w, Side::right, q(0), cfg));
    w.c = F.f - dsl::t();
    w.d = dsl::t();
    CHECK(check_linear_relation(F, w, Side::right, q(0), cfg).reason.find("derivative of d") != std::string::npos);
    w.c = F.f - dsl::constant(q(1));
    w.d = dsl::constant(q(1));
    CHECK(check_linear_relation(F, w, Side::right, q(0), cfg).reason == "d(x) != 0");
    w = f_witness(F);
    w.mu = q(0);
    CHECK_FALSE(check_linear_relation(F, w, Side::right, q(0), cfg));
}

TEST_CASE("continuous length with a discontinuous lower endpoint") {
    // f jumps between t and -t, g - f = 1 + t^2 is smooth.
    const IntervalFunction F = test::make("piecewise(rational(t): t, else: -t)",
                                          "piecewise(rational(t): t, else: -t) + 1 + t^2");
    const LadderConfig cfg = default_config();
    CHECK(check_linear_relation(F, length_witness(F), Side::right, q(0), cfg));
    CHECK_FALSE(check_linear_relation(F, f_witness(F), Side::right, q(0), cfg));
    // The corollary then forces the endpoint derivatives to exist, and they do not:
    // so the Markov derivative cannot exist either.
    CHECK_FALSE(classify(F, q(0), cfg).markov.exists());
}

TEST_CASE("witness continuity is judged on the open side") {
    // A jump at x leaves f continuous on (x, 1): the hypotheses hold there,
    // and the conclusion is vacuous because the right derivative of F fails.
    const LadderConfig cfg = default_config();
    const IntervalFunction F = test::unit_jump();
    CHECK(check_linear_relation(F, f_witness(F), Side::right, q(0), cfg));
    CHECK(check_linear_relation(F, f_witness(F), Side::left, q(0), cfg));
    CHECK_FALSE(one_sided_markov_derivative(F, q(0), Side::right, cfg).exists());
}

TEST_CASE("jumps are never differentiable") {
    const LadderConfig cfg = default_config();
    for (const char* f : {"piecewise(t > 0: 1, else: 0)", "piecewise(t >= 0: -2, else: t)",
                          "piecewise(t < 0: 1/100, else: t^2)"}) {
        const IntervalFunction F = test::make(f, std::string(f) + " + 5");
        const ClassificationReport r = classify(F, q(0), cfg);
        CHECK(r.kind == Case::not_differentiable);
        CHECK(r.markov.verdict == Verdict::not_exists_divergent);
        bool divergent_trace = false;
        for (const auto& ladder : r.markov.ladders) divergent_trace |= ladder.status == Verdict::not_exists_divergent;
        CHECK(divergent_trace);
    }
}

TEST_CASE("soundness and exhaustiveness on random piecewise polynomials") {
    test::Gen gen(51);
    const LadderConfig cfg = default_config();
    int applied = 0;
    for (int i = 0; i < 50; ++i) {
        // f continuous with one-sided slopes a, b at 0; g = f + 2 + c*t + |t|*e.
        const Expr a = dsl::constant(QuadNum(gen.rational(3, 2)));
        const Expr b = dsl::constant(QuadNum(gen.rational(3, 2)));
        const Expr c = dsl::constant(QuadNum(gen.rational(1, 2)));
        const Expr e = dsl::constant(QuadNum(gen.rational(1, 2)));
        const Expr f = dsl::piecewise({{dsl::compare(CompareOp::lt, q(0)), a * dsl::t()}}, b * dsl::t()) +
                       dsl::pow(dsl::t(), static_cast<unsigned>(gen.integer(2, 3)));
        const Expr g = f + dsl::constant(q(2)) + c * dsl::t() + e * dsl::abs(dsl::t());
        const IntervalFunction F{f, g, Domain{q(-1, 2), q(1, 2)}};
        const ClassificationReport r = classify(F, q(0), cfg);
        if (r.kind == Case::both_differentiable || r.kind == Case::crossed_derivatives) {
            CHECK(verify_theorem2(F, q(0), Side::left, cfg));
            CHECK(verify_theorem2(F, q(0), Side::right, cfg));
            CHECK(r.ufa_checked == true);
        }
        if (r.kind != Case::not_differentiable && r.kind != Case::inconclusive) CHECK(r.markov.exists());
        if (!r.markov.exists()) CHECK((r.kind == Case::not_differentiable || r.kind == Case::inconclusive));
        if (r.markov.exists()) {
            ++applied;
            CHECK(verify_corollary_ufa(F, q(0), ContinuityWitness::f_continuous, cfg));
        }
    }
    CHECK(applied > 0);
}

TEST_CASE("classification report JSON has stable field names") {
    const json j = to_json(classify(test::abs_pair(), q(0), default_config()));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"case", "markov", "one_sided", "dpm_holds", "ufa_checked", "evidence"});
    CHECK(j["case"] == "CASE_B_CROSSED_DERIVATIVES");
    CHECK(j["markov"]["value"] == json{{"lo", "-1"}, {"hi", "1"}});
    CHECK(j["dpm_holds"] == true);
}
