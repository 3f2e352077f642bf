#include <doctest.h>

#include "markov/errors.hpp"
#include "markov/parser.hpp"
#include "support.hpp"

using namespace markov;
using markov::test::q;
using markov::test::qs;

TEST_CASE("parse builds the expected trees") {
    CHECK(parse_expr("t") == dsl::t());
    CHECK(parse_expr("abs(t)") == dsl::abs(dsl::t()));
    CHECK(parse_expr("piecewise(rational(t): t, else: 0)") ==
          dsl::piecewise({{dsl::rational(), dsl::t()}}, dsl::constant(q(0))));
    CHECK(parse_expr("1 + 2 * t") == dsl::constant(q(1)) + dsl::constant(q(2)) * dsl::t());
    CHECK(parse_expr("t - 1 - 2") == (dsl::t() - dsl::constant(q(1))) - dsl::constant(q(2)));
    CHECK(parse_expr("-t^2") == dsl::neg(dsl::pow(dsl::t(), 2)));
    CHECK(parse_expr("3/4") == dsl::constant(q(3, 4)));
    CHECK(parse_expr("3 / 4") == dsl::constant(q(3)) / dsl::constant(q(4)));
    CHECK(parse_expr("6/8") == dsl::constant(q(3, 4)));
    CHECK(parse_expr("min(t, sqrt2)") == dsl::min(dsl::t(), dsl::sqrt2()));
    CHECK(parse_expr("piecewise(t < 1/2 and t >= -1/3 or rational(t): 1, t > 0: 2, else: 3)") ==
          dsl::piecewise({{dsl::disj(dsl::conj(dsl::compare(CompareOp::lt, q(1, 2)),
                                               dsl::compare(CompareOp::ge, q(-1, 3))),
                                     dsl::rational()),
                           dsl::constant(q(1))},
                          {dsl::compare(CompareOp::gt, q(0)), dsl::constant(q(2))}},
                         dsl::constant(q(3))));
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_expr("t + foo(t)");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 5);
        CHECK(std::string(e.what()).find("unknown identifier 'foo'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expr("1/0"), parse_error);
    CHECK_THROWS_AS(parse_expr("12abc"), parse_error);
    CHECK_THROWS_AS(parse_expr("1.5"), parse_error);
    CHECK_THROWS_AS(parse_expr("t +"), parse_error);
    CHECK_THROWS_AS(parse_expr("(t"), parse_error);
    CHECK_THROWS_AS(parse_expr("t^-1"), parse_error);
    CHECK_THROWS_AS(parse_expr("t^1/2"), parse_error);
    CHECK_THROWS_AS(parse_expr("piecewise(rational(t): t)"), parse_error);
    CHECK_THROWS_AS(parse_expr("piecewise(t < t: 1, else: 0)"), parse_error);
    CHECK_THROWS_AS(parse_expr("rational(t)"), parse_error);
    CHECK_THROWS_AS(parse_expr("sin(t)"), parse_error);
    CHECK_THROWS_AS(parse_expr("t $ 1"), parse_error);
}

TEST_CASE("parse_scalar folds constants") {
    CHECK(parse_scalar("-1/2") == q(-1, 2));
    CHECK(parse_scalar("1/3*sqrt2") == qs(0, 1, 1, 3));
    CHECK(parse_scalar("1/2-3/4*sqrt2") == qs(1, 2, -3, 4));
    CHECK(parse_scalar("(1 + sqrt2)^2") == qs(3, 1, 2, 1));
    CHECK_THROWS_AS(parse_scalar("t"), parse_error);
    CHECK_THROWS_AS(parse_scalar("1 / (sqrt2 - sqrt2)"), parse_error);
    test::Gen gen(31);
    for (int i = 0; i < 200; ++i) {
        const QuadNum v = gen.quad();
        CHECK(parse_scalar(v.str()) == v);
    }
}

TEST_CASE("exact evaluation of the counterexample endpoints") {
    const IntervalFunction F = test::lemma1();
    CHECK(eval_exact(F.f, q(1, 3)) == q(1, 3));
    CHECK(eval_exact(F.f, qs(0, 1, 1, 3)) == q(0));
    CHECK(eval_exact(F.g, qs(0, 1, 1, 3)) == qs(1, 1, 1, 3));
    CHECK(eval_interval(F, q(1, 2)) == ExactInterval(q(1, 2), q(1)));
    CHECK(eval_interval(F, q(0)) == ExactInterval(q(0), q(1)));
}

TEST_CASE("evaluation errors") {
    const Expr e = parse_expr("1 / t");
    try {
        eval_exact(e, q(0));
        FAIL("expected division_by_zero");
    } catch (const division_by_zero& err) {
        CHECK(std::string(err.what()).find("1 / t") != std::string::npos);
    }
    CHECK_THROWS_AS(eval_float(e, q(0)), division_by_zero);
    const IntervalFunction swapped = test::make("t + 1", "t");
    CHECK_THROWS_AS(eval_interval(swapped, q(0)), endpoint_order_violation);
    CHECK_THROWS_AS(eval_interval(test::smooth(), q(1)), out_of_domain);
    CHECK_THROWS_AS(eval_interval(test::smooth(), q(-1)), out_of_domain);
}

TEST_CASE("degenerate interval function") {
    const IntervalFunction F = test::make("t^2", "t^2", Domain{q(-10), q(10)});
    CHECK(eval_interval(F, q(3)) == ExactInterval(q(9), q(9)));
}

TEST_CASE("float evaluation follows exact guards") {
    const Expr f = test::lemma1().f;
    CHECK(eval_float(f, q(1, 4)) == 0.25);
    CHECK(eval_float(f, qs(0, 1, 1, 4)) == 0.0);
    CHECK(eval_float(parse_expr("t^3 - 2*t"), q(3)) == 21.0);
}

TEST_CASE("rational(t) agrees with is_rational") {
    const Expr e = parse_expr("piecewise(rational(t): 1, else: 0)");
    test::Gen gen(32);
    for (int i = 0; i < 300; ++i) {
        const QuadNum t = gen.quad();
        CHECK((eval_exact(e, t) == q(1)) == t.is_rational());
    }
}

TEST_CASE("exactness at rational points") {
    const Expr e = parse_expr("(t^3 - 1/3*t) / (t + 7) + min(t, 1/5) * abs(t - 2)");
    test::Gen gen(33);
    for (int i = 0; i < 100; ++i) {
        const QuadNum t(gen.rational(5, 9));
        CHECK(eval_exact(e, t).is_rational());
    }
}

TEST_CASE("print then parse is the identity on generated trees") {
    test::Gen gen(34);
    for (int i = 0; i < 300; ++i) {
        const Expr e = gen.expr(5);
        const std::string text = print(e);
        CAPTURE(text);
        CHECK(parse_expr(text) == e);
    }
}

TEST_CASE("print is value-preserving for arbitrary constants") {
    const Expr e = dsl::constant(qs(-1, 2, 3, 1)) * dsl::neg(dsl::constant(q(-3)));
    const Expr back = parse_expr(print(e));
    CHECK(eval_exact(back, q(0)) == eval_exact(e, q(0)));
}

TEST_CASE("function-definition file") {
    const IntervalFunction F = parse_function_file(
        "# counterexample\n"
        "f = piecewise(rational(t): t, else: 0)   # rational branch first\n"
        "\n"
        "  g = piecewise(rational(t): 1, else: t + 1)\n"
        "omega = (-1, 1/2*sqrt2)\n");
    CHECK(F.f == test::lemma1().f);
    CHECK(F.g == test::lemma1().g);
    CHECK(F.omega.lo == q(-1));
    CHECK(F.omega.hi == qs(0, 1, 1, 2));

    try {
        parse_function_file("f = t\ng = t +* 1\nomega = (0, 1)\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 8);
    }
    CHECK_THROWS_AS(parse_function_file("f = t\nomega = (0, 1)\n"), parse_error);
    CHECK_THROWS_AS(parse_function_file("f = t\ng = t\nomega = (1, 0)\n"), parse_error);
    CHECK_THROWS_AS(parse_function_file("f = t\ng = t\ng = t\nomega = (0, 1)\n"), parse_error);
    CHECK_THROWS_AS(parse_function_file("f = t\ng = t\nh = t\nomega = (0, 1)\n"), parse_error);
    CHECK_THROWS_AS(parse_function_file("f t\n"), parse_error);
    CHECK_THROWS_AS(load_function_file("/nonexistent/file.fn"), parse_error);
}
