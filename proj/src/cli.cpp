#include "markov/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "markov/classifier.hpp"
#include "markov/errors.hpp"
#include "markov/oracle.hpp"
#include "markov/parser.hpp"
#include "markov/report.hpp"

namespace markov::cli {

namespace {

const std::map<std::string, std::string>& builtin_functions() {
    static const std::map<std::string, std::string> fns{
        {"lemma1",
         "f = piecewise(rational(t): t, else: 0)\n"
         "g = piecewise(rational(t): 1, else: t + 1)\n"
         "omega = (-1, 1)\n"},
        {"abs_pair", "f = -abs(t)\ng = abs(t)\nomega = (-1, 1)\n"},
        {"smooth", "f = t\ng = t^2 + 1\nomega = (-1, 1)\n"},
        {"jump", "f = piecewise(t > 0: 1, else: 0)\ng = piecewise(t > 0: 1, else: 0) + 1\nomega = (-1, 1)\n"},
    };
    return fns;
}

struct Options {
    std::string file;
    std::string point;
    std::string side = "both";
    std::string mode = "exact";
    int depth = 0;
    double tol = -1;
    bool json = false;
    bool verify = false;
    int scan_n = 16;
    std::string demo;
};

LadderConfig make_config(const Options& o) {
    LadderConfig cfg = default_config(o.mode == "float" ? Mode::floating : Mode::exact);
    if (o.depth > 0) cfg.depth = o.depth;
    if (o.tol >= 0) cfg.tol_abs = o.tol;
    cfg.validate();
    return cfg;
}

IntervalFunction load(const std::string& file) {
    // "@name" selects a built-in function.
    if (!file.empty() && file.front() == '@') {
        const auto& fns = builtin_functions();
        const auto it = fns.find(file.substr(1));
        if (it == fns.end()) throw parse_error("unknown built-in function '" + file + "'", 0, 0);
        return parse_function_file(it->second);
    }
    return load_function_file(file);
}

std::string render(const std::optional<ExactInterval>& exact, const std::optional<FloatInterval>& approx) {
    if (exact) return exact->str();
    if (approx) return approx->str();
    return "-";
}

void print_scalar(std::ostream& out, const char* name, const ScalarDerivative& d) {
    out << "  " << std::left << std::setw(5) << name << std::setw(24) << to_string(d.verdict);
    if (d.exact) {
        out << d.exact->str();
    } else if (d.value) {
        out << format_double(*d.value);
    }
    if (!d.exists() && (d.rational_limit || d.irrational_limit)) {
        out << "(rational -> " << (d.rational_limit ? format_double(*d.rational_limit) : "?") << ", irrational -> "
            << (d.irrational_limit ? format_double(*d.irrational_limit) : "?") << ")";
    }
    out << '\n';
}

void print_one_sided(std::ostream& out, const OneSidedDerivatives& d) {
    out << "one-sided endpoint derivatives:\n";
    print_scalar(out, "f'-", d.f_minus);
    print_scalar(out, "f'+", d.f_plus);
    print_scalar(out, "g'-", d.g_minus);
    print_scalar(out, "g'+", d.g_plus);
}

void print_result(std::ostream& out, const DerivativeResult& r) {
    out << "verdict: " << to_string(r.verdict) << '\n';
    out << "value:   " << render(r.exact_value, r.value) << '\n';
    out << "left:    " << render(std::nullopt, r.left) << '\n';
    out << "right:   " << render(std::nullopt, r.right) << '\n';
    if (r.one_sided) print_one_sided(out, *r.one_sided);
    out << "ladders:\n";
    for (const auto& ladder : r.ladders) {
        out << "  " << std::left << std::setw(6) << to_string(ladder.side) << std::setw(11) << to_string(ladder.flavor)
            << std::setw(24) << to_string(ladder.status) << std::right << std::setw(3) << ladder.points.size()
            << " rungs";
        if (!ladder.points.empty()) {
            const auto& last = ladder.points.back();
            out << ", last t = " << format_double(last.t.to_double()) << ", q = "
                << (last.exact ? last.exact->str() : last.quotient.str());
        }
        out << '\n';
    }
    for (const auto& note : r.notes) out << "note: " << note << '\n';
}

void print_report(std::ostream& out, const ClassificationReport& r) {
    out << "case:     " << to_string(r.kind) << '\n';
    out << "∂F(x):    " << to_string(r.markov.verdict) << ' ' << render(r.markov.exact_value, r.markov.value) << '\n';
    print_one_sided(out, r.one_sided);
    out << "dpm:      " << (r.dpm_holds ? (*r.dpm_holds ? "holds" : "fails") : "n/a") << '\n';
    out << "ufa:      " << (r.ufa_checked ? (*r.ufa_checked ? "holds" : "fails") : "n/a") << '\n';
    out << "evidence: " << r.evidence << '\n';
}

// Deepest oracle quotients against an EXISTS verdict.
bool oracle_agrees(const IntervalFunction& F, const QuadNum& x, const DerivativeResult& r, const LadderConfig& cfg,
                   std::ostream& out) {
    if (!r.exists()) {
        out << "oracle: skipped (no limit to compare)\n";
        return true;
    }
    const auto scan = oracle::brute_quotient_scan(F, x, 16);
    LadderConfig loose = cfg;
    loose.tol_abs *= 10;
    loose.tol_rel *= 10;
    const std::size_t tail = 4;  // one point per side and flavor at the smallest step
    for (std::size_t i = scan.size() - tail; i < scan.size(); ++i) {
        const FloatInterval q = to_float(scan[i].quotient);
        const FloatInterval& want = scan[i].right ? *r.right : *r.left;
        if (!loose.close(q, want)) {
            out << "oracle: DISAGREE at t = " << scan[i].t.str() << ": " << q.str() << " vs " << want.str() << '\n';
            return false;
        }
    }
    out << "oracle: agree\n";
    return true;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const IntervalFunction F = load(o.file);
    const QuadNum t = parse_scalar(o.point);
    const ExactInterval v = eval_interval(F, t);
    if (o.json) {
        out << json{{"t", t.str()}, {"value", to_json(v)}, {"float", to_json(to_float(v))}}.dump(2) << '\n';
    } else {
        out << v.str() << "  ~ " << to_float(v).str() << '\n';
    }
    return exit_ok;
}

int cmd_diff(const Options& o, std::ostream& out) {
    const IntervalFunction F = load(o.file);
    const QuadNum x = parse_scalar(o.point);
    const LadderConfig cfg = make_config(o);
    DerivativeResult r;
    if (o.side == "both") {
        r = markov_derivative(F, x, cfg);
    } else {
        r = one_sided_markov_derivative(F, x, o.side == "left" ? Side::left : Side::right, cfg);
        r.one_sided = one_sided_all(F, x, cfg);
    }
    if (o.json) {
        out << to_json(r).dump(2) << '\n';
    } else {
        out << "x = " << x.str() << ", " << to_string(cfg.mode) << " mode, side " << o.side << '\n';
        print_result(out, r);
    }
    if (o.verify && o.side == "both" && !oracle_agrees(F, x, r, cfg, o.json ? std::cerr : out)) return exit_internal;
    return exit_ok;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const IntervalFunction F = load(o.file);
    const QuadNum x = parse_scalar(o.point);
    const ClassificationReport r = classify(F, x, make_config(o));
    if (o.json) {
        out << to_json(r).dump(2) << '\n';
    } else {
        print_report(out, r);
    }
    return exit_ok;
}

int cmd_scan(const Options& o, std::ostream& out) {
    const IntervalFunction F = load(o.file);
    oracle::write_scan_csv(out, oracle::brute_quotient_scan(F, parse_scalar(o.point), o.scan_n));
    return exit_ok;
}

int demo_lemma1(std::ostream& out) {
    const IntervalFunction F = parse_function_file(builtin_functions().at("lemma1"));
    const ExactInterval at_zero = eval_interval(F, QuadNum(0));
    out << "F(t) = [f(t), g(t)]\n  f = " << print(F.f) << "\n  g = " << print(F.g) << "\nF(0) = " << at_zero.str()
        << "\n\n";
    struct Probe {
        const char* label;
        QuadNum t;
    };
    const Probe cases[] = {
        {"t > 0, rational", QuadNum::ratio(1, 2)},
        {"t < 0, rational", QuadNum::ratio(-1, 2)},
        {"t > 0, irrational", QuadNum(0, mpq_class(1, 4))},
        {"t < 0, irrational", QuadNum(0, mpq_class(-1, 4))},
    };
    const ExactInterval expected(QuadNum(0), QuadNum(1));
    bool ok = true;
    for (const auto& c : cases) {
        const ExactInterval ft = eval_interval(F, c.t);
        const ExactInterval diff = markov_diff(ft, at_zero);
        const ExactInterval q = scale_div(diff, c.t);
        const bool pass = q == expected;
        ok = ok && pass;
        out << c.label << ": t = " << c.t.str() << "\n  F(t) ⊖ F(0) = " << ft.str() << " ⊖ " << at_zero.str()
            << " = " << diff.str() << "\n  (F(t) ⊖ F(0)) / t = " << q.str() << (pass ? "  ok" : "  FAILED") << '\n';
    }
    const LadderConfig cfg = default_config();
    const ClassificationReport r = classify(F, QuadNum(0), cfg);
    out << "\n";
    print_report(out, r);
    ok = ok && r.kind == Case::beyond_theorem1 && r.markov.exact_value == expected;
    out << (ok ? "all four cases give [0, 1]\n" : "lemma1 reproduction FAILED\n");
    return ok ? exit_ok : exit_internal;
}

int demo_theorem2(std::ostream& out) {
    const IntervalFunction F = parse_function_file(builtin_functions().at("smooth"));
    const LadderConfig cfg = default_config();
    out << "F(t) = [" << print(F.f) << ", " << print(F.g) << "], x = 0\n";
    bool ok = true;
    for (const Side side : {Side::left, Side::right}) {
        const ScalarDerivative fs = one_sided_scalar_derivative(F.f, QuadNum(0), side, cfg, F.omega);
        const ScalarDerivative gs = one_sided_scalar_derivative(F.g, QuadNum(0), side, cfg, F.omega);
        const DerivativeResult measured = one_sided_markov_derivative(F, QuadNum(0), side, cfg);
        const bool holds = verify_theorem2(F, QuadNum(0), side, cfg);
        ok = ok && holds;
        out << to_string(side) << ": f' = " << format_double(*fs.value) << ", g' = " << format_double(*gs.value)
            << ", [min, max] = [" << format_double(std::min(*fs.value, *gs.value)) << ", "
            << format_double(std::max(*fs.value, *gs.value)) << "], measured " << render(measured.exact_value, measured.value)
            << (holds ? "  ok" : "  FAILED") << '\n';
    }
    return ok ? exit_ok : exit_internal;
}

int demo_dpm(std::ostream& out) {
    const IntervalFunction F = parse_function_file(builtin_functions().at("abs_pair"));
    out << "F(t) = [" << print(F.f) << ", " << print(F.g) << "], x = 0\n";
    const ClassificationReport r = classify(F, QuadNum(0), default_config());
    print_report(out, r);
    const bool ok = r.kind == Case::crossed_derivatives &&
                    r.markov.exact_value == ExactInterval(QuadNum(-1), QuadNum(1));
    return ok ? exit_ok : exit_internal;
}

int demo_lemcont(std::ostream& out) {
    const IntervalFunction F = parse_function_file(builtin_functions().at("jump"));
    out << "F(t) = [" << print(F.f) << ", " << print(F.g) << "], x = 0\n";
    const ClassificationReport r = classify(F, QuadNum(0), default_config());
    print_report(out, r);
    const bool ok = r.kind == Case::not_differentiable && r.markov.verdict == Verdict::not_exists_divergent;
    return ok ? exit_ok : exit_internal;
}

int cmd_demo(const Options& o, std::ostream& out, std::ostream& err) {
    static const std::map<std::string, std::function<int(std::ostream&)>> demos{
        {"lemma1", demo_lemma1}, {"theorem2", demo_theorem2}, {"dpm", demo_dpm}, {"lemcont", demo_lemcont}};
    const auto it = demos.find(o.demo);
    if (it == demos.end()) {
        err << "unknown demo '" << o.demo << "' (choose lemma1, theorem2, dpm, lemcont)\n";
        return exit_usage;
    }
    return it->second(out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Markov derivatives of interval functions F(t) = [f(t), g(t)]", "markov"};
    app.require_subcommand(1);
    Options o;

    auto add_ladder_flags = [&](CLI::App* cmd) {
        cmd->add_option("--mode", o.mode, "exact (default) or float arithmetic")
            ->check(CLI::IsMember({"exact", "float"}));
        cmd->add_option("--depth", o.depth, "ladder rungs per side and flavor")->check(CLI::Range(8, 200));
        cmd->add_option("--tol", o.tol, "absolute convergence tolerance")->check(CLI::NonNegativeNumber);
        cmd->add_flag("--json", o.json, "emit JSON");
    };
    auto add_target = [&](CLI::App* cmd, const char* point_name) {
        cmd->add_option("file", o.file, "function-definition file, or @lemma1/@abs_pair/@smooth/@jump")->required();
        cmd->add_option(point_name, o.point, "point, e.g. 0, -1/2 or 1/3*sqrt2")->required();
    };

    CLI::App* eval = app.add_subcommand("eval", "print F(t)");
    add_target(eval, "t");
    eval->add_flag("--json", o.json, "emit JSON");

    CLI::App* diff = app.add_subcommand("diff", "compute the Markov derivative at x");
    add_target(diff, "x");
    diff->add_option("--side", o.side, "left, right or both")->check(CLI::IsMember({"left", "right", "both"}));
    diff->add_flag("--verify", o.verify, "cross-check against the brute-force oracle");
    add_ladder_flags(diff);

    CLI::App* cls = app.add_subcommand("classify", "classify differentiability of F at x");
    add_target(cls, "x");
    add_ladder_flags(cls);

    CLI::App* scan = app.add_subcommand("scan", "CSV of brute-force difference quotients around x");
    add_target(scan, "x");
    scan->add_option("-n", o.scan_n, "points per side and flavor")->check(CLI::Range(16, 4096));

    CLI::App* demo = app.add_subcommand("demo", "scripted reproductions: lemma1, theorem2, dpm, lemcont");
    demo->add_option("name", o.demo, "demo name")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (eval->parsed()) return cmd_eval(o, out);
        if (diff->parsed()) return cmd_diff(o, out);
        if (cls->parsed()) return cmd_classify(o, out);
        if (scan->parsed()) return cmd_scan(o, out);
        return cmd_demo(o, out, err);
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const precondition_failed& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const evaluation_error& e) {
        err << "evaluation error: " << e.what() << '\n';
        return exit_domain;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

}  // namespace markov::cli
