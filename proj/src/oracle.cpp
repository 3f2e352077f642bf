#include "markov/oracle.hpp"

#include <cmath>
#include <ostream>

#include "markov/errors.hpp"

namespace markov::oracle {

namespace {

// Largest 1/m not above a quarter of the distance from x to the boundary.
QuadNum widest_step(const IntervalFunction& F, const QuadNum& x) {
    const QuadNum quarter = min(x - F.omega.lo, F.omega.hi - x) / QuadNum(4);
    if (quarter.sign() <= 0) throw out_of_domain("x = " + x.str() + " is not interior to " + F.omega.str());
    long m = std::max(1L, static_cast<long>(std::floor(1.0 / quarter.to_double())));
    while (QuadNum::ratio(1, m) > quarter) ++m;
    return QuadNum::ratio(1, m);
}

ExactInterval quotient(const IntervalFunction& F, const QuadNum& x, const QuadNum& t) {
    const QuadNum dl = eval_exact(F.f, t) - eval_exact(F.f, x);
    const QuadNum dh = eval_exact(F.g, t) - eval_exact(F.g, x);
    const QuadNum step = t - x;
    QuadNum lo = min(dl, dh) / step;
    QuadNum hi = max(dl, dh) / step;
    if (step.sign() < 0) std::swap(lo, hi);
    return ExactInterval(lo, hi);
}

}  // namespace

std::vector<ScanPoint> brute_quotient_scan(const IntervalFunction& F, const QuadNum& x, int n, int depth) {
    if (n < 16) throw precondition_failed("oracle scan needs n >= 16, got " + std::to_string(n));
    if (depth < 1 || depth > 60) throw precondition_failed("oracle scan depth must lie in [1, 60]");
    const QuadNum widest = widest_step(F, x);
    const QuadNum irrational_factor = QuadNum::sqrt2() - QuadNum(1);

    std::vector<ScanPoint> out;
    out.reserve(static_cast<std::size_t>(4 * n));
    for (int i = 0; i < n; ++i) {
        const double exponent = static_cast<double>(depth) * i / (n - 1);
        const long divisor = std::llround(std::exp2(exponent));
        const QuadNum step = widest / QuadNum(divisor);
        for (const bool right : {true, false}) {
            for (const bool rational : {true, false}) {
                const QuadNum offset = rational ? step : step * irrational_factor;
                const QuadNum t = right ? x + offset : x - offset;
                if (!F.omega.contains(t)) throw out_of_domain("scan point " + t.str() + " left the domain");
                out.push_back(ScanPoint{t, right, rational, quotient(F, x, t)});
            }
        }
    }
    return out;
}

double central_difference(const Expr& e, const QuadNum& x, const QuadNum& h) {
    if (h.sign() <= 0) throw precondition_failed("central difference step must be positive");
    return ((eval_exact(e, x + h) - eval_exact(e, x - h)) / (QuadNum(2) * h)).to_double();
}

void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& scan) {
    os << "t_float,lo_float,hi_float,t_exact,lo_exact,hi_exact\n";
    for (const auto& p : scan) {
        os << format_double(p.t.to_double()) << ',' << format_double(p.quotient.lo().to_double()) << ','
           << format_double(p.quotient.hi().to_double()) << ',' << p.t.str() << ',' << p.quotient.lo().str() << ','
           << p.quotient.hi().str() << '\n';
    }
}

}  // namespace markov::oracle
