#pragma once

#include <iosfwd>
#include <vector>

#include "markov/expr.hpp"
#include "markov/function.hpp"
#include "markov/interval.hpp"
#include "markov/quadnum.hpp"

// Brute-force reference computations, kept separate from the ladder engine so
// a bug there cannot validate itself.
namespace markov::oracle {

struct ScanPoint {
    QuadNum t;
    bool right = true;
    bool rational = true;
    ExactInterval quotient;
};

// n rational and n irrational points on each side of x (4n in total), with
// steps log-spaced from a quarter of the distance to the boundary down to
// 2^-depth of that. Quotients are exact. Requires n >= 16.
std::vector<ScanPoint> brute_quotient_scan(const IntervalFunction& F, const QuadNum& x, int n, int depth = 40);

// (e(x + h) - e(x - h)) / (2h), computed exactly and rounded once.
double central_difference(const Expr& e, const QuadNum& x, const QuadNum& h);

// Columns t_float, lo_float, hi_float, t_exact, lo_exact, hi_exact.
void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& scan);

}  // namespace markov::oracle
