#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "markov/quadnum.hpp"

namespace markov {

enum class UnaryOp { neg, abs };
enum class BinaryOp { add, sub, mul, div, min, max };
enum class CompareOp { lt, le, gt, ge };
enum class LogicalOp { conj, disj };

// Immutable expression tree in the single variable t. Copies share nodes.
class Expr {
public:
    struct Node;

    explicit Expr(Node node);

    const Node& node() const noexcept { return *node_; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::shared_ptr<const Node> node_;
};

// Guard of a piecewise branch; decided exactly at every QuadNum point.
class Predicate {
public:
    struct Node;

    explicit Predicate(Node node);

    const Node& node() const noexcept { return *node_; }

    friend bool operator==(const Predicate& a, const Predicate& b);

private:
    std::shared_ptr<const Node> node_;
};

namespace node {

struct Constant {
    QuadNum value;
    bool operator==(const Constant&) const = default;
};
struct Variable {
    bool operator==(const Variable&) const = default;
};
struct Unary {
    UnaryOp op;
    Expr operand;
    bool operator==(const Unary&) const = default;
};
struct Binary {
    BinaryOp op;
    Expr lhs;
    Expr rhs;
    bool operator==(const Binary&) const = default;
};
struct Power {
    Expr base;
    unsigned exponent;
    bool operator==(const Power&) const = default;
};
struct Branch {
    Predicate guard;
    Expr value;
    bool operator==(const Branch&) const = default;
};
// Branches are tried in order; `otherwise` is the mandatory else-branch.
struct Piecewise {
    std::vector<Branch> branches;
    Expr otherwise;
    bool operator==(const Piecewise&) const = default;
};

// t <op> bound
struct Compare {
    CompareOp op;
    QuadNum bound;
    bool operator==(const Compare&) const = default;
};
struct IsRational {
    bool operator==(const IsRational&) const = default;
};
struct Logical {
    LogicalOp op;
    Predicate lhs;
    Predicate rhs;
    bool operator==(const Logical&) const = default;
};

}  // namespace node

struct Expr::Node : std::variant<node::Constant, node::Variable, node::Unary, node::Binary, node::Power, node::Piecewise> {
    using variant::variant;
};

struct Predicate::Node : std::variant<node::Compare, node::IsRational, node::Logical> {
    using variant::variant;
};

// Exact evaluation. Throws division_by_zero naming the offending subexpression.
QuadNum eval_exact(const Expr& e, const QuadNum& t);

// Float64 evaluation: arithmetic in double, piecewise guards still decided
// exactly on t.
double eval_float(const Expr& e, const QuadNum& t);

template <class Scalar>
Scalar eval(const Expr& e, const QuadNum& t);

template <>
inline QuadNum eval<QuadNum>(const Expr& e, const QuadNum& t) {
    return eval_exact(e, t);
}

template <>
inline double eval<double>(const Expr& e, const QuadNum& t) {
    return eval_float(e, t);
}

bool holds(const Predicate& p, const QuadNum& t);

// Source text accepted by parse_expr. Structure-preserving for trees the
// parser can produce (constants that are nonnegative rationals or sqrt2);
// value-preserving for all trees.
std::string print(const Expr& e);
std::string print(const Predicate& p);

bool mentions_variable(const Expr& e);

std::size_t node_count(const Expr& e);

// Builders for trees in code.
namespace dsl {

Expr constant(QuadNum value);
Expr constant(long num, long den);
Expr t();
Expr sqrt2();
Expr neg(Expr e);
Expr abs(Expr e);
Expr binary(BinaryOp op, Expr lhs, Expr rhs);
Expr min(Expr lhs, Expr rhs);
Expr max(Expr lhs, Expr rhs);
Expr pow(Expr base, unsigned exponent);
Expr piecewise(std::vector<node::Branch> branches, Expr otherwise);

Predicate compare(CompareOp op, QuadNum bound);
Predicate rational();
Predicate conj(Predicate lhs, Predicate rhs);
Predicate disj(Predicate lhs, Predicate rhs);

}  // namespace dsl

Expr operator+(Expr lhs, Expr rhs);
Expr operator-(Expr lhs, Expr rhs);
Expr operator*(Expr lhs, Expr rhs);
Expr operator/(Expr lhs, Expr rhs);
Expr operator-(Expr e);

}  // namespace markov
