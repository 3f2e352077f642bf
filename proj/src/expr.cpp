#include "markov/expr.hpp"

#include <utility>

#include "markov/errors.hpp"

namespace markov {

Expr::Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    return static_cast<const Expr::Node::variant&>(*a.node_) == static_cast<const Expr::Node::variant&>(*b.node_);
}

Predicate::Predicate(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

bool operator==(const Predicate& a, const Predicate& b) {
    if (a.node_ == b.node_) return true;
    return static_cast<const Predicate::Node::variant&>(*a.node_) ==
           static_cast<const Predicate::Node::variant&>(*b.node_);
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool compare_holds(CompareOp op, const QuadNum& t, const QuadNum& bound) {
    switch (op) {
        case CompareOp::lt: return t < bound;
        case CompareOp::le: return t <= bound;
        case CompareOp::gt: return t > bound;
        case CompareOp::ge: return t >= bound;
    }
    return false;
}

QuadNum to_scalar(const QuadNum& q, QuadNum*) { return q; }
double to_scalar(const QuadNum& q, double*) { return q.to_double(); }

QuadNum scalar_abs(const QuadNum& v) { return abs(v); }
double scalar_abs(double v) { return v < 0 ? -v : v; }

bool is_zero(const QuadNum& v) { return v.is_zero(); }
bool is_zero(double v) { return v == 0.0; }

template <class Scalar>
Scalar power(Scalar base, unsigned exponent) {
    Scalar result = to_scalar(QuadNum(1), static_cast<Scalar*>(nullptr));
    while (exponent != 0) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent != 0) base = base * base;
    }
    return result;
}

template <class Scalar>
Scalar evaluate(const Expr& e, const QuadNum& t) {
    return std::visit(
        overloaded{
            [&](const node::Constant& c) -> Scalar { return to_scalar(c.value, static_cast<Scalar*>(nullptr)); },
            [&](const node::Variable&) -> Scalar { return to_scalar(t, static_cast<Scalar*>(nullptr)); },
            [&](const node::Unary& u) -> Scalar {
                Scalar v = evaluate<Scalar>(u.operand, t);
                return u.op == UnaryOp::neg ? Scalar(-v) : scalar_abs(v);
            },
            [&](const node::Binary& b) -> Scalar {
                Scalar l = evaluate<Scalar>(b.lhs, t);
                Scalar r = evaluate<Scalar>(b.rhs, t);
                switch (b.op) {
                    case BinaryOp::add: return l + r;
                    case BinaryOp::sub: return l - r;
                    case BinaryOp::mul: return l * r;
                    case BinaryOp::div:
                        if (is_zero(r)) {
                            throw division_by_zero("division by zero in `" + print(e) + "` at t = " + t.str());
                        }
                        return l / r;
                    case BinaryOp::min: return r < l ? r : l;
                    case BinaryOp::max: return l < r ? r : l;
                }
                throw evaluation_error("unknown binary operator");
            },
            [&](const node::Power& p) -> Scalar { return power(evaluate<Scalar>(p.base, t), p.exponent); },
            [&](const node::Piecewise& p) -> Scalar {
                for (const auto& branch : p.branches) {
                    if (holds(branch.guard, t)) return evaluate<Scalar>(branch.value, t);
                }
                return evaluate<Scalar>(p.otherwise, t);
            },
        },
        static_cast<const Expr::Node::variant&>(e.node()));
}

// Printing precedence: 1 sum, 2 product, 3 factor (negation, power), 4 atom.
int level(const Expr& e) {
    return std::visit(overloaded{
                          // Non-literal constants print parenthesized.
                          [](const node::Constant&) { return 4; },
                          [](const node::Variable&) { return 4; },
                          [](const node::Unary& u) { return u.op == UnaryOp::neg ? 3 : 4; },
                          [](const node::Binary& b) {
                              switch (b.op) {
                                  case BinaryOp::add:
                                  case BinaryOp::sub: return 1;
                                  case BinaryOp::mul:
                                  case BinaryOp::div: return 2;
                                  default: return 4;
                              }
                          },
                          [](const node::Power&) { return 3; },
                          [](const node::Piecewise&) { return 4; },
                      },
                      static_cast<const Expr::Node::variant&>(e.node()));
}

std::string print_at(const Expr& e, int min_level) {
    std::string s = print(e);
    return level(e) < min_level ? "(" + s + ")" : s;
}

const char* compare_symbol(CompareOp op) {
    switch (op) {
        case CompareOp::lt: return "<";
        case CompareOp::le: return "<=";
        case CompareOp::gt: return ">";
        case CompareOp::ge: return ">=";
    }
    return "?";
}

}  // namespace

QuadNum eval_exact(const Expr& e, const QuadNum& t) { return evaluate<QuadNum>(e, t); }

double eval_float(const Expr& e, const QuadNum& t) { return evaluate<double>(e, t); }

bool holds(const Predicate& p, const QuadNum& t) {
    return std::visit(overloaded{
                          [&](const node::Compare& c) { return compare_holds(c.op, t, c.bound); },
                          [&](const node::IsRational&) { return t.is_rational(); },
                          [&](const node::Logical& l) {
                              if (l.op == LogicalOp::conj) return holds(l.lhs, t) && holds(l.rhs, t);
                              return holds(l.lhs, t) || holds(l.rhs, t);
                          },
                      },
                      static_cast<const Predicate::Node::variant&>(p.node()));
}

std::string print(const Expr& e) {
    return std::visit(
        overloaded{
            [](const node::Constant& c) -> std::string {
                if (c.value == QuadNum::sqrt2()) return "sqrt2";
                if (c.value.is_rational() && c.value.sign() >= 0) return c.value.str();
                return "(" + c.value.str() + ")";
            },
            [](const node::Variable&) -> std::string { return "t"; },
            [](const node::Unary& u) -> std::string {
                if (u.op == UnaryOp::abs) return "abs(" + print(u.operand) + ")";
                const bool bare = level(u.operand) == 4 || std::holds_alternative<node::Power>(u.operand.node());
                return bare ? "-" + print(u.operand) : "-(" + print(u.operand) + ")";
            },
            [](const node::Binary& b) -> std::string {
                switch (b.op) {
                    case BinaryOp::add: return print_at(b.lhs, 1) + " + " + print_at(b.rhs, 2);
                    case BinaryOp::sub: return print_at(b.lhs, 1) + " - " + print_at(b.rhs, 2);
                    case BinaryOp::mul: return print_at(b.lhs, 2) + " * " + print_at(b.rhs, 3);
                    case BinaryOp::div: return print_at(b.lhs, 2) + " / " + print_at(b.rhs, 3);
                    case BinaryOp::min: return "min(" + print(b.lhs) + ", " + print(b.rhs) + ")";
                    case BinaryOp::max: return "max(" + print(b.lhs) + ", " + print(b.rhs) + ")";
                }
                return "?";
            },
            [](const node::Power& p) -> std::string {
                return print_at(p.base, 4) + "^" + std::to_string(p.exponent);
            },
            [](const node::Piecewise& p) -> std::string {
                std::string out = "piecewise(";
                for (const auto& branch : p.branches) {
                    out += print(branch.guard) + ": " + print(branch.value) + ", ";
                }
                return out + "else: " + print(p.otherwise) + ")";
            },
        },
        static_cast<const Expr::Node::variant&>(e.node()));
}

std::string print(const Predicate& p) {
    return std::visit(overloaded{
                          [](const node::Compare& c) -> std::string {
                              return std::string("t ") + compare_symbol(c.op) + " " + c.bound.str();
                          },
                          [](const node::IsRational&) -> std::string { return "rational(t)"; },
                          [](const node::Logical& l) -> std::string {
                              // 'and' binds tighter than 'or'; both associate left.
                              auto operand = [&](const Predicate& q, bool rhs) {
                                  const auto* inner = std::get_if<node::Logical>(&q.node());
                                  const bool wrap = inner != nullptr &&
                                                    ((l.op == LogicalOp::conj && inner->op == LogicalOp::disj) ||
                                                     (rhs && inner->op == l.op));
                                  return wrap ? "(" + print(q) + ")" : print(q);
                              };
                              const char* sym = l.op == LogicalOp::conj ? " and " : " or ";
                              return operand(l.lhs, false) + sym + operand(l.rhs, true);
                          },
                      },
                      static_cast<const Predicate::Node::variant&>(p.node()));
}

bool mentions_variable(const Expr& e) {
    return std::visit(overloaded{
                          [](const node::Constant&) { return false; },
                          [](const node::Variable&) { return true; },
                          [](const node::Unary& u) { return mentions_variable(u.operand); },
                          [](const node::Binary& b) { return mentions_variable(b.lhs) || mentions_variable(b.rhs); },
                          [](const node::Power& p) { return mentions_variable(p.base); },
                          // Guards always read t.
                          [](const node::Piecewise&) { return true; },
                      },
                      static_cast<const Expr::Node::variant&>(e.node()));
}

std::size_t node_count(const Expr& e) {
    return std::visit(overloaded{
                          [](const node::Constant&) -> std::size_t { return 1; },
                          [](const node::Variable&) -> std::size_t { return 1; },
                          [](const node::Unary& u) { return 1 + node_count(u.operand); },
                          [](const node::Binary& b) { return 1 + node_count(b.lhs) + node_count(b.rhs); },
                          [](const node::Power& p) { return 1 + node_count(p.base); },
                          [](const node::Piecewise& p) {
                              std::size_t n = 1 + node_count(p.otherwise);
                              for (const auto& branch : p.branches) n += node_count(branch.value);
                              return n;
                          },
                      },
                      static_cast<const Expr::Node::variant&>(e.node()));
}

namespace dsl {

Expr constant(QuadNum value) { return Expr(node::Constant{std::move(value)}); }
Expr constant(long num, long den) { return constant(QuadNum::ratio(num, den)); }
Expr t() { return Expr(node::Variable{}); }
Expr sqrt2() { return constant(QuadNum::sqrt2()); }
Expr neg(Expr e) { return Expr(node::Unary{UnaryOp::neg, std::move(e)}); }
Expr abs(Expr e) { return Expr(node::Unary{UnaryOp::abs, std::move(e)}); }
Expr binary(BinaryOp op, Expr lhs, Expr rhs) { return Expr(node::Binary{op, std::move(lhs), std::move(rhs)}); }
Expr min(Expr lhs, Expr rhs) { return binary(BinaryOp::min, std::move(lhs), std::move(rhs)); }
Expr max(Expr lhs, Expr rhs) { return binary(BinaryOp::max, std::move(lhs), std::move(rhs)); }
Expr pow(Expr base, unsigned exponent) { return Expr(node::Power{std::move(base), exponent}); }
Expr piecewise(std::vector<node::Branch> branches, Expr otherwise) {
    return Expr(node::Piecewise{std::move(branches), std::move(otherwise)});
}

Predicate compare(CompareOp op, QuadNum bound) { return Predicate(node::Compare{op, std::move(bound)}); }
Predicate rational() { return Predicate(node::IsRational{}); }
Predicate conj(Predicate lhs, Predicate rhs) {
    return Predicate(node::Logical{LogicalOp::conj, std::move(lhs), std::move(rhs)});
}
Predicate disj(Predicate lhs, Predicate rhs) {
    return Predicate(node::Logical{LogicalOp::disj, std::move(lhs), std::move(rhs)});
}

}  // namespace dsl

Expr operator+(Expr lhs, Expr rhs) { return dsl::binary(BinaryOp::add, std::move(lhs), std::move(rhs)); }
Expr operator-(Expr lhs, Expr rhs) { return dsl::binary(BinaryOp::sub, std::move(lhs), std::move(rhs)); }
Expr operator*(Expr lhs, Expr rhs) { return dsl::binary(BinaryOp::mul, std::move(lhs), std::move(rhs)); }
Expr operator/(Expr lhs, Expr rhs) { return dsl::binary(BinaryOp::div, std::move(lhs), std::move(rhs)); }
Expr operator-(Expr e) { return dsl::neg(std::move(e)); }

}  // namespace markov
