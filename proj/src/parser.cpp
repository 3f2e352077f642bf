#include "markov/parser.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "markov/errors.hpp"

namespace markov {

namespace {

constexpr unsigned max_exponent = 1024;

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, colon, lt, le, gt, ge, assign, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token& tok) {
    return tok.kind == Tok::end ? "end of input" : "'" + tok.text + "'";
}

class Lexer {
public:
    Lexer(std::string_view src, std::size_t line, std::size_t column) : src_(src), line_(line), column_(column) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            const std::size_t line = line_;
            const std::size_t col = column_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::end, "", line, col});
                return out;
            }
            const char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back({Tok::number, number(), line, col});
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string id;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    id += advance();
                }
                out.push_back({Tok::ident, id, line, col});
            } else {
                out.push_back(symbol(line, col));
            }
        }
    }

private:
    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    std::string number() {
        std::string text;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) text += advance();
        // p/q literal: no whitespace around the slash.
        if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
            text += advance();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) text += advance();
        }
        if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            throw parse_error("malformed number literal '" + text + src_[pos_] + "'", line_, column_);
        }
        return text;
    }

    Token symbol(std::size_t line, std::size_t col) {
        const char c = advance();
        auto next_is = [&](char want) {
            if (pos_ < src_.size() && src_[pos_] == want) {
                advance();
                return true;
            }
            return false;
        };
        switch (c) {
            case '+': return {Tok::plus, "+", line, col};
            case '-': return {Tok::minus, "-", line, col};
            case '*': return {Tok::star, "*", line, col};
            case '/': return {Tok::slash, "/", line, col};
            case '^': return {Tok::caret, "^", line, col};
            case '(': return {Tok::lparen, "(", line, col};
            case ')': return {Tok::rparen, ")", line, col};
            case ',': return {Tok::comma, ",", line, col};
            case ':': return {Tok::colon, ":", line, col};
            case '=': return {Tok::assign, "=", line, col};
            case '<': return next_is('=') ? Token{Tok::le, "<=", line, col} : Token{Tok::lt, "<", line, col};
            case '>': return next_is('=') ? Token{Tok::ge, ">=", line, col} : Token{Tok::gt, ">", line, col};
            default: break;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", line, col);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t column_;
};

class Parser {
public:
    Parser(std::string_view src, std::size_t line = 1, std::size_t column = 1)
        : toks_(Lexer(src, line, column).run()) {}

    Expr whole_expr() {
        Expr e = expr();
        expect_end();
        return e;
    }

    QuadNum whole_constant() {
        const Token& start = peek();
        Expr e = expr();
        expect_end();
        return fold(e, start);
    }

    // "(" lo "," hi ")"
    Domain domain() {
        expect(Tok::lparen, "'('");
        const Token& lo_tok = peek();
        QuadNum lo = fold(expr(), lo_tok);
        expect(Tok::comma, "','");
        const Token& hi_tok = peek();
        QuadNum hi = fold(expr(), hi_tok);
        expect(Tok::rparen, "')'");
        expect_end();
        if (!(lo < hi)) {
            throw parse_error("empty domain: lower bound " + lo.str() + " is not below upper bound " + hi.str(),
                              lo_tok.line, lo_tok.column);
        }
        return Domain{std::move(lo), std::move(hi)};
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    const Token& take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    bool accept(Tok kind) {
        if (peek().kind == kind) {
            take();
            return true;
        }
        return false;
    }

    bool accept_word(std::string_view word) {
        if (peek().kind == Tok::ident && peek().text == word) {
            take();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw parse_error(msg, at.line, at.column); }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(std::string("expected ") + what + ", found " + describe(peek()), peek());
        return take();
    }

    void expect_end() {
        if (peek().kind != Tok::end) fail("unexpected " + describe(peek()), peek());
    }

    QuadNum fold(const Expr& e, const Token& at) const {
        if (mentions_variable(e)) fail("expected a constant, found an expression in t", at);
        try {
            return eval_exact(e, QuadNum(0));
        } catch (const division_by_zero&) {
            fail("division by zero in constant", at);
        }
    }

    Expr expr() {
        Expr lhs = term();
        while (true) {
            if (accept(Tok::plus)) {
                lhs = std::move(lhs) + term();
            } else if (accept(Tok::minus)) {
                lhs = std::move(lhs) - term();
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = factor();
        while (true) {
            if (accept(Tok::star)) {
                lhs = std::move(lhs) * factor();
            } else if (accept(Tok::slash)) {
                lhs = std::move(lhs) / factor();
            } else {
                return lhs;
            }
        }
    }

    Expr factor() {
        const bool negated = accept(Tok::minus);
        Expr e = atom();
        if (accept(Tok::caret)) {
            const Token& tok = peek();
            if (tok.kind != Tok::number || tok.text.find('/') != std::string::npos) {
                fail("exponent must be a nonnegative integer, found " + describe(tok), tok);
            }
            take();
            if (tok.text.size() > 5 || std::stoul(tok.text) > max_exponent) {
                fail("exponent " + tok.text + " exceeds " + std::to_string(max_exponent), tok);
            }
            e = dsl::pow(std::move(e), static_cast<unsigned>(std::stoul(tok.text)));
        }
        return negated ? dsl::neg(std::move(e)) : e;
    }

    QuadNum literal(const Token& tok) const {
        const auto slash = tok.text.find('/');
        mpq_class value;
        if (slash == std::string::npos) {
            value = mpq_class(mpz_class(tok.text));
        } else {
            const mpz_class num(tok.text.substr(0, slash));
            const mpz_class den(tok.text.substr(slash + 1));
            if (den == 0) fail("malformed rational literal '" + tok.text + "': zero denominator", tok);
            value = mpq_class(num, den);
        }
        return QuadNum(value);
    }

    Expr atom() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::number: take(); return dsl::constant(literal(tok));
            case Tok::lparen: {
                take();
                Expr e = expr();
                expect(Tok::rparen, "')'");
                return e;
            }
            case Tok::ident: return named(take());
            default: fail("expected an expression, found " + describe(tok), tok);
        }
    }

    Expr named(const Token& id) {
        if (id.text == "t") return dsl::t();
        if (id.text == "sqrt2") return dsl::sqrt2();
        if (id.text == "abs") {
            expect(Tok::lparen, "'('");
            Expr e = expr();
            expect(Tok::rparen, "')'");
            return dsl::abs(std::move(e));
        }
        if (id.text == "min" || id.text == "max") {
            expect(Tok::lparen, "'('");
            Expr a = expr();
            expect(Tok::comma, "','");
            Expr b = expr();
            expect(Tok::rparen, "')'");
            return dsl::binary(id.text == "min" ? BinaryOp::min : BinaryOp::max, std::move(a), std::move(b));
        }
        if (id.text == "piecewise") return piecewise();
        if (id.text == "rational") fail("rational(t) is a predicate and may only guard a piecewise branch", id);
        fail("unknown identifier '" + id.text + "'", id);
    }

    Expr piecewise() {
        expect(Tok::lparen, "'('");
        std::vector<node::Branch> branches;
        while (true) {
            if (accept_word("else")) {
                expect(Tok::colon, "':'");
                Expr otherwise = expr();
                expect(Tok::rparen, "')' after the else-branch");
                return dsl::piecewise(std::move(branches), std::move(otherwise));
            }
            if (peek().kind == Tok::rparen) fail("piecewise requires a final else-branch", peek());
            Predicate guard = predicate();
            expect(Tok::colon, "':'");
            Expr value = expr();
            branches.push_back({std::move(guard), std::move(value)});
            expect(Tok::comma, "','");
        }
    }

    Predicate predicate() {
        Predicate lhs = conjunction();
        while (accept_word("or")) lhs = dsl::disj(std::move(lhs), conjunction());
        return lhs;
    }

    Predicate conjunction() {
        Predicate lhs = predicate_atom();
        while (accept_word("and")) lhs = dsl::conj(std::move(lhs), predicate_atom());
        return lhs;
    }

    Predicate predicate_atom() {
        const Token& tok = peek();
        if (accept(Tok::lparen)) {
            Predicate p = predicate();
            expect(Tok::rparen, "')'");
            return p;
        }
        if (accept_word("rational")) {
            expect(Tok::lparen, "'('");
            const Token& arg = peek();
            if (!accept_word("t")) fail("rational() takes the variable t, found " + describe(arg), arg);
            expect(Tok::rparen, "')'");
            return dsl::rational();
        }
        if (accept_word("t")) {
            const Token& op_tok = take();
            CompareOp op{};
            switch (op_tok.kind) {
                case Tok::lt: op = CompareOp::lt; break;
                case Tok::le: op = CompareOp::le; break;
                case Tok::gt: op = CompareOp::gt; break;
                case Tok::ge: op = CompareOp::ge; break;
                default: fail("expected a comparison operator, found " + describe(op_tok), op_tok);
            }
            const Token& bound_tok = peek();
            return dsl::compare(op, fold(expr(), bound_tok));
        }
        fail("expected a predicate, found " + describe(tok), tok);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view src) { return Parser(src).whole_expr(); }

QuadNum parse_scalar(std::string_view src) { return Parser(src).whole_constant(); }

IntervalFunction parse_function_file(std::string_view text) {
    std::optional<Expr> f;
    std::optional<Expr> g;
    std::optional<Domain> omega;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t stop = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, stop - start);
        start = stop + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t first = 0;
        while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
        if (first == line.size()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw parse_error("expected '<name> = <value>'", line_no, first + 1);
        }
        std::string_view name = line.substr(first, eq - first);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
        const std::string_view rhs = line.substr(eq + 1);
        Parser p(rhs, line_no, eq + 2);
        auto bind = [&](auto& slot, auto value) {
            if (slot) throw parse_error("duplicate binding for '" + std::string(name) + "'", line_no, first + 1);
            slot = std::move(value);
        };
        if (name == "f") {
            bind(f, p.whole_expr());
        } else if (name == "g") {
            bind(g, p.whole_expr());
        } else if (name == "omega") {
            bind(omega, p.domain());
        } else {
            throw parse_error("unknown binding '" + std::string(name) + "' (expected f, g or omega)", line_no,
                              first + 1);
        }
    }
    if (!f) throw parse_error("missing binding 'f'", line_no, 1);
    if (!g) throw parse_error("missing binding 'g'", line_no, 1);
    if (!omega) throw parse_error("missing binding 'omega'", line_no, 1);
    return IntervalFunction{std::move(*f), std::move(*g), std::move(*omega)};
}

IntervalFunction load_function_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path.string() + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_function_file(buf.str());
}

}  // namespace markov
