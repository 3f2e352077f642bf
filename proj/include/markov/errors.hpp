#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace markov {

// Root of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : error(line == 0 ? what : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    // line 0 means the error has no source position (e.g. an unreadable file)
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Failures while evaluating a function at a point.
class evaluation_error : public error {
public:
    using error::error;
};

class division_by_zero : public evaluation_error {
public:
    using evaluation_error::evaluation_error;
};

class out_of_domain : public evaluation_error {
public:
    using evaluation_error::evaluation_error;
};

// f(t) > g(t), or an interval built with lo > hi.
class endpoint_order_violation : public evaluation_error {
public:
    using evaluation_error::evaluation_error;
};

class empty_ladder : public evaluation_error {
public:
    using evaluation_error::evaluation_error;
};

// A check needed all four one-sided endpoint derivatives and some are missing.
class missing_one_sided : public error {
public:
    using error::error;
};

class witness_not_continuous : public error {
public:
    using error::error;
};

// A documented precondition of an operation does not hold.
class precondition_failed : public error {
public:
    using error::error;
};

}  // namespace markov
