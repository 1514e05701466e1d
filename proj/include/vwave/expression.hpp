#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "vwave/jet.hpp"

namespace vwave {

/// Small arithmetic expression of one variable, evaluated on jets so that
/// derivatives come out exact.
///
/// Grammar: numbers, the variable name, `pi`, binary + - * / ^ (right
/// associative), unary minus, parentheses, and the functions sin, cos, exp,
/// log, sqrt.
class Expression {
public:
    static Expression parse(std::string_view text, std::string_view variable = "x");

    Jet operator()(double x) const;
    double value(double x) const { return (*this)(x).value(); }
    const std::string& text() const { return text_; }
    JetFunction as_function() const;

    struct Node;

private:
    Expression(std::string text, std::shared_ptr<const Node> root)
        : text_(std::move(text)), root_(std::move(root)) {}

    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace vwave
