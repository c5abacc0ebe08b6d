#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace curlwave {

/// Variables an expression may reference.
enum class Var { X1, X2, X3, R, Zeta };

struct Bindings {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0, r = 0.0, zeta = 0.0;
};

/// Small arithmetic expression language for profiles in configs.
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('-' | '+') unary | power
///   power  := atom ('^' unary)?            right associative
///   atom   := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
///
/// Names: x1 x2 x3 r zeta pi e. Functions: abs sqrt exp log cos sin tan cosh
/// sinh tanh sech (one argument), min max pow (two arguments).
class Expression {
public:
    /// Throws ParseError (line 1, column of the offending character) on bad
    /// syntax or on a variable outside `allowed`.
    static Expression parse(const std::string& source, const std::vector<Var>& allowed);
    static Expression constant(double value);

    double operator()(const Bindings& b) const;
    double operator()(double zeta) const {
        Bindings b;
        b.zeta = zeta;
        return (*this)(b);
    }
    const std::string& source() const { return source_; }
    bool uses(Var v) const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
    std::array<bool, 5> used_{};
};

}  // namespace curlwave
