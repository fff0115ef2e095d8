#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace holo {

using Complex = std::complex<double>;

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
    Constant,  // complex scalar
    Var,       // the curve parameter z
    Param,     // the family index j
    Neg,       // -child
    Sum,       // child_0 + child_1 + ...   (n-ary, at least 2 children)
    Prod,      // child_0 * child_1 * ...   (n-ary, at least 2 children)
    Pow,       // child ^ exponent, exponent a non-negative integer
    Exp,       // exp(child)
};

// Immutable expression tree over the fragment: complex constants, z, j,
// negation, sums, products, non-negative integer powers, exp. Nodes are
// shared and never mutated after construction, so trees are safe to use
// from any number of threads.
class Expr {
public:
    ExprKind kind;
    Complex value{};              // Constant
    std::vector<ExprPtr> kids;    // Neg/Exp: 1, Pow: 1, Sum/Prod: >= 2
    int exponent = 0;             // Pow

    static ExprPtr constant(Complex c);
    static ExprPtr var();     // z
    static ExprPtr param();   // j

    // Normalizing constructors: constants are folded, nested sums/products
    // are flattened, constant factors collect at the front of a product and
    // constant terms at the back of a sum, unit factors and zero terms drop.
    static ExprPtr neg(ExprPtr x);
    static ExprPtr sum(std::vector<ExprPtr> xs);
    static ExprPtr prod(std::vector<ExprPtr> xs);
    static ExprPtr pow(ExprPtr base, int exponent);
    static ExprPtr exp(ExprPtr arg);

    static ExprPtr add(ExprPtr a, ExprPtr b) { return sum({std::move(a), std::move(b)}); }
    static ExprPtr sub(ExprPtr a, ExprPtr b) { return sum({std::move(a), neg(std::move(b))}); }
    static ExprPtr mul(ExprPtr a, ExprPtr b) { return prod({std::move(a), std::move(b)}); }

    bool is_constant(Complex c) const;
    bool contains_param() const;
    bool contains_var() const;

protected:
    explicit Expr(ExprKind k) : kind(k) {}
};

// Structural equality. Constants compare exactly when tol == 0, otherwise
// within tol relative to their magnitude.
bool equal(const ExprPtr& a, const ExprPtr& b, double tol = 0.0);

// Renders to the text grammar; parse(print(e)) reconstructs e.
std::string print_expr(const ExprPtr& e);

// Parses one expression (the `expr` production of the grammar).
ExprPtr parse_expr(const std::string& text);

// Plain evaluation. Throws InputError if the tree references j and no value
// is supplied. exp may overflow to infinity; magnitude-only callers should
// use evaluate_polar instead.
Complex evaluate(const ExprPtr& e, Complex z,
                 std::optional<Complex> j = std::nullopt);

// Log-magnitude/phase evaluation: returns (log|e(z)|, arg e(z)). Sums are
// combined with a max-shift so the result stays finite wherever log|value|
// does, even when the value itself would overflow. log 0 = -infinity.
struct PolarValue {
    double log_abs;
    double phase;
};
PolarValue evaluate_polar(const ExprPtr& e, Complex z,
                          std::optional<Complex> j = std::nullopt);

// Exact symbolic d/dz; both z and j derivatives of constants are zero and
// j is treated as a constant.
ExprPtr differentiate(const ExprPtr& e);

ExprPtr substitute_param(const ExprPtr& e, Complex j);
// Replaces z by the given expression (used by the rescaling machinery).
ExprPtr substitute_var(const ExprPtr& e, const ExprPtr& replacement);

// Integer power with repeated squaring; exact for exponent 0 (= 1).
Complex cpow_int(Complex base, int exponent);

}  // namespace holo
