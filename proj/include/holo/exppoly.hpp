#pragma once

#include <optional>
#include <vector>

#include "holo/expr.hpp"

namespace holo {

// Dense polynomial coefficients, poly[k] multiplying z^k.
using Poly = std::vector<Complex>;

Poly poly_trim(Poly p);                      // drops exact-zero leading coeffs
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, Complex c);
Poly poly_derivative(const Poly& a);
Complex poly_eval(const Poly& a, Complex z);
int poly_degree(const Poly& a);              // -1 for the zero polynomial
double poly_max_coeff(const Poly& a);

// Synthetic division by (z - root): returns the quotient and stores the
// remainder p(root) in *remainder.
Poly poly_deflate(const Poly& p, Complex root, Complex* remainder = nullptr);

// Canonical form sum_a P_a(z) * e^{a z} of an expression in the supported
// fragment (exp arguments at most linear in z). Rates are pairwise distinct
// and sorted; coefficient arithmetic is exact IEEE, so structurally equal
// cancellations produce exact zeros.
class ExpPoly {
public:
    struct Term {
        Complex rate;
        Poly poly;
    };

    // Returns nullopt when the expression leaves the fragment (exp of a
    // nonlinear argument, or an unbound parameter j without a value).
    static std::optional<ExpPoly> from_expr(const ExprPtr& e,
                                            std::optional<Complex> j = std::nullopt);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // True when the only exponential rate present is 0.
    bool is_polynomial() const;
    // The polynomial part; empty Poly when is_polynomial() is false and no
    // rate-0 term exists.
    const Poly* polynomial() const;
    double max_coeff() const;

    Complex eval(Complex z) const;
    ExpPoly derivative() const;
    ExprPtr to_expr() const;

    static ExpPoly zero() { return ExpPoly{}; }
    static ExpPoly single(Complex rate, Poly p);

private:
    friend class ExpPolyBuilder;
    std::vector<Term> terms_;
    void add_term(Complex rate, const Poly& p);
    void sort_terms();
};

}  // namespace holo
