#include "holo/exppoly.hpp"

#include <algorithm>
#include <cmath>

#include "holo/errors.hpp"

namespace holo {

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == Complex(0.0)) p.pop_back();
    return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return poly_trim(std::move(r));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) r[i + k] += a[i] * b[k];
    return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& a, Complex c) {
    if (c == Complex(0.0)) return {};
    Poly r = a;
    for (Complex& x : r) x *= c;
    return poly_trim(std::move(r));
}

Poly poly_derivative(const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * double(i);
    return poly_trim(std::move(r));
}

Complex poly_eval(const Poly& a, Complex z) {
    Complex acc(0.0);
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
    return acc;
}

int poly_degree(const Poly& a) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != Complex(0.0)) return static_cast<int>(i);
    return -1;
}

double poly_max_coeff(const Poly& a) {
    double m = 0.0;
    for (const Complex& c : a) m = std::max(m, std::abs(c));
    return m;
}

Poly poly_deflate(const Poly& p, Complex root, Complex* remainder) {
    if (p.empty()) {
        if (remainder) *remainder = Complex(0.0);
        return {};
    }
    Poly q(p.size() - 1);
    Complex carry = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        if (i < q.size()) q[i] = carry;
        carry = p[i] + carry * root;
    }
    if (remainder) *remainder = carry;
    return q;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxTerms = 1024;
constexpr std::size_t kMaxDegree = 4096;

bool rate_close(Complex a, Complex b) {
    return std::abs(a - b) <= 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace

void ExpPoly::add_term(Complex rate, const Poly& p) {
    Poly q = poly_trim(p);
    if (q.empty()) return;
    for (Term& t : terms_) {
        if (rate_close(t.rate, rate)) {
            t.poly = poly_add(t.poly, q);
            return;
        }
    }
    terms_.push_back(Term{rate, std::move(q)});
}

void ExpPoly::sort_terms() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return t.poly.empty(); }),
                 terms_.end());
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
        if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
        return a.rate.imag() < b.rate.imag();
    });
}

ExpPoly ExpPoly::single(Complex rate, Poly p) {
    ExpPoly e;
    e.add_term(rate, p);
    e.sort_terms();
    return e;
}

bool ExpPoly::is_polynomial() const {
    for (const Term& t : terms_)
        if (t.rate != Complex(0.0)) return false;
    return true;
}

const Poly* ExpPoly::polynomial() const {
    for (const Term& t : terms_)
        if (t.rate == Complex(0.0)) return &t.poly;
    return nullptr;
}

double ExpPoly::max_coeff() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, poly_max_coeff(t.poly));
    return m;
}

Complex ExpPoly::eval(Complex z) const {
    Complex acc(0.0);
    for (const Term& t : terms_) {
        Complex v = poly_eval(t.poly, z);
        if (t.rate != Complex(0.0)) v *= std::exp(t.rate * z);
        acc += v;
    }
    return acc;
}

ExpPoly ExpPoly::derivative() const {
    ExpPoly r;
    for (const Term& t : terms_) {
        // (P e^{az})' = (P' + aP) e^{az}
        Poly p = poly_add(poly_derivative(t.poly), poly_scale(t.poly, t.rate));
        r.add_term(t.rate, p);
    }
    r.sort_terms();
    return r;
}

ExprPtr ExpPoly::to_expr() const {
    if (terms_.empty()) return Expr::constant(Complex(0.0));
    std::vector<ExprPtr> parts;
    for (const Term& t : terms_) {
        std::vector<ExprPtr> monomials;
        for (std::size_t k = t.poly.size(); k-- > 0;) {
            if (t.poly[k] == Complex(0.0)) continue;
            monomials.push_back(Expr::prod({Expr::constant(t.poly[k]),
                                            Expr::pow(Expr::var(), static_cast<int>(k))}));
        }
        ExprPtr p = Expr::sum(std::move(monomials));
        if (t.rate != Complex(0.0)) {
            ExprPtr e = Expr::exp(Expr::prod({Expr::constant(t.rate), Expr::var()}));
            p = Expr::mul(std::move(p), std::move(e));
        }
        parts.push_back(std::move(p));
    }
    return Expr::sum(std::move(parts));
}

std::optional<ExpPoly> ExpPoly::from_expr(const ExprPtr& e, std::optional<Complex> j) {
    switch (e->kind) {
        case ExprKind::Constant:
            return single(Complex(0.0), Poly{e->value});
        case ExprKind::Var:
            return single(Complex(0.0), Poly{Complex(0.0), Complex(1.0)});
        case ExprKind::Param:
            if (!j) return std::nullopt;
            return single(Complex(0.0), Poly{*j});
        case ExprKind::Neg: {
            auto c = from_expr(e->kids[0], j);
            if (!c) return std::nullopt;
            ExpPoly r;
            for (const Term& t : c->terms_) r.add_term(t.rate, poly_scale(t.poly, Complex(-1.0)));
            r.sort_terms();
            return r;
        }
        case ExprKind::Sum: {
            ExpPoly r;
            for (const auto& k : e->kids) {
                auto c = from_expr(k, j);
                if (!c) return std::nullopt;
                for (const Term& t : c->terms_) r.add_term(t.rate, t.poly);
                if (r.terms_.size() > kMaxTerms) return std::nullopt;
            }
            r.sort_terms();
            return r;
        }
        case ExprKind::Prod: {
            ExpPoly r = single(Complex(0.0), Poly{Complex(1.0)});
            for (const auto& k : e->kids) {
                auto c = from_expr(k, j);
                if (!c) return std::nullopt;
                ExpPoly next;
                for (const Term& ta : r.terms_) {
                    for (const Term& tb : c->terms_) {
                        Poly p = poly_mul(ta.poly, tb.poly);
                        if (p.size() > kMaxDegree) return std::nullopt;
                        next.add_term(ta.rate + tb.rate, p);
                        if (next.terms_.size() > kMaxTerms) return std::nullopt;
                    }
                }
                next.sort_terms();
                r = std::move(next);
            }
            return r;
        }
        case ExprKind::Pow: {
            auto c = from_expr(e->kids[0], j);
            if (!c) return std::nullopt;
            ExpPoly acc = single(Complex(0.0), Poly{Complex(1.0)});
            for (int i = 0; i < e->exponent; ++i) {
                ExpPoly next;
                for (const Term& ta : acc.terms_) {
                    for (const Term& tb : c->terms_) {
                        Poly p = poly_mul(ta.poly, tb.poly);
                        if (p.size() > kMaxDegree) return std::nullopt;
                        next.add_term(ta.rate + tb.rate, p);
                        if (next.terms_.size() > kMaxTerms) return std::nullopt;
                    }
                }
                next.sort_terms();
                acc = std::move(next);
            }
            return acc;
        }
        case ExprKind::Exp: {
            auto c = from_expr(e->kids[0], j);
            if (!c) return std::nullopt;
            // exp(b + a z) = e^b e^{a z}; anything of higher degree (or with
            // exponential terms in the argument) leaves the fragment.
            Complex a(0.0), b(0.0);
            for (const Term& t : c->terms_) {
                if (t.rate != Complex(0.0)) return std::nullopt;
                if (poly_degree(t.poly) > 1) return std::nullopt;
                if (!t.poly.empty()) b = t.poly[0];
                if (t.poly.size() > 1) a = t.poly[1];
            }
            return single(a, Poly{std::exp(b)});
        }
    }
    return std::nullopt;
}

}  // namespace holo
