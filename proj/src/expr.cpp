#include "holo/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "holo/errors.hpp"

namespace holo {

namespace {

ExprPtr make_node(ExprKind k) {
    struct Access : Expr {
        explicit Access(ExprKind kk) : Expr(kk) {}
    };
    return std::make_shared<Access>(k);
}

bool is_const(const ExprPtr& e) { return e->kind == ExprKind::Constant; }
bool is_real_value(Complex c) { return c.imag() == 0.0; }

}  // namespace

ExprPtr Expr::constant(Complex c) {
    auto n = make_node(ExprKind::Constant);
    const_cast<Expr&>(*n).value = c;
    return n;
}

ExprPtr Expr::var() {
    static const ExprPtr z = make_node(ExprKind::Var);
    return z;
}

ExprPtr Expr::param() {
    static const ExprPtr j = make_node(ExprKind::Param);
    return j;
}

ExprPtr Expr::neg(ExprPtr x) {
    if (x->kind == ExprKind::Constant) return constant(-x->value);
    if (x->kind == ExprKind::Neg) return x->kids[0];
    if (x->kind == ExprKind::Prod) {
        std::vector<ExprPtr> xs;
        xs.reserve(x->kids.size() + 1);
        xs.push_back(constant(Complex(-1.0)));
        for (const auto& k : x->kids) xs.push_back(k);
        return prod(std::move(xs));
    }
    auto n = make_node(ExprKind::Neg);
    const_cast<Expr&>(*n).kids = {std::move(x)};
    return n;
}

ExprPtr Expr::sum(std::vector<ExprPtr> xs) {
    std::vector<ExprPtr> kids;
    Complex c(0.0);
    for (auto& x : xs) {
        if (x->kind == ExprKind::Sum) {
            for (const auto& k : x->kids) {
                if (k->kind == ExprKind::Constant)
                    c += k->value;
                else
                    kids.push_back(k);
            }
        } else if (x->kind == ExprKind::Constant) {
            c += x->value;
        } else {
            kids.push_back(std::move(x));
        }
    }
    if (c != Complex(0.0)) kids.push_back(constant(c));
    if (kids.empty()) return constant(Complex(0.0));
    if (kids.size() == 1) return kids[0];
    auto n = make_node(ExprKind::Sum);
    const_cast<Expr&>(*n).kids = std::move(kids);
    return n;
}

ExprPtr Expr::prod(std::vector<ExprPtr> xs) {
    std::vector<ExprPtr> kids;
    Complex c(1.0);
    // Flatten nested products, pull negations and constants into the
    // leading coefficient.
    for (auto& x : xs) {
        ExprPtr cur = std::move(x);
        while (cur->kind == ExprKind::Neg) {
            c = -c;
            cur = cur->kids[0];
        }
        if (cur->kind == ExprKind::Prod) {
            for (const auto& k : cur->kids) {
                if (k->kind == ExprKind::Constant)
                    c *= k->value;
                else
                    kids.push_back(k);
            }
        } else if (cur->kind == ExprKind::Constant) {
            c *= cur->value;
        } else {
            kids.push_back(std::move(cur));
        }
    }
    if (c == Complex(0.0)) return constant(Complex(0.0));
    if (kids.empty()) return constant(c);
    if (c == Complex(-1.0)) {
        ExprPtr core;
        if (kids.size() == 1) {
            core = kids[0];
        } else {
            auto p = make_node(ExprKind::Prod);
            const_cast<Expr&>(*p).kids = std::move(kids);
            core = p;
        }
        auto n = make_node(ExprKind::Neg);
        const_cast<Expr&>(*n).kids = {std::move(core)};
        return n;
    }
    if (c != Complex(1.0)) kids.insert(kids.begin(), constant(c));
    if (kids.size() == 1) return kids[0];
    auto n = make_node(ExprKind::Prod);
    const_cast<Expr&>(*n).kids = std::move(kids);
    return n;
}

ExprPtr Expr::pow(ExprPtr base, int exponent) {
    if (exponent < 0) throw InputError("negative power is not allowed");
    if (exponent == 0) return constant(Complex(1.0));
    if (exponent == 1) return base;
    if (base->kind == ExprKind::Constant)
        return constant(cpow_int(base->value, exponent));
    auto n = make_node(ExprKind::Pow);
    const_cast<Expr&>(*n).kids = {std::move(base)};
    const_cast<Expr&>(*n).exponent = exponent;
    return n;
}

ExprPtr Expr::exp(ExprPtr arg) {
    if (arg->kind == ExprKind::Constant) return constant(std::exp(arg->value));
    auto n = make_node(ExprKind::Exp);
    const_cast<Expr&>(*n).kids = {std::move(arg)};
    return n;
}

bool Expr::is_constant(Complex c) const {
    return kind == ExprKind::Constant && value == c;
}

bool Expr::contains_param() const {
    if (kind == ExprKind::Param) return true;
    for (const auto& k : kids)
        if (k->contains_param()) return true;
    return false;
}

bool Expr::contains_var() const {
    if (kind == ExprKind::Var) return true;
    for (const auto& k : kids)
        if (k->contains_var()) return true;
    return false;
}

bool equal(const ExprPtr& a, const ExprPtr& b, double tol) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Constant: {
            if (tol == 0.0) return a->value == b->value;
            double scale = std::max({1.0, std::abs(a->value), std::abs(b->value)});
            return std::abs(a->value - b->value) <= tol * scale;
        }
        case ExprKind::Var:
        case ExprKind::Param:
            return true;
        case ExprKind::Pow:
            if (a->exponent != b->exponent) return false;
            [[fallthrough]];
        default: {
            if (a->kids.size() != b->kids.size()) return false;
            for (std::size_t i = 0; i < a->kids.size(); ++i)
                if (!equal(a->kids[i], b->kids[i], tol)) return false;
            return true;
        }
    }
}

Complex cpow_int(Complex base, int exponent) {
    Complex acc(1.0);
    Complex b = base;
    int k = exponent;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

enum Level { kExprLevel = 0, kTermLevel = 1, kFactorLevel = 2, kBaseLevel = 3 };

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Trim to the shortest representation that round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

void print_to(const ExprPtr& e, Level level, std::string& out);

void print_paren(const ExprPtr& e, std::string& out) {
    out += '(';
    print_to(e, kExprLevel, out);
    out += ')';
}

std::string fmt_constant(Complex v) {
    // Real values print as a (possibly signed) number; purely imaginary as
    // b*i; everything else as a parenthesized a+b*i.
    std::string s;
    if (v.imag() == 0.0) {
        if (v.real() < 0.0) s += '-';
        s += fmt_double(std::abs(v.real()));
        return s;
    }
    auto imag_part = [](double b) {
        std::string t;
        if (std::abs(b) != 1.0) {
            t += fmt_double(std::abs(b));
            t += '*';
        }
        t += 'i';
        return t;
    };
    if (v.real() == 0.0) {
        if (v.imag() < 0.0) s += '-';
        s += imag_part(v.imag());
        return s;
    }
    s += '(';
    if (v.real() < 0.0) s += '-';
    s += fmt_double(std::abs(v.real()));
    s += v.imag() < 0.0 ? '-' : '+';
    s += imag_part(v.imag());
    s += ')';
    return s;
}

bool needs_paren_as_factor(const ExprPtr& e) {
    // Complex constants parenthesize themselves in fmt_constant; products
    // and negations never appear as product children.
    return e->kind == ExprKind::Sum;
}

// A sum child prints with a '-' joiner when it carries an overall real
// negative sign; returns the positive remainder to print after the '-'.
ExprPtr split_negative(const ExprPtr& e) {
    if (e->kind == ExprKind::Neg) return e->kids[0];
    if (e->kind == ExprKind::Constant) {
        Complex v = e->value;
        if ((v.imag() == 0.0 && v.real() < 0.0) ||
            (v.real() == 0.0 && v.imag() < 0.0))
            return Expr::constant(-v);
    }
    if (e->kind == ExprKind::Prod && is_const(e->kids[0])) {
        Complex c = e->kids[0]->value;
        if (is_real_value(c) && c.real() < 0.0) {
            std::vector<ExprPtr> rest(e->kids.begin(), e->kids.end());
            rest[0] = Expr::constant(-c);
            return Expr::prod(std::move(rest));
        }
    }
    return nullptr;
}

void print_sum_child(const ExprPtr& e, std::string& out) {
    if (e->kind == ExprKind::Sum)
        print_paren(e, out);
    else
        print_to(e, kTermLevel, out);
}

void print_to(const ExprPtr& e, Level level, std::string& out) {
    switch (e->kind) {
        case ExprKind::Constant:
            out += fmt_constant(e->value);
            return;
        case ExprKind::Var:
            out += 'z';
            return;
        case ExprKind::Param:
            out += 'j';
            return;
        case ExprKind::Exp:
            out += "exp(";
            print_to(e->kids[0], kExprLevel, out);
            out += ')';
            return;
        case ExprKind::Neg: {
            const ExprPtr& c = e->kids[0];
            out += '-';
            if (c->kind == ExprKind::Var || c->kind == ExprKind::Param ||
                c->kind == ExprKind::Exp)
                print_to(c, kBaseLevel, out);
            else
                print_paren(c, out);
            return;
        }
        case ExprKind::Pow: {
            if (level > kFactorLevel) {
                print_paren(e, out);
                return;
            }
            const ExprPtr& b = e->kids[0];
            bool atomic = b->kind == ExprKind::Var || b->kind == ExprKind::Param ||
                          b->kind == ExprKind::Exp ||
                          (b->kind == ExprKind::Constant &&
                           is_real_value(b->value) && b->value.real() >= 0.0);
            if (atomic)
                print_to(b, kBaseLevel, out);
            else
                print_paren(b, out);
            out += '^';
            out += std::to_string(e->exponent);
            return;
        }
        case ExprKind::Prod: {
            if (level > kTermLevel) {
                print_paren(e, out);
                return;
            }
            bool first = true;
            for (const auto& k : e->kids) {
                if (!first) out += '*';
                first = false;
                if (needs_paren_as_factor(k))
                    print_paren(k, out);
                else
                    print_to(k, kFactorLevel, out);
            }
            return;
        }
        case ExprKind::Sum: {
            if (level > kExprLevel) {
                print_paren(e, out);
                return;
            }
            bool first = true;
            for (const auto& k : e->kids) {
                ExprPtr positive = split_negative(k);
                if (first) {
                    first = false;
                    if (positive) {
                        out += '-';
                        // At the head of an expression '-' is the unary
                        // minus, which binds below '^': -x^2 would reparse
                        // as (-x)^2, so parenthesize a leading power.
                        if (positive->kind == ExprKind::Pow)
                            print_paren(positive, out);
                        else
                            print_sum_child(positive, out);
                    } else {
                        print_sum_child(k, out);
                    }
                    continue;
                }
                if (positive) {
                    out += '-';
                    print_sum_child(positive, out);
                } else {
                    out += '+';
                    print_sum_child(k, out);
                }
            }
            return;
        }
    }
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_to(e, kExprLevel, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    ExprPtr parse_full() {
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

    ExprPtr parse_sum() {
        std::vector<ExprPtr> kids;
        kids.push_back(parse_term());
        for (;;) {
            skip_ws();
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                char op = s_[pos_++];
                ExprPtr t = parse_term();
                kids.push_back(op == '-' ? Expr::neg(std::move(t)) : std::move(t));
            } else {
                break;
            }
        }
        return kids.size() == 1 ? kids[0] : Expr::sum(std::move(kids));
    }

    std::size_t position() const { return pos_; }

private:
    ExprPtr parse_term() {
        std::vector<ExprPtr> kids;
        kids.push_back(parse_factor());
        for (;;) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                kids.push_back(parse_factor());
            } else {
                break;
            }
        }
        return kids.size() == 1 ? kids[0] : Expr::prod(std::move(kids));
    }

    ExprPtr parse_factor() {
        ExprPtr b = parse_base();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '-')
                throw ParseError("negative power is not allowed", pos_);
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError("expected a non-negative integer exponent", pos_);
            long k = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                k = k * 10 + (s_[pos_] - '0');
                if (k > 1000000) throw ParseError("exponent too large", pos_);
                ++pos_;
            }
            return Expr::pow(std::move(b), static_cast<int>(k));
        }
        return b;
    }

    ExprPtr parse_base() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_sum();
            skip_ws();
            expect(')');
            return e;
        }
        if (c == '-') {
            ++pos_;
            return Expr::neg(parse_base());
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == 'e' && s_.compare(pos_, 3, "exp") == 0) {
            pos_ += 3;
            skip_ws();
            expect('(');
            ExprPtr arg = parse_sum();
            skip_ws();
            expect(')');
            return Expr::exp(std::move(arg));
        }
        if (c == 'z') {
            ++pos_;
            return Expr::var();
        }
        if (c == 'j') {
            ++pos_;
            return Expr::param();
        }
        if (c == 'i') {
            ++pos_;
            return Expr::constant(Complex(0.0, 1.0));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr parse_number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && s_[start] == '.'))
            throw ParseError("malformed number", start);
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            // Consume an exponent only if a digit actually follows; "2exp(z)"
            // must not swallow the 'e' of exp.
            std::size_t mark = pos_ + 1;
            if (mark < s_.size() && (s_[mark] == '+' || s_[mark] == '-')) ++mark;
            if (mark < s_.size() && std::isdigit(static_cast<unsigned char>(s_[mark]))) {
                pos_ = mark;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
        }
        double v = std::strtod(s_.c_str() + start, nullptr);
        return Expr::constant(Complex(v));
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) {
    ExprParser p(text);
    return p.parse_full();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Complex evaluate(const ExprPtr& e, Complex z, std::optional<Complex> j) {
    switch (e->kind) {
        case ExprKind::Constant:
            return e->value;
        case ExprKind::Var:
            return z;
        case ExprKind::Param:
            if (!j) throw InputError("expression references the parameter j but no value was supplied");
            return *j;
        case ExprKind::Neg:
            return -evaluate(e->kids[0], z, j);
        case ExprKind::Sum: {
            Complex acc(0.0);
            for (const auto& k : e->kids) acc += evaluate(k, z, j);
            return acc;
        }
        case ExprKind::Prod: {
            Complex acc(1.0);
            for (const auto& k : e->kids) acc *= evaluate(k, z, j);
            return acc;
        }
        case ExprKind::Pow:
            return cpow_int(evaluate(e->kids[0], z, j), e->exponent);
        case ExprKind::Exp:
            return std::exp(evaluate(e->kids[0], z, j));
    }
    return Complex(0.0);
}

PolarValue evaluate_polar(const ExprPtr& e, Complex z, std::optional<Complex> j) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    switch (e->kind) {
        case ExprKind::Constant: {
            double m = std::abs(e->value);
            return {m == 0.0 ? kNegInf : std::log(m), std::arg(e->value)};
        }
        case ExprKind::Var: {
            double m = std::abs(z);
            return {m == 0.0 ? kNegInf : std::log(m), std::arg(z)};
        }
        case ExprKind::Param: {
            if (!j) throw InputError("expression references the parameter j but no value was supplied");
            double m = std::abs(*j);
            return {m == 0.0 ? kNegInf : std::log(m), std::arg(*j)};
        }
        case ExprKind::Neg: {
            PolarValue v = evaluate_polar(e->kids[0], z, j);
            return {v.log_abs, v.phase + M_PI};
        }
        case ExprKind::Prod: {
            double la = 0.0, ph = 0.0;
            for (const auto& k : e->kids) {
                PolarValue v = evaluate_polar(k, z, j);
                if (v.log_abs == kNegInf) return {kNegInf, 0.0};
                la += v.log_abs;
                ph += v.phase;
            }
            return {la, ph};
        }
        case ExprKind::Pow: {
            PolarValue v = evaluate_polar(e->kids[0], z, j);
            if (v.log_abs == kNegInf) return {kNegInf, 0.0};
            return {e->exponent * v.log_abs, e->exponent * v.phase};
        }
        case ExprKind::Exp: {
            Complex u = evaluate(e->kids[0], z, j);
            return {u.real(), u.imag()};
        }
        case ExprKind::Sum: {
            double lead = kNegInf;
            std::vector<PolarValue> vs;
            vs.reserve(e->kids.size());
            for (const auto& k : e->kids) {
                vs.push_back(evaluate_polar(k, z, j));
                lead = std::max(lead, vs.back().log_abs);
            }
            if (lead == kNegInf) return {kNegInf, 0.0};
            Complex acc(0.0);
            for (const auto& v : vs) {
                if (v.log_abs == kNegInf) continue;
                acc += std::exp(v.log_abs - lead) * Complex(std::cos(v.phase), std::sin(v.phase));
            }
            double m = std::abs(acc);
            if (m == 0.0) return {kNegInf, 0.0};
            return {lead + std::log(m), std::arg(acc)};
        }
    }
    return {kNegInf, 0.0};
}

// ---------------------------------------------------------------------------
// Calculus and substitution
// ---------------------------------------------------------------------------

ExprPtr differentiate(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Constant:
        case ExprKind::Param:
            return Expr::constant(Complex(0.0));
        case ExprKind::Var:
            return Expr::constant(Complex(1.0));
        case ExprKind::Neg:
            return Expr::neg(differentiate(e->kids[0]));
        case ExprKind::Sum: {
            std::vector<ExprPtr> parts;
            parts.reserve(e->kids.size());
            for (const auto& k : e->kids) parts.push_back(differentiate(k));
            return Expr::sum(std::move(parts));
        }
        case ExprKind::Prod: {
            std::vector<ExprPtr> parts;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                std::vector<ExprPtr> factors;
                factors.reserve(e->kids.size());
                for (std::size_t m = 0; m < e->kids.size(); ++m)
                    factors.push_back(m == i ? differentiate(e->kids[m]) : e->kids[m]);
                parts.push_back(Expr::prod(std::move(factors)));
            }
            return Expr::sum(std::move(parts));
        }
        case ExprKind::Pow:
            return Expr::prod({Expr::constant(Complex(double(e->exponent))),
                               Expr::pow(e->kids[0], e->exponent - 1),
                               differentiate(e->kids[0])});
        case ExprKind::Exp:
            return Expr::prod({Expr::exp(e->kids[0]), differentiate(e->kids[0])});
    }
    return Expr::constant(Complex(0.0));
}

namespace {

template <typename Fn>
ExprPtr rebuild(const ExprPtr& e, const Fn& leaf) {
    switch (e->kind) {
        case ExprKind::Constant:
        case ExprKind::Var:
        case ExprKind::Param:
            return leaf(e);
        case ExprKind::Neg:
            return Expr::neg(rebuild(e->kids[0], leaf));
        case ExprKind::Sum: {
            std::vector<ExprPtr> kids;
            kids.reserve(e->kids.size());
            for (const auto& k : e->kids) kids.push_back(rebuild(k, leaf));
            return Expr::sum(std::move(kids));
        }
        case ExprKind::Prod: {
            std::vector<ExprPtr> kids;
            kids.reserve(e->kids.size());
            for (const auto& k : e->kids) kids.push_back(rebuild(k, leaf));
            return Expr::prod(std::move(kids));
        }
        case ExprKind::Pow:
            return Expr::pow(rebuild(e->kids[0], leaf), e->exponent);
        case ExprKind::Exp:
            return Expr::exp(rebuild(e->kids[0], leaf));
    }
    return e;
}

}  // namespace

ExprPtr substitute_param(const ExprPtr& e, Complex j) {
    return rebuild(e, [&](const ExprPtr& leaf) {
        return leaf->kind == ExprKind::Param ? Expr::constant(j) : leaf;
    });
}

ExprPtr substitute_var(const ExprPtr& e, const ExprPtr& replacement) {
    return rebuild(e, [&](const ExprPtr& leaf) {
        return leaf->kind == ExprKind::Var ? replacement : leaf;
    });
}

}  // namespace holo
