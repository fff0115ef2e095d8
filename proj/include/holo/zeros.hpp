#pragma once

#include <optional>
#include <vector>

#include "holo/errors.hpp"
#include "holo/exppoly.hpp"
#include "holo/expr.hpp"

namespace holo {

struct Disk {
    Complex center;
    double radius;

    Disk(Complex c, double r) : center(c), radius(r) {
        if (!(r > 0.0)) throw InputError("disk radius must be positive");
    }
    bool contains(Complex z, double slack = 1e-9) const {
        return std::abs(z - center) <= radius * (1.0 + slack);
    }
};

struct ZeroEntry {
    Complex location;
    int multiplicity;
    double residual;  // |g(location)| after refinement
};

// Zeros with multiplicities; locations pairwise distinct beyond the
// clustering tolerance 1e-6 * max(1, |location|), sorted by (re, im).
struct ZeroSet {
    std::vector<ZeroEntry> entries;

    int total_multiplicity() const {
        int s = 0;
        for (const auto& e : entries) s += e.multiplicity;
        return s;
    }
};

double cluster_tolerance(Complex location);

// Evaluates an expression and its derivative, through the canonical
// exponential-polynomial form when the expression fits the fragment
// (much cheaper than a tree walk).
class AnalyticFn {
public:
    explicit AnalyticFn(ExprPtr g);

    Complex val(Complex z) const;
    Complex der(Complex z) const;
    bool identically_zero() const;
    const ExprPtr& expr() const { return g_; }

private:
    ExprPtr g_;
    ExprPtr dg_;
    std::optional<ExpPoly> ep_;
    std::optional<ExpPoly> dep_;
};

// Argument-principle count (1/2pi i) * contour integral of g'/g over the
// disk boundary, by trapezoid sums with node doubling from `nodes` (capped
// at 2^16). The pre-rounding estimate must land within 0.25 of an integer
// and two successive node counts must agree, otherwise AccuracyError.
int winding_count(const ExprPtr& g, const Disk& d, int nodes = 256);
int winding_count(const AnalyticFn& fn, const Disk& d, int nodes = 256);

// winding_count with boundary-collision retries: perturbs the radius by
// factors 1 -/+ eps, eps in {1e-3, 3e-3, 1e-2}, and reports the disk that
// was actually used.
struct WindingResult {
    int count;
    Disk used;
};
WindingResult winding_count_robust(const AnalyticFn& fn, const Disk& d, int nodes = 256);

// All zeros of g inside d with multiplicities, by recursive quadrisection
// on winding counts plus Newton refinement. The total multiplicity is
// checked against the winding count of the enclosing disk.
ZeroSet locate_zeros(const ExprPtr& g, const Disk& d, double tol = 1e-10);
// Variant reporting the disk actually counted against (the requested disk
// with boundary-collision perturbations applied).
ZeroSet locate_zeros(const ExprPtr& g, const Disk& d, double tol, Disk* effective);

struct SparsePolyLemmaReport {
    int terms;                  // number of nonzero coefficients
    int max_nonzero_root_mult;  // 0 when every root is at the origin
    bool lemma_satisfied;       // no nonzero roots, or terms >= mult + 1
};

// For a nonzero polynomial: a nonzero root of multiplicity m forces at
// least m+1 nonzero terms.
SparsePolyLemmaReport sparse_poly_lemma_check(const Poly& p);

}  // namespace holo
