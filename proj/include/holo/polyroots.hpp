#pragma once

#include "holo/exppoly.hpp"
#include "holo/zeros.hpp"

namespace holo {

// All roots of the polynomial with multiplicities summing to the degree.
// Companion-matrix eigenvalues up to degree 30, Aberth-Ehrlich beyond;
// multiple roots are recovered by multiplicity-aware Newton refinement and
// validated by deflation residuals before clusters merge.
ZeroSet polynomial_roots(const Poly& coeffs);

// Multiplicity-m Newton iteration z -= m * p(z)/p'(z) from z0; nullopt when
// it fails to settle.
std::optional<Complex> newton_refine_poly(const Poly& p, Complex z0, int m);

}  // namespace holo
