#pragma once

#include <vector>

#include "holo/expr.hpp"

namespace holo {

// A homogeneous coordinate vector in C^{n+1}; at least one entry nonzero.
using CVec = std::vector<Complex>;

// A point of P^n held in canonical form: the first coordinate of maximal
// modulus is scaled to exactly 1, so representatives of the same point
// agree coordinate-wise up to rounding.
class ProjectivePoint {
public:
    static ProjectivePoint normalize(const CVec& v);

    const CVec& rep() const { return rep_; }
    int dim() const { return static_cast<int>(rep_.size()) - 1; }

private:
    explicit ProjectivePoint(CVec rep) : rep_(std::move(rep)) {}
    CVec rep_;
};

// Coefficient covector (a_0, ..., a_n) of the hyperplane sum a_l w_l = 0.
struct Hyperplane {
    CVec a;
    int dim() const { return static_cast<int>(a.size()) - 1; }
};

// Evaluates sum a_l v_l; zero (relative to |a||v|) iff the point lies on H.
Complex hyperplane_apply(const Hyperplane& h, const CVec& v);

// The n+1 hyperplanes {w_{l-1} = 0}, l = 1..n+1.
std::vector<Hyperplane> coordinate_hyperplanes(int n);

struct GeneralPositionResult {
    bool in_general_position;
    // On failure: 0-based indices of one (n+1)-subset whose coefficient
    // matrix is singular relative to tol.
    std::vector<int> witness;
    // Smallest relative determinant magnitude seen over all subsets.
    double min_rel_det;
};

// Every (n+1)-subset must have |det| > tol * (product of row norms).
GeneralPositionResult general_position(const std::vector<Hyperplane>& hs,
                                       double tol = 1e-9);

// Chordal Fubini-Study distance sqrt(1 - |<a,b>|^2 / (|a|^2 |b|^2)),
// computed through the Lagrange identity so nearly-equal points lose no
// precision. Scale invariant in both arguments; range [0, 1].
double fs_distance(const CVec& a, const CVec& b);
double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q);

// Partial-pivot determinant of a square complex matrix (row-major rows).
Complex det_partial_pivot(std::vector<CVec> rows);

}  // namespace holo
