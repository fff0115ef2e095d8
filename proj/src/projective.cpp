#include "holo/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holo/errors.hpp"

namespace holo {

ProjectivePoint ProjectivePoint::normalize(const CVec& v) {
    if (v.size() < 2)
        throw InputError("a projective point needs at least 2 homogeneous coordinates");
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double m = std::abs(v[i]);
        if (m > best) {
            best = m;
            pivot = i;
        }
    }
    if (best == 0.0) throw InputError("all-zero homogeneous vector");
    CVec rep(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rep[i] = v[i] / v[pivot];
    rep[pivot] = Complex(1.0);
    return ProjectivePoint(std::move(rep));
}

Complex hyperplane_apply(const Hyperplane& h, const CVec& v) {
    if (h.a.size() != v.size())
        throw InputError("hyperplane/vector dimension mismatch");
    Complex acc(0.0);
    for (std::size_t i = 0; i < v.size(); ++i) acc += h.a[i] * v[i];
    return acc;
}

std::vector<Hyperplane> coordinate_hyperplanes(int n) {
    if (n < 1) throw InputError("coordinate_hyperplanes requires n >= 1");
    std::vector<Hyperplane> hs;
    hs.reserve(n + 1);
    for (int l = 0; l <= n; ++l) {
        CVec a(n + 1, Complex(0.0));
        a[l] = Complex(1.0);
        hs.push_back(Hyperplane{std::move(a)});
    }
    return hs;
}

Complex det_partial_pivot(std::vector<CVec> rows) {
    const std::size_t n = rows.size();
    Complex det(1.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(rows[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double m = std::abs(rows[r][col]);
            if (m > best) {
                best = m;
                pivot = r;
            }
        }
        if (best == 0.0) return Complex(0.0);
        if (pivot != col) {
            std::swap(rows[pivot], rows[col]);
            det = -det;
        }
        det *= rows[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            Complex factor = rows[r][col] / rows[col][col];
            for (std::size_t c = col; c < n; ++c) rows[r][c] -= factor * rows[col][c];
        }
    }
    return det;
}

namespace {

double row_norm(const CVec& a) {
    double s = 0.0;
    for (const Complex& c : a) s += std::norm(c);
    return std::sqrt(s);
}

}  // namespace

GeneralPositionResult general_position(const std::vector<Hyperplane>& hs, double tol) {
    if (hs.empty()) throw InputError("empty hyperplane list");
    const std::size_t m = hs[0].a.size();
    if (m < 2) throw InputError("hyperplanes need at least 2 coefficients");
    const std::size_t k = m;  // subset size n+1
    for (const Hyperplane& h : hs) {
        if (h.a.size() != m) throw InputError("hyperplanes of mixed dimension");
        if (row_norm(h.a) == 0.0) throw InputError("all-zero hyperplane coefficients");
    }
    if (hs.size() < k)
        throw InputError("general position requires at least n+1 hyperplanes");

    GeneralPositionResult res{true, {}, std::numeric_limits<double>::infinity()};
    std::vector<int> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
    for (;;) {
        std::vector<CVec> rows;
        double norms = 1.0;
        rows.reserve(k);
        for (int i : idx) {
            rows.push_back(hs[i].a);
            norms *= row_norm(hs[i].a);
        }
        double rel = std::abs(det_partial_pivot(std::move(rows))) / norms;
        res.min_rel_det = std::min(res.min_rel_det, rel);
        if (rel <= tol) {
            res.in_general_position = false;
            res.witness = idx;
            return res;
        }
        // next combination
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && idx[pos] == static_cast<int>(hs.size() - k + pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (std::size_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return res;
}

double fs_distance(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw InputError("fs_distance dimension mismatch");
    double ma = 0.0, mb = 0.0;
    for (const Complex& c : a) ma = std::max(ma, std::abs(c));
    for (const Complex& c : b) mb = std::max(mb, std::abs(c));
    if (ma == 0.0 || mb == 0.0) throw InputError("fs_distance of an all-zero vector");
    double wedge = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        for (std::size_t k2 = i + 1; k2 < a.size(); ++k2)
            wedge += std::norm((a[i] / ma) * (b[k2] / mb) - (a[k2] / ma) * (b[i] / mb));
    double na = 0.0, nb = 0.0;
    for (const Complex& c : a) na += std::norm(c / ma);
    for (const Complex& c : b) nb += std::norm(c / mb);
    double d = std::sqrt(wedge / (na * nb));
    return std::clamp(d, 0.0, 1.0);
}

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
    return fs_distance(p.rep(), q.rep());
}

}  // namespace holo
