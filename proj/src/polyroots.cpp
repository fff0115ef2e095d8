#include "holo/polyroots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>

#include "holo/errors.hpp"

namespace holo {

namespace {

constexpr int kCompanionMaxDegree = 30;

std::vector<Complex> companion_eigen_roots(const Poly& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -monic[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw AccuracyError("companion-matrix eigenvalue iteration failed");
    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()[i];
    return roots;
}

std::vector<Complex> aberth_roots(const Poly& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    const Poly dp = poly_derivative(monic);
    double bound = 0.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(monic[i]));
    bound = 1.0 + bound;
    std::vector<Complex> z(n);
    for (int i = 0; i < n; ++i) {
        double theta = 2.0 * M_PI * i / n + 0.4;
        z[i] = 0.7 * bound * Complex(std::cos(theta), std::sin(theta));
    }
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex pv = poly_eval(monic, z[i]);
            Complex dv = poly_eval(dp, z[i]);
            if (dv == Complex(0.0)) {
                z[i] += 1e-8 * bound;
                worst = 1.0;
                continue;
            }
            Complex w = pv / dv;
            Complex s(0.0);
            for (int k = 0; k < n; ++k)
                if (k != i) s += Complex(1.0) / (z[i] - z[k]);
            Complex corr = w / (Complex(1.0) - w * s);
            z[i] -= corr;
            worst = std::max(worst, std::abs(corr) / std::max(1.0, std::abs(z[i])));
        }
        if (worst <= 1e-14) break;
    }
    return z;
}

// Magnitude scale of p near z, used for relative residual tests.
double eval_scale(const Poly& p, Complex z) {
    double m = std::max(1.0, std::abs(z));
    double s = 0.0;
    double zp = 1.0;
    for (const Complex& c : p) {
        s += std::abs(c) * zp;
        zp *= m;
    }
    return std::max(s, 1e-300);
}

bool deflation_accepts(const Poly& p, Complex z, int mult) {
    double limit = 1e-8 * eval_scale(p, z);
    Poly cur = p;
    for (int i = 0; i < mult; ++i) {
        Complex rem;
        cur = poly_deflate(cur, z, &rem);
        if (std::abs(rem) > limit) return false;
    }
    return true;
}

struct Cluster {
    std::vector<Complex> members;
    Complex mean() const {
        Complex s(0.0);
        for (Complex m : members) s += m;
        return s / double(members.size());
    }
};

std::vector<Cluster> group_points(const std::vector<Complex>& pts, double rel_radius) {
    std::vector<int> parent(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t k = i + 1; k < pts.size(); ++k) {
            double scale = std::max({1.0, std::abs(pts[i]), std::abs(pts[k])});
            if (std::abs(pts[i] - pts[k]) <= rel_radius * scale)
                parent[find(static_cast<int>(i))] = find(static_cast<int>(k));
        }
    }
    std::vector<Cluster> out;
    std::vector<int> slot(pts.size(), -1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].members.push_back(pts[i]);
    }
    return out;
}

void resolve_cluster(const Poly& p, const std::vector<Complex>& pts, int level,
                     std::vector<ZeroEntry>& out) {
    // Eigenvalues of an m-fold root scatter like eps^(1/m), so the first
    // pass groups generously and every merge must survive the deflation
    // test before it is believed.
    static constexpr double kLadder[] = {5e-3, 2e-4, 1e-6};
    std::vector<Cluster> groups = group_points(pts, kLadder[level]);
    for (const Cluster& g : groups) {
        const int k = static_cast<int>(g.members.size());
        std::optional<Complex> z = newton_refine_poly(p, g.mean(), k);
        if (z && deflation_accepts(p, *z, k)) {
            Complex rem;
            (void)poly_deflate(p, *z, &rem);
            out.push_back(ZeroEntry{*z, k, std::abs(rem)});
            continue;
        }
        if (level + 1 < 3) {
            resolve_cluster(p, g.members, level + 1, out);
            continue;
        }
        for (Complex m : g.members) {
            std::optional<Complex> zi = newton_refine_poly(p, m, 1);
            Complex loc = zi ? *zi : m;
            out.push_back(ZeroEntry{loc, 1, std::abs(poly_eval(p, loc))});
        }
    }
}

}  // namespace

std::optional<Complex> newton_refine_poly(const Poly& p, Complex z0, int m) {
    const Poly dp = poly_derivative(p);
    Complex z = z0;
    double start_scale = std::max(1.0, std::abs(z0));
    for (int iter = 0; iter < 80; ++iter) {
        Complex pv = poly_eval(p, z);
        Complex dv = poly_eval(dp, z);
        if (dv == Complex(0.0)) {
            if (pv == Complex(0.0)) return z;
            return std::nullopt;
        }
        Complex step = double(m) * pv / dv;
        z -= step;
        if (std::abs(z) > 1e8 * start_scale) return std::nullopt;
        if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) return z;
    }
    return std::nullopt;
}

ZeroSet polynomial_roots(const Poly& coeffs) {
    Poly p = poly_trim(coeffs);
    if (p.empty()) throw InputError("zero polynomial has no well-defined roots");
    if (p.size() == 1) throw InputError("degree-0 polynomial has no roots");
    // Normalize to monic.
    Poly monic(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) monic[i] = p[i] / p.back();
    monic.back() = Complex(1.0);

    std::vector<Complex> raw = (poly_degree(monic) <= kCompanionMaxDegree)
                                   ? companion_eigen_roots(monic)
                                   : aberth_roots(monic);

    std::vector<ZeroEntry> entries;
    resolve_cluster(monic, raw, 0, entries);

    // Residuals against the caller's (unnormalized) polynomial.
    for (ZeroEntry& e : entries) e.residual = std::abs(poly_eval(p, e.location));
    std::sort(entries.begin(), entries.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
        if (a.location.real() != b.location.real())
            return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return ZeroSet{std::move(entries)};
}

}  // namespace holo
