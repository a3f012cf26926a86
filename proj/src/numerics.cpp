#include "qmfopt/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <numbers>

namespace qmfopt::numerics {

namespace {

int descartes_sign_changes(const std::array<double, 4>& c) {
    int changes = 0;
    int prev = 0;
    for (double x : c) {
        if (x == 0.0) continue;
        int s = x > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

/// All real roots of a monic depressed cubic t^3 + p t + q.
int depressed_real_roots(double p, double q, std::array<double, 3>& out) {
    double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc > 0.0) {
        // three real roots, trigonometric form (p < 0 here)
        double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            out[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
        return 3;
    }
    // one real root, Cardano
    double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    double u = std::cbrt(-q / 2.0 + s);
    double v = std::cbrt(-q / 2.0 - s);
    out[0] = u + v;
    return 1;
}

}  // namespace

double cubic_positive_root(double c3, double c2, double c1, double c0) {
    std::array<double, 4> coef{c3, c2, c1, c0};
    if (descartes_sign_changes(coef) != 1) throw SignPatternViolation();

    auto poly = [&](double x) { return ((c3 * x + c2) * x + c1) * x + c0; };

    // a zero constant term only adds roots at the origin; peel them off
    while (coef[3] == 0.0) {
        coef = {0.0, coef[0], coef[1], coef[2]};
        if (coef[0] == 0.0 && coef[1] == 0.0 && coef[2] == 0.0)
            throw SignPatternViolation();
    }

    double guess;
    if (c3 == 0.0) {
        if (c2 == 0.0) {
            guess = -c0 / c1;
        } else {
            // quadratic: one sign change means exactly one positive root
            double disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
            double r1 = (-c1 + disc) / (2.0 * c2);
            double r2 = (-c1 - disc) / (2.0 * c2);
            guess = r1 > 0.0 ? r1 : r2;
        }
    } else {
        double b = c2 / c3, c = c1 / c3, d = c0 / c3;
        double p = c - b * b / 3.0;
        double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
        std::array<double, 3> roots{};
        int n = depressed_real_roots(p, q, roots);
        guess = -1.0;
        for (int k = 0; k < n; ++k) {
            double x = roots[k] - b / 3.0;
            if (x > 0.0 && (guess <= 0.0 || std::abs(poly(x)) < std::abs(poly(guess)))) guess = x;
        }
        if (guess <= 0.0) guess = 1.0;  // closed form degraded; bracket search below recovers
    }

    // cross-check and polish: bracket around the closed-form value, expand
    // outward until the polynomial changes sign, then solve
    double lo = guess * 0.5, hi = guess * 2.0;
    double s0 = poly(lo), s1 = poly(hi);
    for (int i = 0; i < 600 && (s0 > 0.0) == (s1 > 0.0); ++i) {
        lo *= 0.5;
        hi *= 2.0;
        s0 = poly(lo);
        s1 = poly(hi);
    }
    double tol = std::max(1e-14, 1e-13 * guess);
    return find_root(poly, Bracket{lo, hi, tol});
}

Region2D Region2D::full_quadrant() {
    Region2D r;
    r.pieces.push_back(Piece{});
    return r;
}

Region2D Region2D::rectangle(double u_min, double v_min) {
    Region2D r;
    Piece p;
    p.v_begin = std::max(0.0, v_min);
    p.u_const = std::max(0.0, u_min);
    r.pieces.push_back(std::move(p));
    return r;
}

Region2D Region2D::halfplane_sum(double threshold) {
    if (threshold <= 0.0) return full_quadrant();
    Region2D r;
    Piece curved;
    curved.v_begin = 0.0;
    curved.v_end = threshold;
    curved.u_curve = [threshold](double v) { return threshold - v; };
    r.pieces.push_back(std::move(curved));
    Piece flat;
    flat.v_begin = threshold;
    r.pieces.push_back(std::move(flat));
    return r;
}

double exp_measure(const Region2D& region, double rate_u, double rate_v) {
    if (!(rate_u > 0.0) || !(rate_v > 0.0))
        throw std::invalid_argument("exp_measure: rates must be positive");
    double total = 0.0;
    for (const auto& piece : region.pieces) {
        double v0 = std::max(0.0, piece.v_begin);
        double v1 = piece.v_end;
        if (!(v1 > v0)) continue;
        if (!piece.u_curve) {
            double tail = std::exp(-rate_u * std::max(0.0, piece.u_const));
            double mass = std::exp(-rate_v * v0) -
                          (std::isinf(v1) ? 0.0 : std::exp(-rate_v * v1));
            total += tail * mass;
            continue;
        }
        auto integrand = [&](double v) {
            double bound = std::max(0.0, piece.u_curve(v));
            return rate_v * std::exp(-rate_v * v) * std::exp(-rate_u * bound);
        };
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            integrand, v0, v1, 12, 1e-9);
    }
    return std::clamp(total, 0.0, 1.0);
}

}  // namespace qmfopt::numerics
