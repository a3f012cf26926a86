#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qmfopt::numerics {

struct NoSignChange : std::runtime_error {
    NoSignChange() : std::runtime_error("find_root: no sign change across bracket") {}
};

struct SignPatternViolation : std::runtime_error {
    SignPatternViolation()
        : std::runtime_error("cubic_positive_root: coefficients must have exactly one sign change") {}
};

/// Root bracket with an absolute tolerance on the argument.  When the bracket
/// spans more than three decades of a positive axis the solve runs in log
/// coordinates, with the tolerance applied there; distortion parameters range
/// over [1e-4, 1e6] and a linear tolerance is meaningless across that span.
struct Bracket {
    double lo;
    double hi;
    double tol = 1e-10;
};

namespace detail {

/// Bisection with Illinois-damped secant steps on a fixed bracket.
template <class F>
double bracketed_root(F&& f, double lo, double hi, double flo, double fhi, double tol) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NoSignChange();
    double x = lo;
    for (int iter = 0; iter < 240 && (hi - lo) > tol; ++iter) {
        double mid = 0.5 * (lo + hi);
        x = (fhi != flo) ? (lo - flo * (hi - lo) / (fhi - flo)) : mid;
        // keep the secant point strictly interior, otherwise bisect
        double margin = 0.01 * (hi - lo);
        if (!(x > lo + margin) || !(x < hi - margin)) x = mid;
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
            fhi *= 0.5;  // Illinois damping of the stale endpoint
        } else {
            hi = x;
            fhi = fx;
            flo *= 0.5;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Locate the root of a continuous f inside a sign-changing bracket.
/// Deterministic; tolerance is absolute on the argument (log-scaled when the
/// bracket covers more than three decades).  Throws NoSignChange when the
/// endpoint values agree in sign.
template <class F>
double find_root(F&& f, Bracket b) {
    if (!(b.lo < b.hi)) throw std::invalid_argument("find_root: requires lo < hi");
    double flo = f(b.lo);
    double fhi = f(b.hi);
    if (flo == 0.0) return b.lo;
    if (fhi == 0.0) return b.hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NoSignChange();
    if (b.lo > 0.0 && b.hi > 1e3 * b.lo) {
        auto g = [&](double t) { return f(std::exp(t)); };
        double t = detail::bracketed_root(g, std::log(b.lo), std::log(b.hi), flo, fhi, b.tol);
        return std::exp(t);
    }
    return detail::bracketed_root(f, b.lo, b.hi, flo, fhi, b.tol);
}

/// The unique positive root of c3 x^3 + c2 x^2 + c1 x + c0.
/// Precondition (Descartes): the coefficient sequence, zeros skipped, changes
/// sign exactly once, so exactly one positive root exists.  Solved in closed
/// form via the depressed cubic and cross-checked against find_root on a
/// bracket around the closed-form value; relative accuracy <= 1e-10.
double cubic_positive_root(double c3, double c2, double c1, double c0);

struct GridMax {
    double arg;
    double value;
};

namespace detail {

/// Golden-section refinement that keeps the best point ever evaluated.
template <class F>
void golden_refine(F&& f, double a, double b, double tol, GridMax& best) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    auto consider = [&](double x, double v) {
        if (v > best.value) best = {x, v};
    };
    consider(c, fc);
    consider(d, fd);
    for (int iter = 0; iter < 160 && (b - a) > tol; ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
            consider(d, fd);
        }
    }
}

}  // namespace detail

/// Maximize f over [lo, hi]: uniform coarse scan followed by golden-section
/// refinement around the best coarse cell.  The returned argument lands within
/// (hi-lo)/2^10 of a local maximizer (the global one when f is unimodal), and
/// the returned value is the best of every point probed.
template <class F>
GridMax grid_refine_max(F&& f, double lo, double hi, int coarse_points = 1024) {
    if (!(lo < hi)) throw std::invalid_argument("grid_refine_max: requires lo < hi");
    if (coarse_points < 16) throw std::invalid_argument("grid_refine_max: coarse_points < 16");
    GridMax best{lo, -std::numeric_limits<double>::infinity()};
    int best_i = 0;
    double step = (hi - lo) / (coarse_points - 1);
    for (int i = 0; i < coarse_points; ++i) {
        double x = (i == coarse_points - 1) ? hi : lo + i * step;
        double v = f(x);
        if (v > best.value) {
            best = {x, v};
            best_i = i;
        }
    }
    double a = lo + (best_i > 0 ? (best_i - 1) * step : 0.0);
    double b = (best_i < coarse_points - 1) ? lo + (best_i + 1) * step : hi;
    detail::golden_refine(f, a, b, (hi - lo) / 4096.0, best);
    return best;
}

/// An upper-right region of the nonnegative quadrant described piecewise along
/// the v axis: for v inside a piece the section is {u >= boundary(v)}, with the
/// boundary either constant or a (non-increasing) curve; v outside every piece
/// has an empty section.  Closure under increasing either coordinate is what
/// every success region in this problem family looks like.
struct Region2D {
    struct Piece {
        double v_begin = 0.0;
        double v_end = std::numeric_limits<double>::infinity();
        double u_const = 0.0;
        std::function<double(double)> u_curve;  // overrides u_const when set
    };
    std::vector<Piece> pieces;

    static Region2D full_quadrant();
    /// {u >= u_min, v >= v_min}
    static Region2D rectangle(double u_min, double v_min);
    /// {u + v >= threshold}
    static Region2D halfplane_sum(double threshold);
};

/// Pr{(U,V) in region} for independent U ~ Exp(rate_u), V ~ Exp(rate_v).
/// Constant-boundary pieces integrate in closed form; curved pieces fall back
/// to adaptive Gauss-Kronrod quadrature of the exponential tail.  Relative
/// error <= 1e-6.
double exp_measure(const Region2D& region, double rate_u, double rate_v);

}  // namespace qmfopt::numerics
