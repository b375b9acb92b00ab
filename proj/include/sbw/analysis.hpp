#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sbw/errors.hpp"

namespace sbw {

// ---------------------------------------------------------------------------
// Small dense 2x2 helpers. Everything downstream (Lyapunov solve, delay
// margins) lives in this dimension, so closed forms beat a matrix library.
// ---------------------------------------------------------------------------

struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 operator+(const Mat2& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    Mat2 operator-(const Mat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2 operator*(double k) const { return {k * a11, k * a12, k * a21, k * a22}; }
    Mat2 transpose() const { return {a11, a21, a12, a22}; }

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
    double frobenius() const {
        return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22);
    }
    double max_abs() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }
    bool symmetric(double tol = 1e-12) const {
        return std::abs(a12 - a21) <= tol * std::max(1.0, max_abs());
    }

    Mat2 inverse() const {
        const double d = det();
        if (d == 0.0 || !std::isfinite(1.0 / d))
            throw ValidationError("matrix is singular");
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
};

/// Eigenvalues of a symmetric 2x2, ascending.
inline std::pair<double, double> sym_eigenvalues(const Mat2& m) {
    const double mean = 0.5 * m.trace();
    const double off = 0.5 * (m.a12 + m.a21);
    const double diff = 0.5 * (m.a11 - m.a22);
    const double rad = std::sqrt(diff * diff + off * off);
    return {mean - rad, mean + rad};
}

/// Spectral norm of a symmetric matrix (largest |eigenvalue|).
inline double spectral_norm_sym(const Mat2& m) {
    const auto [lo, hi] = sym_eigenvalues(m);
    return std::max(std::abs(lo), std::abs(hi));
}

inline bool is_spd(const Mat2& m, double tol = 1e-12) {
    return m.symmetric(tol) && m.a11 > 0.0 && m.det() > 0.0;
}

/// Both eigenvalues in the open left half plane (2x2 criterion).
inline bool is_hurwitz(const Mat2& a) { return a.trace() < 0.0 && a.det() > 0.0; }

/// Eigenvalues of a general 2x2 formatted for diagnostics.
inline std::string eigenvalue_string(const Mat2& a) {
    const double tr = a.trace(), mean = 0.5 * tr;
    const double disc = mean * mean - a.det();
    if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        return std::to_string(mean - r) + ", " + std::to_string(mean + r);
    }
    const double im = std::sqrt(-disc);
    return std::to_string(mean) + " +/- " + std::to_string(im) + "i";
}

// ---------------------------------------------------------------------------
// Lyapunov equation A^T P + P A = -Q for 2x2 systems.
// ---------------------------------------------------------------------------

inline double lyapunov_residual(const Mat2& a, const Mat2& p, const Mat2& q) {
    return (a.transpose() * p + p * a + q).frobenius();
}

/// Solve A^T P + P A = -Q for symmetric P via the 3-unknown linear system
/// in (p1, p2, p3). Requires A Hurwitz and Q symmetric positive-definite.
inline Mat2 solve_lyapunov(const Mat2& a, const Mat2& q) {
    if (!is_spd(q)) throw ValidationError("Q must be symmetric positive-definite");
    if (!is_hurwitz(a))
        throw ValidationError("A is not Hurwitz (eigenvalues " + eigenvalue_string(a) + ")");

    // Unknowns x = (p1, p2, p3) with P = [[p1, p2], [p2, p3]]:
    //   [2 a11   2 a21      0  ] x = -q11
    //   [a12     a11+a22    a21] x = -q12
    //   [0       2 a12      2 a22] x = -q22
    double m[3][4] = {{2.0 * a.a11, 2.0 * a.a21, 0.0, -q.a11},
                      {a.a12, a.a11 + a.a22, a.a21, -q.a12},
                      {0.0, 2.0 * a.a12, 2.0 * a.a22, -q.a22}};

    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) throw ValidationError("Lyapunov system is singular");
        if (piv != col)
            for (int c = 0; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    const Mat2 p{m[0][3] / m[0][0], m[1][3] / m[1][1], m[1][3] / m[1][1], m[2][3] / m[2][2]};

    if (!is_spd(p)) throw ValidationError("Lyapunov solution is not positive-definite");
    if (lyapunov_residual(a, p, q) >= 1e-10)
        throw ValidationError("Lyapunov residual exceeds tolerance");
    return p;
}

/// Design matrices P, Q with scalar gains K, Omega satisfying
///   A = [[0, 1], [-K, -2 Omega]] Hurwitz,  A^T P + P A = -Q,
///   P3^-1 P2 = Omega.
/// The last identity ties Omega to the solution partition; it constrains
/// Q (q11 = K q22) and is validated here rather than assumed.
struct LyapunovPair {
    Mat2 P;
    Mat2 Q;
    double K;
    double Omega;
};

inline LyapunovPair make_lyapunov_pair(double k_gain, double omega, const Mat2& q) {
    const Mat2 a{0.0, 1.0, -k_gain, -2.0 * omega};
    const Mat2 p = solve_lyapunov(a, q);
    if (!(p.a11 > 0.0 && p.a12 > 0.0 && p.a22 > 0.0))
        throw ValidationError("Lyapunov solution does not have a positive partition");
    const double ratio = p.a12 / p.a22;
    if (std::abs(ratio - omega) > 1e-9 * std::max(1.0, std::abs(omega)))
        throw ValidationError("P3^-1 P2 = " + std::to_string(ratio) +
                              " does not match Omega = " + std::to_string(omega) +
                              " (requires q11 = K q22)");
    return {p, q, k_gain, omega};
}

// ---------------------------------------------------------------------------
// Maximum allowable input delay bounds.
// ---------------------------------------------------------------------------

struct DelayBoundInputs {
    LyapunovPair pair;
    double razumikhin_r = 1.01; // comparison constant, > 1
    double eta = 0.7;           // Young's-inequality weight, > 0

    void validate() const {
        if (!(razumikhin_r > 1.0)) throw ValidationError("razumikhin_r must exceed 1");
        if (!(eta > 0.0)) throw ValidationError("eta must be positive");
    }
};

struct DelayMargin {
    Mat2 G;       // quadratic-form growth matrix
    double bound; // lambda_min(Q) / ||G||_2 [s]
};

namespace detail {
inline DelayMargin delay_margin_from(const DelayBoundInputs& in, const Mat2& a1, const Mat2& b1) {
    in.validate();
    const Mat2& p = in.pair.P;
    const Mat2 pinv = p.inverse();
    const Mat2 mid = a1 * pinv * a1.transpose() + b1 * pinv * b1.transpose() + pinv;
    const Mat2 g = (p * b1 * mid * b1.transpose() * p) * in.eta +
                   p * (2.0 * in.razumikhin_r / in.eta);
    const double q_min = sym_eigenvalues(in.pair.Q).first;
    return {g, q_min / spectral_norm_sym(g)};
}
} // namespace detail

/// Delay margin of the proposed loop: the error dynamics carry the
/// delayed velocity through B1 = [[0,0],[0,-Omega]] around
/// A1 = [[0,1],[-K,-Omega]].
inline DelayMargin delay_margin(const DelayBoundInputs& in) {
    const Mat2 a1{0.0, 1.0, -in.pair.K, -in.pair.Omega};
    const Mat2 b1{0.0, 0.0, 0.0, -in.pair.Omega};
    return detail::delay_margin_from(in, a1, b1);
}

inline double delay_bound(const DelayBoundInputs& in) { return delay_margin(in).bound; }

/// Delay margin of the prior constant-bound design, whose delayed path
/// carries the full state feedback B1 = [[0,0],[-K1,-K2]]. Comparable to
/// delay_margin under the correspondence K1 = K, K2 = 2 Omega.
inline DelayMargin arolc_margin(const DelayBoundInputs& in, double k1, double k2) {
    const Mat2 a1{0.0, 1.0, 0.0, 0.0};
    const Mat2 b1{0.0, 0.0, -k1, -k2};
    return detail::delay_margin_from(in, a1, b1);
}

inline double arolc_bound(const DelayBoundInputs& in, double k1, double k2) {
    return arolc_margin(in, k1, k2).bound;
}

/// Gain conditions under which the delayed-velocity design admits a
/// larger maximum delay than the constant-bound design, evaluated on the
/// entries of P^-1.
struct MarginGainCheck {
    bool cross_condition;    // Pbar3 > |Pbar2 K / Omega|
    bool diagonal_condition; // Pbar1 + Pbar3 > |Pbar2|
    bool pass;
    double pbar1, pbar2, pbar3;
};

inline MarginGainCheck margin_gain_check(const Mat2& p, double k_gain, double omega) {
    if (!is_spd(p, 1e-9)) throw ValidationError("P must be symmetric positive-definite");
    const Mat2 pinv = p.inverse();
    const double pb1 = pinv.a11, pb2 = pinv.a12, pb3 = pinv.a22;
    const bool c1 = pb3 > std::abs(pb2 * k_gain / omega);
    const bool c2 = pb1 + pb3 > std::abs(pb2);
    return {c1, c2, c1 && c2, pb1, pb2, pb3};
}

// ---------------------------------------------------------------------------
// Ultimate-bound diagnostic and Lyapunov-function monitoring for the
// no-delay adaptive controller.
// ---------------------------------------------------------------------------

/// User-supplied estimates of the uncertainty-bound constants, used only
/// for diagnostics (never by the control laws).
struct BoundEstimates {
    double k0_star = 0.0; // uncertainty bound offset estimate
    double k1_star = 0.0; // uncertainty bound slope estimate
    double sigma_c = 0.0; // boundary-layer residual estimate
    double kappa = 0.05;  // decay split, 0 < kappa < varrho
    double alpha0 = 0.1;
    double alpha1 = 0.1;
    double gamma = 20.0;
    double lambda = 100.0;
    double inertia = 0.14; // J [kg m^2]
};

inline double varrho(const BoundEstimates& e) {
    const double num = std::min(std::min(e.gamma, e.lambda), std::min(e.alpha0, e.alpha1) / 2.0);
    const double den = std::max(e.inertia / 2.0, 0.5);
    return num / den;
}

struct UltimateBound {
    double omega;       // tracking-error radius, 2*sigma_c numerator
    double omega_tight; // variant with a single sigma_c in the numerator
    double varrho;      // decay rate of the Lyapunov comparison
    double v_level;     // invariant level of V: (2 sigma_c + sum) / (2 (varrho - kappa))
};

inline UltimateBound ultimate_bound(const BoundEstimates& e) {
    if (!(e.sigma_c >= 0.0) || !(e.k0_star >= 0.0) || !(e.k1_star >= 0.0))
        throw ValidationError("bound estimates must be non-negative");
    const double rho = varrho(e);
    if (!(e.kappa > 0.0) || !(e.kappa < rho))
        throw ValidationError("kappa must lie in (0, varrho), varrho = " + std::to_string(rho));
    const double gain_sum = e.alpha0 * e.k0_star * e.k0_star + e.alpha1 * e.k1_star * e.k1_star;
    const double margin = rho - e.kappa;
    return {std::sqrt((2.0 * e.sigma_c + gain_sum) / margin),
            std::sqrt((e.sigma_c + gain_sum) / margin),
            rho,
            (2.0 * e.sigma_c + gain_sum) / (2.0 * margin)};
}

// ---------------------------------------------------------------------------
// Metrics.
// ---------------------------------------------------------------------------

inline double rms(std::span<const double> xs) {
    if (xs.empty()) throw ValidationError("rms of an empty series");
    double acc = 0.0;
    for (double x : xs) acc += x * x;
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

/// Percent improvement of candidate over baseline (positive = better).
inline double improvement_pct(double candidate, double baseline) {
    if (baseline == 0.0) throw ValidationError("improvement baseline is zero");
    return 100.0 * (baseline - candidate) / baseline;
}

inline constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

} // namespace sbw
