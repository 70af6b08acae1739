#pragma once

#include <string>
#include <vector>

#include "thetapr/numkernel.hpp"

namespace thetapr::expwitness {

// Uniform grid of `points` samples starting at -half_width with spacing
// 2 * half_width / points (the right endpoint is excluded).
struct GridSpec {
    double half_width = 0.0;
    int points = 0;

    GridSpec(double half_width, int points);
};

// Uniformly sampled complex-valued function on a real interval.
struct GridFunction {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<Cx> samples;

    int size() const { return static_cast<int>(samples.size()); }
    double t(int k) const { return t0 + dt * k; }
    double sup_abs() const;

    // 4-point Lagrange interpolation; x must leave room for the stencil,
    // i.e. lie in [t0 + dt, t0 + (size-2)*dt).
    Cx interpolate(double x) const;
};

// One-dimensional lattice alpha * Z of density 1 / alpha.
struct Lattice {
    double alpha = 1.0;
    double density() const { return 1.0 / alpha; }
};

// The functions x_j = zeta^j sin(2 pi xi t - j pi / n) * Phi, j = 0..n+1,
// sampled on a common grid. x_j vanishes on the residue class
// alpha (n Z + j) and consecutive triples satisfy the second-order
// recurrence x_j = (1 + omega) x_{j-1} - omega x_{j-2}.
struct WitnessBundle {
    int n = 0;
    double xi = 0.0; // 1 / (2 n alpha)
    Cx omega;        // e^{2 pi i / n}
    Cx zeta;         // e^{pi i / n}, zeta^2 = omega
    std::vector<GridFunction> xs;
    Lattice lattice;
    double gram_det_x1_x2 = 0.0; // normalized Gram determinant of (x_1, x_2)
    std::vector<std::string> warnings;
};

// Default grid for witness construction: wide enough that every residue
// class contributes at least 8 lattice points, fine enough that cubic
// interpolation resolves the zeros to ~1e-9.
GridSpec default_grid(int n, double alpha);

// Inverse Fourier transform (discrete, on the dual grid) of the standard
// smooth bump exp(-1 / (1 - (s/r)^2)) on |s| < r with r = 1/2 - xi.
// The result is real, even, maximal at t = 0, and its discrete transform
// has no mass outside [-r, r] beyond roundoff. xi outside (0, 1/2) ->
// InvalidInput.
GridFunction build_bump(double xi, const GridSpec& grid);

// Witness functions for the lattice alpha * Z with n-th-root phases.
// Requires n >= 2 and xi = 1/(2 n alpha) in (0, 1/2); a warning is attached
// when alpha <= n (the construction is still well defined there).
WitnessBundle build_lattice_witnesses(int n, double alpha, const GridSpec& grid);

// Sup-norm defect of x_j - (1+omega) x_{j-1} + omega x_{j-2} over j >= 2,
// normalized by max_j sup |x_j|.
double verify_recurrence(const WitnessBundle& w);

// Max over classes j and the `count` lattice points of alpha(nZ + j)
// closest to the origin of |x_j(lambda)| / sup |x_j|, lambda evaluated by
// interpolation. The grid must cover all requested points -> InvalidInput.
double verify_vanishing(const WitnessBundle& w, int count);

struct ConvolutionReport {
    int factors = 0;            // n
    int output_points = 0;      // samples of the n-fold convolution
    double outside_mass = 0.0;  // |p| mass outside [0, n] / total (structurally 0)
    double transform_residual = 0.0; // relative defect of DFT(p) = prod DFT(p_j)
};

// Forms p_j = f - omega_j h for the n-th roots omega_j, convolves them, and
// checks the support and transform-product identities. f and h must share
// the grid (start, spacing, length) -> InvalidInput.
ConvolutionReport convolution_support_demo(const GridFunction& f,
                                           const GridFunction& h, int n);

struct ArcCounterexample {
    GridFunction f;
    GridFunction h;
    double arc_half_length = 0.0;   // L
    double beta = 0.0;
    double identity_residual = 0.0; // max |f - m h| / (|f| + |h| + eps)
    double arg_spread = 0.0;        // spread of arg(f/h) where |h| is significant
};

// f(t) = (t + i v1)(t - i v2) S(t) and h(t) = e^{-i beta}(t - i v1)(t + i v2) S(t)
// with S a bump transform; the quotient f/h equals the real-line-to-arc map
// pointwise, so arg(f/h) stays inside [beta - L, beta + L]. Requires
// v1 > v2 > 0.
ArcCounterexample build_arc_counterexample(double v1, double v2, double beta,
                                           const GridSpec& grid);

} // namespace thetapr::expwitness
