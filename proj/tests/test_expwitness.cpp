#include <numbers>

#include "test_support.hpp"
#include "thetapr/expwitness.hpp"

using namespace thetapr;
using namespace thetapr::expwitness;

// The test target links the library's internal fft symbol directly.
namespace thetapr::detail {
void fft(std::vector<std::complex<double>>& v, int sign);
}

namespace {
constexpr double kPi = std::numbers::pi;

// Forward DFT of the samples recovers the frequency-side data; returns the
// fraction of |coefficient| mass outside [-r, r].
double fourier_mass_outside(const GridFunction& f, double r) {
    std::vector<Cx> buf = f.samples;
    thetapr::detail::fft(buf, -1);
    const int p = f.size();
    const double ds = 1.0 / (p * f.dt);
    double outside = 0.0, total = 0.0;
    for (int k = 0; k < p; ++k) {
        const double s = (k <= p / 2 - 1 ? k : k - p) * ds;
        const double mag = std::abs(buf[static_cast<std::size_t>(k)]);
        total += mag;
        if (std::abs(s) > r + 1e-12) outside += mag;
    }
    return total > 0.0 ? outside / total : 0.0;
}

} // namespace

TEST_SUITE_BEGIN("expwitness");

TEST_CASE("bump construction") {
    const GridSpec grid(27.0, 1 << 13);
    const double xi = 0.25;
    const GridFunction bump = build_bump(xi, grid);

    SUBCASE("real and even") {
        double max_im = 0.0;
        const double sup = bump.sup_abs();
        for (const Cx& z : bump.samples) max_im = std::max(max_im, std::abs(z.imag()));
        CHECK(max_im < 1e-13 * sup);
        const int p = bump.size();
        for (int k = 1; k < p; ++k)
            CHECK(std::abs(bump.samples[static_cast<std::size_t>(k)] -
                           bump.samples[static_cast<std::size_t>(p - k)]) < 1e-12 * sup);
    }

    SUBCASE("peak at the origin") {
        const double at0 = std::abs(bump.interpolate(0.0));
        CHECK(at0 > 0.1 * bump.sup_abs());
    }

    SUBCASE("no Fourier mass outside the support") {
        CHECK(fourier_mass_outside(bump, 0.5 - xi) < 1e-10);
    }

    CHECK_THROWS_AS(build_bump(0.0, grid), InvalidInput);
    CHECK_THROWS_AS(build_bump(0.5, grid), InvalidInput);
}

TEST_CASE("lattice witness construction") {
    SUBCASE("sine factors vanish on their residue classes") {
        // n=2, alpha=3: S_j(alpha(2k+j)) = sin(pi (2k+j)/2 - j pi/2) = sin(pi k).
        const int n = 2;
        const double alpha = 3.0;
        const double xi = 1.0 / (2.0 * n * alpha);
        for (int j = 0; j < n; ++j)
            for (int k = -3; k <= 3; ++k) {
                const double lambda = alpha * (n * k + j);
                CHECK(std::abs(std::sin(2.0 * kPi * xi * lambda - j * kPi / n)) < 1e-12);
            }
    }

    const auto w = build_lattice_witnesses(2, 3.0, default_grid(2, 3.0));

    SUBCASE("period-two structure at n = 2") {
        CHECK(std::abs(w.omega - Cx(-1, 0)) < 1e-12);
        CHECK(std::abs(w.zeta - Cx(0, 1)) < 1e-12);
        REQUIRE(w.xs.size() == 4);
        const double sup = w.xs[0].sup_abs();
        for (int j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < w.xs[0].samples.size(); ++k)
                CHECK(std::abs(w.xs[static_cast<std::size_t>(j + 2)].samples[k] -
                               w.xs[static_cast<std::size_t>(j)].samples[k]) <
                      1e-12 * std::max(sup, 1.0));
    }

    SUBCASE("phase identities for every n") {
        for (int n = 2; n <= 12; ++n) {
            const Cx omega = std::polar(1.0, 2.0 * kPi / n);
            const Cx zeta = std::polar(1.0, kPi / n);
            CHECK(std::abs(zeta * zeta - omega) < 1e-12);
            CHECK(std::abs(2.0 * std::cos(kPi / n) * zeta - (Cx(1, 0) + omega)) < 1e-12);
        }
    }

    SUBCASE("functions are nonzero and x1, x2 independent") {
        for (const auto& x : w.xs) CHECK(x.sup_abs() > 0.0);
        CHECK(w.gram_det_x1_x2 > 1e-4);
    }

    CHECK_THROWS_AS(build_lattice_witnesses(1, 3.0, default_grid(2, 3.0)), InvalidInput);
    CHECK_THROWS_AS(build_lattice_witnesses(2, 0.2, default_grid(2, 3.0)), InvalidInput);

    SUBCASE("alpha below n carries a warning") {
        const auto low = build_lattice_witnesses(2, 1.5, default_grid(2, 1.5));
        CHECK(!low.warnings.empty());
    }
}

TEST_CASE("recurrence residual") {
    for (int n : {2, 3, 4}) {
        for (double alpha : {n + 0.5, n + 1.0, 2.0 * n}) {
            const auto w = build_lattice_witnesses(n, alpha, default_grid(n, alpha));
            CHECK(verify_recurrence(w) < 1e-10);
        }
    }

    SUBCASE("broken bundles are detected") {
        auto w = build_lattice_witnesses(2, 3.0, default_grid(2, 3.0));
        for (Cx& z : w.xs[2].samples) z *= 2.0;
        CHECK(verify_recurrence(w) > 0.1);
    }

    SUBCASE("n = 2 reduces to periodicity") {
        const auto w = build_lattice_witnesses(2, 3.0, default_grid(2, 3.0));
        // omega = -1: the recurrence x_j = x_{j-2} is the periodicity check.
        double direct = 0.0;
        double sup = 0.0;
        for (const auto& x : w.xs) sup = std::max(sup, x.sup_abs());
        for (std::size_t j = 2; j < w.xs.size(); ++j)
            for (std::size_t k = 0; k < w.xs[j].samples.size(); ++k)
                direct = std::max(direct,
                                  std::abs(w.xs[j].samples[k] - w.xs[j - 2].samples[k]));
        CHECK(verify_recurrence(w) == doctest::Approx(direct / sup).epsilon(1e-12));
    }
}

TEST_CASE("vanishing residual") {
    for (int n : {2, 3, 4}) {
        for (double alpha : {n + 0.5, n + 1.0, 2.0 * n}) {
            const auto w = build_lattice_witnesses(n, alpha, default_grid(n, alpha));
            CHECK(verify_vanishing(w, 8) < 1e-8);
        }
    }

    const auto w = build_lattice_witnesses(2, 2.5, default_grid(2, 2.5));
    CHECK(verify_vanishing(w, 0) == 0.0);

    SUBCASE("a detuned lattice misses the zeros") {
        auto detuned = w;
        detuned.lattice.alpha *= 1.01;
        CHECK(verify_vanishing(detuned, 8) > 1e-3);
    }

    SUBCASE("too short a grid is rejected") {
        const auto tiny = build_lattice_witnesses(2, 3.0, GridSpec(8.0, 1 << 10));
        CHECK_THROWS_AS(verify_vanishing(tiny, 8), InvalidInput);
    }
}

TEST_CASE("convolution support demo") {
    const int p = 512;
    GridFunction f, h;
    f.t0 = h.t0 = 0.0;
    f.dt = h.dt = 1.0 / (p - 1);
    f.samples.resize(p);
    h.samples.resize(p);
    experiments::Rng rng(17);
    for (int k = 0; k < p; ++k) {
        // Smooth-ish random profiles vanishing at the interval ends.
        const double t = f.dt * k;
        const double window = t * (1.0 - t);
        f.samples[static_cast<std::size_t>(k)] = window * rng.next_complex_gaussian();
        h.samples[static_cast<std::size_t>(k)] = window * rng.next_complex_gaussian();
    }

    SUBCASE("single factor is the difference") {
        const auto rep = convolution_support_demo(f, h, 1);
        CHECK(rep.outside_mass < 1e-12);
        CHECK(rep.transform_residual < 1e-8);
        CHECK(rep.output_points == p);
    }

    SUBCASE("f = h annihilates through the omega_0 = 1 factor") {
        // p_0 = f - f = 0, so the whole convolution vanishes.
        const auto rep = convolution_support_demo(f, f, 3);
        CHECK(rep.outside_mass == 0.0);
        CHECK(rep.transform_residual < 1e-8);
    }

    SUBCASE("random factors multiply on the transform side") {
        const auto rep = convolution_support_demo(f, h, 3);
        CHECK(rep.outside_mass < 1e-12);
        CHECK(rep.transform_residual < 1e-8);
        CHECK(rep.output_points == 3 * (p - 1) + 1);
    }

    GridFunction wrong = h;
    wrong.dt *= 2.0;
    CHECK_THROWS_AS(convolution_support_demo(f, wrong, 2), InvalidInput);
}

TEST_CASE("arc counterexample") {
    const double v1 = 2.0, v2 = 1.0, beta = 0.0;
    const auto cx = build_arc_counterexample(v1, v2, beta, GridSpec(16.0, 1 << 13));

    SUBCASE("pointwise identity f = m h") {
        CHECK(cx.identity_residual < 1e-10);
    }

    SUBCASE("the quotient is genuinely non-constant") {
        CHECK(cx.arg_spread > cx.arc_half_length / 2.0);
    }

    SUBCASE("prefactors cancel at the origin") {
        // beta = 0: f(0)/h(0) = m(0) = 1.
        const Cx f0 = cx.f.interpolate(0.0);
        const Cx h0 = cx.h.interpolate(0.0);
        CHECK(std::abs(f0 / h0 - Cx(1, 0)) < 1e-9);
    }

    SUBCASE("argument stays inside the arc") {
        const double sup_h = cx.h.sup_abs();
        const Cx phase = std::polar(1.0, -beta);
        for (int k = 0; k < cx.f.size(); ++k) {
            const Cx hv = cx.h.samples[static_cast<std::size_t>(k)];
            if (std::abs(hv) <= 1e-8 * sup_h) continue;
            const Cx fv = cx.f.samples[static_cast<std::size_t>(k)];
            const double a = std::arg(phase * fv / hv);
            CHECK(std::abs(a) <= cx.arc_half_length + 1e-6);
        }
    }

    CHECK_THROWS_AS(build_arc_counterexample(1.0, 1.0, 0.0, GridSpec(16.0, 1024)),
                    InvalidInput);
}

TEST_SUITE_END();
