#include "thetapr/expwitness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fft.hpp"
#include "thetapr/moebius.hpp"

namespace thetapr::expwitness {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Transform of the standard bump supported in [-r, r], sampled on the grid.
GridFunction bump_transform(double r, const GridSpec& grid) {
    const int p = grid.points;
    const double dt = 2.0 * grid.half_width / p;
    const double ds = 1.0 / (p * dt);
    std::vector<Cx> buf(static_cast<std::size_t>(p), Cx(0, 0));
    for (int k = 0; k < p; ++k) {
        const double s = (k <= p / 2 - 1 ? k : k - p) * ds;
        const double u = s / r;
        double phi = 0.0;
        if (std::abs(u) < 1.0) phi = std::exp(-1.0 / (1.0 - u * u));
        // (-1)^k shifts the output so that sample 0 sits at t = -half_width.
        buf[static_cast<std::size_t>(k)] = (k % 2 == 0 ? phi : -phi);
    }
    detail::fft(buf, +1);
    GridFunction out;
    out.t0 = -grid.half_width;
    out.dt = dt;
    out.samples.resize(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k)
        out.samples[static_cast<std::size_t>(k)] = ds * buf[static_cast<std::size_t>(k)];
    return out;
}

} // namespace

GridSpec::GridSpec(double half_width_, int points_)
    : half_width(half_width_), points(points_) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw InvalidInput("GridSpec: half_width must be positive");
    if (points < 16)
        throw InvalidInput("GridSpec: too few points");
}

double GridFunction::sup_abs() const {
    double s = 0.0;
    for (const Cx& z : samples) s = std::max(s, std::abs(z));
    return s;
}

Cx GridFunction::interpolate(double x) const {
    const double pos = (x - t0) / dt;
    const int i = static_cast<int>(std::floor(pos));
    if (i < 1 || i + 2 >= size())
        throw InvalidInput("GridFunction::interpolate: point outside the stencil range");
    const double u = pos - i;
    const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return w0 * samples[static_cast<std::size_t>(i - 1)] +
           w1 * samples[static_cast<std::size_t>(i)] +
           w2 * samples[static_cast<std::size_t>(i + 1)] +
           w3 * samples[static_cast<std::size_t>(i + 2)];
}

GridSpec default_grid(int n, double alpha) {
    // 4.5 n alpha covers at least 9 lattice points of every residue class,
    // including the class through the origin whose outermost points sit at
    // +-4 n alpha.
    const double half_width = 4.5 * n * alpha;
    int points = 1 << 14;
    return GridSpec(half_width, points);
}

GridFunction build_bump(double xi, const GridSpec& grid) {
    if (!(xi > 0.0) || !(xi < 0.5))
        throw InvalidInput("build_bump: xi must lie in (0, 1/2)");
    return bump_transform(0.5 - xi, grid);
}

WitnessBundle build_lattice_witnesses(int n, double alpha, const GridSpec& grid) {
    if (n < 2)
        throw InvalidInput("build_lattice_witnesses: n must be >= 2");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidInput("build_lattice_witnesses: alpha must be positive");
    const double xi = 1.0 / (2.0 * n * alpha);
    if (!(xi > 0.0) || !(xi < 0.5))
        throw InvalidInput("build_lattice_witnesses: xi = 1/(2 n alpha) outside (0, 1/2)");

    WitnessBundle w;
    w.n = n;
    w.xi = xi;
    w.omega = std::polar(1.0, 2.0 * kPi / n);
    w.zeta = std::polar(1.0, kPi / n);
    w.lattice = Lattice{alpha};
    if (alpha <= static_cast<double>(n))
        w.warnings.push_back("alpha <= n: below the density threshold but outside the "
                             "stated hypothesis alpha > n of the construction");

    const GridFunction bump = build_bump(xi, grid);
    w.xs.reserve(static_cast<std::size_t>(n + 2));
    for (int j = 0; j <= n + 1; ++j) {
        GridFunction xj;
        xj.t0 = bump.t0;
        xj.dt = bump.dt;
        xj.samples.resize(bump.samples.size());
        const Cx zj = std::polar(1.0, kPi * j / n);
        for (int k = 0; k < bump.size(); ++k) {
            const double t = bump.t(k);
            const double sj = std::sin(2.0 * kPi * xi * t - kPi * j / n);
            xj.samples[static_cast<std::size_t>(k)] =
                zj * sj * bump.samples[static_cast<std::size_t>(k)];
        }
        w.xs.push_back(std::move(xj));
    }

    // Normalized Gram determinant of (x_1, x_2) as grid vectors.
    const GridFunction& x1 = w.xs[1];
    const GridFunction& x2 = w.xs[2];
    Cx g11(0, 0), g12(0, 0), g22(0, 0);
    for (std::size_t k = 0; k < x1.samples.size(); ++k) {
        g11 += x1.samples[k] * std::conj(x1.samples[k]);
        g12 += x1.samples[k] * std::conj(x2.samples[k]);
        g22 += x2.samples[k] * std::conj(x2.samples[k]);
    }
    const double denom = std::abs(g11) * std::abs(g22);
    w.gram_det_x1_x2 =
        denom > 0.0 ? std::abs(g11 * g22 - g12 * std::conj(g12)) / denom : 0.0;
    return w;
}

double verify_recurrence(const WitnessBundle& w) {
    if (w.xs.size() < 3)
        throw InvalidInput("verify_recurrence: bundle needs at least 3 functions");
    double sup_all = 0.0;
    for (const GridFunction& x : w.xs) sup_all = std::max(sup_all, x.sup_abs());
    if (sup_all == 0.0) return 0.0;
    double worst = 0.0;
    const Cx one_plus_omega = Cx(1, 0) + w.omega;
    for (std::size_t j = 2; j < w.xs.size(); ++j) {
        const auto& xj = w.xs[j].samples;
        const auto& xj1 = w.xs[j - 1].samples;
        const auto& xj2 = w.xs[j - 2].samples;
        for (std::size_t k = 0; k < xj.size(); ++k) {
            const double r = std::abs(xj[k] - one_plus_omega * xj1[k] + w.omega * xj2[k]);
            worst = std::max(worst, r);
        }
    }
    return worst / sup_all;
}

double verify_vanishing(const WitnessBundle& w, int count) {
    if (count < 0)
        throw InvalidInput("verify_vanishing: negative count");
    if (count == 0) return 0.0;
    const double alpha = w.lattice.alpha;
    double worst = 0.0;
    for (int j = 0; j < w.n; ++j) {
        const GridFunction& xj = w.xs[static_cast<std::size_t>(j)];
        const double sup = xj.sup_abs();
        const double lo = xj.t0 + xj.dt;
        const double hi = xj.t0 + (xj.size() - 3) * xj.dt;
        // Lattice points of alpha (n Z + j) inside the stencil range,
        // nearest to the origin first.
        const double nn = static_cast<double>(w.n);
        const int k_min = static_cast<int>(std::ceil((lo / alpha - j) / nn));
        const int k_max = static_cast<int>(std::floor((hi / alpha - j) / nn));
        std::vector<double> pts;
        for (int k = k_min; k <= k_max; ++k)
            pts.push_back(alpha * (nn * k + j));
        std::sort(pts.begin(), pts.end(), [](double x, double y) {
            return std::abs(x) < std::abs(y) || (std::abs(x) == std::abs(y) && x > y);
        });
        if (static_cast<int>(pts.size()) < count)
            throw InvalidInput("verify_vanishing: grid covers too few lattice points");
        for (int i = 0; i < count; ++i) {
            const double v = std::abs(xj.interpolate(pts[static_cast<std::size_t>(i)]));
            if (sup > 0.0) worst = std::max(worst, v / sup);
        }
    }
    return worst;
}

namespace {

// Linear convolution of a and b via zero-padded FFTs.
std::vector<Cx> fft_convolve(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    const std::size_t full = a.size() + b.size() - 1;
    const std::size_t padded = next_pow2(full);
    std::vector<Cx> fa(padded, Cx(0, 0)), fb(padded, Cx(0, 0));
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    detail::fft(fa, -1);
    detail::fft(fb, -1);
    for (std::size_t i = 0; i < padded; ++i) fa[i] *= fb[i];
    detail::fft(fa, +1);
    std::vector<Cx> out(full);
    for (std::size_t i = 0; i < full; ++i) out[i] = fa[i] / static_cast<double>(padded);
    return out;
}

} // namespace

ConvolutionReport convolution_support_demo(const GridFunction& f,
                                           const GridFunction& h, int n) {
    if (n < 1)
        throw InvalidInput("convolution_support_demo: n must be >= 1");
    if (f.size() != h.size() || std::abs(f.t0 - h.t0) > 1e-12 ||
        std::abs(f.dt - h.dt) > 1e-15)
        throw InvalidInput("convolution_support_demo: mismatched grids");
    if (f.t0 < -1e-9 || f.t0 + (f.size() - 1) * f.dt > 1.0 + 1e-9)
        throw InvalidInput("convolution_support_demo: grid must lie inside [0, 1]");

    const double dt = f.dt;
    std::vector<std::vector<Cx>> factors;
    factors.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Cx wj = std::polar(1.0, 2.0 * kPi * j / n);
        std::vector<Cx> pj(f.samples.size());
        for (std::size_t k = 0; k < pj.size(); ++k)
            pj[k] = f.samples[k] - wj * h.samples[k];
        factors.push_back(std::move(pj));
    }

    // Riemann-sum convolution: each fold carries a factor dt.
    std::vector<Cx> p = factors.front();
    for (int j = 1; j < n; ++j) {
        p = fft_convolve(p, factors[static_cast<std::size_t>(j)]);
        for (Cx& z : p) z *= dt;
    }

    ConvolutionReport report;
    report.factors = n;
    report.output_points = static_cast<int>(p.size());

    double total = 0.0, outside = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double t = f.t0 * n + dt * static_cast<double>(k);
        const double mag = std::abs(p[k]);
        total += mag;
        if (t < -1e-9 || t > n + 1e-9) outside += mag;
    }
    report.outside_mass = total > 0.0 ? outside / total : 0.0;

    // Transform side: DFT of the convolution against the product of DFTs,
    // all zero-padded to a common length.
    const std::size_t padded = next_pow2(p.size());
    std::vector<Cx> lhs(padded, Cx(0, 0));
    std::copy(p.begin(), p.end(), lhs.begin());
    detail::fft(lhs, -1);
    for (Cx& z : lhs) z *= dt;
    std::vector<Cx> rhs(padded, Cx(1, 0));
    for (const auto& pj : factors) {
        std::vector<Cx> fj(padded, Cx(0, 0));
        std::copy(pj.begin(), pj.end(), fj.begin());
        detail::fft(fj, -1);
        for (std::size_t i = 0; i < padded; ++i) rhs[i] *= dt * fj[i];
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < padded; ++i) {
        num = std::max(num, std::abs(lhs[i] - rhs[i]));
        den = std::max(den, std::abs(rhs[i]));
    }
    report.transform_residual = den > 0.0 ? num / den : num;
    return report;
}

ArcCounterexample build_arc_counterexample(double v1, double v2, double beta,
                                           const GridSpec& grid) {
    const moebius::RealLineArcMap m = moebius::real_line_to_arc(v1, v2, beta);
    const GridFunction s = bump_transform(0.5, grid);

    ArcCounterexample out;
    out.arc_half_length = m.arc_half_length;
    out.beta = beta;
    out.f.t0 = out.h.t0 = s.t0;
    out.f.dt = out.h.dt = s.dt;
    out.f.samples.resize(s.samples.size());
    out.h.samples.resize(s.samples.size());
    const Cx iv1(0.0, v1), iv2(0.0, v2);
    const Cx phase = std::polar(1.0, -beta);
    for (int k = 0; k < s.size(); ++k) {
        const double t = s.t(k);
        const Cx sv = s.samples[static_cast<std::size_t>(k)];
        out.f.samples[static_cast<std::size_t>(k)] = (t + iv1) * (t - iv2) * sv;
        out.h.samples[static_cast<std::size_t>(k)] = phase * (t - iv1) * (t + iv2) * sv;
    }

    const double sup_f = out.f.sup_abs();
    const double sup_h = out.h.sup_abs();
    const double eps = 1e-12 * (sup_f + sup_h);
    double worst = 0.0;
    double lo_arg = std::numeric_limits<double>::infinity();
    double hi_arg = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < s.size(); ++k) {
        const Cx fv = out.f.samples[static_cast<std::size_t>(k)];
        const Cx hv = out.h.samples[static_cast<std::size_t>(k)];
        const Cx mv = m(s.t(k));
        worst = std::max(worst,
                         std::abs(fv - mv * hv) / (std::abs(fv) + std::abs(hv) + eps));
        if (std::abs(hv) > 1e-8 * sup_h) {
            const double a = std::arg(phase * fv / hv); // in (-pi, pi], centered at 0
            lo_arg = std::min(lo_arg, a);
            hi_arg = std::max(hi_arg, a);
        }
    }
    out.identity_residual = worst;
    out.arg_spread = hi_arg >= lo_arg ? hi_arg - lo_arg : 0.0;
    return out;
}

} // namespace thetapr::expwitness
