#include "thetapr/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thetapr::moebius {

namespace {

double max_entry_abs(const Cx& a, const Cx& b, const Cx& c, const Cx& d) {
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

} // namespace

MoebiusMap::MoebiusMap(const Cx& a, const Cx& b, const Cx& c, const Cx& d)
    : a_(a), b_(b), c_(c), d_(d) {
    for (const Cx& e : {a, b, c, d})
        if (!numkernel::is_finite(e))
            throw InvalidInput("MoebiusMap: non-finite entry");
    const double scale = max_entry_abs(a, b, c, d);
    if (std::abs(a * d - b * c) <= 1e-12 * scale * scale)
        throw DegenerateInput("MoebiusMap: determinant too close to zero");
}

ExtCx MoebiusMap::operator()(const Cx& z) const {
    const double s = max_entry_abs(a_, b_, c_, d_);
    const Cx num = (a_ / s) * z + (b_ / s);
    const Cx den = (c_ / s) * z + (d_ / s);
    if (std::abs(den) < 1e-14)
        return ExtCx::infinity();
    return ExtCx(num / den);
}

bool MoebiusMap::circle_preserving(double tol) const {
    for (const Cx& z : {Cx(1, 0), Cx(0, 1), Cx(-1, 0)}) {
        const ExtCx w = (*this)(z);
        if (w.is_infinity() || std::abs(std::abs(w.value()) - 1.0) >= tol)
            return false;
    }
    return true;
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
    return MoebiusMap(m1.a() * m2.a() + m1.b() * m2.c(),
                      m1.a() * m2.b() + m1.b() * m2.d(),
                      m1.c() * m2.a() + m1.d() * m2.c(),
                      m1.c() * m2.b() + m1.d() * m2.d());
}

MoebiusMap invert(const MoebiusMap& m) {
    // Adjugate; the constructor rejects near-singular results.
    return MoebiusMap(m.d(), -m.b(), -m.c(), m.a());
}

bool projectively_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol) {
    const double s1 = max_entry_abs(m1.a(), m1.b(), m1.c(), m1.d());
    const double s2 = max_entry_abs(m2.a(), m2.b(), m2.c(), m2.d());
    // Align phases via the entry of largest magnitude in m1.
    const Cx e1[4] = {m1.a() / s1, m1.b() / s1, m1.c() / s1, m1.d() / s1};
    const Cx e2[4] = {m2.a() / s2, m2.b() / s2, m2.c() / s2, m2.d() / s2};
    int k = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(e1[i]) > std::abs(e1[k])) k = i;
    if (std::abs(e2[k]) < 0.5 * std::abs(e1[k])) return false;
    const Cx ratio = e1[k] / e2[k];
    for (int i = 0; i < 4; ++i)
        if (std::abs(e1[i] - ratio * e2[i]) > tol) return false;
    return true;
}

ExtCx cayley(const Cx& z) {
    if (std::abs(z - Cx(1, 0)) < 1e-14)
        return ExtCx::infinity();
    return ExtCx(Cx(0, 1) * (Cx(1, 0) + z) / (Cx(1, 0) - z));
}

Cx cayley_inverse(const Cx& w) {
    return (w - Cx(0, 1)) / (w + Cx(0, 1));
}

Cx cayley_inverse(const ExtCx& w) {
    if (w.is_infinity()) return Cx(1, 0);
    return cayley_inverse(w.value());
}

MoebiusMap arc_to_arc(const phases::Arc& a, const phases::Arc& b) {
    // Arc constructors already enforce proper lengths; the composition below
    // mirrors the endpoint bookkeeping step by step.
    const double shift = 1.0 / std::tan(a.length / 2.0) - 1.0 / std::tan(b.length / 2.0);
    const MoebiusMap rot_in(std::polar(1.0, -a.start), 0.0, 0.0, 1.0);
    const MoebiusMap cay(Cx(0, 1), Cx(0, 1), Cx(-1, 0), Cx(1, 0));
    const MoebiusMap translate(1.0, shift, 0.0, 1.0);
    const MoebiusMap cay_inv(1.0, Cx(0, -1), 1.0, Cx(0, 1));
    const MoebiusMap rot_out(std::polar(1.0, b.start), 0.0, 0.0, 1.0);
    return compose(rot_out, compose(cay_inv, compose(translate, compose(cay, rot_in))));
}

Cx RealLineArcMap::operator()(double x) const {
    const Cx iv1(0.0, v1);
    const Cx iv2(0.0, v2);
    return std::polar(1.0, beta) * ((x + iv1) / (x - iv1)) * ((x - iv2) / (x + iv2));
}

RealLineArcMap real_line_to_arc(double v1, double v2, double beta) {
    if (!(v1 > v2) || !(v2 > 0.0))
        throw InvalidInput("real_line_to_arc: requires v1 > v2 > 0");
    if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(beta))
        throw InvalidInput("real_line_to_arc: non-finite parameter");
    const double arc_half = 4.0 * std::atan(std::sqrt(v1 / v2)) - std::numbers::pi;
    return RealLineArcMap{v1, v2, beta, arc_half};
}

} // namespace thetapr::moebius
