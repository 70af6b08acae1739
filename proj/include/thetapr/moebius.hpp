#pragma once

#include "thetapr/phases.hpp"

namespace thetapr::moebius {

// Value on the Riemann sphere: a finite complex number or the point at
// infinity. Infinity is an explicit state, never a large float.
class ExtCx {
public:
    ExtCx(const Cx& z) : value_(z), infinite_(false) {} // NOLINT: implicit by design
    static ExtCx infinity() { return ExtCx(); }

    bool is_infinity() const { return infinite_; }
    const Cx& value() const {
        if (infinite_) throw InvalidInput("ExtCx: value() on the point at infinity");
        return value_;
    }

private:
    ExtCx() : value_(0.0, 0.0), infinite_(true) {}
    Cx value_;
    bool infinite_;
};

// z -> (a z + b) / (c z + d), stored as a matrix up to scale. Equality of
// maps is projective: matrices proportional within 1e-9 act identically.
class MoebiusMap {
public:
    MoebiusMap(const Cx& a, const Cx& b, const Cx& c, const Cx& d);
    static MoebiusMap identity() { return MoebiusMap(1.0, 0.0, 0.0, 1.0); }

    // Formula value; the point at infinity when |c z + d| < 1e-14 after
    // normalizing the matrix to unit max-entry.
    ExtCx operator()(const Cx& z) const;

    const Cx& a() const { return a_; }
    const Cx& b() const { return b_; }
    const Cx& c() const { return c_; }
    const Cx& d() const { return d_; }

    // Behavioral test of membership in Aut(T): the three points {1, i, -1}
    // must land on the unit circle within tol.
    bool circle_preserving(double tol = 1e-9) const;

private:
    Cx a_, b_, c_, d_;
};

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
MoebiusMap invert(const MoebiusMap& m);

// Matrices proportional within tol (after unit max-entry normalization).
bool projectively_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol = 1e-9);

// C(z) = i (1 + z) / (1 - z); carries the unit circle to the extended real
// line with C(e^{it}) = -cot(t/2) and C(1) = infinity.
ExtCx cayley(const Cx& z);
Cx cayley_inverse(const Cx& w); // (w - i) / (w + i)
Cx cayley_inverse(const ExtCx& w);

// Circle automorphism carrying arc A onto arc B endpoint-to-endpoint:
// rotate A to start at 1, pass through the Cayley transform, translate the
// finite endpoint -cot(lA/2) to -cot(lB/2), come back, rotate to B.
MoebiusMap arc_to_arc(const phases::Arc& a, const phases::Arc& b);

// x -> e^{i beta} * (x + i v1)/(x - i v1) * (x - i v2)/(x + i v2).
// Maps the real line onto the arc {e^{it} : t in [beta-L, beta+L]} with
// L = 4 atan(sqrt(v1/v2)) - pi; the extreme angles are attained at
// x = +-sqrt(v1 v2).
struct RealLineArcMap {
    double v1;
    double v2;
    double beta;
    double arc_half_length; // L

    Cx operator()(double x) const;
};

// Requires v1 > v2 > 0, otherwise InvalidInput (L would not be positive).
RealLineArcMap real_line_to_arc(double v1, double v2, double beta);

} // namespace thetapr::moebius
