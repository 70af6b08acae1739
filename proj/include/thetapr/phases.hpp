#pragma once

#include <vector>

#include "thetapr/numkernel.hpp"

namespace thetapr::phases {

// Finite ordered set of unit-modulus complex numbers. Values are stored as
// exact complex entries (generated once from angle formulas), never
// re-derived from angles, so repeated use does not accumulate trig error.
class PhaseSet {
public:
    // Validates: nonempty, every |value| = 1 within 1e-12, pairwise
    // distances above 1e-10. Throws InvalidInput otherwise.
    explicit PhaseSet(std::vector<Cx> values);

    // e^{2*pi*i*k/n} for k = 0..n-1. n == 0 -> InvalidInput.
    static PhaseSet roots_of_unity(int n);

    const std::vector<Cx>& values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }
    const Cx& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

private:
    std::vector<Cx> values_;
};

// Closed circular arc {e^{it} : t in [start, start+length]}.
struct Arc {
    double start;
    double length; // must lie in (0, 2*pi)

    Arc(double start, double length);

    // True when e^{it} lies on the arc, angles compared mod 2*pi.
    bool contains_angle(double t, double tol = 1e-9) const;
};

// CR(z1,z2;z3,z4) = (z1-z3)(z2-z4) / ((z1-z4)(z2-z3)).
// Points must be pairwise distinct (distance > 1e-12) -> DegenerateInput.
Cx cross_ratio(const Cx& z1, const Cx& z2, const Cx& z3, const Cx& z4);

// Cross ratios of all 24 orderings of a 4-element set, duplicates retained,
// in lexicographic permutation order.
std::vector<Cx> cr_orderings(const PhaseSet& T);

// True when some ordering of T and some ordering of T2 produce the same
// cross ratio within tol. Both sets must have exactly 4 elements.
bool cr_equivalent(const PhaseSet& T, const PhaseSet& T2, double tol = 1e-9);

} // namespace thetapr::phases
