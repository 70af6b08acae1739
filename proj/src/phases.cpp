#include "thetapr/phases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace thetapr::phases {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PhaseSet::PhaseSet(std::vector<Cx> values) : values_(std::move(values)) {
    if (values_.empty())
        throw InvalidInput("PhaseSet: empty");
    for (const Cx& v : values_) {
        if (!numkernel::is_finite(v))
            throw InvalidInput("PhaseSet: non-finite value");
        if (std::abs(std::abs(v) - 1.0) > 1e-12)
            throw InvalidInput("PhaseSet: value not on the unit circle");
    }
    for (std::size_t i = 0; i < values_.size(); ++i)
        for (std::size_t j = i + 1; j < values_.size(); ++j)
            if (std::abs(values_[i] - values_[j]) <= 1e-10)
                throw InvalidInput("PhaseSet: values not pairwise distinct");
}

PhaseSet PhaseSet::roots_of_unity(int n) {
    if (n < 1)
        throw InvalidInput("roots_of_unity: n must be >= 1");
    std::vector<Cx> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = kTwoPi * k / n;
        v.emplace_back(std::cos(t), std::sin(t));
    }
    return PhaseSet(std::move(v));
}

Arc::Arc(double start_, double length_) : start(start_), length(length_) {
    if (!(length > 0.0) || !(length < kTwoPi))
        throw InvalidInput("Arc: length must lie in (0, 2*pi)");
    if (!std::isfinite(start))
        throw InvalidInput("Arc: non-finite start");
}

bool Arc::contains_angle(double t, double tol) const {
    double off = std::fmod(t - start, kTwoPi);
    if (off < 0.0) off += kTwoPi;
    return off <= length + tol || off >= kTwoPi - tol;
}

Cx cross_ratio(const Cx& z1, const Cx& z2, const Cx& z3, const Cx& z4) {
    const Cx zs[4] = {z1, z2, z3, z4};
    for (int i = 0; i < 4; ++i) {
        if (!numkernel::is_finite(zs[i]))
            throw InvalidInput("cross_ratio: non-finite point");
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(zs[i] - zs[j]) <= 1e-12)
                throw DegenerateInput("cross_ratio: points not pairwise distinct");
    }
    return ((z1 - z3) * (z2 - z4)) / ((z1 - z4) * (z2 - z3));
}

std::vector<Cx> cr_orderings(const PhaseSet& T) {
    if (T.size() != 4)
        throw InvalidInput("cr_orderings: phase set must have exactly 4 elements");
    int perm[4] = {0, 1, 2, 3};
    std::vector<Cx> out;
    out.reserve(24);
    do {
        out.push_back(cross_ratio(T[perm[0]], T[perm[1]], T[perm[2]], T[perm[3]]));
    } while (std::next_permutation(perm, perm + 4));
    return out;
}

bool cr_equivalent(const PhaseSet& T, const PhaseSet& T2, double tol) {
    const std::vector<Cx> a = cr_orderings(T);
    const std::vector<Cx> b = cr_orderings(T2);
    for (const Cx& x : a)
        for (const Cx& y : b)
            if (std::abs(x - y) <= tol) return true;
    return false;
}

} // namespace thetapr::phases
