#include <numbers>

#include "test_support.hpp"
#include "thetapr/moebius.hpp"

using namespace thetapr;
using namespace thetapr::moebius;
using phases::Arc;

namespace {
constexpr double kPi = std::numbers::pi;

double centered_arg(const Cx& z, double beta) {
    return std::arg(z * std::polar(1.0, -beta));
}
} // namespace

TEST_SUITE_BEGIN("moebius");

TEST_CASE("apply and projective scaling") {
    const MoebiusMap id = MoebiusMap::identity();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Cx z = test_support::random_vector(1, seed)(0);
        CHECK(std::abs(id(z).value() - z) < 1e-14);
    }

    const MoebiusMap scaled(Cx(5, 0), Cx(0, 0), Cx(0, 0), Cx(5, 0));
    CHECK(projectively_equal(id, scaled));
    CHECK(std::abs(scaled(Cx(0.3, -0.2)).value() - Cx(0.3, -0.2)) < 1e-14);

    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const MoebiusMap u = experiments::random_u11_map(seed);
        const Cx z = std::polar(1.0, 2.0 * kPi * 0.031 * static_cast<double>(seed));
        CHECK(std::abs(std::abs(u(z).value()) - 1.0) < 1e-10);
    }
}

TEST_CASE("compose and invert") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const MoebiusMap m = experiments::random_u11_map(seed);
        CHECK(projectively_equal(compose(m, invert(m)), MoebiusMap::identity()));
        CHECK(projectively_equal(compose(MoebiusMap::identity(), m), m));
    }

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const MoebiusMap m1 = experiments::random_u11_map(100 + seed);
        const MoebiusMap m2 = experiments::random_u11_map(200 + seed);
        const MoebiusMap both = compose(m1, m2);
        for (int k = 0; k < 20; ++k) {
            const Cx z = std::polar(1.0, 2.0 * kPi * k / 20.0 + 0.1);
            const Cx direct = both(z).value();
            const Cx chained = m1(m2(z).value()).value();
            CHECK(std::abs(direct - chained) < 1e-9);
        }
    }

    CHECK_THROWS_AS(MoebiusMap(Cx(1, 0), Cx(2, 0), Cx(2, 0), Cx(4, 0)), DegenerateInput);
}

TEST_CASE("cayley transform") {
    CHECK(std::abs(cayley(Cx(-1, 0)).value() - Cx(0, 0)) < 1e-14);
    CHECK(std::abs(cayley(Cx(0, 1)).value() - Cx(-1, 0)) < 1e-14);
    CHECK(cayley(Cx(1, 0)).is_infinity());

    for (double t : {kPi / 2.0, kPi, 3.0 * kPi / 2.0}) {
        const Cx w = cayley(std::polar(1.0, t)).value();
        CHECK(std::abs(w - Cx(-1.0 / std::tan(t / 2.0), 0.0)) < 1e-12);
    }

    for (double t : {0.3, 1.0, 2.5, 4.0, 6.0}) {
        const Cx z = std::polar(1.0, t);
        CHECK(std::abs(cayley_inverse(cayley(z)) - z) < 1e-12);
    }
    CHECK(std::abs(cayley_inverse(ExtCx::infinity()) - Cx(1, 0)) < 1e-14);
}

TEST_CASE("arc to arc mapping") {
    SUBCASE("identical arcs fix endpoints") {
        const Arc a(0.7, 1.9);
        const MoebiusMap m = arc_to_arc(a, a);
        CHECK(std::abs(m(std::polar(1.0, a.start)).value() - std::polar(1.0, a.start)) <
              1e-9);
        CHECK(std::abs(m(std::polar(1.0, a.start + a.length)).value() -
                       std::polar(1.0, a.start + a.length)) < 1e-9);
    }

    SUBCASE("endpoints travel to endpoints") {
        const Arc a(0.4, 2.2);
        const Arc b(-1.0, 0.9);
        const MoebiusMap m = arc_to_arc(a, b);
        CHECK(std::abs(m(std::polar(1.0, a.start)).value() - std::polar(1.0, b.start)) <
              1e-9);
        CHECK(std::abs(m(std::polar(1.0, a.start + a.length)).value() -
                       std::polar(1.0, b.start + b.length)) < 1e-9);
        CHECK(m.circle_preserving());
    }

    SUBCASE("interior samples stay inside the target arc") {
        const Arc a(2.0, 1.4);
        const Arc b(0.2, 3.0);
        const MoebiusMap m = arc_to_arc(a, b);
        for (int i = 1; i <= 50; ++i) {
            const double t = a.start + a.length * i / 51.0;
            const Cx w = m(std::polar(1.0, t)).value();
            CHECK(b.contains_angle(std::arg(w), 1e-8));
        }
    }
}

TEST_CASE("real line onto arc") {
    const double v1 = 2.0, v2 = 1.0, beta = 0.6;
    const RealLineArcMap m = real_line_to_arc(v1, v2, beta);
    const double L = m.arc_half_length;
    CHECK(L == doctest::Approx(4.0 * std::atan(std::sqrt(2.0)) - kPi).epsilon(1e-14));

    CHECK(std::abs(m(0.0) - std::polar(1.0, beta)) < 1e-12);
    CHECK(centered_arg(m(std::sqrt(v1 * v2)), beta) == doctest::Approx(L).epsilon(1e-9));

    CHECK_THROWS_AS(real_line_to_arc(1.0, 1.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(real_line_to_arc(1.0, 2.0, 0.0), InvalidInput);
}

TEST_CASE("constructed maps preserve the circle") {
    const MoebiusMap arc_map = arc_to_arc(Arc(0.1, 1.0), Arc(1.2, 2.5));
    for (int k = 0; k < 100; ++k) {
        const Cx z = std::polar(1.0, 2.0 * kPi * k / 100.0 + 0.003);
        CHECK(std::abs(std::abs(arc_map(z).value()) - 1.0) < 1e-9);
    }
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        CHECK(experiments::random_u11_map(seed).circle_preserving());
}

TEST_CASE("arc map argument is odd and extremal at sqrt(v1 v2)") {
    const double v1 = 3.0, v2 = 0.5, beta = -0.9;
    const RealLineArcMap m = real_line_to_arc(v1, v2, beta);
    const double L = m.arc_half_length;

    for (double x : {0.1, 0.5, 1.0, 2.0, 7.7, 133.0}) {
        CHECK(std::abs(centered_arg(m(x), beta) + centered_arg(m(-x), beta)) < 1e-9);
    }

    // Log-spaced sweep of |x| in [1e-6, 1e6].
    double sup = 0.0;
    for (int k = -60; k <= 60; ++k) {
        const double x = std::pow(10.0, k / 10.0);
        sup = std::max(sup, std::abs(centered_arg(m(x), beta)));
        sup = std::max(sup, std::abs(centered_arg(m(-x), beta)));
    }
    CHECK(sup <= L + 1e-6);
    CHECK(std::abs(centered_arg(m(std::sqrt(v1 * v2)), beta)) >= L - 1e-6);
}

TEST_SUITE_END();
