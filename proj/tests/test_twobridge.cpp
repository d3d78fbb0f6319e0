#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigidity/cohomology.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/lie.hpp"
#include "rigidity/twobridge.hpp"

#include <algorithm>
#include <cmath>

using namespace rigidity;

namespace {

double max_abs(const Matrix2c& m) { return m.cwiseAbs().maxCoeff(); }

Matrix2c sl2_word(const Word& w, const RileyRep& r) {
    Matrix2c m = Matrix2c::Identity();
    for (const Letter& l : w.letters()) {
        const Mobius g = l.generator == 0 ? r.a : r.b;
        m = m * (l.power > 0 ? g : g.inverse()).matrix();
    }
    return m;
}

RileyRep geometric(const TwoBridgeKnot& k) {
    const auto reps = riley_reps(k);
    const auto idx = select_geometric(reps);
    REQUIRE(idx.has_value());
    return reps[*idx];
}

double slope_distance(const Slope& a, const Slope& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite ? 0.0 : INFINITY;
    return std::abs(a.value - b.value) / std::max(1.0, std::abs(a.value));
}

}  // namespace

TEST_CASE("knot parsing") {
    const auto k = TwoBridgeKnot::parse("7/5");
    CHECK(k.p() == 7);
    CHECK(k.q() == 5);
    CHECK(k.canonical().to_string() == "7/3");
    CHECK(k == TwoBridgeKnot(7, 3));
    CHECK(TwoBridgeKnot::parse("5/3").canonical().to_string() == "5/2");
    CHECK_THROWS_AS(TwoBridgeKnot::parse("6/1"), DomainError);
    CHECK_THROWS_AS(TwoBridgeKnot::parse("9/3"), DomainError);
    CHECK_THROWS_AS(TwoBridgeKnot::parse("5/7"), DomainError);
    CHECK_THROWS_AS(TwoBridgeKnot::parse("five"), DomainError);
}

TEST_CASE("words and presentations") {
    const Word fig8 = two_bridge_word(TwoBridgeKnot(5, 3));
    CHECK(fig8.size() == 4);
    std::vector<int> signs;
    for (const Letter& l : fig8.letters()) signs.push_back(l.power);
    CHECK(signs == std::vector<int>{1, -1, -1, 1});
    CHECK(two_bridge_word(TwoBridgeKnot(3, 1)).size() == 2);

    const Presentation p = presentation(TwoBridgeKnot(5, 3));
    CHECK(p.generator_count == 2);
    REQUIRE(p.relators.size() == 1);
    CHECK(p.relators[0] == fig8 * Word::parse("a") * fig8.inverse() * Word::parse("B"));

    for (auto [pp, q] : {std::pair{7, 3}, {7, 2}, {9, 2}, {11, 4}}) {
        const Word w = two_bridge_word(TwoBridgeKnot(pp, q));
        std::vector<int> e;
        for (const Letter& l : w.letters()) e.push_back(l.power);
        CHECK(std::equal(e.begin(), e.end(), e.rbegin()));
        CHECK(longitude_word(TwoBridgeKnot(pp, q)).exponent_sum(0) + longitude_word(TwoBridgeKnot(pp, q)).exponent_sum(1) == 0);
    }
}

TEST_CASE("riley polynomials") {
    CHECK(riley_polynomial(TwoBridgeKnot(5, 3)).coeffs == std::vector<long long>{1, 1, 1});
    const auto c73 = riley_polynomial(TwoBridgeKnot(7, 3)).coeffs;
    CHECK(c73 == std::vector<long long>{1, -2, 1, -1});
    CHECK(riley_polynomial(TwoBridgeKnot(3, 1)).degree() == 1);
    for (auto [p, q] : {std::pair{7, 3}, {9, 2}, {11, 3}, {13, 5}}) {
        const TwoBridgeKnot k(p, q);
        CHECK(riley_polynomial(k).degree() == (p - 1) / 2);
        CHECK(static_cast<int>(riley_reps(k).size()) == (p - 1) / 2);
    }
}

TEST_CASE("riley representations satisfy the relator") {
    for (auto [p, q] : {std::pair{5, 3}, {7, 3}, {7, 2}, {9, 5}, {11, 4}}) {
        const TwoBridgeKnot k(p, q);
        const Presentation pres = presentation(k);
        for (const RileyRep& r : riley_reps(k)) {
            CHECK(r.relator_residual <= 1e-9);
            const Matrix2c rel = sl2_word(pres.relators[0], r);
            CHECK(max_abs(rel - Matrix2c::Identity()) <= 1e-9 * std::max(1.0, std::abs(r.root)));
            // the longitude commutes with the meridian
            const Matrix2c l = sl2_word(longitude_word(k), r);
            CHECK(max_abs(l * r.a.matrix() - r.a.matrix() * l) <= 1e-9 * std::max(1.0, max_abs(l)));
        }
    }
}

TEST_CASE("figure-eight cusp") {
    const TwoBridgeKnot k(5, 3);
    const RileyRep r = geometric(k);
    CHECK(r.root.imag() > 0.0);
    const Matrix2c l = sl2_word(longitude_word(k), r);
    CHECK(std::abs(l(1, 0)) <= 1e-12);
    CHECK(std::abs(std::abs(l.trace()) - 2.0) <= 1e-12);

    const PeripheralLattice lat = cusp_lattice(r, k);
    CHECK(lat.x_meridian == Complex(1.0));
    CHECK(std::abs(lat.x_longitude.real()) <= 1e-10);
    CHECK(lat.x_longitude.imag() == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-10));
    CHECK(lat.t2.y() > 0.0);

    const Complex xla = translation_of(Mobius::from_matrix(sl2_word(lat.longitude * lat.meridian, r), 1e-9));
    CHECK(std::abs(xla - (lat.x_longitude + 1.0)) <= 1e-10);

    const Representation rho = so31_representation(r);
    CHECK((rho[0].matrix() - parabolic_translation(1, 0).matrix()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("the trefoil has no geometric candidate") {
    const auto reps = riley_reps(TwoBridgeKnot(3, 1));
    CHECK(reps.size() == 1);
    CHECK(std::abs(reps[0].root.imag()) <= 1e-12);
    CHECK_FALSE(select_geometric(reps).has_value());
    CHECK_THROWS_AS(limit_slope(TwoBridgeKnot(3, 1)), PipelineError);
}

TEST_CASE("every geometric candidate has a nondegenerate cusp") {
    for (auto [p, q] : {std::pair{5, 3}, {7, 3}, {7, 2}, {9, 2}, {9, 4}, {11, 3}, {13, 5}}) {
        const TwoBridgeKnot k(p, q);
        for (const RileyRep& r : riley_reps(k))
            if (r.is_geometric_candidate) CHECK(std::abs(r.x_longitude.imag()) > 1e-6);
    }
}

TEST_CASE("limit slope of the figure-eight") {
    const SlopeResult s = limit_slope(TwoBridgeKnot(5, 3));
    CHECK(s.h1_dims.h1_r31_m == 1);
    CHECK(s.h1_dims.z1_r31_torus == 5);
    CHECK(s.h1_dims.b1_r31_torus == 3);
    CHECK(s.h1_dims.h1_r31_torus == 2);
    CHECK(s.h1_dims.ph1_so41 == 0);
    CHECK(s.h1_dims.image_so41 == 3);
    REQUIRE_FALSE(s.l.infinite);
    REQUIRE_FALSE(s.l_alt.infinite);
    // the knot is amphichiral: the two candidate slopes are negatives of each other
    CHECK(s.l_alt.value == doctest::Approx(-s.l.value).epsilon(1e-9));
    CHECK(std::abs(s.l.value) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-9));
    CHECK(s.residuals.generator_boundary_distance > 1e-3);
}

TEST_CASE("limit slope does not depend on the normal form of the knot") {
    for (auto [p, q1, q2] : {std::tuple{7, 3, 5}, {9, 2, 5}, {11, 3, 4}, {9, 4, 7}}) {
        const SlopeResult a = limit_slope(TwoBridgeKnot(p, q1));
        const SlopeResult b = limit_slope(TwoBridgeKnot(p, q2));
        CHECK(slope_distance(a.l, b.l) <= 1e-8);
        CHECK(slope_distance(a.l_alt, b.l_alt) <= 1e-8);
    }
}

TEST_CASE("mirror presentations give the same slopes") {
    // b(p, p - q) has the same group; candidate selection depends on the group only
    for (auto [p, q] : {std::pair{7, 3}, {9, 2}, {11, 3}}) {
        const SlopeResult a = limit_slope(TwoBridgeKnot(p, q));
        const SlopeResult m = limit_slope(TwoBridgeKnot(p, p - q));
        CHECK(slope_distance(a.l, m.l) <= 1e-8);
        CHECK(slope_distance(a.l_alt, m.l_alt) <= 1e-8);
        CHECK(std::abs(a.lattice.x_longitude - m.lattice.x_longitude) <= 1e-9);
    }
}

TEST_CASE("the restricted generator is never a peripheral coboundary") {
    for (auto [p, q] : {std::pair{5, 3}, {7, 3}, {9, 2}, {11, 3}}) {
        const SlopeResult s = limit_slope(TwoBridgeKnot(p, q));
        CHECK(s.residuals.generator_boundary_distance > 1e-3);
        CHECK(s.lambda > 1e-6);
    }
}

TEST_CASE("peripheral basis change") {
    const TwoBridgeKnot k(7, 3);
    const SlopeResult s = limit_slope(k);
    SlopeOptions opts;
    opts.basis = std::pair{s.lattice.meridian, s.lattice.longitude * s.lattice.meridian};
    const SlopeResult t = limit_slope(k, opts);
    CHECK(t.l.value == doctest::Approx(s.l.value - 1.0).epsilon(1e-9));
    CHECK(t.l_alt.value == doctest::Approx(s.l_alt.value - 1.0).epsilon(1e-9));

    opts.basis = std::pair{s.lattice.longitude, s.lattice.meridian};
    const SlopeResult swapped = limit_slope(k, opts);
    CHECK(swapped.l.value == doctest::Approx(1.0 / s.l.value).epsilon(1e-9));
}

TEST_CASE("root override") {
    const TwoBridgeKnot k(7, 3);
    const auto reps = riley_reps(k);
    const int idx = *select_geometric(reps);
    SlopeOptions opts;
    opts.root_index = idx;
    CHECK(limit_slope(k, opts).l.value == doctest::Approx(limit_slope(k).l.value).epsilon(1e-12));
    opts.root_index = 99;
    CHECK_THROWS_AS(limit_slope(k, opts), DomainError);
}

TEST_CASE("filling compatibility") {
    CHECK(filling_compatibility(0.0, 0.3, 1, 0, 1e-12));
    CHECK(filling_compatibility(1.0, -0.5, 1, 2, 1e-12));
    CHECK_FALSE(filling_compatibility(1.0, 0.5, 1, 2, 1e-12));
    CHECK_THROWS_AS(filling_compatibility(1.0, 1.0, 2, 4, 1e-12), DomainError);
}

TEST_CASE("continued fraction convergents of the limit slope become compatible") {
    const TwoBridgeKnot k(7, 3);
    const SlopeResult s = limit_slope(k);
    const auto [g1, g2] = screw_family(s.lattice, s.omega, s.lambda, 0.3);
    // signed translation along the common axis direction omega
    const Vector3 axis(s.omega.x(), s.omega.y(), 0.0);
    const double trans1 = boundary_affine_action(g1).translation.dot(axis);
    const double trans2 = boundary_affine_action(g2).translation.dot(axis);
    CHECK(std::abs(trans1) == doctest::Approx(std::abs(screw_translation_length(g1).trans)).epsilon(1e-9));
    CHECK(-trans2 / trans1 == doctest::Approx(s.l.value).epsilon(1e-9));

    long long h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents h/k of l
    double x = s.l.value;
    for (int n = 0; n < 8; ++n) {
        const long long a = static_cast<long long>(std::floor(x));
        const long long h = a * h0 + h1, kk = a * k0 + k1;
        h1 = h0, h0 = h, k1 = k0, k0 = kk;
        CHECK(filling_compatibility(trans1, trans2, h, kk, std::abs(trans1) / static_cast<double>(std::abs(kk))));
        if (x - static_cast<double>(a) < 1e-12) break;
        x = 1.0 / (x - static_cast<double>(a));
    }
}

TEST_CASE("screw family") {
    const SlopeResult s = limit_slope(TwoBridgeKnot(7, 3));
    const auto [m0, l0] = screw_family(s.lattice, s.omega, s.lambda, 0.0);
    const auto tr = boundary_affine_action(m0);
    CHECK((tr.translation - Vector3(1, 0, 0)).norm() <= 1e-14);
    CHECK((boundary_affine_action(l0).translation -
           Vector3(s.lattice.x_longitude.real(), s.lattice.x_longitude.imag(), 0))
              .norm() <= 1e-12);

    for (double t : {1e-4, 0.01, 0.1, 0.5, 1.0}) {
        const auto [m, l] = screw_family(s.lattice, s.omega, s.lambda, t);
        CHECK(is_special_lorentz(m.matrix(), 1e-9));
        CHECK(is_special_lorentz(l.matrix(), 1e-9));
        CHECK(((m * l).matrix() - (l * m).matrix()).cwiseAbs().maxCoeff() <= 1e-10);
        // translation along the common axis is phi . omega
        CHECK(std::abs(screw_translation_length(m).trans) == doctest::Approx(std::abs(s.phi_first.dot(s.omega))).epsilon(1e-9));
    }
}
