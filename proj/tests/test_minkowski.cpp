#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigidity/errors.hpp"
#include "rigidity/minkowski.hpp"
#include "suite/oracles.hpp"

using namespace rigidity;

namespace {

MinkVector random_vector(oracle::Rng& rng, int n) {
    Vector v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = rng.uniform(-2.0, 2.0);
    return MinkVector(v);
}

}  // namespace

TEST_CASE("lorentz form") {
    LorentzForm f(4);
    CHECK(f.size() == 5);
    CHECK(f.matrix()(0, 0) == -1.0);
    CHECK(f.matrix()(3, 3) == 1.0);
    CHECK(f.matrix().sum() == 3.0);
}

TEST_CASE("products of small vectors") {
    CHECK(lorentz_product({1, 0, 0, 0}, {1, 0, 0, 0}) == -1.0);
    CHECK(lorentz_product({0, 1, 0, 0}, {0, 1, 0, 0}) == 1.0);
    CHECK(lorentz_product({1, 1, 0, 0}, {1, 1, 0, 0}) == 0.0);
    CHECK(lorentz_product({2, 1, 3, 0, 1}, {1, 4, 0, 2, 2}) == doctest::Approx(-2.0 + 4.0 + 2.0));
}

TEST_CASE("vector classes") {
    const auto h = classify_vector({1, 0, 0, 0});
    CHECK(h.causal == Causal::timelike);
    CHECK(h.locus == Locus::on_hyperboloid);

    const auto past = classify_vector({-1, 0, 0, 0});
    CHECK(past.causal == Causal::timelike);
    CHECK(past.locus == Locus::neither);

    const auto ds = classify_vector({0, 0, 1, 0});
    CHECK(ds.causal == Causal::spacelike);
    CHECK(ds.locus == Locus::on_de_sitter);

    CHECK(classify_vector({1, 1, 0, 0}).causal == Causal::lightlike);
    CHECK(classify_vector({2, 0, 0, 0}).locus == Locus::neither);
    CHECK(classify_vector({std::cosh(0.7), std::sinh(0.7), 0, 0}).locus == Locus::on_hyperboloid);
}

TEST_CASE("mismatched sizes are rejected") {
    CHECK_THROWS_AS(lorentz_product({1, 0, 0, 0}, {1, 0, 0, 0, 0}), DimensionError);
}

TEST_CASE("special lorentz membership") {
    CHECK(is_special_lorentz(Matrix::Identity(5, 5)));
    CHECK(is_special_lorentz(oracle::boost(5, 1, 0.8)));
    CHECK(is_special_lorentz(oracle::plane_rotation(4, 1, 3, 2.0)));

    Matrix time_flip = Matrix::Identity(4, 4);
    time_flip(0, 0) = -1.0;
    time_flip(1, 1) = -1.0;
    CHECK_FALSE(is_special_lorentz(time_flip));

    Matrix reflection = Matrix::Identity(4, 4);
    reflection(2, 2) = -1.0;
    CHECK_FALSE(is_special_lorentz(reflection));

    Matrix off = Matrix::Identity(4, 4);
    off(1, 2) = 1e-6;
    CHECK_FALSE(is_special_lorentz(off));
}

TEST_CASE("product is symmetric and bilinear") {
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto u = random_vector(rng, 4), v = random_vector(rng, 4), w = random_vector(rng, 4);
        const double s = rng.uniform(-3.0, 3.0);
        CHECK(lorentz_product(u, v) == doctest::Approx(lorentz_product(v, u)).epsilon(1e-14));
        CHECK(lorentz_product(u * s + v, w) ==
              doctest::Approx(s * lorentz_product(u, w) + lorentz_product(v, w)).epsilon(1e-12));
    }
}

TEST_CASE("invariance under SO0(4,1)") {
    oracle::Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const Matrix a = oracle::random_so41(rng);
        REQUIRE(is_special_lorentz(a, 1e-8));
        const auto u = random_vector(rng, 4), v = random_vector(rng, 4);
        const MinkVector au(a * u.coords()), av(a * v.coords());
        CHECK(lorentz_product(au, av) == doctest::Approx(lorentz_product(u, v)).scale(1.0).epsilon(1e-10));
    }
}

TEST_CASE("vector classes are invariant under SO0(3,1)") {
    oracle::Rng rng(13);
    const std::vector<MinkVector> samples = {
        {1, 0, 0, 0}, {0, 0, 0, 1}, {1, 0, 1, 0}, {3, 1, 0, 0}, {0.5, 0, 0, 0}, {0, 2, 0, 0}};
    for (int i = 0; i < 50; ++i) {
        const Matrix g = oracle::boost(4, 1 + i % 3, rng.uniform(-1.5, 1.5)) * oracle::plane_rotation(4, 1, 2, rng.uniform(0, 6));
        for (const auto& v : samples) CHECK(classify_vector(MinkVector(g * v.coords())) == classify_vector(v));
    }
}
