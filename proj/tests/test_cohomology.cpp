#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rigidity/cohomology.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/lie.hpp"
#include "rigidity/linalg.hpp"
#include "rigidity/twobridge.hpp"
#include "suite/oracles.hpp"

using namespace rigidity;
using Eigen::Vector2d;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Vector r31(double lambda, double z, double beta, double alpha) {
    return R31Coordinates{lambda, z, beta, alpha}.to_vector().coords();
}

Vector random_vector(oracle::Rng& rng, int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    return v;
}

struct Knot {
    TwoBridgeKnot knot;
    PeripheralLattice lattice;
    std::shared_ptr<const CocycleContext> context;
};

Knot knot(const char* name, ModuleTag tag = ModuleTag::r31) {
    const TwoBridgeKnot k = TwoBridgeKnot::parse(name);
    const auto reps = riley_reps(k);
    const auto idx = select_geometric(reps);
    REQUIRE(idx.has_value());
    return {k, cusp_lattice(reps[*idx], k), CocycleContext::make(presentation(k), so31_representation(reps[*idx]), tag)};
}

}  // namespace

TEST_CASE("words") {
    const Word w = Word::parse("abAB");
    CHECK(w.size() == 4);
    CHECK(w.to_string() == "abAB");
    CHECK(w.inverse().to_string() == "baBA");
    CHECK(w.reversed().to_string() == "BAba");
    CHECK(Word::parse("aA").empty());
    CHECK(Word::parse("a b").to_string() == "ab");
    CHECK(Word::parse("ab").pow(-2).to_string() == "BABA");
    CHECK(Word::parse("aabA").exponent_sum(0) == 1);
    CHECK((Word::parse("ab") * Word::parse("Ba")).to_string() == "aa");
    CHECK_THROWS_AS(Word::parse("a1"), DomainError);
}

TEST_CASE("fox calculus") {
    const auto ctx = torus_context({1, 0}, {0.3, 1.1}, ModuleTag::r31);
    const Representation& rep = ctx->representation;
    const Matrix ra = module_action(ModuleTag::r31, rep[0]);
    const Matrix rb = module_action(ModuleTag::r31, rep[1]);
    const Matrix id = Matrix::Identity(4, 4);

    CHECK(max_abs(fox_matrix(Word::parse("a"), 0, rep, ModuleTag::r31) - id) == 0.0);
    CHECK(max_abs(fox_matrix(Word::parse("a"), 1, rep, ModuleTag::r31)) == 0.0);
    CHECK(max_abs(fox_matrix(Word::parse("A"), 0, rep, ModuleTag::r31) + ra.inverse()) <= 1e-14);

    // d([a, b]) = 0 is (a - 1) d(b) = (b - 1) d(a)
    const Word comm = Word::parse("abAB");
    CHECK(max_abs(fox_matrix(comm, 0, rep, ModuleTag::r31) - (id - rb)) <= 1e-13);
    CHECK(max_abs(fox_matrix(comm, 1, rep, ModuleTag::r31) - (ra - id)) <= 1e-13);
}

TEST_CASE("torus dimensions") {
    const auto r = cocycle_space(Presentation::torus(), torus_context({1, 0}, {0, 1})->representation, ModuleTag::r31);
    CHECK(r.dim_z1 == 5);
    CHECK(r.dim_b1 == 3);
    CHECK(r.dim_h1 == 2);
    CHECK(cocycle_space(torus_context({1, 0}, {0, 1}, ModuleTag::so31)).dim_h1 == 4);

    const auto so41 = cocycle_space(torus_context({1, 0}, {0.5, 0.8}, ModuleTag::so41));
    CHECK(so41.dim_h1 == 6);
}

TEST_CASE("dimensions agree with the closed-form constraint system") {
    oracle::Rng rng(41);
    for (int i = 0; i < 20; ++i) {
        const auto [t1, t2] = oracle::random_lattice(rng);
        const auto r = cocycle_space(torus_context(t1, t2));
        const Matrix z = oracle::torus_r31_z1_basis(t1, t2);
        const Matrix b = oracle::torus_r31_b1_basis(t1, t2);
        CHECK(r.dim_z1 == z.cols());
        for (int c = 0; c < z.cols(); ++c) CHECK(distance_to_span(z.col(c), r.z1) <= 1e-10 * z.col(c).norm());
        for (int c = 0; c < b.cols(); ++c) CHECK(distance_to_span(b.col(c), r.b1) <= 1e-10 * b.col(c).norm());
    }
}

TEST_CASE("rank decisions are stable across a decade of tolerance") {
    oracle::Rng rng(42);
    for (int i = 0; i < 20; ++i) {
        const auto [t1, t2] = oracle::random_lattice(rng);
        const auto ctx = torus_context(t1, t2, ModuleTag::so31);
        const int base = cocycle_space(ctx).dim_h1;
        CHECK(cocycle_space(ctx, kRankTol * 10).dim_h1 == base);
        CHECK(cocycle_space(ctx, kRankTol / 10).dim_h1 == base);
    }
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 5e-8;
    CHECK_THROWS_AS(numerical_rank(m, 1e-8, "test"), RankAmbiguityError);
    m(1, 1) = 1e-12;
    CHECK(numerical_rank(m, 1e-8, "test").rank == 1);
}

TEST_CASE("cocycles reject violated relations") {
    const auto ctx = torus_context({1, 0}, {0, 1});
    CHECK_THROWS_AS(Cocycle(ctx, {r31(0, 0, 0, 1), r31(0, 0, 0, 0)}), DomainError);
    CHECK_NOTHROW(Cocycle(ctx, {r31(0, 0, 0, 0), r31(0, 0, 0, 1)}));
}

TEST_CASE("coboundaries") {
    oracle::Rng rng(43);
    const auto ctx = torus_context({1, 0}, {0.4, 1.3});
    for (int i = 0; i < 10; ++i) CHECK(is_coboundary(coboundary(ctx, random_vector(rng, 4))));

    const Cocycle vertical(ctx, {r31(0, 1.7, 0, 0), r31(0, -0.4, 0, 0)});
    CHECK(is_coboundary(vertical));

    const auto unit = torus_context({1, 0}, {0, 1});
    const Cocycle nf(unit, {r31(0, 0, 0, 0), r31(0, 0, 0, 1)});
    CHECK_FALSE(is_coboundary(nf));
    CHECK(relative_distance_to_coboundaries(nf) > 0.1);
}

TEST_CASE("cocycle values on words") {
    oracle::Rng rng(44);
    const Knot k = knot("5/3");
    const auto space = cocycle_space(k.context);
    const Cocycle& d = space.basis_z1.front();
    const Word u = Word::parse("abA"), v = Word::parse("Bba b");
    const Vector lhs = d.value_on(u * v);
    const Vector rhs = d.value_on(u) + k.context->action(u) * d.value_on(v);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, lhs.norm()));
    CHECK(d.value_on(Word()).norm() == 0.0);
    for (const Word& r : k.context->presentation.relators) CHECK(d.value_on(r).norm() <= 1e-9);
    CHECK(d.relation_residual() <= 1e-9);
}

TEST_CASE("restriction") {
    oracle::Rng rng(45);
    const Knot k = knot("7/3");
    const std::vector<Word> peripheral = {k.lattice.meridian, k.lattice.longitude};
    for (int i = 0; i < 5; ++i) {
        const Cocycle c = coboundary(k.context, random_vector(rng, 4));
        CHECK(is_coboundary(restrict(c, peripheral)));
    }
    const auto space = cocycle_space(k.context);
    const Cocycle& d = space.basis_z1.front();
    const Cocycle single = restrict(d, {Word::parse("a")});
    CHECK((single.value(0) - d.value(0)).norm() <= 1e-15);

    CHECK_THROWS_AS(restrict(d, {Word::parse("a"), Word::parse("b")}), DomainError);
}

TEST_CASE("parabolic cohomology of two-bridge knots") {
    for (const char* name : {"5/3", "7/3"}) {
        const Knot k = knot(name);
        const auto& ctx = *k.context;
        const auto pr = peripheral_restriction(ctx.presentation, ctx.representation,
                                               {k.lattice.meridian, k.lattice.longitude}, ModuleTag::so41);
        CHECK(pr.dim_parabolic == 0);
        CHECK(pr.dim_h1_boundary == 6);
        CHECK(pr.dim_image == 3);
        CHECK(parabolic_h1(ctx.presentation, ctx.representation, {k.lattice.meridian, k.lattice.longitude},
                           ModuleTag::so41) == 0);
        CHECK(cocycle_space(k.context).dim_h1 == 1);
    }
}

TEST_CASE("torus normal form") {
    const auto unit = torus_context({1, 0}, {0, 1});
    const auto nf = torus_normal_form(Cocycle(unit, {r31(0, 0, 0, 0), r31(0, 0, 0, 1)}));
    CHECK(nf.omega.x() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(nf.omega.y()) <= 1e-12);
    CHECK(nf.lambda == doctest::Approx(1.0).epsilon(1e-12));

    oracle::Rng rng(46);
    for (int i = 0; i < 20; ++i) {
        const auto [t1, t2] = oracle::random_lattice(rng);
        const auto ctx = torus_context(t1, t2);
        const auto cb = torus_normal_form(coboundary(ctx, random_vector(rng, 4)));
        CHECK(cb.lambda <= 1e-9);

        const Matrix z = oracle::torus_r31_z1_basis(t1, t2);
        const Cocycle d = Cocycle::from_flat(ctx, z * random_vector(rng, static_cast<int>(z.cols())));
        const auto f = torus_normal_form(d);
        CHECK(f.lambda >= 0.0);
        CHECK(f.omega.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const std::vector<Vector> expected = normal_form_values(t1, t2, f.omega, f.lambda);
        for (int g = 0; g < 2; ++g) {
            CHECK((f.normalized[g] - expected[g]).norm() <= 1e-9 * std::max(1.0, f.lambda));
            CHECK(std::abs(r31_coords(MinkVector(f.normalized[g])).lambda) <= 1e-12 * std::max(1.0, f.lambda));
        }
        // the correction really is a coboundary
        const Cocycle diff(ctx, {f.normalized[0] - d.value(0), f.normalized[1] - d.value(1)});
        const Cocycle cbk = coboundary(ctx, normalization_vector(f.coboundary_correction));
        CHECK((diff.flat() - cbk.flat()).norm() <= 1e-9 * std::max(1.0, d.flat().norm()));
    }
}

TEST_CASE("weil deformation") {
    const auto ctx = torus_context({1, 0}, {0.2, 1.4});
    const Cocycle d(ctx, normal_form_values({1, 0}, {0.2, 1.4}, {0.6, 0.8}, 1.0));
    CHECK(weil_deform(d, 0.0) <= 1e-12);
    const double ratio = weil_deform(d, 1e-3) / weil_deform(d, 1e-4);
    CHECK(ratio > 80.0);
    CHECK(ratio < 120.0);

    oracle::Rng rng(47);
    const Cocycle c = coboundary(ctx, random_vector(rng, 4));
    const double r2 = weil_deform(c, 1e-3) / weil_deform(c, 1e-4);
    CHECK(r2 > 80.0);
    CHECK(r2 < 120.0);
}

TEST_CASE("trace gradients vanish on R31") {
    oracle::Rng rng(48);
    const Knot k = knot("7/3");
    const auto space = cocycle_space(k.context);
    for (const Cocycle& d : space.basis_z1)
        for (const char* w : {"a", "b", "ab", "aBAb", "abbAB"}) CHECK(std::abs(trace_gradient(d, Word::parse(w))) <= 1e-10);
    CHECK(std::abs(trace_gradient(coboundary(k.context, random_vector(rng, 4)), Word::parse("ab"))) <= 1e-10);
}

TEST_CASE("so31 trace gradients on a cusp scale with the square of the translation") {
    // d tr(g) = 4 Re(x(g)^2 Z): fit Z on two peripheral elements, predict the rest
    // 7/3: x_longitude^2 is not real, so two peripheral values determine Z
    const Knot k = knot("7/3", ModuleTag::so31);
    const auto space = cocycle_space(k.context);
    const Complex xl = k.lattice.x_longitude;
    const Word m = k.lattice.meridian, l = k.lattice.longitude;
    for (const Cocycle& d : space.basis_z1) {
        const double gm = trace_gradient(d, m);  // x = 1: 4 Re Z
        const double gl = trace_gradient(d, l);  // 4 Re(xl^2 Z)
        const Complex x2 = xl * xl;
        // Re Z = gm / 4, Re(x2) Re Z - Im(x2) Im Z = gl / 4
        const double re = gm / 4.0;
        const double im = (x2.real() * re - gl / 4.0) / x2.imag();
        const Complex z(re, im);
        double scale = std::abs(gm) + std::abs(gl) + 1.0;
        for (int p = -2; p <= 2; ++p) {
            for (int q = -2; q <= 2; ++q) {
                const Word g = m.pow(p) * l.pow(q);
                const Complex x = static_cast<double>(p) + static_cast<double>(q) * xl;
                const double predicted = 4.0 * (x * x * z).real();
                CHECK(std::abs(trace_gradient(d, g) - predicted) <= 1e-8 * scale * std::max(1.0, std::norm(x)));
            }
        }
    }
}
