#pragma once

#include "rigidity/cohomology.hpp"
#include "rigidity/isometry.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rigidity {

// b(p, q): p odd >= 3, 0 < q < p, gcd(p, q) = 1.
class TwoBridgeKnot {
public:
    TwoBridgeKnot(int p, int q);
    // "p/q"; throws DomainError on malformed or invalid input.
    static TwoBridgeKnot parse(std::string_view text);

    int p() const { return p_; }
    int q() const { return q_; }
    // Same knot with q replaced by min(q, q^-1 mod p).
    TwoBridgeKnot canonical() const;
    std::string to_string() const;

    bool operator==(const TwoBridgeKnot& o) const;

private:
    int p_;
    int q_;
};

// w with relator w a w^-1 b^-1.
Word two_bridge_word(const TwoBridgeKnot& k);
Presentation presentation(const TwoBridgeKnot& k);

// Integer coefficients, constant term first.
struct IntPolynomial {
    std::vector<long long> coeffs;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;
};

IntPolynomial riley_polynomial(const TwoBridgeKnot& k);

Mobius riley_a();
Mobius riley_b(Complex u);

struct RileyRep {
    Complex root;
    Mobius a = Mobius::identity();
    Mobius b = Mobius::identity();
    double relator_residual = 0.0;
    double polynomial_residual = 0.0;
    bool is_geometric_candidate = false;
    Complex x_longitude;  // before orientation; meaningful when the longitude is parabolic
};

// One entry per root with multiplicity, sorted by (Re, Im).
std::vector<RileyRep> riley_reps(const TwoBridgeKnot& k);

// Index of the default candidate, or nullopt if there is none. Largest
// |Im x_longitude| wins; among conjugates the one with oriented cusp shape
// Re x_longitude >= 0, so the choice depends on the group alone.
std::optional<int> select_geometric(const std::vector<RileyRep>& reps);

// reverse(w) w a^(-2e), e the exponent sum of w.
Word longitude_word(const TwoBridgeKnot& k);

// Translation x with rho(g) = +-[[1, x], [0, 1]]; throws DomainError if
// rho(g) is not parabolic fixing infinity.
Complex translation_of(const Mobius& g, double tol = 1e-8);

struct PeripheralLattice {
    Complex x_meridian = 1.0;
    Complex x_longitude;
    Eigen::Vector2d t1 = Eigen::Vector2d(1.0, 0.0);
    Eigen::Vector2d t2 = Eigen::Vector2d::Zero();
    Word meridian;
    Word longitude;  // oriented so that Im x_longitude > 0
};

PeripheralLattice cusp_lattice(const RileyRep& rep, const TwoBridgeKnot& k);

// Lift to SO_0(3,1) of the generators a, b.
Representation so31_representation(const RileyRep& rep);

// Point of the projective line R u {inf}.
struct Slope {
    double numerator = 0.0;
    double denominator = 1.0;
    bool infinite = false;
    double value = 0.0;  // numerator / denominator when finite

    static Slope from_ratio(double numerator, double denominator, double tol = 1e-8);
};

struct SlopeDims {
    int z1_r31_m = 0;
    int b1_r31_m = 0;
    int h1_r31_m = 0;
    int z1_r31_torus = 0;
    int b1_r31_torus = 0;
    int h1_r31_torus = 0;
    int h1_so31_m = 0;
    int h1_so41_m = 0;
    int image_so41 = 0;
    int ph1_so41 = 0;
};

struct SlopeResiduals {
    double relator = 0.0;
    double commutator = 0.0;
    double cocycle = 0.0;
    double normal_form = 0.0;
    double generator_boundary_distance = 0.0;  // restricted generator vs peripheral B1
};

struct SlopeOptions {
    double tol = kRankTol;
    std::optional<int> root_index;
    // Peripheral basis replacing (meridian, longitude).
    std::optional<std::pair<Word, Word>> basis;
};

struct SlopeResult {
    Slope l;
    Slope l_alt;  // the value for the opposite generator sign
    Eigen::Vector2d omega = Eigen::Vector2d(1.0, 0.0);
    double lambda = 0.0;
    int root_index = 0;
    Complex root;
    PeripheralLattice lattice;
    Word basis_first;
    Word basis_second;
    Eigen::Vector2d phi_first = Eigen::Vector2d::Zero();
    Eigen::Vector2d phi_second = Eigen::Vector2d::Zero();
    SlopeDims h1_dims;
    SlopeResiduals residuals;
};

SlopeResult limit_slope(const TwoBridgeKnot& k, const SlopeOptions& options = {});

// |p trans1 + q trans2| <= tol; throws DomainError unless gcd(p, q) = 1.
bool filling_compatibility(double trans1, double trans2, long long p, long long q, double tol);

// Boundary-fixing isometries for the meridian and longitude translations,
// rotating about a common axis of direction omega at height -1/(lambda t).
// t = 0 gives the translations themselves.
std::pair<Isometry, Isometry> screw_family(const PeripheralLattice& lattice, const Eigen::Vector2d& omega,
                                           double lambda, double t);

}  // namespace rigidity
