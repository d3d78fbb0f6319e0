#pragma once

#include "rigidity/isometry.hpp"
#include "rigidity/lie.hpp"
#include "rigidity/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rigidity {

struct Letter {
    int generator = 0;
    int power = 1;  // +1 or -1
    bool operator==(const Letter&) const = default;
};

// Freely reduced word in the generators.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);

    // Lowercase letters are generators (a = 0, b = 1, ...), uppercase their
    // inverses. Spaces are ignored.
    static Word parse(std::string_view text);
    static Word generator(int g, int power = 1);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const;
    Word reversed() const;
    Word pow(int k) const;
    int exponent_sum(int generator) const;
    int max_generator() const;

    Word operator*(const Word& o) const;
    bool operator==(const Word&) const = default;

    std::string to_string() const;

private:
    std::vector<Letter> letters_;
};

struct Presentation {
    int generator_count = 0;
    std::vector<Word> relators;

    // Throws DomainError on empty relators or letters out of range.
    void validate() const;

    // <g1, g2 | g1 g2 g1^-1 g2^-1>
    static Presentation torus();
    // Free abelian group on k generators.
    static Presentation free_abelian(int k);
};

enum class ModuleTag { so31, r31, so41 };

const char* to_string(ModuleTag t);
int module_dim(ModuleTag t);

// Images of the generators, all in SO_0(3,1).
using Representation = std::vector<Isometry>;

// Linear action of an SO_0(3,1) element on the module, in module coordinates.
Matrix module_action(ModuleTag tag, const Isometry& g);

// Module element as a matrix in the Lie algebra acting on the relevant
// Minkowski space: 4x4 for so31, 5x5 for r31 and so41.
Matrix module_element_matrix(ModuleTag tag, const Vector& v);

// The group element matching module_element_matrix.
Matrix group_matrix(ModuleTag tag, const Isometry& g);

Isometry evaluate(const Word& w, const Representation& rep);

// Max deviation of the relator images from the identity, relative to the
// size of the matrices met along the way.
double relator_residual(const Presentation& pres, const Representation& rep);

Matrix fox_matrix(const Word& r, int generator, const Representation& rep, ModuleTag tag);

// Shared immutable context of cocycles over one representation.
struct CocycleContext {
    Presentation presentation;
    Representation representation;
    ModuleTag tag = ModuleTag::r31;
    std::vector<Matrix> actions;          // per generator
    std::vector<Matrix> inverse_actions;  // per generator

    static std::shared_ptr<const CocycleContext> make(Presentation pres, Representation rep, ModuleTag tag);

    int dim() const { return module_dim(tag); }
    int generator_count() const { return presentation.generator_count; }
    Matrix action(const Word& w) const;
    Matrix fox_system() const;       // stacked over relators
    Matrix coboundary_map() const;   // a -> ((I - rho(g_i)) a)_i
};

class Cocycle {
public:
    // Throws DomainError if the values violate the linearized relators by
    // more than tol relative to their size.
    Cocycle(std::shared_ptr<const CocycleContext> context, std::vector<Vector> values, double tol = 1e-8);
    static Cocycle from_flat(std::shared_ptr<const CocycleContext> context, const Vector& flat, double tol = 1e-8);

    const CocycleContext& context() const { return *context_; }
    const std::shared_ptr<const CocycleContext>& context_ptr() const { return context_; }
    ModuleTag tag() const { return context_->tag; }
    const std::vector<Vector>& values() const { return values_; }
    const Vector& value(int generator) const { return values_[generator]; }
    Vector flat() const;

    // d(uv) = d(u) + rho(u) d(v)
    Vector value_on(const Word& w) const;

    double relation_residual() const;

    Cocycle operator+(const Cocycle& o) const;
    Cocycle operator*(double s) const;

private:
    std::shared_ptr<const CocycleContext> context_;
    std::vector<Vector> values_;
};

// d_a(g) = a - rho(g) a
Cocycle coboundary(std::shared_ptr<const CocycleContext> context, const Vector& a);

struct CohomologyReport {
    int dim_z1 = 0;
    int dim_b1 = 0;
    int dim_h1 = 0;
    std::vector<Cocycle> basis_z1;
    std::vector<double> singular_values;  // of the Fox system, relative to the largest
    double tolerance = kRankTol;
    Matrix z1;  // orthonormal columns, flattened cocycles
    Matrix b1;  // orthonormal columns

    // Cocycles spanning a complement of B1 in Z1, orthogonal to B1.
    std::vector<Cocycle> h1_representatives() const;
};

CohomologyReport cocycle_space(const Presentation& pres, const Representation& rep, ModuleTag tag,
                               double tol = kRankTol);
CohomologyReport cocycle_space(std::shared_ptr<const CocycleContext> context, double tol = kRankTol);

// Distance from d to B1 divided by |d| (0 for d = 0).
double relative_distance_to_coboundaries(const Cocycle& d);
bool is_coboundary(const Cocycle& d, double tol = kRankTol);

// Cocycle on the subgroup generated by the words, presented as free abelian
// on them. Throws DomainError if the images do not commute.
Cocycle restrict(const Cocycle& d, const std::vector<Word>& subgroup_words, double tol = 1e-9);

struct RestrictionReport {
    int dim_h1 = 0;           // H1(M)
    int dim_h1_boundary = 0;  // H1 of the peripheral subgroup
    int dim_image = 0;
    int dim_parabolic = 0;    // kernel of the restriction map
};

RestrictionReport peripheral_restriction(const Presentation& pres, const Representation& rep,
                                         const std::vector<Word>& peripheral_words, ModuleTag tag,
                                         double tol = kRankTol);
int parabolic_h1(const Presentation& pres, const Representation& rep, const std::vector<Word>& peripheral_words,
                 ModuleTag tag, double tol = kRankTol);

// Boundary translation vectors of the two torus generators; throws
// DomainError unless both are translations fixing p0.
std::pair<Eigen::Vector2d, Eigen::Vector2d> torus_lattice(const CocycleContext& context);

// Torus group with generators acting by translations t1, t2.
std::shared_ptr<const CocycleContext> torus_context(const Eigen::Vector2d& t1, const Eigen::Vector2d& t2,
                                                    ModuleTag tag = ModuleTag::r31);

struct CoboundaryParams {
    double a = 0.0;
    double b = 0.0;
    double l = 0.0;
};

// The r31 vector (-L, L, B, -A) whose coboundary is used for normalization.
Vector normalization_vector(const CoboundaryParams& c);

struct TorusNormalForm {
    Eigen::Vector2d omega = Eigen::Vector2d(1.0, 0.0);
    double lambda = 0.0;
    CoboundaryParams coboundary_correction;  // normalized = d + d_a
    std::vector<Vector> normalized;          // per generator, r31 coordinates
};

TorusNormalForm torus_normal_form(const Cocycle& d);

// The r31 values (phi(g_j).i omega) lambda omega realized with zero lambda and z coordinates.
std::vector<Vector> normal_form_values(const Eigen::Vector2d& t1, const Eigen::Vector2d& t2,
                                       const Eigen::Vector2d& omega, double lambda);

double weil_deform(const Cocycle& d, double t);
double trace_gradient(const Cocycle& d, const Word& gamma);

}  // namespace rigidity
