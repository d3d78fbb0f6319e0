#pragma once

#include "rigidity/minkowski.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace rigidity {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

// An element of SO_0(n,1), n = 3 or 4, stored as an (n+1)x(n+1) matrix.
class Isometry {
public:
    // Validates with is_special_lorentz; throws DomainError otherwise.
    static Isometry from_matrix(const Matrix& m, double tol = kMembershipTol);
    static Isometry identity(int n);

    int n() const { return static_cast<int>(m_.rows()) - 1; }
    const Matrix& matrix() const { return m_; }
    double trace() const { return m_.trace(); }

    // Lorentz inverse J A^t J.
    Isometry inverse() const;
    Isometry operator*(const Isometry& o) const;
    MinkVector operator*(const MinkVector& v) const;

private:
    explicit Isometry(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

// A unimodular 2x2 complex matrix standing for a pair +-M in PSL(2,C).
class Mobius {
public:
    static Mobius from_matrix(const Matrix2c& m, double tol = 1e-12);
    static Mobius identity();

    const Matrix2c& matrix() const { return m_; }
    Complex trace() const { return m_.trace(); }
    Mobius inverse() const;
    Mobius operator*(const Mobius& o) const;

private:
    explicit Mobius(Matrix2c m) : m_(std::move(m)) {}
    Matrix2c m_;
};

// Holonomy of a boundary translation by (x, y), fixing p0 = (1,1,0,0).
Isometry parabolic_translation(double x, double y);

// The nilpotent generator whose exponential is parabolic_translation(x, y).
Matrix parabolic_generator(double x, double y);

// diag(A, 1)
Isometry embed(const Isometry& a);

// Action on Hermitian matrices X -> M X M^*.
Isometry from_sl2c(const Mobius& m);

// Derivative of from_sl2c at the identity, on sl(2,C).
Matrix from_sl2c_algebra(const Matrix2c& x);

enum class IsometryKind { identity, parabolic_translation, parabolic_screw, elliptic, loxodromic };

const char* to_string(IsometryKind k);

struct IsometryClass {
    IsometryKind kind = IsometryKind::identity;
    double translation_length = 0.0;  // lambda
    double alpha = 0.0;
    double beta = 0.0;
    double trace = 0.0;
    double trace_residual = 0.0;  // |trace - expected_trace|
};

// Trace predicted by the kind and parameters.
double expected_trace(const IsometryClass& c);

// Kind from the Lorentz signature of the fixed space of A, parameters from
// the spectrum. Throws DomainError if A is not in SO_0(4,1).
IsometryClass classify(const Matrix& a, double tol = kMembershipTol);
IsometryClass classify(const Isometry& a, double tol = kMembershipTol);

// The light-cone point fixed by the boundary chart, and its partner.
MinkVector boundary_p0();
MinkVector boundary_q0();

// Point of the light cone over u in R^3 = boundary minus p0.
MinkVector boundary_chart(const Vector3& u);

struct BoundaryAction {
    Matrix3 linear_part;
    Vector3 translation;
    double scale = 1.0;
};

// Similarity u -> scale * linear_part * u + translation induced on the
// boundary by an element fixing the ray of p0.
BoundaryAction boundary_affine_action(const Isometry& a, double tol = 1e-8);

// Inverse of boundary_affine_action. `linear` must be a rotation.
Isometry from_boundary_similarity(const Matrix3& linear, const Vector3& translation, double scale = 1.0);

struct ScrewMotion {
    bool pure_translation = false;  // no canonical axis; trans and axis are zero
    double trans = 0.0;
    Vector3 axis = Vector3::Zero();
    double angle = 0.0;
};

// Requires an element fixing p0 that acts on the boundary chart by a Euclidean
// motion: a parabolic, or an elliptic rotating about a boundary line (trans 0).
ScrewMotion screw_translation_length(const Isometry& a, double tol = 1e-8);

}  // namespace rigidity
