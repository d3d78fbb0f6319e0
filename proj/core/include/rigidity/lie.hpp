#pragma once

#include "rigidity/isometry.hpp"
#include "rigidity/minkowski.hpp"

namespace rigidity {

// An element of so(n,1): a^t J = -J a.
class LieElement {
public:
    static LieElement from_matrix(const Matrix& m, double tol = 1e-12);
    static LieElement zero(int n);

    int n() const { return static_cast<int>(m_.rows()) - 1; }
    const Matrix& matrix() const { return m_; }

    LieElement operator+(const LieElement& o) const;
    LieElement operator*(double s) const;

private:
    explicit LieElement(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

LieElement bracket(const LieElement& a, const LieElement& b);

// so(4,1) = so(3,1) + R^{3,1}
struct SplitElement {
    LieElement rot_part = LieElement::zero(3);
    MinkVector vec_part = MinkVector::zero(3);
};

SplitElement split(const LieElement& a);
LieElement join(const SplitElement& s);
LieElement join(const LieElement& rot_part, const MinkVector& vec_part);

// g a g^{-1}
LieElement adjoint(const Isometry& g, const LieElement& a);

// Killing field of a at x on the hyperboloid.
MinkVector killing_eval(const LieElement& a, const MinkVector& x, double tol = kMembershipTol);

struct R31Coordinates {
    double lambda = 0.0;
    double z = 0.0;
    double beta = 0.0;
    double alpha = 0.0;

    MinkVector to_vector() const;
};

R31Coordinates r31_coords(const MinkVector& v);
Vector3 rot(const MinkVector& v);

// Coordinates on so(n,1): entries a(i,j) for i < j in lexicographic order.
int algebra_dim(int n);
Vector algebra_coords(const LieElement& a);
LieElement from_algebra_coords(int n, const Vector& c);

// Matrix exponential; nilpotent input uses the terminating series.
Matrix matrix_exp(const Matrix& a);

}  // namespace rigidity
