#include "rigidity/lie.hpp"

#include "rigidity/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

namespace rigidity {

LieElement LieElement::from_matrix(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 2) throw DimensionError("Lie algebra element must be square");
    Matrix j = lorentz_matrix(static_cast<int>(m.rows()));
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m.transpose() * j + j * m).cwiseAbs().maxCoeff() > tol * scale)
        throw DomainError("matrix is not in so(n,1)");
    return LieElement(m);
}

LieElement LieElement::zero(int n) { return LieElement(Matrix::Zero(n + 1, n + 1)); }

LieElement LieElement::operator+(const LieElement& o) const {
    if (n() != o.n()) throw DimensionError("Lie elements of different dimension");
    return LieElement(m_ + o.m_);
}

LieElement LieElement::operator*(double s) const { return LieElement(m_ * s); }

LieElement bracket(const LieElement& a, const LieElement& b) {
    if (a.n() != b.n()) throw DimensionError("Lie elements of different dimension");
    return LieElement::from_matrix(a.matrix() * b.matrix() - b.matrix() * a.matrix(), 1e-9);
}

SplitElement split(const LieElement& a) {
    if (a.n() != 4) throw DimensionError("split expects an element of so(4,1)");
    SplitElement s;
    s.rot_part = LieElement::from_matrix(a.matrix().topLeftCorner(4, 4), 1e-9);
    s.vec_part = MinkVector(Vector(a.matrix().col(4).head(4)));
    return s;
}

LieElement join(const LieElement& rot_part, const MinkVector& vec_part) {
    if (rot_part.n() != 3 || vec_part.size() != 4)
        throw DimensionError("join expects so(3,1) and R^{3,1} parts");
    Matrix m = Matrix::Zero(5, 5);
    m.topLeftCorner(4, 4) = rot_part.matrix();
    m.col(4).head(4) = vec_part.coords();
    m.row(4).head(4) = -(lorentz_matrix(4) * vec_part.coords()).transpose();
    return LieElement::from_matrix(m, 1e-9);
}

LieElement join(const SplitElement& s) { return join(s.rot_part, s.vec_part); }

LieElement adjoint(const Isometry& g, const LieElement& a) {
    if (g.n() != a.n()) throw DimensionError("adjoint: dimensions differ");
    return LieElement::from_matrix(g.matrix() * a.matrix() * g.inverse().matrix(), 1e-9);
}

MinkVector killing_eval(const LieElement& a, const MinkVector& x, double tol) {
    if (x.size() != a.matrix().rows()) throw DimensionError("killing_eval: dimensions differ");
    if (classify_vector(x, tol).locus != Locus::on_hyperboloid)
        throw DomainError("killing_eval: point is not on the hyperboloid");
    return MinkVector(Vector(a.matrix() * x.coords()));
}

MinkVector R31Coordinates::to_vector() const { return MinkVector{z + lambda, z - lambda, -beta, alpha}; }

R31Coordinates r31_coords(const MinkVector& v) {
    if (v.size() != 4) throw DimensionError("r31_coords expects a vector of R^{3,1}");
    return {0.5 * (v[0] - v[1]), 0.5 * (v[0] + v[1]), -v[2], v[3]};
}

Vector3 rot(const MinkVector& v) {
    auto c = r31_coords(v);
    return {c.alpha, c.beta, 0.0};
}

int algebra_dim(int n) { return n * (n + 1) / 2; }

Vector algebra_coords(const LieElement& a) {
    const int size = a.n() + 1;
    Vector c(algebra_dim(a.n()));
    int k = 0;
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) c[k++] = a.matrix()(i, j);
    return c;
}

LieElement from_algebra_coords(int n, const Vector& c) {
    if (c.size() != algebra_dim(n)) throw DimensionError("wrong number of so(n,1) coordinates");
    Matrix m = Matrix::Zero(n + 1, n + 1);
    int k = 0;
    for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            m(i, j) = c[k];
            m(j, i) = (i == 0) ? c[k] : -c[k];
            ++k;
        }
    }
    return LieElement::from_matrix(m);
}

Matrix matrix_exp(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("matrix_exp needs a square matrix");
    const Eigen::Index size = a.rows();
    const double norm = a.cwiseAbs().maxCoeff();
    if (norm == 0.0) return Matrix::Identity(size, size);

    Matrix power = a;
    double bound = norm;
    for (Eigen::Index k = 2; k <= size + 1; ++k) {
        power = power * a;
        bound *= norm * static_cast<double>(size);
        if (power.cwiseAbs().maxCoeff() <= 1e-15 * bound) {
            Matrix sum = Matrix::Identity(size, size);
            Matrix term = Matrix::Identity(size, size);
            for (Eigen::Index j = 1; j < k; ++j) {
                term = term * a / static_cast<double>(j);
                sum += term;
            }
            return sum;
        }
    }
    return a.exp();
}

}  // namespace rigidity
