#include "rigidity/minkowski.hpp"

#include "rigidity/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rigidity {

LorentzForm::LorentzForm(int n) : n_(n) {
    if (n < 1) throw DimensionError("Lorentz form needs n >= 1, got " + std::to_string(n));
    j_ = lorentz_matrix(n + 1);
}

Matrix lorentz_matrix(int size) {
    Matrix j = Matrix::Identity(size, size);
    j(0, 0) = -1.0;
    return j;
}

MinkVector::MinkVector(Vector coords) : coords_(std::move(coords)) {}

MinkVector::MinkVector(std::initializer_list<double> coords) : coords_(static_cast<Eigen::Index>(coords.size())) {
    Eigen::Index i = 0;
    for (double c : coords) coords_[i++] = c;
}

MinkVector MinkVector::zero(int n) { return MinkVector(Vector::Zero(n + 1)); }

MinkVector MinkVector::basis(int n, int i) {
    if (i < 0 || i > n) throw DimensionError("basis index out of range");
    Vector v = Vector::Zero(n + 1);
    v[i] = 1.0;
    return MinkVector(std::move(v));
}

static void same_size(const MinkVector& u, const MinkVector& v) {
    if (u.size() != v.size())
        throw DimensionError("Minkowski vectors of sizes " + std::to_string(u.size()) + " and " +
                             std::to_string(v.size()));
}

MinkVector MinkVector::operator+(const MinkVector& o) const {
    same_size(*this, o);
    return MinkVector(Vector(coords_ + o.coords_));
}

MinkVector MinkVector::operator-(const MinkVector& o) const {
    same_size(*this, o);
    return MinkVector(Vector(coords_ - o.coords_));
}

MinkVector MinkVector::operator*(double s) const { return MinkVector(Vector(coords_ * s)); }

double lorentz_product(const MinkVector& u, const MinkVector& v) {
    same_size(u, v);
    if (u.size() == 0) return 0.0;
    return u.coords().tail(u.size() - 1).dot(v.coords().tail(v.size() - 1)) - u[0] * v[0];
}

VectorClass classify_vector(const MinkVector& v, double tol) {
    double norm2 = v.coords().squaredNorm();
    if (norm2 == 0.0) throw DomainError("cannot classify the zero vector");
    double q = lorentz_product(v, v);
    double scaled = tol * std::max(1.0, norm2);

    VectorClass c{Causal::lightlike, Locus::neither};
    if (q < -scaled)
        c.causal = Causal::timelike;
    else if (q > scaled)
        c.causal = Causal::spacelike;

    if (std::abs(q + 1.0) <= scaled && v[0] > 0.0)
        c.locus = Locus::on_hyperboloid;
    else if (std::abs(q - 1.0) <= scaled)
        c.locus = Locus::on_de_sitter;
    return c;
}

bool is_special_lorentz(const Matrix& a, double tol) {
    if (a.rows() != a.cols() || a.rows() < 2) return false;
    if (!a.allFinite()) return false;
    const int size = static_cast<int>(a.rows());
    Matrix j = lorentz_matrix(size);
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    double scaled = tol * scale * scale;
    if ((a.transpose() * j * a - j).cwiseAbs().maxCoeff() > scaled) return false;
    if (std::abs(a.determinant() - 1.0) > scaled) return false;
    return a(0, 0) > 0.0;
}

const char* to_string(Causal c) {
    switch (c) {
        case Causal::timelike: return "timelike";
        case Causal::spacelike: return "spacelike";
        case Causal::lightlike: return "lightlike";
    }
    return "?";
}

const char* to_string(Locus l) {
    switch (l) {
        case Locus::on_hyperboloid: return "on_hyperboloid";
        case Locus::on_de_sitter: return "on_de_sitter";
        case Locus::neither: return "neither";
    }
    return "?";
}

}  // namespace rigidity
