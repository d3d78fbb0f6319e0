#include "rigidity/isometry.hpp"

#include "rigidity/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace rigidity {

namespace {

constexpr Complex I1{0.0, 1.0};

// Hermitian basis; index j maps to the Minkowski basis vector e_j.
std::array<Matrix2c, 4> hermitian_basis() {
    std::array<Matrix2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 1, 0, 0, -1;
    s[2] << 0, 1, 1, 0;
    s[3] << 0, I1, -I1, 0;
    return s;
}

Eigen::Vector4d hermitian_coords(const Matrix2c& x) {
    return {0.5 * (x(0, 0).real() + x(1, 1).real()), 0.5 * (x(0, 0).real() - x(1, 1).real()), x(0, 1).real(),
            x(0, 1).imag()};
}

Matrix null_frame() {
    Matrix p = Matrix::Identity(5, 5);
    p.col(0) = boundary_p0().coords();
    p.col(1) = boundary_q0().coords();
    return p;
}

}  // namespace

Isometry Isometry::from_matrix(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || (m.rows() != 4 && m.rows() != 5))
        throw DimensionError("isometry matrix must be 4x4 or 5x5");
    if (!is_special_lorentz(m, tol)) throw DomainError("matrix is not in SO_0(n,1)");
    return Isometry(m);
}

Isometry Isometry::identity(int n) {
    if (n != 3 && n != 4) throw DimensionError("isometries are supported for n = 3, 4");
    return Isometry(Matrix::Identity(n + 1, n + 1));
}

Isometry Isometry::inverse() const {
    Matrix j = lorentz_matrix(static_cast<int>(m_.rows()));
    return Isometry(j * m_.transpose() * j);
}

Isometry Isometry::operator*(const Isometry& o) const {
    if (n() != o.n()) throw DimensionError("cannot multiply isometries of different dimension");
    return Isometry(m_ * o.m_);
}

MinkVector Isometry::operator*(const MinkVector& v) const {
    if (v.size() != m_.cols()) throw DimensionError("vector size does not match isometry");
    return MinkVector(Vector(m_ * v.coords()));
}

Mobius Mobius::from_matrix(const Matrix2c& m, double tol) {
    if (std::abs(m.determinant() - 1.0) > tol) throw DomainError("Mobius matrix must have determinant 1");
    return Mobius(m);
}

Mobius Mobius::identity() { return Mobius(Matrix2c::Identity()); }

Mobius Mobius::inverse() const {
    Matrix2c inv;
    inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
    return Mobius(inv);
}

Mobius Mobius::operator*(const Mobius& o) const { return Mobius(m_ * o.m_); }

Isometry parabolic_translation(double x, double y) {
    const double h = 0.5 * (x * x + y * y);
    Matrix m(4, 4);
    m << 1 + h, -h, x, y,
         h, 1 - h, x, y,
         x, -x, 1, 0,
         y, -y, 0, 1;
    return Isometry::from_matrix(m);
}

Matrix parabolic_generator(double x, double y) {
    Matrix n(4, 4);
    n << 0, 0, x, y,
         0, 0, x, y,
         x, -x, 0, 0,
         y, -y, 0, 0;
    return n;
}

Isometry embed(const Isometry& a) {
    if (a.n() != 3) throw DimensionError("embed expects an element of SO_0(3,1)");
    Matrix m = Matrix::Identity(5, 5);
    m.topLeftCorner(4, 4) = a.matrix();
    return Isometry::from_matrix(m);
}

Isometry from_sl2c(const Mobius& mob) {
    const Matrix2c& m = mob.matrix();
    if (std::abs(m.determinant() - 1.0) > 1e-9) throw DomainError("from_sl2c needs determinant 1");
    auto s = hermitian_basis();
    Matrix a(4, 4);
    for (int j = 0; j < 4; ++j) a.col(j) = hermitian_coords(m * s[j] * m.adjoint());
    return Isometry::from_matrix(a);
}

Matrix from_sl2c_algebra(const Matrix2c& x) {
    auto s = hermitian_basis();
    Matrix a(4, 4);
    for (int j = 0; j < 4; ++j) a.col(j) = hermitian_coords(x * s[j] + s[j] * x.adjoint());
    return a;
}

const char* to_string(IsometryKind k) {
    switch (k) {
        case IsometryKind::identity: return "identity";
        case IsometryKind::parabolic_translation: return "parabolic_translation";
        case IsometryKind::parabolic_screw: return "parabolic_screw";
        case IsometryKind::elliptic: return "elliptic";
        case IsometryKind::loxodromic: return "loxodromic";
    }
    return "?";
}

double expected_trace(const IsometryClass& c) {
    switch (c.kind) {
        case IsometryKind::identity: return 5.0;
        case IsometryKind::parabolic_translation: return 5.0;
        case IsometryKind::parabolic_screw: return 3.0 + 2.0 * std::cos(c.alpha);
        case IsometryKind::elliptic: return 1.0 + 2.0 * std::cos(c.alpha) + 2.0 * std::cos(c.beta);
        case IsometryKind::loxodromic:
            return 1.0 + 2.0 * std::cosh(c.translation_length) + 2.0 * std::cos(c.alpha);
    }
    return 0.0;
}

IsometryClass classify(const Isometry& a, double tol) { return classify(a.matrix(), tol); }

IsometryClass classify(const Matrix& a, double tol) {
    if (a.rows() != 5 || a.cols() != 5) throw DimensionError("classify expects a 5x5 matrix");
    if (!is_special_lorentz(a, tol)) throw DomainError("matrix is not in SO_0(4,1)");

    IsometryClass out;
    out.trace = a.trace();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const Matrix d = a - Matrix::Identity(5, 5);

    if (d.cwiseAbs().maxCoeff() <= tol * scale) {
        out.kind = IsometryKind::identity;
        out.trace_residual = std::abs(out.trace - expected_trace(out));
        return out;
    }

    Eigen::JacobiSVD<Matrix> svd(d, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = 1e-8 * std::max(1.0, sv[0]);
    int rank = 0;
    while (rank < 5 && sv[rank] > cut) ++rank;

    double gram_min = 1.0;
    if (rank < 5) {
        Matrix k = svd.matrixV().rightCols(5 - rank);
        Matrix g = k.transpose() * lorentz_matrix(5) * k;
        gram_min = Eigen::SelfAdjointEigenSolver<Matrix>(g).eigenvalues().minCoeff();
    }

    Eigen::EigenSolver<Matrix> es(a, false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + 5);
    std::vector<double> args;
    for (auto z : ev) args.push_back(std::abs(std::arg(z)));

    const double gram_tol = 1e-7;
    if (gram_min < -gram_tol) {
        out.kind = IsometryKind::elliptic;
        std::sort(args.begin(), args.end(), std::greater<>());
        out.alpha = args[0];
        out.beta = args[2];
    } else if (gram_min > gram_tol) {
        out.kind = IsometryKind::loxodromic;
        int imax = 0, imin = 0;
        for (int i = 1; i < 5; ++i) {
            if (std::abs(ev[i]) > std::abs(ev[imax])) imax = i;
            if (std::abs(ev[i]) < std::abs(ev[imin])) imin = i;
        }
        out.translation_length = std::log(std::abs(ev[imax]));
        for (int i = 0; i < 5; ++i)
            if (i != imax && i != imin) out.alpha = std::max(out.alpha, args[i]);
    } else if (rank <= 2) {
        out.kind = IsometryKind::parabolic_translation;
    } else {
        out.kind = IsometryKind::parabolic_screw;
        out.alpha = *std::max_element(args.begin(), args.end());
    }
    out.trace_residual = std::abs(out.trace - expected_trace(out));
    return out;
}

MinkVector boundary_p0() { return MinkVector{1.0, 1.0, 0.0, 0.0, 0.0}; }
MinkVector boundary_q0() { return MinkVector{0.5, -0.5, 0.0, 0.0, 0.0}; }

MinkVector boundary_chart(const Vector3& u) {
    Vector v = 0.5 * u.squaredNorm() * boundary_p0().coords() + boundary_q0().coords();
    v.tail(3) += u;
    return MinkVector(std::move(v));
}

BoundaryAction boundary_affine_action(const Isometry& a, double tol) {
    if (a.n() != 4) throw DimensionError("boundary_affine_action expects an element of SO_0(4,1)");
    const Matrix p = null_frame();
    const Matrix b = p.inverse() * a.matrix() * p;
    const double mu = b(0, 0);
    const double scale = std::max(1.0, b.col(0).cwiseAbs().maxCoeff());
    if (mu <= 0.0 || b.col(0).tail(4).cwiseAbs().maxCoeff() > tol * scale)
        throw DomainError("isometry does not fix the boundary point p0");
    BoundaryAction out;
    out.scale = mu;
    out.linear_part = b.bottomRightCorner(3, 3);
    out.translation = mu * b.col(1).tail(3);
    return out;
}

Isometry from_boundary_similarity(const Matrix3& linear, const Vector3& translation, double scale) {
    if (scale <= 0.0) throw DomainError("similarity scale must be positive");
    if ((linear.transpose() * linear - Matrix3::Identity()).cwiseAbs().maxCoeff() > 1e-9 ||
        linear.determinant() < 0.0)
        throw DomainError("linear part must be a rotation");
    Matrix b = Matrix::Zero(5, 5);
    b(0, 0) = scale;
    b(0, 1) = translation.squaredNorm() / (2.0 * scale);
    b(1, 1) = 1.0 / scale;
    b.col(1).tail(3) = translation / scale;
    for (int i = 0; i < 3; ++i) {
        b(0, 2 + i) = linear.col(i).dot(translation);
        b.col(2 + i).tail(3) = linear.col(i);
    }
    const Matrix p = null_frame();
    return Isometry::from_matrix(p * b * p.inverse());
}

ScrewMotion screw_translation_length(const Isometry& a, double tol) {
    BoundaryAction act = boundary_affine_action(a, tol);
    if (std::abs(act.scale - 1.0) > tol) throw DomainError("element does not act on the boundary by a Euclidean motion");

    ScrewMotion out;
    const Matrix3& r = act.linear_part;
    if ((r - Matrix3::Identity()).cwiseAbs().maxCoeff() <= tol) {
        out.pure_translation = true;
        return out;
    }
    Vector3 w(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
    w *= 0.5;
    const double cosine = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
    if (w.norm() > 1e-6) {
        out.axis = w.normalized();
    } else {
        Eigen::JacobiSVD<Matrix3> svd(r - Matrix3::Identity(), Eigen::ComputeFullV);
        out.axis = svd.matrixV().col(2);
        for (int i = 0; i < 3; ++i) {
            if (std::abs(out.axis[i]) > 1e-12) {
                if (out.axis[i] < 0) out.axis = -out.axis;
                break;
            }
        }
    }
    out.angle = std::atan2(w.norm(), cosine);
    out.trans = act.translation.dot(out.axis);
    return out;
}

}  // namespace rigidity
