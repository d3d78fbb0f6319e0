#include "rigidity/linalg.hpp"

#include "rigidity/errors.hpp"

#include <Eigen/SVD>

#include <sstream>

namespace rigidity {

namespace {

RankInfo rank_from(const Eigen::VectorXd& sv, double tol, const std::string& what) {
    RankInfo info;
    info.sigma_max = sv.size() > 0 ? sv[0] : 0.0;
    if (info.sigma_max == 0.0) {
        info.singular_values.assign(sv.size(), 0.0);
        return info;
    }
    std::vector<double> rel;
    bool ambiguous = false;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        double r = sv[i] / info.sigma_max;
        rel.push_back(r);
        if (r > tol) ++info.rank;
        if (r > tol / 10.0 && r < tol * 10.0) ambiguous = true;
    }
    info.singular_values = rel;
    if (ambiguous) {
        std::ostringstream msg;
        msg << "rank of " << what << " is ambiguous at tolerance " << tol << ": relative singular values";
        for (double r : rel) msg << ' ' << r;
        throw RankAmbiguityError(msg.str(), rel, tol);
    }
    return info;
}

}  // namespace

RankInfo numerical_rank(const Matrix& m, double tol, const std::string& what) {
    if (m.size() == 0) return {};
    Eigen::JacobiSVD<Matrix> svd(m);
    return rank_from(svd.singularValues(), tol, what);
}

Subspaces subspaces(const Matrix& m, double tol, const std::string& what) {
    Subspaces out;
    if (m.cols() == 0) {
        out.kernel = Matrix(0, 0);
        out.image = Matrix(m.rows(), 0);
        return out;
    }
    if (m.rows() == 0) {
        out.kernel = Matrix::Identity(m.cols(), m.cols());
        out.image = Matrix(0, 0);
        return out;
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.info = rank_from(svd.singularValues(), tol, what);
    const int r = out.info.rank;
    out.image = svd.matrixU().leftCols(r);
    out.kernel = svd.matrixV().rightCols(m.cols() - r);
    return out;
}

Matrix orthonormal_columns(const Matrix& m, double tol, const std::string& what) {
    return subspaces(m, tol, what).image;
}

double distance_to_span(const Vector& v, const Matrix& q) {
    if (q.cols() == 0) return v.norm();
    return (v - q * (q.transpose() * v)).norm();
}

}  // namespace rigidity
