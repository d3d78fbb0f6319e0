#pragma once

#include "rigidity/minkowski.hpp"

#include <string>
#include <vector>

namespace rigidity {

// Relative rank threshold used for every dimension count.
inline constexpr double kRankTol = 1e-8;

struct RankInfo {
    int rank = 0;
    double sigma_max = 0.0;
    std::vector<double> singular_values;
};

struct Subspaces {
    Matrix kernel;  // orthonormal columns
    Matrix image;   // orthonormal columns
    RankInfo info;
};

// Singular values below tol * sigma_max count as zero. Throws
// RankAmbiguityError when some sigma / sigma_max lies in (tol/10, 10 tol);
// `what` names the matrix in the message.
RankInfo numerical_rank(const Matrix& m, double tol, const std::string& what);
Subspaces subspaces(const Matrix& m, double tol, const std::string& what);

// Orthonormalize the columns of m, dropping dependent ones.
Matrix orthonormal_columns(const Matrix& m, double tol, const std::string& what);

// Euclidean distance from v to the column span of the orthonormal q.
double distance_to_span(const Vector& v, const Matrix& q);

}  // namespace rigidity
