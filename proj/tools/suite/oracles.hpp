#pragma once

// Independent reference computations: closed forms and brute-force series,
// written without calling the library routines they are used to check.

#include "rigidity/isometry.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>

#include <cmath>
#include <cstdint>
#include <complex>
#include <random>
#include <utility>

namespace rigidity::oracle {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

private:
    std::mt19937_64 gen_;
};

inline Eigen::Matrix2cd random_sl2c(Rng& rng) {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = {rng.normal(), rng.normal()};
    std::complex<double> det = m.determinant();
    if (std::abs(det) < 0.05) m(0, 0) += 1.0, det = m.determinant();
    return m / std::sqrt(det);
}

// Taylor series summed until the terms vanish, after halving the argument
// until it is small and squaring back.
inline Eigen::MatrixXd series_exp(const Eigen::MatrixXd& a) {
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.25) {
        norm *= 0.5;
        ++squarings;
    }
    const Eigen::MatrixXd x = a / std::ldexp(1.0, squarings);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd term = sum;
    for (int k = 1; k < 40; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// Generator of so(4,1) in the (i, j) coordinate plane; boosts when i = 0.
inline Eigen::MatrixXd plane_generator(int size, int i, int j) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(size, size);
    g(i, j) = 1.0;
    g(j, i) = (i == 0) ? 1.0 : -1.0;
    return g;
}

inline Eigen::MatrixXd plane_rotation(int size, int i, int j, double angle) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(size, size);
    r(i, i) = r(j, j) = std::cos(angle);
    r(i, j) = -std::sin(angle);
    r(j, i) = std::sin(angle);
    return r;
}

inline Eigen::MatrixXd boost(int size, int j, double t) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(size, size);
    r(0, 0) = r(j, j) = std::cosh(t);
    r(0, j) = r(j, 0) = std::sinh(t);
    return r;
}

// exp of a random element of so(4,1) with coordinates of size ~ scale.
inline Eigen::MatrixXd random_so41(Rng& rng, double scale = 0.6) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) a += scale * rng.normal() * plane_generator(5, i, j);
    return series_exp(a);
}

// The displayed nilpotent generator of the boundary translation (x, y).
inline Eigen::MatrixXd nilpotent_generator(double x, double y) {
    Eigen::MatrixXd n = Eigen::MatrixXd::Zero(4, 4);
    n(0, 2) = x, n(0, 3) = y;
    n(1, 2) = x, n(1, 3) = y;
    n(2, 0) = x, n(2, 1) = -x;
    n(3, 0) = y, n(3, 1) = -y;
    return n;
}

inline Eigen::MatrixXd terminating_series(const Eigen::MatrixXd& n) {
    const Eigen::MatrixXd n2 = n * n;
    return Eigen::MatrixXd::Identity(n.rows(), n.cols()) + n + n2 / 2.0 + n2 * n / 6.0;
}

// Linear constraints cutting out Z1 of the torus group acting on R^{3,1}
// by translations t1, t2, on the flat vector (v(g1), v(g2)):
// lambda_1 = lambda_2 = 0 and (g1 - 1) v(g2) = (g2 - 1) v(g1), which for
// lambda = 0 reads x1 v2(g2) + y1 v3(g2) = x2 v2(g1) + y2 v3(g1).
inline Eigen::MatrixXd torus_r31_constraints(const Eigen::Vector2d& t1, const Eigen::Vector2d& t2) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 8);
    c(0, 0) = 0.5, c(0, 1) = -0.5;
    c(1, 4) = 0.5, c(1, 5) = -0.5;
    c(2, 6) = t1.x(), c(2, 7) = t1.y();
    c(2, 2) = -t2.x(), c(2, 3) = -t2.y();
    return c;
}

inline Eigen::MatrixXd torus_r31_z1_basis(const Eigen::Vector2d& t1, const Eigen::Vector2d& t2) {
    return Eigen::FullPivLU<Eigen::MatrixXd>(torus_r31_constraints(t1, t2)).kernel();
}

// Coboundaries of a = (-L, L, B, -A): (L r - B x + A y) p0 + 2L (0, 0, x, y).
inline Eigen::MatrixXd torus_r31_b1_basis(const Eigen::Vector2d& t1, const Eigen::Vector2d& t2) {
    Eigen::MatrixXd b(8, 3);
    const Eigen::Vector2d t[2] = {t1, t2};
    for (int j = 0; j < 2; ++j) {
        const double x = t[j].x(), y = t[j].y(), r = x * x + y * y;
        b.block(4 * j, 0, 4, 1) << r, r, 2 * x, 2 * y;  // L
        b.block(4 * j, 1, 4, 1) << y, y, 0, 0;          // A
        b.block(4 * j, 2, 4, 1) << -x, -x, 0, 0;        // B
    }
    return b;
}

inline Eigen::Vector2d random_lattice_vector(Rng& rng) {
    for (;;) {
        Eigen::Vector2d v(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        if (v.norm() > 0.3) return v;
    }
}

// Nondegenerate pair with |det| >= 0.2.
inline std::pair<Eigen::Vector2d, Eigen::Vector2d> random_lattice(Rng& rng) {
    for (;;) {
        Eigen::Vector2d a = random_lattice_vector(rng), b = random_lattice_vector(rng);
        if (std::abs(a.x() * b.y() - a.y() * b.x()) >= 0.2) return {a, b};
    }
}

}  // namespace rigidity::oracle
