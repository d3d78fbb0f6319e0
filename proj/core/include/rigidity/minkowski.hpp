#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>

namespace rigidity {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Membership predicates compare against this unless told otherwise.
inline constexpr double kMembershipTol = 1e-9;

// The form diag(-1, 1, ..., 1) on R^{n+1}. Index 0 is timelike.
class LorentzForm {
public:
    explicit LorentzForm(int n);

    int n() const { return n_; }
    int size() const { return n_ + 1; }
    const Matrix& matrix() const { return j_; }

private:
    int n_;
    Matrix j_;
};

// J as a plain matrix of the given size.
Matrix lorentz_matrix(int size);

class MinkVector {
public:
    MinkVector() = default;
    explicit MinkVector(Vector coords);
    MinkVector(std::initializer_list<double> coords);

    static MinkVector zero(int n);
    static MinkVector basis(int n, int i);

    int n() const { return static_cast<int>(coords_.size()) - 1; }
    int size() const { return static_cast<int>(coords_.size()); }
    const Vector& coords() const { return coords_; }
    double operator[](int i) const { return coords_[i]; }
    double& operator[](int i) { return coords_[i]; }

    MinkVector operator+(const MinkVector& o) const;
    MinkVector operator-(const MinkVector& o) const;
    MinkVector operator*(double s) const;

private:
    Vector coords_;
};

// u^t J v
double lorentz_product(const MinkVector& u, const MinkVector& v);

enum class Causal { timelike, spacelike, lightlike };
enum class Locus { on_hyperboloid, on_de_sitter, neither };

struct VectorClass {
    Causal causal;
    Locus locus;
    bool operator==(const VectorClass&) const = default;
};

// tol is scaled by max(1, |v|^2) so the answer is stable under boosts.
VectorClass classify_vector(const MinkVector& v, double tol = kMembershipTol);

// A^t J A = J, det A = 1, and A preserves the future cone.
bool is_special_lorentz(const Matrix& a, double tol = kMembershipTol);

const char* to_string(Causal c);
const char* to_string(Locus l);

}  // namespace rigidity
