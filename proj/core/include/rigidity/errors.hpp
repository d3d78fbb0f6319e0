#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rigidity {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands of incompatible size.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Input outside the mathematical domain of an operation: not Lorentz,
// zero vector, bad determinant, degenerate lattice, invalid knot.
class DomainError : public Error {
public:
    using Error::Error;
};

// A singular value fell inside the ambiguous window around the rank
// threshold, so no dimension is reported.
class RankAmbiguityError : public Error {
public:
    RankAmbiguityError(std::string what, std::vector<double> relative_singular_values, double tol)
        : Error(std::move(what)),
          relative_singular_values_(std::move(relative_singular_values)),
          tol_(tol) {}

    const std::vector<double>& relative_singular_values() const { return relative_singular_values_; }
    double tolerance() const { return tol_; }

private:
    std::vector<double> relative_singular_values_;
    double tol_;
};

// The end-to-end computation reached a state its assumptions exclude
// (no usable root, unexpected cohomology dimension). Carries a free-form
// diagnostic dump.
class PipelineError : public Error {
public:
    PipelineError(std::string what, std::string report = {})
        : Error(std::move(what)), report_(std::move(report)) {}

    const std::string& report() const { return report_; }

private:
    std::string report_;
};

}  // namespace rigidity
