#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Minimal dense complex linear algebra for M-dimensional state spaces.

namespace zakspace {

using Complex = std::complex<double>;

inline constexpr double kMatrixTol = 1e-10;
inline constexpr double kScalarTol = 1e-12;

/// exp(2*pi*i * numerator / modulus), with the numerator reduced exactly
/// modulo `modulus` before conversion to floating point.
Complex unit_phase(std::int64_t numerator, std::int64_t modulus);

/// Amplitudes of a state together with the name of the basis they refer to.
class StateVector {
public:
    StateVector() = default;
    StateVector(std::vector<Complex> amplitudes, std::string basis_tag);

    static StateVector basis_vector(std::size_t dim, std::size_t index, std::string basis_tag);

    std::size_t dim() const { return amps_.size(); }
    const std::string& basis_tag() const { return tag_; }
    std::span<const Complex> amplitudes() const { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    StateVector scaled(Complex factor) const;
    StateVector retagged(std::string basis_tag) const;

private:
    std::vector<Complex> amps_;
    std::string tag_;
};

/// Square complex matrix, row-major. Rows are expressed in row_basis_tag and
/// columns in col_basis_tag, so apply() maps a col-tagged state to a
/// row-tagged one.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t dim, std::string row_basis_tag, std::string col_basis_tag);

    static ComplexMatrix identity(std::size_t dim, const std::string& basis_tag);

    std::size_t dim() const { return dim_; }
    const std::string& row_basis_tag() const { return row_tag_; }
    const std::string& col_basis_tag() const { return col_tag_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    std::span<const Complex> entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix scaled(Complex factor) const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
    std::string row_tag_;
    std::string col_tag_;
};

struct UnitarityCheck {
    bool unitary;
    double max_deviation;
};

/// sum_i conj(u_i) v_i. Throws std::invalid_argument on a dimension or basis
/// mismatch.
Complex inner_product(const StateVector& u, const StateVector& v);

/// Matrix action. The result carries the matrix row tag.
StateVector apply(const ComplexMatrix& op, const StateVector& v);

/// Product lhs * rhs; requires lhs columns and rhs rows to share a basis.
ComplexMatrix multiply(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// Largest entrywise modulus of lhs - rhs. Tags are not compared.
double max_abs_diff(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
double max_abs_diff(const StateVector& lhs, const StateVector& rhs);

/// max |U U^dagger - I| <= tol.
UnitarityCheck is_unitary(const ComplexMatrix& u, double tol = kMatrixTol);

/// Rotates v so that its first amplitude with modulus > 1e-12 is real and
/// positive. Throws std::invalid_argument for the zero vector.
StateVector canonical_phase(const StateVector& v);

bool equal_up_to_global_phase(const StateVector& u, const StateVector& v, double tol = kScalarTol);

/// Fixes the phase freedom M -> D1 M D2 (D1, D2 diagonal unitaries): every
/// column is rotated so its first nonzero entry is real positive, then every
/// row likewise. Two matrices agree up to row and column phases iff their
/// canonical forms agree.
ComplexMatrix canonical_row_column_phases(const ComplexMatrix& m);

bool equal_up_to_row_column_phases(const ComplexMatrix& lhs, const ComplexMatrix& rhs, double tol = kMatrixTol);

}  // namespace zakspace
