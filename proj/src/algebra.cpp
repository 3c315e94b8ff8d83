#include "zakspace/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zakspace {

namespace {

constexpr double kNonzero = 1e-12;

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
    }
}

void require_same_tag(const std::string& a, const std::string& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": basis mismatch ('" + a + "' vs '" + b + "')");
}

Complex phase_of(Complex z) { return z / std::abs(z); }

}  // namespace

Complex unit_phase(std::int64_t numerator, std::int64_t modulus) {
    if (modulus <= 0) throw std::invalid_argument("unit_phase: modulus must be positive");
    std::int64_t k = numerator % modulus;
    if (k < 0) k += modulus;
    if (k == 0) return {1.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(modulus);
    return std::polar(1.0, angle);
}

StateVector::StateVector(std::vector<Complex> amplitudes, std::string basis_tag)
    : amps_(std::move(amplitudes)), tag_(std::move(basis_tag)) {
    if (amps_.empty()) throw std::invalid_argument("StateVector: dimension must be positive");
}

StateVector StateVector::basis_vector(std::size_t dim, std::size_t index, std::string basis_tag) {
    if (index >= dim) throw std::out_of_range("basis_vector: index out of range");
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return {std::move(amps), std::move(basis_tag)};
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

StateVector StateVector::scaled(Complex factor) const {
    std::vector<Complex> amps(amps_);
    for (auto& a : amps) a *= factor;
    return {std::move(amps), tag_};
}

StateVector StateVector::retagged(std::string basis_tag) const { return {amps_, std::move(basis_tag)}; }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::string row_basis_tag, std::string col_basis_tag)
    : dim_(dim), entries_(dim * dim), row_tag_(std::move(row_basis_tag)), col_tag_(std::move(col_basis_tag)) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim, const std::string& basis_tag) {
    ComplexMatrix out(dim, basis_tag, basis_tag);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_, col_tag_, row_tag_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
    ComplexMatrix out(*this);
    for (auto& e : out.entries_) e *= factor;
    return out;
}

Complex inner_product(const StateVector& u, const StateVector& v) {
    require_same_dim(u.dim(), v.dim(), "inner_product");
    require_same_tag(u.basis_tag(), v.basis_tag(), "inner_product");
    Complex sum = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) sum += std::conj(u[i]) * v[i];
    return sum;
}

StateVector apply(const ComplexMatrix& op, const StateVector& v) {
    require_same_dim(op.dim(), v.dim(), "apply");
    require_same_tag(op.col_basis_tag(), v.basis_tag(), "apply");
    const std::size_t n = op.dim();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += op(i, j) * v[j];
        out[i] = acc;
    }
    return {std::move(out), op.row_basis_tag()};
}

ComplexMatrix multiply(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs.dim(), rhs.dim(), "multiply");
    require_same_tag(lhs.col_basis_tag(), rhs.row_basis_tag(), "multiply");
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n, lhs.row_basis_tag(), rhs.col_basis_tag());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex l = lhs(i, k);
            if (l == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += l * rhs(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs.dim(), rhs.dim(), "max_abs_diff");
    double worst = 0.0;
    const auto a = lhs.entries();
    const auto b = rhs.entries();
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double max_abs_diff(const StateVector& lhs, const StateVector& rhs) {
    require_same_dim(lhs.dim(), rhs.dim(), "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.dim(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    return worst;
}

UnitarityCheck is_unitary(const ComplexMatrix& u, double tol) {
    const std::size_t n = u.dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * std::conj(u(j, k));
            if (i == j) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return {worst <= tol, worst};
}

StateVector canonical_phase(const StateVector& v) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) > kNonzero) return v.scaled(std::conj(phase_of(v[i])));
    }
    throw std::invalid_argument("canonical_phase: zero vector has no phase");
}

bool equal_up_to_global_phase(const StateVector& u, const StateVector& v, double tol) {
    if (u.dim() != v.dim()) return false;
    return max_abs_diff(canonical_phase(u), canonical_phase(v)) <= tol;
}

ComplexMatrix canonical_row_column_phases(const ComplexMatrix& m) {
    ComplexMatrix out(m);
    const std::size_t n = m.dim();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(out(i, j)) <= kNonzero) continue;
            const Complex rot = std::conj(phase_of(out(i, j)));
            for (std::size_t k = 0; k < n; ++k) out(k, j) *= rot;
            break;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(out(i, j)) <= kNonzero) continue;
            const Complex rot = std::conj(phase_of(out(i, j)));
            for (std::size_t k = 0; k < n; ++k) out(i, k) *= rot;
            break;
        }
    }
    return out;
}

bool equal_up_to_row_column_phases(const ComplexMatrix& lhs, const ComplexMatrix& rhs, double tol) {
    if (lhs.dim() != rhs.dim()) return false;
    return max_abs_diff(canonical_row_column_phases(lhs), canonical_row_column_phases(rhs)) <= tol;
}

}  // namespace zakspace
