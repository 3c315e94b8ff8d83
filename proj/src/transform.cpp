#include "zakspace/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zakspace {

namespace {

void require_sides(const KQIndex& idx_a, const KQIndex& idx_atilde) {
    if (idx_a.side != Side::A || idx_atilde.side != Side::ATilde) {
        throw std::invalid_argument("overlap expects an A-side bra and an ATilde-side ket");
    }
}

}  // namespace

bool OverlapReport::passes() const {
    return mub_flat && unitarity_deviation <= tolerance && oracle_max_abs_diff <= tolerance;
}

bool LocalizationReport::conforms() const {
    return support_size == expected_support && std::abs(support_amplitude - expected_amplitude) <= tolerance &&
           std::abs(support_amplitude_min - expected_amplitude) <= tolerance &&
           std::abs(support_probability - 1.0) <= tolerance;
}

Complex overlap_closed_form(const PhaseSpaceConfig& cfg, const Bipartition& b, const KQIndex& idx_a,
                            const KQIndex& idx_atilde) {
    require_sides(idx_a, idx_atilde);
    if (!b.coprime()) throw std::domain_error("bipartition " + b.label() + " is not coprime");
    if (b.m() != cfg.m) throw std::invalid_argument("bipartition does not factor M");
    index_position(b, idx_a);
    index_position(b, idx_atilde);

    const Int m = cfg.m;
    const CrtSolution st = solve_st(b, idx_a.g - idx_atilde.g);
    // Delta(Q + t*atilde - q - s*a) must be nonzero for the selected (s, t).
    if (floor_mod(idx_atilde.g + st.t * b.m_atilde - idx_a.g - st.s * b.m_a, m) != 0) {
        throw std::logic_error("congruence solution misses the Delta support");
    }
    const Int phase = floor_mod(-mul_mod(mul_mod(idx_a.f, st.s, m), b.m_a, m) +
                                    mul_mod(mul_mod(idx_atilde.f, st.t, m), b.m_atilde, m),
                                m);
    return unit_phase(phase, m) / std::sqrt(static_cast<double>(m));
}

Complex overlap_bruteforce(const PhaseSpaceConfig& cfg, const Bipartition& b, const KQIndex& idx_a,
                           const KQIndex& idx_atilde) {
    require_sides(idx_a, idx_atilde);
    const StateVector bra = build_kq_state(cfg, b, idx_a);
    const StateVector ket = build_kq_state(cfg, b, idx_atilde);
    Complex sum = 0.0;
    for (std::size_t x = 0; x < bra.dim(); ++x) sum += std::conj(bra[x]) * ket[x];
    return sum;
}

ComplexMatrix build_overlap_matrix(const PhaseSpaceConfig& cfg, const Bipartition& b, OverlapMethod method) {
    const auto n = static_cast<std::size_t>(cfg.m);
    ComplexMatrix out(n, basis_tag(b, Side::ATilde), basis_tag(b, Side::A));
    if (method == OverlapMethod::ClosedForm) {
        const auto rows = side_indices(b, Side::ATilde);
        const auto cols = side_indices(b, Side::A);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(overlap_closed_form(cfg, b, cols[j], rows[i]));
        }
        return out;
    }
    const KQBasis a_side = build_basis(cfg, b, Side::A);
    const KQBasis atilde_side = build_basis(cfg, b, Side::ATilde);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out(i, j) = inner_product(atilde_side.vectors[i], a_side.vectors[j]);
    }
    return out;
}

ModulusRange modulus_range(const ComplexMatrix& m) {
    ModulusRange out{INFINITY, 0.0};
    for (const auto& e : m.entries()) {
        const double mod = std::abs(e);
        out.min = std::min(out.min, mod);
        out.max = std::max(out.max, mod);
    }
    return out;
}

OverlapReport analyze_overlap(const Bipartition& b, const ComplexMatrix& closed_form, const ComplexMatrix& oracle,
                              double tol) {
    OverlapReport report;
    report.bipartition = b;
    report.tolerance = tol;
    const ModulusRange range = modulus_range(closed_form);
    report.modulus_min = range.min;
    report.modulus_max = range.max;
    const double target = 1.0 / std::sqrt(static_cast<double>(closed_form.dim()));
    report.mub_flat = std::abs(range.min - target) <= tol && std::abs(range.max - target) <= tol;
    report.unitarity_deviation = is_unitary(closed_form, tol).max_deviation;
    report.oracle_max_abs_diff = max_abs_diff(closed_form, oracle);
    return report;
}

OverlapReport mub_check(const PhaseSpaceConfig& cfg, const Bipartition& b, double tol) {
    return analyze_overlap(b, build_overlap_matrix(cfg, b, OverlapMethod::ClosedForm),
                           build_overlap_matrix(cfg, b, OverlapMethod::BruteForce), tol);
}

StateVector delocalized_state(const PhaseSpaceConfig& cfg, const Bipartition& b, Side side) {
    if (b.m() != cfg.m) throw std::invalid_argument("bipartition does not factor M");
    const auto n = static_cast<std::size_t>(cfg.m);
    return {std::vector<Complex>(n, 1.0 / std::sqrt(static_cast<double>(n))), basis_tag(b, side)};
}

StateVector to_conjugate(const PhaseSpaceConfig& cfg, const Bipartition& b, const StateVector& psi) {
    const ComplexMatrix overlap = build_overlap_matrix(cfg, b, OverlapMethod::ClosedForm);
    if (psi.basis_tag() == overlap.col_basis_tag()) return apply(overlap, psi);
    if (psi.basis_tag() == overlap.row_basis_tag()) return apply(overlap.adjoint(), psi);
    throw std::invalid_argument("state tagged '" + psi.basis_tag() + "' belongs to neither side of " + b.label());
}

Localization localize(const PhaseSpaceConfig& cfg, const Bipartition& b, const StateVector& psi, double tol) {
    if (b.m_a >= b.m_atilde) {
        throw std::domain_error("localization needs M_a < M_atilde; got " + b.label() +
                                " (the uniform state must live on the smaller-cell side)");
    }
    const std::string source_tag = basis_tag(b, Side::A);
    if (psi.basis_tag() != source_tag) {
        throw std::invalid_argument("localize expects a state tagged '" + source_tag + "', got '" +
                                    psi.basis_tag() + "'");
    }
    const double uniform = 1.0 / std::sqrt(static_cast<double>(cfg.m));
    for (const auto& amp : psi.amplitudes()) {
        if (std::abs(amp - uniform) > tol) throw std::invalid_argument("localize expects the uniform A-side state");
    }

    StateVector image = to_conjugate(cfg, b, psi);

    LocalizationReport report;
    report.bipartition = b;
    report.source_side = Side::A;
    report.tolerance = tol;
    report.expected_support = static_cast<std::size_t>(b.m_a * b.m_a);
    report.expected_amplitude = 1.0 / static_cast<double>(b.m_a);
    report.support_amplitude_min = INFINITY;
    report.index_set_matches = true;

    const auto indices = side_indices(b, Side::ATilde);
    for (std::size_t i = 0; i < image.dim(); ++i) {
        const double mod = std::abs(image[i]);
        const bool in_support = mod > kMatrixTol;
        const bool predicted = indices[i].g <= b.m_a;
        if (in_support != predicted) report.index_set_matches = false;
        if (in_support) {
            ++report.support_size;
            report.support_amplitude = std::max(report.support_amplitude, mod);
            report.support_amplitude_min = std::min(report.support_amplitude_min, mod);
            report.support_probability += mod * mod;
        } else {
            report.max_off_support = std::max(report.max_off_support, mod);
        }
    }
    if (report.support_size == 0) report.support_amplitude_min = 0.0;
    return {std::move(image), report};
}

}  // namespace zakspace
