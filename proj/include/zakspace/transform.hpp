#pragma once

#include <optional>

#include "zakspace/algebra.hpp"
#include "zakspace/arith.hpp"
#include "zakspace/kq.hpp"

// Overlaps between the two members of a conjugate pair, their mutual
// unbiasedness, and the localization of a state that is uniform over the
// "a" side.

namespace zakspace {

enum class OverlapMethod { ClosedForm, BruteForce };

struct OverlapReport {
    Bipartition bipartition;
    double modulus_min = 0.0;
    double modulus_max = 0.0;
    bool mub_flat = false;
    double unitarity_deviation = 0.0;
    double oracle_max_abs_diff = 0.0;
    double tolerance = kMatrixTol;

    /// Flat, unitary and in agreement with the oracle, all within tolerance.
    bool passes() const;
};

struct LocalizationReport {
    Bipartition bipartition;
    Side source_side = Side::A;
    std::size_t support_size = 0;
    double support_amplitude = 0.0;      // largest modulus on the support
    double support_amplitude_min = 0.0;  // smallest modulus on the support
    double support_probability = 0.0;    // sum of |amplitude|^2 over the support
    double max_off_support = 0.0;
    std::size_t expected_support = 0;  // M_a^2
    double expected_amplitude = 0.0;   // 1/M_a
    /// Support equals {(fbar, gbar) : gbar <= M_a}, the index set predicted
    /// for the conjugate side.
    bool index_set_matches = false;
    double tolerance = kMatrixTol;

    bool conforms() const;
};

struct Localization {
    StateVector state;  // tagged with the ATilde basis
    LocalizationReport report;
};

/// <k,q|K,Q> from the solution (s, t) of t*M_atilde - s*M_a == (q - Q)/c:
/// M^{-1/2} exp(-i k s a + i K t atilde).
Complex overlap_closed_form(const PhaseSpaceConfig& cfg, const Bipartition& b, const KQIndex& idx_a,
                            const KQIndex& idx_atilde);

/// <k,q|K,Q> as the literal sum over the x grid of conj(<x|k,q>) <x|K,Q>.
Complex overlap_bruteforce(const PhaseSpaceConfig& cfg, const Bipartition& b, const KQIndex& idx_a,
                           const KQIndex& idx_atilde);

/// Change of basis from the A side to the ATilde side: entry (row, col) is
/// <K,Q|k,q> with rows in lexicographic (fbar, gbar) order and columns in
/// lexicographic (f, g) order.
ComplexMatrix build_overlap_matrix(const PhaseSpaceConfig& cfg, const Bipartition& b, OverlapMethod method);

/// Fills an OverlapReport from an already-built closed-form matrix and its
/// oracle counterpart.
OverlapReport analyze_overlap(const Bipartition& b, const ComplexMatrix& closed_form, const ComplexMatrix& oracle,
                              double tol = kMatrixTol);

OverlapReport mub_check(const PhaseSpaceConfig& cfg, const Bipartition& b, double tol = kMatrixTol);

struct ModulusRange {
    double min;
    double max;
};

ModulusRange modulus_range(const ComplexMatrix& m);

/// Uniform amplitude M^{-1/2} over every label of a side.
StateVector delocalized_state(const PhaseSpaceConfig& cfg, const Bipartition& b, Side side);

/// Re-expresses a state given in one member of the pair in the other member.
/// Throws std::invalid_argument if psi is not tagged with either side.
StateVector to_conjugate(const PhaseSpaceConfig& cfg, const Bipartition& b, const StateVector& psi);

/// Maps the A-side uniform state to the ATilde side and measures its support.
/// Requires M_a < M_atilde and psi uniform on the A side (within tol).
Localization localize(const PhaseSpaceConfig& cfg, const Bipartition& b, const StateVector& psi,
                      double tol = kMatrixTol);

}  // namespace zakspace
