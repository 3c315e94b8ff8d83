#pragma once

#include <string>
#include <vector>

#include "zakspace/algebra.hpp"
#include "zakspace/arith.hpp"

// Conjugate Zak (kq) bases of the M-dimensional space and the phase and
// translation operators that define them, all in the x representation.
//
// The x grid is x = s*c, s = 1..M, stored at vector index s - 1. For a pair
// (M_a, M_atilde) the "a" side has cell length a = M_a*c and the "atilde"
// side has cell length atilde = M_atilde*c. A side with cell L has labels
// f = 1..M/L (quasi-momentum k = 2*pi*f/(M*c)) and g = 1..L (q = g*c).

namespace zakspace {

enum class Side { A, ATilde };

const char* to_string(Side side);

/// Position basis tag.
inline const std::string kPositionTag = "x";

/// Scaling constant c is carried as exact rational metadata. All numerics
/// reduce to integer ratios, so nothing below depends on its value.
struct PhaseSpaceConfig {
    Int m = 1;
    Int c_num = 1;
    Int c_den = 1;

    explicit PhaseSpaceConfig(Int dim, Int c_numerator = 1, Int c_denominator = 1);
};

struct KQIndex {
    Int f;
    Int g;
    Side side;

    bool operator==(const KQIndex&) const = default;
};

/// Cell length (in grid steps) of the given side: M_a or M_atilde.
Int cell_length(const Bipartition& b, Side side);

/// Number of f labels of a side, M / cell_length.
Int label_count(const Bipartition& b, Side side);

/// Basis tag, e.g. "kq(a=3|12)" or "KQ(a~=4|12)".
std::string basis_tag(const Bipartition& b, Side side);

/// All indices of a side in lexicographic (f, g) order.
std::vector<KQIndex> side_indices(const Bipartition& b, Side side);

/// Position of idx in side_indices(b, idx.side).
std::size_t index_position(const Bipartition& b, const KQIndex& idx);

struct EigenPhases {
    Complex phase_op;     // tau(L) eigenvalue exp(i*q*2*pi/L)
    Complex translation;  // T(L) eigenvalue exp(i*k*L)
};

/// Eigenvalues of tau(L), T(L) (L the side's own cell) on |idx>.
EigenPhases expected_eigenphases(const Bipartition& b, const KQIndex& idx);

struct KQBasis {
    Bipartition bipartition;
    Side side;
    std::string label;
    std::vector<KQIndex> indices;
    std::vector<StateVector> vectors;  // x-tagged, same order as indices

    std::size_t size() const { return vectors.size(); }
    const StateVector& at(const KQIndex& idx) const;

    /// Columns are the basis vectors: rows tagged "x", columns tagged label.
    ComplexMatrix as_matrix() const;
};

/// <x|k,q> = M_atilde^{-1/2} sum_{s=1}^{M_atilde} exp(i k s a) Delta(x - q - s a)
/// for side A; side ATilde swaps the roles of M_a and M_atilde.
/// Throws std::out_of_range for a label outside its side's range and
/// std::invalid_argument when cfg and b disagree on M or b is not coprime.
StateVector build_kq_state(const PhaseSpaceConfig& cfg, const Bipartition& b, const KQIndex& idx);

KQBasis build_basis(const PhaseSpaceConfig& cfg, const Bipartition& b, Side side);

/// tau(L*c) = exp(i x 2*pi/(L*c)): diagonal exp(2*pi*i*s/L) on the x grid.
ComplexMatrix build_phase_operator(const PhaseSpaceConfig& cfg, Int length);

/// T(L*c) = exp(i p L c): (T v)[x] = v[x + L], periodic in M.
ComplexMatrix build_translation(const PhaseSpaceConfig& cfg, Int length);

}  // namespace zakspace
