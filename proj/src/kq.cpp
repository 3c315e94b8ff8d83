#include "zakspace/kq.hpp"

#include <cmath>
#include <stdexcept>

namespace zakspace {

namespace {

void require_compatible(const PhaseSpaceConfig& cfg, const Bipartition& b) {
    if (!b.coprime()) throw std::invalid_argument("bipartition " + b.label() + " is not coprime");
    if (b.m() != cfg.m) {
        throw std::invalid_argument("bipartition " + b.label() + " does not factor M = " + std::to_string(cfg.m));
    }
}

std::size_t grid_index(Int x, Int m) { return static_cast<std::size_t>(floor_mod(x - 1, m)); }

}  // namespace

const char* to_string(Side side) { return side == Side::A ? "a" : "atilde"; }

PhaseSpaceConfig::PhaseSpaceConfig(Int dim, Int c_numerator, Int c_denominator)
    : m(dim), c_num(c_numerator), c_den(c_denominator) {
    if (m < 1) throw std::invalid_argument("dimension must be positive");
    if (m > kMaxDimension) throw std::out_of_range("dimension exceeds 2^31");
    if (c_num <= 0 || c_den <= 0) throw std::invalid_argument("scaling constant c must be positive");
}

Int cell_length(const Bipartition& b, Side side) { return side == Side::A ? b.m_a : b.m_atilde; }

Int label_count(const Bipartition& b, Side side) { return side == Side::A ? b.m_atilde : b.m_a; }

std::string basis_tag(const Bipartition& b, Side side) {
    const std::string m = std::to_string(b.m());
    if (side == Side::A) return "kq(a=" + std::to_string(b.m_a) + "|" + m + ")";
    return "KQ(a~=" + std::to_string(b.m_atilde) + "|" + m + ")";
}

std::vector<KQIndex> side_indices(const Bipartition& b, Side side) {
    const Int nf = label_count(b, side);
    const Int ng = cell_length(b, side);
    std::vector<KQIndex> out;
    out.reserve(static_cast<std::size_t>(nf * ng));
    for (Int f = 1; f <= nf; ++f) {
        for (Int g = 1; g <= ng; ++g) out.push_back({f, g, side});
    }
    return out;
}

std::size_t index_position(const Bipartition& b, const KQIndex& idx) {
    const Int nf = label_count(b, idx.side);
    const Int ng = cell_length(b, idx.side);
    if (idx.f < 1 || idx.f > nf || idx.g < 1 || idx.g > ng) {
        throw std::out_of_range("kq index (f=" + std::to_string(idx.f) + ", g=" + std::to_string(idx.g) +
                                ") out of range for side " + to_string(idx.side) + " of " + b.label());
    }
    return static_cast<std::size_t>((idx.f - 1) * ng + (idx.g - 1));
}

EigenPhases expected_eigenphases(const Bipartition& b, const KQIndex& idx) {
    const Int cell = cell_length(b, idx.side);
    return {unit_phase(idx.g, cell), unit_phase(mul_mod(idx.f, cell, b.m()), b.m())};
}

const StateVector& KQBasis::at(const KQIndex& idx) const {
    if (idx.side != side) throw std::invalid_argument("kq index belongs to the other side of the pair");
    return vectors.at(index_position(bipartition, idx));
}

ComplexMatrix KQBasis::as_matrix() const {
    const std::size_t n = vectors.size();
    ComplexMatrix out(n, kPositionTag, label);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) out(i, j) = vectors[j][i];
    }
    return out;
}

StateVector build_kq_state(const PhaseSpaceConfig& cfg, const Bipartition& b, const KQIndex& idx) {
    require_compatible(cfg, b);
    index_position(b, idx);  // range check

    const Int m = cfg.m;
    const Int cell = cell_length(b, idx.side);
    const Int terms = m / cell;
    const double norm = 1.0 / std::sqrt(static_cast<double>(terms));

    std::vector<Complex> amps(static_cast<std::size_t>(m));
    for (Int s = 1; s <= terms; ++s) {
        // k*s*a = 2*pi * f*s*cell / M
        const Int phase_num = mul_mod(mul_mod(idx.f, s, m), cell, m);
        amps[grid_index(idx.g + s * cell, m)] += norm * unit_phase(phase_num, m);
    }
    return {std::move(amps), kPositionTag};
}

KQBasis build_basis(const PhaseSpaceConfig& cfg, const Bipartition& b, Side side) {
    require_compatible(cfg, b);
    KQBasis out{b, side, basis_tag(b, side), side_indices(b, side), {}};
    out.vectors.reserve(out.indices.size());
    for (const auto& idx : out.indices) out.vectors.push_back(build_kq_state(cfg, b, idx));
    return out;
}

ComplexMatrix build_phase_operator(const PhaseSpaceConfig& cfg, Int length) {
    if (length < 1) throw std::invalid_argument("operator length must be a positive multiple of c");
    const auto n = static_cast<std::size_t>(cfg.m);
    ComplexMatrix out(n, kPositionTag, kPositionTag);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = unit_phase(static_cast<Int>(i) + 1, length);
    return out;
}

ComplexMatrix build_translation(const PhaseSpaceConfig& cfg, Int length) {
    if (length < 1) throw std::invalid_argument("operator length must be a positive multiple of c");
    const auto n = static_cast<std::size_t>(cfg.m);
    ComplexMatrix out(n, kPositionTag, kPositionTag);
    for (Int x = 1; x <= cfg.m; ++x) out(grid_index(x, cfg.m), grid_index(x + length, cfg.m)) = 1.0;
    return out;
}

}  // namespace zakspace
