#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "zakspace/kq.hpp"

using namespace zakspace;

namespace {

double max_diff(const StateVector& v, const std::vector<Complex>& ref) {
    double worst = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) worst = std::max(worst, std::abs(v[i] - ref[i]));
    return worst;
}

std::vector<Bipartition> both_orientations(Int m) {
    std::vector<Bipartition> out;
    for (const auto& b : enumerate_bipartitions(factorize(m))) {
        out.push_back(b);
        if (b.m_a != b.m_atilde) out.push_back(b.swapped());
    }
    return out;
}

// Integer exponent n with z == exp(2*pi*i*n/modulus), or -1.
Int phase_slot(Complex z, Int modulus) {
    const double turns = std::arg(z) / (2.0 * std::numbers::pi) * static_cast<double>(modulus);
    const Int n = floor_mod(static_cast<Int>(std::llround(turns)), modulus);
    return std::abs(z - unit_phase(n, modulus)) < 1e-9 ? n : -1;
}

}  // namespace

TEST_CASE("PhaseSpaceConfig validation") {
    CHECK_NOTHROW(PhaseSpaceConfig(6, 1, 2));
    CHECK_THROWS_AS(PhaseSpaceConfig(0), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSpaceConfig(6, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSpaceConfig(6, 1, -1), std::invalid_argument);
}

TEST_CASE("build_kq_state examples") {
    const PhaseSpaceConfig cfg(6);
    const Bipartition b{2, 3, 0};

    // f = 3 makes every comb phase trivial; teeth at x = 1 + 2s.
    const auto v = build_kq_state(cfg, b, {3, 1, Side::A});
    const double third = 1.0 / std::sqrt(3.0);
    CHECK(max_diff(v, {third, 0.0, third, 0.0, third, 0.0}) < 1e-15);
    CHECK(v.basis_tag() == kPositionTag);

    // Frozen from tests/scripts/derive_frozen_values.py.
    const auto w = build_kq_state(cfg, b, {1, 2, Side::A});
    CHECK(max_diff(w, {0.0, {0.577350269189626, 0.0}, 0.0, {-0.288675134594813, 0.5}, 0.0,
                       {-0.288675134594813, -0.5}}) < 1e-12);

    // M_a = M: a single tooth, the position eigenvector at x = g.
    const Bipartition position{6, 1, 0};
    for (Int g = 1; g <= 6; ++g) {
        const auto e = build_kq_state(cfg, position, {1, g, Side::A});
        CHECK(max_abs_diff(e, StateVector::basis_vector(6, static_cast<std::size_t>(g - 1), "x")) == 0.0);
    }
}

TEST_CASE("build_kq_state range and compatibility errors") {
    const PhaseSpaceConfig cfg(6);
    const Bipartition b{2, 3, 0};
    CHECK_THROWS_AS(build_kq_state(cfg, b, {4, 1, Side::A}), std::out_of_range);
    CHECK_THROWS_AS(build_kq_state(cfg, b, {1, 3, Side::A}), std::out_of_range);
    CHECK_THROWS_AS(build_kq_state(cfg, b, {3, 1, Side::ATilde}), std::out_of_range);
    CHECK_THROWS_AS(build_kq_state(cfg, b, {0, 1, Side::A}), std::out_of_range);
    CHECK_THROWS_AS(build_kq_state(PhaseSpaceConfig(12), b, {1, 1, Side::A}), std::invalid_argument);
    CHECK_THROWS_AS(build_kq_state(PhaseSpaceConfig(12), Bipartition{2, 6, 0}, {1, 1, Side::A}),
                    std::invalid_argument);
}

TEST_CASE("build_kq_state agrees with the literal comb for every state") {
    for (Int m : {1, 2, 6, 10, 12, 15, 30, 36}) {
        const PhaseSpaceConfig cfg(m);
        for (const auto& b : both_orientations(m)) {
            for (Side side : {Side::A, Side::ATilde}) {
                const Int cell = cell_length(b, side);
                for (const auto& idx : side_indices(b, side)) {
                    const auto v = build_kq_state(cfg, b, idx);
                    CHECK(max_diff(v, oracle::kq_state(m, cell, idx.f, idx.g)) <= 1e-12);
                    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
                    // support is the coset g + cell*Z, with M/cell points of equal modulus
                    std::size_t support = 0;
                    for (std::size_t x = 0; x < v.dim(); ++x) {
                        const bool on = std::abs(v[x]) > 1e-12;
                        CHECK(on == (floor_mod(static_cast<Int>(x) + 1 - idx.g, cell) == 0));
                        if (on) {
                            ++support;
                            CHECK(std::abs(std::abs(v[x]) - 1.0 / std::sqrt(static_cast<double>(m / cell))) < 1e-12);
                        }
                    }
                    CHECK(support == static_cast<std::size_t>(m / cell));
                }
            }
        }
    }
}

TEST_CASE("build_kq_state does not depend on the comb summation order") {
    // The oracle walks x outermost; the library walks the comb teeth.
    const PhaseSpaceConfig cfg(30);
    for (const auto& b : enumerate_bipartitions(factorize(30))) {
        for (const auto& idx : side_indices(b, Side::A)) {
            const StateVector ref(oracle::kq_state(30, b.m_a, idx.f, idx.g), kPositionTag);
            CHECK(equal_up_to_global_phase(build_kq_state(cfg, b, idx), ref, 1e-12));
        }
    }
}

TEST_CASE("build_kq_state is independent of the scaling constant") {
    const Bipartition b{3, 4, 0};
    for (const auto& idx : side_indices(b, Side::A)) {
        const auto v1 = build_kq_state(PhaseSpaceConfig(12), b, idx);
        const auto v2 = build_kq_state(PhaseSpaceConfig(12, 7, 3), b, idx);
        CHECK(max_abs_diff(v1, v2) == 0.0);
    }
}

TEST_CASE("build_basis is orthonormal and complete") {
    for (Int m : {6, 12, 30, 60}) {
        const PhaseSpaceConfig cfg(m);
        for (const auto& b : both_orientations(m)) {
            for (Side side : {Side::A, Side::ATilde}) {
                const auto basis = build_basis(cfg, b, side);
                REQUIRE(basis.size() == static_cast<std::size_t>(m));
                const auto columns = basis.as_matrix();
                const auto gram = multiply(columns.adjoint(), columns);
                CHECK(max_abs_diff(gram, ComplexMatrix::identity(static_cast<std::size_t>(m), basis.label)) <= 1e-12);
                const auto projector = multiply(columns, columns.adjoint());
                CHECK(max_abs_diff(projector, ComplexMatrix::identity(static_cast<std::size_t>(m), "x")) <= 1e-10);
            }
        }
    }
}

TEST_CASE("position and Fourier bases of the (1, M) pair") {
    const Int m = 8;
    const PhaseSpaceConfig cfg(m);
    const auto fourier = oracle::fourier(m);
    const Bipartition canonical{1, m, 0};

    // Canonical orientation: the A side (cell 1) is the momentum basis and
    // the ATilde side (cell M) the position basis.
    const auto position = build_basis(cfg, canonical, Side::ATilde);
    for (std::size_t j = 0; j < position.size(); ++j) {
        CHECK(max_abs_diff(position.vectors[j], StateVector::basis_vector(m, j, "x")) == 0.0);
    }
    const auto momentum = build_basis(cfg, canonical, Side::A);
    ComplexMatrix ref(m, "x", momentum.label);
    for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) ref(i, j) = fourier[i * m + j];
    }
    CHECK(equal_up_to_row_column_phases(momentum.as_matrix(), ref, 1e-12));

    // Swapped orientation (M, 1): the A side is the position basis.
    const Bipartition swapped = canonical.swapped();
    const auto a_side = build_basis(cfg, swapped, Side::A);
    const auto at_side = build_basis(cfg, swapped, Side::ATilde);
    for (std::size_t j = 0; j < a_side.size(); ++j) {
        CHECK(max_abs_diff(a_side.vectors[j], position.vectors[j]) == 0.0);
        CHECK(max_abs_diff(at_side.vectors[j], momentum.vectors[j]) == 0.0);
    }
}

TEST_CASE("build_phase_operator and build_translation") {
    const PhaseSpaceConfig cfg(3);
    const auto tau_m = build_phase_operator(cfg, 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(tau_m(i, i) - unit_phase(static_cast<Int>(i) + 1, 3)) < 1e-15);
    CHECK(max_abs_diff(build_phase_operator(cfg, 1), ComplexMatrix::identity(3, "x")) == 0.0);

    CHECK(max_abs_diff(build_translation(cfg, 3), ComplexMatrix::identity(3, "x")) == 0.0);
    const auto cycle = build_translation(cfg, 1);
    ComplexMatrix expected(3, "x", "x");
    expected(0, 1) = expected(1, 2) = expected(2, 0) = 1.0;
    CHECK(max_abs_diff(cycle, expected) == 0.0);

    CHECK_THROWS_AS(build_translation(cfg, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_phase_operator(cfg, -2), std::invalid_argument);
}

TEST_CASE("commutation relations of the operator pairs") {
    for (Int m : {6, 12, 15, 30}) {
        const PhaseSpaceConfig cfg(m);
        for (const auto& b : enumerate_bipartitions(factorize(m))) {
            const auto tau_a = build_phase_operator(cfg, b.m_a);
            const auto t_a = build_translation(cfg, b.m_a);
            const auto tau_at = build_phase_operator(cfg, b.m_atilde);
            const auto t_at = build_translation(cfg, b.m_atilde);

            CHECK(max_abs_diff(multiply(tau_a, t_a), multiply(t_a, tau_a)) <= 1e-12);
            CHECK(max_abs_diff(multiply(tau_at, t_at), multiply(t_at, tau_at)) <= 1e-12);

            const auto lhs = multiply(t_a, tau_at);
            const auto rhs = multiply(tau_at, t_a).scaled(unit_phase(b.m_a, b.m_atilde));
            CHECK(max_abs_diff(lhs, rhs) <= 1e-12);

            const auto lhs2 = multiply(t_at, tau_a);
            const auto rhs2 = multiply(tau_a, t_at).scaled(unit_phase(b.m_atilde, b.m_a));
            CHECK(max_abs_diff(lhs2, rhs2) <= 1e-12);
        }
    }
}

TEST_CASE("basis vectors are joint eigenvectors with the labelled eigenvalues") {
    for (Int m : {6, 12, 30}) {
        const PhaseSpaceConfig cfg(m);
        for (const auto& b : both_orientations(m)) {
            for (Side side : {Side::A, Side::ATilde}) {
                const Int cell = cell_length(b, side);
                const auto tau = build_phase_operator(cfg, cell);
                const auto t = build_translation(cfg, cell);
                const auto basis = build_basis(cfg, b, side);
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    const auto& v = basis.vectors[j];
                    const auto& idx = basis.indices[j];
                    // exp(i q 2 pi / L) = exp(2 pi i g / L), exp(i k L) = exp(2 pi i f L / M)
                    const Complex tau_ev = unit_phase(idx.g, cell);
                    const Complex t_ev = unit_phase(idx.f * cell, m);
                    CHECK(max_abs_diff(apply(tau, v), v.scaled(tau_ev)) <= 1e-10);
                    CHECK(max_abs_diff(apply(t, v), v.scaled(t_ev)) <= 1e-10);
                    const auto expected = expected_eigenphases(b, idx);
                    CHECK(std::abs(expected.phase_op - tau_ev) < 1e-15);
                    CHECK(std::abs(expected.translation - t_ev) < 1e-15);
                }
            }
        }
    }
}

TEST_CASE("a-side operators shift the eigenvalues of the atilde basis") {
    for (Int m : {6, 12, 30}) {
        const PhaseSpaceConfig cfg(m);
        for (const auto& b : enumerate_bipartitions(factorize(m))) {
            const auto tau_a = build_phase_operator(cfg, b.m_a);
            const auto t_a = build_translation(cfg, b.m_a);
            const auto tau_at = build_phase_operator(cfg, b.m_atilde);
            const auto t_at = build_translation(cfg, b.m_atilde);
            const auto basis = build_basis(cfg, b, Side::ATilde);

            for (std::size_t j = 0; j < basis.size(); ++j) {
                const auto& idx = basis.indices[j];
                const auto moved = apply(t_a, basis.vectors[j]);
                // tau(atilde) T(a)|K,Q> = exp(i (Q - a) 2 pi / atilde) T(a)|K,Q>
                CHECK(max_abs_diff(apply(tau_at, moved), moved.scaled(unit_phase(idx.g - b.m_a, b.m_atilde))) <=
                      1e-10);
            }

            // The orbit of one |K,Q> under T(a)^j tau(a)^l reaches every
            // eigenvalue pair of (tau(atilde), T(atilde)) exactly once.
            std::set<std::pair<Int, Int>> slots;
            const auto& seed = basis.vectors.front();
            StateVector row = seed;
            for (Int j = 0; j < b.m_atilde; ++j) {
                StateVector v = row;
                for (Int l = 0; l < b.m_a; ++l) {
                    const auto tv = apply(tau_at, v);
                    const auto vv = apply(t_at, v);
                    const Complex ev_tau = inner_product(v, tv);
                    const Complex ev_t = inner_product(v, vv);
                    REQUIRE(max_abs_diff(tv, v.scaled(ev_tau)) <= 1e-10);
                    REQUIRE(max_abs_diff(vv, v.scaled(ev_t)) <= 1e-10);
                    slots.insert({phase_slot(ev_tau, b.m_atilde), phase_slot(ev_t, m)});
                    v = apply(tau_a, v);
                }
                row = apply(t_a, row);
            }
            CHECK(slots.size() == static_cast<std::size_t>(m));
            CHECK(slots.count({-1, -1}) == 0);
        }
    }
}

TEST_CASE("basis labels and index ordering") {
    const Bipartition b{3, 4, 0};
    CHECK(basis_tag(b, Side::A) == "kq(a=3|12)");
    CHECK(basis_tag(b, Side::ATilde) == "KQ(a~=4|12)");
    const auto a = side_indices(b, Side::A);
    REQUIRE(a.size() == 12);
    CHECK(a.front() == KQIndex{1, 1, Side::A});
    CHECK(a[1] == KQIndex{1, 2, Side::A});
    CHECK(a[3] == KQIndex{2, 1, Side::A});
    CHECK(a.back() == KQIndex{4, 3, Side::A});
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(index_position(b, a[i]) == i);
    const auto at = side_indices(b, Side::ATilde);
    CHECK(at.back() == KQIndex{3, 4, Side::ATilde});
}
