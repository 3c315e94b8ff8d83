#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Exact integer machinery: factorization of the dimension M, coprime
// bipartitions M = M_a * M_atilde, the (s, t) congruence solver and the
// square-free rescaling of M.

namespace zakspace {

using Int = std::int64_t;

/// Largest dimension accepted anywhere in the library. M*M must fit in Int.
inline constexpr Int kMaxDimension = Int{1} << 31;

struct PrimePower {
    Int prime;
    int exponent;

    bool operator==(const PrimePower&) const = default;
};

/// M as a product of distinct primes with multiplicities, primes ascending.
/// For M = 1 the list is empty.
struct Factorization {
    Int m = 1;
    std::vector<PrimePower> factors;

    /// Number of distinct primes (N).
    std::size_t distinct_primes() const { return factors.size(); }
};

/// An ordered pair (M_a, M_atilde) with M_a * M_atilde = M.
///
/// Bit i of subset_mask is set when the i-th distinct prime of M (ascending)
/// belongs to M_a. enumerate_bipartitions only yields canonical pairs
/// (m_a <= m_atilde); the swapped orientation is still a valid pair for the
/// basis-construction code and is how the position/momentum orientation of
/// the Fourier pair is expressed.
struct Bipartition {
    Int m_a = 1;
    Int m_atilde = 1;
    std::uint64_t subset_mask = 0;

    Int m() const { return m_a * m_atilde; }
    bool coprime() const;
    bool canonical() const { return m_a <= m_atilde; }
    Bipartition swapped() const;
    std::string label() const;

    bool operator==(const Bipartition&) const = default;
};

/// Unique solution of t*M_atilde - s*M_a == r (mod M), with s in 1..M_atilde
/// and t in 1..M_a.
struct CrtSolution {
    Int r;
    Int s;
    Int t;
};

struct RadicalRescale {
    Int m_bar;
    Int c_multiplier;
};

/// Non-negative remainder of a modulo m (m > 0).
Int floor_mod(Int a, Int m);

/// Maps a residue class to the 1-based range 1..m (0 becomes m).
Int to_one_based(Int a, Int m);

/// (a * b) mod m for 0 < m <= kMaxDimension, in [0, m).
Int mul_mod(Int a, Int b, Int m);

/// Extended Euclid: returns g = gcd(a, b) and sets x, y with a*x + b*y = g.
Int extended_gcd(Int a, Int b, Int& x, Int& y);

/// Inverse of a modulo m. Throws std::domain_error when gcd(a, m) != 1.
/// The inverse modulo 1 is 0.
Int mod_inverse(Int a, Int m);

/// Trial division up to sqrt(m). Throws std::invalid_argument for m < 1 and
/// std::out_of_range for m > kMaxDimension.
Factorization factorize(Int m);

/// All canonical coprime pairs, sorted by m_a. 2^(N-1) entries for N >= 1,
/// the single pair (1, 1) for M = 1.
std::vector<Bipartition> enumerate_bipartitions(const Factorization& f);

/// Validated pair for an explicit M_a. Throws std::invalid_argument if m_a
/// does not divide m or gcd(m_a, m / m_a) != 1.
Bipartition make_bipartition(Int m, Int m_a);

/// Solves t*M_atilde - s*M_a == r (mod M) via modular inverses.
/// Throws std::domain_error for a non-coprime pair.
CrtSolution solve_st(const Bipartition& b, Int r);

/// M = m_bar * c_multiplier with m_bar the product of the distinct primes.
RadicalRescale radical_rescale(const Factorization& f);

}  // namespace zakspace
