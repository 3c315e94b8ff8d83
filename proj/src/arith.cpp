#include "zakspace/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zakspace {

namespace {

std::uint64_t mask_for(const Factorization& f, Int m_a) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (m_a % f.factors[i].prime == 0) mask |= std::uint64_t{1} << i;
    }
    return mask;
}

Int checked_mul(Int a, Int b) {
    Int out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in product");
    return out;
}

}  // namespace

bool Bipartition::coprime() const {
    return m_a >= 1 && m_atilde >= 1 && std::gcd(m_a, m_atilde) == 1;
}

Bipartition Bipartition::swapped() const {
    Bipartition out{m_atilde, m_a, 0};
    out.subset_mask = mask_for(factorize(m()), out.m_a);
    return out;
}

std::string Bipartition::label() const {
    return "(" + std::to_string(m_a) + "," + std::to_string(m_atilde) + ")";
}

Int floor_mod(Int a, Int m) {
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    Int r = a % m;
    return r < 0 ? r + m : r;
}

Int to_one_based(Int a, Int m) {
    Int r = floor_mod(a, m);
    return r == 0 ? m : r;
}

Int mul_mod(Int a, Int b, Int m) {
    if (m > kMaxDimension) throw std::out_of_range("modulus exceeds 2^31");
    return floor_mod(a, m) * floor_mod(b, m) % m;
}

Int extended_gcd(Int a, Int b, Int& x, Int& y) {
    Int old_r = a, r = b;
    Int old_x = 1, cur_x = 0;
    Int old_y = 0, cur_y = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_x - q * cur_x;
        old_x = cur_x;
        cur_x = tmp;
        tmp = old_y - q * cur_y;
        old_y = cur_y;
        cur_y = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_x = -old_x;
        old_y = -old_y;
    }
    x = old_x;
    y = old_y;
    return old_r;
}

Int mod_inverse(Int a, Int m) {
    if (m == 1) return 0;
    Int x = 0, y = 0;
    if (extended_gcd(floor_mod(a, m), m, x, y) != 1) {
        throw std::domain_error("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
    }
    return floor_mod(x, m);
}

Factorization factorize(Int m) {
    if (m < 1) throw std::invalid_argument("dimension must be a positive integer, got " + std::to_string(m));
    if (m > kMaxDimension) throw std::out_of_range("dimension exceeds 2^31: " + std::to_string(m));
    Factorization out;
    out.m = m;
    Int rest = m;
    for (Int p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        out.factors.push_back({p, e});
    }
    if (rest > 1) out.factors.push_back({rest, 1});
    return out;
}

std::vector<Bipartition> enumerate_bipartitions(const Factorization& f) {
    const std::size_t n = f.distinct_primes();
    if (n == 0) return {Bipartition{1, 1, 0}};

    std::vector<Int> powers;
    powers.reserve(n);
    for (const auto& pp : f.factors) {
        Int v = 1;
        for (int i = 0; i < pp.exponent; ++i) v = checked_mul(v, pp.prime);
        powers.push_back(v);
    }

    std::vector<Bipartition> out;
    out.reserve(std::size_t{1} << (n - 1));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Int m_a = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) m_a = checked_mul(m_a, powers[i]);
        }
        const Int m_atilde = f.m / m_a;
        if (m_a < m_atilde) out.push_back({m_a, m_atilde, mask});
    }
    std::sort(out.begin(), out.end(), [](const Bipartition& l, const Bipartition& r) {
        return l.m_a != r.m_a ? l.m_a < r.m_a : l.m_atilde < r.m_atilde;
    });
    return out;
}

Bipartition make_bipartition(Int m, Int m_a) {
    const Factorization f = factorize(m);
    if (m_a < 1 || m % m_a != 0) {
        throw std::invalid_argument("M_a = " + std::to_string(m_a) + " does not divide M = " + std::to_string(m));
    }
    const Int m_atilde = m / m_a;
    if (std::gcd(m_a, m_atilde) != 1) {
        throw std::invalid_argument("M_a = " + std::to_string(m_a) + " and M/M_a = " + std::to_string(m_atilde) +
                                    " are not coprime");
    }
    return {m_a, m_atilde, mask_for(f, m_a)};
}

CrtSolution solve_st(const Bipartition& b, Int r) {
    if (!b.coprime()) {
        throw std::domain_error("bipartition " + b.label() +
                                " is not coprime; s*M_a - t*M_atilde = 0 has non-trivial solutions");
    }
    const Int m = b.m();
    const Int rr = floor_mod(r, m);
    // Reduce mod M_a: t*M_atilde == r. Reduce mod M_atilde: -s*M_a == r.
    const Int t = to_one_based(mul_mod(rr, mod_inverse(b.m_atilde, b.m_a), b.m_a), b.m_a);
    const Int s = to_one_based(mul_mod(-rr, mod_inverse(b.m_a, b.m_atilde), b.m_atilde), b.m_atilde);
    return {rr, s, t};
}

RadicalRescale radical_rescale(const Factorization& f) {
    Int bar = 1;
    for (const auto& pp : f.factors) bar = checked_mul(bar, pp.prime);
    return {bar, f.m / bar};
}

}  // namespace zakspace
