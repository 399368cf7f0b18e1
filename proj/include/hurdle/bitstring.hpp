#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurdle/rng.hpp"

namespace hurdle {

/// Fixed-length bit string over positions 1..n (1-based, as in the usual
/// pseudo-code convention). Packed into 64-bit words.
class Bitstring {
  public:
    explicit Bitstring(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {
        if (n == 0) throw std::invalid_argument("Bitstring: n must be >= 1");
    }

    /// Parse from a string of '0'/'1'; character i (0-based) is position i+1.
    static Bitstring from_string(const std::string& s) {
        Bitstring x(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') x.set(i + 1, true);
            else if (s[i] != '0') throw std::invalid_argument("Bitstring: bad character");
        }
        return x;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t pos) const {
        check(pos);
        return (words_[(pos - 1) >> 6] >> ((pos - 1) & 63)) & 1u;
    }

    void set(std::size_t pos, bool value) {
        check(pos);
        const std::uint64_t mask = 1ull << ((pos - 1) & 63);
        if (value) words_[(pos - 1) >> 6] |= mask;
        else words_[(pos - 1) >> 6] &= ~mask;
    }

    void flip(std::size_t pos) {
        check(pos);
        words_[(pos - 1) >> 6] ^= 1ull << ((pos - 1) & 63);
    }

    /// Number of zero bits. The Hurdle landscape depends on x only through this.
    std::size_t count_zeros() const { return n_ - count_ones(); }

    std::size_t count_ones() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 1; i <= n_; ++i)
            if (get(i)) s[i - 1] = '1';
        return s;
    }

    bool operator==(const Bitstring& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }

  private:
    void check(std::size_t pos) const {
        if (pos < 1 || pos > n_) throw std::out_of_range("Bitstring: position out of range");
    }

    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

inline std::size_t hamming_distance(const Bitstring& a, const Bitstring& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: size mismatch");
    std::size_t d = 0;
    for (std::size_t i = 1; i <= a.size(); ++i)
        if (a.get(i) != b.get(i)) ++d;
    return d;
}

/// Uniform random bit string: each bit independently 1 with probability 1/2.
/// Consumes one bernoulli draw per position, in position order.
inline Bitstring random_bitstring(std::size_t n, RandomStream& rng) {
    Bitstring x(n);
    for (std::size_t i = 1; i <= n; ++i)
        if (rng.bernoulli(0.5)) x.set(i, true);
    return x;
}

/// Standard bit mutation: flip each position independently with probability pm.
/// Consumes exactly one bernoulli draw per position, in position order.
inline Bitstring standard_bit_mutation(const Bitstring& x, double pm, RandomStream& rng) {
    Bitstring y = x;
    for (std::size_t i = 1; i <= x.size(); ++i)
        if (rng.bernoulli(pm)) y.flip(i);
    return y;
}

/// Uniform random permutation of positions 1..n (Fisher-Yates, descending,
/// one uniform_index draw per step i = n-1 .. 1).
inline std::vector<std::size_t> random_permutation(std::size_t n, RandomStream& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{1});
    for (std::size_t i = n; i >= 2; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_index(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

} // namespace hurdle
