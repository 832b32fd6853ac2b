#pragma once

#include "wcsp/core.hpp"

#include <cstdint>
#include <vector>

namespace wcsp {

/// Bit-packed vector over GF(2).
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value) {
            words_[i / 64] |= mask;
        } else {
            words_[i / 64] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    BitRow& operator^=(const BitRow& other);
    bool any() const;
    /// Inner product over GF(2).
    bool dot(const BitRow& other) const;
    std::size_t popcount() const;

    friend bool operator==(const BitRow&, const BitRow&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Equations sum_j a_j x_j = b over GF(2).
class Gf2System {
public:
    struct Row {
        BitRow coefficients;
        bool constant;
    };

    explicit Gf2System(std::size_t numVariables) : n_(numVariables) {}

    std::size_t numVariables() const { return n_; }
    const std::vector<Row>& rows() const { return rows_; }
    void addRow(BitRow coefficients, bool constant);
    /// Adds x_{vars[0]} + x_{vars[1]} + ... = constant; repeated variables cancel.
    void addEquation(const std::vector<int>& vars, bool constant);

    /// True iff every equation holds for the Boolean vector x.
    bool satisfiedBy(const BitRow& x) const;

private:
    std::size_t n_;
    std::vector<Row> rows_;
};

struct Gf2Reduction {
    std::size_t rank = 0;
    bool consistent = true;
};

/// Gaussian elimination over bit-packed rows.
Gf2Reduction reduce(const Gf2System& system);

/// 0 if inconsistent, otherwise 2^(numVariables - rank).
BigInt countGf2Solutions(const Gf2System& system);

/// Rank of a set of rows over GF(2).
std::size_t gf2Rank(std::vector<BitRow> rows);

/// Tuple index of a Boolean relation as a BitRow (coordinate i -> bit i).
BitRow tupleBits(std::size_t index, int arity);

/// A linear system whose solution set is R. R must be affine; an empty R gives
/// the inconsistent system 0 = 1.
Gf2System affineSystemOf(const Relation& relation);

}  // namespace wcsp
