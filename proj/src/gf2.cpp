#include "wcsp/gf2.hpp"

#include "wcsp/classifier.hpp"

#include <algorithm>
#include <bit>

namespace wcsp {

BitRow& BitRow::operator^=(const BitRow& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

bool BitRow::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

bool BitRow::dot(const BitRow& other) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) % 2 == 1;
}

std::size_t BitRow::popcount() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

void Gf2System::addRow(BitRow coefficients, bool constant) {
    if (coefficients.size() != n_) throw InputError("equation width does not match the system");
    rows_.push_back({std::move(coefficients), constant});
}

void Gf2System::addEquation(const std::vector<int>& vars, bool constant) {
    BitRow row(n_);
    for (int v : vars) {
        if (v < 0 || static_cast<std::size_t>(v) >= n_) throw InputError("equation variable out of range");
        row.flip(static_cast<std::size_t>(v));
    }
    rows_.push_back({std::move(row), constant});
}

bool Gf2System::satisfiedBy(const BitRow& x) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const Row& r) { return r.coefficients.dot(x) == r.constant; });
}

namespace {

// Row echelon form in place; returns the rank.
std::size_t eliminate(std::vector<Gf2System::Row>& rows, std::size_t width) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].coefficients.get(col)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r].coefficients.get(col)) {
                rows[r].coefficients ^= rows[rank].coefficients;
                rows[r].constant ^= rows[rank].constant;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

Gf2Reduction reduce(const Gf2System& system) {
    std::vector<Gf2System::Row> rows = system.rows();
    Gf2Reduction out;
    out.rank = eliminate(rows, system.numVariables());
    for (std::size_t r = out.rank; r < rows.size(); ++r) {
        if (rows[r].constant) out.consistent = false;  // 0 = 1
    }
    return out;
}

BigInt countGf2Solutions(const Gf2System& system) {
    Gf2Reduction r = reduce(system);
    if (!r.consistent) return 0;
    BigInt count;
    mpz_ui_pow_ui(count.get_mpz_t(), 2, system.numVariables() - r.rank);
    return count;
}

std::size_t gf2Rank(std::vector<BitRow> rows) {
    if (rows.empty()) return 0;
    std::vector<Gf2System::Row> tagged;
    for (auto& r : rows) tagged.push_back({std::move(r), false});
    return eliminate(tagged, tagged.front().coefficients.size());
}

BitRow tupleBits(std::size_t index, int arity) {
    BitRow bits(static_cast<std::size_t>(arity));
    for (int i = 0; i < arity; ++i) {
        if ((index >> (arity - 1 - i)) & 1u) bits.set(static_cast<std::size_t>(i));
    }
    return bits;
}

Gf2System affineSystemOf(const Relation& relation) {
    if (relation.domainSize() != 2) throw Refusal("affine systems are only defined for Boolean relations");
    const auto k = static_cast<std::size_t>(relation.arity());
    Gf2System system(k);
    if (relation.empty()) {
        system.addRow(BitRow(k), true);
        return system;
    }
    if (!isAffineRelation(relation)) throw InputError("relation is not affine");

    // Basis of the direction space {x ^ x0 : x in R}, in reduced echelon form.
    const BitRow x0 = tupleBits(relation.tuples().front(), relation.arity());
    std::vector<Gf2System::Row> span;
    for (auto t : relation.tuples()) {
        BitRow d = tupleBits(t, relation.arity());
        d ^= x0;
        span.push_back({std::move(d), false});
    }
    const std::size_t rank = eliminate(span, k);
    span.resize(rank);

    // Pivot column of each basis row; free columns parametrize the null space
    // of the basis, whose vectors a give the equations a.x = a.x0.
    std::vector<std::size_t> pivotCol(rank);
    std::vector<bool> isPivot(k, false);
    for (std::size_t r = 0; r < rank; ++r) {
        std::size_t c = 0;
        while (!span[r].coefficients.get(c)) ++c;
        pivotCol[r] = c;
        isPivot[c] = true;
    }
    for (std::size_t freeCol = 0; freeCol < k; ++freeCol) {
        if (isPivot[freeCol]) continue;
        // a_free = 1, a_pivot(r) = basis[r][free], other free coordinates 0.
        BitRow a(k);
        a.set(freeCol);
        for (std::size_t r = 0; r < rank; ++r) {
            if (span[r].coefficients.get(freeCol)) a.set(pivotCol[r]);
        }
        const bool constant = a.dot(x0);
        system.addRow(std::move(a), constant);
    }
    return system;
}

}  // namespace wcsp
