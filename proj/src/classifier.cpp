#include "wcsp/classifier.hpp"

#include <algorithm>

namespace wcsp {

namespace {

void requireBoolean(int q, const char* what) {
    if (q != 2) throw Refusal(std::string(what) + " is only defined for Boolean domains (q = 2)");
}

// Value of coordinate i in a Boolean tuple index.
inline int bitAt(std::size_t index, int arity, int i) {
    return static_cast<int>((index >> (arity - 1 - i)) & 1u);
}

}  // namespace

Relation underlyingRelation(const WeightFunction& f) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.at(i) != 0) support.push_back(i);
    }
    return Relation(f.arity(), f.domainSize(), std::move(support));
}

bool isAffineRelation(const Relation& r) {
    requireBoolean(r.domainSize(), "affine relation test");
    if (r.empty()) return true;
    // With a = the first tuple fixed, closure of a^b^c for all b, c makes
    // R ^ a a subspace, which implies the full triple closure.
    std::vector<bool> member(tableSize(r.arity(), 2), false);
    for (auto t : r.tuples()) member[t] = true;
    const std::size_t a = r.tuples().front();
    for (auto b : r.tuples()) {
        for (auto c : r.tuples()) {
            if (!member[a ^ b ^ c]) return false;
        }
    }
    return true;
}

bool hasAffineSupport(const WeightFunction& f) { return isAffineRelation(underlyingRelation(f)); }

std::optional<Rational> pureAffineWeight(const WeightFunction& f) {
    requireBoolean(f.domainSize(), "pure affine test");
    std::optional<Rational> w;
    for (const auto& v : f.table()) {
        if (v == 0) continue;
        if (!w) {
            w = v;
        } else if (*w != v) {
            return std::nullopt;
        }
    }
    if (!w || !hasAffineSupport(f)) return std::nullopt;
    return w;
}

bool isPureAffine(const WeightFunction& f) { return pureAffineWeight(f).has_value(); }

std::vector<int> usefulIndices(const WeightFunction& f) {
    requireBoolean(f.domainSize(), "useful index test");
    std::vector<int> useful;
    for (int i = 0; i < f.arity(); ++i) {
        const std::size_t stride = f.stride(i);
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
            if (idx & stride) continue;
            if (f.at(idx) > 0 && f.at(idx | stride) > 0) {
                useful.push_back(i);
                break;
            }
        }
    }
    return useful;
}

ProductLikeResult isProductLike(const WeightFunction& f) {
    ProductLikeResult result;
    result.lambdas.assign(static_cast<std::size_t>(f.arity()), std::nullopt);
    result.productLike = true;
    for (int i : usefulIndices(f)) {
        const std::size_t stride = f.stride(i);
        std::optional<Rational> lambda;
        bool consistent = true;
        for (std::size_t idx = 0; idx < f.size() && consistent; ++idx) {
            if (idx & stride) continue;
            const Rational& zero = f.at(idx);
            const Rational& one = f.at(idx | stride);
            if (!lambda) {
                if (one == 0) {
                    consistent = zero == 0;
                    continue;
                }
                lambda = zero / one;
            } else {
                consistent = zero == *lambda * one;
            }
        }
        // A useful index always has some context with f(y, 1) > 0, so lambda is set.
        if (consistent) {
            // Contexts seen before lambda was fixed had one == 0 and zero == 0.
            result.lambdas[static_cast<std::size_t>(i)] = lambda;
        } else {
            result.productLike = false;
            if (!result.failingIndex) result.failingIndex = i;
        }
    }
    return result;
}

WeightFunction ProductTypeWitness::reconstruct(int arity) const {
    std::size_t size = tableSize(arity, 2);
    std::vector<Rational> table(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        Rational value = scale;
        for (const auto& [i, v] : constantColumns) {
            if (bitAt(idx, arity, i) != v) value = 0;
        }
        for (const auto& cls : classes) {
            if (value == 0) break;
            const int rep = bitAt(idx, arity, cls.members.front().index);
            for (const auto& m : cls.members) {
                if (bitAt(idx, arity, m.index) != (rep ^ static_cast<int>(m.complemented))) value = 0;
            }
            value *= rep ? cls.weight1 : cls.weight0;
        }
        table[idx] = value;
    }
    return WeightFunction(arity, 2, std::move(table));
}

ProductTypeResult isProductType(const WeightFunction& f) {
    requireBoolean(f.domainSize(), "product type test");
    const int k = f.arity();
    const Relation support = underlyingRelation(f);
    ProductTypeResult result;

    if (support.empty()) {
        // f == 0: a zero scale with every coordinate in its own free class.
        ProductTypeWitness w;
        w.scale = 0;
        for (int i = 0; i < k; ++i) w.classes.push_back({{{i, false}}, Rational(1), Rational(1)});
        result.productType = true;
        result.witness = std::move(w);
        return result;
    }

    const auto& rows = support.tuples();
    ProductTypeWitness w;

    // (a) Constant columns, and equal/complementary classes of the rest.
    std::vector<int> representativeOf(static_cast<std::size_t>(k), -1);
    for (int i = 0; i < k; ++i) {
        const int first = bitAt(rows.front(), k, i);
        bool isConstant = std::all_of(rows.begin(), rows.end(), [&](std::size_t r) { return bitAt(r, k, i) == first; });
        if (isConstant) {
            w.constantColumns.emplace_back(i, first);
            continue;
        }
        bool placed = false;
        for (auto& cls : w.classes) {
            const int rep = cls.members.front().index;
            const bool equal =
                std::all_of(rows.begin(), rows.end(), [&](std::size_t r) { return bitAt(r, k, i) == bitAt(r, k, rep); });
            const bool complementary =
                std::all_of(rows.begin(), rows.end(), [&](std::size_t r) { return bitAt(r, k, i) != bitAt(r, k, rep); });
            if (equal || complementary) {
                cls.members.push_back({i, complementary});
                placed = true;
                break;
            }
        }
        if (!placed) w.classes.push_back({{{i, false}}, Rational(1), Rational(1)});
    }

    // (b) The representatives must range over the complete relation.
    const std::size_t classes = w.classes.size();
    if (classes >= 63 || support.size() != (std::size_t{1} << classes)) return result;

    // (c) Multiplicative structure around a base point.
    const std::size_t base = rows.front();
    const Rational& baseValue = f.at(base);
    std::vector<Rational> ratio(classes);
    for (std::size_t c = 0; c < classes; ++c) {
        std::size_t flipped = base;
        for (const auto& m : w.classes[c].members) flipped ^= f.stride(m.index);
        if (!support.contains(flipped)) return result;
        ratio[c] = f.at(flipped) / baseValue;
    }
    for (std::size_t r : rows) {
        Rational expected = baseValue;
        for (std::size_t c = 0; c < classes; ++c) {
            const int rep = w.classes[c].members.front().index;
            if (bitAt(r, k, rep) != bitAt(base, k, rep)) expected *= ratio[c];
        }
        if (expected != f.at(r)) return result;
    }

    w.scale = baseValue;
    for (std::size_t c = 0; c < classes; ++c) {
        auto& cls = w.classes[c];
        const int baseBit = bitAt(base, k, cls.members.front().index);
        cls.weight0 = baseBit == 0 ? Rational(1) : ratio[c];
        cls.weight1 = baseBit == 1 ? Rational(1) : ratio[c];
    }
    result.productType = true;
    result.witness = std::move(w);
    return result;
}

std::string toString(FamilyVerdict verdict) {
    switch (verdict) {
        case FamilyVerdict::ProductTypeFp:
            return "PRODUCT_TYPE_FP";
        case FamilyVerdict::PureAffineFp:
            return "PURE_AFFINE_FP";
        case FamilyVerdict::Hard:
            return "HARD";
    }
    return "?";
}

FunctionReport classifyFunction(const std::string& name, const WeightFunction& f) {
    requireBoolean(f.domainSize(), "classification");
    FunctionReport report;
    report.name = name;
    auto product = isProductType(f);
    report.productType = product.productType;
    report.witness = std::move(product.witness);
    report.affineSupport = hasAffineSupport(f);
    report.pureAffineWeight = pureAffineWeight(f);
    report.pureAffine = report.pureAffineWeight.has_value();
    auto like = isProductLike(f);
    report.productLike = like.productLike;
    report.lambdas = std::move(like.lambdas);
    return report;
}

Verdict classifyFamily(const std::vector<std::pair<std::string, WeightFunction>>& family) {
    Verdict verdict;
    std::optional<std::string> notProduct, notPure;
    for (const auto& [name, f] : family) {
        verdict.perFunction.push_back(classifyFunction(name, f));
        const auto& r = verdict.perFunction.back();
        if (!r.productType && !notProduct) notProduct = name;
        if (!r.pureAffine && !notPure) notPure = name;
    }
    if (!notProduct) {
        verdict.family = FamilyVerdict::ProductTypeFp;
    } else if (!notPure) {
        verdict.family = FamilyVerdict::PureAffineFp;
    } else {
        verdict.family = FamilyVerdict::Hard;
        verdict.hardPair = std::make_pair(*notProduct, *notPure);
    }
    return verdict;
}

Verdict classifyInstance(const Instance& instance) {
    std::vector<std::pair<std::string, WeightFunction>> family;
    for (const auto& name : instance.usedFunctions()) family.emplace_back(name, instance.function(name));
    return classifyFamily(family);
}

}  // namespace wcsp
