#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wcsp/classifier.hpp"
#include "wcsp/generate.hpp"

using namespace wcsp;

namespace {

WeightFunction table(int arity, std::vector<Rational> t) { return WeightFunction(arity, 2, std::move(t)); }

Relation rel(int arity, std::vector<std::size_t> tuples) { return Relation(arity, 2, std::move(tuples)); }

// Tuples given as bit strings, x_1 first.
Relation relFromStrings(int arity, const std::vector<std::string>& rows) {
    std::vector<std::size_t> idx;
    for (const auto& r : rows) idx.push_back(std::stoul(r, nullptr, 2));
    return rel(arity, idx);
}

}  // namespace

TEST_CASE("underlyingRelation") {
    CHECK(underlyingRelation(table(2, {1, 3, 2, 6})).size() == 4);
    CHECK(underlyingRelation(library::delta(0)) == rel(1, {0}));
    CHECK(underlyingRelation(table(2, {0, 0, 0, 0})).empty());
}

TEST_CASE("isAffineRelation") {
    CHECK(isAffineRelation(relFromStrings(3, {"001", "010", "100", "111"})));
    CHECK_FALSE(isAffineRelation(relFromStrings(2, {"01", "10", "11"})));
    CHECK(isAffineRelation(rel(2, {})));
    CHECK_THROWS_AS(isAffineRelation(Relation(2, 3, {0})), Refusal);
}

TEST_CASE("hasAffineSupport") {
    CHECK(hasAffineSupport(library::parity(3)));
    CHECK_FALSE(hasAffineSupport(table(2, {1, 1, 1, 0})));
    Rng rng(1);
    for (int t = 0; t < 20; ++t) CHECK(hasAffineSupport(randomTable(rng, 1, 2, 3)));
}

TEST_CASE("isPureAffine") {
    CHECK(isPureAffine(library::scaled(library::parity(3), 3)));
    CHECK(pureAffineWeight(library::scaled(library::parity(3), 3)) == Rational(3));
    CHECK_FALSE(isPureAffine(table(2, {1, 0, 0, 3})));
    CHECK(isPureAffine(library::delta(1)));
    CHECK_FALSE(isPureAffine(table(2, {0, 0, 0, 0})));
    CHECK_FALSE(pureAffineWeight(table(1, {0, 0})).has_value());
}

TEST_CASE("usefulIndices") {
    CHECK(usefulIndices(table(2, {1, 3, 2, 6})) == std::vector<int>{0, 1});
    CHECK(usefulIndices(library::delta(0)).empty());
    // No y gives f(y, x_i = 0) > 0 and f(y, x_i = 1) > 0 at once.
    CHECK(usefulIndices(library::equality()).empty());
    CHECK(usefulIndices(library::disequality()).empty());
    CHECK(usefulIndices(table(2, {1, 1, 0, 0})) == std::vector<int>{1});
}

TEST_CASE("isProductLike") {
    auto r = isProductLike(table(2, {1, 3, 2, 6}));
    CHECK(r.productLike);
    REQUIRE(r.lambdas.size() == 2);
    CHECK(*r.lambdas[0] == Rational(1, 2));
    CHECK(*r.lambdas[1] == Rational(1, 3));

    auto s = isProductLike(table(2, {1, 1, 1, 2}));
    CHECK_FALSE(s.productLike);
    CHECK(s.failingIndex == 0);

    auto d = isProductLike(library::delta(0));
    CHECK(d.productLike);
    CHECK_FALSE(d.lambdas[0].has_value());

    // 0 = lambda * 0 rows do not constrain lambda.
    auto z = isProductLike(table(2, {2, 0, 1, 0}));
    CHECK(z.productLike);
    CHECK(*z.lambdas[0] == 2);
}

TEST_CASE("isProductType examples") {
    auto f = isProductType(table(2, {1, 3, 2, 6}));
    REQUIRE(f.productType);
    CHECK(f.witness->classes.size() == 2);
    CHECK(f.witness->reconstruct(2) == table(2, {1, 3, 2, 6}));

    auto neq = isProductType(library::disequality());
    REQUIRE(neq.productType);
    REQUIRE(neq.witness->classes.size() == 1);
    REQUIRE(neq.witness->classes[0].members.size() == 2);
    CHECK(neq.witness->classes[0].members[1].complemented);

    CHECK_FALSE(isProductType(library::parity(3)).productType);
    CHECK_FALSE(isProductType(table(2, {1, 1, 1, 2})).productType);

    auto zero = isProductType(table(2, {0, 0, 0, 0}));
    REQUIRE(zero.productType);
    CHECK(zero.witness->reconstruct(2) == table(2, {0, 0, 0, 0}));

    auto pinned = isProductType(table(3, {0, 0, 0, 0, 0, 2, 0, 0}));  // 2 * [x = 101]
    REQUIRE(pinned.productType);
    CHECK(pinned.witness->constantColumns.size() == 3);

    auto c = isProductType(WeightFunction(0, 2, {Rational(5)}));
    REQUIRE(c.productType);
    CHECK(c.witness->scale == 5);
}

TEST_CASE("product type agrees with exhaustive decomposition search, arity <= 2, values 0..3") {
    for (int k = 0; k <= 2; ++k) {
        auto generated = oracle::productTypeTables(k, oracle::ratiosUpTo(3), oracle::scalesUpTo(3));
        for (const auto& f : oracle::allTables(k, 3)) {
            std::vector<Rational> t(f.table().begin(), f.table().end());
            const bool expected = generated.contains(t);
            auto result = isProductType(f);
            CHECK_MESSAGE(result.productType == expected, "table of arity " << k);
            if (result.productType) CHECK(result.witness->reconstruct(k) == f);
        }
    }
}

TEST_CASE("pure affine agrees with the definition, arity <= 3, values 0..2") {
    for (int k = 0; k <= 3; ++k) {
        auto supports = oracle::affineSupports(k);
        for (const auto& f : oracle::allTables(k, 2)) {
            CHECK(isPureAffine(f) == oracle::pureAffine(f, supports));
            CHECK(hasAffineSupport(f) == supports.contains(oracle::supportMask(f)));
        }
    }
}

TEST_CASE("property: witness reconstruction on random product-type functions") {
    Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        const int k = rng.below(6);
        WeightFunction f = randomProductTypeFunction(rng, k);
        auto r = isProductType(f);
        REQUIRE(r.productType);
        CHECK(r.witness->reconstruct(k) == f);
        std::vector<bool> seen(static_cast<std::size_t>(k), false);
        for (const auto& [i, v] : r.witness->constantColumns) seen[static_cast<std::size_t>(i)] = true;
        int covered = static_cast<int>(r.witness->constantColumns.size());
        for (const auto& cls : r.witness->classes) {
            CHECK_FALSE(cls.members[0].complemented);
            for (const auto& m : cls.members) {
                CHECK_FALSE(seen[static_cast<std::size_t>(m.index)]);
                seen[static_cast<std::size_t>(m.index)] = true;
                ++covered;
            }
        }
        CHECK(covered == k);
    }
}

TEST_CASE("property: all-useful functions are product type iff product-like") {
    Rng rng(22);
    for (int t = 0; t < 400; ++t) {
        const int k = 1 + rng.below(4);
        WeightFunction f = rng.coin() ? randomProductTypeFunction(rng, k) : randomTable(rng, k, 2, 3);
        std::vector<Rational> table(f.table().begin(), f.table().end());
        for (auto& v : table) {
            if (v == 0) v = 1 + rng.below(2);
        }
        WeightFunction positive(k, 2, std::move(table));
        CHECK(isProductType(positive).productType == isProductLike(positive).productLike);
    }
}

TEST_CASE("property: pure affine functions have a single nonzero value") {
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        WeightFunction f = randomPureAffineFunction(rng, 1 + rng.below(5));
        REQUIRE(isPureAffine(f));
        for (auto v : f.table()) CHECK((v == 0 || v == *pureAffineWeight(f)));
    }
}

TEST_CASE("classifyFamily") {
    auto pt = classifyFamily({{"delta0", library::delta(0)},
                              {"delta1", library::delta(1)},
                              {"eq", library::equality()},
                              {"neq", library::disequality()},
                              {"u", library::unaryWeight(Rational(7, 2))}});
    CHECK((pt.family == FamilyVerdict::ProductTypeFp));
    CHECK_FALSE(pt.hardPair.has_value());

    auto pa = classifyFamily({{"xor3", library::parity(3)}, {"nxor3", library::scaled(library::evenParity(3), 5)}});
    CHECK((pa.family == FamilyVerdict::PureAffineFp));

    auto hard = classifyFamily({{"xor3", library::parity(3)}, {"u2", library::unaryWeight(Rational(2))}});
    CHECK((hard.family == FamilyVerdict::Hard));
    REQUIRE(hard.hardPair.has_value());
    CHECK(hard.hardPair->first == "xor3");
    CHECK(hard.hardPair->second == "u2");

    // Both regimes apply: product type wins.
    auto both = classifyFamily({{"eq", library::equality()}, {"delta0", library::delta(0)}});
    CHECK((both.family == FamilyVerdict::ProductTypeFp));
    CHECK(both.perFunction[0].pureAffine);

    CHECK((classifyFamily({}).family == FamilyVerdict::ProductTypeFp));

    auto self = classifyFamily({{"f", table(2, {1, 1, 1, 2})}});
    CHECK((self.family == FamilyVerdict::Hard));
    CHECK(self.hardPair->first == "f");
    CHECK(self.hardPair->second == "f");

    CHECK(toString(FamilyVerdict::ProductTypeFp) == "PRODUCT_TYPE_FP");
    CHECK(toString(FamilyVerdict::PureAffineFp) == "PURE_AFFINE_FP");
    CHECK(toString(FamilyVerdict::Hard) == "HARD");
}

TEST_CASE("classifyInstance only looks at used functions") {
    Instance in(3, 2);
    in.addFunction("xor3", library::parity(3));
    in.addFunction("u2", library::unaryWeight(Rational(2)));
    in.addConstraint("xor3", {0, 1, 2});
    CHECK((classifyInstance(in).family == FamilyVerdict::PureAffineFp));
    in.addConstraint("u2", {0});
    CHECK((classifyInstance(in).family == FamilyVerdict::Hard));
}
