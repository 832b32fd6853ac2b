#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wcsp/generate.hpp"
#include "wcsp/gf2.hpp"
#include "wcsp/tractable.hpp"

#include <bit>
#include <chrono>

using namespace wcsp;

namespace {

Instance single(const std::string& name, const WeightFunction& f, int n, std::vector<std::vector<int>> scopes) {
    Instance in(n, 2);
    in.addFunction(name, f);
    for (auto& s : scopes) in.addConstraint(name, std::move(s));
    return in;
}

BitRow bits(std::size_t n, std::uint64_t mask) {
    BitRow r(n);
    for (std::size_t i = 0; i < n; ++i) r.set(i, (mask >> i) & 1u);
    return r;
}

// Solutions of a system, by enumeration, as the set of masks (bit i = x_i).
std::set<std::uint64_t> solutions(const Gf2System& s) {
    std::set<std::uint64_t> out;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << s.numVariables()); ++x) {
        if (s.satisfiedBy(bits(s.numVariables(), x))) out.insert(x);
    }
    return out;
}

// Relation tuple index (x_1 most significant) to the mask used above.
std::uint64_t indexToMask(std::size_t idx, int arity) {
    std::uint64_t m = 0;
    for (int i = 0; i < arity; ++i) {
        if ((idx >> (arity - 1 - i)) & 1u) m |= std::uint64_t{1} << i;
    }
    return m;
}

}  // namespace

TEST_CASE("parity union-find") {
    ParityUnionFind uf(4);
    CHECK(uf.unite(0, 1, true));
    CHECK(uf.unite(1, 2, true));
    CHECK(uf.find(2).parity == uf.find(0).parity);
    CHECK(uf.find(2).root == uf.find(0).root);
    CHECK_FALSE(uf.unite(0, 2, true));
    CHECK(uf.unite(0, 2, false));
    CHECK(uf.find(3).root == 3);
}

TEST_CASE("evalProductType examples") {
    Instance a(2, 2);
    a.addFunction("neq", library::disequality());
    a.addFunction("u2", library::unaryWeight(Rational(2)));
    a.addConstraint("neq", {0, 1});
    a.addConstraint("u2", {0});
    CHECK(evalProductType(a) == 3);

    Instance tri = single("neq", library::disequality(), 3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(evalProductType(tri) == 0);

    CHECK(evalProductType(Instance(1, 2)) == 2);
    CHECK(evalProductType(Instance(0, 2)) == 1);

    Instance hard = single("xor3", library::parity(3), 3, {{0, 1, 2}});
    CHECK_THROWS_AS(evalProductType(hard), Refusal);

    // Repeated variables inside a scope.
    Instance rep = single("neq", library::disequality(), 1, {{0, 0}});
    CHECK(evalProductType(rep) == 0);
    Instance f = single("f", WeightFunction(2, 2, {1, 3, 2, 6}), 1, {{0, 0}});
    CHECK(evalProductType(f) == 7);
}

TEST_CASE("class decomposition") {
    Instance in = single("eq", library::equality(), 4, {{0, 1}, {2, 3}});
    ClassDecomposition d = decomposeProductType(in);
    CHECK(d.classes.size() == 2);
    CHECK(d.partitionFunction() == 4);
    std::size_t vars = 0;
    for (const auto& c : d.classes) vars += c.variables.size();
    CHECK(vars == 4);
}

TEST_CASE("affineSystemOf examples") {
    Gf2System odd = affineSystemOf(underlyingRelation(library::parity(3)));
    REQUIRE(odd.rows().size() == 1);
    CHECK(odd.rows()[0].coefficients.popcount() == 3);
    CHECK(odd.rows()[0].constant);

    Gf2System eq = affineSystemOf(underlyingRelation(library::equality()));
    REQUIRE(eq.rows().size() == 1);
    CHECK(eq.rows()[0].coefficients.popcount() == 2);
    CHECK_FALSE(eq.rows()[0].constant);

    CHECK(affineSystemOf(Relation(2, 2, {0, 1, 2, 3})).rows().empty());

    Gf2System none = affineSystemOf(Relation(2, 2, {}));
    CHECK(countGf2Solutions(none) == 0);

    CHECK_THROWS_AS(affineSystemOf(Relation(2, 2, {1, 2, 3})), InputError);
}

TEST_CASE("affineSystemOf round trip over every affine relation of arity <= 4") {
    for (int k = 1; k <= 4; ++k) {
        for (auto mask : oracle::affineSupports(k)) {
            if (mask == 0) continue;
            std::vector<std::size_t> tuples;
            std::set<std::uint64_t> expected;
            for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
                if ((mask >> i) & 1u) {
                    tuples.push_back(i);
                    expected.insert(indexToMask(i, k));
                }
            }
            CHECK(solutions(affineSystemOf(Relation(k, 2, tuples))) == expected);
        }
    }
}

TEST_CASE("property: affineSystemOf round trip on random affine relations, arity <= 12") {
    Rng rng(31);
    for (int t = 0; t < 40; ++t) {
        const int k = 1 + rng.below(12);
        WeightFunction f = randomPureAffineFunction(rng, k);
        Relation r = underlyingRelation(f);
        Gf2System s = affineSystemOf(r);
        std::set<std::uint64_t> expected;
        for (auto idx : r.tuples()) expected.insert(indexToMask(idx, k));
        CHECK(solutions(s) == expected);
    }
}

TEST_CASE("affine column balance") {
    for (int k = 1; k <= 4; ++k) {
        for (auto mask : oracle::affineSupports(k)) {
            if (mask == 0) continue;
            for (int col = 0; col < k; ++col) {
                int zeros = 0, ones = 0;
                for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) {
                    if (!((mask >> i) & 1u)) continue;
                    (oracle::bitOf(i, k, col) ? ones : zeros) += 1;
                }
                CHECK((zeros == 0 || ones == 0 || zeros == ones));
            }
        }
    }
}

TEST_CASE("countGf2Solutions") {
    Gf2System a(3);
    a.addEquation({0, 1, 2}, true);
    CHECK(countGf2Solutions(a) == 4);

    Gf2System b(1);
    b.addEquation({0}, false);
    b.addEquation({0}, true);
    CHECK(countGf2Solutions(b) == 0);

    CHECK(countGf2Solutions(Gf2System(5)) == 32);

    Gf2System c(2);
    c.addEquation({0, 0, 1}, true);  // x0 cancels
    CHECK(countGf2Solutions(c) == 2);

    Gf2System wide(200);
    for (int i = 0; i + 1 < 200; ++i) wide.addEquation({i, i + 1}, false);
    CHECK(countGf2Solutions(wide) == 2);
}

TEST_CASE("property: countGf2Solutions matches enumeration, up to 20 variables") {
    Rng rng(32);
    for (int t = 0; t < 60; ++t) {
        const int n = 1 + rng.below(20);
        Gf2System s(static_cast<std::size_t>(n));
        const int m = rng.below(n + 3);
        for (int e = 0; e < m; ++e) {
            BitRow row(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) row.set(static_cast<std::size_t>(i), rng.coin());
            s.addRow(row, rng.coin());
        }
        CHECK(countGf2Solutions(s) == BigInt(static_cast<unsigned long>(solutions(s).size())));
    }
}

TEST_CASE("bit rows") {
    BitRow a(130), b(130);
    a.set(3);
    a.set(129);
    b.set(129);
    CHECK(a.dot(b));
    CHECK(a.popcount() == 2);
    a ^= b;
    CHECK(a.popcount() == 1);
    CHECK(a.get(3));
    a.flip(3);
    CHECK_FALSE(a.any());
    CHECK(gf2Rank({bits(3, 1), bits(3, 2), bits(3, 3)}) == 2);
}

TEST_CASE("evalPureAffine examples") {
    CHECK(evalPureAffine(single("xor3", library::parity(3), 3, {{0, 1, 2}})) == 4);
    CHECK(evalPureAffine(single("x", library::scaled(library::parity(3), 3), 3, {{0, 1, 2}, {0, 1, 2}})) == 36);
    CHECK(evalPureAffine(single("xor3", library::parity(3), 2, {{0, 0, 1}})) == 2);
    CHECK_THROWS_AS(evalPureAffine(single("u", library::unaryWeight(Rational(2)), 1, {{0}})), Refusal);
    CHECK(evalPureAffine(Instance(3, 2)) == 8);
}

TEST_CASE("property: tractable evaluators match the oracle") {
    Rng rng(33);
    for (int t = 0; t < 150; ++t) {
        GenOptions opt{1 + rng.below(12), rng.below(21), 1 + rng.below(3), 3};
        Instance pt = genRandomInstance(Profile::ProductType, rng.raw(), opt);
        CHECK(evalProductType(pt) == bruteForceZ(pt));
        opt.maxArity = 4;
        Instance pa = genRandomInstance(Profile::PureAffine, rng.raw(), opt);
        CHECK(evalPureAffine(pa) == bruteForceZ(pa));
    }
}

TEST_CASE("evaluate selects the evaluator from the verdict") {
    Instance pt = single("neq", library::disequality(), 2, {{0, 1}});
    auto e1 = evaluate(pt);
    CHECK((e1.evaluator == EvaluatorKind::ProductType));
    CHECK(e1.z == 2);
    REQUIRE(e1.verdict.has_value());

    auto e2 = evaluate(single("xor3", library::parity(3), 3, {{0, 1, 2}}));
    CHECK((e2.evaluator == EvaluatorKind::PureAffine));
    CHECK(e2.z == 4);

    Instance hard = single("f", WeightFunction(2, 2, {1, 1, 1, 2}), 3, {{0, 1}, {1, 2}});
    auto e3 = evaluate(hard);
    CHECK((e3.evaluator == EvaluatorKind::BruteForce));
    CHECK(e3.z == bruteForceZ(hard));

    auto e4 = evaluate(pt, {}, true);
    CHECK((e4.evaluator == EvaluatorKind::BruteForce));
    CHECK_FALSE(e4.verdict.has_value());

    Instance big = single("f", WeightFunction(2, 2, {1, 1, 1, 2}), 40, {{0, 1}});
    CHECK_THROWS_AS(evaluate(big), Refusal);

    Instance q3(2, 3);
    q3.addFunction("neq", library::disequality(3));
    q3.addConstraint("neq", {0, 1});
    CHECK(evaluate(q3).z == 6);
    CHECK((evaluate(q3).evaluator == EvaluatorKind::BruteForce));

    CHECK(toString(EvaluatorKind::ProductType) == "product-type");
    CHECK(toString(EvaluatorKind::PureAffine) == "pure-affine");
    CHECK(toString(EvaluatorKind::BruteForce) == "brute-force");
}

TEST_CASE("product-type chain of 10^4 disequalities") {
    const int n = 10000;
    Instance in(n, 2);
    in.addFunction("neq", library::disequality());
    for (int i = 0; i + 1 < n; ++i) in.addConstraint("neq", {i, i + 1});
    CHECK(evalProductType(in) == 2);
    in.addConstraint("neq", {0, n - 1});  // even cycle (n even)
    CHECK(evalProductType(in) == 2);
}
