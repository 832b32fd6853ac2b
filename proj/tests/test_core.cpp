#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wcsp/core.hpp"
#include "wcsp/generate.hpp"
#include "wcsp/json_io.hpp"

#include <algorithm>

using namespace wcsp;

namespace {

WeightFunction table(int arity, std::vector<Rational> t) { return WeightFunction(arity, 2, std::move(t)); }

Instance neqPair() {
    Instance in(2, 2);
    in.addFunction("neq", library::disequality());
    in.addConstraint("neq", {0, 1});
    return in;
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parseRational("3") == 3);
    CHECK(parseRational("6/4") == Rational(3, 2));
    CHECK(parseRational("0.5") == Rational(1, 2));
    CHECK(parseRational("0") == 0);
    CHECK_THROWS_AS(parseRational("-1"), InputError);
    CHECK_THROWS_AS(parseRational("1/0"), InputError);
    CHECK_THROWS_AS(parseRational("abc"), InputError);
    CHECK_THROWS_AS(parseRational(""), InputError);
    CHECK(toString(parseRational("6/4")) == "3/2");
    CHECK(toString(Rational(8)) == "8");
    CHECK(toDecimal(Rational(1, 3), 5) == "0.33333");
    Rational root;
    CHECK(exactSqrt(Rational(9, 4), root));
    CHECK(root == Rational(3, 2));
    CHECK_FALSE(exactSqrt(Rational(2), root));
    CHECK(power(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(power(Rational(5), 0) == 1);
}

TEST_CASE("weight function construction and indexing") {
    CHECK_THROWS_AS(WeightFunction(2, 2, {1, 2, 3}), InputError);
    CHECK_THROWS_AS(WeightFunction(1, 1, {1}), InputError);
    CHECK_THROWS_AS(WeightFunction(1, 2, {Rational(1), Rational(-1)}), InputError);

    WeightFunction c(0, 2, {Rational(7)});
    CHECK(c.lookup(std::span<const int>{}) == 7);

    // x_1 is the most significant digit.
    WeightFunction f(2, 3, {0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(f.lookup({1, 2}) == 5);
    CHECK(f.indexOf(std::vector<int>{2, 0}) == 6);
    CHECK(f.tupleOf(7) == Tuple{2, 1});
    CHECK(f.stride(0) == 3);
    CHECK(f.stride(1) == 1);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.indexOf(f.tupleOf(i)) == i);
}

TEST_CASE("lookup") {
    CHECK(library::disequality().lookup({0, 1}) == 1);
    CHECK(library::disequality().lookup({1, 1}) == 0);
    CHECK(library::delta(0).lookup({1}) == 0);
    CHECK_THROWS_AS(library::delta(0).lookup({0, 0}), InputError);
    CHECK_THROWS_AS(library::delta(0).lookup({2}), InputError);
}

TEST_CASE("library functions") {
    CHECK(library::parity(3) == table(3, {0, 1, 1, 0, 1, 0, 0, 1}));
    CHECK(library::evenParity(2) == table(2, {1, 0, 0, 1}));
    CHECK(library::equality() == table(2, {1, 0, 0, 1}));
    CHECK(library::unaryWeight(Rational(5)) == table(1, {1, 5}));
    WeightFunction ad = library::allDistinct(3);
    CHECK(ad.arity() == 3);
    int ones = 0;
    for (auto v : ad.table()) ones += v == 1;
    CHECK(ones == 6);
    WeightFunction out;
    CHECK(library::lookupBuiltin("xor3", 2, out));
    CHECK(out == library::parity(3));
    CHECK(library::lookupBuiltin("unary:1/2", 2, out));
    CHECK(out == table(1, {1, Rational(1, 2)}));
    CHECK(library::lookupBuiltin("delta1", 2, out));
    CHECK(out == table(1, {0, 1}));
    CHECK_FALSE(library::lookupBuiltin("nope", 2, out));
}

TEST_CASE("instance validation") {
    Instance in(2, 2);
    in.addFunction("neq", library::disequality());
    CHECK_THROWS_AS(in.addConstraint("neq", {0}), InputError);
    CHECK_THROWS_AS(in.addConstraint("neq", {0, 2}), InputError);
    CHECK_THROWS_AS(in.addConstraint("missing", {0}), InputError);
    CHECK_THROWS_AS(in.addFunction("bad", library::disequality(3)), InputError);
    in.addConstraint("neq", {1, 1});  // repeats allowed
    CHECK_THROWS_AS(in.addFunction("neq", library::delta(0)), InputError);
    CHECK_THROWS_AS(in.removeFunction("neq"), InputError);
    CHECK(in.freshName("neq") != "neq");
    CHECK(in.usedFunctions() == std::vector<std::string>{"neq"});
}

TEST_CASE("weight") {
    Instance in = neqPair();
    CHECK(weight(in, std::vector<int>{0, 1}) == 1);
    in.addFunction("delta0", library::delta(0));
    in.addConstraint("delta0", {0});
    CHECK(weight(in, std::vector<int>{1, 0}) == 0);
    Instance empty(3, 2);
    CHECK(weight(empty, std::vector<int>{1, 0, 1}) == 1);
    CHECK_THROWS_AS(weight(empty, std::vector<int>{1}), InputError);
}

TEST_CASE("bruteForceZ") {
    CHECK(bruteForceZ(neqPair()) == 2);

    Instance x(3, 2);
    x.addFunction("xor3", library::parity(3));
    x.addConstraint("xor3", {0, 1, 2});
    CHECK(bruteForceZ(x) == 4);

    Instance f(2, 2);
    f.addFunction("f", table(2, {1, 3, 2, 6}));
    f.addConstraint("f", {0, 1});
    CHECK(bruteForceZ(f) == 12);

    CHECK(bruteForceZ(Instance(0, 2)) == 1);
    CHECK(bruteForceZ(Instance(1, 2)) == 2);
    CHECK(bruteForceZ(Instance(2, 3)) == 9);

    Budget small{16};
    CHECK_THROWS_AS(bruteForceZ(Instance(5, 2), small), Refusal);
    CHECK(bruteForceZ(Instance(4, 2), small) == 16);
}

TEST_CASE("bruteForceZ parallel path is deterministic") {
    Rng rng(7);
    Instance in = randomInstanceOver(rng, {{"f", randomTable(rng, 3, 2, 3)}, {"u", randomTable(rng, 1, 2, 5)}}, 17, 30);
    Rational a = bruteForceZ(in), b = bruteForceZ(in);
    CHECK(a == b);
}

TEST_CASE("conditionedZ") {
    Instance in = neqPair();
    std::vector<std::pair<int, int>> one{{0, 0}}, both{{0, 0}, {1, 0}}, none;
    CHECK(conditionedZ(in, one) == 1);
    CHECK(conditionedZ(in, both) == 0);
    CHECK(conditionedZ(in, none) == bruteForceZ(in));
    std::vector<std::pair<int, int>> conflict{{0, 0}, {0, 1}}, twice{{0, 1}, {0, 1}}, bad{{0, 2}};
    CHECK_THROWS_AS(conditionedZ(in, conflict), InputError);
    CHECK_THROWS_AS(conditionedZ(in, twice), InputError);
    CHECK_THROWS_AS(conditionedZ(in, bad), InputError);
}

TEST_CASE("property: brute force agrees with plain enumeration") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int q = 2 + rng.below(2);
        Instance in = randomInstanceOver(
            rng, {{"f", randomTable(rng, 2, q, 3)}, {"g", randomTable(rng, 3, q, 2)}, {"u", randomTable(rng, 1, q, 4)}},
            1 + rng.below(6), rng.below(8));
        CHECK(bruteForceZ(in) == oracle::plainZ(in));
    }
}

TEST_CASE("property: free variable multiplies Z by q") {
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const int q = 2 + rng.below(2);
        Instance in = randomInstanceOver(rng, {{"f", randomTable(rng, 2, q, 3)}}, 1 + rng.below(5), rng.below(6));
        Rational z = bruteForceZ(in);
        in.addVariable();
        CHECK(bruteForceZ(in) == z * q);
    }
}

TEST_CASE("property: constraint order and variable relabeling do not change Z") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + rng.below(6);
        Instance in = randomInstanceOver(rng, {{"f", randomTable(rng, 2, 2, 3)}, {"g", randomTable(rng, 3, 2, 2)}}, n,
                                         rng.below(8));
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.below(i + 1))]);
        std::vector<Constraint> cs = in.constraints();
        for (int i = static_cast<int>(cs.size()) - 1; i > 0; --i) std::swap(cs[static_cast<std::size_t>(i)], cs[static_cast<std::size_t>(rng.below(i + 1))]);
        Instance out(n, 2);
        for (const auto& [name, f] : in.functions()) out.addFunction(name, f);
        for (auto c : cs) {
            for (int& v : c.scope) v = perm[static_cast<std::size_t>(v)];
            out.addConstraint(c.function, c.scope);
        }
        CHECK(bruteForceZ(in) == bruteForceZ(out));
    }
}

TEST_CASE("property: law of total weight") {
    Rng rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const int q = 2 + rng.below(2);
        const int n = 1 + rng.below(5);
        Instance in = randomInstanceOver(rng, {{"f", randomTable(rng, 2, q, 3)}}, n, rng.below(6));
        const int v = rng.below(n);
        Rational sum(0);
        for (int c = 0; c < q; ++c) {
            std::vector<std::pair<int, int>> pin{{v, c}};
            sum += conditionedZ(in, pin);
        }
        CHECK(sum == bruteForceZ(in));
    }
}

TEST_CASE("property: scaling a table scales Z by K^uses") {
    Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        Instance in = randomInstanceOver(rng, {{"f", randomTable(rng, 2, 2, 3)}, {"g", randomTable(rng, 1, 2, 3)}},
                                         1 + rng.below(5), rng.below(7));
        const Rational k = rng.smallRational(false);
        int uses = 0;
        for (const auto& c : in.constraints()) uses += c.function == "f";
        Rational z = bruteForceZ(in);
        in.addFunction("f", library::scaled(in.function("f"), k));
        CHECK(bruteForceZ(in) == z * power(k, static_cast<unsigned long>(uses)));
    }
}

TEST_CASE("json: canonical form and round trip") {
    const std::string text =
        R"({"q":2,"n":3,"functions":{"xor3":{"arity":3,"table":["0","1","1","0","1","0","0","1"]}},"constraints":[{"f":"xor3","scope":[0,1,2]}]})";
    Instance in = parseInstance(text);
    CHECK(in.numVariables() == 3);
    CHECK(bruteForceZ(in) == 4);
    CHECK(serialize(in) == text);

    Rng rng(16);
    for (int trial = 0; trial < 30; ++trial) {
        Instance r = genRandomInstance(Profile::Mixed, rng.raw());
        CHECK(parseInstance(serialize(r)) == r);
        CHECK(serialize(parseInstance(serialize(r))) == serialize(r));
    }
}

TEST_CASE("json: built-ins, integer entries, fractions") {
    Instance in = parseInstance(
        R"({"n":2,"functions":{"u":{"arity":1,"table":[1,"1/2"]}},"constraints":[{"f":"neq","scope":[0,1]},{"f":"u","scope":[0]},{"f":"delta0","scope":[1]}]})");
    CHECK(in.domainSize() == 2);
    CHECK(in.function("u").lookup({1}) == Rational(1, 2));
    CHECK(bruteForceZ(in) == Rational(1, 2));
}

TEST_CASE("json: diagnostics name the offending field") {
    auto message = [](const std::string& text) {
        try {
            parseInstance(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"n":1,"functions":{"f":{"arity":1,"table":["1","-2"]}},"constraints":[]})")
              .find("$.functions.f.table[1]") != std::string::npos);
    CHECK(message(R"({"n":1,"functions":{"f":{"arity":2,"table":["1"]}},"constraints":[]})")
              .find("$.functions.f") != std::string::npos);
    CHECK(message(R"({"n":1,"constraints":[{"f":"nope","scope":[0]}]})").find("$.constraints[0]") !=
          std::string::npos);
    CHECK(message(R"({"n":1,"constraints":[{"f":"delta0","scope":[3]}]})").find("$.constraints[0]") !=
          std::string::npos);
    CHECK(message("{\"n\":1,\n  \"constraints\": [}").find("line 2") != std::string::npos);
    CHECK(message(R"({"constraints":[]})").find("n") != std::string::npos);
}
