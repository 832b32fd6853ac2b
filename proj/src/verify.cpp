#include "wcsp/verify.hpp"

#include "wcsp/classifier.hpp"
#include "wcsp/generate.hpp"
#include "wcsp/json_io.hpp"
#include "wcsp/models.hpp"
#include "wcsp/reductions.hpp"
#include "wcsp/tractable.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace wcsp {

namespace {

// A case returns a failure description, or nullopt when the invariant holds.
using CaseFn = std::function<std::optional<std::string>(Rng&, bool corrupt)>;

struct Invariant {
    std::string suite;
    std::string name;
    CaseFn run;
};

std::string mismatch(const Rational& expected, const Rational& actual, const Instance& instance) {
    return "expected " + toString(expected) + ", got " + toString(actual) + " on " + serialize(instance);
}

Evaluator oracle(bool corrupt) {
    return [corrupt](const Instance& in) {
        if (!corrupt) return bruteForceZ(in);
        Instance copy = in;
        corruptInstance(copy);
        return bruteForceZ(copy);
    };
}

std::vector<Invariant> registry() {
    std::vector<Invariant> all;

    all.push_back({"oracle", "product-type-eval", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       GenOptions opt{1 + rng.below(10), rng.below(16), 1 + rng.below(3), 3};
                       Instance in = genRandomInstance(Profile::ProductType, rng.raw(), opt);
                       Instance fast = in;
                       if (corrupt) corruptInstance(fast);
                       Rational expected = bruteForceZ(in), actual = evalProductType(fast);
                       if (expected != actual) return mismatch(expected, actual, in);
                       return std::nullopt;
                   }});

    all.push_back({"oracle", "pure-affine-eval", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       GenOptions opt{1 + rng.below(10), rng.below(16), 1 + rng.below(3), 4};
                       Instance in = genRandomInstance(Profile::PureAffine, rng.raw(), opt);
                       Instance fast = in;
                       if (corrupt) corruptInstance(fast);
                       Rational expected = bruteForceZ(in);
                       Rational actual = evalPureAffine(fast);
                       if (expected != actual) return mismatch(expected, actual, in);
                       return std::nullopt;
                   }});

    all.push_back({"reductions", "projection-sim", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       const int k = 2 + rng.below(2);
                       WeightFunction f = randomTable(rng, k, 2, 2);
                       std::vector<int> keep;
                       for (int i = 0; i < k; ++i) {
                           if (rng.coin()) keep.push_back(i);
                       }
                       Instance in = randomInstanceOver(
                           rng, {{"g", project(f, keep)}, {"u", randomTable(rng, 1, 2, 3)}}, 1 + rng.below(6),
                           1 + rng.below(5));
                       Instance out = simulateProjectionInstance(in, "g", "f", f, keep);
                       if (corrupt) corruptInstance(out);
                       Rational expected = bruteForceZ(in), actual = bruteForceZ(out);
                       if (expected != actual) return mismatch(expected, actual, in);
                       return std::nullopt;
                   }});

    all.push_back({"reductions", "pin-sim", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       const int k = 1 + rng.below(3);
                       WeightFunction f = randomTable(rng, k, 2, 2);
                       const int i = rng.below(k), value = rng.below(2);
                       Instance in = randomInstanceOver(rng, {{"g", pinCoordinate(f, i, value)}, {"u", randomTable(rng, 1, 2, 3)}},
                                                        1 + rng.below(6), 1 + rng.below(5));
                       Instance out = simulatePinInstance(in, "g", "f", f, i, value);
                       if (corrupt) corruptInstance(out);
                       Rational expected = bruteForceZ(in), actual = bruteForceZ(out);
                       if (expected != actual) return mismatch(expected, actual, in);
                       return std::nullopt;
                   }});

    all.push_back({"reductions", "boolean-pinning", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       GenOptions opt{1 + rng.below(8), rng.below(10), 1 + rng.below(2), 3};
                       Instance in = genRandomInstance(Profile::Mixed, rng.raw(), opt);
                       Rational expected = bruteForceZ(in);
                       Rational actual = pinningReduceBoolean(in, oracle(corrupt));
                       if (expected != actual) return mismatch(expected, actual, in);
                       return std::nullopt;
                   }});

    all.push_back({"reductions", "interpolation", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       static const Rational cs[] = {Rational(0), Rational(1, 2), Rational(3), Rational(7)};
                       static const Rational lambdas[] = {Rational(2), Rational(1, 2), Rational(3)};
                       const int n = 1 + rng.below(6);
                       Instance in = randomInstanceOver(rng, {{"f", randomTable(rng, 2, 2, 2)}}, n, rng.below(5));
                       in.addFunction("Uc", library::unaryWeight(cs[rng.below(4)]));
                       const int m = rng.below(7);
                       for (int j = 0; j < m; ++j) in.addConstraint("Uc", {rng.below(n)});
                       Rational expected = bruteForceZ(in);
                       Rational actual = interpolationReduce(in, "Uc", lambdas[rng.below(3)], oracle(corrupt)).value;
                       if (expected != actual) return mismatch(expected, actual, in);
                       return std::nullopt;
                   }});

    all.push_back({"reductions", "mobius", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       const int q = 2 + rng.below(2);
                       const int n = q + rng.below(3);
                       Instance in = randomInstanceOver(rng, {{"f", randomTable(rng, 2, q, 2)}}, n, rng.below(5));
                       in.addFunction("alldiff", library::allDistinct(q));
                       std::vector<int> ts;
                       for (int v = 0; v < q; ++v) ts.push_back(v);
                       in.addConstraint("alldiff", ts);
                       Rational expected = bruteForceZ(in);
                       Rational actual = mobiusPinningReduce(in, oracle(corrupt));
                       if (expected != actual) return mismatch(expected, actual, in);
                       return std::nullopt;
                   }});

    all.push_back({"reductions", "parity-chain", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       const int k = 1 + rng.below(10);
                       ParityGadget g = parityChain(k);
                       if (corrupt) corruptInstance(g.instance);
                       Rational expected = power(Rational(2), static_cast<unsigned long>(k - 1));
                       Rational actual = deltaPinnedZ(g.instance);
                       if (expected != actual) return "k = " + std::to_string(k) + ": " + mismatch(expected, actual, g.instance);
                       return std::nullopt;
                   }});

    all.push_back({"cut", "cut-identity", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       static const Rational lambdas[] = {Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(3)};
                       Graph g = randomConnectedGraph(rng, 1 + rng.below(7), 30);
                       const Rational& lambda = lambdas[rng.below(5)];
                       Rational w = weightEnumerator(incidenceCode(g), lambda);
                       Instance ising = graphHomInstance(TargetMatrix::ising(lambda), g);
                       if (corrupt) corruptInstance(ising);
                       Rational z = bruteForceZ(ising);
                       if (2 * w != z) return "W = " + toString(w) + ", Z = " + toString(z) + " on " + serialize(ising);
                       return std::nullopt;
                   }});

    all.push_back({"classifier", "witness", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       const int k = rng.below(5);
                       WeightFunction f = rng.coin() ? randomProductTypeFunction(rng, k) : randomTable(rng, k, 2, 2);
                       auto result = isProductType(f);
                       if (!result.productType) return std::nullopt;
                       ProductTypeWitness w = *result.witness;
                       if (corrupt) w.scale = w.scale * 2 + 1;
                       if (!(w.reconstruct(k) == f)) return "witness does not rebuild " + toJson(f).dump();
                       return std::nullopt;
                   }});

    all.push_back({"classifier", "product-like-equivalence", [](Rng& rng, bool corrupt) -> std::optional<std::string> {
                       const int k = 1 + rng.below(4);
                       WeightFunction f = rng.coin() ? randomProductTypeFunction(rng, k) : randomTable(rng, k, 2, 2);
                       std::vector<Rational> table(f.table().begin(), f.table().end());
                       for (auto& v : table) {
                           if (v == 0) v = 1;  // every index useful
                       }
                       WeightFunction positive(k, 2, std::move(table));
                       bool productType = isProductType(positive).productType;
                       bool productLike = isProductLike(positive).productLike;
                       if (corrupt) productLike = !productLike;
                       if (productType != productLike) return "disagreement on " + toJson(positive).dump();
                       return std::nullopt;
                   }});

    return all;
}

}  // namespace

void corruptInstance(Instance& instance) {
    auto used = instance.usedFunctions();
    if (used.empty()) return;
    const WeightFunction& f = instance.function(used.front());
    std::vector<Rational> table(f.table().begin(), f.table().end());
    for (auto& v : table) v += 1;
    instance.addFunction(used.front(), WeightFunction(f.arity(), f.domainSize(), std::move(table)));
}

std::vector<std::string> suiteNames() { return {"oracle", "reductions", "cut", "classifier", "all"}; }

std::vector<std::string> invariantNames() {
    std::vector<std::string> names;
    for (const auto& inv : registry()) names.push_back(inv.name);
    return names;
}

std::vector<CheckOutcome> runSuite(const std::string& suite, const VerifyOptions& options) {
    if (suite.empty()) throw InputError("empty suite name (expected one of oracle, reductions, cut, classifier, all)");
    auto names = suiteNames();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw InputError("unknown suite '" + suite + "' (expected one of oracle, reductions, cut, classifier, all)");
    }
    if (!options.corrupt.empty()) {
        auto invariants = invariantNames();
        if (std::find(invariants.begin(), invariants.end(), options.corrupt) == invariants.end()) {
            throw InputError("unknown invariant '" + options.corrupt + "' to corrupt");
        }
    }

    std::vector<CheckOutcome> outcomes;
    std::uint64_t stream = 0;
    for (const auto& inv : registry()) {
        ++stream;
        if (suite != "all" && inv.suite != suite) continue;
        // Each invariant draws from its own stream so suites are reproducible
        // independently of each other.
        Rng rng(options.seed * 1000003u + stream);
        CheckOutcome outcome{inv.suite, inv.name, 0, 0, {}};
        const bool corrupt = options.corrupt == inv.name;
        for (int c = 0; c < options.cases; ++c) {
            ++outcome.cases;
            std::optional<std::string> failure;
            try {
                failure = inv.run(rng, corrupt);
            } catch (const Error& e) {
                failure = std::string("error: ") + e.what();
            }
            if (failure) {
                if (outcome.failures == 0) outcome.firstFailure = *failure;
                ++outcome.failures;
            }
        }
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

}  // namespace wcsp
