#include "wcsp/tractable.hpp"

#include <map>
#include <numeric>

namespace wcsp {

ParityUnionFind::ParityUnionFind(std::size_t size) : parent_(size), parity_(size, false), rank_(size, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

ParityUnionFind::Found ParityUnionFind::find(std::size_t v) {
    // Iterative find with path compression; chains can be long.
    std::vector<std::size_t> path;
    std::size_t root = v;
    while (parent_[root] != root) {
        path.push_back(root);
        root = parent_[root];
    }
    bool toRoot = false;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        toRoot ^= parity_[*it];
        parent_[*it] = root;
        parity_[*it] = toRoot;
    }
    return {root, path.empty() ? false : static_cast<bool>(parity_[v])};
}

bool ParityUnionFind::unite(std::size_t a, std::size_t b, bool parity) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == parity;
    if (rank_[ra] < rank_[rb]) {
        std::swap(ra, rb);
        std::swap(pa, pb);
    }
    // value(rb) = value(ra) ^ pa ^ pb ^ parity
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ parity;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
}

Rational ClassDecomposition::partitionFunction() const {
    Rational z = globalScale;
    for (const auto& c : classes) {
        if (z == 0) break;
        z *= c.alpha + c.beta;
    }
    return z;
}

ClassDecomposition decomposeProductType(const Instance& instance) {
    if (instance.domainSize() != 2) throw Refusal("product-type evaluation needs a Boolean instance");

    std::map<std::string, ProductTypeWitness> witnesses;
    for (const auto& name : instance.usedFunctions()) {
        auto result = isProductType(instance.function(name));
        if (!result.productType) {
            throw Refusal("function '" + name + "' is not of product type; use the brute-force oracle");
        }
        witnesses.emplace(name, std::move(*result.witness));
    }

    const auto n = static_cast<std::size_t>(instance.numVariables());
    ParityUnionFind uf(n);
    std::vector<Rational> weight0(n, Rational(1)), weight1(n, Rational(1));
    std::vector<std::size_t> contradictions;

    ClassDecomposition out;
    out.globalScale = 1;
    for (const auto& c : instance.constraints()) {
        const ProductTypeWitness& w = witnesses.at(c.function);
        if (w.scale != 1) out.globalScale *= w.scale;
        for (const auto& [index, value] : w.constantColumns) {
            auto v = static_cast<std::size_t>(c.scope[static_cast<std::size_t>(index)]);
            (value == 0 ? weight1 : weight0)[v] = 0;
        }
        for (const auto& cls : w.classes) {
            auto rep = static_cast<std::size_t>(c.scope[static_cast<std::size_t>(cls.members.front().index)]);
            for (const auto& m : cls.members) {
                auto v = static_cast<std::size_t>(c.scope[static_cast<std::size_t>(m.index)]);
                if (!uf.unite(rep, v, m.complemented)) contradictions.push_back(rep);
            }
            if (cls.weight0 != 1) weight0[rep] *= cls.weight0;
            if (cls.weight1 != 1) weight1[rep] *= cls.weight1;
        }
    }

    std::vector<std::size_t> classOf(n, 0);
    std::map<std::size_t, std::size_t> rootToClass;
    for (std::size_t v = 0; v < n; ++v) {
        auto [root, parity] = uf.find(v);
        auto [it, inserted] = rootToClass.emplace(root, out.classes.size());
        if (inserted) out.classes.push_back({{}, {}, Rational(1), Rational(1)});
        auto& cls = out.classes[it->second];
        cls.variables.push_back(static_cast<int>(v));
        cls.parities.push_back(parity);
        // Root at 0 puts v at `parity`; root at 1 puts v at `!parity`.
        cls.alpha *= parity ? weight1[v] : weight0[v];
        cls.beta *= parity ? weight0[v] : weight1[v];
    }
    for (std::size_t r : contradictions) {
        auto& cls = out.classes[rootToClass.at(uf.find(r).root)];
        cls.alpha = 0;
        cls.beta = 0;
    }
    return out;
}

Rational evalProductType(const Instance& instance) { return decomposeProductType(instance).partitionFunction(); }

namespace {

struct PureAffineData {
    Rational weight;
    Gf2System system;
};

std::map<std::string, PureAffineData> pureAffineCatalog(const Instance& instance) {
    if (instance.domainSize() != 2) throw Refusal("pure-affine evaluation needs a Boolean instance");
    std::map<std::string, PureAffineData> data;
    for (const auto& name : instance.usedFunctions()) {
        const WeightFunction& f = instance.function(name);
        auto w = pureAffineWeight(f);
        if (!w) throw Refusal("function '" + name + "' is not pure affine; use the brute-force oracle");
        data.emplace(name, PureAffineData{*w, affineSystemOf(underlyingRelation(f))});
    }
    return data;
}

Gf2System buildSystem(const Instance& instance, const std::map<std::string, PureAffineData>& data) {
    Gf2System system(static_cast<std::size_t>(instance.numVariables()));
    std::vector<int> vars;
    for (const auto& c : instance.constraints()) {
        for (const auto& row : data.at(c.function).system.rows()) {
            vars.clear();
            for (std::size_t i = 0; i < c.scope.size(); ++i) {
                if (row.coefficients.get(i)) vars.push_back(c.scope[i]);
            }
            system.addEquation(vars, row.constant);
        }
    }
    return system;
}

}  // namespace

Gf2System instanceSystem(const Instance& instance) { return buildSystem(instance, pureAffineCatalog(instance)); }

Rational evalPureAffine(const Instance& instance) {
    const auto data = pureAffineCatalog(instance);
    std::map<std::string, unsigned long> occurrences;
    for (const auto& c : instance.constraints()) ++occurrences[c.function];
    Rational z(countGf2Solutions(buildSystem(instance, data)));
    for (const auto& [name, count] : occurrences) z *= power(data.at(name).weight, count);
    return z;
}

std::string toString(EvaluatorKind kind) {
    switch (kind) {
        case EvaluatorKind::ProductType:
            return "product-type";
        case EvaluatorKind::PureAffine:
            return "pure-affine";
        case EvaluatorKind::BruteForce:
            return "brute-force";
    }
    return "?";
}

Evaluation evaluate(const Instance& instance, const Budget& budget, bool forceOracle) {
    if (forceOracle || instance.domainSize() != 2) {
        return {bruteForceZ(instance, budget), EvaluatorKind::BruteForce, std::nullopt};
    }
    Verdict verdict = classifyInstance(instance);
    switch (verdict.family) {
        case FamilyVerdict::ProductTypeFp:
            return {evalProductType(instance), EvaluatorKind::ProductType, std::move(verdict)};
        case FamilyVerdict::PureAffineFp:
            return {evalPureAffine(instance), EvaluatorKind::PureAffine, std::move(verdict)};
        case FamilyVerdict::Hard:
            break;
    }
    return {bruteForceZ(instance, budget), EvaluatorKind::BruteForce, std::move(verdict)};
}

}  // namespace wcsp
