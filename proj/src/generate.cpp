#include "wcsp/generate.hpp"

#include "wcsp/classifier.hpp"

#include <array>
#include <bit>
#include <set>

namespace wcsp {

Rational Rng::smallRational(bool allowZero) {
    static const std::array<Rational, 9> values{Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                                                Rational(3), Rational(1, 3), Rational(2, 3), Rational(5)};
    const int start = allowZero ? 0 : 1;
    return values[static_cast<std::size_t>(start + below(static_cast<int>(values.size()) - start))];
}

Profile parseProfile(const std::string& name) {
    if (name == "product-type") return Profile::ProductType;
    if (name == "pure-affine") return Profile::PureAffine;
    if (name == "mixed") return Profile::Mixed;
    if (name == "graph-hom") return Profile::GraphHom;
    throw InputError("unknown profile '" + name + "' (expected product-type, pure-affine, mixed or graph-hom)");
}

std::string toString(Profile profile) {
    switch (profile) {
        case Profile::ProductType:
            return "product-type";
        case Profile::PureAffine:
            return "pure-affine";
        case Profile::Mixed:
            return "mixed";
        case Profile::GraphHom:
            return "graph-hom";
    }
    return "?";
}

WeightFunction randomProductTypeFunction(Rng& rng, int arity) {
    std::vector<std::array<Rational, 2>> unary(static_cast<std::size_t>(arity));
    for (auto& u : unary) {
        switch (rng.below(5)) {
            case 0:
                u = {Rational(1), Rational(0)};  // delta_0
                break;
            case 1:
                u = {Rational(0), Rational(1)};  // delta_1
                break;
            default:
                u = {rng.smallRational(false), rng.smallRational(false)};
        }
    }
    // (i, j, kind): kind 1 is equality, 2 is disequality.
    std::vector<std::array<int, 3>> pairs;
    for (int i = 0; i < arity; ++i) {
        for (int j = i + 1; j < arity; ++j) {
            if (rng.below(3) == 0) pairs.push_back({i, j, 1 + rng.below(2)});
        }
    }
    const Rational scale = rng.smallRational(false);
    const std::size_t size = tableSize(arity, 2);
    std::vector<Rational> table(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        auto bit = [&](int i) { return static_cast<int>((idx >> (arity - 1 - i)) & 1u); };
        Rational v = scale;
        for (int i = 0; i < arity; ++i) v *= unary[static_cast<std::size_t>(i)][static_cast<std::size_t>(bit(i))];
        for (const auto& [i, j, kind] : pairs) {
            const bool equal = bit(i) == bit(j);
            if ((kind == 1 && !equal) || (kind == 2 && equal)) v = 0;
        }
        table[idx] = v;
    }
    return WeightFunction(arity, 2, std::move(table));
}

WeightFunction randomPureAffineFunction(Rng& rng, int arity) {
    const std::size_t size = tableSize(arity, 2);
    while (true) {
        const int equations = arity == 0 ? 0 : rng.below(arity + 1);
        std::vector<std::pair<std::uint64_t, int>> system;
        for (int e = 0; e < equations; ++e) system.emplace_back(rng.raw() & (size - 1), rng.below(2));
        std::vector<Rational> table(size);
        bool any = false;
        const Rational w = rng.smallRational(false);
        for (std::size_t idx = 0; idx < size; ++idx) {
            bool ok = true;
            for (const auto& [mask, constant] : system) {
                ok = ok && (std::popcount(idx & mask) % 2) == constant;
            }
            table[idx] = ok ? w : Rational(0);
            any = any || ok;
        }
        if (any) return WeightFunction(arity, 2, std::move(table));
    }
}

WeightFunction randomTable(Rng& rng, int arity, int domainSize, int maxValue) {
    std::vector<Rational> table(tableSize(arity, domainSize));
    for (auto& v : table) v = rng.below(maxValue + 1);
    return WeightFunction(arity, domainSize, std::move(table));
}

Instance randomInstanceOver(Rng& rng, const std::vector<std::pair<std::string, WeightFunction>>& catalog,
                            int numVariables, int numConstraints) {
    Instance instance(numVariables, catalog.empty() ? 2 : catalog.front().second.domainSize());
    for (const auto& [name, f] : catalog) instance.addFunction(name, f);
    if (catalog.empty() || numVariables == 0) return instance;
    for (int c = 0; c < numConstraints; ++c) {
        const auto& [name, f] = catalog[static_cast<std::size_t>(rng.below(static_cast<int>(catalog.size())))];
        std::vector<int> scope;
        for (int j = 0; j < f.arity(); ++j) scope.push_back(rng.below(numVariables));
        instance.addConstraint(name, std::move(scope));
    }
    return instance;
}

Graph randomGraph(Rng& rng, int numVertices, int edgePercent) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < numVertices; ++u) {
        for (int v = u + 1; v < numVertices; ++v) {
            if (rng.below(100) < edgePercent) edges.emplace_back(u, v);
        }
    }
    return Graph(numVertices, std::move(edges));
}

Graph randomConnectedGraph(Rng& rng, int numVertices, int extraEdgePercent) {
    std::set<std::pair<int, int>> edges;
    for (int v = 1; v < numVertices; ++v) edges.emplace(rng.below(v), v);
    for (int u = 0; u < numVertices; ++u) {
        for (int v = u + 1; v < numVertices; ++v) {
            if (rng.below(100) < extraEdgePercent) edges.emplace(u, v);
        }
    }
    return Graph(numVertices, {edges.begin(), edges.end()});
}

Instance genRandomInstance(Profile profile, std::uint64_t seed, const GenOptions& options) {
    Rng rng(seed);
    const int n = options.numVariables;
    std::vector<std::pair<std::string, WeightFunction>> catalog;
    auto arity = [&] { return 1 + rng.below(std::max(1, options.maxArity)); };
    switch (profile) {
        case Profile::ProductType:
            for (int i = 0; i < options.numFunctions; ++i) {
                catalog.emplace_back("p" + std::to_string(i), randomProductTypeFunction(rng, arity()));
            }
            break;
        case Profile::PureAffine:
            for (int i = 0; i < options.numFunctions; ++i) {
                catalog.emplace_back("a" + std::to_string(i), randomPureAffineFunction(rng, arity()));
            }
            break;
        case Profile::Mixed:
            for (int i = 0; i < options.numFunctions; ++i) {
                catalog.emplace_back("m" + std::to_string(i), randomTable(rng, arity(), 2, 2));
            }
            catalog.emplace_back("delta0", library::delta(0));
            catalog.emplace_back("delta1", library::delta(1));
            break;
        case Profile::GraphHom: {
            const Rational a = rng.below(4), b = rng.below(4), c = rng.below(4);
            TargetMatrix h({{a, b}, {b, c}});
            return graphHomInstance(h, randomGraph(rng, n, 40));
        }
    }
    return randomInstanceOver(rng, catalog, n, options.numConstraints);
}

}  // namespace wcsp
