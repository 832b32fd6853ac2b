#pragma once

#include "wcsp/core.hpp"
#include "wcsp/models.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace wcsp {

/// Seeded generator. Draws reduce raw 64-bit outputs with `%` so a seed gives
/// the same sequence on every platform (std distributions do not promise that).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish in [0, bound).
    int below(int bound) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }
    bool coin() { return (engine_() & 1u) != 0; }
    std::uint64_t raw() { return engine_(); }

    /// A small non-negative rational from {0, 1/2, 1, 3/2, 2, 3, 1/3, 2/3, 5}.
    Rational smallRational(bool allowZero = true);

private:
    std::mt19937_64 engine_;
};

enum class Profile { ProductType, PureAffine, Mixed, GraphHom };

Profile parseProfile(const std::string& name);
std::string toString(Profile profile);

struct GenOptions {
    int numVariables = 8;
    int numConstraints = 10;
    int numFunctions = 3;
    int maxArity = 3;
};

/// Random instance for a profile, reproducible from the seed.
///   product-type: products of random unaries and equality/disequality factors
///   pure-affine: positive multiples of random GF(2) solution sets
///   mixed: arbitrary tables with values in {0,1,2} plus pins
///   graph-hom: a random graph under a random 2 x 2 symmetric target
Instance genRandomInstance(Profile profile, std::uint64_t seed, const GenOptions& options = {});

/// Product of per-coordinate unaries and random equality/disequality factors
/// on random coordinate pairs.
WeightFunction randomProductTypeFunction(Rng& rng, int arity);

/// w * indicator of the solutions of a random consistent GF(2) system.
WeightFunction randomPureAffineFunction(Rng& rng, int arity);

/// Entries drawn from {0, ..., maxValue}.
WeightFunction randomTable(Rng& rng, int arity, int domainSize, int maxValue);

/// Random instance over the given catalog, n variables, m constraints.
Instance randomInstanceOver(Rng& rng, const std::vector<std::pair<std::string, WeightFunction>>& catalog,
                            int numVariables, int numConstraints);

Graph randomGraph(Rng& rng, int numVertices, int edgePercent);

/// A random spanning tree plus random extra edges.
Graph randomConnectedGraph(Rng& rng, int numVertices, int extraEdgePercent);

}  // namespace wcsp
