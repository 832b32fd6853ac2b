#pragma once

#include "wcsp/core.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace wcsp {

/// Oracle for Z of instances over a restricted family.
using Evaluator = std::function<Rational(const Instance&)>;

// ------------------------------------------------------------ function transforms
// Coordinates are 0-based throughout.

/// g(x_J) = sum over extensions x' of x_J of f(x'). J must be strictly increasing.
WeightFunction project(const WeightFunction& f, const std::vector<int>& keep);

/// f with coordinate i fixed to value (arity k-1).
WeightFunction pinCoordinate(const WeightFunction& f, int i, int value);

/// Sum of f over coordinate i (arity k-1).
WeightFunction projectOut(const WeightFunction& f, int i);

/// f'(..) = f with coordinate j forced equal to coordinate i, j removed.
WeightFunction identifyCoordinates(const WeightFunction& f, int i, int j);

// ------------------------------------------------------------ simulations

/// Replaces every `g` constraint by an `f` constraint whose `keep` positions
/// carry the original scope and whose other positions are fresh variables.
/// Z is preserved exactly. Refuses unless g == project(f, keep).
Instance simulateProjectionInstance(const Instance& instance, const std::string& g, const std::string& fName,
                                    const WeightFunction& f, const std::vector<int>& keep);

/// Replaces every `g` constraint by an `f` constraint with a fresh variable at
/// position i, pinned by delta_value. Refuses unless g == pinCoordinate(f, i, value).
Instance simulatePinInstance(const Instance& instance, const std::string& g, const std::string& fName,
                             const WeightFunction& f, int i, int value);

/// Instances built by Boolean pinning, exposed for tracing and verification.
struct BooleanPinningTrace {
    bool trivialZero = false;   // some variable is pinned to both 0 and 1
    bool noPins = false;        // the instance had no delta constraints
    bool symmetric = false;     // every family function is invariant under bit flip
    Instance merged01;          // pinned classes merged into t0, t1
    Instance merged;            // pinned classes merged into a single t
    Instance merged01Extended;  // asymmetric case: plus f(t_{x_1}, ..., t_{x_k})
    Instance mergedExtended;    // asymmetric case: plus f(t, ..., t)
    std::string witnessFunction;
    Tuple witnessTuple;
    Rational result;
};

/// Z(I) for I over F + {delta_0, delta_1} using only evaluator calls on
/// instances over F. Delta constraints are recognized by their tables.
Rational pinningReduceBoolean(const Instance& instance, const Evaluator& evaluator,
                              BooleanPinningTrace* trace = nullptr);

struct InterpolationResult {
    Rational value;
    /// Coefficients of Z(I; w) in increasing degree; size m + 1.
    std::vector<Rational> coefficients;
    unsigned occurrences = 0;
};

/// Z(I) where `unary` names U_c (table (1, c)), using only evaluator calls on
/// instances where each U_c is replaced by j copies of U_lambda, j = 0..m.
InterpolationResult interpolationReduce(const Instance& instance, const std::string& unary, const Rational& lambda,
                                        const Evaluator& evaluator);

/// Solves sum_d coeff_d * nodes[j]^d = values[j] exactly. Nodes must be distinct.
std::vector<Rational> solveVandermonde(const std::vector<Rational>& nodes, const std::vector<Rational>& values);

struct ParityGadget {
    Instance instance;  // functions "xor3" and "delta0"
    int primaries = 0;  // variables 0..primaries-1
};

/// Gadget over {xor3, delta0} whose satisfying assignments restricted to the
/// first k variables are exactly the odd-parity k-tuples, each extended by
/// exactly one assignment of the auxiliaries.
ParityGadget parityChain(int k);

struct SymmetrizedParity {
    WeightFunction symmetric;  // product of f over all six argument orders
    Rational c;
    WeightFunction pureAffine;  // U_c(a) U_c(b) U_c(c) * symmetric(a, b, c)
};

/// Requires the support of f (arity 3) to be the odd or even parity relation.
SymmetrizedParity symmetrizeParity(const WeightFunction& f);

struct UnaryResult {
    Rational lambda;
    WeightFunction unary;  // U_lambda
    int column;
};

struct RecurseResult {
    WeightFunction reduced;  // not pure affine, arity one less
    int column;
    int pinnedValue;
};

using ExtractionStep = std::variant<UnaryResult, RecurseResult>;

/// One step of unary extraction for g with affine support that is not pure
/// affine. Uses the first non-constant column of the support.
ExtractionStep extractUnary(const WeightFunction& g);

/// Iterates extractUnary until a unary weight appears.
UnaryResult extractUnaryIterated(const WeightFunction& g, std::vector<ExtractionStep>* steps = nullptr);

// ------------------------------------------------------------ partition lattice

/// A set partition of {0, ..., q-1}, stored as a restricted growth string:
/// label[i] is the block of i, blocks numbered in order of first appearance.
class PartitionOfQ {
public:
    explicit PartitionOfQ(std::vector<int> labels);

    int domainSize() const { return static_cast<int>(labels_.size()); }
    int numBlocks() const { return blocks_; }
    const std::vector<int>& labels() const { return labels_; }
    std::vector<std::vector<int>> blocks() const;

    /// this <= other: every block of this lies inside a block of other.
    bool refines(const PartitionOfQ& other) const;

    std::string toString() const;

    friend bool operator==(const PartitionOfQ& a, const PartitionOfQ& b) { return a.labels_ == b.labels_; }

private:
    std::vector<int> labels_;
    int blocks_ = 0;
};

/// All partitions of [q], finest first (so the order is a linear extension of <=).
std::vector<PartitionOfQ> allPartitions(int q);

struct MobiusTable {
    std::vector<PartitionOfQ> partitions;
    std::vector<BigInt> mu;  // parallel to partitions

    const BigInt& at(const PartitionOfQ& p) const;
};

constexpr int kMaxLatticeDomain = 6;

/// mu(finest) = 1, mu(theta) = -sum_{eta < theta} mu(eta). q <= 6.
MobiusTable mobiusTable(int q);

/// Z(I) for an instance with exactly one constraint on `disequality` (the
/// arity-q pairwise distinct indicator on distinct variables):
/// sum over partitions eta of mu(eta) * Z(I_eta), with the disequality dropped
/// and its variables merged within the blocks of eta.
Rational mobiusPinningReduce(const Instance& instance, const Evaluator& evaluator,
                             const std::string& disequality = "alldiff");

/// Z(I) for I over F + {delta_c} where F is invariant under every permutation
/// of [q]: adds t_0..t_{q-1} with a pairwise-distinct constraint, replaces
/// delta_c-pinned variables by t_c, and divides the Mobius result by q!.
Rational symmetricPinningReduceQ(const Instance& instance, const Evaluator& evaluator);

/// True iff f(pi(x)) = f(x) for every permutation pi of the domain.
bool isDomainSymmetric(const WeightFunction& f);

/// Merges variables: old variable v becomes mapping[v]; numVariables is the new count.
Instance remapVariables(const Instance& instance, const std::vector<int>& mapping, int numVariables);

}  // namespace wcsp
