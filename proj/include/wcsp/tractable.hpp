#pragma once

#include "wcsp/classifier.hpp"
#include "wcsp/core.hpp"
#include "wcsp/gf2.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wcsp {

/// Union-find over variables where each node stores its parity relative to
/// the root: value(v) = value(root) ^ parity(v).
class ParityUnionFind {
public:
    explicit ParityUnionFind(std::size_t size);

    struct Found {
        std::size_t root;
        bool parity;
    };
    Found find(std::size_t v);

    /// Requires value(a) ^ value(b) == parity. Returns false if that
    /// contradicts constraints already merged.
    bool unite(std::size_t a, std::size_t b, bool parity);

    std::size_t size() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<bool> parity_;
    std::vector<std::size_t> rank_;
};

/// Variable classes closed under the equality/disequality structure, with the
/// class weights: alpha for the class root at 0, beta for the root at 1.
struct ClassDecomposition {
    struct Class {
        std::vector<int> variables;
        std::vector<bool> parities;  // relative to variables[0]'s root value
        Rational alpha;
        Rational beta;
    };
    std::vector<Class> classes;
    Rational globalScale;

    Rational partitionFunction() const;
};

/// Builds the class decomposition for an instance whose functions are all of
/// product type. Throws Refusal otherwise.
ClassDecomposition decomposeProductType(const Instance& instance);

/// Z(I) = globalScale * prod_classes (alpha + beta).
Rational evalProductType(const Instance& instance);

/// The linear system whose solutions are the support of a pure affine
/// instance, over the instance variables.
Gf2System instanceSystem(const Instance& instance);

/// Z(I) = prod_f w_f^{k_f} * #solutions. Throws Refusal unless every function
/// is pure affine.
Rational evalPureAffine(const Instance& instance);

enum class EvaluatorKind { ProductType, PureAffine, BruteForce };

std::string toString(EvaluatorKind kind);

struct Evaluation {
    Rational z;
    EvaluatorKind evaluator;
    std::optional<Verdict> verdict;  // absent when the classifier was not consulted
};

/// Classifier-driven evaluation: product-type path, else pure-affine path,
/// else the brute-force oracle (subject to the budget). Non-Boolean instances
/// go straight to the oracle. `forceOracle` skips the classifier paths.
Evaluation evaluate(const Instance& instance, const Budget& budget = {}, bool forceOracle = false);

}  // namespace wcsp
