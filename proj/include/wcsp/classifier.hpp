#pragma once

#include "wcsp/core.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wcsp {

/// Tuples where f is nonzero.
Relation underlyingRelation(const WeightFunction& f);

/// Closed under coordinatewise a xor b xor c. Boolean relations only.
bool isAffineRelation(const Relation& r);

bool hasAffineSupport(const WeightFunction& f);

/// Affine support and all nonzero values equal. The zero function is not
/// pure affine.
bool isPureAffine(const WeightFunction& f);

/// The common nonzero value of a pure affine function.
std::optional<Rational> pureAffineWeight(const WeightFunction& f);

/// Index i is useful if some context y has f(y, x_i=0) > 0 and f(y, x_i=1) > 0.
std::vector<int> usefulIndices(const WeightFunction& f);

struct ProductLikeResult {
    bool productLike = false;
    /// lambdas[i] is set for useful indices i that satisfy
    /// f(y, x_i=0) = lambda_i * f(y, x_i=1) for all y.
    std::vector<std::optional<Rational>> lambdas;
    /// First useful index without a consistent ratio, when not product-like.
    std::optional<int> failingIndex;
};

ProductLikeResult isProductLike(const WeightFunction& f);

/// Decomposition of a product-type function:
///   f(x) = scale * prod_{(i,v) constant} [x_i = v]
///                * prod_{classes} [members agree with the class polarity]
///                                 * weights[x_rep]
/// Every coordinate appears exactly once, either as a constant column or as a
/// member of one class.
struct ProductTypeWitness {
    struct Member {
        int index;
        bool complemented;  // relative to the class representative
    };
    struct Class {
        std::vector<Member> members;  // members[0] is the representative (not complemented)
        Rational weight0;
        Rational weight1;
    };
    std::vector<std::pair<int, int>> constantColumns;
    std::vector<Class> classes;
    Rational scale;

    /// Rebuilds the table described by the witness.
    WeightFunction reconstruct(int arity) const;
};

struct ProductTypeResult {
    bool productType = false;
    std::optional<ProductTypeWitness> witness;
};

/// Decides whether f is a product of unary functions and binary
/// equality/disequality indicators, in time polynomial in the table size.
ProductTypeResult isProductType(const WeightFunction& f);

enum class FamilyVerdict { ProductTypeFp, PureAffineFp, Hard };

std::string toString(FamilyVerdict verdict);

struct FunctionReport {
    std::string name;
    bool productType = false;
    bool pureAffine = false;
    bool affineSupport = false;
    bool productLike = false;
    std::optional<ProductTypeWitness> witness;
    std::optional<Rational> pureAffineWeight;
    std::vector<std::optional<Rational>> lambdas;
};

struct Verdict {
    std::vector<FunctionReport> perFunction;
    FamilyVerdict family = FamilyVerdict::ProductTypeFp;
    /// For HARD: (first function that is not product type, first that is not
    /// pure affine), possibly the same name.
    std::optional<std::pair<std::string, std::string>> hardPair;
};

FunctionReport classifyFunction(const std::string& name, const WeightFunction& f);

/// Family classification. The empty family counts as product type.
Verdict classifyFamily(const std::vector<std::pair<std::string, WeightFunction>>& family);

/// Classification of the functions an instance actually uses.
Verdict classifyInstance(const Instance& instance);

}  // namespace wcsp
