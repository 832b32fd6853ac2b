#pragma once

#include "wcsp/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wcsp {

/// A tuple of domain elements (x_1, ..., x_k).
using Tuple = std::vector<int>;

/// Weight table over [q]^k. Tuple (x_1, ..., x_k) lives at index
/// sum_i x_i * q^(k-i): x_1 is the most significant digit. Every module goes
/// through indexOf()/tupleOf() rather than computing indices itself.
class WeightFunction {
public:
    WeightFunction() : WeightFunction(0, 2, {Rational(1)}) {}
    WeightFunction(int arity, int domainSize, std::vector<Rational> table);

    int arity() const { return arity_; }
    int domainSize() const { return q_; }
    std::size_t size() const { return table_.size(); }

    std::size_t indexOf(std::span<const int> x) const;
    Tuple tupleOf(std::size_t index) const;

    /// f(x), with arity and domain checks.
    const Rational& lookup(std::span<const int> x) const;
    const Rational& lookup(std::initializer_list<int> x) const {
        return lookup(std::span<const int>(x.begin(), x.size()));
    }
    /// Entry at a precomputed index.
    const Rational& at(std::size_t index) const { return table_[index]; }

    std::span<const Rational> table() const { return table_; }

    /// Place value of coordinate i (0-based) in the index, i.e. q^(k-1-i).
    std::size_t stride(int i) const;

    bool isZero() const;

    friend bool operator==(const WeightFunction& a, const WeightFunction& b) {
        return a.arity_ == b.arity_ && a.q_ == b.q_ && a.table_ == b.table_;
    }

private:
    int arity_;
    int q_;
    std::vector<Rational> table_;
};

/// Set of index-encoded tuples (same convention as WeightFunction).
class Relation {
public:
    Relation(int arity, int domainSize, std::vector<std::size_t> tuples);

    int arity() const { return arity_; }
    int domainSize() const { return q_; }
    /// Sorted, duplicate free.
    const std::vector<std::size_t>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }
    bool contains(std::size_t index) const;

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    int arity_;
    int q_;
    std::vector<std::size_t> tuples_;
};

/// Total number of tuples q^k; throws InputError if it overflows 64 bits.
std::size_t tableSize(int arity, int domainSize);

struct Constraint {
    std::string function;
    std::vector<int> scope;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// A #CSP instance: n variables over [q], a named function catalog, and a
/// list of constraints. Scopes may repeat variables.
class Instance {
public:
    Instance() : Instance(0, 2) {}
    Instance(int numVariables, int domainSize);

    int numVariables() const { return n_; }
    int domainSize() const { return q_; }

    /// Returns the index of the new variable.
    int addVariable();

    /// Adds or replaces a catalog entry. Replacing a function that is in use
    /// requires the same arity.
    void addFunction(const std::string& name, WeightFunction f);
    void removeFunction(const std::string& name);
    bool hasFunction(const std::string& name) const { return functions_.contains(name); }
    const WeightFunction& function(const std::string& name) const;
    const std::map<std::string, WeightFunction>& functions() const { return functions_; }

    void addConstraint(const std::string& function, std::vector<int> scope);
    const std::vector<Constraint>& constraints() const { return constraints_; }

    /// Catalog names that occur in at least one constraint (sorted).
    std::vector<std::string> usedFunctions() const;

    /// A catalog name derived from `base` that is not yet taken.
    std::string freshName(const std::string& base) const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    int n_;
    int q_;
    std::map<std::string, WeightFunction> functions_;
    std::vector<Constraint> constraints_;
};

using Assignment = std::vector<int>;

/// Enumeration limit for the brute-force oracle: q^n states at most.
struct Budget {
    std::uint64_t maxStates = std::uint64_t{1} << 30;
};

/// w(sigma) = product over constraints of f_C(sigma restricted to scope).
Rational weight(const Instance& instance, std::span<const int> sigma);

/// Z(I) by exhaustive enumeration. Throws Refusal when q^n exceeds the budget.
Rational bruteForceZ(const Instance& instance, const Budget& budget = {});

/// Z(I | sigma(u_1)=c_1, ...): enumeration over the unpinned variables only.
Rational conditionedZ(const Instance& instance, std::span<const std::pair<int, int>> pins,
                      const Budget& budget = {});

/// Z(I) by enumeration over the variables not fixed by a unary delta_c
/// constraint; those are set to c up front. 0 if a variable is pinned to two
/// different values.
Rational deltaPinnedZ(const Instance& instance, const Budget& budget = {});

/// The named functions used throughout: delta_c, equality, disequality,
/// parity, unary weights, and the arity-q "pairwise distinct" indicator.
namespace library {

WeightFunction delta(int value, int domainSize = 2);
WeightFunction equality(int domainSize = 2);
WeightFunction disequality(int domainSize = 2);
/// x_1 + ... + x_k odd.
WeightFunction parity(int arity);
/// x_1 + ... + x_k even.
WeightFunction evenParity(int arity);
/// U_w: 0 -> 1, 1 -> w.
WeightFunction unaryWeight(const Rational& w);
/// 1 iff the q arguments are pairwise distinct.
WeightFunction allDistinct(int domainSize);
WeightFunction constant(const Rational& value, int domainSize = 2);
/// f * scale, entrywise.
WeightFunction scaled(const WeightFunction& f, const Rational& scale);

/// Resolves `delta0`, `delta1`, ..., `eq`, `neq`, `xor3`, `nxor3`, `alldiff`,
/// `unary:<w>` (and `xor<k>`, `nxor<k>`). Returns false for unknown names.
bool lookupBuiltin(const std::string& name, int domainSize, WeightFunction& out);

}  // namespace library

}  // namespace wcsp
