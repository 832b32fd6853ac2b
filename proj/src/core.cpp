#include "wcsp/core.hpp"

#include <algorithm>
#include <charconv>
#include <thread>
#include <unordered_map>

namespace wcsp {

std::size_t tableSize(int arity, int domainSize) {
    if (arity < 0) throw InputError("negative arity");
    if (domainSize < 2) throw InputError("domain size must be at least 2");
    std::size_t size = 1;
    for (int i = 0; i < arity; ++i) {
        if (size > (std::size_t{1} << 40) / static_cast<std::size_t>(domainSize)) {
            throw InputError("table of arity " + std::to_string(arity) + " over domain " +
                             std::to_string(domainSize) + " is too large");
        }
        size *= static_cast<std::size_t>(domainSize);
    }
    return size;
}

// ---------------------------------------------------------------- WeightFunction

WeightFunction::WeightFunction(int arity, int domainSize, std::vector<Rational> table)
    : arity_(arity), q_(domainSize), table_(std::move(table)) {
    std::size_t expected = tableSize(arity, domainSize);
    if (table_.size() != expected) {
        throw InputError("table has " + std::to_string(table_.size()) + " entries, expected " +
                         std::to_string(expected) + " for arity " + std::to_string(arity));
    }
    for (std::size_t i = 0; i < table_.size(); ++i) {
        table_[i].canonicalize();
        if (table_[i] < 0) throw InputError("negative weight at table index " + std::to_string(i));
    }
}

std::size_t WeightFunction::stride(int i) const {
    std::size_t s = 1;
    for (int j = i + 1; j < arity_; ++j) s *= static_cast<std::size_t>(q_);
    return s;
}

std::size_t WeightFunction::indexOf(std::span<const int> x) const {
    if (static_cast<int>(x.size()) != arity_) {
        throw InputError("tuple of length " + std::to_string(x.size()) + " for function of arity " +
                         std::to_string(arity_));
    }
    std::size_t index = 0;
    for (int v : x) {
        if (v < 0 || v >= q_) {
            throw InputError("domain element " + std::to_string(v) + " outside [" + std::to_string(q_) + "]");
        }
        index = index * static_cast<std::size_t>(q_) + static_cast<std::size_t>(v);
    }
    return index;
}

Tuple WeightFunction::tupleOf(std::size_t index) const {
    Tuple x(static_cast<std::size_t>(arity_));
    for (int i = arity_ - 1; i >= 0; --i) {
        x[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(q_));
        index /= static_cast<std::size_t>(q_);
    }
    return x;
}

const Rational& WeightFunction::lookup(std::span<const int> x) const { return table_[indexOf(x)]; }

bool WeightFunction::isZero() const {
    return std::all_of(table_.begin(), table_.end(), [](const Rational& v) { return v == 0; });
}

// ---------------------------------------------------------------- Relation

Relation::Relation(int arity, int domainSize, std::vector<std::size_t> tuples)
    : arity_(arity), q_(domainSize), tuples_(std::move(tuples)) {
    std::size_t bound = tableSize(arity, domainSize);
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
    if (!tuples_.empty() && tuples_.back() >= bound) {
        throw InputError("relation tuple index " + std::to_string(tuples_.back()) + " out of range");
    }
}

bool Relation::contains(std::size_t index) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), index);
}

// ---------------------------------------------------------------- Instance

Instance::Instance(int numVariables, int domainSize) : n_(numVariables), q_(domainSize) {
    if (numVariables < 0) throw InputError("negative variable count");
    if (domainSize < 2) throw InputError("domain size must be at least 2");
}

int Instance::addVariable() { return n_++; }

void Instance::addFunction(const std::string& name, WeightFunction f) {
    if (name.empty()) throw InputError("function name must not be empty");
    if (f.domainSize() != q_) {
        throw InputError("function '" + name + "' has domain " + std::to_string(f.domainSize()) +
                         " but the instance has domain " + std::to_string(q_));
    }
    if (auto it = functions_.find(name); it != functions_.end() && it->second.arity() != f.arity()) {
        for (const auto& c : constraints_) {
            if (c.function == name) throw InputError("cannot change arity of function '" + name + "' in use");
        }
    }
    functions_.insert_or_assign(name, std::move(f));
}

void Instance::removeFunction(const std::string& name) {
    for (const auto& c : constraints_) {
        if (c.function == name) throw InputError("cannot remove function '" + name + "' in use");
    }
    functions_.erase(name);
}

const WeightFunction& Instance::function(const std::string& name) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) throw InputError("unknown function '" + name + "'");
    return it->second;
}

void Instance::addConstraint(const std::string& function, std::vector<int> scope) {
    const WeightFunction& f = this->function(function);
    if (static_cast<int>(scope.size()) != f.arity()) {
        throw InputError("constraint on '" + function + "' has scope of length " + std::to_string(scope.size()) +
                         ", arity is " + std::to_string(f.arity()));
    }
    for (int v : scope) {
        if (v < 0 || v >= n_) {
            throw InputError("constraint on '" + function + "' uses variable " + std::to_string(v) +
                             " outside [0," + std::to_string(n_) + ")");
        }
    }
    constraints_.push_back({function, std::move(scope)});
}

std::vector<std::string> Instance::usedFunctions() const {
    std::vector<std::string> names;
    for (const auto& c : constraints_) names.push_back(c.function);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

std::string Instance::freshName(const std::string& base) const {
    if (!functions_.contains(base)) return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!functions_.contains(candidate)) return candidate;
    }
}

// ---------------------------------------------------------------- evaluation

Rational weight(const Instance& instance, std::span<const int> sigma) {
    if (static_cast<int>(sigma.size()) != instance.numVariables()) {
        throw InputError("assignment has " + std::to_string(sigma.size()) + " values, instance has " +
                         std::to_string(instance.numVariables()) + " variables");
    }
    Rational w(1);
    Tuple x;
    for (const auto& c : instance.constraints()) {
        const WeightFunction& f = instance.function(c.function);
        x.clear();
        for (int v : c.scope) x.push_back(sigma[static_cast<std::size_t>(v)]);
        w *= f.lookup(x);
        if (w == 0) break;
    }
    return w;
}

namespace {

// Tables rescaled to integers so the inner loop multiplies mpz values only;
// the common denominator is divided out once at the end.
struct IntegerTable {
    std::vector<BigInt> entries;
    BigInt denominator;
};

IntegerTable integerize(const WeightFunction& f) {
    IntegerTable t;
    t.denominator = 1;
    for (const auto& v : f.table()) mpz_lcm(t.denominator.get_mpz_t(), t.denominator.get_mpz_t(), v.get_den_mpz_t());
    t.entries.reserve(f.size());
    for (const auto& v : f.table()) t.entries.push_back(v.get_num() * (t.denominator / v.get_den()));
    return t;
}

struct CompiledConstraint {
    const IntegerTable* table;
    std::vector<std::pair<int, std::size_t>> terms;  // (variable, stride)
    std::size_t fixedOffset;                         // contribution of pinned variables
};

std::uint64_t statesFor(int q, int freeVars, const Budget& budget) {
    std::uint64_t states = 1;
    for (int i = 0; i < freeVars; ++i) {
        if (states > budget.maxStates / static_cast<std::uint64_t>(q)) {
            throw Refusal("enumeration of " + std::to_string(q) + "^" + std::to_string(freeVars) +
                          " assignments exceeds the budget of " + std::to_string(budget.maxStates) + " states");
        }
        states *= static_cast<std::uint64_t>(q);
    }
    return states;
}

BigInt sumRange(const std::vector<CompiledConstraint>& constraints, const std::vector<int>& freeVars, int q,
                std::vector<int> sigma, std::uint64_t begin, std::uint64_t end) {
    // Decode `begin` into the free variables, last free variable least significant.
    std::uint64_t code = begin;
    for (std::size_t i = freeVars.size(); i-- > 0;) {
        sigma[static_cast<std::size_t>(freeVars[i])] = static_cast<int>(code % static_cast<std::uint64_t>(q));
        code /= static_cast<std::uint64_t>(q);
    }

    BigInt total = 0;
    BigInt product;
    for (std::uint64_t s = begin; s < end; ++s) {
        product = 1;
        for (const auto& c : constraints) {
            std::size_t index = c.fixedOffset;
            for (const auto& [var, stride] : c.terms) index += static_cast<std::size_t>(sigma[static_cast<std::size_t>(var)]) * stride;
            const BigInt& v = c.table->entries[index];
            if (v == 0) {
                product = 0;
                break;
            }
            if (v != 1) product *= v;
        }
        total += product;

        for (std::size_t i = freeVars.size(); i-- > 0;) {
            int& value = sigma[static_cast<std::size_t>(freeVars[i])];
            if (++value < q) break;
            value = 0;
        }
    }
    return total;
}

Rational enumerate(const Instance& instance, std::vector<int> sigma, const std::vector<bool>& pinned,
                   const Budget& budget) {
    const int q = instance.domainSize();
    std::vector<int> freeVars;
    for (int v = 0; v < instance.numVariables(); ++v) {
        if (!pinned[static_cast<std::size_t>(v)]) freeVars.push_back(v);
    }
    const std::uint64_t states = statesFor(q, static_cast<int>(freeVars.size()), budget);

    std::unordered_map<std::string, IntegerTable> tables;
    for (const auto& name : instance.usedFunctions()) tables.emplace(name, integerize(instance.function(name)));

    BigInt denominator = 1;
    std::vector<CompiledConstraint> compiled;
    for (const auto& c : instance.constraints()) {
        const WeightFunction& f = instance.function(c.function);
        const IntegerTable& t = tables.at(c.function);
        denominator *= t.denominator;
        CompiledConstraint cc{&t, {}, 0};
        for (std::size_t j = 0; j < c.scope.size(); ++j) {
            int var = c.scope[j];
            std::size_t stride = f.stride(static_cast<int>(j));
            if (pinned[static_cast<std::size_t>(var)]) {
                cc.fixedOffset += static_cast<std::size_t>(sigma[static_cast<std::size_t>(var)]) * stride;
            } else {
                cc.terms.emplace_back(var, stride);
            }
        }
        if (cc.terms.empty()) {
            // Fully pinned constraint: a constant factor.
            const BigInt& v = t.entries[cc.fixedOffset];
            if (v == 0) return Rational(0);
            CompiledConstraint constant = cc;
            compiled.insert(compiled.begin(), std::move(constant));
        } else {
            compiled.push_back(std::move(cc));
        }
    }

    // Exact sums are order independent, so splitting the range across threads
    // gives the same result as the sequential loop.
    const std::uint64_t parallelThreshold = std::uint64_t{1} << 15;
    unsigned workers = 1;
    if (states >= parallelThreshold) workers = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));

    BigInt total = 0;
    if (workers == 1) {
        total = sumRange(compiled, freeVars, q, sigma, 0, states);
    } else {
        std::vector<BigInt> partial(workers);
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (states + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t begin = std::min<std::uint64_t>(states, w * chunk);
            std::uint64_t end = std::min<std::uint64_t>(states, begin + chunk);
            threads.emplace_back([&, w, begin, end] { partial[w] = sumRange(compiled, freeVars, q, sigma, begin, end); });
        }
        for (auto& t : threads) t.join();
        for (const auto& p : partial) total += p;
    }

    Rational z(total, denominator);
    z.canonicalize();
    return z;
}

}  // namespace

Rational bruteForceZ(const Instance& instance, const Budget& budget) {
    std::vector<int> sigma(static_cast<std::size_t>(instance.numVariables()), 0);
    std::vector<bool> pinned(static_cast<std::size_t>(instance.numVariables()), false);
    return enumerate(instance, std::move(sigma), pinned, budget);
}

Rational conditionedZ(const Instance& instance, std::span<const std::pair<int, int>> pins, const Budget& budget) {
    std::vector<int> sigma(static_cast<std::size_t>(instance.numVariables()), 0);
    std::vector<bool> pinned(static_cast<std::size_t>(instance.numVariables()), false);
    for (const auto& [var, value] : pins) {
        if (var < 0 || var >= instance.numVariables()) {
            throw InputError("pinned variable " + std::to_string(var) + " out of range");
        }
        if (value < 0 || value >= instance.domainSize()) {
            throw InputError("pinned value " + std::to_string(value) + " outside the domain");
        }
        auto v = static_cast<std::size_t>(var);
        if (pinned[v] && sigma[v] != value) {
            throw InputError("conflicting pins on variable " + std::to_string(var));
        }
        if (pinned[v]) throw InputError("variable " + std::to_string(var) + " pinned twice");
        pinned[v] = true;
        sigma[v] = value;
    }
    return enumerate(instance, std::move(sigma), pinned, budget);
}

Rational deltaPinnedZ(const Instance& instance, const Budget& budget) {
    std::vector<std::pair<int, int>> pins;
    for (const auto& c : instance.constraints()) {
        const WeightFunction& f = instance.function(c.function);
        if (f.arity() != 1) continue;
        for (int v = 0; v < f.domainSize(); ++v) {
            if (f == library::delta(v, f.domainSize())) pins.emplace_back(c.scope[0], v);
        }
    }
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    for (std::size_t i = 1; i < pins.size(); ++i) {
        if (pins[i].first == pins[i - 1].first) return Rational(0);
    }
    return conditionedZ(instance, pins, budget);
}

// ---------------------------------------------------------------- library

namespace library {

namespace {

WeightFunction indicator(int arity, int q, auto predicate) {
    std::size_t size = tableSize(arity, q);
    std::vector<Rational> table(size);
    WeightFunction shape(arity, q, std::vector<Rational>(size));
    for (std::size_t i = 0; i < size; ++i) table[i] = predicate(shape.tupleOf(i)) ? 1 : 0;
    return WeightFunction(arity, q, std::move(table));
}

int popcount(const Tuple& x) {
    int ones = 0;
    for (int v : x) ones += v;
    return ones;
}

}  // namespace

WeightFunction delta(int value, int domainSize) {
    if (value < 0 || value >= domainSize) throw InputError("delta value outside the domain");
    return indicator(1, domainSize, [value](const Tuple& x) { return x[0] == value; });
}

WeightFunction equality(int domainSize) {
    return indicator(2, domainSize, [](const Tuple& x) { return x[0] == x[1]; });
}

WeightFunction disequality(int domainSize) {
    return indicator(2, domainSize, [](const Tuple& x) { return x[0] != x[1]; });
}

WeightFunction parity(int arity) {
    return indicator(arity, 2, [](const Tuple& x) { return popcount(x) % 2 == 1; });
}

WeightFunction evenParity(int arity) {
    return indicator(arity, 2, [](const Tuple& x) { return popcount(x) % 2 == 0; });
}

WeightFunction unaryWeight(const Rational& w) { return WeightFunction(1, 2, {Rational(1), w}); }

WeightFunction allDistinct(int domainSize) {
    return indicator(domainSize, domainSize, [](const Tuple& x) {
        std::vector<bool> seen(x.size(), false);
        for (int v : x) {
            if (seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = true;
        }
        return true;
    });
}

WeightFunction constant(const Rational& value, int domainSize) { return WeightFunction(0, domainSize, {value}); }

WeightFunction scaled(const WeightFunction& f, const Rational& scale) {
    std::vector<Rational> table(f.table().begin(), f.table().end());
    for (auto& v : table) v *= scale;
    return WeightFunction(f.arity(), f.domainSize(), std::move(table));
}

bool lookupBuiltin(const std::string& name, int domainSize, WeightFunction& out) {
    auto number = [](std::string_view digits, int& value) {
        if (digits.empty()) return false;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        return ec == std::errc() && ptr == digits.data() + digits.size();
    };
    int k = 0;
    std::string_view s = name;
    if (s == "eq") {
        out = equality(domainSize);
    } else if (s == "neq") {
        out = disequality(domainSize);
    } else if (s == "alldiff") {
        out = allDistinct(domainSize);
    } else if (s.starts_with("delta") && number(s.substr(5), k)) {
        if (k >= domainSize) return false;
        out = delta(k, domainSize);
    } else if (s.starts_with("nxor") && number(s.substr(4), k) && domainSize == 2 && k >= 1) {
        out = evenParity(k);
    } else if (s.starts_with("xor") && number(s.substr(3), k) && domainSize == 2 && k >= 1) {
        out = parity(k);
    } else if (s.starts_with("unary:") && domainSize == 2) {
        out = unaryWeight(parseRational(s.substr(6)));
    } else {
        return false;
    }
    return true;
}

}  // namespace library

}  // namespace wcsp
