#include "wcsp/reductions.hpp"

#include "wcsp/classifier.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wcsp {

// ============================================================ function transforms

WeightFunction project(const WeightFunction& f, const std::vector<int>& keep) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
        if (keep[j] < 0 || keep[j] >= f.arity()) {
            throw InputError("projection index " + std::to_string(keep[j]) + " out of range for arity " +
                             std::to_string(f.arity()));
        }
        if (j > 0 && keep[j] <= keep[j - 1]) throw InputError("projection indices must be strictly increasing");
    }
    const int q = f.domainSize();
    WeightFunction shape(static_cast<int>(keep.size()), q,
                         std::vector<Rational>(tableSize(static_cast<int>(keep.size()), q)));
    std::vector<Rational> table(shape.size());
    Tuple sub(keep.size());
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        if (f.at(idx) == 0) continue;
        Tuple x = f.tupleOf(idx);
        for (std::size_t j = 0; j < keep.size(); ++j) sub[j] = x[static_cast<std::size_t>(keep[j])];
        table[shape.indexOf(sub)] += f.at(idx);
    }
    return WeightFunction(shape.arity(), q, std::move(table));
}

WeightFunction pinCoordinate(const WeightFunction& f, int i, int value) {
    if (i < 0 || i >= f.arity()) throw InputError("pinned coordinate " + std::to_string(i) + " out of range");
    if (value < 0 || value >= f.domainSize()) throw InputError("pinned value outside the domain");
    const int q = f.domainSize();
    const int k = f.arity();
    std::vector<Rational> table(tableSize(k - 1, q));
    WeightFunction shape(k - 1, q, std::vector<Rational>(table.size()));
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        Tuple y = shape.tupleOf(idx);
        y.insert(y.begin() + i, value);
        table[idx] = f.lookup(y);
    }
    return WeightFunction(k - 1, q, std::move(table));
}

WeightFunction projectOut(const WeightFunction& f, int i) {
    if (i < 0 || i >= f.arity()) throw InputError("coordinate " + std::to_string(i) + " out of range");
    std::vector<int> keep;
    for (int j = 0; j < f.arity(); ++j) {
        if (j != i) keep.push_back(j);
    }
    return project(f, keep);
}

WeightFunction identifyCoordinates(const WeightFunction& f, int i, int j) {
    if (i < 0 || j < 0 || i >= f.arity() || j >= f.arity() || i == j) {
        throw InputError("identification needs two distinct coordinates in range");
    }
    const int q = f.domainSize();
    const int k = f.arity();
    std::vector<Rational> table(tableSize(k - 1, q));
    WeightFunction shape(k - 1, q, std::vector<Rational>(table.size()));
    const int iAfter = i < j ? i : i - 1;  // position of i once j is removed
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        Tuple y = shape.tupleOf(idx);
        int shared = y[static_cast<std::size_t>(iAfter)];
        y.insert(y.begin() + j, shared);
        table[idx] = f.lookup(y);
    }
    return WeightFunction(k - 1, q, std::move(table));
}

// ============================================================ helpers

Instance remapVariables(const Instance& instance, const std::vector<int>& mapping, int numVariables) {
    Instance out(numVariables, instance.domainSize());
    for (const auto& [name, f] : instance.functions()) out.addFunction(name, f);
    for (const auto& c : instance.constraints()) {
        std::vector<int> scope;
        for (int v : c.scope) scope.push_back(mapping[static_cast<std::size_t>(v)]);
        out.addConstraint(c.function, std::move(scope));
    }
    return out;
}

namespace {

// Copy of the catalog and constraints minus everything touching `skip`.
Instance copyWithout(const Instance& instance, const std::set<std::string>& skip) {
    Instance out(instance.numVariables(), instance.domainSize());
    for (const auto& [name, f] : instance.functions()) {
        if (!skip.contains(name)) out.addFunction(name, f);
    }
    for (const auto& c : instance.constraints()) {
        if (!skip.contains(c.function)) out.addConstraint(c.function, c.scope);
    }
    return out;
}

void installFunction(Instance& instance, const std::string& name, const WeightFunction& f) {
    if (instance.hasFunction(name) && !(instance.function(name) == f)) {
        throw InputError("function name '" + name + "' already names a different table");
    }
    instance.addFunction(name, f);
}

}  // namespace

// ============================================================ simulations

Instance simulateProjectionInstance(const Instance& instance, const std::string& g, const std::string& fName,
                                    const WeightFunction& f, const std::vector<int>& keep) {
    if (!(instance.function(g) == project(f, keep))) {
        throw Refusal("function '" + g + "' is not the projection of '" + fName + "' onto the given indices");
    }
    Instance out = copyWithout(instance, {g});
    installFunction(out, fName, f);
    std::vector<Constraint> rebuilt;
    for (const auto& c : instance.constraints()) {
        if (c.function != g) {
            rebuilt.push_back(c);
            continue;
        }
        std::vector<int> scope(static_cast<std::size_t>(f.arity()), -1);
        for (std::size_t j = 0; j < keep.size(); ++j) scope[static_cast<std::size_t>(keep[j])] = c.scope[j];
        for (auto& v : scope) {
            if (v < 0) v = out.addVariable();
        }
        rebuilt.push_back({fName, std::move(scope)});
    }
    Instance result(out.numVariables(), out.domainSize());
    for (const auto& [name, fn] : out.functions()) result.addFunction(name, fn);
    for (auto& c : rebuilt) result.addConstraint(c.function, std::move(c.scope));
    return result;
}

Instance simulatePinInstance(const Instance& instance, const std::string& g, const std::string& fName,
                             const WeightFunction& f, int i, int value) {
    if (!(instance.function(g) == pinCoordinate(f, i, value))) {
        throw Refusal("function '" + g + "' is not '" + fName + "' pinned at coordinate " + std::to_string(i));
    }
    Instance out = copyWithout(instance, {g});
    installFunction(out, fName, f);
    const std::string deltaName = "delta" + std::to_string(value);
    installFunction(out, deltaName, library::delta(value, instance.domainSize()));
    std::vector<Constraint> rebuilt;
    for (const auto& c : instance.constraints()) {
        if (c.function != g) {
            rebuilt.push_back(c);
            continue;
        }
        std::vector<int> scope = c.scope;
        int fresh = out.addVariable();
        scope.insert(scope.begin() + i, fresh);
        rebuilt.push_back({fName, std::move(scope)});
        rebuilt.push_back({deltaName, {fresh}});
    }
    Instance result(out.numVariables(), out.domainSize());
    for (const auto& [name, fn] : out.functions()) result.addFunction(name, fn);
    for (auto& c : rebuilt) result.addConstraint(c.function, std::move(c.scope));
    return result;
}

// ============================================================ Boolean pinning

namespace {

std::size_t complementIndex(const WeightFunction& f, std::size_t idx) {
    return idx ^ (tableSize(f.arity(), 2) - 1);
}

}  // namespace

Rational pinningReduceBoolean(const Instance& instance, const Evaluator& evaluator, BooleanPinningTrace* trace) {
    if (instance.domainSize() != 2) throw Refusal("Boolean pinning needs q = 2");
    BooleanPinningTrace local;
    BooleanPinningTrace& t = trace ? *trace : local;

    const WeightFunction delta0 = library::delta(0), delta1 = library::delta(1);
    std::set<std::string> deltas;
    std::vector<std::pair<std::string, const WeightFunction*>> family;
    for (const auto& [name, f] : instance.functions()) {
        if (f == delta0 || f == delta1) {
            deltas.insert(name);
        } else {
            family.emplace_back(name, &f);
        }
    }

    const auto n = static_cast<std::size_t>(instance.numVariables());
    std::vector<int> pin(n, -1);  // -1 free, 0 or 1 pinned
    bool anyPin = false;
    for (const auto& c : instance.constraints()) {
        if (!deltas.contains(c.function)) continue;
        anyPin = true;
        const int value = instance.function(c.function) == delta0 ? 0 : 1;
        auto v = static_cast<std::size_t>(c.scope[0]);
        if (pin[v] >= 0 && pin[v] != value) {
            t.trivialZero = true;
            t.result = 0;
            return t.result;
        }
        pin[v] = value;
    }
    if (!anyPin) {
        t.noPins = true;
        t.result = evaluator(instance);
        return t.result;
    }

    // Free variables keep their order; t0, t1 (or t) follow them.
    std::vector<int> mapping01(n), mappingT(n);
    int next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (pin[v] < 0) mapping01[v] = mappingT[v] = next++;
    }
    const int t0 = next, t1 = next + 1, tMerged = next;
    for (std::size_t v = 0; v < n; ++v) {
        if (pin[v] >= 0) {
            mapping01[v] = pin[v] == 0 ? t0 : t1;
            mappingT[v] = tMerged;
        }
    }
    const Instance familyOnly = copyWithout(instance, deltas);
    t.merged01 = remapVariables(familyOnly, mapping01, next + 2);
    t.merged = remapVariables(familyOnly, mappingT, next + 1);

    const Rational z01 = evaluator(t.merged01);
    const Rational zT = evaluator(t.merged);
    const Rational both = z01 - zT;  // Z(I' | t0=0,t1=1) + Z(I' | t0=1,t1=0)

    t.symmetric = std::all_of(family.begin(), family.end(), [](const auto& entry) {
        const WeightFunction& f = *entry.second;
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
            if (f.at(idx) != f.at(complementIndex(f, idx))) return false;
        }
        return true;
    });
    if (t.symmetric) {
        t.result = both / 2;
        return t.result;
    }

    // First (function, tuple) in catalog and index order with f(x) > f(complement x).
    for (const auto& [name, fp] : family) {
        const WeightFunction& f = *fp;
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
            const std::size_t bar = complementIndex(f, idx);
            if (f.at(idx) <= f.at(bar)) continue;
            t.witnessFunction = name;
            t.witnessTuple = f.tupleOf(idx);
            std::vector<int> scope01, scopeT;
            for (int bit : t.witnessTuple) {
                scope01.push_back(bit == 0 ? t0 : t1);
                scopeT.push_back(tMerged);
            }
            t.merged01Extended = t.merged01;
            t.merged01Extended.addConstraint(name, scope01);
            t.mergedExtended = t.merged;
            t.mergedExtended.addConstraint(name, scopeT);
            const Rational weighted = evaluator(t.merged01Extended) - evaluator(t.mergedExtended);
            // weighted = A f(x) + B f(xbar), both = A + B; A is Z(I).
            t.result = (weighted - f.at(bar) * both) / (f.at(idx) - f.at(bar));
            return t.result;
        }
    }
    throw std::logic_error("asymmetric family without a strict witness");
}

// ============================================================ interpolation

std::vector<Rational> solveVandermonde(const std::vector<Rational>& nodes, const std::vector<Rational>& values) {
    const std::size_t m = nodes.size();
    if (values.size() != m) throw InputError("node and value counts differ");
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
    for (std::size_t j = 0; j < m; ++j) {
        Rational p(1);
        for (std::size_t d = 0; d < m; ++d) {
            a[j][d] = p;
            p *= nodes[j];
        }
        a[j][m] = values[j];
    }
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        while (pivot < m && a[pivot][col] == 0) ++pivot;
        if (pivot == m) throw InputError("interpolation nodes are not distinct");
        std::swap(a[col], a[pivot]);
        const Rational inv = 1 / a[col][col];
        for (std::size_t c = col; c <= m; ++c) a[col][c] *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational factor = a[r][col];
            for (std::size_t c = col; c <= m; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<Rational> coefficients(m);
    for (std::size_t d = 0; d < m; ++d) coefficients[d] = a[d][m];
    return coefficients;
}

InterpolationResult interpolationReduce(const Instance& instance, const std::string& unary, const Rational& lambda,
                                        const Evaluator& evaluator) {
    if (instance.domainSize() != 2) throw Refusal("interpolation needs q = 2");
    const WeightFunction& uc = instance.function(unary);
    if (uc.arity() != 1 || uc.at(0) != 1) {
        throw InputError("function '" + unary + "' is not of the form U_c (table (1, c))");
    }
    if (lambda <= 0 || lambda == 1) throw InputError("lambda must be positive and different from 1");
    const Rational c = uc.at(1);

    InterpolationResult result;
    for (const auto& con : instance.constraints()) result.occurrences += con.function == unary ? 1u : 0u;
    const unsigned m = result.occurrences;

    const Instance rest = copyWithout(instance, {unary});
    const std::string lambdaName = rest.freshName("U_lambda");
    std::vector<Rational> nodes, values;
    for (unsigned j = 0; j <= m; ++j) {
        Instance ij = rest;
        ij.addFunction(lambdaName, library::unaryWeight(lambda));
        for (const auto& con : instance.constraints()) {
            if (con.function != unary) continue;
            for (unsigned copy = 0; copy < j; ++copy) ij.addConstraint(lambdaName, con.scope);
        }
        nodes.push_back(power(lambda, j));
        values.push_back(evaluator(ij));
    }
    result.coefficients = solveVandermonde(nodes, values);

    Rational value(0);
    for (auto it = result.coefficients.rbegin(); it != result.coefficients.rend(); ++it) value = value * c + *it;
    result.value = value;
    return result;
}

// ============================================================ parity gadget

namespace {

void addParity(Instance& gadget, const std::vector<int>& vars) {
    const std::size_t k = vars.size();
    if (k == 3) {
        gadget.addConstraint("xor3", vars);
        return;
    }
    if (k < 3) {
        // Pad with fresh variables pinned to 0.
        std::vector<int> padded = vars;
        while (padded.size() < 3) {
            int z = gadget.addVariable();
            gadget.addConstraint("delta0", {z});
            padded.push_back(z);
        }
        gadget.addConstraint("xor3", padded);
        return;
    }
    // x_1..x_m + y = 1, x_{m+1}..x_k + z = 1, y + z + w = 1, w = 0.
    const std::size_t m = (k + 1) / 2;
    const int y = gadget.addVariable();
    const int z = gadget.addVariable();
    const int w = gadget.addVariable();
    std::vector<int> left(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<int> right(vars.begin() + static_cast<std::ptrdiff_t>(m), vars.end());
    left.push_back(y);
    right.push_back(z);
    addParity(gadget, left);
    addParity(gadget, right);
    gadget.addConstraint("xor3", {y, z, w});
    gadget.addConstraint("delta0", {w});
}

}  // namespace

ParityGadget parityChain(int k) {
    if (k < 1) throw InputError("parity chain needs k >= 1");
    ParityGadget gadget{Instance(k, 2), k};
    gadget.instance.addFunction("xor3", library::parity(3));
    gadget.instance.addFunction("delta0", library::delta(0));
    std::vector<int> primaries(static_cast<std::size_t>(k));
    std::iota(primaries.begin(), primaries.end(), 0);
    addParity(gadget.instance, primaries);
    return gadget;
}

// ============================================================ symmetrization

SymmetrizedParity symmetrizeParity(const WeightFunction& f) {
    if (f.domainSize() != 2 || f.arity() != 3) throw Refusal("symmetrization needs a Boolean arity-3 function");
    const Relation support = underlyingRelation(f);
    const bool odd = support == underlyingRelation(library::parity(3));
    const bool even = support == underlyingRelation(library::evenParity(3));
    if (!odd && !even) throw Refusal("support is neither the odd nor the even parity relation");

    std::vector<Rational> table(8);
    std::array<int, 3> order{0, 1, 2};
    for (std::size_t idx = 0; idx < 8; ++idx) {
        Tuple x = f.tupleOf(idx);
        Rational product(1);
        std::sort(order.begin(), order.end());
        do {
            product *= f.lookup({x[static_cast<std::size_t>(order[0])], x[static_cast<std::size_t>(order[1])],
                                 x[static_cast<std::size_t>(order[2])]});
        } while (std::next_permutation(order.begin(), order.end()));
        table[idx] = product;
    }
    SymmetrizedParity out{WeightFunction(3, 2, table), Rational(0), WeightFunction()};

    // Odd support: weights at one and three ones; even: at zero and two ones.
    const Rational low = odd ? out.symmetric.lookup({1, 0, 0}) : out.symmetric.lookup({0, 0, 0});
    const Rational high = odd ? out.symmetric.lookup({1, 1, 1}) : out.symmetric.lookup({0, 1, 1});
    if (!exactSqrt(low / high, out.c)) {
        throw std::logic_error("symmetrized weight ratio " + toString(low / high) + " is not a rational square");
    }
    std::vector<Rational> g(8);
    for (std::size_t idx = 0; idx < 8; ++idx) {
        Tuple x = out.symmetric.tupleOf(idx);
        g[idx] = out.symmetric.at(idx) * power(out.c, static_cast<unsigned long>(x[0] + x[1] + x[2]));
    }
    out.pureAffine = WeightFunction(3, 2, std::move(g));
    return out;
}

// ============================================================ unary extraction

ExtractionStep extractUnary(const WeightFunction& g) {
    if (g.domainSize() != 2) throw Refusal("unary extraction needs a Boolean function");
    const Relation support = underlyingRelation(g);
    if (support.empty()) throw Refusal("precondition violated: g has empty support");
    if (!isAffineRelation(support)) throw Refusal("precondition violated: g does not have affine support");
    if (isPureAffine(g)) throw Refusal("precondition violated: g is pure affine");

    const int k = g.arity();
    for (int h = 0; h < k; ++h) {
        const std::size_t stride = g.stride(h);
        std::set<Rational> side[2];
        for (auto idx : support.tuples()) side[(idx & stride) ? 1 : 0].insert(g.at(idx));
        if (side[0].empty() || side[1].empty()) continue;  // constant column

        for (int b = 0; b < 2; ++b) {
            if (side[b].size() >= 2) return RecurseResult{pinCoordinate(g, h, b), h, b};
        }
        // Every 0-row carries w0 and every 1-row w1, with equally many of each.
        WeightFunction marginal = project(g, {h});
        const Rational lambda = marginal.at(1) / marginal.at(0);
        if (lambda == 0 || lambda == 1) throw std::logic_error("extracted unary weight is trivial");
        return UnaryResult{lambda, library::unaryWeight(lambda), h};
    }
    throw std::logic_error("non-pure-affine function with only constant support columns");
}

UnaryResult extractUnaryIterated(const WeightFunction& g, std::vector<ExtractionStep>* steps) {
    WeightFunction current = g;
    while (true) {
        ExtractionStep step = extractUnary(current);
        if (steps) steps->push_back(step);
        if (auto* unary = std::get_if<UnaryResult>(&step)) return *unary;
        current = std::get<RecurseResult>(step).reduced;
    }
}

// ============================================================ partition lattice

PartitionOfQ::PartitionOfQ(std::vector<int> labels) : labels_(std::move(labels)) {
    int nextLabel = 0;
    for (int l : labels_) {
        if (l < 0 || l > nextLabel) throw InputError("partition labels must form a restricted growth string");
        if (l == nextLabel) ++nextLabel;
    }
    blocks_ = nextLabel;
}

std::vector<std::vector<int>> PartitionOfQ::blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks_));
    for (std::size_t i = 0; i < labels_.size(); ++i) out[static_cast<std::size_t>(labels_[i])].push_back(static_cast<int>(i));
    return out;
}

bool PartitionOfQ::refines(const PartitionOfQ& other) const {
    if (other.labels_.size() != labels_.size()) return false;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j] && other.labels_[i] != other.labels_[j]) return false;
        }
    }
    return true;
}

std::string PartitionOfQ::toString() const {
    std::string out;
    for (const auto& block : blocks()) {
        if (!out.empty()) out += '|';
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(block[i]);
        }
    }
    return "{" + out + "}";
}

namespace {

void growPartitions(std::vector<int>& labels, std::size_t i, int blocks, std::vector<PartitionOfQ>& out) {
    if (i == labels.size()) {
        out.emplace_back(labels);
        return;
    }
    for (int l = 0; l <= blocks; ++l) {
        labels[i] = l;
        growPartitions(labels, i + 1, std::max(blocks, l + 1), out);
    }
}

}  // namespace

std::vector<PartitionOfQ> allPartitions(int q) {
    if (q < 1) throw InputError("partition lattice needs q >= 1");
    std::vector<PartitionOfQ> out;
    std::vector<int> labels(static_cast<std::size_t>(q), 0);
    growPartitions(labels, 1, 1, out);
    std::stable_sort(out.begin(), out.end(),
                     [](const PartitionOfQ& a, const PartitionOfQ& b) { return a.numBlocks() > b.numBlocks(); });
    return out;
}

const BigInt& MobiusTable::at(const PartitionOfQ& p) const {
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        if (partitions[i] == p) return mu[i];
    }
    throw InputError("partition " + p.toString() + " is not in the table");
}

MobiusTable mobiusTable(int q) {
    if (q > kMaxLatticeDomain) {
        throw Refusal("partition lattice for q = " + std::to_string(q) + " exceeds the limit q <= " +
                      std::to_string(kMaxLatticeDomain));
    }
    MobiusTable table;
    table.partitions = allPartitions(q);
    table.mu.resize(table.partitions.size());
    for (std::size_t t = 0; t < table.partitions.size(); ++t) {
        if (t == 0) {
            table.mu[t] = 1;  // the finest partition comes first
            continue;
        }
        BigInt sum = 0;
        for (std::size_t e = 0; e < t; ++e) {
            if (table.partitions[e].refines(table.partitions[t])) sum += table.mu[e];
        }
        table.mu[t] = -sum;
    }
    return table;
}

Rational mobiusPinningReduce(const Instance& instance, const Evaluator& evaluator, const std::string& disequality) {
    const int q = instance.domainSize();
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < instance.constraints().size(); ++i) {
        if (instance.constraints()[i].function == disequality) positions.push_back(i);
    }
    if (positions.empty()) throw Refusal("no '" + disequality + "' constraint to pin with");
    if (positions.size() > 1) throw Refusal("more than one disequality constraint is unsupported");
    if (!(instance.function(disequality) == library::allDistinct(q))) {
        throw InputError("'" + disequality + "' is not the pairwise-distinct indicator of arity q");
    }
    const std::vector<int>& ts = instance.constraints()[positions.front()].scope;
    if (std::set<int>(ts.begin(), ts.end()).size() != ts.size()) {
        throw InputError("the disequality constraint must be on q distinct variables");
    }

    const Instance rest = copyWithout(instance, {disequality});
    const MobiusTable mu = mobiusTable(q);
    Rational total(0);
    const auto n = static_cast<std::size_t>(instance.numVariables());
    for (std::size_t p = 0; p < mu.partitions.size(); ++p) {
        const auto& eta = mu.partitions[p];
        // t_i maps to the first t in its block, then indices are compacted.
        std::vector<int> target(n);
        std::iota(target.begin(), target.end(), 0);
        for (const auto& block : eta.blocks()) {
            for (int i : block) target[static_cast<std::size_t>(ts[static_cast<std::size_t>(i)])] = ts[static_cast<std::size_t>(block.front())];
        }
        std::vector<int> compact(n, -1), mapping(n);
        int next = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (target[v] == static_cast<int>(v)) compact[v] = next++;
        }
        for (std::size_t v = 0; v < n; ++v) mapping[v] = compact[static_cast<std::size_t>(target[v])];
        total += Rational(mu.mu[p]) * evaluator(remapVariables(rest, mapping, next));
    }
    return total;
}

bool isDomainSymmetric(const WeightFunction& f) {
    const int q = f.domainSize();
    std::vector<int> perm(static_cast<std::size_t>(q));
    std::iota(perm.begin(), perm.end(), 0);
    Tuple image;
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
            Tuple x = f.tupleOf(idx);
            image.clear();
            for (int v : x) image.push_back(perm[static_cast<std::size_t>(v)]);
            if (f.lookup(image) != f.at(idx)) return false;
        }
    }
    return true;
}

Rational symmetricPinningReduceQ(const Instance& instance, const Evaluator& evaluator) {
    const int q = instance.domainSize();
    if (q > kMaxLatticeDomain) throw Refusal("symmetric pinning is limited to q <= " + std::to_string(kMaxLatticeDomain));

    std::map<std::string, int> deltaValue;
    std::set<std::string> deltas;
    for (const auto& [name, f] : instance.functions()) {
        for (int c = 0; c < q; ++c) {
            if (f == library::delta(c, q)) {
                deltaValue[name] = c;
                deltas.insert(name);
            }
        }
    }
    const auto n = static_cast<std::size_t>(instance.numVariables());
    std::vector<int> pin(n, -1);
    bool anyPin = false;
    for (const auto& c : instance.constraints()) {
        auto it = deltaValue.find(c.function);
        if (it == deltaValue.end()) continue;
        anyPin = true;
        auto v = static_cast<std::size_t>(c.scope[0]);
        if (pin[v] >= 0 && pin[v] != it->second) return Rational(0);
        pin[v] = it->second;
    }
    if (!anyPin) return evaluator(instance);

    for (const auto& [name, f] : instance.functions()) {
        if (!deltas.contains(name) && !isDomainSymmetric(f)) {
            throw Refusal("function '" + name +
                          "' is not invariant under domain permutations; the non-symmetric case is unsupported");
        }
    }

    std::vector<int> mapping(n);
    int next = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (pin[v] < 0) mapping[v] = next++;
    }
    const int base = next;
    for (std::size_t v = 0; v < n; ++v) {
        if (pin[v] >= 0) mapping[v] = base + pin[v];
    }
    Instance pinned = remapVariables(copyWithout(instance, deltas), mapping, base + q);
    const std::string diseq = pinned.freshName("alldiff");
    pinned.addFunction(diseq, library::allDistinct(q));
    std::vector<int> ts(static_cast<std::size_t>(q));
    std::iota(ts.begin(), ts.end(), base);
    pinned.addConstraint(diseq, ts);

    BigInt factorial = 1;
    for (int i = 2; i <= q; ++i) factorial *= i;
    return mobiusPinningReduce(pinned, evaluator, diseq) / Rational(factorial);
}

}  // namespace wcsp
