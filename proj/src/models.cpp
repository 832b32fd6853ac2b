#include "wcsp/models.hpp"

#include "wcsp/json_io.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

namespace wcsp {

// ---------------------------------------------------------------- Graph

Graph::Graph(int numVertices, std::vector<std::pair<int, int>> edges) : n_(numVertices), edges_(std::move(edges)) {
    if (numVertices < 0) throw InputError("negative vertex count");
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : edges_) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) {
            throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") has an endpoint out of range");
        }
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u) + " (graphs must be simple)");
        if (!seen.insert(std::minmax(u, v)).second) {
            throw InputError("repeated edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        }
    }
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (const auto& [u, v] : edges_) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
    for (const auto& [u, v] : edges_) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n_;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool looksLikeJson(std::string_view text) {
    text = trim(text);
    return !text.empty() && (text.front() == '{' || text.front() == '[');
}

}  // namespace

Graph parseGraph(std::string_view text) {
    if (looksLikeJson(text)) {
        auto j = parseJsonText(text);
        if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer()) {
            throw InputError("$: graph JSON needs an integer field 'n'");
        }
        std::vector<std::pair<int, int>> edges;
        if (j.contains("edges")) {
            const auto& es = j.at("edges");
            for (std::size_t i = 0; i < es.size(); ++i) {
                const auto& e = es[i];
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                    throw InputError("$.edges[" + std::to_string(i) + "]: expected [u, v]");
                }
                edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        }
        return Graph(j.at("n").get<int>(), std::move(edges));
    }

    std::istringstream in{std::string(text)};
    std::string line;
    int declared = -1, maxVertex = -1, lineNo = 0;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::string_view body = trim(line);
        if (body.empty()) continue;
        std::istringstream fields{std::string(body)};
        std::string first;
        fields >> first;
        if (first == "vertices") {
            if (!(fields >> declared) || declared < 0) {
                throw InputError("line " + std::to_string(lineNo) + ": expected 'vertices N'");
            }
            continue;
        }
        int u = 0, v = 0;
        std::istringstream pair{std::string(body)};
        std::string extra;
        if (!(pair >> u >> v) || (pair >> extra)) {
            throw InputError("line " + std::to_string(lineNo) + ": expected an edge 'u v'");
        }
        edges.emplace_back(u, v);
        maxVertex = std::max({maxVertex, u, v});
    }
    const int n = declared >= 0 ? declared : maxVertex + 1;
    return Graph(n, std::move(edges));
}

// ---------------------------------------------------------------- TargetMatrix

TargetMatrix::TargetMatrix(std::vector<std::vector<Rational>> entries) : entries_(std::move(entries)) {
    const std::size_t q = entries_.size();
    if (q < 2) throw InputError("target matrix must be at least 2 x 2");
    for (std::size_t i = 0; i < q; ++i) {
        if (entries_[i].size() != q) throw InputError("target matrix row " + std::to_string(i) + " has the wrong length");
        for (std::size_t j = 0; j < q; ++j) {
            entries_[i][j].canonicalize();
            if (entries_[i][j] < 0) throw InputError("target matrix entries must be non-negative");
        }
    }
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = i + 1; j < q; ++j) {
            if (entries_[i][j] != entries_[j][i]) {
                throw InputError("target matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
}

WeightFunction TargetMatrix::asFunction() const {
    std::vector<Rational> table;
    for (const auto& row : entries_) table.insert(table.end(), row.begin(), row.end());
    return WeightFunction(2, size(), std::move(table));
}

TargetMatrix TargetMatrix::ising(const Rational& lambda) {
    return TargetMatrix({{Rational(1), lambda}, {lambda, Rational(1)}});
}

TargetMatrix parseMatrix(std::string_view text) {
    std::vector<std::vector<Rational>> rows;
    if (looksLikeJson(text)) {
        auto j = parseJsonText(text);
        if (!j.is_array()) throw InputError("$: expected an array of rows");
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_array()) throw InputError("$[" + std::to_string(i) + "]: expected a row array");
            std::vector<Rational> row;
            for (std::size_t k = 0; k < j[i].size(); ++k) {
                row.push_back(rationalFromJson(j[i][k], "$[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
            }
            rows.push_back(std::move(row));
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        int lineNo = 0;
        while (std::getline(in, line)) {
            ++lineNo;
            if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
            std::istringstream fields(line);
            std::string token;
            std::vector<Rational> row;
            while (fields >> token) {
                try {
                    row.push_back(parseRational(token));
                } catch (const InputError& e) {
                    throw InputError("line " + std::to_string(lineNo) + ": " + e.what());
                }
            }
            if (!row.empty()) rows.push_back(std::move(row));
        }
    }
    return TargetMatrix(std::move(rows));
}

std::size_t rationalRank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            const Rational factor = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------- GeneratorMatrix

GeneratorMatrix::GeneratorMatrix(std::size_t columns, std::vector<BitRow> rows) : columns_(columns), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
        if (r.size() != columns_) throw InputError("generator rows must all have " + std::to_string(columns_) + " columns");
    }
    if (gf2Rank(rows_) != rows_.size()) throw InputError("generator matrix does not have full row rank over GF(2)");
}

GeneratorMatrix parseGeneratorMatrix(std::string_view text) {
    std::vector<std::vector<int>> bits;
    if (looksLikeJson(text)) {
        auto j = parseJsonText(text);
        if (!j.is_array()) throw InputError("$: expected an array of 0/1 rows");
        for (std::size_t i = 0; i < j.size(); ++i) {
            std::vector<int> row;
            for (std::size_t k = 0; k < j[i].size(); ++k) {
                if (!j[i][k].is_number_integer() || (j[i][k] != 0 && j[i][k] != 1)) {
                    throw InputError("$[" + std::to_string(i) + "][" + std::to_string(k) + "]: expected 0 or 1");
                }
                row.push_back(j[i][k].get<int>());
            }
            bits.push_back(std::move(row));
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        int lineNo = 0;
        while (std::getline(in, line)) {
            ++lineNo;
            std::istringstream fields(line);
            std::string token;
            std::vector<int> row;
            while (fields >> token) {
                if (token != "0" && token != "1") throw InputError("line " + std::to_string(lineNo) + ": expected 0 or 1");
                row.push_back(token == "1");
            }
            if (!row.empty()) bits.push_back(std::move(row));
        }
    }
    const std::size_t cols = bits.empty() ? 0 : bits.front().size();
    std::vector<BitRow> rows;
    for (const auto& b : bits) {
        if (b.size() != cols) throw InputError("generator rows have different lengths");
        BitRow r(cols);
        for (std::size_t k = 0; k < cols; ++k) r.set(k, b[k] != 0);
        rows.push_back(std::move(r));
    }
    return GeneratorMatrix(cols, std::move(rows));
}

// ---------------------------------------------------------------- Eval(H)

Instance graphHomInstance(const TargetMatrix& h, const Graph& g) {
    Instance instance(g.numVertices(), h.size());
    instance.addFunction("h", h.asFunction());
    for (const auto& [u, v] : g.edges()) instance.addConstraint("h", {u, v});
    return instance;
}

Evaluation evalGraphHom(const TargetMatrix& h, const Graph& g, const Budget& budget) {
    return evaluate(graphHomInstance(h, g), budget);
}

std::string toString(GraphHomVerdict verdict) { return verdict == GraphHomVerdict::Tractable ? "TRACTABLE" : "HARD"; }

GraphHomClassification bulatovGroheClassify(const TargetMatrix& h) {
    const int q = h.size();
    std::vector<bool> present(static_cast<std::size_t>(q), false);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < q; ++j) {
            if (h(i, j) != 0) present[static_cast<std::size_t>(i)] = true;
        }
    }

    GraphHomClassification out;
    out.verdict = GraphHomVerdict::Tractable;
    std::vector<int> color(static_cast<std::size_t>(q), -1);
    for (int start = 0; start < q; ++start) {
        if (!present[static_cast<std::size_t>(start)] || color[static_cast<std::size_t>(start)] >= 0) continue;
        GraphHomClassification::Component comp{{}, true, 0, false};
        std::vector<int> stack{start};
        color[static_cast<std::size_t>(start)] = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.vertices.push_back(u);
            for (int w = 0; w < q; ++w) {
                if (h(u, w) == 0) continue;
                if (color[static_cast<std::size_t>(w)] < 0) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(u)];
                    stack.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(u)]) {
                    comp.bipartite = false;  // includes loops (w == u)
                }
            }
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        std::vector<std::vector<Rational>> sub;
        for (int i : comp.vertices) {
            std::vector<Rational> row;
            for (int j : comp.vertices) row.push_back(h(i, j));
            sub.push_back(std::move(row));
        }
        comp.rank = rationalRank(std::move(sub));
        comp.tractable = comp.rank <= (comp.bipartite ? 2u : 1u);
        if (!comp.tractable) out.verdict = GraphHomVerdict::Hard;
        out.components.push_back(std::move(comp));
    }
    return out;
}

// ---------------------------------------------------------------- weight enumerator

Rational weightEnumerator(const GeneratorMatrix& a, const Rational& lambda, const Budget& budget) {
    const std::size_t r = a.numRows();
    if (r >= 63 || (std::uint64_t{1} << r) > budget.maxStates) {
        throw Refusal("weight enumerator over 2^" + std::to_string(r) + " codewords exceeds the budget");
    }
    // Gray-code walk: consecutive codewords differ by one generator row.
    std::vector<BigInt> histogram(a.numColumns() + 1, 0);
    BitRow word(a.numColumns());
    ++histogram[0];
    const std::uint64_t total = std::uint64_t{1} << r;
    for (std::uint64_t s = 1; s < total; ++s) {
        const auto row = static_cast<std::size_t>(std::countr_zero(s));
        word ^= a.rows()[row];
        ++histogram[word.popcount()];
    }
    Rational w(0);
    for (std::size_t k = histogram.size(); k-- > 0;) w = w * lambda + Rational(histogram[k]);
    return w;
}

GeneratorMatrix incidenceCode(const Graph& g) {
    if (!g.connected()) throw InputError("incidence code needs a connected graph");
    const int n = g.numVertices();
    const std::size_t m = g.edges().size();
    std::vector<BitRow> rows;
    for (int v = 0; v + 1 < n; ++v) {
        BitRow row(m);
        for (std::size_t e = 0; e < m; ++e) {
            if (g.edges()[e].first == v || g.edges()[e].second == v) row.set(e);
        }
        rows.push_back(std::move(row));
    }
    return GeneratorMatrix(m, std::move(rows));
}

CutIdentityCheck verifyCutIdentity(const Graph& g, const Rational& lambda, const Budget& budget) {
    CutIdentityCheck check;
    check.enumerator = weightEnumerator(incidenceCode(g), lambda, budget);
    check.isingZ = evalGraphHom(TargetMatrix::ising(lambda), g, budget).z;
    check.holds = 2 * check.enumerator == check.isingZ;
    return check;
}

// ---------------------------------------------------------------- product-like gadget

TargetMatrix productLikeGadgetMatrix(const WeightFunction& f, int i) {
    if (f.domainSize() != 2) throw Refusal("the product-like gadget is Boolean only");
    if (i < 0 || i >= f.arity()) throw InputError("gadget index out of range");
    const std::size_t stride = f.stride(i);
    Rational a00(0), a01(0), a11(0);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
        if (idx & stride) continue;
        const Rational& zero = f.at(idx);
        const Rational& one = f.at(idx | stride);
        a00 += zero * zero;
        a01 += zero * one;
        a11 += one * one;
    }
    return TargetMatrix({{a00, a01}, {a01, a11}});
}

bool gadgetIsSingular(const TargetMatrix& gadget) {
    return gadget(0, 0) * gadget(1, 1) - gadget(0, 1) * gadget(1, 0) == 0;
}

Instance productLikeGadgetInstance(const WeightFunction& f, int i, const Graph& g) {
    if (i < 0 || i >= f.arity()) throw InputError("gadget index out of range");
    Instance y(g.numVertices(), f.domainSize());
    y.addFunction("f", f);
    for (const auto& [u, v] : g.edges()) {
        std::vector<int> shared;
        for (int k = 0; k + 1 < f.arity(); ++k) shared.push_back(y.addVariable());
        for (int endpoint : {u, v}) {
            std::vector<int> scope = shared;
            scope.insert(scope.begin() + i, endpoint);
            y.addConstraint("f", std::move(scope));
        }
    }
    return y;
}

}  // namespace wcsp
