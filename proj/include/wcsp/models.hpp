#pragma once

#include "wcsp/core.hpp"
#include "wcsp/gf2.hpp"
#include "wcsp/tractable.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wcsp {

/// Simple undirected graph: no loops, no multi-edges.
class Graph {
public:
    explicit Graph(int numVertices = 0, std::vector<std::pair<int, int>> edges = {});

    int numVertices() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::vector<int> degrees() const;
    bool connected() const;

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
};

/// Edge-list text ("u v" per line, '#' comments, optional "vertices N" line)
/// or JSON {"n": N, "edges": [[u, v], ...]}.
Graph parseGraph(std::string_view text);

/// Symmetric q x q matrix with non-negative rational entries.
class TargetMatrix {
public:
    explicit TargetMatrix(std::vector<std::vector<Rational>> entries);

    int size() const { return static_cast<int>(entries_.size()); }
    const Rational& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const std::vector<std::vector<Rational>>& entries() const { return entries_; }

    /// H viewed as the binary weight function h.
    WeightFunction asFunction() const;

    static TargetMatrix ising(const Rational& lambda);

private:
    std::vector<std::vector<Rational>> entries_;
};

/// JSON [[...], ...] of rationals, or whitespace-separated rows of text.
TargetMatrix parseMatrix(std::string_view text);

/// Rank over the rationals.
std::size_t rationalRank(std::vector<std::vector<Rational>> rows);

/// r x C bit matrix of full row rank over GF(2).
class GeneratorMatrix {
public:
    GeneratorMatrix(std::size_t columns, std::vector<BitRow> rows);

    std::size_t numRows() const { return rows_.size(); }
    std::size_t numColumns() const { return columns_; }
    const std::vector<BitRow>& rows() const { return rows_; }

private:
    std::size_t columns_;
    std::vector<BitRow> rows_;
};

/// Whitespace-separated 0/1 rows, or JSON [[0,1,...], ...].
GeneratorMatrix parseGeneratorMatrix(std::string_view text);

/// #CSP({h}) instance with one h-constraint per edge.
Instance graphHomInstance(const TargetMatrix& h, const Graph& g);

/// Z_H(G); uses a tractable evaluator when the classifier admits one.
Evaluation evalGraphHom(const TargetMatrix& h, const Graph& g, const Budget& budget = {});

enum class GraphHomVerdict { Tractable, Hard };

std::string toString(GraphHomVerdict verdict);

struct GraphHomClassification {
    struct Component {
        std::vector<int> vertices;
        bool bipartite;
        std::size_t rank;
        bool tractable;
    };
    std::vector<Component> components;
    GraphHomVerdict verdict;
};

/// Per connected component of the support graph of H (a vertex is present iff
/// its row is nonzero; a loop makes a component non-bipartite): tractable iff
/// rank <= 1 when non-bipartite and rank <= 2 when bipartite.
GraphHomClassification bulatovGroheClassify(const TargetMatrix& h);

/// sum over codewords c of lambda^|c|. Enumerates 2^r codewords.
Rational weightEnumerator(const GeneratorMatrix& a, const Rational& lambda, const Budget& budget = {});

/// Incidence matrix of a connected graph with the last vertex's row removed.
GeneratorMatrix incidenceCode(const Graph& g);

struct CutIdentityCheck {
    Rational enumerator;  // W_A(lambda)
    Rational isingZ;      // Z_H(G), H = [[1, lambda], [lambda, 1]]
    bool holds;           // W == Z / 2
};

CutIdentityCheck verifyCutIdentity(const Graph& g, const Rational& lambda, const Budget& budget = {});

/// The 2 x 2 matrix A A^T where A_{b,y} = f(y with coordinate i set to b).
TargetMatrix productLikeGadgetMatrix(const WeightFunction& f, int i);

/// det(A A^T) == 0, i.e. the two slices of f along i are proportional.
bool gadgetIsSingular(const TargetMatrix& gadget);

/// #CSP({f}) instance Y with Z(Y) = Z_{AA^T}(G): a variable per vertex, k-1
/// shared variables per edge, and f applied from both endpoints with the
/// vertex variable in coordinate i.
Instance productLikeGadgetInstance(const WeightFunction& f, int i, const Graph& g);

}  // namespace wcsp
