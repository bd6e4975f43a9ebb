#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "timely/numerics.hpp"
#include "timely/spec.hpp"

namespace timely {

using Vertex = std::size_t;

struct Edge {
    Vertex from;
    Vertex to;
    Rational weight;
};

/// Weighted digraph with an edge (i, j) exactly where delta(i, j) is finite.
/// Edges are stored sorted by (from, to) in a compressed adjacency layout.
class ConstraintGraph {
  public:
    /// Throws std::invalid_argument on self-loops, parallel edges or
    /// out-of-range endpoints.
    ConstraintGraph(std::size_t vertex_count, std::vector<Edge> edges);

    [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] std::span<const Edge> out_edges(Vertex v) const {
        return {edges_.data() + offsets_[v], edges_.data() + offsets_[v + 1]};
    }

  private:
    std::size_t vertex_count_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
};

/// Throws Error(NegInfEntry) if the spec holds a -inf entry.
ConstraintGraph build_graph(const TimelySpec& spec);

/// Dense n x n matrix of path-length infima, diagonal included.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, const Bound& fill) : n_(n), entries_(n * n, fill) {}

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] const Bound& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    [[nodiscard]] Bound& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    [[nodiscard]] std::span<const Bound> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<Bound> entries_;
};

/// A directed cycle listed from its smallest vertex; edges join consecutive
/// vertices and the last back to the first.
struct NegativeCycleWitness {
    std::vector<Vertex> cycle;
    Rational total_weight;

    friend bool operator==(const NegativeCycleWitness&, const NegativeCycleWitness&) = default;
};

/// Re-checks a witness against the graph: every hop is an edge and the hop
/// weights sum to total_weight < 0.
bool validate_witness(const ConstraintGraph& g, const NegativeCycleWitness& witness);

enum class CycleDetection {
    Reachable,  // only cycles reachable from the source
    Global,     // any cycle in the graph (virtual zero-weight super-source)
};

using SingleSourceResult = std::variant<std::vector<Bound>, NegativeCycleWitness>;

SingleSourceResult bellman_ford(const ConstraintGraph& g, Vertex source,
                                CycleDetection mode = CycleDetection::Reachable);

/// Bellman-Ford from a virtual source joined to every vertex by a 0-weight
/// edge. Returns vertex potentials h with h(v) <= h(u) + w(u, v), or a
/// negative cycle.
std::variant<std::vector<Rational>, NegativeCycleWitness> potentials(const ConstraintGraph& g);

DistanceMatrix floyd_warshall(const ConstraintGraph& g);
DistanceMatrix sparse_apsp(const ConstraintGraph& g);

enum class Engine { Auto, Dense, Sparse };

/// Auto picks sparse_apsp when the graph is sparse (|E| < |V|^2 / 8);
/// every engine returns the same matrix.
DistanceMatrix all_pairs(const ConstraintGraph& g, Engine engine = Engine::Auto);

}  // namespace timely
