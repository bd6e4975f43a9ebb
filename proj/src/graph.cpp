#include "timely/graph.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>

#include "timely/error.hpp"

namespace timely {

ConstraintGraph::ConstraintGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), offsets_(vertex_count + 1, 0) {
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const Edge& e = edges_[k];
        if (e.from >= vertex_count_ || e.to >= vertex_count_) throw std::invalid_argument("edge endpoint out of range");
        if (e.from == e.to) throw std::invalid_argument("self-loop");
        if (k > 0 && edges_[k - 1].from == e.from && edges_[k - 1].to == e.to) {
            throw std::invalid_argument("parallel edge");
        }
        ++offsets_[e.from + 1];
    }
    for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] += offsets_[v];
}

ConstraintGraph build_graph(const TimelySpec& spec) {
    std::vector<Edge> edges;
    edges.reserve(spec.entries().size());
    for (const auto& [pair, value] : spec.entries()) {
        if (value.is_neg_inf()) {
            throw Error(ErrorKind::NegInfEntry,
                        "bound -inf on (" + spec.name(pair.first) + "," + spec.name(pair.second) + ")");
        }
        edges.push_back({pair.first, pair.second, value.value()});
    }
    return ConstraintGraph(spec.size(), std::move(edges));
}

bool validate_witness(const ConstraintGraph& g, const NegativeCycleWitness& witness) {
    if (witness.cycle.empty()) return false;
    Rational total;
    for (std::size_t k = 0; k < witness.cycle.size(); ++k) {
        const Vertex from = witness.cycle[k];
        const Vertex to = witness.cycle[(k + 1) % witness.cycle.size()];
        if (from >= g.vertex_count()) return false;
        auto out = g.out_edges(from);
        auto it = std::find_if(out.begin(), out.end(), [&](const Edge& e) { return e.to == to; });
        if (it == out.end()) return false;
        total += it->weight;
    }
    return total == witness.total_weight && total.sign() < 0;
}

namespace {

constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

NegativeCycleWitness extract_cycle(const ConstraintGraph& g, const std::vector<std::size_t>& pred, Vertex v) {
    const auto& edges = g.edges();
    auto step_back = [&](Vertex x) {
        if (pred[x] == kNoEdge) throw std::logic_error("predecessor chain ended outside a cycle");
        return edges[pred[x]].from;
    };
    // n steps back from a vertex relaxed in round n always land on the cycle.
    for (std::size_t k = 0; k < g.vertex_count(); ++k) v = step_back(v);

    NegativeCycleWitness w;
    const Vertex start = v;
    do {
        w.cycle.push_back(v);
        w.total_weight += edges[pred[v]].weight;
        v = step_back(v);
    } while (v != start);
    std::reverse(w.cycle.begin(), w.cycle.end());
    std::rotate(w.cycle.begin(), std::min_element(w.cycle.begin(), w.cycle.end()), w.cycle.end());
    if (w.total_weight.sign() >= 0) throw std::logic_error("extracted cycle is not negative");
    return w;
}

// Relaxes every edge round by round from the given initial distances. A change
// in round n (n = vertex count) proves a negative cycle.
SingleSourceResult relax_to_fixpoint(const ConstraintGraph& g, std::vector<Bound> dist) {
    const std::size_t n = g.vertex_count();
    const auto& edges = g.edges();
    std::vector<std::size_t> pred(n, kNoEdge);
    Vertex last = 0;
    for (std::size_t round = 0; round < n; ++round) {
        bool changed = false;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const Edge& e = edges[k];
            if (!dist[e.from].is_finite()) continue;
            Bound candidate(dist[e.from].value() + e.weight);
            if (candidate < dist[e.to]) {
                dist[e.to] = std::move(candidate);
                pred[e.to] = k;
                changed = true;
                last = e.to;
            }
        }
        if (!changed) return dist;
    }
    if (n == 0) return dist;
    return extract_cycle(g, pred, last);
}

void propagate_negative_cycles(DistanceMatrix& d) {
    const std::size_t n = d.size();
    std::vector<Vertex> on_cycle;
    for (Vertex k = 0; k < n; ++k) {
        if (d.at(k, k) < Bound(0)) on_cycle.push_back(k);
    }
    for (Vertex k : on_cycle) {
        for (Vertex i = 0; i < n; ++i) {
            if (d.at(i, k).is_pos_inf()) continue;
            for (Vertex j = 0; j < n; ++j) {
                if (!d.at(k, j).is_pos_inf()) d.at(i, j) = Bound::neg_inf();
            }
        }
    }
}

std::optional<DistanceMatrix> floyd_warshall_int64(const ConstraintGraph& g) {
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
    const std::size_t n = g.vertex_count();
    std::vector<std::int64_t> d(n * n, kInf);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
    for (const Edge& e : g.edges()) {
        auto w = e.weight.as_int64();
        if (!w) return std::nullopt;
        d[e.from * n + e.to] = *w;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const std::int64_t* row_k = d.data() + k * n;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t* row_i = d.data() + i * n;
            const std::int64_t dik = row_i[k];
            if (dik == kInf) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const std::int64_t dkj = row_k[j];
                if (dkj == kInf) continue;
                std::int64_t sum;
                if (__builtin_add_overflow(dik, dkj, &sum) || sum == kInf) return std::nullopt;
                if (sum < row_i[j]) row_i[j] = sum;
            }
        }
    }
    DistanceMatrix out(n, Bound::pos_inf());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i * n + j] != kInf) out.at(i, j) = Bound(d[i * n + j]);
        }
    }
    return out;
}

DistanceMatrix floyd_warshall_exact(const ConstraintGraph& g) {
    const std::size_t n = g.vertex_count();
    DistanceMatrix d(n, Bound::pos_inf());
    for (std::size_t i = 0; i < n; ++i) d.at(i, i) = Bound(0);
    for (const Edge& e : g.edges()) d.at(e.from, e.to) = Bound(e.weight);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (d.at(i, k).is_pos_inf()) continue;
            const Rational dik = d.at(i, k).value();
            for (std::size_t j = 0; j < n; ++j) {
                const Bound& dkj = d.at(k, j);
                if (dkj.is_pos_inf()) continue;
                Bound sum(dik + dkj.value());
                if (sum < d.at(i, j)) d.at(i, j) = std::move(sum);
            }
        }
    }
    return d;
}

}  // namespace

SingleSourceResult bellman_ford(const ConstraintGraph& g, Vertex source, CycleDetection mode) {
    if (source >= g.vertex_count()) throw std::invalid_argument("source vertex out of range");
    if (mode == CycleDetection::Global) {
        auto h = potentials(g);
        if (auto* w = std::get_if<NegativeCycleWitness>(&h)) return *w;
    }
    std::vector<Bound> dist(g.vertex_count(), Bound::pos_inf());
    dist[source] = Bound(0);
    return relax_to_fixpoint(g, std::move(dist));
}

std::variant<std::vector<Rational>, NegativeCycleWitness> potentials(const ConstraintGraph& g) {
    auto result = relax_to_fixpoint(g, std::vector<Bound>(g.vertex_count(), Bound(0)));
    if (auto* w = std::get_if<NegativeCycleWitness>(&result)) return std::move(*w);
    std::vector<Rational> h;
    h.reserve(g.vertex_count());
    for (const Bound& b : std::get<std::vector<Bound>>(result)) h.push_back(b.value());
    return h;
}

DistanceMatrix floyd_warshall(const ConstraintGraph& g) {
    std::optional<DistanceMatrix> fast = floyd_warshall_int64(g);
    DistanceMatrix d = fast ? std::move(*fast) : floyd_warshall_exact(g);
    propagate_negative_cycles(d);
    return d;
}

DistanceMatrix sparse_apsp(const ConstraintGraph& g) {
    auto h_or_cycle = potentials(g);
    if (std::holds_alternative<NegativeCycleWitness>(h_or_cycle)) return floyd_warshall(g);
    const auto& h = std::get<std::vector<Rational>>(h_or_cycle);

    const std::size_t n = g.vertex_count();
    // Johnson reweighting: w + h(u) - h(v) >= 0 on every edge.
    std::vector<Rational> reduced;
    reduced.reserve(g.edge_count());
    for (const Edge& e : g.edges()) reduced.push_back(e.weight + h[e.from] - h[e.to]);

    DistanceMatrix out(n, Bound::pos_inf());
    std::vector<std::optional<Rational>> dist(n);
    std::vector<bool> done(n);
    using Item = std::pair<Rational, Vertex>;
    auto later = [](const Item& a, const Item& b) { return a.first > b.first; };
    const Edge* base = g.edges().data();
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), std::nullopt);
        std::fill(done.begin(), done.end(), false);
        std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
        dist[s] = Rational(0);
        queue.emplace(Rational(0), s);
        while (!queue.empty()) {
            auto [du, u] = queue.top();
            queue.pop();
            if (done[u]) continue;
            done[u] = true;
            for (const Edge& e : g.out_edges(u)) {
                if (done[e.to]) continue;
                Rational candidate = du + reduced[static_cast<std::size_t>(&e - base)];
                if (!dist[e.to] || candidate < *dist[e.to]) {
                    dist[e.to] = candidate;
                    queue.emplace(std::move(candidate), e.to);
                }
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            if (dist[v]) out.at(s, v) = Bound(*dist[v] - h[s] + h[v]);
        }
    }
    return out;
}

DistanceMatrix all_pairs(const ConstraintGraph& g, Engine engine) {
    switch (engine) {
        case Engine::Dense: return floyd_warshall(g);
        case Engine::Sparse: return sparse_apsp(g);
        case Engine::Auto: break;
    }
    const std::size_t n = g.vertex_count();
    if (g.edge_count() * 8 < n * n) return sparse_apsp(g);
    return floyd_warshall(g);
}

}  // namespace timely
