// Shared fixtures, generators and independent oracles for the test suites.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "timely/canon.hpp"
#include "timely/graph.hpp"
#include "timely/spec.hpp"

namespace testing_support {

using namespace timely;

inline TimelySpec make_spec(std::vector<std::string> actions,
                            const std::vector<std::tuple<std::string, std::string, Bound>>& entries,
                            TimeModel model = TimeModel::Discrete) {
    TimelySpec spec(model, std::move(actions));
    for (const auto& [from, to, value] : entries) spec.constrain(spec.index_of(from), spec.index_of(to), value);
    return spec;
}

// The running example: d(a,b)=5, d(b,a)=-3, d(b,c)=2, d(c,a)=0.
inline TimelySpec s1() {
    return make_spec({"a", "b", "c"}, {{"a", "b", 5}, {"b", "a", -3}, {"b", "c", 2}, {"c", "a", 0}});
}

inline TimelySpec two_cycle() { return make_spec({"a", "b"}, {{"a", "b", 1}, {"b", "a", -2}}); }

inline Schedule schedule(std::initializer_list<std::int64_t> values) {
    Schedule t;
    for (auto v : values) t.times.emplace_back(v);
    return t;
}

inline std::vector<std::string> names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

struct SpecGenerator {
    std::mt19937_64 rng;
    double density = 0.5;
    std::int64_t lo = -5;
    std::int64_t hi = 5;

    explicit SpecGenerator(std::uint64_t seed) : rng(seed) {}

    std::int64_t uniform(std::int64_t a, std::int64_t b) { return std::uniform_int_distribution<std::int64_t>(a, b)(rng); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng); }

    TimelySpec random(std::size_t n, TimeModel model = TimeModel::Discrete) {
        TimelySpec spec(model, names(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && coin(density)) spec.set_bound(i, j, Bound(uniform(lo, hi)));
            }
        }
        return spec;
    }

    // Adds a closed walk whose weights sum to a negative value.
    TimelySpec with_negative_cycle(std::size_t n) {
        TimelySpec spec = random(n);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        const std::size_t len = static_cast<std::size_t>(uniform(2, static_cast<std::int64_t>(n)));
        std::int64_t total = 0;
        for (std::size_t k = 0; k + 1 < len; ++k) {
            const std::int64_t w = uniform(lo, hi);
            total += w;
            spec.set_bound(order[k], order[k + 1], Bound(w));
        }
        spec.set_bound(order[len - 1], order[0], Bound(-total - uniform(1, 3)));
        return spec;
    }

    TimelySpec with_neg_inf(std::size_t n) {
        TimelySpec spec = random(n);
        const auto i = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1));
        auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 2));
        if (j >= i) ++j;
        spec.set_bound(i, j, Bound::neg_inf());
        return spec;
    }

    ConstraintGraph random_graph(std::size_t n, double p, std::int64_t wlo, std::int64_t whi) {
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && coin(p)) edges.push_back({i, j, Rational(uniform(wlo, whi))});
            }
        }
        return ConstraintGraph(n, std::move(edges));
    }
};

// Independent distance function by exhaustive search (small graphs only):
// -inf where a walk i ~> j can pass through a vertex of a negative simple
// cycle, otherwise the least simple-path length (0 on the diagonal), +inf when
// unreachable.
inline DistanceMatrix brute_force_distances(const ConstraintGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        reach[s][s] = true;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (const Edge& e : g.out_edges(u)) {
                if (!reach[s][e.to]) {
                    reach[s][e.to] = true;
                    stack.push_back(e.to);
                }
            }
        }
    }
    std::vector<bool> on_negative_cycle(n, false);
    DistanceMatrix d(n, Bound::pos_inf());
    std::vector<bool> visited(n, false);
    std::function<void(std::size_t, std::size_t, const Rational&)> walk = [&](std::size_t start, std::size_t u,
                                                                              const Rational& length) {
        if (Bound(length) < d.at(start, u)) d.at(start, u) = Bound(length);
        for (const Edge& e : g.out_edges(u)) {
            Rational next = length + e.weight;
            if (e.to == start) {
                if (next.sign() < 0) on_negative_cycle[start] = true;
                continue;
            }
            if (visited[e.to]) continue;
            visited[e.to] = true;
            walk(start, e.to, next);
            visited[e.to] = false;
        }
    };
    for (std::size_t s = 0; s < n; ++s) {
        visited.assign(n, false);
        visited[s] = true;
        walk(s, s, Rational(0));
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!on_negative_cycle[k]) continue;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[i][k] && reach[k][j]) d.at(i, j) = Bound::neg_inf();
            }
        }
    }
    return d;
}

}  // namespace testing_support
