#include "timely/canon.hpp"

#include <algorithm>
#include <stdexcept>

#include "timely/error.hpp"

namespace timely {

namespace {

// reach[i * n + j]: j reachable from i (reflexively) along any entry of the spec.
std::vector<bool> reachability(const TimelySpec& spec) {
    const std::size_t n = spec.size();
    std::vector<std::vector<ActionIndex>> adjacency(n);
    for (const auto& [pair, value] : spec.entries()) adjacency[pair.first].push_back(pair.second);
    std::vector<bool> reach(n * n, false);
    std::vector<ActionIndex> stack;
    for (ActionIndex s = 0; s < n; ++s) {
        reach[s * n + s] = true;
        stack.assign(1, s);
        while (!stack.empty()) {
            ActionIndex u = stack.back();
            stack.pop_back();
            for (ActionIndex v : adjacency[u]) {
                if (!reach[s * n + v]) {
                    reach[s * n + v] = true;
                    stack.push_back(v);
                }
            }
        }
    }
    return reach;
}

void require_matching(const CanonicalForm& form, const TimelySpec& spec) {
    if (form.actions != spec.actions() || form.model != spec.model()) {
        throw Error(ErrorKind::DomainMismatch, "canonical form was not computed from this spec");
    }
}

void require_satisfiable(const CanonicalForm& form) {
    if (!form.satisfiable) throw Error(ErrorKind::Unsatisfiable, "constraint has no satisfying schedule");
}

void require_distinct_pair(const CanonicalForm& form, ActionIndex i, ActionIndex j) {
    if (i >= form.actions.size() || j >= form.actions.size()) {
        throw Error(ErrorKind::UnknownAction, "action index out of range");
    }
    if (i == j) throw Error(ErrorKind::SelfConstraint, "pair must consist of distinct actions");
}

// The witness construction: replace unconstrained pairs by the lower bounds,
// take shortest paths from i and shift by lower_bounds[i]. If the targeted
// difference falls short of `target`, every lower bound is raised by the
// shortfall and the construction is repeated once, which reaches the target.
Schedule attain(const TimelySpec& spec, std::vector<Rational> lower_bounds, ActionIndex i, ActionIndex j,
                const Rational& target) {
    std::vector<Bound> row = completed_row(spec, lower_bounds, i);
    if (row[j].value() < target) {
        const Rational shortfall = target - row[j].value();
        for (Rational& d : lower_bounds) d += shortfall;
        row = completed_row(spec, lower_bounds, i);
    }
    Schedule t;
    t.times.reserve(spec.size());
    for (const Bound& b : row) t.times.push_back(lower_bounds[i] + b.value());
    return t;
}

}  // namespace

CanonicalForm canonicalise(const TimelySpec& spec, Engine engine) {
    const std::size_t n = spec.size();
    std::vector<Edge> edges;
    std::vector<ActionPair> neg_inf_entries;
    for (const auto& [pair, value] : spec.entries()) {
        if (value.is_neg_inf()) {
            neg_inf_entries.push_back(pair);
        } else {
            edges.push_back({pair.first, pair.second, value.value()});
        }
    }
    const ConstraintGraph graph(n, std::move(edges));

    CanonicalForm form;
    form.model = spec.model();
    form.actions = spec.actions();
    form.matrix = all_pairs(graph, engine);

    if (!neg_inf_entries.empty()) {
        const std::vector<bool> reach = reachability(spec);
        for (const auto& [p, q] : neg_inf_entries) {
            for (ActionIndex i = 0; i < n; ++i) {
                if (!reach[i * n + p]) continue;
                for (ActionIndex j = 0; j < n; ++j) {
                    if (reach[q * n + j]) form.matrix.at(i, j) = Bound::neg_inf();
                }
            }
        }
        form.reason = NegInfEntryReason{neg_inf_entries.front().first, neg_inf_entries.front().second};
    } else {
        bool negative_diagonal = false;
        for (ActionIndex i = 0; i < n && !negative_diagonal; ++i) negative_diagonal = form.matrix.at(i, i).is_neg_inf();
        if (negative_diagonal) {
            auto h = potentials(graph);
            if (!std::holds_alternative<NegativeCycleWitness>(h)) {
                throw std::logic_error("negative diagonal without a negative cycle");
            }
            form.reason = std::get<NegativeCycleWitness>(std::move(h));
        }
    }
    form.satisfiable = !form.reason.has_value();
    form.class_matrix = form.satisfiable ? form.matrix : DistanceMatrix(n, Bound::neg_inf());
    return form;
}

TimelySpec spec_from_matrix(TimeModel model, const std::vector<std::string>& actions, const DistanceMatrix& matrix) {
    TimelySpec spec(model, actions);
    for (ActionIndex i = 0; i < matrix.size(); ++i) {
        for (ActionIndex j = 0; j < matrix.size(); ++j) {
            if (i != j && !matrix.at(i, j).is_pos_inf()) spec.set_bound(i, j, matrix.at(i, j));
        }
    }
    return spec;
}

Schedule minimal_schedule(const CanonicalForm& form, const TimelySpec& spec) {
    require_matching(form, spec);
    require_satisfiable(form);
    Schedule t;
    t.times.reserve(spec.size());
    for (ActionIndex i = 0; i < spec.size(); ++i) {
        auto row = form.matrix.row(i);
        // The diagonal is 0, so the minimum is finite and <= 0.
        t.times.push_back(-std::min_element(row.begin(), row.end())->value());
    }
    return t;
}

std::vector<Bound> completed_row(const TimelySpec& spec, const std::vector<Rational>& lower_bounds, ActionIndex source) {
    const std::size_t n = spec.size();
    std::vector<Edge> edges;
    edges.reserve(n * (n > 0 ? n - 1 : 0));
    for (ActionIndex p = 0; p < n; ++p) {
        for (ActionIndex q = 0; q < n; ++q) {
            if (p == q) continue;
            const Bound b = spec.bound(p, q);
            if (b.is_neg_inf()) throw Error(ErrorKind::Unsatisfiable, "spec holds a -inf entry");
            edges.push_back({p, q, b.is_finite() ? b.value() : lower_bounds[q]});
        }
    }
    auto result = bellman_ford(ConstraintGraph(n, std::move(edges)), source, CycleDetection::Reachable);
    if (!std::holds_alternative<std::vector<Bound>>(result)) {
        throw std::logic_error("completed constraint has a negative cycle; lower bounds are invalid");
    }
    return std::get<std::vector<Bound>>(std::move(result));
}

Schedule tight_witness(const TimelySpec& spec, const CanonicalForm& form, ActionIndex i, ActionIndex j) {
    require_matching(form, spec);
    require_satisfiable(form);
    require_distinct_pair(form, i, j);
    const Bound& entry = form.matrix.at(i, j);
    if (!entry.is_finite()) {
        throw Error(ErrorKind::InfiniteEntry, "difference " + spec.name(j) + " - " + spec.name(i) + " is unbounded");
    }
    return attain(spec, minimal_schedule(form, spec).times, i, j, entry.value());
}

Schedule unbounded_witness(const TimelySpec& spec, const CanonicalForm& form, ActionIndex i, ActionIndex j,
                           const Rational& at_least) {
    require_matching(form, spec);
    require_satisfiable(form);
    require_distinct_pair(form, i, j);
    if (!form.matrix.at(i, j).is_pos_inf()) {
        throw Error(ErrorKind::FiniteEntry, "difference " + spec.name(j) + " - " + spec.name(i) + " is bounded by " +
                                                form.matrix.at(i, j).to_string());
    }
    if (!fits_model(at_least, spec.model())) {
        throw Error(ErrorKind::ModelMismatch, "non-integer target under the discrete time model");
    }
    const Rational target = at_least.sign() < 0 ? Rational(0) : at_least;
    return attain(spec, minimal_schedule(form, spec).times, i, j, target);
}

Bound sup_difference(const CanonicalForm& form, ActionIndex i, ActionIndex j) {
    require_satisfiable(form);
    require_distinct_pair(form, i, j);
    return form.matrix.at(i, j);
}

}  // namespace timely
