#include "timely/order.hpp"

#include <algorithm>

#include "timely/error.hpp"

namespace timely {

std::string_view to_string(Relation relation) {
    switch (relation) {
        case Relation::Equal: return "Equal";
        case Relation::FirstTighter: return "FirstTighter";
        case Relation::SecondTighter: return "SecondTighter";
        case Relation::Incomparable: return "Incomparable";
    }
    return "Unknown";
}

DistanceMatrix aligned_class_matrix(const CanonicalForm& first, const CanonicalForm& second) {
    if (first.model != second.model) throw Error(ErrorKind::ModelMismatch, "forms use different time models");
    if (first.actions == second.actions) return second.class_matrix;
    const std::size_t n = first.actions.size();
    if (second.actions.size() != n) throw Error(ErrorKind::DomainMismatch, "forms use different action sets");
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::find(second.actions.begin(), second.actions.end(), first.actions[i]);
        if (it == second.actions.end()) {
            throw Error(ErrorKind::DomainMismatch, "action '" + first.actions[i] + "' missing from second form");
        }
        position[i] = static_cast<std::size_t>(it - second.actions.begin());
    }
    DistanceMatrix out(n, Bound::pos_inf());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = second.class_matrix.at(position[i], position[j]);
    }
    return out;
}

ComparisonVerdict compare(const CanonicalForm& first, const CanonicalForm& second) {
    const DistanceMatrix other = aligned_class_matrix(first, second);
    const DistanceMatrix& mine = first.class_matrix;
    ComparisonVerdict verdict;
    const std::size_t n = mine.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto order = mine.at(i, j) <=> other.at(i, j);
            if (order > 0 && !verdict.first_exceeds) verdict.first_exceeds = ActionPair{i, j};
            if (order < 0 && !verdict.second_exceeds) verdict.second_exceeds = ActionPair{i, j};
        }
    }
    if (verdict.first_exceeds && verdict.second_exceeds) {
        verdict.relation = Relation::Incomparable;
    } else if (verdict.first_exceeds) {
        verdict.relation = Relation::SecondTighter;
    } else if (verdict.second_exceeds) {
        verdict.relation = Relation::FirstTighter;
    } else {
        verdict.relation = Relation::Equal;
    }
    return verdict;
}

bool equivalent(const CanonicalForm& first, const CanonicalForm& second) {
    return compare(first, second).relation == Relation::Equal;
}

std::optional<Schedule> subsumption_witness(const TimelySpec& first_spec, const CanonicalForm& first,
                                            const CanonicalForm& second) {
    if (!first.satisfiable) throw Error(ErrorKind::Unsatisfiable, "first constraint has no satisfying schedule");
    const ComparisonVerdict verdict = compare(first, second);
    if (!verdict.first_exceeds) return std::nullopt;
    // Nothing satisfies an unsatisfiable second constraint.
    if (!second.satisfiable) return minimal_schedule(first, first_spec);

    const auto [i, j] = *verdict.first_exceeds;
    if (first.matrix.at(i, j).is_finite()) return tight_witness(first_spec, first, i, j);
    const Bound other = aligned_class_matrix(first, second).at(i, j);
    return unbounded_witness(first_spec, first, i, j, other.value() + Rational(1));
}

}  // namespace timely
