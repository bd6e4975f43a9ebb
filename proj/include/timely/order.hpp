#pragma once

#include <optional>

#include "timely/canon.hpp"

namespace timely {

enum class Relation { Equal, FirstTighter, SecondTighter, Incomparable };

std::string_view to_string(Relation relation);

/// Outcome of comparing two class matrices entrywise.
///
/// `first_exceeds` is the lexicographically smallest entry where the first
/// matrix is larger (so T1 is not contained in T2); `second_exceeds` is the
/// mirror. Both are set exactly when the relation is Incomparable. Indices
/// follow the first form's action order.
struct ComparisonVerdict {
    Relation relation = Relation::Equal;
    std::optional<ActionPair> first_exceeds;
    std::optional<ActionPair> second_exceeds;
};

/// Compares by strictness. Forms over the same action set in a different
/// order are aligned by name. Throws Error(DomainMismatch) for different
/// action sets, Error(ModelMismatch) for different time models.
ComparisonVerdict compare(const CanonicalForm& first, const CanonicalForm& second);

/// The second form's class matrix re-indexed into the first form's action
/// order. Throws as compare does.
DistanceMatrix aligned_class_matrix(const CanonicalForm& first, const CanonicalForm& second);

/// Same satisfying schedules.
bool equivalent(const CanonicalForm& first, const CanonicalForm& second);

/// When T(first) is not contained in T(second), a schedule satisfying the
/// first spec but not the second; nothing otherwise.
/// Throws Error(Unsatisfiable) if the first spec is unsatisfiable.
std::optional<Schedule> subsumption_witness(const TimelySpec& first_spec, const CanonicalForm& first,
                                            const CanonicalForm& second);

}  // namespace timely
