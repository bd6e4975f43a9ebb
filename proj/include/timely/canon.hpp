#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "timely/graph.hpp"
#include "timely/spec.hpp"

namespace timely {

/// The first -inf entry of a spec, which makes it unsatisfiable outright.
struct NegInfEntryReason {
    ActionIndex from;
    ActionIndex to;

    friend bool operator==(const NegInfEntryReason&, const NegInfEntryReason&) = default;
};

using UnsatisfiabilityReason = std::variant<NegInfEntryReason, NegativeCycleWitness>;

/// The canonical form of a spec: the distance function of its constraint
/// graph (diagonal included) plus the satisfiability verdict.
///
/// `matrix` is the raw distance function and is what solvers need.
/// `class_matrix` equals `matrix` for satisfiable specs and is all -inf
/// otherwise; it is the representative used for comparison, because every
/// unsatisfiable spec has the same (empty) set of schedules.
struct CanonicalForm {
    TimeModel model = TimeModel::Discrete;
    std::vector<std::string> actions;
    DistanceMatrix matrix;
    bool satisfiable = false;
    std::optional<UnsatisfiabilityReason> reason;
    DistanceMatrix class_matrix;
};

CanonicalForm canonicalise(const TimelySpec& spec, Engine engine = Engine::Auto);

/// The spec whose entries are the finite off-diagonal entries of the matrix.
TimelySpec spec_from_matrix(TimeModel model, const std::vector<std::string>& actions, const DistanceMatrix& matrix);

/// t(i) = -min(row i). The coordinatewise least satisfying schedule.
/// Throws Error(Unsatisfiable).
Schedule minimal_schedule(const CanonicalForm& form, const TimelySpec& spec);

/// A satisfying schedule with t(j) - t(i) equal to the finite canonical entry
/// (i, j). Throws Error(Unsatisfiable) or Error(InfiniteEntry).
Schedule tight_witness(const TimelySpec& spec, const CanonicalForm& form, ActionIndex i, ActionIndex j);

/// A satisfying schedule with t(j) - t(i) >= at_least, for a pair whose
/// canonical entry is +inf. Negative requests are treated as 0.
/// Throws Error(Unsatisfiable), Error(FiniteEntry) or Error(ModelMismatch).
Schedule unbounded_witness(const TimelySpec& spec, const CanonicalForm& form, ActionIndex i, ActionIndex j,
                           const Rational& at_least);

/// The supremum of t(j) - t(i) over all satisfying schedules.
Bound sup_difference(const CanonicalForm& form, ActionIndex i, ActionIndex j);

/// Row `source` of the completed constraint used by the witness
/// construction: every +inf entry (p, q) of the spec is replaced by
/// lower_bounds[q]. Exposed for testing the construction's invariants.
std::vector<Bound> completed_row(const TimelySpec& spec, const std::vector<Rational>& lower_bounds, ActionIndex source);

}  // namespace timely
