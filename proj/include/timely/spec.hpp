#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "timely/numerics.hpp"

namespace timely {

using ActionIndex = std::size_t;
using ActionPair = std::pair<ActionIndex, ActionIndex>;

/// A finite set of actions together with the sparse constraint map delta.
///
/// delta(i, j) bounds t(j) - t(i) from above. Pairs without an entry are
/// unconstrained (+inf). Entries are kept ordered by (from, to) index so every
/// traversal is deterministic.
class TimelySpec {
  public:
    TimelySpec() = default;
    TimelySpec(TimeModel model, std::vector<std::string> actions);

    [[nodiscard]] TimeModel model() const { return model_; }
    [[nodiscard]] const std::vector<std::string>& actions() const { return actions_; }
    [[nodiscard]] std::size_t size() const { return actions_.size(); }
    [[nodiscard]] const std::string& name(ActionIndex i) const { return actions_.at(i); }

    /// Throws Error(UnknownAction).
    [[nodiscard]] ActionIndex index_of(std::string_view name) const;

    /// delta(i, j), +inf when absent.
    [[nodiscard]] Bound bound(ActionIndex from, ActionIndex to) const;
    [[nodiscard]] const std::map<ActionPair, Bound>& entries() const { return delta_; }

    /// Conjoins t(to) - t(from) <= value with any existing entry (tightest wins).
    /// +inf is a no-op.
    void constrain(ActionIndex from, ActionIndex to, const Bound& value);

    /// Replaces the entry outright; +inf erases it.
    void set_bound(ActionIndex from, ActionIndex to, const Bound& value);

    friend bool operator==(const TimelySpec&, const TimelySpec&) = default;

  private:
    void check_pair(ActionIndex from, ActionIndex to) const;

    TimeModel model_ = TimeModel::Discrete;
    std::vector<std::string> actions_;
    std::unordered_map<std::string, ActionIndex> index_;
    std::map<ActionPair, Bound> delta_;
};

/// A time for every action of a spec, stored in the spec's action order.
struct Schedule {
    std::vector<Rational> times;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// A constraint t(to) - t(from) <= bound broken by a schedule; actual is the
/// achieved difference.
struct Violation {
    ActionIndex from;
    ActionIndex to;
    Bound bound;
    Rational actual;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Parses the JSON spec document:
///   { "time_model": "discrete"|"dense", "actions": [...],
///     "constraints": [ {"from": a, "to": b, "bound": "<bound>"}, ... ] }
/// Unknown top-level keys are ignored.
TimelySpec load_spec(std::string_view document);
std::string save_spec(const TimelySpec& spec);

/// Parses { "times": { "a": "<value>", ... } } against the spec's actions.
Schedule load_schedule(const TimelySpec& spec, std::string_view document);
std::string save_schedule(const TimelySpec& spec, const Schedule& schedule);

/// Throws Error(DomainMismatch) if the sizes disagree, Error(InvalidSchedule)
/// for negative times and Error(ModelMismatch) for non-integers under the
/// discrete model.
void validate_schedule(const TimelySpec& spec, const Schedule& schedule);

/// Every violated constraint, ordered by (from, to).
std::vector<Violation> check_schedule(const TimelySpec& spec, const Schedule& schedule);

inline bool satisfies(const TimelySpec& spec, const Schedule& schedule) {
    return check_schedule(spec, schedule).empty();
}

/// Pointwise minimum; satisfiers of the result are exactly the common ones.
TimelySpec conjoin(const TimelySpec& first, const TimelySpec& second);

}  // namespace timely
