#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "timely/spec.hpp"

namespace timely::oracle {

/// Brute-force ground truth for toy instances: schedules are enumerated on the
/// grid {0, step, 2*step, ..., upper} per action and checked against the
/// definition of satisfaction directly. Nothing here goes through the graph
/// engines.

inline constexpr std::size_t kMaxActions = 5;
inline constexpr std::uint64_t kMaxPoints = 10'000'000;

struct EnumerationBox {
    Rational upper;
    Rational step;
};

/// upper = sum of |finite entries| (the minimal schedule fits below it);
/// step = 1 under the discrete model, 1 / lcm(denominators) under the dense one.
EnumerationBox derive_box(const TimelySpec& spec);

/// A box valid for both specs: the larger upper limit on the finer grid.
EnumerationBox common_box(const TimelySpec& first, const TimelySpec& second);

/// Visits every grid schedule that satisfies the spec, in lexicographic order.
/// The visitor returns false to stop early. Throws Error(TooLarge) when the
/// spec has more than kMaxActions actions or the box more than kMaxPoints
/// grid points.
void for_each_satisfier(const TimelySpec& spec, const EnumerationBox& box,
                        const std::function<bool(const Schedule&)>& visit);

std::vector<Schedule> enumerate_satisfiers(const TimelySpec& spec, const EnumerationBox& box);

/// Whether any schedule on the derived box satisfies the spec; exact because
/// the minimal satisfying schedule, when one exists, lies inside that box.
bool oracle_satisfiable(const TimelySpec& spec);

}  // namespace timely::oracle
