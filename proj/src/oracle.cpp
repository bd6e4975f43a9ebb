#include "timely/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "timely/error.hpp"

namespace timely::oracle {

namespace {

mpz_class denominator_lcm(const TimelySpec& spec) {
    mpz_class l = 1;
    for (const auto& [pair, value] : spec.entries()) {
        if (value.is_finite()) l = lcm(l, value.value().denominator());
    }
    return l;
}

Rational absolute_sum(const TimelySpec& spec) {
    Rational sum;
    for (const auto& [pair, value] : spec.entries()) {
        if (value.is_finite()) sum += value.value().sign() < 0 ? -value.value() : value.value();
    }
    return sum;
}

Rational step_for(TimeModel model, const mpz_class& l) {
    if (model == TimeModel::Discrete) return Rational(1);
    return Rational(mpq_class(mpz_class(1), l));
}

std::int64_t floor_to_int64(const mpq_class& q, std::int64_t lo, std::int64_t hi) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (f < lo) return lo;
    if (f > hi) return hi;
    return f.get_si();
}

}  // namespace

EnumerationBox derive_box(const TimelySpec& spec) {
    return {absolute_sum(spec), step_for(spec.model(), denominator_lcm(spec))};
}

EnumerationBox common_box(const TimelySpec& first, const TimelySpec& second) {
    if (first.model() != second.model()) throw Error(ErrorKind::ModelMismatch, "specs use different time models");
    const mpz_class l = lcm(denominator_lcm(first), denominator_lcm(second));
    return {std::max(absolute_sum(first), absolute_sum(second)), step_for(first.model(), l)};
}

void for_each_satisfier(const TimelySpec& spec, const EnumerationBox& box,
                        const std::function<bool(const Schedule&)>& visit) {
    const std::size_t n = spec.size();
    if (box.step.sign() <= 0) throw std::invalid_argument("box step must be positive");
    if (spec.model() == TimeModel::Discrete && !box.step.is_integer()) {
        throw Error(ErrorKind::ModelMismatch, "discrete enumeration needs an integer step");
    }
    if (box.upper < absolute_sum(spec)) {
        throw std::invalid_argument("box upper limit is below the sum of |finite entries|");
    }
    if (n > kMaxActions) throw Error(ErrorKind::TooLarge, "oracle handles at most 5 actions");

    const mpq_class ratio = box.upper.to_mpq() / box.step.to_mpq();
    const std::int64_t steps = floor_to_int64(ratio, 0, static_cast<std::int64_t>(kMaxPoints));
    std::uint64_t points = 1;
    for (std::size_t k = 0; k < n; ++k) {
        points *= static_cast<std::uint64_t>(steps) + 1;
        if (points > kMaxPoints) throw Error(ErrorKind::TooLarge, "enumeration box exceeds 10^7 points");
    }

    // Grid units: t = x * step, so t(j) - t(i) <= d  <=>  x(j) - x(i) <= floor(d / step).
    // Differences on the grid never leave [-steps, steps], so bounds are clamped there.
    const std::int64_t lo = -steps - 1;
    const std::int64_t hi = steps + 1;
    std::vector<std::int64_t> limit(n * n, hi);
    for (const auto& [pair, value] : spec.entries()) {
        limit[pair.first * n + pair.second] =
            value.is_neg_inf() ? lo : floor_to_int64(value.value().to_mpq() / box.step.to_mpq(), lo, hi);
    }

    std::vector<std::int64_t> x(n, 0);
    Schedule schedule;
    schedule.times.resize(n);
    bool keep_going = true;
    // Constraints between position k and every earlier position confine x[k] to an interval.
    std::function<void(std::size_t)> place = [&](std::size_t k) {
        if (k == n) {
            for (std::size_t i = 0; i < n; ++i) schedule.times[i] = Rational(x[i]) * box.step;
            keep_going = visit(schedule);
            return;
        }
        std::int64_t first = 0;
        std::int64_t last = steps;
        for (std::size_t i = 0; i < k; ++i) {
            last = std::min(last, x[i] + limit[i * n + k]);
            first = std::max(first, x[i] - limit[k * n + i]);
        }
        for (std::int64_t v = first; v <= last && keep_going; ++v) {
            x[k] = v;
            place(k + 1);
        }
    };
    place(0);
}

std::vector<Schedule> enumerate_satisfiers(const TimelySpec& spec, const EnumerationBox& box) {
    std::vector<Schedule> out;
    for_each_satisfier(spec, box, [&](const Schedule& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

bool oracle_satisfiable(const TimelySpec& spec) {
    bool found = false;
    for_each_satisfier(spec, derive_box(spec), [&](const Schedule&) {
        found = true;
        return false;
    });
    return found;
}

}  // namespace timely::oracle
