#include "timely/spec.hpp"

#include <json.hpp>

#include "timely/error.hpp"

namespace timely {

using json = nlohmann::ordered_json;

TimelySpec::TimelySpec(TimeModel model, std::vector<std::string> actions)
    : model_(model), actions_(std::move(actions)) {
    for (ActionIndex i = 0; i < actions_.size(); ++i) {
        if (actions_[i].empty()) throw Error(ErrorKind::ParseError, "empty action name");
        if (!index_.emplace(actions_[i], i).second) {
            throw Error(ErrorKind::ParseError, "duplicate action '" + actions_[i] + "'");
        }
    }
}

ActionIndex TimelySpec::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw Error(ErrorKind::UnknownAction, "unknown action '" + std::string(name) + "'");
    return it->second;
}

Bound TimelySpec::bound(ActionIndex from, ActionIndex to) const {
    auto it = delta_.find({from, to});
    return it == delta_.end() ? Bound::pos_inf() : it->second;
}

void TimelySpec::check_pair(ActionIndex from, ActionIndex to) const {
    if (from >= actions_.size() || to >= actions_.size()) {
        throw Error(ErrorKind::UnknownAction, "action index out of range");
    }
    if (from == to) throw Error(ErrorKind::SelfConstraint, "constraint on (" + actions_[from] + "," + actions_[to] + ")");
}

void TimelySpec::constrain(ActionIndex from, ActionIndex to, const Bound& value) {
    check_pair(from, to);
    if (value.is_finite() && !fits_model(value.value(), model_)) {
        throw Error(ErrorKind::ModelMismatch, "non-integer bound under the discrete time model");
    }
    if (value.is_pos_inf()) return;
    auto [it, inserted] = delta_.emplace(ActionPair{from, to}, value);
    if (!inserted) it->second = bound_min(it->second, value);
}

void TimelySpec::set_bound(ActionIndex from, ActionIndex to, const Bound& value) {
    check_pair(from, to);
    if (value.is_finite() && !fits_model(value.value(), model_)) {
        throw Error(ErrorKind::ModelMismatch, "non-integer bound under the discrete time model");
    }
    if (value.is_pos_inf()) {
        delta_.erase({from, to});
    } else {
        delta_[{from, to}] = value;
    }
}

namespace {

json parse_json(std::string_view document) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

const json& require(const json& object, const char* key) {
    if (!object.is_object() || !object.contains(key)) {
        throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
    }
    return object.at(key);
}

std::string require_string(const json& object, const char* key) {
    const json& value = require(object, key);
    if (!value.is_string()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be a string");
    return value.get<std::string>();
}

// Bounds are normally strings in bound syntax; bare JSON integers are accepted too.
Bound bound_from_json(const json& value, TimeModel model) {
    if (value.is_string()) return bound_parse(value.get<std::string>(), model);
    if (value.is_number_integer()) {
        return Bound(value.is_number_unsigned() ? Rational::parse(std::to_string(value.get<std::uint64_t>()))
                                                : Rational(value.get<std::int64_t>()));
    }
    throw Error(ErrorKind::ParseError, "bound must be a string or an integer");
}

}  // namespace

TimelySpec load_spec(std::string_view document) {
    const json doc = parse_json(document);
    const TimeModel model = parse_time_model(require_string(doc, "time_model"));
    const json& actions_json = require(doc, "actions");
    if (!actions_json.is_array()) throw Error(ErrorKind::ParseError, "'actions' must be an array");
    std::vector<std::string> actions;
    for (const auto& a : actions_json) {
        if (!a.is_string()) throw Error(ErrorKind::ParseError, "action names must be strings");
        actions.push_back(a.get<std::string>());
    }
    TimelySpec spec(model, std::move(actions));
    if (doc.contains("constraints")) {
        const json& constraints = doc.at("constraints");
        if (!constraints.is_array()) throw Error(ErrorKind::ParseError, "'constraints' must be an array");
        for (const auto& c : constraints) {
            const ActionIndex from = spec.index_of(require_string(c, "from"));
            const ActionIndex to = spec.index_of(require_string(c, "to"));
            spec.constrain(from, to, bound_from_json(require(c, "bound"), model));
        }
    }
    return spec;
}

std::string save_spec(const TimelySpec& spec) {
    json doc;
    doc["time_model"] = std::string(to_string(spec.model()));
    doc["actions"] = spec.actions();
    json constraints = json::array();
    for (const auto& [pair, value] : spec.entries()) {
        constraints.push_back({{"from", spec.name(pair.first)}, {"to", spec.name(pair.second)}, {"bound", value.to_string()}});
    }
    doc["constraints"] = std::move(constraints);
    return doc.dump(2) + "\n";
}

Schedule load_schedule(const TimelySpec& spec, std::string_view document) {
    const json doc = parse_json(document);
    const json& times = require(doc, "times");
    if (!times.is_object()) throw Error(ErrorKind::ParseError, "'times' must be an object");
    if (times.size() != spec.size()) {
        throw Error(ErrorKind::DomainMismatch, "schedule covers " + std::to_string(times.size()) + " actions, spec has " +
                                                   std::to_string(spec.size()));
    }
    Schedule schedule;
    schedule.times.resize(spec.size());
    for (const auto& [name, value] : times.items()) {
        ActionIndex i;
        try {
            i = spec.index_of(name);
        } catch (const Error&) {
            throw Error(ErrorKind::DomainMismatch, "schedule names unknown action '" + name + "'");
        }
        Bound b = bound_from_json(value, spec.model());
        if (!b.is_finite()) throw Error(ErrorKind::InvalidSchedule, "time of '" + name + "' must be finite");
        schedule.times[i] = b.value();
    }
    validate_schedule(spec, schedule);
    return schedule;
}

std::string save_schedule(const TimelySpec& spec, const Schedule& schedule) {
    json times = json::object();
    for (ActionIndex i = 0; i < spec.size(); ++i) times[spec.name(i)] = schedule.times.at(i).to_string();
    json doc;
    doc["times"] = std::move(times);
    return doc.dump(2) + "\n";
}

void validate_schedule(const TimelySpec& spec, const Schedule& schedule) {
    if (schedule.times.size() != spec.size()) {
        throw Error(ErrorKind::DomainMismatch, "schedule size does not match the action set");
    }
    for (ActionIndex i = 0; i < spec.size(); ++i) {
        const Rational& t = schedule.times[i];
        if (t.sign() < 0) throw Error(ErrorKind::InvalidSchedule, "negative time for '" + spec.name(i) + "'");
        if (!fits_model(t, spec.model())) {
            throw Error(ErrorKind::ModelMismatch, "non-integer time for '" + spec.name(i) + "' under the discrete model");
        }
    }
}

std::vector<Violation> check_schedule(const TimelySpec& spec, const Schedule& schedule) {
    validate_schedule(spec, schedule);
    std::vector<Violation> out;
    for (const auto& [pair, value] : spec.entries()) {
        Rational actual = schedule.times[pair.second] - schedule.times[pair.first];
        if (Bound(actual) > value) out.push_back({pair.first, pair.second, value, std::move(actual)});
    }
    return out;
}

TimelySpec conjoin(const TimelySpec& first, const TimelySpec& second) {
    if (first.model() != second.model()) throw Error(ErrorKind::ModelMismatch, "specs use different time models");
    if (first.actions() != second.actions()) throw Error(ErrorKind::DomainMismatch, "specs use different action lists");
    TimelySpec out = first;
    for (const auto& [pair, value] : second.entries()) out.constrain(pair.first, pair.second, value);
    return out;
}

}  // namespace timely
