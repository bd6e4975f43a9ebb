#include "timely/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "timely/canon.hpp"
#include "timely/error.hpp"
#include "timely/oracle.hpp"
#include "timely/order.hpp"

namespace timely::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Engine parse_engine(const std::string& name) {
    if (name == "dense") return Engine::Dense;
    if (name == "sparse") return Engine::Sparse;
    return Engine::Auto;
}

std::string pair_text(const std::vector<std::string>& actions, ActionPair p) {
    return "(" + actions[p.first] + "," + actions[p.second] + ")";
}

std::string reason_text(const CanonicalForm& form) {
    if (const auto* entry = std::get_if<NegInfEntryReason>(&*form.reason)) {
        return "bound -inf on " + pair_text(form.actions, {entry->from, entry->to});
    }
    const auto& cycle = std::get<NegativeCycleWitness>(*form.reason);
    std::string text = "cycle ";
    for (Vertex v : cycle.cycle) text += form.actions[v] + "→";
    text += form.actions[cycle.cycle.front()];
    return text + " weight " + cycle.total_weight.to_string();
}

json reason_json(const CanonicalForm& form) {
    if (const auto* entry = std::get_if<NegInfEntryReason>(&*form.reason)) {
        return {{"kind", "neg_inf_entry"}, {"from", form.actions[entry->from]}, {"to", form.actions[entry->to]}};
    }
    const auto& cycle = std::get<NegativeCycleWitness>(*form.reason);
    json names = json::array();
    for (Vertex v : cycle.cycle) names.push_back(form.actions[v]);
    return {{"kind", "negative_cycle"}, {"cycle", names}, {"weight", cycle.total_weight.to_string()}};
}

void print_table(std::ostream& out, const std::vector<std::string>& actions, const DistanceMatrix& m) {
    const std::size_t n = actions.size();
    std::size_t name_width = 0;
    std::size_t cell_width = 0;
    for (std::size_t i = 0; i < n; ++i) {
        name_width = std::max(name_width, actions[i].size());
        cell_width = std::max(cell_width, actions[i].size());
        for (std::size_t j = 0; j < n; ++j) cell_width = std::max(cell_width, m.at(i, j).to_string().size());
    }
    auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w - s.size(), ' ') + s; };
    auto pad_right = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
    out << std::string(name_width, ' ');
    for (const auto& a : actions) out << "  " << pad_left(a, cell_width);
    out << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << pad_right(actions[i], name_width);
        for (std::size_t j = 0; j < n; ++j) out << "  " << pad_left(m.at(i, j).to_string(), cell_width);
        out << "\n";
    }
}

void print_schedule(std::ostream& out, const TimelySpec& spec, const Schedule& t) {
    for (ActionIndex i = 0; i < spec.size(); ++i) out << spec.name(i) << ": " << t.times[i] << "\n";
}

struct Options {
    bool json = false;
    std::string engine = "auto";
};

int cmd_check(const Options& opt, const std::string& path, std::ostream& out) {
    const TimelySpec spec = load_spec(read_file(path));
    const CanonicalForm form = canonicalise(spec, parse_engine(opt.engine));
    if (opt.json) {
        json doc = {{"satisfiable", form.satisfiable}};
        if (!form.satisfiable) doc["reason"] = reason_json(form);
        out << doc.dump(2) << "\n";
    } else if (form.satisfiable) {
        out << "SATISFIABLE\n";
    } else {
        out << "UNSATISFIABLE: " << reason_text(form) << "\n";
    }
    return form.satisfiable ? kAffirmative : kNegative;
}

int cmd_canon(const Options& opt, const std::string& path, bool class_form, std::ostream& out) {
    const TimelySpec spec = load_spec(read_file(path));
    const CanonicalForm form = canonicalise(spec, parse_engine(opt.engine));
    const DistanceMatrix& m = class_form ? form.class_matrix : form.matrix;
    if (opt.json) {
        // The document is itself a spec: its constraints are the finite off-diagonal entries.
        json doc = json::parse(save_spec(spec_from_matrix(spec.model(), spec.actions(), m)));
        doc["satisfiable"] = form.satisfiable;
        json rows = json::array();
        for (std::size_t i = 0; i < m.size(); ++i) {
            json row = json::array();
            for (const Bound& b : m.row(i)) row.push_back(b.to_string());
            rows.push_back(std::move(row));
        }
        doc["matrix"] = std::move(rows);
        out << doc.dump(2) << "\n";
    } else {
        print_table(out, spec.actions(), m);
    }
    return form.satisfiable ? kAffirmative : kNegative;
}

int cmd_solve(const Options& opt, const std::string& path, std::ostream& out) {
    const TimelySpec spec = load_spec(read_file(path));
    const CanonicalForm form = canonicalise(spec, parse_engine(opt.engine));
    if (!form.satisfiable) {
        out << "UNSATISFIABLE: " << reason_text(form) << "\n";
        return kNegative;
    }
    const Schedule t = minimal_schedule(form, spec);
    if (opt.json) {
        out << save_schedule(spec, t);
    } else {
        print_schedule(out, spec, t);
    }
    return kAffirmative;
}

int cmd_verify(const Options& opt, const std::string& spec_path, const std::string& schedule_path, std::ostream& out) {
    const TimelySpec spec = load_spec(read_file(spec_path));
    const Schedule t = load_schedule(spec, read_file(schedule_path));
    const std::vector<Violation> violations = check_schedule(spec, t);
    if (opt.json) {
        json list = json::array();
        for (const auto& v : violations) {
            list.push_back({{"from", spec.name(v.from)},
                            {"to", spec.name(v.to)},
                            {"bound", v.bound.to_string()},
                            {"actual", v.actual.to_string()}});
        }
        out << json{{"ok", violations.empty()}, {"violations", list}}.dump(2) << "\n";
    } else if (violations.empty()) {
        out << "OK\n";
    } else {
        out << "VIOLATED\n";
        for (const auto& v : violations) {
            out << "  " << pair_text(spec.actions(), {v.from, v.to}) << ": t(" << spec.name(v.to) << ") - t("
                << spec.name(v.from) << ") = " << v.actual << " > " << v.bound << "\n";
        }
    }
    return violations.empty() ? kAffirmative : kNegative;
}

int cmd_witness(const Options& opt, const std::string& path, const std::string& from, const std::string& to,
                const std::string& at_least, std::ostream& out, std::ostream& err) {
    const TimelySpec spec = load_spec(read_file(path));
    const ActionIndex i = spec.index_of(from);
    const ActionIndex j = spec.index_of(to);
    if (i == j) throw Error(ErrorKind::SelfConstraint, "witness needs two distinct actions");
    const CanonicalForm form = canonicalise(spec, parse_engine(opt.engine));
    if (!form.satisfiable) {
        out << "UNSATISFIABLE: " << reason_text(form) << "\n";
        return kNegative;
    }
    const Bound& entry = form.matrix.at(i, j);
    Schedule t;
    if (entry.is_finite()) {
        if (!at_least.empty()) {
            err << "error: t(" << to << ") - t(" << from << ") is bounded by " << entry
                << "; drop --at-least to get a tight witness\n";
            return kUsageError;
        }
        t = tight_witness(spec, form, i, j);
    } else {
        if (at_least.empty()) {
            err << "error: t(" << to << ") - t(" << from << ") is unbounded; pass --at-least <bound>\n";
            return kUsageError;
        }
        const Bound k = bound_parse(at_least, spec.model());
        if (!k.is_finite()) throw Error(ErrorKind::ParseError, "--at-least must be finite");
        t = unbounded_witness(spec, form, i, j, k.value());
    }
    if (opt.json) {
        out << save_schedule(spec, t);
    } else {
        out << "t(" << to << ") - t(" << from << ") = " << (t.times[j] - t.times[i]) << "\n";
        print_schedule(out, spec, t);
    }
    return kAffirmative;
}

int cmd_compare(const Options& opt, const std::string& first_path, const std::string& second_path, bool separate,
                 std::ostream& out) {
    const TimelySpec first_spec = load_spec(read_file(first_path));
    const TimelySpec second_spec = load_spec(read_file(second_path));
    const Engine engine = parse_engine(opt.engine);
    const CanonicalForm first = canonicalise(first_spec, engine);
    const CanonicalForm second = canonicalise(second_spec, engine);
    const ComparisonVerdict verdict = compare(first, second);
    std::optional<Schedule> separating;
    if (separate && verdict.first_exceeds) separating = subsumption_witness(first_spec, first, second);

    if (opt.json) {
        json doc = {{"relation", std::string(to_string(verdict.relation))}};
        if (verdict.first_exceeds) {
            doc["first_exceeds"] = {first.actions[verdict.first_exceeds->first],
                                    first.actions[verdict.first_exceeds->second]};
        }
        if (verdict.second_exceeds) {
            doc["second_exceeds"] = {first.actions[verdict.second_exceeds->first],
                                     first.actions[verdict.second_exceeds->second]};
        }
        if (separating) doc["separating"] = json::parse(save_schedule(first_spec, *separating))["times"];
        out << doc.dump(2) << "\n";
    } else {
        out << to_string(verdict.relation) << "\n";
        const DistanceMatrix other = aligned_class_matrix(first, second);
        auto entry_line = [&](const char* label, ActionPair p, const DistanceMatrix& hi, const DistanceMatrix& lo) {
            out << label << pair_text(first.actions, p) << ": " << hi.at(p.first, p.second) << " > "
                << lo.at(p.first, p.second) << "\n";
        };
        if (verdict.first_exceeds) {
            entry_line("first exceeds second at ", *verdict.first_exceeds, first.class_matrix, other);
        }
        if (verdict.second_exceeds) {
            entry_line("second exceeds first at ", *verdict.second_exceeds, other, first.class_matrix);
        }
        if (separating) {
            out << "separating schedule (satisfies first, violates second):\n";
            print_schedule(out, first_spec, *separating);
        }
    }
    return verdict.first_exceeds ? kNegative : kAffirmative;
}

int cmd_conjoin(const std::string& first_path, const std::string& second_path, const std::string& output,
                std::ostream& out) {
    const TimelySpec joined = conjoin(load_spec(read_file(first_path)), load_spec(read_file(second_path)));
    const std::string text = save_spec(joined);
    if (output.empty()) {
        out << text;
    } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write '" + output + "'");
        file << text;
        out << "wrote " << output << "\n";
    }
    return kAffirmative;
}

int cmd_oracle(const std::string& path, const std::string& upper, std::ostream& out) {
    const TimelySpec spec = load_spec(read_file(path));
    oracle::EnumerationBox box = oracle::derive_box(spec);
    if (!upper.empty()) {
        const Bound b = bound_parse(upper, TimeModel::Dense);
        if (!b.is_finite()) throw Error(ErrorKind::ParseError, "--upper must be finite");
        box.upper = b.value();
    }
    std::size_t count = 0;
    std::vector<Rational> lowest;
    oracle::for_each_satisfier(spec, box, [&](const Schedule& t) {
        if (count++ == 0) {
            lowest = t.times;
        } else {
            for (std::size_t i = 0; i < lowest.size(); ++i) lowest[i] = std::min(lowest[i], t.times[i]);
        }
        return true;
    });
    out << "box: upper " << box.upper << ", step " << box.step << "\n";
    out << "satisfiers: " << count << "\n";
    if (count > 0) {
        out << "coordinatewise minimum:\n";
        print_schedule(out, spec, Schedule{lowest});
    }
    return count > 0 ? kAffirmative : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solver for timely constraints: bounds on time differences between actions."};
    app.name(args.empty() ? "timely" : args.front());
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_engine) {
        sub->add_flag("--json", opt.json, "Machine-readable JSON output");
        if (with_engine) {
            sub->add_option("--engine", opt.engine, "Shortest-path engine")
                ->check(CLI::IsMember({"auto", "dense", "sparse"}));
        }
    };

    std::string spec_path;
    std::string second_path;
    std::string from;
    std::string to;
    std::string at_least;
    std::string output;
    std::string upper;
    bool class_form = false;
    bool separate = false;

    auto* check = app.add_subcommand("check", "Decide satisfiability");
    check->add_option("spec", spec_path, "Spec JSON file")->required();
    add_common(check, true);

    auto* canon = app.add_subcommand("canon", "Print the canonical form");
    canon->add_option("spec", spec_path, "Spec JSON file")->required();
    canon->add_flag("--class", class_form, "Print the class matrix (all -inf when unsatisfiable)");
    add_common(canon, true);

    auto* solve = app.add_subcommand("solve", "Print the minimal satisfying schedule");
    solve->add_option("spec", spec_path, "Spec JSON file")->required();
    add_common(solve, true);

    auto* verify = app.add_subcommand("verify", "Check a schedule against a spec");
    verify->add_option("spec", spec_path, "Spec JSON file")->required();
    verify->add_option("schedule", second_path, "Schedule JSON file")->required();
    add_common(verify, false);

    auto* witness = app.add_subcommand("witness", "Schedule attaining the bound on t(j) - t(i)");
    witness->add_option("spec", spec_path, "Spec JSON file")->required();
    witness->add_option("i", from, "Action i")->required();
    witness->add_option("j", to, "Action j")->required();
    witness->add_option("--at-least", at_least, "Target K for an unbounded difference");
    add_common(witness, true);

    auto* cmp = app.add_subcommand("compare", "Compare two specs by strictness");
    cmp->add_option("spec1", spec_path, "First spec JSON file")->required();
    cmp->add_option("spec2", second_path, "Second spec JSON file")->required();
    cmp->add_flag("--separate", separate, "Print a schedule satisfying the first spec but not the second");
    add_common(cmp, true);

    auto* conj = app.add_subcommand("conjoin", "Pointwise-minimum of two specs");
    conj->add_option("spec1", spec_path, "First spec JSON file")->required();
    conj->add_option("spec2", second_path, "Second spec JSON file")->required();
    conj->add_option("-o", output, "Output path (stdout if omitted)");

    auto* orc = app.add_subcommand("oracle", "Brute-force enumeration for small specs");
    orc->group("");
    orc->add_option("spec", spec_path, "Spec JSON file")->required();
    orc->add_option("--upper", upper, "Per-action upper limit of the enumeration box");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kAffirmative : kUsageError;
    }

    try {
        if (check->parsed()) return cmd_check(opt, spec_path, out);
        if (canon->parsed()) return cmd_canon(opt, spec_path, class_form, out);
        if (solve->parsed()) return cmd_solve(opt, spec_path, out);
        if (verify->parsed()) return cmd_verify(opt, spec_path, second_path, out);
        if (witness->parsed()) return cmd_witness(opt, spec_path, from, to, at_least, out, err);
        if (cmp->parsed()) return cmd_compare(opt, spec_path, second_path, separate, out);
        if (conj->parsed()) return cmd_conjoin(spec_path, second_path, output, out);
        if (orc->parsed()) return cmd_oracle(spec_path, upper, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace timely::cli
