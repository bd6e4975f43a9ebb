// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "timely/cli.hpp"
#include "timely/oracle.hpp"
#include "timely/order.hpp"

using namespace timely;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Tally {
    long checked = 0;
    long failed = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok && failed++ == 0) first_failure = what;
    }
};

int failures = 0;

void report(int number, const std::string& title, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number, title.c_str(), detail.c_str());
    std::fflush(stdout);
}

void report(int number, const std::string& title, const Tally& t, const std::string& extra = "") {
    std::string detail = std::to_string(t.checked - t.failed) + "/" + std::to_string(t.checked) + " checks";
    if (!extra.empty()) detail += ", " + extra;
    if (t.failed > 0) detail += "; first failure: " + t.first_failure;
    report(number, title, t.failed == 0 && t.checked > 0, detail);
}

std::string describe(const TimelySpec& spec) {
    std::string s = "{";
    for (const auto& [pair, value] : spec.entries()) {
        s += " " + spec.name(pair.first) + spec.name(pair.second) + ":" + value.to_string();
    }
    return s + " }";
}

Rational difference(const Schedule& t, ActionIndex i, ActionIndex j) { return t.times[j] - t.times[i]; }

bool triangle_holds(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const Bound& a = d.at(i, j);
                const Bound& b = d.at(j, k);
                if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf())) continue;
                if (d.at(i, k) > bound_add(a, b)) return false;
            }
        }
    }
    return true;
}

bool has_neg_inf_entry(const TimelySpec& spec) {
    return std::any_of(spec.entries().begin(), spec.entries().end(),
                       [](const auto& e) { return e.second.is_neg_inf(); });
}

// The common box of both specs with a small margin, shrunk to the first spec's
// own box when that would exceed the enumeration limit.
oracle::EnumerationBox shared_box(const TimelySpec& x, const TimelySpec& y) {
    oracle::EnumerationBox box = oracle::common_box(x, y);
    box.upper += Rational(2);
    const auto side = (box.upper / box.step).as_int64().value_or(0) + 1;
    double points = 1;
    for (std::size_t k = 0; k < x.size(); ++k) points *= static_cast<double>(side);
    if (points > static_cast<double>(oracle::kMaxPoints)) box = oracle::derive_box(x);
    return box;
}

// The instance family shared by criteria 1-4.
std::vector<TimelySpec> instance_family() {
    SpecGenerator gen(20240601);
    std::vector<TimelySpec> specs;
    for (int k = 0; k < 2400; ++k) {
        const auto n = static_cast<std::size_t>(gen.uniform(2, 4));
        switch (k % 8) {
            case 0: specs.push_back(gen.with_negative_cycle(n)); break;
            case 1: specs.push_back(gen.with_neg_inf(n)); break;
            default: specs.push_back(gen.random(n)); break;
        }
    }
    return specs;
}

// A satisfiable spec whose entries lie above the canonical form: pointwise
// between delta-hat and delta, +inf allowed where delta is +inf.
TimelySpec loosen_between(SpecGenerator& gen, const TimelySpec& spec, const CanonicalForm& form) {
    TimelySpec out(spec.model(), spec.actions());
    for (ActionIndex i = 0; i < spec.size(); ++i) {
        for (ActionIndex j = 0; j < spec.size(); ++j) {
            if (i == j || !form.matrix.at(i, j).is_finite()) continue;
            const Rational low = form.matrix.at(i, j).value();
            const Bound high = spec.bound(i, j);
            if (high.is_pos_inf() && gen.coin(0.5)) continue;
            const std::int64_t room = high.is_pos_inf() ? 6 : (high.value() - low).as_int64().value();
            out.set_bound(i, j, Bound(low + Rational(gen.uniform(0, room))));
        }
    }
    return out;
}

void criteria_1_to_4() {
    const auto start = Clock::now();
    const std::vector<TimelySpec> specs = instance_family();
    std::vector<CanonicalForm> forms;
    forms.reserve(specs.size());
    for (const auto& s : specs) forms.push_back(canonicalise(s));

    Tally agreement;
    Tally minimal;
    long satisfiable = 0;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const TimelySpec& spec = specs[k];
        const CanonicalForm& form = forms[k];
        const bool oracle_says = oracle::oracle_satisfiable(spec);
        agreement.expect(form.satisfiable == oracle_says, describe(spec));
        if (!form.satisfiable) continue;
        ++satisfiable;
        const auto all = oracle::enumerate_satisfiers(spec, oracle::derive_box(spec));
        if (all.empty()) {
            minimal.expect(false, "no satisfiers for " + describe(spec));
            continue;
        }
        Schedule low = all.front();
        for (const Schedule& t : all) {
            for (std::size_t i = 0; i < t.times.size(); ++i) low.times[i] = std::min(low.times[i], t.times[i]);
        }
        minimal.expect(minimal_schedule(form, spec) == low, describe(spec));
    }
    const double elapsed = seconds_since(start);
    agreement.expect(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.1f s", elapsed);
    report(1, "oracle satisfiability agreement", agreement,
           std::to_string(specs.size()) + " specs, " + std::to_string(satisfiable) + " satisfiable, " + timing);
    report(2, "minimal schedule equals oracle coordinatewise minimum", minimal);

    Tally canon;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const TimelySpec& spec = specs[k];
        const CanonicalForm& form = forms[k];
        const std::string who = describe(spec);
        const DistanceMatrix& d = form.matrix;
        const std::size_t n = spec.size();
        canon.expect(canonicalise(spec_from_matrix(spec.model(), spec.actions(), d)).matrix == d, "idempotence " + who);
        bool below = true;
        for (ActionIndex i = 0; i < n; ++i) {
            for (ActionIndex j = 0; j < n; ++j) {
                if (i != j && d.at(i, j) > spec.bound(i, j)) below = false;
            }
        }
        canon.expect(below, "minimality " + who);
        canon.expect(triangle_holds(d), "triangle " + who);
        bool diag_ok = true;
        bool diag_zero = true;
        for (ActionIndex i = 0; i < n; ++i) {
            diag_ok = diag_ok && (d.at(i, i) == Bound(0) || d.at(i, i).is_neg_inf());
            diag_zero = diag_zero && d.at(i, i) == Bound(0);
        }
        canon.expect(diag_ok, "diagonal values " + who);
        // A -inf entry is unsatisfiable on its own, whatever the diagonal.
        if (has_neg_inf_entry(spec)) {
            canon.expect(!form.satisfiable, "-inf entry reported satisfiable " + who);
        } else {
            canon.expect(diag_zero == form.satisfiable, "zero diagonal iff satisfiable " + who);
        }
    }
    report(3, "canonical form properties", canon);

    Tally attain;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const TimelySpec& spec = specs[k];
        const CanonicalForm& form = forms[k];
        if (!form.satisfiable) continue;
        for (ActionIndex i = 0; i < spec.size(); ++i) {
            for (ActionIndex j = 0; j < spec.size(); ++j) {
                if (i == j) continue;
                const Bound& entry = form.matrix.at(i, j);
                const std::string who = describe(spec) + " pair " + spec.name(i) + spec.name(j);
                if (entry.is_finite()) {
                    const Schedule t = tight_witness(spec, form, i, j);
                    attain.expect(satisfies(spec, t) && difference(t, i, j) == entry.value(), "tight " + who);
                } else {
                    const Schedule t = unbounded_witness(spec, form, i, j, Rational(1000));
                    attain.expect(satisfies(spec, t) && difference(t, i, j) >= Rational(1000), "unbounded " + who);
                }
            }
        }
    }
    report(4, "attainability witnesses", attain);
}

void criterion_5() {
    SpecGenerator gen(777);
    auto satisfiable_spec = [&](std::size_t n) {
        while (true) {
            TimelySpec s = gen.random(n);
            if (canonicalise(s).satisfiable) return s;
        }
    };
    Tally t;
    int pairs = 0;
    int contained = 0;
    int separated = 0;
    while (pairs < 1200) {
        const auto n = static_cast<std::size_t>(gen.uniform(2, 4));
        const TimelySpec x = satisfiable_spec(n);
        TimelySpec y = x;
        switch (pairs % 4) {
            case 0: y = satisfiable_spec(n); break;
            case 1:
                for (const auto& [pair, value] : x.entries()) {
                    if (gen.coin(0.4)) y.set_bound(pair.first, pair.second, Bound(value.value() + Rational(gen.uniform(-2, 3))));
                }
                break;
            case 2: y = conjoin(x, satisfiable_spec(n)); break;
            default: y = loosen_between(gen, x, canonicalise(x)); break;
        }
        const CanonicalForm fx = canonicalise(x);
        const CanonicalForm fy = canonicalise(y);
        if (!fy.satisfiable) continue;
        ++pairs;
        const std::string who = describe(x) + " vs " + describe(y);
        const Relation r = compare(fx, fy).relation;
        if (r == Relation::Equal || r == Relation::FirstTighter) {
            ++contained;
            bool all_in = true;
            oracle::for_each_satisfier(x, shared_box(x, y), [&](const Schedule& s) {
                all_in = satisfies(y, s);
                return all_in;
            });
            t.expect(all_in, "containment " + who);
        } else {
            ++separated;
            const auto s = subsumption_witness(x, fx, fy);
            t.expect(s.has_value() && satisfies(x, *s) && !satisfies(y, *s), "separation " + who);
        }
    }
    report(5, "order-embedding", t,
           std::to_string(pairs) + " pairs: " + std::to_string(contained) + " contained, " +
               std::to_string(separated) + " separated");
}

void criterion_6() {
    SpecGenerator gen(4242);
    Tally t;
    int same = 0;
    int tighter = 0;
    while (same < 600 || tighter < 600) {
        const auto n = static_cast<std::size_t>(gen.uniform(2, 4));
        const TimelySpec spec = gen.random(n);
        const CanonicalForm form = canonicalise(spec);
        if (!form.satisfiable) continue;
        if (same < 600) {
            ++same;
            const TimelySpec other = loosen_between(gen, spec, form);
            const CanonicalForm f2 = canonicalise(other);
            t.expect(equivalent(form, f2) && form.class_matrix == f2.class_matrix,
                     "equivalent " + describe(spec) + " vs " + describe(other));
        }
        if (tighter < 600) {
            ++tighter;
            const auto i = static_cast<ActionIndex>(gen.uniform(0, static_cast<std::int64_t>(n) - 1));
            auto j = static_cast<ActionIndex>(gen.uniform(0, static_cast<std::int64_t>(n) - 2));
            if (j >= i) ++j;
            TimelySpec other = spec;
            // A schedule of the original that the tightened spec excludes.
            Schedule excluded;
            const Bound& entry = form.matrix.at(i, j);
            if (entry.is_finite()) {
                other.constrain(i, j, Bound(entry.value() - Rational(1)));
                excluded = tight_witness(spec, form, i, j);
            } else {
                const Rational cap(gen.uniform(-5, 5));
                other.constrain(i, j, Bound(cap));
                excluded = unbounded_witness(spec, form, i, j, cap + Rational(1));
            }
            const std::string who = describe(spec) + " vs " + describe(other);
            t.expect(satisfies(spec, excluded) && !satisfies(other, excluded), "independent exclusion " + who);
            t.expect(!equivalent(form, canonicalise(other)), "not equivalent " + who);
        }
    }
    report(6, "uniqueness of the canonical form", t,
           std::to_string(same) + " equivalent pairs, " + std::to_string(tighter) + " tighter pairs");
}

void criterion_7() {
    SpecGenerator gen(9001);
    Tally t;
    int with_cycles = 0;
    for (int k = 0; k < 1200; ++k) {
        const auto n = static_cast<std::size_t>(gen.uniform(1, k % 3 == 0 ? 60 : 12));
        const double p = k % 2 ? 0.15 : 0.5;
        const ConstraintGraph g = gen.random_graph(n, p, k % 4 == 0 ? -6 : -2, 9);
        const DistanceMatrix dense = floyd_warshall(g);
        const DistanceMatrix sparse = sparse_apsp(g);
        bool cycle = false;
        for (std::size_t i = 0; i < n; ++i) cycle = cycle || dense.at(i, i).is_neg_inf();
        with_cycles += cycle;
        t.expect(dense == sparse, "graph " + std::to_string(k));
        if (n <= 7) t.expect(dense == brute_force_distances(g), "path enumeration, graph " + std::to_string(k));
    }
    report(7, "engine equivalence", t, "1200 graphs, " + std::to_string(with_cycles) + " with negative cycles");
}

void criterion_8() {
    Tally t;
    SpecGenerator gen(88);
    for (int k = 0; k < 300; ++k) {
        const auto n = static_cast<std::size_t>(gen.uniform(1, 8));
        TimelySpec spec(TimeModel::Discrete, names(n));
        for (ActionIndex i = 0; i < n; ++i) {
            for (ActionIndex j = 0; j < n; ++j) {
                if (i != j && gen.coin(0.5)) spec.set_bound(i, j, Bound(gen.uniform(0, 20)));
            }
        }
        const CanonicalForm form = canonicalise(spec);
        bool zero = form.satisfiable;
        if (zero) {
            for (const Rational& v : minimal_schedule(form, spec).times) zero = zero && v == Rational(0);
        }
        t.expect(zero, "nonnegative " + describe(spec));
    }
    for (std::int64_t big_n = 2; big_n <= 40; ++big_n) {
        std::vector<std::string> actions;
        for (std::int64_t k = 1; k <= big_n; ++k) actions.push_back(std::to_string(k));
        TimelySpec star(TimeModel::Discrete, actions);
        for (std::int64_t k = 2; k <= big_n; ++k) {
            star.set_bound(0, static_cast<ActionIndex>(k - 1), Bound(-k));
        }
        const CanonicalForm form = canonicalise(star);
        bool ok = form.satisfiable;
        if (ok) {
            const Schedule s = minimal_schedule(form, star);
            ok = s.times[0] == Rational(big_n);
            for (std::size_t k = 1; k < s.times.size(); ++k) ok = ok && s.times[k] == Rational(0);
        }
        t.expect(ok, "star N=" + std::to_string(big_n));
    }
    report(8, "worked examples", t, "star with unbounded N is out of scope");
}

// A consistent random spec: weights w(i,j) = r + p(j) - p(i) with r >= 0 can be
// negative but never close a negative cycle.
std::vector<Edge> consistent_edges(SpecGenerator& gen, std::size_t n, double p) {
    std::vector<std::int64_t> potential(n);
    for (auto& v : potential) v = gen.uniform(0, 1000);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && gen.coin(p)) {
                edges.push_back({i, j, Rational(gen.uniform(0, 50) + potential[j] - potential[i])});
            }
        }
    }
    return edges;
}

void criterion_9() {
    SpecGenerator gen(31337);
    const std::size_t dense_n = 256;
    std::vector<std::string> actions;
    for (std::size_t k = 0; k < dense_n; ++k) actions.push_back("a" + std::to_string(k));
    TimelySpec spec(TimeModel::Discrete, actions);
    for (const Edge& e : consistent_edges(gen, dense_n, 0.9)) spec.set_bound(e.from, e.to, Bound(e.weight));
    auto start = Clock::now();
    const CanonicalForm form = canonicalise(spec, Engine::Dense);
    const double dense_time = seconds_since(start);
    const bool dense_ok = form.satisfiable && dense_time < 5.0;

    const std::size_t sparse_n = 2000;
    std::vector<std::int64_t> potential(sparse_n);
    for (auto& v : potential) v = gen.uniform(0, 1000);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < sparse_n; ++i) {
        std::vector<std::size_t> targets;
        while (targets.size() < 4) {
            const auto j = static_cast<std::size_t>(gen.uniform(0, static_cast<std::int64_t>(sparse_n) - 1));
            if (j != i && std::find(targets.begin(), targets.end(), j) == targets.end()) targets.push_back(j);
        }
        for (std::size_t j : targets) {
            edges.push_back({i, j, Rational(gen.uniform(0, 50) + potential[j] - potential[i])});
        }
    }
    const ConstraintGraph g(sparse_n, std::move(edges));
    start = Clock::now();
    const DistanceMatrix d = all_pairs(g, Engine::Sparse);
    const double sparse_time = seconds_since(start);
    bool sparse_ok = sparse_time < 10.0;
    for (std::size_t i = 0; i < sparse_n; ++i) sparse_ok = sparse_ok && d.at(i, i) == Bound(0);

    char detail[160];
    std::snprintf(detail, sizeof detail, "dense |I|=256: %.2f s (limit 5), sparse |I|=2000 out-degree 4: %.2f s (limit 10)",
                  dense_time, sparse_time);
    report(9, "performance", dense_ok && sparse_ok, detail);
}

struct GoldenCase {
    std::vector<std::string> args;
    std::string out;
    int code;
};

void criterion_10() {
    const std::string dir = TIMELY_TEST_DATA;
    auto f = [&](const std::string& name) { return dir + "/" + name; };
    const std::vector<GoldenCase> cases{
        {{"check", f("s1.json")}, "SATISFIABLE\n", 0},
        {{"check", f("two_cycle.json")}, "UNSATISFIABLE: cycle a→b→a weight -1\n", 1},
        {{"check", f("neg_inf.json")}, "UNSATISFIABLE: bound -inf on (a,b)\n", 1},
        {{"canon", f("s1.json")}, "    a   b   c\na   0   5   7\nb  -3   0   2\nc   0   5   0\n", 0},
        {{"canon", f("edgeless.json")}, "     a    b\na    0  inf\nb  inf    0\n", 0},
        {{"canon", "--class", f("two_cycle.json")}, "      a     b\na  -inf  -inf\nb  -inf  -inf\n", 1},
        {{"solve", f("s1.json")}, "a: 0\nb: 3\nc: 0\n", 0},
        {{"solve", f("nonnegative.json")}, "a: 0\nb: 0\nc: 0\n", 0},
        {{"solve", f("two_cycle.json")}, "UNSATISFIABLE: cycle a→b→a weight -1\n", 1},
        {{"verify", f("s1.json"), f("s1_schedule_ok.json")}, "OK\n", 0},
        {{"verify", f("s1.json"), f("s1_schedule_bad.json")}, "VIOLATED\n  (b,a): t(a) - t(b) = -2 > -3\n", 1},
        {{"verify", f("s1.json"), f("s1_schedule_foreign.json")}, "", 2},
        {{"witness", f("s1.json"), "a", "b"}, "t(b) - t(a) = 5\na: 2\nb: 7\nc: 4\n", 0},
        {{"witness", f("ab5.json"), "b", "a", "--at-least", "100"}, "t(a) - t(b) = 100\na: 200\nb: 100\n", 0},
        {{"witness", f("s1.json"), "a", "b", "--at-least", "3"}, "", 2},
        {{"compare", f("s1.json"), f("s1.json")}, "Equal\n", 0},
        {{"compare", f("ab2.json"), f("ab5.json")}, "FirstTighter\nsecond exceeds first at (a,b): 5 > 2\n", 0},
        {{"compare", f("ab2.json"), f("ba2.json")},
         "Incomparable\nfirst exceeds second at (b,a): inf > 2\nsecond exceeds first at (a,b): inf > 2\n", 1},
        {{"conjoin", f("ab5.json"), f("ab2_ba0.json")},
         "{\n  \"time_model\": \"discrete\",\n  \"actions\": [\n    \"a\",\n    \"b\"\n  ],\n  \"constraints\": [\n"
         "    {\n      \"from\": \"a\",\n      \"to\": \"b\",\n      \"bound\": \"2\"\n    },\n"
         "    {\n      \"from\": \"b\",\n      \"to\": \"a\",\n      \"bound\": \"0\"\n    }\n  ]\n}\n",
         0},
        {{"conjoin", f("ab5.json"), f("edgeless.json")},
         "{\n  \"time_model\": \"discrete\",\n  \"actions\": [\n    \"a\",\n    \"b\"\n  ],\n  \"constraints\": [\n"
         "    {\n      \"from\": \"a\",\n      \"to\": \"b\",\n      \"bound\": \"5\"\n    }\n  ]\n}\n",
         0},
    };
    Tally t;
    for (const auto& c : cases) {
        std::vector<std::string> args{"timely"};
        args.insert(args.end(), c.args.begin(), c.args.end());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        std::string label;
        for (const auto& a : c.args) label += std::filesystem::path(a).filename().string() + " ";
        t.expect(code == c.code && out.str() == c.out, label + "-> exit " + std::to_string(code));
    }
    report(10, "CLI golden outputs", t);
}

}  // namespace

int main() {
    const auto start = Clock::now();
    criteria_1_to_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d criteria failed, total %.1f s\n", failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
