#include "decide/cli.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace decide::cli {

// ---------------------------------------------------------------- logging

LogLevel Log::level_from_env() {
    const char* v = std::getenv("DECIDE_LOG");
    if (!v) return LogLevel::Info;
    const std::string s(v);
    if (s == "error") return LogLevel::Error;
    if (s == "debug") return LogLevel::Debug;
    return LogLevel::Info;
}

void Log::error(const std::string& msg) const { err_ << "error: " << msg << '\n'; }

void Log::warn(const std::string& msg) const {
    if (level_ >= LogLevel::Info) err_ << "warning: " << msg << '\n';
}

void Log::debug(const std::string& msg) const {
    if (level_ >= LogLevel::Debug) err_ << "debug: " << msg << '\n';
}

// ---------------------------------------------------------------- parsing

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string context;
        const std::size_t ls = text.rfind('\n', end == 0 ? 0 : end - 1);
        const std::size_t start = ls == std::string::npos ? 0 : ls + 1;
        const std::size_t le = text.find('\n', start);
        context = text.substr(start, (le == std::string::npos ? text.size() : le) - start);
        throw ParseError(std::string(what) + ": syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(col) + ": " + context);
    }
}

[[noreturn]] void bad(const std::string& msg) { throw ParseError("problem file: " + msg); }

std::vector<std::string> string_list(const json& j, const char* key) {
    if (!j.is_array()) bad(std::string("'") + key + "' must be a list of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) bad(std::string("'") + key + "' must be a list of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Vector<double> number_vector(const json& j, const std::string& what) {
    if (!j.is_array()) bad(what + " must be a list of numbers");
    Vector<double> v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) bad(what + " must be a list of numbers");
        v[static_cast<Index>(i)] = j[i].get<double>();
    }
    return v;
}

/// Looks up the per-state entry of `j`, which is either a list in state
/// order or an object keyed by state label.
const json& per_state(const json& j, const std::vector<std::string>& states, std::size_t s,
                      const char* what) {
    if (j.is_array()) {
        if (j.size() != states.size()) bad(std::string(what) + " needs one entry per state");
        return j[s];
    }
    if (j.is_object()) {
        if (j.size() != states.size()) bad(std::string(what) + " needs one entry per state");
        auto it = j.find(states[s]);
        if (it == j.end()) bad(std::string(what) + " has no entry for state '" + states[s] + "'");
        return *it;
    }
    bad(std::string(what) + " must be a list or an object keyed by state");
}

} // namespace

std::optional<IdentificationPartition> ProblemFile::partition() const {
    if (regions) return regions;
    if (sampling && sampling->is_finite())
        return compute_identification_partition(*sampling, tolerance);
    return std::nullopt;
}

std::string ProblemFile::partition_source() const {
    if (regions) return "regions";
    if (sampling && sampling->is_finite()) return "sampling";
    return "none";
}

ProblemFile parse_problem(const std::string& text) {
    const json doc = parse_json(text, "problem file");
    if (!doc.is_object()) bad("top level must be an object");
    for (const char* key : {"actions", "states", "welfare"}) {
        if (!doc.contains(key)) bad(std::string("missing required key '") + key + "'");
    }
    auto actions = string_list(doc["actions"], "actions");
    auto states = string_list(doc["states"], "states");

    const json& wj = doc["welfare"];
    if (!wj.is_array() || wj.size() != actions.size())
        bad("'welfare' must have one row per action");
    Matrix<double> w(static_cast<Index>(actions.size()), static_cast<Index>(states.size()));
    for (std::size_t c = 0; c < actions.size(); ++c) {
        const auto row = number_vector(wj[c], "welfare row " + std::to_string(c));
        if (row.size() != static_cast<Index>(states.size()))
            bad("welfare row " + std::to_string(c) + " has " + std::to_string(row.size()) +
                " entries, expected " + std::to_string(states.size()));
        w.row(static_cast<Index>(c)) = row.transpose();
    }

    try {
        ProblemFile file{DecisionProblem<double>(std::move(actions), std::move(states), std::move(w)),
                         {}, {}, {}, tol::equivalence, {}};
        const auto& problem = file.problem;

        if (doc.contains("prior") && !doc["prior"].is_null()) {
            auto p = number_vector(doc["prior"], "'prior'");
            if (p.size() != problem.num_states()) bad("'prior' needs one weight per state");
            file.prior = Prior<double>(std::move(p));
        }

        if (doc.contains("sampling") && !doc["sampling"].is_null()) {
            const json& sj = doc["sampling"];
            if (!sj.is_object() || !sj.contains("sample_space"))
                bad("'sampling' must be an object with a 'sample_space'");
            if (sj.contains("tolerance")) {
                if (!sj["tolerance"].is_number()) bad("'sampling.tolerance' must be a number");
                file.tolerance = sj["tolerance"].get<double>();
                if (!(file.tolerance >= 0)) bad("'sampling.tolerance' must be nonnegative");
            }
            const json& space = sj["sample_space"];
            if (space.is_string()) {
                if (space.get<std::string>() != "unit_interval")
                    bad("'sample_space' must be a list of points or \"unit_interval\"");
                if (sj.contains("distributions")) {
                    for (std::size_t s = 0; s < problem.states().size(); ++s) {
                        const json& d = per_state(sj["distributions"], problem.states(), s,
                                                  "'sampling.distributions'");
                        if (!d.is_string() || d.get<std::string>() != "uniform")
                            bad("unit-interval distributions must all be \"uniform\"");
                    }
                }
                file.sampling = SamplingModel<double>::unit_interval(problem.num_states());
            } else {
                auto points = string_list(space, "sample_space");
                if (!sj.contains("distributions")) bad("'sampling' needs 'distributions'");
                std::vector<Vector<double>> dists;
                for (std::size_t s = 0; s < problem.states().size(); ++s) {
                    const json& d = per_state(sj["distributions"], problem.states(), s,
                                              "'sampling.distributions'");
                    dists.push_back(number_vector(d, "distribution of '" + problem.states()[s] + "'"));
                }
                file.sampling = SamplingModel<double>::finite(std::move(points), std::move(dists));
            }
        }

        if (doc.contains("regions") && !doc["regions"].is_null()) {
            const json& rj = doc["regions"];
            if (!rj.is_array()) bad("'regions' must be a list of lists of state labels");
            std::vector<std::vector<Index>> groups;
            for (const auto& block : rj) {
                std::vector<Index> g;
                for (const auto& label : string_list(block, "regions"))
                    g.push_back(problem.state_index(label));
                groups.push_back(std::move(g));
            }
            file.regions = IdentificationPartition(std::move(groups), problem.num_states());
            if (file.sampling)
                file.warnings.push_back("both 'regions' and 'sampling' given; using 'regions' "
                                        "as the identification partition");
        }
        return file;
    } catch (const InputError& e) {
        bad(e.what());
    }
}

ProblemFile load_problem(const std::string& path) { return parse_problem(read_file(path)); }

StatisticalDecisionFunction<double> parse_sdf(const std::string& text, const ProblemFile& file) {
    const json doc = parse_json(text, "sdf file");
    auto sdf_bad = [](const std::string& msg) -> ParseError { return ParseError("sdf file: " + msg); };
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw sdf_bad("must be an object with a string 'type'");
    const auto type = doc["type"].get<std::string>();
    const auto& problem = file.problem;
    try {
        if (type == "table") {
            if (!doc.contains("table")) throw sdf_bad("'table' is required for type table");
            if (!file.sampling || !file.sampling->is_finite())
                throw sdf_bad("a decision table needs a finite sample space in the problem file");
            const auto& points = file.sampling->points();
            const json& tj = doc["table"];
            std::vector<Index> actions(points.size(), -1);
            if (tj.is_array()) {
                if (tj.size() != points.size())
                    throw sdf_bad("'table' must list one action per sample point");
                for (std::size_t p = 0; p < points.size(); ++p) {
                    if (!tj[p].is_string()) throw sdf_bad("'table' entries must be action labels");
                    actions[p] = problem.action_index(tj[p].get<std::string>());
                }
            } else if (tj.is_object()) {
                for (auto it = tj.begin(); it != tj.end(); ++it) {
                    auto pos = std::find(points.begin(), points.end(), it.key());
                    if (pos == points.end()) throw sdf_bad("unknown sample point '" + it.key() + "'");
                    if (!it.value().is_string()) throw sdf_bad("'table' values must be action labels");
                    actions[static_cast<std::size_t>(pos - points.begin())] =
                        problem.action_index(it.value().get<std::string>());
                }
                for (std::size_t p = 0; p < points.size(); ++p) {
                    if (actions[p] < 0) throw sdf_bad("sample point '" + points[p] + "' has no action");
                }
            } else {
                throw sdf_bad("'table' must be a list or an object");
            }
            return StatisticalDecisionFunction<double>::table(std::move(actions), problem.num_actions());
        }
        if (type == "threshold") {
            if (!doc.contains("thresholds")) throw sdf_bad("'thresholds' is required for type threshold");
            const json& cj = doc["thresholds"];
            if (!cj.is_array()) throw sdf_bad("'thresholds' must be a list of numbers");
            std::vector<double> cuts;
            for (const auto& c : cj) {
                if (!c.is_number()) throw sdf_bad("'thresholds' must be a list of numbers");
                cuts.push_back(c.get<double>());
            }
            if (static_cast<Index>(cuts.size()) + 1 != problem.num_actions())
                throw sdf_bad("a threshold rule needs |actions| - 1 cut-points");
            return StatisticalDecisionFunction<double>::threshold(std::move(cuts));
        }
    } catch (const InputError& e) {
        throw sdf_bad(e.what());
    }
    throw sdf_bad("unknown type '" + type + "' (expected table or threshold)");
}

StatisticalDecisionFunction<double> load_sdf(const std::string& path, const ProblemFile& file) {
    return parse_sdf(read_file(path), file);
}

ScopeSpec ScopeSpec::parse(const std::string& text) {
    if (text == "full") return {Full, {}};
    if (text == "exante") return {ExAnte, {}};
    const std::string prefix = "block:";
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size())
        return {Block, text.substr(prefix.size())};
    throw UsageError("--scope must be full, block:<state> or exante, got '" + text + "'");
}

// ---------------------------------------------------------------- reports

namespace {

json labelled(const std::vector<std::string>& labels, const Vector<double>& v,
              const std::vector<Index>* subset = nullptr) {
    json out = json::object();
    if (subset) {
        for (Index k = 0; k < static_cast<Index>(subset->size()); ++k)
            out[labels[static_cast<std::size_t>((*subset)[static_cast<std::size_t>(k)])]] = v[k];
    } else {
        for (Index k = 0; k < v.size(); ++k) out[labels[static_cast<std::size_t>(k)]] = v[k];
    }
    return out;
}

json state_list(const DecisionProblem<double>& problem, const std::vector<Index>& states) {
    json out = json::array();
    for (Index s : states) out.push_back(problem.states()[static_cast<std::size_t>(s)]);
    return out;
}

IdentificationPartition require_partition(const ProblemFile& file, const char* why) {
    auto p = file.partition();
    if (!p)
        throw UsageError(std::string(why) +
                         " needs an identification partition: give 'regions' or a finite 'sampling'");
    return *p;
}

const Prior<double>* require_prior(const ProblemFile& file, Criterion criterion) {
    if (criterion != Criterion::Bayes) return nullptr;
    if (!file.prior) throw UsageError("the bayes criterion needs a 'prior' in the problem file");
    return &*file.prior;
}

RegionScope resolve_scope(const ProblemFile& file, const ScopeSpec& spec) {
    const auto& problem = file.problem;
    if (spec.kind == ScopeSpec::Full) return RegionScope::all(problem.num_states());
    const auto p = require_partition(file, "a block scope");
    Index s;
    try {
        s = problem.state_index(spec.state);
    } catch (const InputError& e) {
        throw UsageError(e.what());
    }
    return RegionScope::region(p, s);
}

json solution_json(const DecisionProblem<double>& problem, const CriterionSolution<double>& sol,
                   Criterion criterion, const RegionScope& scope) {
    json out;
    out["states"] = state_list(problem, scope.states());
    out["delta"] = labelled(problem.actions(), sol.delta.probs());
    out["value"] = sol.value;
    out["is_pure"] = sol.is_pure;
    out["tied"] = sol.tied;
    if (criterion == Criterion::MinimaxRegret)
        out["regret_profile"] =
            labelled(problem.states(), regret_profile(problem, sol.delta, scope), &scope.states());
    out["device"] = device_document(sol.delta);
    out["diagnostics"] = sol.diagnostics;
    return out;
}

/// Action that attains zero maximum regret on the block, if any.
std::optional<Index> dominant_action(const DecisionProblem<double>& problem, const RegionScope& scope) {
    const auto sol = mmr_pure(problem, scope);
    if (sol.value <= tol::welfare) {
        Index c;
        sol.delta.probs().maxCoeff(&c);
        return c;
    }
    return std::nullopt;
}

} // namespace

json device_document(const ChoiceDistribution<double>& delta) {
    return json{{"type", "threshold"}, {"thresholds", randomization_device(delta).as_threshold().cuts}};
}

json regions_report(const ProblemFile& file) {
    const auto& problem = file.problem;
    const auto p = require_partition(file, "the regions command");
    const auto cls = classify_identification(p);
    const std::string label =
        is_unidentified(p) ? "Unidentified (region = S)" : std::string(to_string(cls));

    json out;
    out["command"] = "regions";
    out["source"] = file.partition_source();
    out["classification"] = label;
    out["num_blocks"] = p.num_blocks();
    out["summary"] = label + "; " + std::to_string(p.num_blocks()) +
                     (p.num_blocks() == 1 ? " block" : " blocks");
    json blocks = json::array();
    for (Index b = 0; b < p.num_blocks(); ++b) {
        const RegionScope scope = RegionScope::block(p, b);
        const auto dom = dominant_action(problem, scope);
        json jb;
        jb["states"] = state_list(problem, scope.states());
        jb["ambiguous"] = !dom.has_value();
        jb["dominant_action"] = dom ? json(problem.actions()[static_cast<std::size_t>(*dom)]) : json(nullptr);
        blocks.push_back(std::move(jb));
    }
    out["blocks"] = std::move(blocks);
    return out;
}

json solve_report(const ProblemFile& file, Criterion criterion, Mode mode, const ScopeSpec& spec) {
    const auto& problem = file.problem;
    const Prior<double>* prior = require_prior(file, criterion);

    json out;
    out["command"] = "solve";
    out["criterion"] = to_string(criterion);
    out["mode"] = mode == Mode::Pure ? "pure" : "mixed";

    if (spec.kind == ScopeSpec::ExAnte) {
        const auto p = require_partition(file, "the exante scope");
        const auto sol = mode == Mode::Pure ? exante_pure(problem, p, criterion, prior)
                                            : solve_exante_mixed(problem, p, criterion, prior);
        out["scope"] = "exante";
        out["value"] = sol.value;
        json blocks = json::array();
        for (Index b = 0; b < p.num_blocks(); ++b)
            blocks.push_back(solution_json(problem, sol.blocks[static_cast<std::size_t>(b)], criterion,
                                           RegionScope::block(p, b)));
        out["blocks"] = std::move(blocks);
        out["diagnostics"] = sol.diagnostics;
        return out;
    }

    const RegionScope scope = resolve_scope(file, spec);
    const auto sol = mode == Mode::Pure ? solve_pure(problem, criterion, scope, prior)
                                        : solve_mixed(problem, criterion, scope, prior);
    out["scope"] = spec.kind == ScopeSpec::Full ? std::string("full") : "block:" + spec.state;
    out.update(solution_json(problem, sol, criterion, scope));
    return out;
}

namespace {

json binary_block(const DecisionProblem<double>& problem, const RegionScope& scope,
                  std::vector<std::string>& warnings) {
    const auto s = summarize_binary(problem, scope);
    const auto& a = problem.actions()[0];
    const auto& b = problem.actions()[1];

    json out;
    out["states"] = state_list(problem, scope.states());
    json js;
    js["alpha_L"] = s.alpha_lower;
    js["alpha_U"] = s.alpha_upper;
    js["beta_L"] = s.beta_lower;
    js["beta_U"] = s.beta_upper;
    js["M_a"] = s.max_regret_a ? json(*s.max_regret_a) : json(nullptr);
    js["M_b"] = s.max_regret_b ? json(*s.max_regret_b) : json(nullptr);
    js["ambiguous"] = s.ambiguous;
    js["lower_pair_feasible"] = s.lower_pair_feasible;
    js["rectangular"] = s.rectangular;
    out["summary"] = std::move(js);

    const auto mm = maximin_binary(problem, scope);
    out["maximin"] = {{"delta_b", mm.delta[1]},
                      {"value", mm.value},
                      {"tied", mm.tied},
                      {"path", s.lower_pair_feasible ? "closed-form" : "lp"}};

    if (!s.ambiguous) {
        const bool choose_b = !s.max_regret_a && s.max_regret_b;
        out["mmr"] = {{"delta_b", choose_b ? 1.0 : 0.0},
                      {"max_regret", 0.0},
                      {"message", "no ambiguity: choose " + (choose_b ? b : a) + "; regret 0"}};
        return out;
    }

    const auto mr = mmr_delta_binary(s);
    out["mmr"] = {{"delta_b", mr.delta_b},
                  {"delta", {{a, 1.0 - mr.delta_b}, {b, mr.delta_b}}},
                  {"max_regret", mr.max_regret}};
    const auto rect = mmr_delta_binary_rectangular(s);
    out["rectangular"] = {{"delta_b", rect.delta_b},
                          {"max_regret", rect.max_regret},
                          {"premise_holds", rect.premise_holds}};
    if (rect.warning) warnings.push_back("states " + state_list(problem, scope.states()).dump() + ": " + *rect.warning);
    const auto cmp = regret_comparison_binary(s);
    out["comparison"] = {{"vertex_best", cmp.vertex_best},
                         {"mixed_best", cmp.mixed_best},
                         {"improvement", cmp.improvement}};
    return out;
}

} // namespace

json binary_report(const ProblemFile& file, const ScopeSpec& spec, std::vector<std::string>& warnings) {
    const auto& problem = file.problem;
    if (problem.num_actions() != 2)
        throw UsageError("the binary command needs exactly two actions, got " +
                         std::to_string(problem.num_actions()));
    json out;
    out["command"] = "binary";
    if (spec.kind == ScopeSpec::ExAnte) {
        const auto p = require_partition(file, "the exante scope");
        out["scope"] = "exante";
        json blocks = json::array();
        for (Index b = 0; b < p.num_blocks(); ++b)
            blocks.push_back(binary_block(problem, RegionScope::block(p, b), warnings));
        out["blocks"] = std::move(blocks);
        out["exante_max_regret"] = exante_mmr_binary(problem, p);
        return out;
    }
    const RegionScope scope = resolve_scope(file, spec);
    out["scope"] = spec.kind == ScopeSpec::Full ? std::string("full") : "block:" + spec.state;
    out.update(binary_block(problem, scope, warnings));
    return out;
}

json simulate_report(const ProblemFile& file, const StatisticalDecisionFunction<double>& sdf,
                     std::int64_t reps, std::uint64_t seed, int workers) {
    const auto& problem = file.problem;
    if (!file.sampling) throw UsageError("the simulate command needs 'sampling' in the problem file");
    const auto& model = *file.sampling;

    json out;
    out["command"] = "simulate";
    out["reps"] = reps;
    out["seed"] = seed;
    json states = json::array();
    for (Index s = 0; s < problem.num_states(); ++s) {
        const auto probs = choice_probabilities(sdf, model, s);
        const double exact = sdf_expected_welfare(sdf, model, problem, s);

        // Direct enumeration of (outcome, action, welfare) for the cross-check.
        double enumerated = 0.0;
        if (sdf.is_table()) {
            const auto& q = model.distribution(s);
            for (Index p = 0; p < q.size(); ++p)
                enumerated += q[p] * problem.welfare(sdf.action_at_point(p), s);
        } else {
            double prev = 0.0;
            const auto& cuts = sdf.as_threshold().cuts;
            for (std::size_t k = 0; k <= cuts.size(); ++k) {
                const double next = k < cuts.size() ? cuts[k] : 1.0;
                enumerated += (next - prev) * problem.welfare(static_cast<Index>(k), s);
                prev = next;
            }
        }
        const auto mc = monte_carlo_expected_welfare(sdf, model, problem, s, reps, seed, workers);

        json js;
        js["state"] = problem.states()[static_cast<std::size_t>(s)];
        js["choice_probabilities"] = labelled(problem.actions(), probs.probs());
        js["exact_welfare"] = exact;
        js["enumerated_welfare"] = enumerated;
        js["residual"] = std::abs(exact - enumerated);
        js["mc_estimate"] = mc.estimate;
        js["mc_std_error"] = mc.std_error;
        states.push_back(std::move(js));
    }
    out["states"] = std::move(states);
    return out;
}

// ---------------------------------------------------------------- driver

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const Log log(err, Log::level_from_env());

    CLI::App app{"Decision making under ambiguity from partially identified states", "decide"};
    app.require_subcommand(1);

    std::string problem_path;

    auto* regions = app.add_subcommand("regions", "Identification partition and its classification");
    regions->add_option("file", problem_path, "Problem file (JSON)")->required();

    std::string criterion_name, mode_name = "mixed", scope_text = "full";
    auto* solve = app.add_subcommand("solve", "Solve a decision criterion");
    solve->add_option("--criterion", criterion_name, "bayes | maximin | mmr")
        ->required()
        ->check(CLI::IsMember({"bayes", "maximin", "mmr"}));
    solve->add_option("--mode", mode_name, "pure | mixed")->check(CLI::IsMember({"pure", "mixed"}));
    solve->add_option("--scope", scope_text, "full | block:<state> | exante");
    solve->add_option("file", problem_path, "Problem file (JSON)")->required();

    auto* binary = app.add_subcommand("binary", "Closed-form analysis of a two-action problem");
    binary->add_option("--scope", scope_text, "full | block:<state> | exante");
    binary->add_option("file", problem_path, "Problem file (JSON)")->required();

    std::string sdf_path;
    std::int64_t reps = 100000;
    std::uint64_t seed = 0;
    int workers = 1;
    auto* simulate = app.add_subcommand("simulate", "Exact and simulated welfare of a decision function");
    simulate->add_option("--sdf", sdf_path, "Decision function file (JSON)")->required();
    simulate->add_option("--reps", reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "Seed of the counter-based stream");
    simulate->add_option("--workers", workers, "Simulation threads")->check(CLI::PositiveNumber);
    simulate->add_option("file", problem_path, "Problem file (JSON)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        log.error(e.what());
        return kUsage;
    }

    try {
        const ProblemFile file = load_problem(problem_path);
        for (const auto& w : file.warnings) log.warn(w);
        log.debug("loaded " + std::to_string(file.problem.num_actions()) + " actions x " +
                  std::to_string(file.problem.num_states()) + " states from " + problem_path);

        json report;
        if (*regions) {
            report = regions_report(file);
        } else if (*solve) {
            const Criterion criterion = criterion_name == "bayes"     ? Criterion::Bayes
                                        : criterion_name == "maximin" ? Criterion::Maximin
                                                                      : Criterion::MinimaxRegret;
            report = solve_report(file, criterion, mode_name == "pure" ? Mode::Pure : Mode::Mixed,
                                  ScopeSpec::parse(scope_text));
        } else if (*binary) {
            std::vector<std::string> warnings;
            report = binary_report(file, ScopeSpec::parse(scope_text), warnings);
            for (const auto& w : warnings) log.warn(w);
        } else if (*simulate) {
            if (!file.sampling) throw UsageError("the simulate command needs 'sampling' in the problem file");
            const auto sdf = load_sdf(sdf_path, file);
            report = simulate_report(file, sdf, reps, seed, workers);
        }
        out << report.dump(2) << '\n';
        return kSuccess;
    } catch (const UsageError& e) {
        log.error(e.what());
        return kUsage;
    } catch (const ParseError& e) {
        log.error(e.what());
        return kParse;
    } catch (const InputError& e) {
        log.error(e.what());
        return kParse;
    } catch (const std::logic_error& e) {
        // PreconditionError, DegeneratePosteriorError, UnsupportedOperationError
        log.error(e.what());
        return kSolver;
    } catch (const std::runtime_error& e) {
        log.error(e.what());
        return kSolver;
    }
}

} // namespace decide::cli
