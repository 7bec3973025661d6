#pragma once

// Command-line front end. `run` is the whole program minus main(), so tests
// can drive it with argument vectors and string streams.
//
// Exit status: 0 YES (or a winner printed), 1 NO, 2 usage or parse error,
// 3 oracle refusal, 4 engines disagree.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elect/attacks.hpp"
#include "elect/election_io.hpp"
#include "elect/oracle.hpp"
#include "elect/rules.hpp"
#include "elect/witness_io.hpp"

namespace elect::cli {

enum class Engine { Main, Oracle, Both };
enum class Format { Text, Json };

struct RunConfig {
    std::string command;
    std::string rule;
    std::string file;
    std::string target;
    Count manipulators = 0;
    Count budget = 0;
    std::string variant;
    std::string unregistered;
    std::string spoilers;
    Engine engine = Engine::Main;
    bool destructive = false;
    Format format = Format::Text;
    std::uint64_t max_states = OracleBudget{}.max_states;
    bool timing = true;
};

namespace detail {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<CandidateId> parse_names(const Election& e, const std::string& list) {
    std::vector<CandidateId> out;
    std::string_view rest = list;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string name(elect::detail::trim(rest.substr(0, comma)));
        out.push_back(e.find(name));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

inline AttackKind make_kind(const RunConfig& cfg, const Election& e) {
    if (cfg.command == "manipulate") return Manipulation{cfg.manipulators};
    if (cfg.command == "bribe") return Bribery{cfg.budget};
    const std::string& v = cfg.variant;
    if (v.empty()) throw UsageError("control needs --variant");
    if (v == "add-votes") {
        if (cfg.unregistered.empty()) throw UsageError("add-votes needs --unregistered PATH");
        Election pool = parse_election(read_file(cfg.unregistered));
        if (pool.candidates() != e.candidates()) throw UsageError("unregistered votes use a different candidate set");
        return AddVotes{cfg.budget, pool.profile()};
    }
    if (v == "delete-votes") return DeleteVotes{cfg.budget};
    if (v == "partition-votes-te") return PartitionVotes{TieModel::TiesEliminate};
    if (v == "partition-votes-tp") return PartitionVotes{TieModel::TiesPromote};
    if (v == "add-cands" || v == "add-cands-unlimited") {
        if (cfg.spoilers.empty()) throw UsageError(v + " needs --spoilers NAME,...");
        return AddCandidates{v == "add-cands", cfg.budget, parse_names(e, cfg.spoilers)};
    }
    if (v == "delete-cands") return DeleteCandidates{cfg.budget};
    if (v == "partition-cands-te") return PartitionCandidates{false, TieModel::TiesEliminate};
    if (v == "partition-cands-tp") return PartitionCandidates{false, TieModel::TiesPromote};
    if (v == "runoff-partition-cands-te") return PartitionCandidates{true, TieModel::TiesEliminate};
    if (v == "runoff-partition-cands-tp") return PartitionCandidates{true, TieModel::TiesPromote};
    throw UsageError("unknown control variant '" + v + "'");
}

inline std::string elapsed_text(double ms) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << ms;
    return ss.str();
}

struct Report {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, std::string>> lines;
    std::vector<std::string> witness;
    bool has_witness = false;

    void set(const std::string& key, const std::string& value) {
        doc[key] = value;
        lines.emplace_back(key, value);
    }

    void write(std::ostream& out, Format format, std::optional<double> ms) {
        if (format == Format::Json) {
            if (has_witness) doc["witness"] = witness;
            if (ms) doc["elapsed_ms"] = std::stod(elapsed_text(*ms));
            out << doc.dump(2) << '\n';
            return;
        }
        for (const auto& [k, v] : lines) out << k << ": " << v << '\n';
        if (has_witness) {
            out << "witness:\n";
            for (const auto& w : witness) out << "  " << w << '\n';
        }
        if (ms) out << "elapsed_ms: " << elapsed_text(*ms) << '\n';
    }
};

inline int run_config(const RunConfig& cfg, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    Rule rule = [&] {
        try {
            return parse_rule(cfg.rule);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(std::string("bad --rule: ") + ex.what());
        }
    }();
    Election e = parse_election(read_file(cfg.file));
    Report report;
    report.set("rule", rule.spec());
    auto elapsed = [&]() -> std::optional<double> {
        if (!cfg.timing) return std::nullopt;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    if (cfg.command == "winner") {
        CandidateId w = evaluate(rule, e);
        report.set("winner", e.name(w));
        report.set("cowinners", elect::detail::names_or_none(e, cowinners(rule, e)));
        report.write(out, cfg.format, elapsed());
        return 0;
    }

    if (cfg.target.empty()) throw UsageError(cfg.command + " needs --target NAME");
    AttackInstance inst{rule, e, e.find(cfg.target), make_kind(cfg, e),
                        cfg.destructive ? Mode::Destructive : Mode::Constructive};
    validate(inst);
    report.set("target", cfg.target);
    report.set("mode", cfg.destructive ? "destructive" : "constructive");

    std::optional<AttackResult> main_result, oracle_result;
    if (cfg.engine != Engine::Oracle) main_result = solve_attack(inst);
    if (cfg.engine != Engine::Main) oracle_result = oracle_solve(inst, OracleBudget{cfg.max_states});
    const AttackResult& shown = main_result ? *main_result : *oracle_result;

    report.set("decision", to_string(shown.decision));
    if (shown.yes()) {
        report.set("winner", e.name(*shown.winner));
        report.witness = witness_lines(inst, *shown.witness);
        report.has_witness = true;
    }
    int code = shown.decision == Decision::Yes ? 0 : shown.decision == Decision::No ? 1 : 3;
    if (cfg.engine == Engine::Both) {
        report.set("oracle", to_string(oracle_result->decision));
        if (oracle_result->decision == Decision::Refused) {
            report.set("match", "unchecked");
            code = 3;
        } else if (oracle_result->decision != main_result->decision) {
            report.set("match", "MISMATCH");
            code = 4;
        } else {
            report.set("match", "yes");
        }
    }
    report.write(out, cfg.format, elapsed());
    return code;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact election attack solver", "elect"};
    app.require_subcommand(1);
    std::string engine = "main", format = "text";
    bool no_timing = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--rule", cfg.rule, "voting rule, e.g. borda, copeland:1/2, approval:2")->required();
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--no-timing", no_timing, "omit elapsed_ms");
        sub->add_option("file", cfg.file, "election file")->required();
    };
    auto attack = [&](CLI::App* sub) {
        common(sub);
        sub->add_option("--target", cfg.target, "distinguished candidate")->required();
        sub->add_option("--engine", engine, "main, oracle or both")->check(CLI::IsMember({"main", "oracle", "both"}));
        sub->add_flag("--destructive", cfg.destructive, "make the target lose");
        sub->add_option("--max-states", cfg.max_states, "oracle state cap")->check(CLI::PositiveNumber);
    };
    common(app.add_subcommand("winner", "print the winner"));
    auto* manip = app.add_subcommand("manipulate", "constructive or destructive manipulation");
    attack(manip);
    manip->add_option("--manipulators", cfg.manipulators, "number of manipulators")->required()->check(CLI::NonNegativeNumber);
    auto* bribe = app.add_subcommand("bribe", "bribery");
    attack(bribe);
    bribe->add_option("--budget", cfg.budget, "votes that may be changed")->required()->check(CLI::NonNegativeNumber);
    auto* control = app.add_subcommand("control", "control by adding, deleting or partitioning");
    attack(control);
    control->add_option("--variant", cfg.variant, "control type")->required();
    control->add_option("--budget", cfg.budget, "action budget")->check(CLI::NonNegativeNumber);
    control->add_option("--unregistered", cfg.unregistered, "election file with the unregistered votes");
    control->add_option("--spoilers", cfg.spoilers, "comma-separated spoiler candidates");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << '\n';
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.engine = engine == "oracle" ? Engine::Oracle : engine == "both" ? Engine::Both : Engine::Main;
    cfg.format = format == "json" ? Format::Json : Format::Text;
    cfg.timing = !no_timing;
    try {
        return detail::run_config(cfg, out);
    } catch (const detail::UsageError& ex) {
        err << "error: " << ex.what() << '\n';
    } catch (const ParseError& ex) {
        err << "error: " << ex.what() << '\n';
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
    }
    return 2;
}

}  // namespace elect::cli
