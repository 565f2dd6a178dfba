// cubeterm: command-line front end for the cube term library.
//
// Every command prints one JSON object
//   { "command", "input_digest", "payload", "elapsed_ms" }
// or, with --pretty, a short human summary. Exit codes: 0 computed,
// 1 undecided or truncated, 2 input error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cubeterm/decide.hpp"
#include "cubeterm/fixtures.hpp"
#include "cubeterm/json_io.hpp"

using namespace cubeterm;

namespace {

constexpr int exit_computed = 0;
constexpr int exit_undecided = 1;
constexpr int exit_input_error = 2;

struct Outcome {
    Json payload;
    int code = exit_computed;
    std::string summary;
};

std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string set_text(const ElementSet &s) {
    std::string out = "{";
    for (Element e : s.members()) out += (out.size() > 1 ? "," : "") + std::to_string(e);
    return out + "}";
}

std::vector<std::size_t> parse_arities(const std::string &text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("arities must be a comma separated list of integers");
        out.push_back(std::stoul(item));
    }
    if (out.empty()) throw std::invalid_argument("no arities given");
    return out;
}

Outcome cube_outcome(const CubeDecision &d) {
    Outcome o{to_json(d), d.verdict == Verdict::undecided ? exit_undecided : exit_computed, to_string(d.verdict)};
    o.summary += " (dimension bound " + std::to_string(d.dimension_bound) + ")";
    if (d.blocker) o.summary += ", blocker C=" + set_text(d.blocker->C) + " D=" + set_text(d.blocker->D);
    if (d.failing_pair)
        o.summary += ", failing pair (" + std::to_string(d.failing_pair->first) + "," +
                     std::to_string(d.failing_pair->second) + ")";
    if (!d.note.empty()) o.summary += "; " + d.note;
    return o;
}

Outcome bool_outcome(const char *key, bool value, Json extra = Json::object()) {
    Json payload{{key, value}};
    payload.update(extra);
    return {payload, exit_computed, std::string(key) + ": " + (value ? "true" : "false")};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cube term decisions for finite algebras"};
    app.require_subcommand(1);
    bool pretty = false;
    std::optional<long long> time_limit_ms;
    app.add_flag("--pretty", pretty, "Print a human readable summary instead of JSON");
    app.add_option("--time-limit", time_limit_ms, "Per closure time limit in milliseconds");

    std::string file;
    std::size_t dim = 0, arity = 0;
    std::optional<std::uint64_t> cap;
    bool force_general = false;

    auto with_file = [&](const char *name, const char *help) {
        auto *cmd = app.add_subcommand(name, help);
        cmd->add_option("FILE", file, "Algebra JSON file")->required();
        return cmd;
    };
    auto *validate_cmd = with_file("validate", "Check an algebra file");
    auto *decide_cmd = with_file("decide-cube", "Decide whether a cube term exists");
    decide_cmd->add_option("--cap", cap, "Largest dimension tried on the general path");
    decide_cmd->add_flag("--force-general", force_general, "Use the general path even for idempotent input");
    auto *blocker_cmd = with_file("find-blocker", "Search for a cube term blocker");
    auto *cube_cmd = with_file("check-cube-dim", "Is there a cube term of dimension D");
    cube_cmd->add_option("-d", dim, "Dimension")->required();
    auto *edge_cmd = with_file("check-edge-dim", "Is there an edge term of dimension D");
    edge_cmd->add_option("-d", dim, "Dimension")->required();
    auto *nu_cmd = with_file("check-nu", "Is there a near-unanimity term of arity K");
    nu_cmd->add_option("-k", arity, "Arity")->required();
    auto *decide_nu_cmd = with_file("decide-nu", "Decide whether a near-unanimity term exists");
    decide_nu_cmd->add_option("--cap", cap, "Largest cube dimension scanned");
    auto *min_cmd = with_file("min-cube-dim", "Smallest cube term dimension up to a cap");
    min_cmd->add_option("--cap", cap, "Largest dimension scanned");
    auto *bounds_cmd = with_file("bounds", "Dimension bounds");

    auto *gen_cmd = app.add_subcommand("gen", "Generate example algebras");
    gen_cmd->require_subcommand(1);
    std::string out_path, fixture_name, tight_arities;
    std::size_t gen_n = 0;
    gen_cmd->add_option("-o", out_path, "Write the algebra JSON to this file");
    auto *gen_fixture = gen_cmd->add_subcommand("fixture", "Named fixture");
    gen_fixture->add_option("NAME", fixture_name, "lattice2, semilattice2, nand2, zero2, constant3, no_opsN")
        ->required();
    auto *gen_quasi = gen_cmd->add_subcommand("quasigroup", "Idempotent quasigroup");
    gen_quasi->add_option("N", gen_n, "Order")->required();
    auto *gen_tight = gen_cmd->add_subcommand("tight", "Tight dimension example");
    gen_tight->add_option("N", gen_n, "Universe size")->required();
    gen_tight->add_option("ARITIES", tight_arities, "Comma separated arities")->required();

    auto *oracle_cmd = app.add_subcommand("oracle", "Brute-force reference computations");
    oracle_cmd->require_subcommand(1);
    auto *oracle_blockers = oracle_cmd->add_subcommand("blockers", "Exhaustive blocker search");
    oracle_blockers->add_option("FILE", file)->required();
    auto *oracle_chipped = oracle_cmd->add_subcommand("chipped-cubes", "Exhaustive chipped cube search");
    oracle_chipped->add_option("FILE", file)->required();
    oracle_chipped->add_option("-d", dim, "Arity")->required();
    auto *oracle_clone = oracle_cmd->add_subcommand("clone", "Term operations of arity K");
    oracle_clone->add_option("FILE", file)->required();
    oracle_clone->add_option("-k", arity, "Arity")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_input_error;
    }

    std::string command;
    for (const auto *sub : app.get_subcommands()) {
        command = sub->get_name();
        for (const auto *inner : sub->get_subcommands()) command += " " + inner->get_name();
    }

    const auto started = std::chrono::steady_clock::now();
    Json digest = nullptr;
    Outcome outcome;
    try {
        Budget budget = default_budget();
        if (time_limit_ms) budget.time_limit = std::chrono::milliseconds(*time_limit_ms);
        CheckOptions check{budget, CubeRoute::automatic};

        FiniteAlgebra alg;
        if (!file.empty()) {
            const std::string text = read_file(file);
            digest = fnv1a_hex(text);
            alg = algebra_from_text(text);
        }

        if (validate_cmd->parsed()) {
            outcome = {{{"valid", true},
                        {"size", alg.size},
                        {"operations", alg.operations.size()},
                        {"idempotent", is_idempotent(alg)}},
                       exit_computed,
                       "valid algebra"};
        } else if (decide_cmd->parsed()) {
            if (is_idempotent(alg) && !force_general) {
                outcome = cube_outcome(decide_cube_idempotent(alg));
            } else {
                GeneralOptions options;
                options.cap = cap;
                options.delegate_idempotent = !force_general;
                options.budget = budget;
                outcome = cube_outcome(decide_cube_general(alg, options));
            }
        } else if (blocker_cmd->parsed() || oracle_blockers->parsed()) {
            auto b = blocker_cmd->parsed() ? find_blocker(alg) : exhaustive_blocker_search(alg);
            outcome = {{{"blocker", b ? to_json(*b) : Json(nullptr)}},
                       exit_computed,
                       b ? "blocker C=" + set_text(b->C) + " D=" + set_text(b->D) : "no blocker"};
        } else if (cube_cmd->parsed()) {
            auto r = check_cube_dim_report(alg, dim, check);
            outcome = bool_outcome("result", r.result,
                                   {{"dimension", dim},
                                    {"route", to_string(r.route)},
                                    {"closures", r.closures},
                                    {"largest_closure", r.largest_closure}});
        } else if (edge_cmd->parsed()) {
            outcome = bool_outcome("result", check_edge_dim(alg, dim, budget), {{"dimension", dim}});
        } else if (nu_cmd->parsed()) {
            outcome = bool_outcome("result", check_nu(alg, arity, budget), {{"arity", arity}});
        } else if (decide_nu_cmd->parsed()) {
            auto d = decide_nu(alg, static_cast<std::size_t>(cap.value_or(8)), check);
            outcome = {to_json(d), d.verdict == NuVerdict::undecided ? exit_undecided : exit_computed,
                       to_string(d.verdict)};
            if (d.arity) outcome.summary += " (arity " + std::to_string(*d.arity) + ")";
            if (!d.note.empty()) outcome.summary += "; " + d.note;
        } else if (min_cmd->parsed()) {
            const auto c = static_cast<std::size_t>(cap.value_or(8));
            auto d = minimal_cube_dimension(alg, c, check);
            outcome = {{{"minimal_cube_dimension", d ? Json(*d) : Json(nullptr)}, {"cap", c}},
                       exit_computed,
                       d ? "minimal cube dimension " + std::to_string(*d)
                         : "no cube term of dimension <= " + std::to_string(c)};
        } else if (bounds_cmd->parsed()) {
            outcome.payload = {{"bound_idempotent_N", bound_idempotent_N(alg)},
                               {"bound_quadratic_linear", bound_quadratic_linear(alg)},
                               {"bound_general", bound_general(alg)},
                               {"idempotent_bound_applies", idempotent_bound_applies(alg)},
                               {"idempotent", is_idempotent(alg)}};
            outcome.summary = "N=" + std::to_string(bound_idempotent_N(alg)) +
                              " quadratic-linear=" + std::to_string(bound_quadratic_linear(alg)) +
                              " general=" + std::to_string(bound_general(alg));
        } else if (gen_cmd->parsed()) {
            FiniteAlgebra made;
            if (gen_fixture->parsed())
                made = fixture(fixture_name);
            else if (gen_quasi->parsed())
                made = idempotent_quasigroup(gen_n);
            else
                made = tight_example({gen_n, parse_arities(tight_arities)});
            Json j = to_json(made);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                if (!out) throw std::invalid_argument("cannot write " + out_path);
                out << j.dump(2) << "\n";
            }
            outcome = {j, exit_computed, "algebra of size " + std::to_string(made.size)};
        } else if (oracle_chipped->parsed()) {
            auto spec = exhaustive_chipped_cube_search(alg, dim);
            outcome = {{{"chipped_cube", spec ? to_json(*spec) : Json(nullptr)}},
                       exit_computed,
                       spec ? "compatible chipped cube found" : "no compatible chipped cube"};
        } else if (oracle_clone->parsed()) {
            auto clone = clone_part(alg, arity, budget);
            Json payload{{"arity", arity}, {"table_length", clone.arity()}, {"size", clone.size()}};
            if (arity >= 3) payload["has_nu"] = scan_clone_for(CloneCondition::nu(), clone, alg.size, arity);
            for (std::size_t d = 1; d <= 6; ++d)
                if (arity == (std::size_t{1} << d) - 1)
                    payload["has_cube"] = scan_clone_for(CloneCondition::cube(d), clone, alg.size, arity);
            outcome = {payload, exit_computed, std::to_string(clone.size()) + " term operations"};
        }
    } catch (const InvalidAlgebra &e) {
        Json v = Json::array();
        for (const auto &x : e.violations())
            v.push_back({{"kind", x.kind}, {"location", x.location}, {"message", x.message}});
        outcome = {{{"error", "invalid algebra"}, {"violations", v}}, exit_input_error, "invalid algebra"};
        for (const auto &x : e.violations()) outcome.summary += "\n  " + x.location + ": " + x.message;
    } catch (const BudgetExceeded &e) {
        outcome = {{{"truncated", true}, {"reason", e.what()}}, exit_undecided, std::string("truncated: ") + e.what()};
    } catch (const std::invalid_argument &e) {
        outcome = {{{"error", e.what()}}, exit_input_error, std::string("error: ") + e.what()};
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    if (pretty) {
        std::cout << command << ": " << outcome.summary << "\n";
    } else {
        Json result{{"command", command},
                    {"input_digest", digest},
                    {"payload", outcome.payload},
                    {"elapsed_ms", elapsed.count()}};
        std::cout << result.dump() << "\n";
    }
    return outcome.code;
}
