#include "sas/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "sas/error.hpp"
#include "sas/fixtures.hpp"
#include "sas/report.hpp"
#include "sas/scenario.hpp"

namespace sas {

namespace {

namespace fs = std::filesystem;

bool is_validation_error(ErrorCode code) {
    switch (code) {
    case ErrorCode::SchemaError:
    case ErrorCode::DanglingReference:
    case ErrorCode::DuplicateId:
    case ErrorCode::InvalidBand:
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidItem:
    case ErrorCode::MixedClasses:
    case ErrorCode::UnknownFixture: return true;
    default: return false;
    }
}

// A path that exists wins; otherwise the argument names a built-in fixture.
ScenarioFile load_source(const std::string& source, const std::string& variant) {
    if (fs::exists(source)) {
        if (!variant.empty()) throw Error(ErrorCode::InvalidConfig, "--variant applies to built-in fixtures only");
        return load_scenario(source);
    }
    const auto& catalog = fixture_catalog();
    const bool known = std::any_of(catalog.begin(), catalog.end(), [&](const FixtureInfo& f) { return f.name == source; });
    if (!known) throw Error(ErrorCode::SchemaError, "no such file or fixture '" + source + "'");
    return make_fixture(source, variant);
}

std::uint64_t parse_seed(const std::string& text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw Error(ErrorCode::InvalidConfig, "SAS_SIM_SEED is not an unsigned integer: '" + text + "'");
    return v;
}

void print_table(const Snapshot& snapshot, std::ostream& out) {
    std::vector<StateRow> rows;
    std::vector<SystemRow> system;
    append_rows(snapshot, 0, rows, system);
    std::size_t width = 8;
    for (const auto& r : rows) width = std::max(width, r.agent_id.size());
    auto cell = [&out](std::string_view s, std::size_t w) { out << std::left << std::setw(static_cast<int>(w)) << s << "  "; };
    cell("agent", width);
    cell("class", 11);
    cell("required", 8);
    cell("available", 9);
    cell("individual", 11);
    cell("system", 11);
    out << "cross\n";
    for (const auto& r : rows) {
        cell(r.agent_id, width);
        cell(to_string(r.cls), 11);
        cell(std::to_string(r.required), 8);
        cell(std::to_string(r.available), 9);
        cell(to_string(r.individual), 11);
        cell(to_string(r.system), 11);
        out << to_string(r.cross) << '\n';
    }
    for (const auto& s : system) {
        cell("(system)", width);
        cell(to_string(s.cls), 11);
        cell(std::to_string(s.required), 8);
        cell(std::to_string(s.available), 9);
        cell("-", 11);
        cell(to_string(s.state), 11);
        out << "-\n";
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    f << content;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scarcity, abundance and sufficiency simulator", "sas_sim"};
    app.require_subcommand(1);

    std::string source;
    std::string variant;
    std::string mode_name;

    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("scenario", source, "scenario file or fixture name")->required();
    validate->add_option("--variant", variant, "fixture variant");

    auto* classify = app.add_subcommand("classify", "classify the initial state without running");
    classify->add_option("scenario", source, "scenario file or fixture name")->required();
    classify->add_option("--variant", variant, "fixture variant");
    classify->add_option("--mode", mode_name, "raw or coverage");

    std::optional<std::uint64_t> ticks;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "run a scenario");
    run_cmd->add_option("scenario", source, "scenario file or fixture name")->required();
    run_cmd->add_option("--variant", variant, "fixture variant");
    run_cmd->add_option("--ticks", ticks, "number of ticks");
    run_cmd->add_option("--seed", seed, "random seed");
    run_cmd->add_option("--mode", mode_name, "raw or coverage");
    run_cmd->add_option("--out", out_dir, "directory for report.json and states.csv");

    auto* fixtures = app.add_subcommand("fixtures", "built-in scenarios");
    fixtures->require_subcommand(1);
    fixtures->add_subcommand("list", "list fixtures and variants");
    auto* emit = fixtures->add_subcommand("emit", "print a fixture as a scenario file");
    emit->add_option("name", source, "fixture name")->required();
    emit->add_option("--variant", variant, "fixture variant");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        std::optional<Mode> mode;
        if (!mode_name.empty()) {
            mode = parse_mode(mode_name);
            if (!mode) throw Error(ErrorCode::InvalidConfig, "unknown mode '" + mode_name + "'");
        }

        if (*validate) {
            const auto s = load_source(source, variant);
            out << "ok: " << (s.metadata.name.empty() ? source : s.metadata.name) << " (" << s.population.agents.size()
                << " agents, " << s.population.rules.size() << " rules)\n";
            return 0;
        }
        if (*classify) {
            const auto s = load_source(source, variant);
            print_table(snapshot_states(s.population, mode.value_or(s.sim.mode), s.sim.context), out);
            return 0;
        }
        if (*run_cmd) {
            auto s = load_source(source, variant);
            if (const char* env = std::getenv("SAS_SIM_SEED"); env && !seed) s.sim.seed = parse_seed(env);
            if (seed) s.sim.seed = *seed;
            if (ticks) s.sim.ticks = *ticks;
            if (mode) s.sim.mode = *mode;
            const auto report = run(s.population, s.sim, s.metadata.name.empty() ? source : s.metadata.name);
            const auto json = report_json(report, s.report.include_events);
            if (out_dir.empty()) {
                out << json;
            } else {
                fs::create_directories(out_dir);
                write_file(fs::path(out_dir) / "report.json", json);
                write_file(fs::path(out_dir) / "states.csv", states_csv(report));
                out << "ran " << report.ticks_run << " tick(s): " << report.successes << " E+, " << report.failures
                    << " E-, conservation " << (report.conservation_ok() ? "ok" : "VIOLATED") << '\n';
            }
            return report.conservation_ok() ? 0 : 2;
        }
        if (fixtures->got_subcommand("list")) {
            for (const auto& f : fixture_catalog()) {
                out << f.name;
                if (!f.variants.empty()) {
                    out << " [";
                    for (std::size_t i = 0; i < f.variants.size(); ++i) out << (i ? "|" : "") << f.variants[i];
                    out << ']';
                }
                out << "  " << f.description << '\n';
            }
            return 0;
        }
        out << emit_scenario(make_fixture(source, variant));
        return 0;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return is_validation_error(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace sas
