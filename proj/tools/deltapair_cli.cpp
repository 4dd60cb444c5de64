// deltapair: densities, grid scans, integrated probabilities and the
// validation suite from a JSON run configuration.

#include "deltapair/config.hpp"
#include "deltapair/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace deltapair;

namespace {

struct Flags {
    std::string config;
    std::string out;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
    bool bare = false;
};

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream s;
    s << f.rdbuf();
    if (!f && !f.eof()) {
        throw IoError("cannot read " + path);
    }
    return s.str();
}

int execute(Command command, const Flags &flags) {
    try {
        RunConfig config = parse_config(flags.config.empty() ? std::string("{}") : read_file(flags.config));
        if (!flags.out.empty()) {
            config.output.path = flags.out;
        }
        if (flags.bare) {
            config.output.include_prefactor = false;
        }
        if (flags.seed) {
            config.validation.seed = *flags.seed;
        }
        const RunResult result = run(command, config, RunOptions{flags.threads});
        return emit(result, config, std::cout, std::cerr);
    } catch (const ConfigError &e) {
        std::cerr << nlohmann::json{{"status", "config_error"},
                                    {"kind", to_string(e.kind())},
                                    {"pointer", e.pointer()},
                                    {"message", e.what()}}
                         .dump()
                  << '\n';
        return exit_status::config;
    } catch (const IoError &e) {
        std::cerr << nlohmann::json{{"status", "io_error"}, {"message", e.what()}}.dump() << '\n';
        return exit_status::io;
    } catch (const std::exception &e) {
        std::cerr << nlohmann::json{{"status", "error"}, {"message", e.what()}}.dump() << '\n';
        return exit_status::failed;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Positron spectra and pair creation probabilities for photons colliding with delta-pulse trains"};
    app.require_subcommand(1);

    Flags flags;
    std::optional<Command> chosen;
    const std::pair<Command, const char *> commands[] = {
        {Command::density, "Density d3P/(du d2q) at one point"},
        {Command::grid, "Density on a q1 x q2 grid at fixed u"},
        {Command::total, "Total probability, or dP/du / dP/d2q when u / qperp is given"},
        {Command::validate, "Run the identity and structure checks"},
    };
    for (const auto &[command, help] : commands) {
        CLI::App *sub = app.add_subcommand(to_string(command), help);
        sub->add_option("--config", flags.config, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", flags.out, "Output path; a <path>.meta.json sidecar is written next to it");
        sub->add_option("--threads", flags.threads, "Worker threads for grid scans")->check(CLI::Range(1u, 1024u));
        sub->add_option("--seed", flags.seed, "Seed for randomized validation sampling");
        sub->add_flag("--bare", flags.bare, "Omit the alpha (1-u)/(4 pi^2 u) prefactor from densities");
        sub->callback([&chosen, command] { chosen = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_status::ok : exit_status::config;
    }
    return execute(*chosen, flags);
}
