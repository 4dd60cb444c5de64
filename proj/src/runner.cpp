#include "deltapair/runner.hpp"

#include "deltapair/validation.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

namespace deltapair {
namespace {

using json = nlohmann::ordered_json;

constexpr double kElectronMassMeV = 0.51099895000;
constexpr double kHbarCMeVFm = 197.3269804;
constexpr double kLightSpeedFmPerS = 2.99792458e23;

void append_number(std::string &out, double v) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), end);
}

void append_csv_text(std::string &out, std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos) {
        out += text;
        return;
    }
    out += '"';
    for (const char c : text) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    out += '"';
}

/// Normalized train plus the model; spec errors surface as config errors.
struct Prepared {
    PulseTrain train;
    SpectralModel model;
};

Prepared prepare(const RunConfig &c) {
    PulseTrain train = PulseTrain::normalize(c.train);
    try {
        c.integration.validate(train);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(ConfigError::Kind::range, "/integration", e.what());
    }
    SpectralModel model(train, c.photon, c.alpha);
    return {std::move(train), std::move(model)};
}

double require_u(const RunConfig &c, Command command) {
    if (!c.evaluation.u) {
        throw ConfigError(ConfigError::Kind::schema, "/evaluation/u",
                          std::string("the ") + to_string(command) + " command needs a lightfront fraction");
    }
    return *c.evaluation.u;
}

/// Alternating train of four equal and opposite kicks at equal spacing:
/// the largest configuration with a closed form.
bool is_alternating_four(const PulseTrain &train) {
    const auto &j = train.jumps();
    if (j.size() != 4) {
        return false;
    }
    const double gap = j[1].x - j[0].x;
    const double tol = 1e-12 * (1.0 + std::abs(gap) + std::abs(j[0].x));
    for (std::size_t k = 1; k < 4; ++k) {
        if (std::abs(j[k].x - j[k - 1].x - gap) > tol || j[k].da != -j[k - 1].da) {
            return false;
        }
    }
    return true;
}

json train_json(const PulseTrain &train, const PhotonProbe &probe) {
    json jumps = json::array();
    for (const Jump &j : train.jumps()) {
        jumps.push_back(json{{"x", j.x}, {"da", {j.da.x, j.da.y}}});
    }
    json t{{"input_jumps", train.input_count()},
           {"merged", train.merged_count()},
           {"dropped", train.dropped_count()},
           {"normalized", jumps}};
    if (probe.energy_mev && train.size() >= 2) {
        // x = phi m^2 / n.l with n.l = l^0 + l^3 for a head-on photon.
        const double e = *probe.energy_mev;
        const double lperp_mev = norm(probe.lperp) * kElectronMassMeV;
        if (e > lperp_mev) {
            const double n_dot_l = e + std::sqrt(e * e - lperp_mev * lperp_mev);
            json seps = json::array();
            const auto &j = train.jumps();
            for (std::size_t k = 1; k < j.size(); ++k) {
                const double dphi_per_mev = (j[k].x - j[k - 1].x) * n_dot_l / (kElectronMassMeV * kElectronMassMeV);
                const double dphi_fm = dphi_per_mev * kHbarCMeVFm;
                seps.push_back(json{{"jumps", {k, k + 1}},
                                    {"delta_x", j[k].x - j[k - 1].x},
                                    {"delta_phi_fm", dphi_fm},
                                    {"delta_phi_s", dphi_fm / kLightSpeedFmPerS}});
            }
            t["n_dot_l_mev"] = n_dot_l;
            t["separations"] = seps;
        }
    }
    return t;
}

json base_metadata(Command command, const RunConfig &c, const PulseTrain &train, std::string_view normalization) {
    json m;
    m["engine"] = json{{"name", kEngineName}, {"version", kEngineVersion}};
    m["command"] = to_string(command);
    m["config"] = json::parse(emit_config(c));
    m["normalization"] = normalization;
    m["train"] = train_json(train, c.photon);
    if (train.size() >= 3 && !is_alternating_four(train)) {
        m["model_prediction"] =
            "N-jump master formula beyond the configurations with a closed form; not an established result";
    }
    return m;
}

const char *density_normalization(bool prefactor) {
    return prefactor ? "d3P/(du d2q_perp), q_perp in units of m"
                     : "bare f: d3P/(du d2q_perp) divided by alpha (1-u) / (4 pi^2 u)";
}

std::string breakdown_header(std::size_t n) {
    std::string h;
    for (std::size_t j = 1; j <= n; ++j) {
        h += ",diagonal_" + std::to_string(j);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            h += ",cross_" + std::to_string(i) + "_" + std::to_string(j);
        }
    }
    return h;
}

/// density[, diagonal..., cross...] in the requested normalization.
void append_cells(std::string &out, const DensityResult &r, bool prefactor, bool breakdown) {
    const double scale = prefactor ? r.prefactor : 1.0;
    out += ',';
    append_number(out, prefactor ? r.value : r.f_total);
    if (!breakdown) {
        return;
    }
    for (const double d : r.diagonal) {
        out += ',';
        append_number(out, scale * d);
    }
    for (const CrossTerm &t : r.cross) {
        out += ',';
        append_number(out, scale * t.value);
    }
}

json density_json(const DensityResult &r, bool prefactor, bool breakdown) {
    const double scale = prefactor ? r.prefactor : 1.0;
    json j{{"density", prefactor ? r.value : r.f_total}, {"prefactor", r.prefactor}};
    if (breakdown) {
        json diag = json::array();
        for (const double d : r.diagonal) {
            diag.push_back(scale * d);
        }
        json cross = json::array();
        for (const CrossTerm &t : r.cross) {
            cross.push_back(json{{"i", t.i + 1}, {"j", t.j + 1}, {"phase_difference", t.phase_difference},
                                 {"value", scale * t.value}});
        }
        j["diagonal"] = diag;
        j["cross"] = cross;
    }
    return j;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

} // namespace

const char *to_string(Command command) noexcept {
    switch (command) {
    case Command::density: return "density";
    case Command::grid: return "grid";
    case Command::total: return "total";
    case Command::validate: return "validate";
    }
    return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
    for (const Command c : {Command::density, Command::grid, Command::total, Command::validate}) {
        if (name == to_string(c)) {
            return c;
        }
    }
    return std::nullopt;
}

RunResult run_density(const RunConfig &c) {
    const double u = require_u(c, Command::density);
    if (!c.evaluation.qperp) {
        throw ConfigError(ConfigError::Kind::schema, "/evaluation/qperp", "the density command needs q_perp");
    }
    const Prepared p = prepare(c);
    const Vec2 q = *c.evaluation.qperp;
    const bool breakdown = c.output.breakdown;
    const bool prefactor = c.output.include_prefactor;
    const DensityResult r = p.model.evaluate(SpectrumPoint(u, q), breakdown);

    RunResult out;
    if (c.output.format == OutputFormat::csv) {
        out.body = "u,q1,q2,density" + (breakdown ? breakdown_header(p.train.size()) : std::string()) + "\n";
        append_number(out.body, u);
        out.body += ',';
        append_number(out.body, q.x);
        out.body += ',';
        append_number(out.body, q.y);
        append_cells(out.body, r, prefactor, breakdown);
        out.body += '\n';
    } else {
        json j{{"u", u}, {"qperp", {q.x, q.y}}};
        j.update(density_json(r, prefactor, breakdown));
        out.body = dump(j);
    }
    json m = base_metadata(Command::density, c, p.train, density_normalization(prefactor));
    m["result"] = json{{"density", prefactor ? r.value : r.f_total}};
    out.metadata = dump(m);
    return out;
}

RunResult run_grid(const RunConfig &c, const RunOptions &options) {
    const double u = require_u(c, Command::grid);
    if (!c.evaluation.grid) {
        throw ConfigError(ConfigError::Kind::schema, "/evaluation/grid", "the grid command needs grid ranges");
    }
    const Prepared p = prepare(c);
    const GridConfig &g = *c.evaluation.grid;
    const bool breakdown = c.output.breakdown;
    const bool prefactor = c.output.include_prefactor;
    const GridScan scan = grid_scan(p.model, u, g.q1, g.q2, breakdown, options.threads);

    RunResult out;
    if (c.output.format == OutputFormat::csv) {
        out.body = "q1,q2,density" + (breakdown ? breakdown_header(p.train.size()) : std::string()) + "\n";
        out.body.reserve(out.body.size() + scan.cells.size() * (breakdown ? 96 : 48));
        for (std::size_t i = 0; i < g.q1.n; ++i) {
            for (std::size_t j = 0; j < g.q2.n; ++j) {
                append_number(out.body, g.q1.at(i));
                out.body += ',';
                append_number(out.body, g.q2.at(j));
                append_cells(out.body, scan.at(i, j), prefactor, breakdown);
                out.body += '\n';
            }
        }
    } else {
        json q1 = json::array();
        json q2 = json::array();
        for (std::size_t i = 0; i < g.q1.n; ++i) {
            q1.push_back(g.q1.at(i));
        }
        for (std::size_t j = 0; j < g.q2.n; ++j) {
            q2.push_back(g.q2.at(j));
        }
        json cells = json::array();
        for (std::size_t i = 0; i < g.q1.n; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < g.q2.n; ++j) {
                row.push_back(density_json(scan.at(i, j), prefactor, breakdown));
            }
            cells.push_back(row);
        }
        out.body = dump(json{{"u", u}, {"q1", q1}, {"q2", q2}, {"cells", cells}});
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < scan.cells.size(); ++k) {
        if (scan.cells[k].value > scan.cells[best].value) {
            best = k;
        }
    }
    json m = base_metadata(Command::grid, c, p.train, density_normalization(prefactor));
    m["columns"] = "q1,q2,density" + (breakdown ? breakdown_header(p.train.size()) : std::string());
    m["layout"] = "rows ordered by q1 index, then q2 index; axes include both endpoints";
    m["result"] = json{{"cells", scan.cells.size()},
                       {"argmax", {g.q1.at(best / g.q2.n), g.q2.at(best % g.q2.n)}},
                       {"max_density", prefactor ? scan.cells[best].value : scan.cells[best].f_total}};
    out.metadata = dump(m);
    return out;
}

RunResult run_total(const RunConfig &c) {
    const auto &e = c.evaluation;
    if (e.u && e.qperp) {
        throw ConfigError(ConfigError::Kind::schema, "/evaluation",
                          "the total command integrates over u or q_perp; give at most one of them");
    }
    const Prepared p = prepare(c);
    IntegralEstimate est;
    std::string quantity;
    std::string normalization;
    if (e.u) {
        est = c.integration.transverse == TransverseMethod::analytic
                  ? integrate_qperp_plane(p.model, *e.u, c.integration)
                  : integrate_qperp(p.model, *e.u, c.integration);
        quantity = "dP/du";
        normalization = "dP/du at fixed u, integrated over the transverse plane";
    } else if (e.qperp) {
        est = integrate_u(p.model, *e.qperp, c.integration);
        quantity = "dP/d2q";
        normalization = "dP/d2q_perp at fixed q_perp, integrated over 0 < u < 1; q_perp in units of m";
    } else {
        est = total_probability(p.model, c.integration);
        quantity = "P";
        normalization = "total pair creation probability";
    }

    RunResult out;
    if (c.output.format == OutputFormat::csv) {
        out.body = "quantity,value,error,tail_bound,evaluations,converged\n" + quantity + ",";
        append_number(out.body, est.value);
        out.body += ',';
        append_number(out.body, est.error);
        out.body += ',';
        append_number(out.body, est.tail_bound);
        out.body += "," + std::to_string(est.evaluations) + (est.converged ? ",true\n" : ",false\n");
    } else {
        out.body = dump(json{{"quantity", quantity},
                             {"value", est.value},
                             {"error", est.error},
                             {"tail_bound", est.tail_bound},
                             {"evaluations", est.evaluations},
                             {"converged", est.converged}});
    }
    json m = base_metadata(Command::total, c, p.train, normalization);
    m["prefactor_note"] = "integrated quantities always include alpha; include_prefactor applies to densities";
    m["result"] = json{{"quantity", quantity}, {"value", est.value}, {"error", est.error},
                       {"converged", est.converged}};
    out.metadata = dump(m);
    out.ok = est.converged;
    if (!out.ok) {
        out.report = json{{"status", "not_converged"},
                          {"command", "total"},
                          {"quantity", quantity},
                          {"value", est.value},
                          {"error", est.error},
                          {"evaluations", est.evaluations},
                          {"max_evals", c.integration.max_evals}}
                         .dump();
    }
    return out;
}

RunResult run_validate(const RunConfig &c) {
    const PulseTrain train = PulseTrain::normalize(c.train);
    const auto checks = run_validation_suite(
        {c.validation.samples, c.validation.seed, c.validation.quadrature_configs});

    RunResult out;
    json failed = json::array();
    for (const auto &r : checks) {
        if (!r.passed) {
            failed.push_back(r.name);
        }
    }
    if (c.output.format == OutputFormat::csv) {
        out.body = "check,passed,metric,tolerance,samples,seconds,detail\n";
        for (const auto &r : checks) {
            append_csv_text(out.body, r.name);
            out.body += r.passed ? ",true," : ",false,";
            append_number(out.body, r.metric);
            out.body += ',';
            append_number(out.body, r.tolerance);
            out.body += "," + std::to_string(r.samples) + ",";
            append_number(out.body, r.seconds);
            out.body += ',';
            append_csv_text(out.body, r.detail);
            out.body += '\n';
        }
    } else {
        json arr = json::array();
        for (const auto &r : checks) {
            arr.push_back(json{{"check", r.name},
                               {"passed", r.passed},
                               {"metric", r.metric},
                               {"tolerance", r.tolerance},
                               {"samples", r.samples},
                               {"seconds", r.seconds},
                               {"detail", r.detail}});
        }
        out.body = dump(arr);
    }
    json m = base_metadata(Command::validate, c, train, "check metrics in each check's own error measure");
    m["result"] = json{{"checks", checks.size()}, {"failed", failed}};
    out.metadata = dump(m);
    out.ok = failed.empty();
    if (!out.ok) {
        out.report = json{{"status", "checks_failed"}, {"command", "validate"}, {"failed", failed}}.dump();
    }
    return out;
}

RunResult run(Command command, const RunConfig &config, const RunOptions &options) {
    switch (command) {
    case Command::density: return run_density(config);
    case Command::grid: return run_grid(config, options);
    case Command::total: return run_total(config);
    case Command::validate: return run_validate(config);
    }
    throw std::logic_error("unknown command");
}

void write_atomic(const std::filesystem::path &path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.close();
        if (!f) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

std::filesystem::path sidecar_path(const std::filesystem::path &path) {
    std::filesystem::path p = path;
    p += ".meta.json";
    return p;
}

int emit(const RunResult &result, const RunConfig &config, std::ostream &out, std::ostream &err) {
    if (config.output.path) {
        const std::filesystem::path path(*config.output.path);
        write_atomic(path, result.body);
        write_atomic(sidecar_path(path), result.metadata);
    } else {
        out << result.body;
        out.flush();
        if (!out) {
            throw IoError("writing to standard output failed");
        }
    }
    if (!result.ok) {
        err << result.report << '\n';
        return exit_status::failed;
    }
    return exit_status::ok;
}

} // namespace deltapair
