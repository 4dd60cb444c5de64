#include "deltapair/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace deltapair {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
using Kind = ConfigError::Kind;

std::string child(const std::string &pointer, std::string_view key) {
    std::string out = pointer + "/";
    for (const char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

std::string child(const std::string &pointer, std::size_t index) {
    return pointer + "/" + std::to_string(index);
}

[[noreturn]] void fail(Kind kind, const std::string &pointer, const std::string &message) {
    throw ConfigError(kind, pointer, message);
}

const json &require_object(const json &j, const std::string &pointer,
                           std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
        fail(Kind::schema, pointer, "expected an object");
    }
    for (const auto &[key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(Kind::schema, child(pointer, key), "unknown key '" + key + "'");
        }
    }
    return j;
}

double real(const json &j, const std::string &pointer) {
    if (!j.is_number()) {
        fail(Kind::schema, pointer, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(Kind::range, pointer, "must be finite");
    }
    return v;
}

std::uint64_t count(const json &j, const std::string &pointer) {
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer()) {
        fail(Kind::range, pointer, "must not be negative");
    }
    fail(Kind::schema, pointer, "expected a non-negative integer");
}

bool boolean(const json &j, const std::string &pointer) {
    if (!j.is_boolean()) {
        fail(Kind::schema, pointer, "expected true or false");
    }
    return j.get<bool>();
}

std::string text(const json &j, const std::string &pointer) {
    if (!j.is_string()) {
        fail(Kind::schema, pointer, "expected a string");
    }
    return j.get<std::string>();
}

Vec2 pair(const json &j, const std::string &pointer) {
    if (!j.is_array() || j.size() != 2) {
        fail(Kind::schema, pointer, "expected an array of two numbers");
    }
    return {real(j[0], child(pointer, 0)), real(j[1], child(pointer, 1))};
}

void require(bool ok, const std::string &pointer, const std::string &message) {
    if (!ok) {
        fail(Kind::range, pointer, message);
    }
}

GridAxis axis(const json &j, const std::string &pointer) {
    require_object(j, pointer, {"min", "max", "n"});
    for (const char *key : {"min", "max", "n"}) {
        if (!j.contains(key)) {
            fail(Kind::schema, child(pointer, key), std::string("missing required key '") + key + "'");
        }
    }
    GridAxis a;
    a.min = real(j["min"], child(pointer, "min"));
    a.max = real(j["max"], child(pointer, "max"));
    const std::uint64_t n = count(j["n"], child(pointer, "n"));
    require(n >= 1 && n <= 100'000, child(pointer, "n"), "must lie in [1, 100000]");
    require(a.min <= a.max, child(pointer, "max"), "must not be below min");
    a.n = static_cast<std::size_t>(n);
    return a;
}

EvaluationConfig evaluation(const json &j, const std::string &pointer) {
    require_object(j, pointer, {"u", "qperp", "grid"});
    EvaluationConfig e;
    if (j.contains("u")) {
        const std::string p = child(pointer, "u");
        e.u = real(j["u"], p);
        require(*e.u > 0.0 && *e.u < 1.0, p, "lightfront fraction must satisfy 0 < u < 1");
    }
    if (j.contains("qperp")) {
        e.qperp = pair(j["qperp"], child(pointer, "qperp"));
    }
    if (j.contains("grid")) {
        const std::string p = child(pointer, "grid");
        require_object(j["grid"], p, {"q1", "q2"});
        for (const char *key : {"q1", "q2"}) {
            if (!j["grid"].contains(key)) {
                fail(Kind::schema, child(p, key), std::string("missing required key '") + key + "'");
            }
        }
        e.grid = GridConfig{axis(j["grid"]["q1"], child(p, "q1")), axis(j["grid"]["q2"], child(p, "q2"))};
    }
    return e;
}

IntegrationSpec integration(const json &j, const std::string &pointer) {
    require_object(j, pointer, {"rel_tol", "q_max", "u_margin", "max_evals", "transverse"});
    IntegrationSpec s;
    if (j.contains("rel_tol")) {
        const std::string p = child(pointer, "rel_tol");
        s.rel_tol = real(j["rel_tol"], p);
        require(s.rel_tol > 0.0 && s.rel_tol < 1.0, p, "must satisfy 0 < rel_tol < 1");
    }
    if (j.contains("q_max")) {
        const std::string p = child(pointer, "q_max");
        s.q_max = real(j["q_max"], p);
        require(*s.q_max > 0.0, p, "must be positive");
    }
    if (j.contains("u_margin")) {
        const std::string p = child(pointer, "u_margin");
        s.u_margin = real(j["u_margin"], p);
        require(s.u_margin > 0.0 && s.u_margin < 0.25, p, "must satisfy 0 < u_margin < 0.25");
    }
    if (j.contains("max_evals")) {
        const std::string p = child(pointer, "max_evals");
        const std::uint64_t n = count(j["max_evals"], p);
        require(n > 0, p, "must be positive");
        s.max_evals = static_cast<std::size_t>(n);
    }
    if (j.contains("transverse")) {
        const std::string p = child(pointer, "transverse");
        const std::string t = text(j["transverse"], p);
        if (t == "analytic") {
            s.transverse = TransverseMethod::analytic;
        } else if (t == "cutoff") {
            s.transverse = TransverseMethod::cutoff;
        } else {
            fail(Kind::range, p, "expected \"analytic\" or \"cutoff\"");
        }
    }
    return s;
}

OutputConfig output(const json &j, const std::string &pointer) {
    require_object(j, pointer, {"format", "path", "include_prefactor", "breakdown"});
    OutputConfig o;
    if (j.contains("format")) {
        const std::string p = child(pointer, "format");
        const std::string f = text(j["format"], p);
        if (f == "csv") {
            o.format = OutputFormat::csv;
        } else if (f == "json") {
            o.format = OutputFormat::json;
        } else {
            fail(Kind::range, p, "expected \"csv\" or \"json\"");
        }
    }
    if (j.contains("path")) {
        const std::string p = child(pointer, "path");
        o.path = text(j["path"], p);
        require(!o.path->empty(), p, "must not be empty");
    }
    if (j.contains("include_prefactor")) {
        o.include_prefactor = boolean(j["include_prefactor"], child(pointer, "include_prefactor"));
    }
    if (j.contains("breakdown")) {
        o.breakdown = boolean(j["breakdown"], child(pointer, "breakdown"));
    }
    return o;
}

ValidationConfig validation(const json &j, const std::string &pointer) {
    require_object(j, pointer, {"samples", "seed", "quadrature_configs"});
    ValidationConfig v;
    if (j.contains("samples")) {
        const std::string p = child(pointer, "samples");
        const std::uint64_t n = count(j["samples"], p);
        require(n >= 1, p, "must be positive");
        v.samples = static_cast<std::size_t>(n);
    }
    if (j.contains("seed")) {
        v.seed = count(j["seed"], child(pointer, "seed"));
    }
    if (j.contains("quadrature_configs")) {
        v.quadrature_configs = static_cast<std::size_t>(count(j["quadrature_configs"], child(pointer, "quadrature_configs")));
    }
    return v;
}

ordered_json pair_json(Vec2 v) { return ordered_json::array({v.x, v.y}); }

ordered_json axis_json(const GridAxis &a) {
    return ordered_json{{"min", a.min}, {"max", a.max}, {"n", a.n}};
}

} // namespace

ConfigError::ConfigError(Kind kind, std::string pointer, const std::string &message)
    : std::runtime_error(message), kind_(kind), pointer_(std::move(pointer)) {}

const char *to_string(ConfigError::Kind kind) noexcept {
    switch (kind) {
    case Kind::syntax: return "syntax";
    case Kind::schema: return "schema";
    case Kind::range: return "range";
    }
    return "unknown";
}

RunConfig parse_config(std::string_view document) {
    json root;
    try {
        root = json::parse(document.begin(), document.end());
    } catch (const json::parse_error &e) {
        fail(Kind::syntax, "", e.what());
    }

    require_object(root, "", {"alpha", "photon", "train", "evaluation", "integration", "output", "validation"});
    RunConfig c;
    if (root.contains("alpha")) {
        c.alpha = real(root["alpha"], "/alpha");
        require(c.alpha > 0.0, "/alpha", "must be positive");
    }
    if (root.contains("photon")) {
        const json &p = require_object(root["photon"], "/photon", {"lperp", "energy_mev"});
        if (p.contains("lperp")) {
            c.photon.lperp = pair(p["lperp"], "/photon/lperp");
        }
        if (p.contains("energy_mev")) {
            c.photon.energy_mev = real(p["energy_mev"], "/photon/energy_mev");
            require(*c.photon.energy_mev > 0.0, "/photon/energy_mev", "must be positive");
        }
    }
    if (root.contains("train")) {
        const json &t = root["train"];
        if (!t.is_array()) {
            fail(Kind::schema, "/train", "expected an array of jumps");
        }
        for (std::size_t k = 0; k < t.size(); ++k) {
            const std::string p = child("/train", k);
            require_object(t[k], p, {"x", "da"});
            for (const char *key : {"x", "da"}) {
                if (!t[k].contains(key)) {
                    fail(Kind::schema, child(p, key), std::string("missing required key '") + key + "'");
                }
            }
            c.train.push_back({real(t[k]["x"], child(p, "x")), pair(t[k]["da"], child(p, "da"))});
        }
    }
    if (root.contains("evaluation")) {
        c.evaluation = evaluation(root["evaluation"], "/evaluation");
    }
    if (root.contains("integration")) {
        c.integration = integration(root["integration"], "/integration");
    }
    if (root.contains("output")) {
        c.output = output(root["output"], "/output");
    }
    if (root.contains("validation")) {
        c.validation = validation(root["validation"], "/validation");
    }

    // Cross-field range: the cutoff must enclose every classical peak.
    if (c.integration.q_max) {
        const PulseTrain train = PulseTrain::normalize(c.train);
        require(*c.integration.q_max > train.max_potential(), "/integration/q_max",
                "must exceed the largest |a_k| of the train");
    }
    return c;
}

std::string emit_config(const RunConfig &c) {
    ordered_json root;
    root["alpha"] = c.alpha;

    ordered_json photon{{"lperp", pair_json(c.photon.lperp)}};
    if (c.photon.energy_mev) {
        photon["energy_mev"] = *c.photon.energy_mev;
    }
    root["photon"] = photon;

    ordered_json train = ordered_json::array();
    for (const Jump &j : c.train) {
        train.push_back(ordered_json{{"x", j.x}, {"da", pair_json(j.da)}});
    }
    root["train"] = train;

    ordered_json eval = ordered_json::object();
    if (c.evaluation.u) {
        eval["u"] = *c.evaluation.u;
    }
    if (c.evaluation.qperp) {
        eval["qperp"] = pair_json(*c.evaluation.qperp);
    }
    if (c.evaluation.grid) {
        eval["grid"] = ordered_json{{"q1", axis_json(c.evaluation.grid->q1)}, {"q2", axis_json(c.evaluation.grid->q2)}};
    }
    root["evaluation"] = eval;

    ordered_json integ{{"rel_tol", c.integration.rel_tol}};
    if (c.integration.q_max) {
        integ["q_max"] = *c.integration.q_max;
    }
    integ["u_margin"] = c.integration.u_margin;
    integ["max_evals"] = c.integration.max_evals;
    integ["transverse"] = c.integration.transverse == TransverseMethod::analytic ? "analytic" : "cutoff";
    root["integration"] = integ;

    ordered_json out{{"format", c.output.format == OutputFormat::csv ? "csv" : "json"}};
    if (c.output.path) {
        out["path"] = *c.output.path;
    }
    out["include_prefactor"] = c.output.include_prefactor;
    out["breakdown"] = c.output.breakdown;
    root["output"] = out;

    root["validation"] = ordered_json{{"samples", c.validation.samples},
                                      {"seed", c.validation.seed},
                                      {"quadrature_configs", c.validation.quadrature_configs}};
    return root.dump(2);
}

} // namespace deltapair
