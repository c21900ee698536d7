#include "gave/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>
#include <variant>

#include "gave/mmio.hpp"

namespace gave {

std::string_view to_string(Command c) {
    switch (c) {
        case Command::check: return "check";
        case Command::solve: return "solve";
        case Command::compare: return "compare";
        case Command::fuzz: return "fuzz";
    }
    return "check";
}

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::check, Command::solve, Command::compare, Command::fuzz})
        if (to_string(c) == name) return c;
    return std::nullopt;
}

void RunConfig::validate() const {
    const auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };
    if (!(tol > 0.0)) bad("tol must be positive");
    if (n_cap_vertex < 1 || n_cap_minor < 1) bad("caps must be at least 1");
    if (max_iter < 1) bad("max_iter must be at least 1");
    if (command == Command::check || command == Command::solve) {
        if (a_path.empty()) bad("--A is required");
        if (!ave && b_path.empty()) bad("--B is required unless --ave is given");
        if (command == Command::solve && rhs_path.empty()) bad("--b is required for solve");
    }
    if (command == Command::compare) {
        if (!parse_condition(hold)) bad("unknown condition '" + hold + "'");
        if (!parse_condition(fail)) bad("unknown condition '" + fail + "'");
        if (budget < 1) bad("budget must be at least 1");
    }
    if (command == Command::compare || command == Command::fuzz) {
        if (n < 1) bad("n must be at least 1");
        if (target && !(*target > 0.0)) bad("target must be positive");
    }
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(std::string& out, const Json& j, int level) {
    const std::string pad(static_cast<std::size_t>(2 * (level + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * level), ' ');
    switch (j.type()) {
        case Json::value_t::number_float: out += format_double(j.get<double>()); return;
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += pad;
                write(out, e, level + 1);
            }
            out += flat ? "]" : "\n" + close_pad + "]";
            return;
        }
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(k).dump() + ": ";
                write(out, v, level + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        default: out += j.dump(); return;
    }
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push_back(number_or_null(v[i]));
    return a;
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (double x : m.row(i)) r.push_back(x);
        rows.push_back(std::move(r));
    }
    return rows;
}

Json signs_json(const SignVector& s) {
    Json a = Json::array();
    for (int e : s.entries()) a.push_back(e);
    return a;
}

Json witness_json(const Witness& w) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, VertexWitness>) {
                Json j;
                j["type"] = "sign_vector";
                j["entries"] = signs_json(x.vertex);
                j["failure"] = x.kind == VertexFailure::zero ? "zero_determinant" : "sign_flip";
                // 1-based, like every index in the reports
                if (x.flip_coordinate) j["flip_coordinate"] = *x.flip_coordinate + 1;
                return j;
            } else if constexpr (std::is_same_v<T, IndexSet>) {
                Json j;
                j["type"] = "index_set";
                Json idx = Json::array();
                for (std::size_t i : x.indices) idx.push_back(i + 1);
                j["indices"] = std::move(idx);
                return j;
            } else {
                Json j;
                j["type"] = "box_diagonal";
                Json e = Json::array();
                for (double d : x.entries) e.push_back(d);
                j["entries"] = std::move(e);
                return j;
            }
        },
        w);
}

Json tolerances_json(double margin, const SolveOptions& sopt) {
    Json t;
    t["strict_margin"] = margin;
    t["rank_tolerance"] = "n*eps*max|entry|";
    t["sign_tol"] = sopt.sign_tol;
    t["dedup_radius"] = sopt.dedup;
    t["power_iteration_rtol"] = 1e-12;
    return t;
}

Json query_json(const SeparationQuery& q) {
    Json j;
    j["must_hold"] = std::string(to_string(q.must_hold));
    j["must_fail"] = std::string(to_string(q.must_fail));
    j["budget"] = q.budget;
    j["seed"] = q.seed;
    return j;
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    write(out, j, 0);
    out += '\n';
    return out;
}

std::string error_json(std::string_view kind, std::string_view detail) {
    Json j;
    j["error"] = std::string(kind);
    j["detail"] = std::string(detail);
    return dump_json(j);
}

Json to_json(const Certificate& c) {
    Json j;
    j["condition_id"] = std::string(to_string(c.id));
    j["verdict"] = std::string(to_string(c.verdict));
    Json ev = Json::object();
    for (const auto& [k, v] : c.evidence) ev[k] = number_or_null(v);
    j["evidence"] = std::move(ev);
    j["witness"] = witness_json(c.witness);
    j["cost"] = {{"determinants", c.cost.determinants}, {"minors", c.cost.minors}, {"samples", c.cost.samples}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

Json to_json(const HierarchyReport& r) {
    Json j;
    j["final_verdict"] = std::string(to_string(r.final_verdict));
    j["decided_by"] = r.decided_by ? Json(std::string(to_string(*r.decided_by))) : Json(nullptr);
    Json certs = Json::array();
    for (const Certificate& c : r.certificates) certs.push_back(to_json(c));
    j["certificates"] = std::move(certs);
    return j;
}

Json to_json(const SolveReport& r) {
    Json j;
    j["method"] = std::string(to_string(r.method));
    j["verdict"] = std::string(to_string(r.verdict));
    Json sols = Json::array();
    for (const Solution& s : r.solutions) {
        Json e;
        e["x"] = vector_json(s.x);
        e["pattern"] = signs_json(s.pattern);
        e["residual"] = s.residual;
        sols.push_back(std::move(e));
    }
    j["solutions"] = std::move(sols);
    j["iterations"] = r.iterations;
    if (r.method == Method::ENUMERATE) {
        j["branches"] = r.branches;
        j["singular_branches"] = r.singular_branches;
    } else {
        j["contraction"] = r.contraction ? number_or_null(*r.contraction) : Json(nullptr);
        j["residual_bound"] = r.residual_bound ? number_or_null(*r.residual_bound) : Json(nullptr);
        Json steps = Json::array();
        for (double s : r.step_norms) steps.push_back(s);
        j["step_norms"] = std::move(steps);
    }
    j["context_pattern"] = r.context_pattern ? signs_json(*r.context_pattern) : Json(nullptr);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

// ---------------------------------------------------------------------------
// Config echo

Json config_to_json(const RunConfig& cfg) {
    Json j;
    j["command"] = std::string(to_string(cfg.command));
    switch (cfg.command) {
        case Command::check:
        case Command::solve:
            j["A"] = cfg.a_path;
            j["B"] = cfg.ave ? Json(nullptr) : Json(cfg.b_path);
            j["b"] = cfg.rhs_path.empty() ? Json(nullptr) : Json(cfg.rhs_path);
            j["ave"] = cfg.ave;
            j["tol"] = cfg.tol;
            j["n_cap_vertex"] = cfg.n_cap_vertex;
            j["n_cap_minor"] = cfg.n_cap_minor;
            if (cfg.command == Command::check) {
                j["samples"] = cfg.samples;
                j["seed"] = cfg.seed;
            } else {
                j["method"] = std::string(to_string(cfg.method));
                j["max_iter"] = cfg.max_iter;
            }
            break;
        case Command::compare:
        case Command::fuzz:
            j["ensemble"] = std::string(to_string(cfg.ensemble));
            j["n"] = cfg.n;
            j["target"] = cfg.target ? Json(*cfg.target) : Json(nullptr);
            j["seed"] = cfg.seed;
            j["tol"] = cfg.tol;
            j["n_cap_vertex"] = cfg.n_cap_vertex;
            j["n_cap_minor"] = cfg.n_cap_minor;
            j["samples"] = cfg.samples;
            if (cfg.command == Command::compare) {
                j["hold"] = cfg.hold;
                j["fail"] = cfg.fail;
                j["budget"] = cfg.budget;
            } else {
                j["instances"] = cfg.instances;
                j["rhs_per_instance"] = cfg.rhs_per_instance;
            }
            break;
    }
    return j;
}

RunConfig config_from_json(const Json& j) {
    const Json& c = j.contains("config") ? j.at("config") : j;
    RunConfig cfg;
    try {
        const auto cmd = parse_command(c.at("command").get<std::string>());
        if (!cmd) throw Error(ErrorKind::InvalidArgument, "unknown command in config");
        cfg.command = *cmd;
        const auto str = [&](const char* key, std::string& out) {
            if (c.contains(key) && c.at(key).is_string()) out = c.at(key).get<std::string>();
        };
        const auto num = [&](const char* key, auto& out) {
            if (c.contains(key) && c.at(key).is_number()) out = c.at(key).get<std::remove_reference_t<decltype(out)>>();
        };
        str("A", cfg.a_path);
        str("B", cfg.b_path);
        str("b", cfg.rhs_path);
        if (c.contains("ave")) cfg.ave = c.at("ave").get<bool>();
        num("tol", cfg.tol);
        num("n_cap_vertex", cfg.n_cap_vertex);
        num("n_cap_minor", cfg.n_cap_minor);
        num("samples", cfg.samples);
        num("seed", cfg.seed);
        num("max_iter", cfg.max_iter);
        num("n", cfg.n);
        num("budget", cfg.budget);
        num("instances", cfg.instances);
        num("rhs_per_instance", cfg.rhs_per_instance);
        str("hold", cfg.hold);
        str("fail", cfg.fail);
        if (c.contains("method")) {
            const auto m = parse_method(c.at("method").get<std::string>());
            if (!m) throw Error(ErrorKind::InvalidArgument, "unknown method in config");
            cfg.method = *m;
        }
        if (c.contains("ensemble")) {
            const auto e = parse_ensemble(c.at("ensemble").get<std::string>());
            if (!e) throw Error(ErrorKind::InvalidArgument, "unknown ensemble in config");
            cfg.ensemble = *e;
        }
        if (c.contains("target") && c.at("target").is_number()) cfg.target = c.at("target").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed config: ") + e.what());
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

GaveInstance load_instance(const RunConfig& cfg) {
    Matrix a = load_matrix_market(cfg.a_path);
    std::optional<Vector> rhs;
    if (!cfg.rhs_path.empty()) rhs = load_matrix_market_vector(cfg.rhs_path);
    if (cfg.ave) return GaveInstance::ave(std::move(a), std::move(rhs));
    return GaveInstance(std::move(a), load_matrix_market(cfg.b_path), std::move(rhs));
}

CertifyOptions certify_options(const RunConfig& cfg) {
    CertifyOptions opt;
    opt.n_cap_vertex = cfg.n_cap_vertex;
    opt.n_cap_minor = cfg.n_cap_minor;
    opt.samples = cfg.samples;
    opt.seed = cfg.seed;
    return opt;
}

SolveOptions solve_options(const RunConfig& cfg) {
    SolveOptions opt;
    opt.tol = cfg.tol;
    opt.accept = cfg.tol;
    opt.max_iter = cfg.max_iter;
    opt.n_cap = cfg.n_cap_vertex;
    return opt;
}

Json header(const RunConfig& cfg) {
    Json j;
    j["tool"] = "gave";
    j["version"] = std::string(kVersion);
    j["command"] = std::string(to_string(cfg.command));
    j["config"] = config_to_json(cfg);
    j["tolerances"] = tolerances_json(CertifyOptions{}.margin, solve_options(cfg));
    return j;
}

Json run_check(const RunConfig& cfg) {
    const GaveInstance inst = load_instance(cfg);
    Json j = header(cfg);
    j["instance"] = {{"n", inst.n()}, {"ave", inst.is_ave()}};
    const Json body = to_json(hierarchy_report(inst, certify_options(cfg)));
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j;
}

Json run_solve(const RunConfig& cfg) {
    const GaveInstance inst = load_instance(cfg);
    Json j = header(cfg);
    j["instance"] = {{"n", inst.n()}, {"ave", inst.is_ave()}};
    const Json body = to_json(solve(inst, cfg.method, solve_options(cfg)));
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j;
}

Json run_compare(const RunConfig& cfg) {
    SeparationQuery q{*parse_condition(cfg.hold), *parse_condition(cfg.fail), cfg.budget, cfg.seed};
    const EnsembleSpec spec{cfg.n, cfg.ensemble, cfg.target, cfg.seed};
    const SeparationResult res = find_separating_instance(q, spec, certify_options(cfg));

    Json j = header(cfg);
    j["query"] = query_json(q);
    j["impossible_pair"] = res.impossible_pair;
    if (res.impossible_pair)
        j["warning"] = "ImpossiblePair: " + cfg.hold + " holding implies " + cfg.fail + " cannot fail";
    j["found"] = res.found.has_value();
    j["draws"] = res.draws;
    if (res.found) {
        Json w;
        w["draw_index"] = res.found->draw_index;
        w["A"] = matrix_json(res.found->instance.a());
        w["B"] = matrix_json(res.found->instance.b());
        w["certificates"] = Json::array({to_json(res.found->hold), to_json(res.found->fail)});
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json run_fuzz(const RunConfig& cfg) {
    const EnsembleSpec spec{cfg.n, cfg.ensemble, cfg.target, cfg.seed};
    const CrosscheckSummary s =
        uniqueness_crosscheck(spec, cfg.instances, cfg.rhs_per_instance, certify_options(cfg), solve_options(cfg));
    Json j = header(cfg);
    Json sum;
    sum["instances"] = s.instances;
    sum["rhs_checked"] = s.rhs_checked;
    sum["unique"] = s.unique;
    sum["not_unique"] = s.not_unique;
    sum["undecided"] = s.undecided;
    sum["agreements"] = s.agreements;
    sum["disagreements"] = s.disagreements;
    sum["not_unique_witnessed"] = s.not_unique_witnessed;
    sum["not_unique_unwitnessed"] = s.not_unique_unwitnessed;
    sum["flagged"] = s.flagged;
    j["summary"] = std::move(sum);
    return j;
}

}  // namespace

std::string run_command(const RunConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    Json j;
    switch (cfg.command) {
        case Command::check: j = run_check(cfg); break;
        case Command::solve: j = run_solve(cfg); break;
        case Command::compare: j = run_compare(cfg); break;
        case Command::fuzz: j = run_fuzz(cfg); break;
    }
    j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return dump_json(j);
}

}  // namespace gave
