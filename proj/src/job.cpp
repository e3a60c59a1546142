#include "odo/job.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "odo/centralizer.hpp"
#include "odo/errors.hpp"
#include "odo/hierarchy.hpp"
#include "odo/level_variety.hpp"
#include "odo/parser.hpp"

namespace odo {

using nlohmann::json;

namespace {

const std::vector<std::string> kOperations = {"gd", "centralizer", "level", "level-ideal", "classify", "relations"};

template <class T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

json inputs_json(const JobConfig& c) {
    json in;
    in["operation"] = c.operation;
    if (c.operation == "gd") {
        in["n"] = c.n;
        in["m"] = c.m;
        return in;
    }
    in["field"] = c.field;
    if (c.field == "weierstrass" || c.field == "elliptic") {
        in["g2"] = c.g2;
        in["g3"] = c.g3;
    }
    in["expression"] = c.expression;
    in["route"] = c.route;
    if (c.m) in["m"] = c.m;
    if (c.level) in["level"] = *c.level;
    if (c.bound) in["bound"] = *c.bound;
    if (!c.point.empty()) in["point"] = c.point;
    if (c.operation == "level-ideal") in["groebner"] = c.groebner;
    return in;
}

json trace_json(const std::vector<StepTrace>& trace) {
    json out = json::array();
    for (const auto& s : trace)
        out.push_back({{"m", s.m},
                       {"columns", s.columns},
                       {"rows", s.rows},
                       {"consistent", s.consistent},
                       {"kernel_dim", s.kernel_dim},
                       {"discovered", s.discovered}});
    return out;
}

FieldPtr field_for(const JobConfig& c) {
    FieldKind kind = parse_field_kind(c.field);
    return make_field(kind, c.g2, c.g3);
}

std::string constant_text(const Constant& x, const FieldPtr& f) { return x.to_string(f->var_names()); }

json run_gd(const JobConfig& c, HierarchyStore& store) {
    if (c.n < 2) throw ContractError("gd needs n >= 2");
    if (c.m < 1) throw ContractError("gd needs m >= 1");
    const HierarchyEntry& e = store.get(c.n, c.m);
    json p = json::object();
    for (const auto& [order, coef] : e.p.terms()) p[std::to_string(order)] = coef.pretty();
    json h = json::array();
    for (const auto& x : e.h) h.push_back(x.pretty());
    return {{"n", e.n}, {"m", e.m}, {"P", p}, {"H", h}};
}

json run_level(const JobConfig& c, HierarchyStore& store) {
    if (!c.bound) throw ContractError("level needs a bound");
    ParsedOperator parsed = parse_operator(c.expression, field_for(c));
    GDProvider provider(ConcreteOperator::from_series(parsed.field, parsed.op), parse_gd_route(c.route), &store);
    LevelScan scan = compute_level(provider, *c.bound);
    json out = {{"n", provider.op().n()}, {"trace", trace_json(scan.trace)}};
    out["level"] = scan.level ? json(*scan.level) : json(nullptr);
    return out;
}

json run_centralizer(const JobConfig& c, HierarchyStore& store, bool relations) {
    ParsedOperator parsed = parse_operator(c.expression, field_for(c));
    GDProvider provider(ConcreteOperator::from_series(parsed.field, parsed.op), parse_gd_route(c.route), &store);
    json out = {{"n", provider.op().n()}};
    std::optional<int> level = c.level;
    if (!level) {
        if (!c.bound) throw ContractError("centralizer needs a level or a bound");
        LevelScan scan = compute_level(provider, *c.bound);
        out["level_trace"] = trace_json(scan.trace);
        if (!scan.level) {
            out["level"] = nullptr;
            return out;
        }
        level = scan.level;
    }
    FilteredBasisResult basis = filtered_basis(provider, *level, c.bound);
    const FieldPtr& f = provider.op().field;
    json gens = json::array();
    bool all_commute = true;
    for (const auto& g : basis.generators) {
        json coords = json::object();
        for (const auto& [j, x] : g.coordinates) coords[std::to_string(j)] = constant_text(x, f);
        bool commutes = is_zero_operator(commutator(provider.l_series(), g.op));
        all_commute &= commutes;
        gens.push_back({{"order", g.order}, {"operator", render_operator(g.op)}, {"coordinates", coords},
                        {"commutes", commutes}});
    }
    json orders = json::array();
    for (const auto& g : basis.generators) orders.push_back(g.order);
    out.update({{"level", basis.level},
                {"bound", basis.bound},
                {"orders", orders},
                {"generators", gens},
                {"classes", basis.classes},
                {"complete", basis.complete},
                {"rank", basis.rank},
                {"all_commute", all_commute},
                {"trace", trace_json(basis.trace)}});
    if (relations) {
        json rel = json::array();
        for (const auto& r : detect_relations(basis)) rel.push_back(r.text());
        out["relations"] = rel;
    }
    return out;
}

std::vector<Rational> point_values(const JobConfig& c) {
    std::vector<Rational> out;
    for (const auto& s : c.point) out.push_back(parse_rational(s));
    return out;
}

json run_level_ideal(const JobConfig& c) {
    Ansatz a = parse_ansatz(c.expression, field_for(c));
    GDRoute route = parse_gd_route(c.route);
    LevelIdeal ideal = level_ideal(a, c.m, route);
    const VarNames& names = a.op.field->var_names();
    json gens = json::array();
    for (const auto& g : ideal.generators) gens.push_back(g.to_string(names));
    json out = {{"n", ideal.n},           {"m", ideal.m},          {"t", ideal.t},
                {"rows", ideal.rows},     {"theta", ideal.theta},  {"nonzero_minors", ideal.nonzero_minors},
                {"generators", gens}};
    if (!c.point.empty()) out["membership"] = membership(point_values(c), ideal);
    if (c.groebner) {
        GroebnerResult gb = groebner_reduce(ideal.generators);
        json basis = json::array();
        for (const auto& g : gb.basis) basis.push_back(g.to_string(names));
        out["groebner"] = {{"basis", basis}, {"complete", gb.complete}};
    }
    return out;
}

json run_classify(const JobConfig& c) {
    Ansatz a = parse_ansatz(c.expression, field_for(c));
    Classification k = classify_point(point_values(c), a, c.m, parse_gd_route(c.route));
    auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
    return {{"verdict", to_string(k.verdict)},
            {"level", opt(k.level)},
            {"in_ideal", opt(k.in_ideal)},
            {"in_prev_ideal", opt(k.in_prev_ideal)},
            {"prev_m", k.prev_m},
            {"consistent", k.consistent},
            {"diagnostic", k.diagnostic}};
}

}  // namespace

JobConfig merge_config(const JobConfig& base, std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what(), e.byte);
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object", 0);
    static const std::vector<std::string> keys = {"operation", "field", "g2",    "g3",    "expression",
                                                  "op",        "ansatz", "n",    "m",     "level",
                                                  "bound",     "point",  "route", "groebner", "cache_dir",
                                                  "output"};
    for (const auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ParseError("config: unknown key '" + k + "'", 0);
    JobConfig c = base;
    try {
        take(j, "operation", c.operation);
        take(j, "field", c.field);
        take(j, "g2", c.g2);
        take(j, "g3", c.g3);
        take(j, "expression", c.expression);
        take(j, "op", c.expression);
        take(j, "ansatz", c.expression);
        take(j, "n", c.n);
        take(j, "m", c.m);
        if (j.contains("level")) c.level = j.at("level").get<int>();
        if (j.contains("bound")) c.bound = j.at("bound").get<int>();
        if (j.contains("point")) {
            c.point.clear();
            for (const auto& x : j.at("point")) c.point.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        }
        take(j, "route", c.route);
        take(j, "groebner", c.groebner);
        take(j, "cache_dir", c.cache_dir);
        take(j, "output", c.output);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
    }
    return c;
}

JobOutcome run_job(const JobConfig& config) {
    auto start = std::chrono::steady_clock::now();
    json canonical = {{"inputs", inputs_json(config)}};
    json info = json::object();
    JobOutcome outcome;
    std::optional<HierarchyStore> store;
    try {
        if (std::find(kOperations.begin(), kOperations.end(), config.operation) == kOperations.end())
            throw ContractError("unknown operation '" + config.operation + "'");
        if (config.cache_dir.empty()) {
            store.emplace();
        } else {
            store.emplace(std::filesystem::path(config.cache_dir));
        }
        json result;
        const std::string& op = config.operation;
        if (op == "gd") result = run_gd(config, *store);
        else if (op == "level") result = run_level(config, *store);
        else if (op == "centralizer") result = run_centralizer(config, *store, false);
        else if (op == "relations") result = run_centralizer(config, *store, true);
        else if (op == "level-ideal") result = run_level_ideal(config);
        else result = run_classify(config);
        canonical["status"] = "ok";
        canonical["result"] = std::move(result);
    } catch (const ParseError& e) {
        outcome.exit_code = kExitParse;
        canonical["status"] = "error";
        canonical["error"] = {{"kind", "parse"}, {"message", e.what()}, {"position", e.position()}};
    } catch (const ContractError& e) {
        outcome.exit_code = kExitContract;
        canonical["status"] = "error";
        canonical["error"] = {{"kind", "contract"}, {"message", e.what()}};
    } catch (const ResourceError& e) {
        outcome.exit_code = kExitResource;
        canonical["status"] = "error";
        canonical["error"] = {{"kind", "resource"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        outcome.exit_code = kExitOther;
        canonical["status"] = "error";
        canonical["error"] = {{"kind", "other"}, {"message", e.what()}};
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    info["elapsed_ms"] = ms;
    if (store) {
        info["cache"] = {{"directory", store->directory() ? store->directory()->string() : std::string()},
                         {"disk_hits", store->disk_hits()},
                         {"computed", store->computed()}};
    }
    outcome.report = json{{"canonical", canonical}, {"info", info}}.dump(2) + "\n";
    return outcome;
}

std::string canonical_section(const std::string& report) {
    try {
        return json::parse(report).at("canonical").dump(2);
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: ") + e.what(), 0);
    }
}

}  // namespace odo
