#pragma once

#include "rnbound/ambient.hpp"
#include "rnbound/closure.hpp"
#include "rnbound/error.hpp"
#include "rnbound/ideal.hpp"
#include "rnbound/invariants.hpp"
#include "rnbound/report.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rnbound {

inline constexpr int kSchemaVersion = 1;

/// Malformed or schema-violating configuration; `where` names the line or
/// field at fault.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

enum class TaskKind { Compute, Verify };

inline const std::vector<std::string>& task_targets() {
    static const std::vector<std::string> t{"reduction_number", "ratliff_rush", "integral_closure", "length",
                                            "nu", "hilbert", "thm_1_1", "cor_1_2",
                                            "cor_3_1", "cor_3_2", "cor_3_6", "lemma_2_1"};
    return t;
}

struct TaskSpec {
    TaskKind kind = TaskKind::Compute;
    std::string target;
    Json params = Json::object();
    Json expect = Json::object();
};

struct ConfigBounds {
    std::size_t rn = 0;
    std::size_t k = 24;
    std::size_t v = 24;
};

struct InstanceConfig {
    std::string name;
    AmbientRing ambient = AmbientRing::free(2);
    std::map<std::string, MonomialIdeal> ideals;
    ConfigBounds bounds;
    std::optional<std::uint64_t> seed;
    std::vector<TaskSpec> tasks;
    /// The document this config was read from, echoed in reports.
    Json source;

    const MonomialIdeal& ideal(const std::string& name) const { return ideals.at(name); }
};

namespace detail {

inline std::string field(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline std::string index_field(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const Json& require(const Json& obj, std::string_view key, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(field(path, key), "missing required field");
    return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    return j.get<std::int64_t>();
}

inline std::size_t as_positive(const Json& j, const std::string& path) {
    const auto v = as_int(j, path);
    if (v <= 0) throw ConfigError(path, "bound must be positive");
    return static_cast<std::size_t>(v);
}

inline std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

inline ExponentVector as_exponent(const Json& j, std::size_t dim, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an exponent array");
    if (j.size() != dim)
        throw ConfigError(path, "exponent has length " + std::to_string(j.size()) + ", ambient dimension is " +
                                    std::to_string(dim));
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto x = as_int(j[i], index_field(path, i));
        if (x < 0) throw ConfigError(index_field(path, i), "exponents must be nonnegative");
        c.push_back(x);
    }
    return ExponentVector(std::move(c));
}

inline AmbientRing parse_ambient(const Json& j, const std::string& path) {
    const auto kind = as_string(require(j, "kind", path), field(path, "kind"));
    if (kind == "free") {
        const auto d = as_int(require(j, "dimension", path), field(path, "dimension"));
        if (d <= 0) throw ConfigError(field(path, "dimension"), "must be positive");
        return AmbientRing::free(static_cast<std::size_t>(d));
    }
    if (kind == "veronese") {
        const auto n = as_int(require(j, "degree", path), field(path, "degree"));
        if (n <= 0) throw ConfigError(field(path, "degree"), "must be positive");
        return AmbientRing::veronese(n);
    }
    if (kind == "affine") {
        const auto& g = require(j, "generators", path);
        const auto gp = field(path, "generators");
        if (!g.is_array() || g.empty()) throw ConfigError(gp, "expected a nonempty array");
        if (!g[0].is_array()) throw ConfigError(index_field(gp, 0), "expected an exponent array");
        std::vector<ExponentVector> gens;
        for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(as_exponent(g[i], g[0].size(), index_field(gp, i)));
        try {
            return AmbientRing::affine(std::move(gens));
        } catch (const Error& e) {
            throw ConfigError(gp, e.what());
        }
    }
    throw ConfigError(field(path, "kind"), "unknown ambient kind '" + kind + "'");
}

inline MonomialIdeal parse_ideal(const AmbientRing& A, const Json& j, const std::string& path) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "maximal") return MonomialIdeal::maximal(A);
        if (s == "zero") return MonomialIdeal::zero(A);
        if (s == "unit") return MonomialIdeal::unit(A);
        throw ConfigError(path, "unknown ideal keyword '" + s + "'");
    }
    if (!j.is_array()) throw ConfigError(path, "expected an array of exponent arrays");
    std::vector<ExponentVector> gens;
    for (std::size_t i = 0; i < j.size(); ++i) gens.push_back(as_exponent(j[i], A.dimension(), index_field(path, i)));
    try {
        return ideal_from(A, std::move(gens));
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

struct ParamSchema {
    std::vector<std::string> required_ideals;
    std::vector<std::string> optional_ideals;
    bool filtration = false;
    std::vector<std::string> other;
};

inline const ParamSchema& param_schema(const std::string& target) {
    static const std::map<std::string, ParamSchema> s{
        {"reduction_number", {{"I", "Q"}, {}, false, {"check_non_member"}}},
        {"ratliff_rush", {{"I"}, {}, false, {}}},
        {"integral_closure", {{"I"}, {}, false, {}}},
        {"length", {{"I"}, {}, false, {}}},
        {"nu", {{"F", "G"}, {}, false, {}}},
        {"hilbert", {{}, {}, true, {"up_to"}}},
        {"thm_1_1", {{"I", "Q"}, {"a"}, true, {"k"}}},
        {"cor_1_2", {{"I", "Q"}, {}, true, {"k"}}},
        {"cor_3_1", {{"I", "Q", "J"}, {}, false, {}}},
        {"cor_3_2", {{"I", "Q"}, {}, false, {}}},
        {"cor_3_6", {{"I", "Q"}, {"J"}, false, {}}},
        {"lemma_2_1", {{"I", "Q"}, {"a"}, true, {"elements"}}},
    };
    auto it = s.find(target);
    if (it == s.end()) throw std::out_of_range(target);
    return it->second;
}

inline bool is_ideal_keyword(const std::string& s) { return s == "zero" || s == "maximal" || s == "unit"; }

inline void check_ideal_ref(const Json& v, const std::map<std::string, MonomialIdeal>& ideals, const std::string& path) {
    const auto name = as_string(v, path);
    if (!ideals.count(name) && !is_ideal_keyword(name))
        throw ConfigError(path, "references undeclared ideal '" + name + "'");
}

inline void validate_task(const TaskSpec& t, const std::map<std::string, MonomialIdeal>& ideals, const std::string& path) {
    const auto& schema = param_schema(t.target);
    const auto pp = field(path, "params");
    if (!t.params.is_object()) throw ConfigError(pp, "expected an object");
    std::set<std::string> allowed;
    for (const auto& k : schema.required_ideals) {
        check_ideal_ref(require(t.params, k, pp), ideals, field(pp, k));
        allowed.insert(k);
    }
    for (const auto& k : schema.optional_ideals) {
        if (t.params.contains(k)) check_ideal_ref(t.params[k], ideals, field(pp, k));
        allowed.insert(k);
    }
    if (schema.filtration) {
        const auto& f = require(t.params, "filtration", pp);
        const auto fp = field(pp, "filtration");
        const auto kind = as_string(require(f, "kind", fp), field(fp, "kind"));
        if (kind != "adic" && kind != "powers" && kind != "ratliff-rush" && kind != "integral-closure")
            throw ConfigError(field(fp, "kind"), "unknown filtration kind '" + kind + "'");
        check_ideal_ref(require(f, "base", fp), ideals, field(fp, "base"));
        allowed.insert("filtration");
    }
    for (const auto& k : schema.other) allowed.insert(k);
    for (const auto& [k, v] : t.params.items())
        if (!allowed.count(k)) throw ConfigError(field(pp, k), "unknown parameter for target '" + t.target + "'");
    if (t.params.contains("k")) (void)as_int(t.params["k"], field(pp, "k"));
    if (t.params.contains("up_to")) (void)as_positive(t.params["up_to"], field(pp, "up_to"));
    if (!t.expect.is_object()) throw ConfigError(field(path, "expect"), "expected an object");
}

} // namespace detail

/// Validates and parses one instance document.
inline InstanceConfig parse_instance(const Json& doc, const std::string& path = "") {
    using namespace detail;
    InstanceConfig cfg;
    if (!doc.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    if (doc.contains("schemaVersion")) {
        const auto v = as_int(doc["schemaVersion"], field(path, "schemaVersion"));
        if (v != kSchemaVersion) throw ConfigError(field(path, "schemaVersion"), "unsupported version " + std::to_string(v));
    }
    cfg.source = doc;
    cfg.name = doc.contains("name") ? as_string(doc["name"], field(path, "name")) : std::string("unnamed");
    cfg.ambient = parse_ambient(require(doc, "ambient", path), field(path, "ambient"));
    if (doc.contains("ideals")) {
        const auto ip = field(path, "ideals");
        if (!doc["ideals"].is_object()) throw ConfigError(ip, "expected an object");
        for (const auto& [name, val] : doc["ideals"].items()) {
            if (is_ideal_keyword(name)) throw ConfigError(field(ip, name), "ideal name is reserved");
            cfg.ideals.emplace(name, parse_ideal(cfg.ambient, val, field(ip, name)));
        }
    }
    if (doc.contains("bounds")) {
        const auto& b = doc["bounds"];
        const auto bp = field(path, "bounds");
        if (!b.is_object()) throw ConfigError(bp, "expected an object");
        for (const auto& [k, v] : b.items()) {
            if (k == "rn") cfg.bounds.rn = as_positive(v, field(bp, k));
            else if (k == "k") cfg.bounds.k = as_positive(v, field(bp, k));
            else if (k == "v") cfg.bounds.v = as_positive(v, field(bp, k));
            else throw ConfigError(field(bp, k), "unknown bound");
        }
    }
    if (doc.contains("seed")) {
        const auto s = as_int(doc["seed"], field(path, "seed"));
        if (s < 0) throw ConfigError(field(path, "seed"), "must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (doc.contains("tasks")) {
        const auto tp = field(path, "tasks");
        const auto& ts = doc["tasks"];
        if (!ts.is_array()) throw ConfigError(tp, "expected an array");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const auto p = index_field(tp, i);
            TaskSpec t;
            const auto kind = as_string(require(ts[i], "kind", p), field(p, "kind"));
            if (kind == "compute") t.kind = TaskKind::Compute;
            else if (kind == "verify") t.kind = TaskKind::Verify;
            else throw ConfigError(field(p, "kind"), "expected 'compute' or 'verify'");
            t.target = as_string(require(ts[i], "target", p), field(p, "target"));
            const auto& known = task_targets();
            if (std::find(known.begin(), known.end(), t.target) == known.end())
                throw ConfigError(field(p, "target"), "unknown target '" + t.target + "'");
            if (ts[i].contains("params")) t.params = ts[i]["params"];
            if (ts[i].contains("expect")) t.expect = ts[i]["expect"];
            for (const auto& [k, v] : ts[i].items())
                if (k != "kind" && k != "target" && k != "params" && k != "expect")
                    throw ConfigError(field(p, k), "unknown task field");
            validate_task(t, cfg.ideals, p);
            cfg.tasks.push_back(std::move(t));
        }
    }
    return cfg;
}

/// Parses JSON text, reporting syntax errors by line and column.
inline Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col), "JSON syntax error");
    }
}

// ---------------------------------------------------------------------------
// Instance generators

namespace detail {

inline Json exps_json(const std::vector<ExponentVector>& v) {
    Json j = Json::array();
    for (const auto& e : v) j.push_back(to_json(e));
    return j;
}

inline Json task_json(std::string_view kind, std::string_view target, Json params, Json expect = Json::object()) {
    Json t;
    t["kind"] = kind;
    t["target"] = target;
    t["params"] = std::move(params);
    if (!expect.empty()) t["expect"] = std::move(expect);
    return t;
}

inline Json filt(std::string_view kind, std::string_view base) { return Json{{"kind", kind}, {"base", base}}; }

} // namespace detail

/// The Veronese family: part 1 has I = (x_0, x_1, x_n), Q = (x_0, x_n);
/// part 2 has I = (x_0, x_1, x_{n-1}), Q = (x_0, x_{n-1}),
/// J = (x_0, ..., x_{n-1}). x_i is the point (n-i, i).
inline Json generate_example41(std::int64_t n, int part) {
    using detail::filt, detail::task_json;
    if (part != 1 && part != 2) throw Error(ErrorKind::InvalidArgument, "part must be 1 or 2");
    if (part == 1 && n < 3) throw Error(ErrorKind::InvalidArgument, "part 1 needs n >= 3");
    if (part == 2 && n < 4) throw Error(ErrorKind::InvalidArgument, "part 2 needs n >= 4");
    auto x = [n](std::int64_t i) { return Json::array({n - i, i}); };
    Json doc;
    doc["schemaVersion"] = kSchemaVersion;
    doc["name"] = "example41-part" + std::to_string(part) + "-n" + std::to_string(n);
    doc["ambient"] = Json{{"kind", "veronese"}, {"degree", n}};
    Json ideals;
    Json tasks = Json::array();
    if (part == 1) {
        ideals["I"] = Json::array({x(0), x(1), x(n)});
        ideals["Q"] = Json::array({x(0), x(n)});
        ideals["m"] = "maximal";
        const Json nonmember = Json::array({(n - 1) * (n - 1), n - 1});
        tasks.push_back(task_json("compute", "reduction_number", {{"I", "I"}, {"Q", "Q"}, {"check_non_member", nonmember}},
                                  {{"rn", n - 1}, {"non_member", {{"in_I_power", true}, {"in_QI_power", false}}}}));
        tasks.push_back(task_json("compute", "nu", {{"F", "m"}, {"G", "I"}}, {{"nu", n - 2}}));
        tasks.push_back(task_json("verify", "reduction_number", {{"I", "m"}, {"Q", "Q"}}, {{"rn", 1}}));
        tasks.push_back(task_json("verify", "cor_3_1", {{"I", "I"}, {"Q", "Q"}, {"J", "m"}},
                                  {{"nu", n - 2}, {"rn", n - 1}, {"tight", true}, {"verdict", "pass"}}));
        tasks.push_back(task_json("verify", "thm_1_1", {{"I", "I"}, {"Q", "Q"}, {"a", "zero"}, {"filtration", filt("powers", "m")}},
                                  {{"k", 1}, {"v", n - 2}, {"verdict", "pass"}}));
        tasks.push_back(task_json("verify", "cor_1_2", {{"I", "I"}, {"Q", "Q"}, {"filtration", filt("powers", "m")}},
                                  {{"k", 1}, {"v", n - 2}, {"rn", n - 1}, {"bound1", n - 1}, {"verdict", "pass"}}));
        tasks.push_back(task_json("verify", "lemma_2_1", {{"I", "I"}, {"Q", "Q"}, {"filtration", filt("powers", "m")}},
                                  {{"verdict", "pass"}}));
    } else {
        Json J = Json::array();
        for (std::int64_t i = 0; i <= n - 1; ++i) J.push_back(x(i));
        ideals["I"] = Json::array({x(0), x(1), x(n - 1)});
        ideals["Q"] = Json::array({x(0), x(n - 1)});
        ideals["J"] = J;
        const Json nonmember = Json::array({(n - 1) * (n - 2), n - 2});
        tasks.push_back(task_json("compute", "reduction_number", {{"I", "I"}, {"Q", "Q"}, {"check_non_member", nonmember}},
                                  {{"rn", n - 2}, {"non_member", {{"in_I_power", true}, {"in_QI_power", false}}}}));
        tasks.push_back(task_json("compute", "nu", {{"F", "J"}, {"G", "I"}}, {{"nu", n - 3}}));
        tasks.push_back(task_json("verify", "reduction_number", {{"I", "J"}, {"Q", "Q"}}, {{"rn", 1}}));
        tasks.push_back(task_json("verify", "cor_3_1", {{"I", "I"}, {"Q", "Q"}, {"J", "J"}},
                                  {{"J2_eq_QJ", true}, {"nu", n - 3}, {"rn", n - 2}, {"tight", true}, {"verdict", "pass"}}));
        tasks.push_back(task_json("verify", "thm_1_1", {{"I", "I"}, {"Q", "Q"}, {"a", "zero"}, {"filtration", filt("powers", "J")}},
                                  {{"k", 1}, {"v", n - 3}, {"verdict", "pass"}}));
        tasks.push_back(task_json("verify", "cor_1_2", {{"I", "I"}, {"Q", "Q"}, {"filtration", filt("powers", "J")}},
                                  {{"k", 1}, {"v", n - 3}, {"rn", n - 2}, {"bound1", n - 2}, {"verdict", "pass"}}));
        tasks.push_back(task_json("verify", "lemma_2_1", {{"I", "I"}, {"Q", "Q"}, {"filtration", filt("powers", "J")}},
                                  {{"verdict", "pass"}}));
    }
    doc["ideals"] = ideals;
    doc["seed"] = n * 10 + part;
    doc["tasks"] = tasks;
    return doc;
}

namespace detail {

// Uniform draw in [lo, hi] by modulo reduction, stable across standard libraries.
inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

} // namespace detail

struct CorpusInstance {
    MonomialIdeal I;
    MonomialIdeal Q;
};

/// Draws one free2-mprimary instance: Q = (x^a, y^b) with 2 <= a, b <= 6
/// and up to four extra points (x, y) with x < a, y < b on or above the
/// segment from (a,0) to (0,b), hence inside the integral closure of Q.
inline CorpusInstance draw_free2_mprimary(std::mt19937_64& rng) {
    const auto A = AmbientRing::free(2);
    while (true) {
        const auto a = detail::draw(rng, 2, 6);
        const auto b = detail::draw(rng, 2, 6);
        std::vector<ExponentVector> pts{{a, 0}, {0, b}};
        const auto extra = detail::draw(rng, 0, 4);
        for (std::int64_t i = 0; i < extra; ++i) {
            const auto x = detail::draw(rng, 0, a - 1);
            const auto y = detail::draw(rng, 0, b - 1);
            if (b * x + a * y >= a * b) pts.push_back({x, y});
        }
        auto Q = ideal_from(A, {{a, 0}, {0, b}});
        auto I = ideal_from(A, pts);
        if (!ideal_leq(Q, I)) continue;
        if (is_reduction(Q, I, default_rn_bound(I)).status != ReductionTest::Status::Yes) continue;
        return {std::move(I), std::move(Q)};
    }
}

inline Json corpus_instance_json(const CorpusInstance& c, const std::string& name, std::uint64_t seed) {
    using detail::filt, detail::task_json;
    const auto Ibar = integral_closure(c.I);
    Json doc;
    doc["schemaVersion"] = kSchemaVersion;
    doc["name"] = name;
    doc["ambient"] = Json{{"kind", "free"}, {"dimension", 2}};
    doc["ideals"] = Json{{"I", to_json(c.I)}, {"Q", to_json(c.Q)}, {"Ibar", to_json(Ibar)}};
    doc["seed"] = seed;
    Json tasks = Json::array();
    const Json IQ{{"I", "I"}, {"Q", "Q"}};
    tasks.push_back(task_json("compute", "reduction_number", IQ));
    tasks.push_back(task_json("compute", "length", {{"I", "I"}}));
    tasks.push_back(task_json("compute", "ratliff_rush", {{"I", "I"}}));
    tasks.push_back(task_json("compute", "integral_closure", {{"I", "I"}}));
    tasks.push_back(task_json("verify", "cor_3_2", IQ));
    for (const auto& [kind, base] : {std::pair{"adic", "I"}, {"powers", "Ibar"}, {"integral-closure", "I"}}) {
        Json p = IQ;
        p["filtration"] = filt(kind, base);
        Json pa = p;
        pa["a"] = "zero";
        tasks.push_back(task_json("verify", "thm_1_1", pa));
        tasks.push_back(task_json("verify", "cor_1_2", p));
    }
    tasks.push_back(task_json("verify", "cor_3_6", IQ));
    if (!(Ibar == c.I)) {
        Json p = IQ;
        p["filtration"] = filt("integral-closure", "I");
        tasks.push_back(task_json("verify", "lemma_2_1", p));
    }
    doc["tasks"] = tasks;
    return doc;
}

inline const std::vector<std::string>& corpus_profiles() {
    static const std::vector<std::string> p{"free2-mprimary"};
    return p;
}

/// Seeded corpus document: {"schemaVersion", "corpus": {...}, "instances": [...]}.
inline Json generate_random_corpus(std::uint64_t seed, std::size_t count, const std::string& profile) {
    if (profile != "free2-mprimary") throw Error(ErrorKind::InvalidArgument, "unknown corpus profile '" + profile + "'");
    std::mt19937_64 rng(seed);
    Json doc;
    doc["schemaVersion"] = kSchemaVersion;
    doc["corpus"] = Json{{"seed", seed}, {"count", count}, {"profile", profile}};
    Json inst = Json::array();
    for (std::size_t i = 0; i < count; ++i) {
        const auto c = draw_free2_mprimary(rng);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s-%04zu", profile.c_str(), i);
        inst.push_back(corpus_instance_json(c, buf, seed * 1000003ull + i));
    }
    doc["instances"] = inst;
    return doc;
}

inline std::vector<CorpusInstance> random_instances(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<CorpusInstance> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw_free2_mprimary(rng));
    return out;
}

} // namespace rnbound
