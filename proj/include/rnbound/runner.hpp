#pragma once

#include "rnbound/closure.hpp"
#include "rnbound/config.hpp"
#include "rnbound/error.hpp"
#include "rnbound/filtration.hpp"
#include "rnbound/invariants.hpp"
#include "rnbound/report.hpp"
#include "rnbound/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace rnbound {

enum ExitCode : int { kExitOk = 0, kExitSchema = 2, kExitHypothesis = 3, kExitUnresolved = 4, kExitFail = 5 };

struct RunOptions {
    /// Run only tasks of kind compute.
    bool compute_only = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> bound_rn;
    std::optional<std::size_t> bound_k;
    std::optional<std::size_t> bound_v;
    /// Adds per-task wall time to JSON records; never part of golden output.
    bool timing = false;
    /// Worker threads for corpus runs.
    std::size_t jobs = 1;
};

struct TaskRecord {
    std::size_t index = 0;
    TaskSpec spec;
    Json inputs;
    VerificationReport report;
    Json mismatches = Json::array();
    double millis = 0;
};

struct RunResult {
    std::string name;
    std::string ambient;
    std::vector<TaskRecord> records;
    std::size_t skipped = 0;
};

inline Verdict verdict_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::BoundExhausted:
    case ErrorKind::NotStabilized:
    case ErrorKind::Overflow: return Verdict::Unresolved;
    case ErrorKind::Internal: return Verdict::Fail;
    default: return Verdict::HypothesisNotMet;
    }
}

namespace detail {

inline MonomialIdeal resolve_ideal(const InstanceConfig& cfg, const Json& ref) {
    const auto name = ref.get<std::string>();
    if (name == "zero") return MonomialIdeal::zero(cfg.ambient);
    if (name == "maximal") return MonomialIdeal::maximal(cfg.ambient);
    if (name == "unit") return MonomialIdeal::unit(cfg.ambient);
    return cfg.ideal(name);
}

inline Filtration resolve_filtration(const InstanceConfig& cfg, const Json& f) {
    const auto kind = f["kind"].get<std::string>();
    auto base = resolve_ideal(cfg, f["base"]);
    if (kind == "adic") return Filtration::adic(std::move(base));
    if (kind == "powers") return Filtration::powers_of(std::move(base));
    if (kind == "ratliff-rush") return Filtration::ratliff_rush_powers(std::move(base));
    return Filtration::integral_closure_powers(std::move(base));
}

inline SearchBounds search_bounds(const InstanceConfig& cfg, const RunOptions& opt) {
    SearchBounds b;
    b.k_search = opt.bound_k.value_or(cfg.bounds.k);
    b.v_search = opt.bound_v.value_or(cfg.bounds.v);
    b.rn_bound = opt.bound_rn.value_or(cfg.bounds.rn);
    return b;
}

inline std::vector<RingElement> parse_elements(const AmbientRing& A, const Json& j) {
    std::vector<RingElement> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto path = "elements[" + std::to_string(i) + "]";
        if (!j[i].is_array()) throw ConfigError(path, "expected an array of terms");
        RingElement f(A);
        for (const auto& t : j[i]) {
            const auto e = as_exponent(require(t, "exp", path), A.dimension(), path + ".exp");
            if (!A.contains(e)) throw ConfigError(path + ".exp", "exponent " + e.to_string() + " is not in the semigroup");
            f.add_term(e, as_int(require(t, "coef", path), path + ".coef"));
        }
        out.push_back(std::move(f));
    }
    return out;
}

inline std::uint64_t task_seed(std::uint64_t seed, std::size_t index) {
    return seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(index + 1));
}

inline TheoremInstance theorem_instance(const InstanceConfig& cfg, const Json& p, const SearchBounds& b,
                                        bool with_a) {
    auto a = with_a && p.contains("a") ? resolve_ideal(cfg, p["a"]) : MonomialIdeal::zero(cfg.ambient);
    TheoremInstance inst(resolve_ideal(cfg, p["I"]), resolve_ideal(cfg, p["Q"]), std::move(a),
                         resolve_filtration(cfg, p["filtration"]), b);
    if (p.contains("k")) {
        const auto k = p["k"].get<std::int64_t>();
        if (k < 0) throw ConfigError("params.k", "must be nonnegative");
        inst.pinned_k = static_cast<std::size_t>(k);
    }
    return inst;
}

inline VerificationReport run_target(const InstanceConfig& cfg, const TaskSpec& t, const SearchBounds& b,
                                     std::uint64_t seed) {
    const auto& p = t.params;
    VerificationReport rep;
    rep.check = t.target;
    auto& d = rep.details;
    auto ideal = [&](const char* key) { return resolve_ideal(cfg, p[key]); };

    if (t.target == "reduction_number") {
        const auto I = ideal("I");
        const auto Q = ideal("Q");
        const auto rn = reduction_number(Q, I, b.rn_for(I));
        d["bound"] = rn.bound;
        if (!rn.value) {
            rep.verdict = Verdict::Unresolved;
            rep.message = "no n <= " + std::to_string(rn.bound) + " with I^{n+1} = QI^n";
            return rep;
        }
        d["rn"] = *rn.value;
        if (rn.witness) d["witness"] = to_json(*rn.witness);
        if (p.contains("check_non_member")) {
            const auto e = as_exponent(p["check_non_member"], cfg.ambient.dimension(), "params.check_non_member");
            Json nm{{"exp", to_json(e)}};
            if (*rn.value == 0) {
                nm["power"] = "not applicable";
            } else {
                PowerLadder ladder(I);
                const auto r = *rn.value;
                nm["power"] = r - 1;
                nm["in_I_power"] = ladder[r].contains(e);
                nm["in_QI_power"] = ideal_product(Q, ladder[r - 1]).contains(e);
            }
            d["non_member"] = nm;
        }
    } else if (t.target == "ratliff_rush") {
        const auto I = ideal("I");
        const auto rr = ratliff_rush(I);
        d["closure"] = to_json(rr.closure);
        d["strictly_larger"] = !(rr.closure == I);
        d["stopping_index"] = rr.stopping_index;
        d["steps"] = rr.steps;
        d["window"] = rr.window;
    } else if (t.target == "integral_closure") {
        const auto I = ideal("I");
        const auto c = integral_closure(I);
        d["closure"] = to_json(c);
        d["integrally_closed"] = c == I;
        Json facets = Json::array();
        const NewtonPolyhedron np(I);
        for (const auto& h : np.facets()) facets.push_back(Json::array({h.a, h.b, h.c}));
        d["facets"] = facets;
    } else if (t.target == "length") {
        const auto l = length_quotient(ideal("I"));
        if (l) d["length"] = *l;
        else d["length"] = "infinite";
    } else if (t.target == "nu") {
        d["nu"] = nu_quotient(ideal("F"), ideal("G"));
    } else if (t.target == "hilbert") {
        const auto F = resolve_filtration(cfg, p["filtration"]);
        const std::size_t up_to = p.contains("up_to") ? p["up_to"].get<std::size_t>() : 12;
        const auto h = hilbert_series_fit(F, up_to);
        Json ls = Json::array();
        for (const auto& [n, l] : h.lengths) ls.push_back(l);
        d["filtration"] = F.describe();
        d["lengths"] = ls;
        d["e0"] = h.fitted->e0;
        d["e1"] = h.fitted->e1;
        d["e2"] = h.fitted->e2;
        d["stabilization_index"] = h.stabilization_index;
    } else if (t.target == "thm_1_1") {
        return verify_theorem_1_1(theorem_instance(cfg, p, b, true));
    } else if (t.target == "cor_1_2") {
        return verify_cor_1_2(theorem_instance(cfg, p, b, false));
    } else if (t.target == "cor_3_1") {
        return verify_cor_3_1(ideal("I"), ideal("Q"), ideal("J"), b);
    } else if (t.target == "cor_3_2") {
        return verify_cor_3_2_instance(ideal("I"), ideal("Q"), b);
    } else if (t.target == "cor_3_6") {
        std::optional<MonomialIdeal> J;
        if (p.contains("J")) J = ideal("J");
        return verify_cor_3_6(ideal("I"), ideal("Q"), J, b);
    } else if (t.target == "lemma_2_1") {
        const auto inst = theorem_instance(cfg, p, b, true);
        const auto els = p.contains("elements") ? parse_elements(cfg.ambient, p["elements"]) : std::vector<RingElement>{};
        return verify_lemma_2_1(inst, els, seed);
    } else {
        throw Error(ErrorKind::Internal, "unhandled target " + t.target);
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

// Partial structural match: every key of `expect` must be present in
// `actual` with an equal value; nested objects match recursively.
inline void match_expect(const Json& expect, const Json& actual, const std::string& path, Json& out) {
    for (const auto& [k, v] : expect.items()) {
        const auto p = path.empty() ? k : path + "." + k;
        if (!actual.is_object() || !actual.contains(k)) {
            out.push_back(Json{{"field", p}, {"expected", v}, {"actual", nullptr}});
        } else if (v.is_object() && actual[k].is_object()) {
            match_expect(v, actual[k], p, out);
        } else if (v != actual[k]) {
            out.push_back(Json{{"field", p}, {"expected", v}, {"actual", actual[k]}});
        }
    }
}

inline Json referenced_ideals(const InstanceConfig& cfg, const Json& params) {
    Json out = Json::object();
    auto add = [&](const Json& ref) {
        if (!ref.is_string()) return;
        const auto n = ref.get<std::string>();
        if (!out.contains(n)) out[n] = to_json(resolve_ideal(cfg, ref));
    };
    for (const auto& [k, v] : params.items()) {
        if (k == "filtration") add(v["base"]);
        else if (k == "I" || k == "Q" || k == "J" || k == "F" || k == "G" || k == "a") add(v);
    }
    return out;
}

} // namespace detail

inline TaskRecord run_task(const InstanceConfig& cfg, std::size_t index, const RunOptions& opt) {
    TaskRecord rec;
    rec.index = index;
    rec.spec = cfg.tasks[index];
    rec.inputs = rec.spec.params;
    rec.inputs["ideals"] = detail::referenced_ideals(cfg, rec.spec.params);
    const auto bounds = detail::search_bounds(cfg, opt);
    const auto seed = detail::task_seed(opt.seed.value_or(cfg.seed.value_or(0)), index);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        rec.report = detail::run_target(cfg, rec.spec, bounds, seed);
    } catch (const Error& e) {
        rec.report = VerificationReport{rec.spec.target, verdict_for(e.kind()), Json::object(), e.what()};
    }
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rec.report.check = rec.spec.target;
    if (!rec.spec.expect.empty()) {
        Json actual = rec.report.details;
        actual["verdict"] = to_string(rec.report.verdict);
        detail::match_expect(rec.spec.expect, actual, "", rec.mismatches);
        if (!rec.mismatches.empty()) {
            rec.report.verdict = Verdict::Fail;
            if (rec.report.message.empty()) rec.report.message = "expectation mismatch";
        }
    }
    return rec;
}

/// Executes the tasks of one instance in declaration order.
inline RunResult run_instance(const InstanceConfig& cfg, const RunOptions& opt = {}) {
    RunResult res;
    res.name = cfg.name;
    res.ambient = cfg.ambient.describe();
    for (std::size_t i = 0; i < cfg.tasks.size(); ++i) {
        if (opt.compute_only && cfg.tasks[i].kind != TaskKind::Compute) {
            ++res.skipped;
            continue;
        }
        res.records.push_back(run_task(cfg, i, opt));
    }
    return res;
}

struct VerdictCounts {
    std::size_t pass = 0, fail = 0, hypothesis = 0, unresolved = 0, skipped = 0;

    void add(const RunResult& r) {
        skipped += r.skipped;
        for (const auto& rec : r.records) {
            switch (rec.report.verdict) {
            case Verdict::Pass: ++pass; break;
            case Verdict::Fail: ++fail; break;
            case Verdict::HypothesisNotMet: ++hypothesis; break;
            case Verdict::Unresolved: ++unresolved; break;
            }
        }
    }

    int exit_code() const {
        if (fail) return kExitFail;
        if (unresolved) return kExitUnresolved;
        if (hypothesis) return kExitHypothesis;
        return kExitOk;
    }

    Json to_json() const {
        return Json{{"pass", pass},           {"fail", fail},
                    {"hypothesis-not-met", hypothesis}, {"unresolved", unresolved},
                    {"skipped", skipped},     {"exit_code", exit_code()},
                    {"status", exit_code() == kExitOk ? "success" : "failure"}};
    }
};

inline Json record_json(const TaskRecord& r, bool timing) {
    Json j;
    j["task"] = r.index;
    j["kind"] = r.spec.kind == TaskKind::Compute ? "compute" : "verify";
    j["target"] = r.spec.target;
    j["inputs"] = r.inputs;
    j["verdict"] = to_string(r.report.verdict);
    j["details"] = r.report.details;
    if (!r.report.message.empty()) j["message"] = r.report.message;
    if (!r.spec.expect.empty()) j["expect"] = r.spec.expect;
    if (!r.mismatches.empty()) j["mismatches"] = r.mismatches;
    if (timing) j["timing_ms"] = r.millis;
    return j;
}

inline Json result_json(const RunResult& r, bool timing) {
    Json j;
    j["name"] = r.name;
    j["ambient"] = r.ambient;
    Json recs = Json::array();
    for (const auto& rec : r.records) recs.push_back(record_json(rec, timing));
    j["records"] = recs;
    VerdictCounts c;
    c.add(r);
    j["summary"] = c.to_json();
    return j;
}

inline Json instance_report_json(const RunResult& r, bool timing) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    const auto body = result_json(r, timing);
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// One-line digest of the scalar details, one level of nesting deep.
inline std::string digest(const Json& d) {
    std::string out;
    auto put = [&](const std::string& k, const Json& v) {
        if (v.is_structured()) return;
        if (!out.empty()) out += ' ';
        out += k + "=" + scalar_text(v);
    };
    for (const auto& [k, v] : d.items()) {
        if (v.is_object()) {
            for (const auto& [k2, v2] : v.items()) put(k + "." + k2, v2);
        } else if (k == "v_n" && v.is_array()) {
            std::string s;
            for (const auto& x : v) s += (s.empty() ? "" : ",") + x.dump();
            put(k, Json("[" + s + "]"));
        } else {
            put(k, v);
        }
    }
    return out;
}

inline std::string render_rows(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.resize(i + 1, 0);
            width[i] = std::max(width[i], r[i].size());
        }
    std::ostringstream os;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    }
    return os.str();
}

inline void append_rows(std::vector<std::vector<std::string>>& rows, const RunResult& r, bool with_name) {
    for (const auto& rec : r.records) {
        std::vector<std::string> row;
        if (with_name) row.push_back(r.name);
        row.push_back(std::to_string(rec.index));
        row.push_back(rec.spec.kind == TaskKind::Compute ? "compute" : "verify");
        row.push_back(rec.spec.target);
        row.push_back(std::string(to_string(rec.report.verdict)));
        std::string info = digest(rec.report.details);
        if (!rec.report.message.empty()) info += (info.empty() ? "" : " ") + ("[" + rec.report.message + "]");
        row.push_back(info);
        rows.push_back(std::move(row));
    }
}

inline std::string summary_line(const VerdictCounts& c) {
    return "pass=" + std::to_string(c.pass) + " fail=" + std::to_string(c.fail) +
           " hypothesis-not-met=" + std::to_string(c.hypothesis) + " unresolved=" + std::to_string(c.unresolved) +
           " skipped=" + std::to_string(c.skipped) + " exit=" + std::to_string(c.exit_code()) + "\n";
}

} // namespace detail

inline std::string instance_report_table(const RunResult& r) {
    std::vector<std::vector<std::string>> rows{{"#", "kind", "target", "verdict", "details"}};
    detail::append_rows(rows, r, false);
    VerdictCounts c;
    c.add(r);
    return "instance " + r.name + " on " + r.ambient + "\n" + detail::render_rows(rows) + detail::summary_line(c);
}

// ---------------------------------------------------------------------------
// Corpus documents

inline bool is_corpus_document(const Json& doc) { return doc.is_object() && doc.contains("instances"); }

inline std::vector<InstanceConfig> parse_corpus(const Json& doc) {
    if (doc.contains("schemaVersion")) {
        const auto v = detail::as_int(doc["schemaVersion"], "schemaVersion");
        if (v != kSchemaVersion) throw ConfigError("schemaVersion", "unsupported version " + std::to_string(v));
    }
    const auto& inst = doc["instances"];
    if (!inst.is_array()) throw ConfigError("instances", "expected an array");
    std::vector<InstanceConfig> out;
    for (std::size_t i = 0; i < inst.size(); ++i) out.push_back(parse_instance(inst[i], detail::index_field("instances", i)));
    return out;
}

/// Runs instances on `opt.jobs` workers; results keep input order.
inline std::vector<RunResult> run_instances(const std::vector<InstanceConfig>& cfgs, const RunOptions& opt) {
    std::vector<RunResult> out(cfgs.size());
    const auto jobs = std::max<std::size_t>(1, std::min(opt.jobs, cfgs.size()));
    if (jobs == 1) {
        for (std::size_t i = 0; i < cfgs.size(); ++i) out[i] = run_instance(cfgs[i], opt);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < cfgs.size();) out[i] = run_instance(cfgs[i], opt);
        });
    for (auto& t : pool) t.join();
    return out;
}

inline VerdictCounts total_counts(const std::vector<RunResult>& rs) {
    VerdictCounts c;
    for (const auto& r : rs) c.add(r);
    return c;
}

inline Json corpus_report_json(const Json& corpus_meta, const std::vector<RunResult>& rs, bool timing) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    if (!corpus_meta.is_null()) j["corpus"] = corpus_meta;
    Json inst = Json::array();
    for (const auto& r : rs) inst.push_back(result_json(r, timing));
    j["instances"] = inst;
    auto s = total_counts(rs).to_json();
    s["instances"] = rs.size();
    j["summary"] = s;
    return j;
}

inline std::string corpus_report_table(const std::vector<RunResult>& rs) {
    std::vector<std::vector<std::string>> rows{{"instance", "#", "kind", "target", "verdict", "details"}};
    for (const auto& r : rs) detail::append_rows(rows, r, true);
    return detail::render_rows(rows) + "instances=" + std::to_string(rs.size()) + " " +
           detail::summary_line(total_counts(rs));
}

/// Parsed document of either shape together with its rendered report.
struct ConfigRun {
    std::vector<RunResult> results;
    bool corpus = false;
    Json corpus_meta;
    int exit_code = kExitOk;

    std::string render(bool json, bool timing) const {
        if (json) {
            const auto j = corpus ? corpus_report_json(corpus_meta, results, timing)
                                  : instance_report_json(results.front(), timing);
            return j.dump(2) + "\n";
        }
        return corpus ? corpus_report_table(results) : instance_report_table(results.front());
    }
};

inline ConfigRun run_document(const Json& doc, const RunOptions& opt) {
    ConfigRun run;
    if (is_corpus_document(doc)) {
        run.corpus = true;
        run.corpus_meta = doc.contains("corpus") ? doc["corpus"] : Json();
        run.results = run_instances(parse_corpus(doc), opt);
    } else {
        run.results.push_back(run_instance(parse_instance(doc), opt));
    }
    run.exit_code = total_counts(run.results).exit_code();
    return run;
}

} // namespace rnbound
