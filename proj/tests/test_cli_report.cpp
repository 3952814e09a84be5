#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace rnbound;

namespace {

Json minimal_doc() {
    return Json::parse(R"({"schemaVersion":1,"name":"t","ambient":{"kind":"free","dimension":2},
        "ideals":{"I":[[2,0],[1,1],[0,2]],"Q":[[2,0],[0,2]]},"tasks":[]})");
}

std::string where_of(const Json& doc) {
    try {
        parse_instance(doc);
    } catch (const ConfigError& e) {
        return e.where();
    }
    return "";
}

} // namespace

TEST(Config, EmptyTaskList) {
    const auto run = run_document(minimal_doc(), {});
    EXPECT_EQ(run.exit_code, kExitOk);
    EXPECT_TRUE(run.results.front().records.empty());
    const auto j = Json::parse(run.render(true, false));
    EXPECT_EQ(j["records"].size(), 0u);
    EXPECT_EQ(j["summary"]["status"], "success");
}

TEST(Config, SchemaErrorsNameTheField) {
    auto d = minimal_doc();
    d["schemaVersion"] = 2;
    EXPECT_EQ(where_of(d), "schemaVersion");
    d = minimal_doc();
    d["ambient"]["kind"] = "torus";
    EXPECT_EQ(where_of(d), "ambient.kind");
    d = minimal_doc();
    d["ideals"]["I"][1] = Json::array({1, -1});
    EXPECT_EQ(where_of(d), "ideals.I[1][1]");
    d = minimal_doc();
    d["tasks"].push_back(Json{{"kind", "compute"}, {"target", "length"}, {"params", {{"I", "K"}}}});
    EXPECT_EQ(where_of(d), "tasks[0].params.I");
    d = minimal_doc();
    d["tasks"].push_back(Json{{"kind", "compute"}, {"target", "colon"}});
    EXPECT_EQ(where_of(d), "tasks[0].target");
    d = minimal_doc();
    d["bounds"] = Json{{"rn", 0}};
    EXPECT_EQ(where_of(d), "bounds.rn");
    d = minimal_doc();
    d["tasks"].push_back(Json{{"kind", "verify"}, {"target", "thm_1_1"}, {"params", {{"I", "I"}, {"Q", "Q"}}}});
    EXPECT_EQ(where_of(d), "tasks[0].params.filtration");
    d = minimal_doc();
    d["tasks"].push_back(Json{{"kind", "compute"}, {"target", "length"}, {"params", {{"I", "I"}, {"extra", 1}}}});
    EXPECT_EQ(where_of(d), "tasks[0].params.extra");
    d = minimal_doc();
    d["ambient"] = Json{{"kind", "veronese"}, {"degree", 3}};
    EXPECT_EQ(where_of(d), "ideals.I");
}

TEST(Config, SyntaxErrorCarriesLine) {
    try {
        parse_json_text("{\n  \"a\": 1,\n  oops\n}", "cfg.json");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.where().rfind("cfg.json:3:", 0), 0u) << e.where();
    }
}

TEST(Config, HypothesisNotMetExitCode) {
    auto d = minimal_doc();
    d["tasks"].push_back(Json{{"kind", "compute"}, {"target", "reduction_number"}, {"params", {{"I", "Q"}, {"Q", "I"}}}});
    const auto run = run_document(d, {});
    EXPECT_EQ(run.results.front().records.front().report.verdict, Verdict::HypothesisNotMet);
    EXPECT_EQ(run.exit_code, kExitHypothesis);
}

TEST(Config, UnresolvedAndFailExitCodes) {
    auto d = minimal_doc();
    d["ambient"] = Json{{"kind", "free"}, {"dimension", 3}};
    d["ideals"] = Json{{"x", Json::array({Json::array({1, 0, 0})})}, {"m", "maximal"}};
    d["bounds"] = Json{{"rn", 2}};
    d["tasks"].push_back(Json{{"kind", "compute"}, {"target", "reduction_number"}, {"params", {{"I", "m"}, {"Q", "x"}}}});
    auto run = run_document(d, {});
    EXPECT_EQ(run.exit_code, kExitUnresolved);
    // An unmet expectation is a verdict failure and outranks unresolved.
    d["tasks"].push_back(Json{{"kind", "compute"}, {"target", "length"}, {"params", {{"I", "m"}}}, {"expect", {{"length", 2}}}});
    run = run_document(d, {});
    EXPECT_EQ(run.exit_code, kExitFail);
    const auto& rec = run.results.front().records.back();
    EXPECT_EQ(rec.mismatches.size(), 1u);
    EXPECT_EQ(rec.mismatches[0]["field"], "length");
}

TEST(Config, ComputeOnlySkipsVerify) {
    auto d = generate_example41(4, 1);
    RunOptions o;
    o.compute_only = true;
    const auto run = run_document(d, o);
    EXPECT_EQ(run.results.front().records.size(), 2u);
    EXPECT_EQ(run.results.front().skipped, 5u);
    EXPECT_EQ(run.exit_code, kExitOk);
}

TEST(Example41, RoundTripPassesPaperValues) {
    for (int part : {1, 2}) {
        for (std::int64_t n = part == 1 ? 3 : 4; n <= 8; ++n) {
            const auto doc = generate_example41(n, part);
            const auto cfg = parse_instance(doc);
            EXPECT_EQ(cfg.ambient, AmbientRing::veronese(n));
            const auto run = run_document(doc, {});
            EXPECT_EQ(run.exit_code, kExitOk) << run.render(false, false);
            for (const auto& r : run.results.front().records) EXPECT_TRUE(r.mismatches.empty()) << r.spec.target;
        }
    }
}

TEST(Example41, Shape) {
    const auto d = generate_example41(3, 1);
    EXPECT_EQ(d["ideals"]["I"], Json::parse("[[3,0],[2,1],[0,3]]"));
    EXPECT_EQ(d["ideals"]["Q"], Json::parse("[[3,0],[0,3]]"));
    EXPECT_EQ(d["tasks"][0]["expect"]["rn"], 2);
    EXPECT_EQ(d["tasks"][1]["expect"]["nu"], 1);
    const auto d2 = generate_example41(5, 2);
    EXPECT_EQ(d2["ideals"]["J"].size(), 5u);
    EXPECT_EQ(d2["tasks"][0]["expect"]["rn"], 3);
    EXPECT_EQ(d2["tasks"][1]["expect"]["nu"], 2);
    EXPECT_THROW(generate_example41(3, 2), Error);
    EXPECT_THROW(generate_example41(2, 1), Error);
    EXPECT_THROW(generate_example41(5, 3), Error);
}

TEST(Corpus, DeterministicAndValid) {
    const auto a = generate_random_corpus(1, 12, "free2-mprimary");
    const auto b = generate_random_corpus(1, 12, "free2-mprimary");
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_NE(a.dump(), generate_random_corpus(2, 12, "free2-mprimary").dump());
    EXPECT_EQ(generate_random_corpus(1, 1, "free2-mprimary")["instances"][0], a["instances"][0]);
    EXPECT_THROW(generate_random_corpus(1, 1, "cubes"), Error);
    for (const auto& cfg : parse_corpus(a)) {
        const auto& I = cfg.ideal("I");
        const auto& Q = cfg.ideal("Q");
        EXPECT_TRUE(ideal_leq(Q, I));
        EXPECT_TRUE(length_quotient(I).has_value());
        EXPECT_EQ(is_reduction(Q, I, default_rn_bound(I)).status, ReductionTest::Status::Yes);
        // Every generator lies on or above the segment joining the pure powers.
        const auto a0 = Q.generators()[0][0], b0 = Q.generators()[1][1];
        for (const auto& g : I.generators()) EXPECT_GE(b0 * g[0] + a0 * g[1], a0 * b0);
    }
}

TEST(Corpus, ParallelMatchesSequential) {
    const auto doc = generate_random_corpus(4, 8, "free2-mprimary");
    RunOptions seq, par;
    par.jobs = 4;
    const auto a = run_document(doc, seq).render(true, false);
    const auto b = run_document(doc, par).render(true, false);
    EXPECT_EQ(a, b);
    EXPECT_EQ(run_document(doc, seq).render(false, false), run_document(doc, par).render(false, false));
}

TEST(Report, TimingOnlyWhenRequested) {
    const auto doc = generate_example41(3, 1);
    const auto run = run_document(doc, {});
    EXPECT_EQ(run.render(true, false).find("timing_ms"), std::string::npos);
    EXPECT_NE(run.render(true, true).find("timing_ms"), std::string::npos);
    const auto table = run.render(false, false);
    EXPECT_NE(table.find("reduction_number"), std::string::npos);
    EXPECT_NE(table.find("exit=0"), std::string::npos);
}

TEST(Report, BoundOverridesApply) {
    auto d = generate_example41(6, 1);
    RunOptions o;
    o.bound_rn = 2;
    const auto run = run_document(d, o);
    EXPECT_EQ(run.results.front().records.front().report.verdict, Verdict::Fail);
    EXPECT_EQ(run.results.front().records.front().report.details["bound"], 2);
}
