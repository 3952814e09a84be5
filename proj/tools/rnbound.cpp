#include "rnbound.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace rnbound;

struct Globals {
    std::string format = "table";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> bound_rn, bound_k, bound_v;
    std::string out;
    bool timing = false;
    std::size_t jobs = 1;
};

int emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << g.out << "\n";
        return kExitSchema;
    }
    f << text;
    return 0;
}

RunOptions options(const Globals& g, bool compute_only) {
    RunOptions o;
    o.compute_only = compute_only;
    o.seed = g.seed;
    o.bound_rn = g.bound_rn;
    o.bound_k = g.bound_k;
    o.bound_v = g.bound_v;
    o.timing = g.timing;
    o.jobs = g.jobs;
    return o;
}

int run_and_emit(const Globals& g, const Json& doc, bool compute_only) {
    const auto run = run_document(doc, options(g, compute_only));
    if (int rc = emit(g, run.render(g.format == "json", g.timing))) return rc;
    return run.exit_code;
}

int run_file(const Globals& g, const std::string& path, bool compute_only) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitSchema;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return run_and_emit(g, parse_json_text(ss.str(), path), compute_only);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduction numbers, closures and Hilbert coefficients of monomial ideals"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--seed", g.seed, "Seed for random elements and corpora");
    app.add_option("--bound-rn", g.bound_rn, "Reduction number search bound")->check(CLI::PositiveNumber);
    app.add_option("--bound-k", g.bound_k, "Search bound for k")->check(CLI::PositiveNumber);
    app.add_option("--bound-v", g.bound_v, "Search bound for the generator counts")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Write the report to a file instead of stdout");
    app.add_flag("--timing", g.timing, "Include per-task timings in JSON reports");
    app.add_option("--jobs", g.jobs, "Worker threads for corpus documents")->check(CLI::PositiveNumber);

    std::string config;
    auto* compute = app.add_subcommand("compute", "Run the compute tasks of a config");
    compute->add_option("config", config, "Instance or corpus JSON")->required();
    auto* verify = app.add_subcommand("verify", "Run every task of a config");
    verify->add_option("config", config, "Instance or corpus JSON")->required();

    std::int64_t n = 3;
    int part = 1;
    bool run41 = false;
    auto* ex41 = app.add_subcommand("example41", "Emit the Veronese example instance");
    ex41->add_option("--n", n, "Veronese degree")->required();
    ex41->add_option("--part", part, "Family part")->check(CLI::IsMember({1, 2}));
    ex41->add_flag("--run", run41, "Run the instance instead of printing it");

    std::size_t count = 10;
    std::string profile = "free2-mprimary";
    bool run_corpus = false;
    auto* corpus = app.add_subcommand("corpus", "Emit a seeded random corpus");
    corpus->add_option("--count", count, "Number of instances");
    corpus->add_option("--profile", profile, "Instance profile")->check(CLI::IsMember(corpus_profiles()));
    corpus->add_flag("--run", run_corpus, "Run the corpus instead of printing it");

    for (auto* sub : {compute, verify, ex41, corpus}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitSchema;
    }

    try {
        if (*compute) return run_file(g, config, true);
        if (*verify) return run_file(g, config, false);
        if (*ex41) {
            const auto doc = generate_example41(n, part);
            return run41 ? run_and_emit(g, doc, false) : emit(g, doc.dump(2) + "\n");
        }
        if (*corpus) {
            const auto doc = generate_random_corpus(g.seed.value_or(1), count, profile);
            return run_corpus ? run_and_emit(g, doc, false) : emit(g, doc.dump(2) + "\n");
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidArgument ? kExitSchema : kExitFail;
    }
    return 0;
}
