#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include "support.hpp"

#ifndef LONGDOC_CLI
#error "LONGDOC_CLI must name the built command-line tool"
#endif

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

Run run(const support::TempDir& dir, const std::string& args) {
    const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd = std::string("\"") + LONGDOC_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = support::slurp(out);
    r.err = support::slurp(err);
    return r;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("exit codes") {
        support::TempDir dir("cli");
        support::spit(dir / "bad.jsonl", R"({"id": "a", "text": "fine.", "label": "x"})"
                                         "\n{\"id\": \"b\", \"text\": \n");
        const auto bad = run(dir, "segment --corpus " + q(dir / "bad.jsonl") + " --out " + q(dir / "s.jsonl"));
        CHECK(bad.code == 2);
        CHECK(bad.err.find("line 2") != std::string::npos);
        CHECK(bad.err.find("longdoc: error:") == 0);

        support::spit(dir / "mmr.json", R"({"strategy": "mmr"})");
        support::spit(dir / "ok.jsonl", R"({"id": "a", "text": "one two three.", "label": "x"})"
                                        "\n");
        const auto mmr = run(dir, "segment --config " + q(dir / "mmr.json") + " --corpus " + q(dir / "ok.jsonl") +
                                      " --out " + q(dir / "s.jsonl"));
        CHECK(mmr.code == 3);
        CHECK(mmr.err.find("mmr") != std::string::npos);

        const auto flag = run(dir, "segment --strategy mmr --corpus " + q(dir / "ok.jsonl") + " --out " +
                                       q(dir / "s.jsonl"));
        CHECK(flag.code == 3);

        support::spit(dir / "a.json", "{}");
        support::spit(dir / "m.json", R"({"train": [], "valid": [], "test": ["a"], "seed": 0,
                                          "fractions": [0.8, 0.1, 0.1]})");
        const auto single = run(dir, "compare --config " + q(dir / "a.json") + " --corpus " + q(dir / "ok.jsonl") +
                                         " --manifest " + q(dir / "m.json"));
        CHECK(single.code == 3);

        CHECK(run(dir, "frobnicate").code == 2);
        CHECK(run(dir, "gen").code == 2);
        CHECK(run(dir, "--help").code == 0);
        CHECK(run(dir, "serve-info --provider remote --remote-url http://127.0.0.1:1").code == 4);
    }

    TEST_CASE("gen, split, train, eval, compare") {
        support::TempDir dir("cli");
        const auto corpus = dir / "c.jsonl", manifest = dir / "split.json";
        auto r = run(dir, "gen --classes 3 --docs-per-class 8 --sentences-per-doc 10 --signal-ratio 0.5 --seed 2 --out " +
                              q(corpus));
        REQUIRE(r.code == 0);
        CHECK(r.out.find("\"documents\": 24") != std::string::npos);

        r = run(dir, "split --corpus " + q(corpus) + " --seed 5 --out " + q(manifest));
        REQUIRE(r.code == 0);

        support::spit(dir / "cfg.json", R"({"train": {"epochs": 2, "learning_rate": 0.01}, "provider": {"dim": 32}})");
        const std::string common = " --config " + q(dir / "cfg.json") + " --corpus " + q(corpus) + " --manifest " +
                                   q(manifest);
        r = run(dir, "train" + common + " --out " + q(dir / "m.ckpt") + " --metrics " + q(dir / "metrics.json"));
        REQUIRE(r.code == 0);
        CHECK(r.out.find("best epoch") != std::string::npos);
        CHECK(std::filesystem::exists(dir / "metrics.json"));

        r = run(dir, "eval" + common + " --checkpoint " + q(dir / "m.ckpt") + " --out " + q(dir / "report.json") +
                         " --predictions " + q(dir / "pred.jsonl"));
        REQUIRE(r.code == 0);
        CHECK(r.out.find("macro") != std::string::npos);
        CHECK(support::slurp(dir / "report.json").find("\"macro_f1\"") != std::string::npos);

        r = run(dir, "eval" + common + " --strategy truncate --checkpoint " + q(dir / "m.ckpt"));
        CHECK(r.code == 0);

        r = run(dir, "compare" + common + " --config " + q(dir / "cfg.json") + " --out " + q(dir / "cmp.json"));
        REQUIRE(r.code == 0);
        CHECK(r.out.find("rank") == 0);
    }
}
