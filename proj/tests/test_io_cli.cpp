#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ballcover/harness.hpp"
#include "ballcover/io.hpp"
#include "cli.hpp"

using namespace ballcover;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    static const fs::path dir = [] {
        auto p = fs::temp_directory_path() / ("ballcover_io_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) { return read_file(p.string()); }

void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

struct CliResult {
    int status = -1;
    std::string out;
    std::string err;
};

// Runs the built binary named by BALLCOVER_CLI.
CliResult run_cli(const std::string& args) {
    const char* exe = std::getenv("BALLCOVER_CLI");
    if (!exe) {
        ADD_FAILURE() << "BALLCOVER_CLI not set";
        return {};
    }
    const auto o = scratch() / "stdout.txt";
    const auto e = scratch() / "stderr.txt";
    const std::string cmd = std::string("'") + exe + "' " + args + " >'" + o.string() + "' 2>'" + e.string() + "'";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

BallCollection parse(const std::string& s) {
    std::istringstream in(s);
    return parse_balls(in);
}

}  // namespace

TEST(BallFormat, RoundTripIsBitExact) {
    for (std::size_t d : {1u, 2u, 3u, 5u}) {
        const auto c = random_collection(d, 11, d);
        const auto back = parse(format_balls(c));
        EXPECT_EQ(back.dimension(), d);
        EXPECT_EQ(back.balls(), c.balls());
    }
    BallCollection tricky(2);
    tricky.push_back(Ball({0.1, 1.0 / 3.0}, 1e-300));
    tricky.push_back(Ball({-1e300, 5e-324}, 0.7));
    EXPECT_EQ(parse(format_balls(tricky)).balls(), tricky.balls());
}

TEST(BallFormat, CommentsAndBlankLines) {
    const auto c = parse("# header\n\n2 2\n0 0 1\n  # mid\n3 0 0.5\n# tail\n");
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[1], Ball({3.0, 0.0}, 0.5));
    EXPECT_TRUE(parse("3 0\n").empty());
}

TEST(BallFormat, ParseErrors) {
    for (const char* bad : {"", "2\n", "0 1\n1\n", "2 1\n", "2 1\n0 0\n", "2 1\n0 x 1\n", "2 1\n0 0 1\n1 1 1\n",
                            "2 1\n0 0 -1\n", "2 1\n0 0 1e\n", "2 1 7\n0 0 1\n",
                            "2 1\nnan 0 1\n", "2 1\n0 0 inf\n", "2 1\n0 0 1e999\n"}) {
        EXPECT_THROW(parse(bad), std::invalid_argument) << '"' << bad << '"';
    }
}

TEST(StepFormat, RoundTripAndErrors) {
    const auto f = random_step_function(2, 3);
    std::istringstream in(format_step_function(f));
    const auto g = parse_step_function(in);
    EXPECT_EQ(g.breakpoints(), f.breakpoints());
    EXPECT_EQ(g.values(), f.values());
    for (const char* bad : {"", "0 1\n", "0 1\n1 2\n", "1 0\n1\n", "0 1\n1\n5\n"}) {
        std::istringstream b(bad);
        EXPECT_THROW(parse_step_function(b), std::invalid_argument) << '"' << bad << '"';
    }
}

TEST(SelectionFormat, Records) {
    const auto c = build_fig1(10, 0.2);
    const auto txt = format_selection(vitali_select(c));
    EXPECT_EQ(txt.rfind("algorithm vitali\n", 0), 0u);
    EXPECT_NE(txt.find("\nselected 1 0\n"), std::string::npos);
    EXPECT_NE(txt.find("\ngroup 0 11"), std::string::npos);
    const auto pv = format_selection(perimeter_vitali_select(c, 0.01));
    EXPECT_NE(pv.find("eps=0.01"), std::string::npos);
    EXPECT_NE(pv.find("eps_max_source=derived"), std::string::npos);
    EXPECT_NE(format_selection(besicovitch_select(c)).find("\nfamily 0 "), std::string::npos);
}

TEST(AtomicWrite, ReplacesAndLeavesNoTemporary) {
    const auto dir = scratch() / "atomic";
    fs::create_directories(dir);
    const auto target = (dir / "out.txt").string();
    write_file_atomic(target, "one\n");
    write_file_atomic(target, "two\n");
    EXPECT_EQ(read_file(target), "two\n");
    EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator()), 1);
    EXPECT_THROW(write_file_atomic((dir / "missing" / "x.txt").string(), "x"), std::runtime_error);
    EXPECT_THROW(read_file((dir / "nope").string()), std::invalid_argument);
}

TEST(RunConfig, ValidationInProcess) {
    cli::RunConfig cfg;
    std::ostringstream out;
    std::ostringstream err;
    cfg.command = "explode";
    EXPECT_EQ(cli::run(cfg, out, err), 1);
    cfg.command = "select";
    EXPECT_EQ(cli::run(cfg, out, err), 1);
    EXPECT_NE(err.str().find("--input is required"), std::string::npos);
    EXPECT_THROW(cfg.set("colour", "red"), cli::ConfigError);

    cfg.command = "generate";
    cfg.values = {{"kind", "fig1"}, {"k", "-3"}, {"tiny-radius", "0.1"}};
    EXPECT_EQ(cli::run(cfg, out, err), 1);
    cfg.values["k"] = "5";
    cfg.values["tiny-radius"] = "nan";
    EXPECT_EQ(cli::run(cfg, out, err), 1);
    cfg.values["tiny-radius"] = "0.1";
    std::ostringstream good;
    EXPECT_EQ(cli::run(cfg, good, err), 0);
    EXPECT_EQ(parse(good.str()).size(), 6u);
}

TEST(RunConfig, ConfigFileParsing) {
    spit(scratch() / "ok.cfg", "# comment\nkind = fig1\n k=4\ntiny-radius=0.1\n");
    cli::RunConfig cfg;
    cli::load_config_file(path("ok.cfg"), cfg);
    EXPECT_EQ(cfg.text("kind"), "fig1");
    EXPECT_EQ(cfg.integer("k"), 4u);
    spit(scratch() / "bad.cfg", "kind=fig1\ncolour=red\n");
    EXPECT_THROW(cli::load_config_file(path("bad.cfg"), cfg), cli::ConfigError);
    spit(scratch() / "noeq.cfg", "kind fig1\n");
    EXPECT_THROW(cli::load_config_file(path("noeq.cfg"), cfg), cli::ConfigError);
    spit(scratch() / "cmd.cfg", "command=select\n");
    EXPECT_THROW(cli::load_config_file(path("cmd.cfg"), cfg), cli::ConfigError);
    EXPECT_THROW(cli::load_config_file(path("absent.cfg"), cfg), cli::ConfigError);
}

TEST(Cli, GenerateSelectMeasure) {
    auto g = run_cli("generate --kind fig1 --k 20 --tiny-radius 0.05 --output " + path("fig1.txt"));
    ASSERT_EQ(g.status, 0) << g.err;
    EXPECT_NE(g.out.find("generated unit ball with 20 tiny balls"), std::string::npos);
    const auto txt = slurp(scratch() / "fig1.txt");
    EXPECT_EQ(txt.rfind("# ballcover 0.1.0\n# command=generate\n", 0), 0u);
    EXPECT_NE(txt.find("# k=20\n"), std::string::npos);
    EXPECT_EQ(txt.find("# output="), std::string::npos);
    EXPECT_EQ(parse(txt).balls(), build_fig1(20, 0.05).balls());

    for (const char* alg : {"vitali", "besicovitch", "perimeter-besicovitch"}) {
        auto s = run_cli(std::string("select --algorithm ") + alg + " --input " + path("fig1.txt"));
        EXPECT_EQ(s.status, 0) << alg << ": " << s.err;
        EXPECT_NE(s.out.find(std::string("algorithm ") + alg), std::string::npos);
        EXPECT_NE(s.err.find("selected"), std::string::npos);
    }
    auto pv = run_cli("select --algorithm perimeter-vitali --eps 0.01 --input " + path("fig1.txt"));
    EXPECT_EQ(pv.status, 0) << pv.err;
    EXPECT_EQ(run_cli("select --algorithm perimeter-vitali --eps 0.5 --input " + path("fig1.txt")).status, 1);
    EXPECT_EQ(run_cli("select --algorithm greedy --input " + path("fig1.txt")).status, 1);

    auto m = run_cli("measure --input " + path("fig1.txt"));
    ASSERT_EQ(m.status, 0) << m.err;
    EXPECT_NE(m.out.find("perimeter method=exact2d"), std::string::npos);
    EXPECT_NE(m.out.find("volume method=exact2d"), std::string::npos);
}

TEST(Cli, IntervalsAndStepFunctions) {
    ASSERT_EQ(run_cli("generate --kind intervals --seed 4 --output " + path("iv.txt")).status, 0);
    auto s = run_cli("select --algorithm interval-1d --input " + path("iv.txt"));
    EXPECT_EQ(s.status, 0) << s.err;
    auto c = run_cli("check --input " + path("iv.txt"));
    EXPECT_EQ(c.status, 0) << c.err;
    EXPECT_NE(c.out.find("check=thm15.boundary"), std::string::npos);

    ASSERT_EQ(run_cli("generate --kind step --seed 5 --output " + path("step.txt")).status, 0);
    auto m = run_cli("maxfn --input " + path("step.txt") + " --levels 40 --level 0.75");
    EXPECT_EQ(m.status, 0) << m.err;
    EXPECT_NE(m.out.find("variation var_f="), std::string::npos);
    EXPECT_NE(m.out.find("passed=1"), std::string::npos);
    EXPECT_EQ(run_cli("maxfn --input " + path("iv.txt")).status, 1);
}

TEST(Cli, ConstructionsCheckAndRate) {
    auto sb = run_cli("generate --kind surrounded --eps 0.01 --delta 0.05 --n-max 50 --output " + path("sb.txt"));
    ASSERT_EQ(sb.status, 0) << sb.err;
    const auto txt = slurp(scratch() / "sb.txt");
    EXPECT_EQ(parse(txt).size(), 51u);
    EXPECT_NE(txt.find("# step 1 "), std::string::npos);
    EXPECT_NE(txt.find("# stop n_max reached"), std::string::npos);
    EXPECT_EQ(run_cli("generate --kind surrounded-halfspace --eps 0.01 --delta 0.05 --n-max 50").status, 0);
    EXPECT_EQ(run_cli("generate --kind reverse --eps 0.1").status, 0);
    EXPECT_EQ(run_cli("generate --kind spiral").status, 1);

    auto ch = run_cli("check --dim 2 --count 4 --eps 0.01 --lambda 0.5 --samples 2000");
    EXPECT_EQ(ch.status, 0) << ch.err << ch.out;
    EXPECT_NE(ch.out.find("summary check=thm13.overlap corpus_size=4 pass_count=4"), std::string::npos);
    EXPECT_NE(ch.out.find("check=prop16.ratio"), std::string::npos);
    EXPECT_EQ(run_cli("check --dim 2 --count 2 --eps 0.2").status, 1);
    EXPECT_EQ(run_cli("check --dim 2 --count 2 --lambda 1.5").status, 1);

    auto r = run_cli("rate --eps-list 0.02,0.01 --delta 0.05 --n-max 60");
    EXPECT_TRUE(r.status == 0 || r.status == 2) << r.err;
    EXPECT_NE(r.out.find("eps,balls,ratio,completed_ratio"), std::string::npos);
    EXPECT_EQ(run_cli("rate --eps-list 0.01,0.02").status, 1);
    EXPECT_EQ(run_cli("rate --eps-list 0.02,x").status, 1);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("--version").status, 0);
    EXPECT_EQ(run_cli("").status, 1);
    EXPECT_EQ(run_cli("teleport").status, 1);
    EXPECT_EQ(run_cli("measure --colour red").status, 1);
    EXPECT_EQ(run_cli("measure --input " + path("does-not-exist")).status, 1);
    spit(scratch() / "garbage.txt", "2 1\n0 zero 1\n");
    EXPECT_EQ(run_cli("measure --input " + path("garbage.txt")).status, 1);
    EXPECT_EQ(run_cli("check --dim 2 --count 1 --seed -4").status, 1);
    EXPECT_EQ(run_cli("rate --eps-list 0.02,0.01 --delta 0.3").status, 1);
}

TEST(RunConfig, FailedCheckStillWritesOutput) {
    cli::RunConfig cfg;
    cfg.command = "check";
    cfg.values["output"] = path("failed.txt");
    cli::Outcome o{"check=x passed=0\n", "1 checks, 1 failed", 2};
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(cli::emit(cfg, o, out, err), 2);
    EXPECT_EQ(slurp(scratch() / "failed.txt"), "# ballcover 0.1.0\n# command=check\ncheck=x passed=0\n");
    EXPECT_EQ(out.str(), "1 checks, 1 failed\n");
}

TEST(Cli, ConfigFileAndFlagOverride) {
    spit(scratch() / "gen.cfg", "kind=random\ndim=3\nseed=1\n");
    auto a = run_cli("generate --config " + path("gen.cfg") + " --seed 2 --output " + path("cfg_a.txt"));
    ASSERT_EQ(a.status, 0) << a.err;
    auto b = run_cli("generate --kind random --dim 3 --seed 2 --output " + path("cfg_b.txt"));
    ASSERT_EQ(b.status, 0) << b.err;
    EXPECT_EQ(slurp(scratch() / "cfg_a.txt"), slurp(scratch() / "cfg_b.txt"));
    EXPECT_EQ(parse(slurp(scratch() / "cfg_a.txt")).balls(), random_collection(3, 2, 0).balls());

    spit(scratch() / "unknown.cfg", "kind=random\nflavour=mint\n");
    EXPECT_EQ(run_cli("generate --config " + path("unknown.cfg")).status, 1);
}

TEST(Cli, DeterministicAcrossRunsAndJobs) {
    ASSERT_EQ(run_cli("generate --kind random --dim 3 --seed 9 --output " + path("r3.txt")).status, 0);
    const std::vector<std::string> runs{
        "measure --input " + path("r3.txt") + " --samples 3000 --seed 4",
        "check --dim 3 --count 6 --samples 2000 --eps 0.01",
        "check --dim 2 --count 6 --eps 0.02 --lambda 0.3",
    };
    for (const auto& args : runs) {
        std::string first;
        for (int jobs : {1, 1, 3}) {
            const auto out = path("det.txt");
            auto r = run_cli(args + " --jobs " + std::to_string(jobs) + " --output " + out);
            ASSERT_EQ(r.status, 0) << args << ": " << r.err;
            const auto content = slurp(out);
            if (first.empty()) {
                first = content;
            } else {
                EXPECT_EQ(content, first) << args << " jobs " << jobs;
            }
        }
    }
}
