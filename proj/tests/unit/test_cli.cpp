#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "simclust/export.hpp"
#include "simclust/labels.hpp"

namespace fs = std::filesystem;
using simclust::cli::run_cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("simclust_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("gen is deterministic") {
    const auto dir = temp_dir("gen");
    const auto a = (dir / "a.jsonl").string(), b = (dir / "b.jsonl").string();
    REQUIRE(cli({"gen", "--seed", "7", "--users-per-community", "30", "--out", a}).code == 0);
    REQUIRE(cli({"gen", "--seed", "7", "--users-per-community", "30", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(fs::exists(a + ".truth.csv"));
    CHECK(fs::exists(a + ".manifest.json"));
    fs::remove_all(dir);
}

TEST_CASE("exit codes") {
    CHECK(cli({"gen", "--bogus-flag"}).code == 1);
    CHECK(cli({}).code == 1);
    CHECK(cli({"stats", "--in", "/nonexistent/x.jsonl"}).code == 2);
    const auto dir = temp_dir("codes");
    {
        std::ofstream f(dir / "c.jsonl");
        f << R"({"id":"1","author_id":"a","created_at":1,"hashtags":[]})" << "\n";
    }
    CHECK(cli({"--threshold-fraction", "1.5", "net-cluster", "--in", (dir / "c.jsonl").string(), "--out-dir",
               (dir / "o").string()})
              .code == 1);
    CHECK(cli({"gen", "--p-in", "2", "--out", (dir / "g.jsonl").string()}).code == 1);
    fs::remove_all(dir);
}

TEST_CASE("net-cluster on a corpus without retweets") {
    const auto dir = temp_dir("noretweets");
    {
        std::ofstream f(dir / "c.jsonl");
        f << R"({"id":"1","author_id":"a","created_at":1,"hashtags":["x"]})" << "\n";
        f << R"({"id":"2","author_id":"b","created_at":2,"hashtags":[]})" << "\n";
    }
    auto r = cli({"net-cluster", "--in", (dir / "c.jsonl").string(), "--out-dir", (dir / "net").string()});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(slurp(dir / "net" / "net_labels.csv") == "id,label\n");
    CHECK(fs::exists(dir / "net" / "manifest.json"));
    fs::remove_all(dir);
}

TEST_CASE("config file values are overridden by flags") {
    const auto dir = temp_dir("config");
    {
        std::ofstream f(dir / "run.toml");
        f << "seed = 3\n[gen]\nusers_per_community = 20\n";
    }
    const auto a = (dir / "a.jsonl").string(), b = (dir / "b.jsonl").string(), c = (dir / "c.jsonl").string();
    REQUIRE(cli({"--config", (dir / "run.toml").string(), "gen", "--out", a}).code == 0);
    REQUIRE(cli({"--seed", "3", "gen", "--users-per-community", "20", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
    REQUIRE(cli({"--config", (dir / "run.toml").string(), "--seed", "4", "gen", "--out", c}).code == 0);
    CHECK(slurp(a) != slurp(c));
    fs::remove_all(dir);
}

TEST_CASE("full pipeline through the CLI") {
    const auto dir = temp_dir("full");
    const auto corpus = (dir / "corpus.jsonl").string();
    REQUIRE(cli({"--seed", "5", "gen", "--users-per-community", "80", "--hashtag-posts-per-user", "120",
                 "--tail-hashtags", "600", "--tail-hashtag-rate", "0.2", "--shared-hashtag-rate", "0.1", "--noise-users",
                 "20", "--out", corpus})
                .code == 0);
    CHECK(cli({"stats", "--in", corpus}).out.find("power_law_m") != std::string::npos);
    CHECK(cli({"ingest", "--in", corpus}).out.find("skipped_malformed: 0") != std::string::npos);
    REQUIRE(cli({"--threshold-fraction", "0.15", "net-cluster", "--in", corpus, "--out-dir", (dir / "net").string()}).code == 0);
    REQUIRE(cli({"--k-list", "3", "4", "5", "lang-cluster", "--in", corpus, "--out-dir", (dir / "lang").string()}).code == 0);
    auto cmp = cli({"compare", "--net-dir", (dir / "net").string(), "--lang-dir", (dir / "lang").string(), "--out-dir",
                    (dir / "cmp").string()});
    REQUIRE(cmp.code == 0);
    CHECK(cmp.out.find("network/users") != std::string::npos);

    const auto net = simclust::read_labels_csv(dir / "net" / "net_labels.csv");
    std::map<int, std::uint64_t> sizes;
    for (const auto& [u, l] : net)
        if (l != simclust::kNoise) ++sizes[l];
    std::map<int, std::uint64_t> outflow;
    std::istringstream sankey(slurp(dir / "cmp" / "sankey.csv"));
    std::string line;
    std::getline(sankey, line);
    while (std::getline(sankey, line)) {
        const auto c1 = line.find(','), c2 = line.rfind(',');
        outflow[simclust::label_from_string(line.substr(0, c1))] += std::stoull(line.substr(c2 + 1));
    }
    CHECK(outflow == sizes);

    for (const auto* fmt : {"gexf", "dot", "csv"}) {
        const auto out = (dir / (std::string("g.") + fmt)).string();
        CHECK(cli({"export", "--in", corpus, "--stage", "thresholded", "--format", fmt, "--out", out}).code == 0);
        CHECK(fs::file_size(out) > 0);
    }
    CHECK(cli({"export", "--in", corpus, "--stage", "sideways", "--out", (dir / "x").string()}).code == 1);
    fs::remove_all(dir);
}
