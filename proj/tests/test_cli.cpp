#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hgv/cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kTestDir = HGV_TEST_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    for (std::string &a : args) {
        if (auto pos = a.find("@DATA@"); pos != std::string::npos) a.replace(pos, 6, (kTestDir / "data").string());
    }
    std::ostringstream out, err;
    const int code = hgv::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct GoldenCase {
    const char *name;
    std::vector<std::string> args;
    int code = 0;
};

void PrintTo(const GoldenCase &c, std::ostream *os) { *os << c.name; }

/// Set HGV_UPDATE_GOLDEN=1 to rewrite the files after an intended change.
class Golden : public testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesRecordedOutput) {
    const GoldenCase &c = GetParam();
    Result r = run(c.args);
    EXPECT_EQ(r.code, c.code) << r.out << r.err;
    const fs::path path = kTestDir / "golden" / (std::string(c.name) + (c.args[0] == "figure" && c.args.back() != "json" ? ".csv" : ".json"));
    if (std::getenv("HGV_UPDATE_GOLDEN")) {
        std::ofstream(path) << r.out;
        return;
    }
    ASSERT_TRUE(fs::exists(path)) << path;
    EXPECT_EQ(r.out, read_file(path));
}

const GoldenCase kCases[] = {
    {"analyze_c5", {"analyze", "@DATA@/c5.hg"}},
    {"analyze_square", {"analyze", "--family", "square", "--param", "4,4"}},
    {"color_exact_c5", {"color", "@DATA@/c5.hg", "--mode", "exact"}},
    {"color_greedy_uj", {"color", "--family", "union-jack-chain", "--param", "2", "--mode", "greedy"}},
    {"gamma_c5", {"gamma", "@DATA@/c5.hg"}},
    {"gamma_cubic_column", {"gamma", "--family", "cubic", "--param", "3,3", "--method", "column"}},
    {"protocol_c5_spectrum", {"protocol", "@DATA@/c5_protocol.json", "--spectrum"}},
    {"protocol_path4_gamma", {"protocol", "@DATA@/path4_protocol.json"}},
    {"counts_c5", {"counts", "@DATA@/c5_protocol.json", "--eps", "1/100", "--delta", "1/20"}},
    {"counts_nu_half", {"counts", "--nu", "1/2", "--eps", "1/100", "--delta", "1/20"}},
    {"counts_adversarial", {"counts", "--nu", "1/2", "--eps", "0.1", "--delta", "0.1", "--scenario", "adversarial"}},
    {"counts_hedged", {"counts", "--nu", "1/3", "--eps", "1/100", "--delta", "1/100", "--scenario", "adversarial_hedged"}},
    {"counts_gme", {"counts", "--gme", "2", "--nu", "1/2", "--delta", "0.05", "--scenario", "adversarial_hedged"}},
    {"counts_supremacy", {"counts", "--supremacy", "3", "--delta", "0.05"}},
    {"oracle_qutrit_spectrum", {"oracle", "@DATA@/qutrit_edge.json", "--check", "spectrum"}},
    {"oracle_kappa", {"oracle", "--family", "single-edge", "--param", "3", "--check", "kappa"}},
    {"oracle_gsupport", {"oracle", "--family", "single-edge", "--param", "3", "--check", "gsupport"}},
    {"oracle_worstcase", {"oracle", "@DATA@/c5_protocol.json", "--check", "worstcase", "--eps", "0.1"}},
    {"simulate_c5", {"simulate", "@DATA@/c5_protocol.json", "--noise", "worst_case:0.3", "--eps", "1/10", "--delta", "1/10",
                     "--scenario", "adversarial_hedged", "--seed", "7", "--threads", "2"}},
    {"compare_hh", {"compare", "--against", "hh", "--m", "3", "--eps", "0.01", "--delta", "0.01"}},
    {"compare_dfe", {"compare", "--against", "dfe", "--family", "single-edge", "--param", "3", "--eps", "0.01", "--delta", "0.05"}},
    {"compare_mth", {"compare", "--against", "mth", "--family", "union-jack-chain", "--param", "2", "--eps", "0.01", "--delta", "0.05"}},
    {"compare_tm", {"compare", "--against", "tm", "--n", "3"}},
    {"compare_plm", {"compare", "--against", "plm", "--n", "4", "--eps", "0.01", "--delta", "0.05"}},
    {"compare_tmmmf", {"compare", "--against", "tmmmf", "--n", "100", "--c", "16"}},
    {"figure_2", {"figure", "--which", "2", "--n-min", "3", "--n-max", "8"}},
    {"figure_3", {"figure", "--which", "3", "--n-min", "3", "--n-max", "6", "--format", "json"}},
    {"error_bad_vertex", {"analyze", "@DATA@/bad_vertex.hg"}, 2},
    {"error_bad_support", {"compare", "--against", "dfe", "--n", "3", "--g", "5", "--eps", "0.1", "--delta", "0.1"}, 2},
    {"error_bad_nu", {"counts", "--nu", "3/2", "--eps", "0.1", "--delta", "0.1"}, 2},
};

INSTANTIATE_TEST_SUITE_P(Cli, Golden, testing::ValuesIn(kCases),
                         [](const testing::TestParamInfo<GoldenCase> &info) { return std::string(info.param.name); });

}  // namespace

TEST(Cli, KeyFieldsOfGoldenOutputs) {
    auto json_of = [](std::vector<std::string> args) { return nlohmann::json::parse(run(std::move(args)).out); };
    EXPECT_EQ(json_of({"gamma", "@DATA@/c5.hg"})["gamma"], "2/5");
    EXPECT_EQ(json_of({"counts", "--nu", "1/2", "--eps", "1/100", "--delta", "1/20"})["N_exact"], 598);
    EXPECT_EQ(json_of({"counts", "--nu", "1/3", "--eps", "1/100", "--delta", "1/100", "--scenario", "adversarial_hedged"})["N"], 1870);
    EXPECT_EQ(json_of({"oracle", "--family", "single-edge", "--param", "3", "--check", "gsupport"})["g"], 29);
    EXPECT_EQ(json_of({"compare", "--against", "hh", "--m", "3", "--eps", "0.01", "--delta", "0.01"})["N"], 270000);
}

TEST(Cli, ErrorsAndHelp) {
    Result unknown = run({"frobnicate"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_EQ(nlohmann::json::parse(unknown.out)["error"]["code"], "ParseError");
    EXPECT_EQ(run({"counts", "--nu", "1/2", "--eps", "0.1"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"analyze", "@DATA@/missing.hg"}).code, 2);
    Result family = run({"analyze", "--family", "no-such", "--param", "3"});
    EXPECT_EQ(nlohmann::json::parse(family.out)["error"]["code"], "BadParams");
}

TEST(Cli, SimulateWritesTrace) {
    const fs::path trace = fs::temp_directory_path() / "hgv_cli_trace.csv";
    Result r = run({"simulate", "--family", "path", "--param", "3", "--noise", "target", "--tests", "25", "--eps", "0.1",
                    "--delta", "0.1", "--seed", "3", "--trace", trace.string()});
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(nlohmann::json::parse(r.out)["decision"], "accepted");
    const std::string csv = read_file(trace);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,set,outcome,passed");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 26);
    fs::remove(trace);
}
