#include "cli.hpp"
#include "desconf/error.hpp"
#include "desconf/json_io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using desconf::Json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = desconf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << contents;
    return path;
}

const char* kCompressor = "0,0,0,1;1,0,0,1;0,1,0,1;0,0,1,1;2,2,2,1";

}  // namespace

TEST(Cli, CountExamples) {
    auto r = run({"count", "--quantity", "TOTAL_PLANAR", "--q", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["closed_form"], "234");
    EXPECT_TRUE(r.json()["brute_force"].is_null());
    r = run({"count", "--quantity", "TOTAL_PLANAR", "--q", "2"});
    EXPECT_EQ(r.json()["closed_form"], "0");
    r = run({"count", "--quantity", "ALL", "--q", "2,3", "--format", "tsv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("TOTAL_SPATIAL\t3\t101088\n"), std::string::npos);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 15);
}

TEST(Cli, OracleExamples) {
    auto r = run({"oracle", "--quantity", "TOTAL_SPATIAL", "--q", "2", "--no-timing"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["brute_force"], "168");
    EXPECT_EQ(r.json()["agree"], true);
    EXPECT_FALSE(r.json().contains("elapsed_ms"));
    r = run({"oracle", "--quantity", "NAIVE_PLANAR_THROUGH_POINT", "--q", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.json()["agree"], false);
    EXPECT_EQ(r.json()["expected_disagreement"], true);
}

TEST(Cli, DeterministicOutput) {
    const std::vector<std::vector<std::string>> invocations{
        {"oracle", "--quantity", "TOTAL_PLANAR", "--q", "3", "--no-timing"},
        {"verify", "--suite", "desargues-theorem", "--q", "4", "--samples", "500", "--no-timing"},
        {"verify", "--suite", "sc-bounds", "--q", "3", "--no-timing"},
        {"twoblock"},
        {"section", "--q", "3", "--compressor", kCompressor},
    };
    for (const auto& args : invocations) {
        const Outcome a = run(args);
        const Outcome b = run(args);
        EXPECT_EQ(a.out, b.out);
        auto jobs = args;
        jobs.insert(jobs.end(), {"--jobs", "3"});
        if (args[0] != "section") EXPECT_EQ(run(jobs).out, a.out);
    }
    const Outcome s1 = run({"verify", "--suite", "desargues-theorem", "--q", "5", "--samples", "200", "--seed", "1", "--no-timing"});
    const Outcome s2 = run({"verify", "--suite", "desargues-theorem", "--q", "5", "--samples", "200", "--seed", "2", "--no-timing"});
    EXPECT_EQ(s1.code, 0);
    EXPECT_NE(s1.json()["details"], s2.json()["details"]);
}

TEST(Cli, InjectedFaultsFailEverySuite) {
    for (const char* suite : {"desargues-theorem", "lift-uniqueness", "blockline-injectivity", "sc-bounds"}) {
        const Outcome r = run({"verify", "--suite", suite, "--q", "3", "--inject-fault", "2,2,2", "--no-timing"});
        EXPECT_EQ(r.code, 1) << suite << r.err;
        EXPECT_FALSE(r.json()["counterexample"].is_null());
    }
    for (unsigned a = 1; a < 5; ++a) {
        for (unsigned b = a; b < 5; ++b) {
            const unsigned right = a * b % 5;
            const unsigned wrong = (right + 1) % 5;
            const Outcome r = run({"verify", "--suite", "desargues-theorem", "--q", "5", "--samples", "100", "--inject-fault",
                               std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(wrong)});
            EXPECT_EQ(r.code, 1) << a << "*" << b;
        }
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"count", "--quantity", "NOPE", "--q", "3"}).code, 2);
    EXPECT_EQ(run({"count", "--quantity", "TOTAL_PLANAR", "--q", "6"}).code, 2);
    const Outcome scale = run({"oracle", "--quantity", "TOTAL_PLANAR", "--q", "5"});
    EXPECT_EQ(scale.code, 2);
    EXPECT_NE(scale.err.find("ScaleLimit"), std::string::npos);
    EXPECT_EQ(run({"verify", "--suite", "nope", "--q", "3"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "identities", "--q", "3"}).code, 0);
    EXPECT_EQ(run({"section", "--q", "3", "--compressor", "1,0,0,0;0,1,0,0"}).code, 2);
    const std::string limits = temp_file("limits.conf", "planar_global_max_q=5\n");
    EXPECT_EQ(run({"oracle", "--quantity", "P5_CHOICES", "--q", "3", "--limits", limits}).code, 0);
    const std::string tight = temp_file("tight.conf", "p5_max_q=2\n");
    EXPECT_EQ(run({"oracle", "--quantity", "P5_CHOICES", "--q", "3", "--limits", tight}).code, 2);
    EXPECT_EQ(run({"count", "--help"}).code, 0);
}

TEST(Cli, SectionInspectLift) {
    const Outcome section = run({"section", "--q", "3", "--compressor", kCompressor});
    ASSERT_EQ(section.code, 0) << section.err;
    const Json d = section.json();
    EXPECT_EQ(d["n"], 2);
    EXPECT_EQ(d["points"].size(), 10u);
    EXPECT_EQ(d["blocks"].size(), 10u);
    const std::string path = temp_file("config.json", section.out);

    const Outcome insp = run({"inspect", "--config", path});
    ASSERT_EQ(insp.code, 0) << insp.err;
    EXPECT_EQ(insp.json()["self_conjugate"], d["self_conjugate"]);
    EXPECT_EQ(insp.json()["spatial"], false);

    const Outcome lift = run({"lift", "--config", path, "--vertex", "12", "--apex", "0,0,0,1;1,0,0,1"});
    ASSERT_EQ(lift.code, 0) << lift.err;
    const Json lifts = lift.json()["lifts"];
    ASSERT_EQ(lifts.size(), 2u);
    bool recovered = false;
    for (const auto& s : lifts) {
        const Outcome back = run({"section", "--q", "3", "--compressor",
                              s["points"][0].get<std::string>() + ";" + s["points"][1].get<std::string>() + ";" +
                                  s["points"][2].get<std::string>() + ";" + s["points"][3].get<std::string>() + ";" +
                                  s["points"][4].get<std::string>()});
        ASSERT_EQ(back.code, 0);
        std::vector<std::string> a, b;
        const Json sectioned = back.json();
        for (const auto& [k, v] : sectioned["points"].items()) a.push_back(v);
        for (const auto& [k, v] : d["points"].items()) b.push_back(v);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b);
        recovered |= s["points"][4] == "1,1,1,2";
    }
    EXPECT_TRUE(recovered);
    EXPECT_EQ(run({"lift", "--config", path, "--vertex", "12", "--apex", "0,0,0,1;0,1,1,1"}).code, 2);
}

TEST(Cli, OutputFileAndFieldSpec) {
    const std::string path = ::testing::TempDir() + "count.json";
    ASSERT_EQ(run({"count", "--quantity", "THETA_PLANAR", "--q", "4", "--output", path}).code, 0);
    std::ifstream in(path);
    EXPECT_EQ(Json::parse(in)["closed_form"], "9600");
    const Outcome r = run({"section", "--field", "2^2/1,1,1", "--compressor",
                       "0,0,0,1;1,0,0,1;0,1,0,1;0,0,1,1;2,2,2,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["field"], "2^2/1,1,1");
    EXPECT_EQ(run({"verify", "--suite", "desargues-theorem", "--q", "4", "--field", "3"}).code, 2);
}

TEST(Json, ConfigurationRoundTripAndErrors) {
    const Outcome section = run({"section", "--q", "3", "--compressor", kCompressor});
    const Json doc = section.json();
    const auto d = desconf::configuration_from_json(doc);
    EXPECT_EQ(desconf::to_json(d), doc);
    Json broken = doc;
    broken["points"].erase("45");
    EXPECT_THROW(desconf::configuration_from_json(broken), desconf::Error);
    broken = doc;
    broken["blocks"][0] = Json::array({"12", "13", "45"});
    EXPECT_THROW(desconf::configuration_from_json(broken), desconf::Error);
    broken = doc;
    broken["points"]["12"] = "0,1,0";
    EXPECT_THROW(desconf::configuration_from_json(broken), desconf::Error);
    EXPECT_THROW(desconf::configuration_from_json(Json::array()), desconf::Error);
}
