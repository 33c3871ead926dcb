#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "levy/cli.hpp"

namespace levy {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
  public:
    TempDir()
        : path_(fs::temp_directory_path() /
                ("levy-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name()))
    {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const
    {
        const fs::path p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Cli, HelpExitsZero)
{
    const auto r = invoke({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("experiment"), std::string::npos);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"bogus"}).code, kExitUsage);
    EXPECT_EQ(invoke({"experiment", "nonsense"}).code, kExitUsage);
    EXPECT_EQ(invoke({"simulate", "--paths", "abc"}).code, kExitUsage);
}

TEST(Cli, IncompatiblePriorIsAValidationError)
{
    TempDir dir;
    const auto cfg = dir.write("c.json", R"({"model": {"family": "gamma", "params": [1, 1]},
                                             "prior": {"atoms": [[1.5, 1]]}})");
    const auto r = invoke({"simulate", "--config", cfg});
    EXPECT_EQ(r.code, kExitInvalid);
    EXPECT_NE(r.err.find("IncompatibleSupport"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("prior"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ConfigErrorsNameTheKey)
{
    TempDir dir;
    const auto bad_family = dir.write("a.json", R"({"model": {"family": "cauchy"}})");
    auto r = invoke({"simulate", "--config", bad_family});
    EXPECT_EQ(r.code, kExitInvalid);
    EXPECT_NE(r.err.find("model.family"), std::string::npos) << r.err;

    const auto bad_json = dir.write("b.json", "{not json");
    r = invoke({"simulate", "--config", bad_json});
    EXPECT_EQ(r.code, kExitInvalid);
    EXPECT_NE(r.err.find("--config"), std::string::npos) << r.err;

    r = invoke({"simulate", "--threshold", "2"});
    EXPECT_EQ(r.code, kExitInvalid);
}

TEST(Cli, OutputHeader)
{
    const auto r = invoke({"simulate", "--seed", "7", "--paths", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "# levy-info 0.1.0");
    std::getline(lines, line);
    EXPECT_EQ(line, "# subcommand: simulate");
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("# config: {", 0), 0u) << line;
    std::getline(lines, line);
    EXPECT_EQ(line, "# seed: 7");
    std::getline(lines, line);
    EXPECT_EQ(line, "path_id,t,xi,x_hidden");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 2 * 101);
}

TEST(Cli, ExperimentRunsAreByteIdentical)
{
    TempDir dir;
    const std::vector<std::string> args{"experiment", "convergence", "--seed", "42", "--paths", "2000"};
    auto first = args;
    first.insert(first.end(), {"--output", dir.file("a.csv")});
    auto second = args;
    second.insert(second.end(), {"--output", dir.file("b.csv")});
    ASSERT_EQ(invoke(first).code, kExitOk);
    ASSERT_EQ(invoke(second).code, kExitOk);
    const std::string a = slurp(dir.file("a.csv"));
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir.file("b.csv")));
    EXPECT_NE(a.find("quantity,estimate,reference,stderr,z"), std::string::npos);
    EXPECT_NE(a.find("# summary: study=convergence passed=true"), std::string::npos);
}

TEST(Cli, StudyFailureExitCode)
{
    // A zero threshold fails any study with sampling noise.
    const auto r = invoke({"experiment", "bridge", "--paths", "500", "--threshold", "0"});
    EXPECT_EQ(r.code, kExitStudyFailed);
    EXPECT_NE(r.out.find("passed=false"), std::string::npos);
}

TEST(Cli, FilterReadsObservations)
{
    TempDir dir;
    const auto obs = dir.write("obs.csv", "# comment\nt,xi\n0,0\n1,2\n");
    const auto cfg = dir.write("c.json", R"({"model": {"family": "poisson", "params": [1]},
                                             "prior": {"atoms": [[0, 1], [0.6931471805599453, 1]]}})");
    const auto r = invoke({"filter", "--config", cfg, "--input", obs, "--weights"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("t,xi,post_mean,post_var,i0_estimate,w_0,w_1"), std::string::npos);
    const auto last = r.out.substr(r.out.rfind("\n1,2,"));
    const double ratio = 4.0 / std::exp(1.0);
    std::istringstream cells(last.substr(1));
    std::string cell;
    std::vector<std::string> v;
    while (std::getline(cells, cell, ',')) v.push_back(cell);
    ASSERT_EQ(v.size(), 7u);
    EXPECT_NEAR(std::stod(v[6]), ratio / (1 + ratio), 1e-14);
    EXPECT_NEAR(std::stod(v[4]), std::log(2.0), 1e-14);
}

TEST(Cli, FilterAndInnovationsOnSimulatedPath)
{
    TempDir dir;
    ASSERT_EQ(invoke({"simulate", "--paths", "1", "--output", dir.file("p.csv")}).code, kExitOk);
    const auto f = invoke({"filter", "--input", dir.file("p.csv")});
    EXPECT_EQ(f.code, kExitOk) << f.err;
    const auto i = invoke({"innovations", "--input", dir.file("p.csv")});
    EXPECT_EQ(i.code, kExitOk) << i.err;
    EXPECT_NE(i.out.find("t,xi,yhat,int_yhat,M"), std::string::npos);
}

}  // namespace
}  // namespace levy
