#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args)
{
    std::string cmd = std::string(PARITY_CLI) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return {};
    Run r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe.release());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string graph(const char* name) { return std::string(FIXTURE_DIR) + "/graphs/" + name + ".graph"; }
std::string assignment(const char* name) { return std::string(FIXTURE_DIR) + "/assignments/" + name + ".j"; }

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

} // namespace

TEST(Cli, CheckIncompatibleK23)
{
    auto r = cli("check " + graph("k23") + " " + assignment("all_odd"));
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "INCOMPATIBLE\ns 3\nx even odd 4 1 2 4 5\nx even odd 4 1 3 4 6\nx even odd 4 2 3 5 6\nt odd even\n");
}

TEST(Cli, CheckCompatiblePrintsOrientation)
{
    auto r = cli("check " + graph("c4") + " " + assignment("all_odd"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(starts_with(r.out, "COMPATIBLE\na 1 "));
}

TEST(Cli, PartialAssignmentNeedsDefault)
{
    EXPECT_EQ(cli("check " + graph("k4") + " " + assignment("k4_partial")).code, 2);
    auto r = cli("check " + graph("k4") + " " + assignment("k4_partial") + " --default-parity odd");
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(starts_with(r.out, "INCOMPATIBLE\n"));
    auto even = cli("check " + graph("k4") + " " + assignment("k4_partial") + " --default-parity even");
    EXPECT_EQ(even.code, 1);
    EXPECT_NE(even.out, r.out);
}

TEST(Cli, ErrorsExitTwo)
{
    EXPECT_EQ(cli("check " + graph("malformed") + " " + assignment("all_odd")).code, 2);
    EXPECT_EQ(cli("check /nonexistent.graph " + assignment("all_odd")).code, 2);
    EXPECT_EQ(cli("bogus").code, 2);
    EXPECT_EQ(cli("scan " + graph("k23")).code, 2);
    EXPECT_EQ(cli("scan " + graph("k23") + " --all-odd --all-even").code, 2);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, MalformedGraphNamesLine)
{
    std::string cmd = std::string(PARITY_CLI) + " check " + graph("malformed") + " " + assignment("all_odd") + " 2>&1";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::array<char, 512> buf{};
    std::string err;
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) err.append(buf.data(), n);
    EXPECT_NE(err.find("line 3"), std::string::npos) << err;
}

TEST(Cli, ScanModes)
{
    auto o1 = cli("scan " + graph("k23") + " " + assignment("all_odd") + " --cross-check");
    EXPECT_EQ(o1.code, 1);
    EXPECT_TRUE(starts_with(o1.out, "WITNESS O1\nh 6 1 2 3 4 5 6\n"));

    auto e1 = cli("scan " + graph("k4") + " --all-even");
    EXPECT_EQ(e1.code, 1);
    EXPECT_TRUE(starts_with(e1.out, "WITNESS E1\n"));
    EXPECT_NE(e1.out.find("\no 3 "), std::string::npos);

    auto none = cli("scan " + graph("k23") + " --all-even --cross-check");
    EXPECT_EQ(none.code, 0);
    EXPECT_EQ(none.out, "NO-WITNESS\n");

    auto o2 = cli("scan " + std::string(FIXTURE_DIR) + "/catalog/O2.graph --all-odd");
    EXPECT_EQ(o2.code, 1);
    EXPECT_NE(o2.out.find("\no 3 1 2 3\n"), std::string::npos);
    EXPECT_EQ(cli("scan " + std::string(FIXTURE_DIR) + "/catalog/O2.graph --all-odd --no-odd-contraction").code, 0);
}

TEST(Cli, Decompose)
{
    auto k4 = cli("decompose " + graph("k4") + " --validate");
    EXPECT_EQ(k4.code, 0);
    EXPECT_TRUE(starts_with(k4.out, "DECOMPOSITION 2\nb 4 "));
    EXPECT_NE(k4.out.find("\ni 1 2 4 "), std::string::npos);
    EXPECT_NE(k4.out.find("VALID\n"), std::string::npos);

    auto tree = cli("decompose " + graph("tree"));
    EXPECT_EQ(tree.code, 1);
    EXPECT_TRUE(starts_with(tree.out, "NOT-EVEN-CIRCUIT-CONNECTED\nw "));
}

TEST(Cli, Pfaffian)
{
    auto grid = cli("pfaffian " + graph("grid2x3") + " --brute-check");
    EXPECT_EQ(grid.code, 0);
    EXPECT_TRUE(starts_with(grid.out, "PFAFFIAN\n"));
    EXPECT_NE(grid.out.find("\nn 3\n"), std::string::npos);

    auto big = cli("pfaffian " + graph("grid4x4"));
    EXPECT_EQ(big.code, 0);
    EXPECT_NE(big.out.find("\nn 36\n"), std::string::npos);
    EXPECT_EQ(cli("pfaffian " + graph("grid4x4") + " --max-matchings 5").code, 2);

    auto k33 = cli("pfaffian " + graph("k33") + " --brute-check");
    EXPECT_EQ(k33.code, 1);
    EXPECT_TRUE(starts_with(k33.out, "NOT-PFAFFIAN\ns 3\n"));
}

TEST(Cli, CatalogEmitMatchesFixtures)
{
    auto list = cli("catalog list");
    EXPECT_EQ(list.code, 0);
    EXPECT_EQ(std::count(list.out.begin(), list.out.end(), '\n'), 14);
    for (const auto& entry : std::filesystem::directory_iterator(std::string(FIXTURE_DIR) + "/catalog")) {
        std::ifstream in(entry.path());
        std::stringstream s;
        s << in.rdbuf();
        EXPECT_EQ(cli("catalog emit " + entry.path().stem().string()).out, s.str()) << entry.path();
    }
    EXPECT_EQ(cli("catalog emit Z9").code, 2);
    EXPECT_EQ(cli("catalog selfcheck").code, 0);
}

TEST(Cli, OutputIsDeterministic)
{
    for (const std::string& args : {"check " + graph("grid4x4") + " " + assignment("all_odd"),
                                   "scan " + graph("k4") + " --all-even", "decompose " + graph("grid2x3"),
                                   "pfaffian " + graph("grid4x4"), std::string("corpus --count 20 --seed 9")})
        EXPECT_EQ(cli(args).out, cli(args).out) << args;
    EXPECT_EQ(cli("corpus --count 12 --jobs 1").out, cli("corpus --count 12 --jobs 4").out);
}

TEST(Cli, CorpusAgrees)
{
    auto r = cli("corpus --small --max-vertices 4 --max-edges 6");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("disagreements 0\n"), std::string::npos);
}

TEST(Cli, DotGoesToFile)
{
    auto path = std::filesystem::temp_directory_path() / "parity_cli_test.dot";
    std::filesystem::remove(path);
    auto with = cli("check " + graph("c4") + " " + assignment("all_odd") + " --dot " + path.string());
    auto without = cli("check " + graph("c4") + " " + assignment("all_odd"));
    EXPECT_EQ(with.out, without.out);
    ASSERT_TRUE(std::filesystem::exists(path));
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first, "digraph G {");
    std::filesystem::remove(path);
}
