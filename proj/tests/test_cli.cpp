#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cenormal/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cenormal::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cenormal_test_" + name);
}

}  // namespace

TEST_CASE("digits command") {
    auto r = run({"digits", "--spec", "naturals", "--base", "10", "--c", "1", "--n", "25"});
    CHECK(r.code == 0);
    CHECK(r.out == "1234567891011121314151617\n");
    CHECK(run({"digits", "--spec", "composites", "--base", "10", "--c", "1", "--n", "26"}).out ==
          "46891012141516182021222425\n");
    CHECK(run({"digits", "--spec", "naturals", "--base", "2", "--c", "1", "--n", "5"}).out == "11011\n");
    // decimal c is exact: 1.5 == 3/2
    CHECK(run({"digits", "--base", "2", "--c", "1.5", "--n", "12"}).out ==
          run({"digits", "--base", "2", "--c", "3/2", "--n", "12"}).out);
    // alphanumerics up to base 36, comma-separated values beyond
    CHECK(run({"digits", "--base", "16", "--n", "18"}).out == "123456789abcdef101\n");
    CHECK(run({"digits", "--base", "100", "--n", "5", "--spec", "poly:0,0,1"}).out == "1,4,9,16,25\n");
}

TEST_CASE("digits across the internal emission chunk size") {
    auto r = run({"digits", "--base", "1000", "--n", "70000"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), ',') == 69'999);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"digits", "--spec", "evens", "--n", "5"}).code == 2);
    CHECK(run({"digits", "--base", "1", "--n", "5"}).code == 2);
    CHECK(run({"digits", "--c", "1/2", "--n", "5"}).code == 2);
    CHECK(run({"digits", "--c", "abc", "--n", "5"}).code == 2);
    CHECK(run({"digits"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    auto r = run({"digits", "--spec", "evens", "--n", "5"});
    CHECK(r.err.find("evens") != std::string::npos);
}

TEST_CASE("resource caps exit with 3") {
    CHECK(run({"digits", "--n", "1001", "--max-digits", "1000"}).code == 3);
    CHECK(run({"threshold", "--xs", "1e9"}).code == 3);
    CHECK(run({"verify", "--bases", "10", "--cs", "1", "--k-range", "1..9"}).code == 3);
}

TEST_CASE("count command") {
    auto r = run({"count", "--base", "2", "--n", "17"});
    CHECK(r.code == 0);
    CHECK(r.out == "digit,count\n0,5\n1,12\n");
    CHECK(run({"count", "--base", "7", "--c", "4/3", "--spec", "primes", "--n", "123456", "--jobs", "4"}).out ==
          run({"count", "--base", "7", "--c", "4/3", "--spec", "primes", "--n", "123456"}).out);
}

TEST_CASE("checkpoint and resume through the CLI") {
    auto cp = temp_path("cp.txt");
    auto r1 = run({"digits", "--spec", "primes", "--base", "10", "--c", "3/2", "--n", "40", "--checkpoint-out", cp.string()});
    CHECK(r1.code == 0);
    CHECK(slurp(cp).rfind("position=40 ", 0) == 0);
    auto r2 = run({"digits", "--resume", cp.string(), "--n", "60"});
    CHECK(r2.code == 0);
    auto whole = run({"digits", "--spec", "primes", "--base", "10", "--c", "3/2", "--n", "100"});
    CHECK(r1.out.substr(0, 40) + r2.out == whole.out);

    std::ofstream(cp) << "position=garbage\n";
    CHECK(run({"digits", "--resume", cp.string(), "--n", "5"}).code == 2);
    std::filesystem::remove(cp);
}

TEST_CASE("trajectory command") {
    auto r = run({"trajectory", "--spec", "naturals", "--base", "2", "--k-range", "3..3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,count,discrepancy_num,discrepancy_den,statistic\n17,12,7,2,", 0) == 0);
    CHECK(r.err == "lil_bound(2)=0.5\n");

    auto dec = run({"trajectory", "--checkpoints", "25", "--symbol", "1"});
    CHECK(dec.out.find("\n25,10,") != std::string::npos);

    auto empty = run({"trajectory", "--checkpoints", ""});
    CHECK(empty.code == 0);
    CHECK(empty.out == "n,count,discrepancy_num,discrepancy_den,statistic\n");

    CHECK(run({"trajectory", "--checkpoints", "15"}).code == 2);
    CHECK(run({"trajectory", "--checkpoints", "30,20"}).code == 2);
    CHECK(run({"trajectory", "--checkpoints", "30", "--k-range", "2..3"}).code == 2);
    CHECK(run({"trajectory", "--symbol", "10", "--checkpoints", "30"}).code == 2);

    auto csv = temp_path("traj.csv");
    auto to_file = run({"trajectory", "--base", "2", "--k-range", "4..12", "--out", csv.string()});
    CHECK(to_file.code == 0);
    CHECK(to_file.out == "lil_bound(2)=0.5\n");
    std::string first = slurp(csv);
    CHECK(run({"trajectory", "--base", "2", "--k-range", "4..12", "--out", csv.string()}).code == 0);
    CHECK(slurp(csv) == first);  // deterministic
    std::filesystem::remove(csv);
}

TEST_CASE("verify command") {
    auto csv = temp_path("verify.csv");
    auto ok = run({"verify", "--bases", "2", "--cs", "1", "--k-range", "1..10", "--csv", csv.string()});
    CHECK(ok.code == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("b,c_num,c_den,k,d_exact,d_stream,ones_exact,ones_stream,match\n", 0) == 0);
    CHECK(text.find("\n2,1,1,3,17,17,12,12,true\n") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 11);

    auto bad = run({"verify", "--bases", "2", "--cs", "1", "--k-range", "1..4", "--inject-fault"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("b=2, c=1, k=1") != std::string::npos);

    // canonical order regardless of how the grid was listed or how many workers ran it
    auto a = run({"verify", "--bases", "10,2", "--cs", "2,1", "--max-digits", "1e5", "--jobs", "4"});
    auto b = run({"verify", "--bases", "2,10", "--cs", "1,2", "--max-digits", "1e5"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::filesystem::remove(csv);
}

TEST_CASE("threshold command") {
    auto r = run({"threshold", "--base", "10", "--c", "1", "--spec", "primes", "--xs", "1e6,1e7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1.048955") != std::string::npos);
    CHECK(r.out.find("1.084490") != std::string::npos);
    CHECK(r.out.find("1.071175") != std::string::npos);
    CHECK(r.out.find("not decidable") != std::string::npos);

    auto b2 = run({"threshold", "--base", "2", "--c", "1"});
    CHECK(b2.out.find("0.3465735903") != std::string::npos);

    auto none = run({"threshold", "--spec", "explicit:", "--xs", "100,1000"});
    CHECK(none.out.find("0.000000") != std::string::npos);
}

TEST_CASE("report command") {
    auto r = run({"report", "--max-digits", "1e4", "--xs", "1e5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("natural logarithm") != std::string::npos);
    CHECK(r.out.find("fitted C") != std::string::npos);
}
