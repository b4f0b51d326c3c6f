#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = EUCL_CLI;
const std::string kTmp = EUCL_TMP_DIR;

int run(const std::string& args)
{
    int st = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exit codes")
{
    CHECK(run("fields 91 3") == 0);
    CHECK(run("fields 0 3") == 1);
    CHECK(run("bogus") == 1);
    CHECK(run("qualify 7:6 x^3-x^2-4x-1") == 0);
    CHECK(run("qualify 91:3,8 7:6") == 2);
    CHECK(run("qualify 91:3,8 not-a-field") == 1);
    CHECK(run("qualify x^3-2 7:6") == 1);
    CHECK(run("--max-nodes 3 qualify x^3-x^2-72x-209 x^3-x^2-82x+64") == 3);
    CHECK(run("corollary 7 13 7 19") == 1);
    CHECK(run("corollary 7 13 19 23") == 1);
    CHECK(run("tables 7,x") == 1);
    CHECK(run("sieve --u1 3 --f 16 --X 10000") == 0);
    CHECK(run("sieve --u1 3 --f 4 --X 100") == 1);
}

TEST_CASE("fields listing")
{
    const std::string out = kTmp + "/cli_fields.json";
    REQUIRE(run("fields 91 3 --out " + out) == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("result").at("subfields").size() == 4);
    REQUIRE(run("fields 7 3 --out " + out) == 0);
    CHECK(nlohmann::json::parse(slurp(out)).at("result").at("subfields").size() == 1);
    REQUIRE(run("fields 16 3 --out " + out) == 0);
    CHECK(nlohmann::json::parse(slurp(out)).at("result").at("subfields").size() == 0);
}

TEST_CASE("qualify then verify")
{
    const std::string rep = kTmp + "/cli_qualify.json";
    const std::string ver = kTmp + "/cli_verify.json";
    REQUIRE(run("qualify x^3-x^2-72x-209 x^3-x^2-82x+64 --out " + rep) == 0);
    auto doc = nlohmann::json::parse(slurp(rep));
    CHECK(doc.at("result").at("conclusion") == "qualified");
    CHECK(doc.at("result").at("certificate").at("f") == "857584");
    REQUIRE(run("certificate-verify " + rep + " --out " + ver) == 0);
    CHECK(nlohmann::json::parse(slurp(ver)).at("result").at("valid") == true);

    // a tampered residue fails verification
    doc["result"]["certificate"]["d"] = "1";
    doc["result"]["certificate"]["u1"] = "1";
    {
        std::ofstream f(rep);
        f << doc.dump(2);
    }
    CHECK(run("certificate-verify " + rep + " --out " + ver) == 2);
    CHECK(nlohmann::json::parse(slurp(ver)).at("result").at("valid") == false);
}

TEST_CASE("sieve csv")
{
    const std::string out = kTmp + "/cli_sieve.csv";
    REQUIRE(run("sieve --u1 3 --f 16 --X 10000 --output csv --out " + out) == 0);
    auto text = slurp(out);
    CHECK(text.rfind("p,half_type,q1,sig1,sig2,sig3,winner\n", 0) == 0);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        long p = std::stol(line.substr(0, line.find(',')));
        CHECK(p % 16 == 3);
        CHECK(p < 10000);
    }
    CHECK(rows > 0);
}
