#include <doctest.h>

#include <regex>
#include <sstream>

#include "qsid/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = qsid::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string without_time(const std::string& s)
{
    return std::regex_replace(s, std::regex("\"wall_time_ms\":[0-9.eE+-]+"), "\"wall_time_ms\":0");
}

} // namespace

TEST_CASE("list")
{
    auto r = call({"list"});
    CHECK(r.code == 0);
    CHECK(r.out.find("thm_2_1") != std::string::npos);
    CHECK(r.out.find("[conjectural]") != std::string::npos);
}

TEST_CASE("verify exit codes")
{
    CHECK(call({"verify", "--id", "thm_2_1", "--param", "g=4", "--param", "s=3", "--order", "30"}).code == 0);
    auto dom = call({"verify", "--id", "thm_2_1", "--param", "g=1", "--param", "s=9", "--order", "30"});
    CHECK(dom.code == 2);
    CHECK(dom.err.find("domain error") != std::string::npos);
    CHECK(call({"verify", "--id", "thm_2_1", "--param", "g=x", "--order", "30"}).code == 2);
    CHECK(call({"verify", "--id", "thm_2_1", "--param", "g", "--order", "30"}).code == 2);
    CHECK(call({"verify", "--id", "nope", "--order", "30"}).code == 2);
    CHECK(call({"verify", "--id", "m37_1", "--order", "0"}).code == 2);
    CHECK(call({"verify", "--id", "m37_1"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
}

TEST_CASE("verify json is stable")
{
    std::vector<std::string> args{"verify", "--id", "rogers_3", "--order", "40", "--json"};
    auto a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(without_time(a.out) == without_time(b.out));
    CHECK(a.out.rfind("{\"id\":\"rogers_3\",\"params\":{},\"D\":", 0) == 0);
    CHECK(a.out.find("\"status\":\"verified\"") != std::string::npos);

    auto c = call({"verify", "--id", "asw_2", "--order", "10", "--json"});
    CHECK(c.out.find("\"conjectural\":true") != std::string::npos);
}

TEST_CASE("series")
{
    auto r = call({"series", "--expr", "1 / (q;q)_inf", "--order", "5", "--csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "t_exponent,q_exponent,coefficient\n0,0,1\n1,1,1\n2,2,2\n3,3,3\n4,4,5\n5,5,7\n");

    auto p5 = call({"series", "--expr", "(q^5;q^5)_inf / (q;q)_inf", "--order", "5", "--csv"});
    CHECK(p5.code == 0);
    CHECK(p5.out == "t_exponent,q_exponent,coefficient\n0,0,1\n1,1,1\n2,2,2\n3,3,3\n4,4,5\n5,5,6\n");

    auto h = call({"series", "--expr", "(-q^(1/2);q)_2", "--order", "2"});
    CHECK(h.code == 0);
    CHECK(h.out.find("q^(1/2)") != std::string::npos);

    auto bad = call({"series", "--expr", "(q;q", "--order", "5"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("parse error") != std::string::npos);
}

TEST_CASE("suite")
{
    auto r = call({"suite", "--order", "8", "--cap", "g=1", "--cap", "h=1", "--cap", "k=2", "--cap", "P=2",
                   "--cap", "pq=10", "--cap", "pp=5", "--threads", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 discrepancies, 0 errors") != std::string::npos);
    CHECK(call({"suite", "--cap", "zz=1"}).code == 2);
    CHECK(call({"suite", "--cap", "g=-1"}).code == 2);
}

TEST_CASE("dump-form")
{
    auto r = call({"dump-form", "--id", "thm_2_1", "--param", "g=2", "--param", "s=1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"chain_len\"") != std::string::npos);
    CHECK(call({"dump-form", "--id", "nope"}).code == 2);
}
