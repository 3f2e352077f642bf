#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

#include "markov/cli.hpp"

using markov::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
    const char* dir = std::getenv("MARKOV_DATA_DIR");
    return std::string(dir ? dir : "data") + "/" + name;
}

}  // namespace

TEST_CASE("eval prints the exact interval first") {
    CHECK(call({"eval", data("lemma1.fn"), "1/2"}).out.rfind("[1/2, 1]", 0) == 0);
    CHECK(call({"eval", data("lemma1.fn"), "1/2*sqrt2"}).out.rfind("[0, 1+1/2*sqrt2]", 0) == 0);
    CHECK(call({"eval", data("degenerate.fn"), "3"}).out.rfind("[5, 5]", 0) == 0);
    CHECK(call({"eval", "@lemma1", "-1/3"}).out.rfind("[-1/3, 1]", 0) == 0);
    const Outcome j = call({"eval", data("smooth.fn"), "1/2", "--json"});
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["value"]["lo"] == "1/2");
    CHECK(parsed["value"]["hi"] == "5/4");
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"eval", data("missing.fn"), "0"}).code == 2);
    CHECK(call({"eval", data("lemma1.fn"), "1/0"}).code == 2);
    CHECK(call({"eval", data("lemma1.fn"), "zero"}).code == 2);
    CHECK(call({"eval", "@nope", "0"}).code == 2);
    CHECK(call({"diff", "@lemma1", "0", "--side", "up"}).code == 2);
    CHECK(call({"diff", "@lemma1", "0", "--depth", "3"}).code == 2);
    CHECK(call({"diff", "@lemma1", "0", "--mode", "fast"}).code == 2);
    CHECK(call({"scan", "@lemma1", "0", "-n", "8"}).code == 2);

    const Outcome outside = call({"eval", data("lemma1.fn"), "2"});
    CHECK(outside.code == 3);
    CHECK(outside.out.empty());
    CHECK(outside.err.find("outside the domain") != std::string::npos);
    CHECK(call({"eval", data("crossed.fn"), "3/4"}).code == 3);
    CHECK(call({"diff", "@lemma1", "1"}).code == 3);

    // Nonexistence is a result, not an error.
    CHECK(call({"diff", "@jump", "0"}).code == 0);
    CHECK(call({"classify", "@lemma1", "0"}).code == 0);
}

TEST_CASE("diff and classify JSON is deterministic") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"diff", data("abs_pair.fn"), "0", "--json"},
          std::vector<std::string>{"diff", data("lemma1.fn"), "0", "--json", "--side", "right"},
          std::vector<std::string>{"classify", data("lemma1.fn"), "0", "--json"},
          std::vector<std::string>{"classify", data("smooth.fn"), "1/3", "--json", "--mode", "float"}}) {
        const Outcome a = call(args);
        const Outcome b = call(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(nlohmann::json::accept(a.out));
    }
    const auto j = nlohmann::json::parse(call({"diff", data("abs_pair.fn"), "0", "--json"}).out);
    CHECK(j["verdict"] == "EXISTS");
    CHECK(j["exact"] == true);
    CHECK(j["value"]["lo"] == "-1");
    CHECK(j["value"]["hi"] == "1");
    const auto c = nlohmann::json::parse(call({"classify", data("lemma1.fn"), "0", "--json"}).out);
    CHECK(c["case"] == "CASE_C_BEYOND_THEOREM1");
}

TEST_CASE("diff flags reach the ladder configuration") {
    const auto j = nlohmann::json::parse(call({"diff", "@smooth", "0", "--json", "--depth", "9", "--mode", "float"}).out);
    for (const auto& ladder : j["ladders"]) CHECK(ladder["trace"].size() <= 9);
    const auto right = nlohmann::json::parse(call({"diff", "@jump", "0", "--json", "--side", "right"}).out);
    for (const auto& ladder : right["ladders"]) CHECK(ladder["side"] == "right");
    const Outcome verified = call({"diff", "@abs_pair", "0", "--verify"});
    CHECK(verified.code == 0);
}

TEST_CASE("scan writes CSV") {
    const Outcome s = call({"scan", "@lemma1", "0"});
    CHECK(s.code == 0);
    CHECK(s.out.rfind("t_float,lo_float,hi_float,t_exact,lo_exact,hi_exact\n0.25,0,1,1/4,0,1\n", 0) == 0);
    CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 65);
}

TEST_CASE("demos") {
    for (const char* name : {"lemma1", "theorem2", "dpm", "lemcont"}) {
        const Outcome d = call({"demo", name});
        CHECK_MESSAGE(d.code == 0, name, ": ", d.err);
        CHECK_FALSE(d.out.empty());
    }
    const Outcome lemma = call({"demo", "lemma1"});
    CHECK(lemma.out.find("CASE_C_BEYOND_THEOREM1") != std::string::npos);
    CHECK(call({"demo", "nope"}).code == 2);
}
