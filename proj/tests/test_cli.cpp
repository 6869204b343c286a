#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eqgraph/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = eqgraph::cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/eqgraph_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("adjacency queries") {
    Run r = cli({"adj", "e0", "1,1;0", "0,1;0"});
    CHECK(r.code == 0);
    CHECK(r.out == "adjacent: true\n");
    CHECK(cli({"adj", "vitali", "1/2", "3/2"}).out == "adjacent: true\n");
    CHECK(cli({"adj", "oneequiv", ";0", ";1"}).out == "adjacent: refuted\n");
    CHECK(cli({"adj", "oneequiv", "1;0", "0,1;0"}).out == "adjacent: unknown\n");
    CHECK(cli({"adj", "universal", "3", "3,5,8"}).out == "adjacent: true\n");
    CHECK(cli({"adj", "product", "1;0|0;5", "1;0|1;5"}).out == "adjacent: verified\n");
}

TEST_CASE("json output carries a schema version") {
    Run r = cli({"--format", "json", "adj", "e0", "1,1;0", "0,1;0"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["adjacent"] == true);
}

TEST_CASE("witness commands") {
    Run r = cli({"witness", "e0", "1,1;0", ";0"});
    CHECK(r.code == 0);
    CHECK(r.out == "witness: 0,1;0\n");
    CHECK(cli({"witness", "vitali", "0", "1/2"}).out == "witness: 3/2\n");
    // missing hints are a usage error
    CHECK(cli({"witness", "oneequiv", "1;0", "0,1;0"}).code == 2);
    // equal inputs are a domain error
    CHECK(cli({"witness", "e0", "1;0", "1;0"}).code == 3);
}

TEST_CASE("vm commands") {
    std::string prog = write_temp("succ.vm", "inc r0\nhalt\n");
    Run enc = cli({"vm", "encode", "--program", prog});
    CHECK(enc.code == 0);
    std::string code_text = enc.out.substr(0, enc.out.size() - 1);
    Run ran = cli({"vm", "run", "--code", code_text, "--input", "3"});
    CHECK(ran.out == "halted: 4\n");
    Run dec = cli({"vm", "decode", "--code", code_text});
    CHECK(dec.out.find("inc r0") != std::string::npos);
    CHECK(cli({"vm", "run", "--code", "0", "--input", "1", "--fuel", "500"}).out ==
          "out of fuel\n");
    CHECK(cli({"vm", "run", "--input", "1"}).code == 2);
}

TEST_CASE("indexrel commands") {
    Run w = cli({"indexrel", "witness", "2", "3", "5", "--spec", "sum"});
    CHECK(w.code == 0);
    std::string e = w.out.substr(w.out.find(": ") + 2);
    e.pop_back();
    CHECK(cli({"indexrel", "adj", "2", e, "--spec", "sum"}).out == "adjacent: true\n");
    CHECK(cli({"indexrel", "adj", "3", e, "--spec", "sum"}).out == "adjacent: true\n");
    CHECK(cli({"indexrel", "witness", "2", "3", "9", "--spec", "sum"}).code == 3);
    CHECK(cli({"indexrel", "adj", "2", "4", "--spec", "bogus"}).code == 2);
}

TEST_CASE("structure commands") {
    std::string eq = write_temp(
        "eq.json", R"({"relations":[{"arity":2,"default":"eq 0 1","exceptions":[]}]})");
    CHECK(cli({"struct", "synth", eq, "0"}).out == "eq 0 1\n");
    CHECK(cli({"struct", "eval", eq, "0", "3,3"}).out == "true\n");
    CHECK(cli({"struct", "badcoding", eq}).out == "bad coding\n");
    std::string pt = write_temp(
        "pt.json", R"({"relations":[{"arity":1,"default":"bot","exceptions":[[0]]}]})");
    CHECK(cli({"struct", "coding", pt, "0", "1:0"}).out == "coding\n");
    CHECK(cli({"struct", "synth", pt, "0"}).code == 3);
    Run pushed = cli({"struct", "pushforward", pt, "0-1"});
    CHECK(pushed.code == 0);
    CHECK(pushed.out.find("[[1]]") != std::string::npos);

    std::string pt2 = write_temp(
        "pt2.json", R"({"relations":[{"arity":1,"default":"bot","exceptions":[[1]]}]})");
    CHECK(cli({"struct", "ciso-adj", pt, pt2}).out == "adjacent: unknown\n");
    Run wit = cli({"struct", "ciso-witness", pt, pt2, "--hint", "521"});
    CHECK(wit.code == 0);
    CHECK(wit.out.find("change point") != std::string::npos);
}

TEST_CASE("jump commands") {
    std::string space = write_temp(
        "space.json", R"({"size":3,"blocks":[[0,1,2]],"edges":[[0,1],[1,2]]})");
    CHECK(cli({"jump", "dist", space, ";0", ";2"}).out == "distance: 2\n");
    CHECK(cli({"jump", "adj", space, ";0", ";1"}).out == "adjacent: true\n");
    Run path = cli({"jump", "path", space, ";0", ";2"});
    CHECK(path.code == 0);
    CHECK(path.out.find(";0\n") == 0);
    Run bpath = cli({"jump", "borel-path", space, ";0", ";2"});
    CHECK(bpath.code == 0);
    // a path between inequivalent sequences is a domain error
    std::string split = write_temp(
        "split.json", R"({"size":2,"blocks":[[0],[1]],"edges":[]})");
    CHECK(cli({"jump", "path", split, ";0", ";1"}).code == 3);
}

TEST_CASE("explain") {
    Run r = cli({"explain", "oneequiv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("clause (i)") != std::string::npos);
    CHECK(r.out.find("S(n)") != std::string::npos);
    CHECK(cli({"explain", "vitali"}).out.find("enumeration") != std::string::npos);
    CHECK(cli({"explain", "jump"}).out.find("Claim") != std::string::npos);
    CHECK(cli({"explain", "warp-drive"}).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"adj", "e0", "1,1;0"}).code == 2);           // missing operand
    CHECK(cli({"adj", "e0", "1,1;0", "bad"}).code == 2);    // bad point text
    CHECK(cli({"adj", "nope", "1;0", "1;0"}).code == 2);    // unknown family
    CHECK(cli({"adj", "e0", "1;0", ";0", "--wat"}).code == 2);  // unknown flag
}
