#include <doctest.h>

#include "eqgraph/verify.hpp"

using namespace eqgraph;

namespace {

Scenario small(const std::string& graphing) {
    Scenario s;
    s.name = "test-" + graphing;
    s.graphing = graphing;
    s.seed = 7;
    s.pairs = 60;
    s.witness_pairs = 40;
    s.expected_diameter = 2;
    return s;
}

}  // namespace

TEST_CASE("scenario parsing") {
    Scenario s = Scenario::parse_json_text(
        R"({"name":"x","graphing":"e0","seed":3,"pairs":10,"witness_pairs":5,
            "fuel":{"steps":1000,"input_bound":8},"expected_diameter":2,
            "checks":["axioms"]})");
    CHECK(s.name == "x");
    CHECK(s.seed == 3);
    CHECK(s.fuel.steps == 1000);
    CHECK(s.checks == std::vector<std::string>{"axioms"});
    CHECK_THROWS_AS(Scenario::parse_json_text("{\"name\":\"x\"}"), ConfigError);
    CHECK_THROWS_AS(Scenario::parse_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(run_suite(small("nonexistent")), ConfigError);
}

TEST_CASE("decidable families pass every check") {
    for (const char* g : {"e0", "e0n", "vitali", "product"}) {
        Report r = run_suite(small(g));
        CHECK(r.ok());
        CHECK(r.checks.size() == 4);
    }
}

TEST_CASE("bounded families stay sound and witness-complete") {
    Scenario s = small("oneequiv");
    s.checks = {"axioms", "soundness", "witness"};
    s.witness_pairs = 15;
    s.pairs = 25;
    Report r = run_suite(s);
    CHECK(r.ok());

    Scenario m = small("mequiv");
    m.checks = {"witness"};
    m.witness_pairs = 15;
    CHECK(run_suite(m).ok());

    Scenario t = small("turing");
    t.checks = {"axioms", "soundness", "witness"};
    t.pairs = 20;
    t.witness_pairs = 10;
    CHECK(run_suite(t).ok());
}

TEST_CASE("universal family attains diameter three") {
    Scenario s = small("universal");
    s.pairs = 100;
    CHECK(run_suite(s).ok());
}

TEST_CASE("negative controls fail their targeted checks") {
    SUBCASE("asymmetric relation breaks the axioms") {
        Scenario s = small("neg_axioms");
        s.checks = {"axioms"};
        Report r = run_suite(s);
        CHECK_FALSE(r.ok());
        CHECK_FALSE(r.checks[0].second.counterexamples.empty());
    }
    SUBCASE("corrupted oracle breaks soundness") {
        Scenario s = small("neg_soundness");
        s.checks = {"soundness"};
        CHECK_FALSE(run_suite(s).ok());
    }
    SUBCASE("broken witness construction is caught") {
        Scenario s = small("neg_witness");
        s.checks = {"witness"};
        CHECK_FALSE(run_suite(s).ok());
    }
    SUBCASE("an overclaimed diameter is caught") {
        Scenario s = small("e0");
        s.checks = {"diameter"};
        s.expected_diameter = 1;
        CHECK_FALSE(run_suite(s).ok());
    }
}

TEST_CASE("reports are reproducible modulo timing") {
    for (const char* g : {"e0", "vitali", "oneequiv"}) {
        Scenario s = small(g);
        if (std::string(g) == "oneequiv") s.checks = {"axioms", "witness"};
        Report r1 = run_suite(s);
        Report r2 = run_suite(s);
        CHECK(r1.to_json(false) == r2.to_json(false));
        // a different seed perturbs the stream but not determinism
        s.seed = 8;
        Report r3 = run_suite(s);
        CHECK(r3.to_json(false) == run_suite(s).to_json(false));
    }
}

TEST_CASE("unknown outcomes are counted, not converted") {
    Scenario s = small("oneequiv");
    s.checks = {"witness"};
    s.witness_pairs = 8;
    Report r = run_suite(s);
    CHECK(r.ok());
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].second.unknown > 0);
}

TEST_CASE("swap images agree with pointwise application") {
    Rng rng(71);
    for (int t = 0; t < 200; ++t) {
        EPSeq a = sample_seq(rng, 2, 5, 3);
        SwapList s = sample_swap_list(rng, 2, 8);
        EPSeq b = swap_image(a, s);
        for (Nat v = 0; v < 12; ++v) CHECK(b.at(swap_apply(s, v)) == a.at(v));
    }
}
