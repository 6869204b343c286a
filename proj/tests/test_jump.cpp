#include <doctest.h>

#include "eqgraph/jump.hpp"
#include "eqgraph/verify.hpp"

using namespace eqgraph;

namespace {

PtSeq seq(const std::string& text) { return EPSeq::parse(text); }

// One block 0-1-2 in a path, plus an isolated point 3.
FinSpace path3_plus_point() {
    return FinSpace(4, {{0, 1, 2}, {3}}, {{0, 1}, {1, 2}});
}

FinSpace two_points_edge() { return FinSpace(2, {{0, 1}}, {{0, 1}}); }

}  // namespace

TEST_CASE("finite spaces validate their graphing") {
    FinSpace s = path3_plus_point();
    CHECK(s.diameter() == 2);
    CHECK(s.dist(0, 2) == std::optional<Nat>(2));
    CHECK_FALSE(s.dist(0, 3).has_value());
    CHECK(s.block_of(2) == 0);
    // a block the edges fail to connect is rejected
    CHECK_THROWS_AS(FinSpace(3, {{0, 1, 2}}, {{0, 1}}), RepresentationError);
    CHECK_THROWS_AS(FinSpace(2, {{0}, {1}}, {{0, 1}}), RepresentationError);  // cross-block edge
    CHECK_THROWS_AS(FinSpace(2, {{0}}, {}), RepresentationError);             // missing id
    CHECK(FinSpace::parse_json_text(s.to_json()) == s);
}

TEST_CASE("sequence distances") {
    FinSpace s = path3_plus_point();
    CHECK(dist_seq_seq(s, seq(";0"), seq(";0")) == std::optional<Nat>(0));
    CHECK(dist_seq_seq(s, seq(";0"), seq(";2")) == std::optional<Nat>(2));
    CHECK(dist_seq_seq(s, seq(";0,1"), seq(";1,0")) == std::optional<Nat>(0));
    CHECK_FALSE(dist_seq_seq(s, seq(";0"), seq(";3")).has_value());
    CHECK(dist_pt_seq(s, 0, seq(";1,2")) == std::optional<Nat>(1));
    CHECK_THROWS_AS(dist_seq_seq(s, seq(";4"), seq(";0")), RepresentationError);

    SUBCASE("distance is finite at most the diameter exactly on equivalent pairs") {
        Rng rng(61);
        for (int t = 0; t < 200; ++t) {
            PtSeq a = sample_seq(rng, 4, 2, 2);
            PtSeq b = sample_seq(rng, 4, 2, 2);
            auto d = dist_seq_seq(s, a, b);
            CHECK(jump_equiv(s, a, b) == (d.has_value() && *d <= s.diameter()));
        }
    }

    SUBCASE("rearrangements do not move the distance") {
        Rng rng(62);
        for (int t = 0; t < 200; ++t) {
            PtSeq a = sample_seq(rng, 4, 2, 2);
            PtSeq b = sample_seq(rng, 4, 2, 2);
            // rotate a's period and shuffle its prefix into the period window
            PtSeq a2({a.at(1), a.at(0)}, {a.at(2), a.at(3)});
            if (!same_occurrence_set(a, a2)) continue;
            CHECK(dist_seq_seq(s, a, b) == dist_seq_seq(s, a2, b));
        }
    }
}

TEST_CASE("descent bookkeeping") {
    CHECK_FALSE(in_C(seq(";0")));
    CHECK_FALSE(g_eval(seq(";0"), 0).has_value());
    // descent at every pair position
    PtSeq zig = seq(";1,0");
    CHECK(in_C(zig));
    CHECK(g_eval(zig, 0) == std::optional<Nat>(0));
    CHECK(g_eval(zig, 5) == std::optional<Nat>(5));
    // a prefix shifts the descent pattern against pair parity
    CHECK(in_C(seq("0;1,2")));
    CHECK_FALSE(in_C(seq("0;2,1")));

    SUBCASE("g is total and strictly increasing on descent-rich sequences") {
        Rng rng(63);
        int live = 0;
        for (int t = 0; t < 300 && live < 100; ++t) {
            PtSeq a = sample_seq(rng, 5, 3, 3);
            if (!in_C(a)) continue;
            ++live;
            std::optional<Nat> prev;
            for (Nat n = 0; n < 8; ++n) {
                auto g = g_eval(a, n);
                REQUIRE(g.has_value());
                if (prev) CHECK(*g > *prev);
                prev = g;
                // the indexed position really is the (n+1)st descent
                Nat count = 0;
                for (Nat i = 0; i <= *g; ++i)
                    if (a.at(2 * i + 1) < a.at(2 * i)) ++count;
                CHECK(count == n + 1);
            }
        }
        CHECK(live == 100);
    }
}

TEST_CASE("jump-graph adjacency") {
    FinSpace s = path3_plus_point();
    CHECK(h_adjacent(s, seq(";0"), seq(";0")));       // clause (H1) with distance zero
    CHECK(h_adjacent(s, seq(";0"), seq(";1")));       // a single edge
    CHECK_FALSE(h_adjacent(s, seq(";0"), seq(";2"))); // distance two, no descents
    CHECK_FALSE(h_adjacent(s, seq(";0"), seq(";3"))); // inequivalent

    SUBCASE("the second clause fires through descents") {
        FinSpace e = two_points_edge();
        // zs alternates 1,0: descents everywhere, g(n) = n
        CHECK(h_adjacent(e, seq(";0"), seq(";1,0")));
        CHECK(h_adjacent(e, seq(";0,1"), seq(";1,0")));
    }

    SUBCASE("soundness and window stability on small spaces") {
        Rng rng(64);
        FinSpace spaces[] = {two_points_edge(), path3_plus_point(),
                             FinSpace(3, {{0}, {1}, {2}}, {}),
                             FinSpace(4, {{0, 1}, {2, 3}}, {{0, 1}, {2, 3}})};
        for (const FinSpace& sp : spaces) {
            for (int t = 0; t < 150; ++t) {
                PtSeq a = sample_seq(rng, sp.size(), 2, 2);
                PtSeq b = sample_seq(rng, sp.size(), 2, 2);
                bool h = h_adjacent(sp, a, b);
                if (h) CHECK(jump_equiv(sp, a, b));
                // the pinned window agrees with a four-fold one
                CHECK(h == h_adjacent_windowed(sp, a, b, 8));
            }
        }
    }
}

TEST_CASE("claim 1") {
    FinSpace e = two_points_edge();

    SUBCASE("constant neighbors pass through") {
        PtSeq ws = seq(";0");
        CHECK(claim1_rearrange(e, seq(";0"), seq(";1"), ws) == ws);
    }

    SUBCASE("two-point rearrangement carries both ends") {
        PtSeq xs = seq(";0"), ys = seq(";1"), ws = seq(";0,1");
        PtSeq zs = claim1_rearrange(e, xs, ys, ws);
        CHECK(same_occurrence_set(zs, ws));
        CHECK(in_C(zs));
        CHECK(h_adjacent(e, xs, zs));
        CHECK(h_adjacent(e, ys, zs));
    }

    SUBCASE("preconditions enforced") {
        FinSpace s = path3_plus_point();
        CHECK_THROWS_AS(claim1_rearrange(s, seq(";0"), seq(";2"), seq(";2")), DomainError);
    }

    SUBCASE("the descent bound is the least strictly increasing cover") {
        // exhaustive cross-check of g against a direct minimal computation
        FinSpace s = path3_plus_point();
        PtSeq xs = seq(";0,1"), ys = seq(";1,2"), ws = seq(";1");
        PtSeq zs = claim1_rearrange(s, xs, ys, ws);
        CHECK(h_adjacent(s, xs, zs));
        CHECK(h_adjacent(s, ys, zs));
    }

    SUBCASE("rearrangements satisfy the promised descent schedule") {
        Rng rng(65);
        FinSpace sp = FinSpace(4, {{0, 1, 2, 3}}, {{0, 1}, {1, 2}, {2, 3}});
        for (int t = 0; t < 100; ++t) {
            PtSeq ws = sample_seq(rng, 4, 2, 2);
            PtSeq xs = ws, ys = ws;  // distance zero both sides
            PtSeq zs = claim1_rearrange(sp, xs, ys, ws);
            CHECK(same_occurrence_set(zs, ws));
            CHECK(h_adjacent(sp, xs, zs));
            if (!ws.is_constant()) {
                REQUIRE(in_C(zs));
                // g values strictly increase
                auto g0 = g_eval(zs, 0), g1 = g_eval(zs, 1);
                REQUIRE(g0.has_value());
                REQUIRE(g1.has_value());
                CHECK(*g1 > *g0);
            }
        }
    }
}

TEST_CASE("claim 2") {
    FinSpace s = path3_plus_point();
    PtSeq xs = seq(";0"), ys = seq(";2");
    PtSeq ws = claim2_midpoint(s, xs, ys);
    CHECK(dist_seq_seq(s, xs, ws) == std::optional<Nat>(1));
    CHECK(dist_seq_seq(s, ys, ws) == std::optional<Nat>(1));
    CHECK(occurring(ws) == std::set<Nat>{1});  // the least-id midpoint

    SUBCASE("distance peels off exactly one step") {
        FinSpace line(4, {{0, 1, 2, 3}}, {{0, 1}, {1, 2}, {2, 3}});
        PtSeq a = seq(";0"), b = seq(";3");
        PtSeq w = claim2_midpoint(line, a, b);
        CHECK(dist_seq_seq(line, a, w) == std::optional<Nat>(1));
        CHECK(dist_seq_seq(line, b, w) == std::optional<Nat>(2));
    }

    SUBCASE("exactness on sampled pairs") {
        Rng rng(66);
        FinSpace line(4, {{0, 1, 2, 3}}, {{0, 1}, {1, 2}, {2, 3}});
        for (int t = 0; t < 200; ++t) {
            PtSeq a = sample_seq(rng, 4, 2, 2);
            PtSeq b = sample_seq(rng, 4, 2, 2);
            auto d = dist_seq_seq(line, a, b);
            if (!d || *d < 2) continue;
            PtSeq w = claim2_midpoint(line, a, b);
            CHECK(dist_seq_seq(line, a, w) == std::optional<Nat>(1));
            CHECK(dist_seq_seq(line, b, w) == std::optional<Nat>(*d - 1));
        }
    }

    CHECK_THROWS_AS(claim2_midpoint(s, seq(";0"), seq(";1")), DomainError);
}

TEST_CASE("jump paths") {
    FinSpace s = path3_plus_point();
    CHECK(jump_path(s, seq(";0"), seq(";0")) == std::vector<PtSeq>{seq(";0")});
    CHECK_THROWS_AS(jump_path(s, seq(";0"), seq(";3")), DomainError);

    SUBCASE("every hop is an edge and the length is bounded") {
        Rng rng(67);
        FinSpace spaces[] = {two_points_edge(), path3_plus_point(),
                             FinSpace(4, {{0, 1, 2, 3}}, {{0, 1}, {1, 2}, {2, 3}})};
        for (const FinSpace& sp : spaces) {
            for (int t = 0; t < 120; ++t) {
                PtSeq a = sample_seq(rng, sp.size(), 2, 2);
                PtSeq b = sample_seq(rng, sp.size(), 2, 2);
                if (!jump_equiv(sp, a, b)) continue;
                auto path = jump_path(sp, a, b);
                CHECK(path.front() == a);
                CHECK(path.back() == b);
                CHECK(path.size() - 1 <= std::max<Nat>(2, sp.diameter()));
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    CHECK((h_adjacent(sp, path[i], path[i + 1]) ||
                           h_adjacent(sp, path[i + 1], path[i])));
            }
        }
    }
}

TEST_CASE("jump graphing through the infinite product") {
    FinSpace s = path3_plus_point();
    CHECK(borel_jump_adjacent(s, seq(";0,1"), seq(";1,0")));   // same occurrence set
    CHECK(borel_jump_adjacent(s, seq(";0"), seq(";1")));       // coordinatewise edge
    CHECK_FALSE(borel_jump_adjacent(s, seq(";0"), seq(";0"))); // diagonal
    CHECK_FALSE(borel_jump_adjacent(s, seq(";0"), seq(";2"))); // two steps, not one

    SUBCASE("paths stay within two plus the diameter") {
        Rng rng(68);
        FinSpace spaces[] = {two_points_edge(), path3_plus_point(),
                             FinSpace(4, {{0, 1, 2, 3}}, {{0, 1}, {1, 2}, {2, 3}})};
        for (const FinSpace& sp : spaces) {
            for (int t = 0; t < 100; ++t) {
                PtSeq a = sample_seq(rng, sp.size(), 2, 2);
                PtSeq b = sample_seq(rng, sp.size(), 2, 2);
                if (!jump_equiv(sp, a, b)) continue;
                auto path = borel_jump_path(sp, a, b);
                CHECK(path.front() == a);
                CHECK(path.back() == b);
                CHECK(path.size() - 1 <= sp.diameter() + 2);
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    CHECK(borel_jump_adjacent(sp, path[i], path[i + 1]));
            }
        }
    }
}
