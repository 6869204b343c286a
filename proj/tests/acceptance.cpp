// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Thresholds, counts, and budgets are pinned here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "eqgraph/graphings.hpp"
#include "eqgraph/indexrel.hpp"
#include "eqgraph/jump.hpp"
#include "eqgraph/structures.hpp"
#include "eqgraph/verify.hpp"

using namespace eqgraph;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string scenario_dir() { return std::string(EQGRAPH_SOURCE_DIR) + "/scenarios"; }

// ---------------------------------------------------------------------------
// Criterion 1: decidable graphing suite.
// ---------------------------------------------------------------------------
void criterion1() {
    auto start = std::chrono::steady_clock::now();
    Nat failures = 0;
    std::string detail;
    for (const char* g : {"e0", "e0n", "vitali"}) {
        Scenario s;
        s.name = std::string("acceptance-") + g;
        s.graphing = g;
        s.seed = 7;
        s.pairs = 1000;
        s.witness_pairs = 500;
        s.expected_diameter = 2;
        Report r = run_suite(s);
        for (const auto& [name, c] : r.checks) failures += c.fail;
        detail += std::string(g) + (r.ok() ? " ok; " : " FAILED; ");
    }
    double secs = seconds_since(start);
    bool ok = failures == 0 && secs < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "decidable suite: %llu failures, %.1fs (budget 10s)",
                  static_cast<unsigned long long>(failures), secs);
    report(1, ok, detail + buf);
}

// ---------------------------------------------------------------------------
// Criterion 2: 1-/m-equivalence witnesses with bound-set clauses.
// ---------------------------------------------------------------------------
void criterion2() {
    auto start = std::chrono::steady_clock::now();
    const Fuel fuel(100000, 64);
    Rng rng(2024);
    Nat failures = 0;
    for (int t = 0; t < 300; ++t) {
        EPSeq a = sample_seq(rng, 2, 6, 4);
        SwapList s = sample_swap_list(rng, 2, 8);
        EPSeq a2 = swap_image(a, s);
        if (a.is_constant() || a2.is_constant() || a == a2) {
            --t;
            continue;
        }
        Code to_first = swap_program(swap_inverse(s));
        Code to_second = swap_program(s);

        auto check_one = [&](const SetWitness& w, bool mvariant) {
            bool ok = !w.b.is_constant();
            ok = ok && least_change_point(w.b) == std::optional<Nat>(w.n);
            ok = ok && in_bound_set(w.first_to_b, w.n);
            ok = ok && in_bound_set(w.second_to_b, w.n);
            if (mvariant) {
                ok = ok && w.b_to_second.has_value() && in_bound_set(*w.b_to_second, w.n);
                ok = ok && in_bound_set(w.b_to_first, w.n);
                ok = ok && !mequiv_adjacent(a, w.b, fuel).is_refuted();
                ok = ok && !mequiv_adjacent(a2, w.b, fuel).is_refuted();
            } else {
                ok = ok && !oneequiv_adjacent(a, w.b, fuel).is_refuted();
                ok = ok && !oneequiv_adjacent(a2, w.b, fuel).is_refuted();
            }
            return ok;
        };
        if (!check_one(oneequiv_witness(a, a2, to_first), false)) ++failures;
        if (!check_one(mequiv_witness(a, a2, to_first, to_second), true)) ++failures;
    }
    double secs = seconds_since(start);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "300 set pairs, both variants: %llu failures, %.1fs (budget 60s)",
                  static_cast<unsigned long long>(failures), secs);
    report(2, failures == 0 && secs < 60.0, buf);
}

// ---------------------------------------------------------------------------
// Criterion 3: index-relation suite.
// ---------------------------------------------------------------------------
void criterion3() {
    const auto& sum = builtin_index_spec("sum");
    Nat failures = 0;
    for (Nat a = 0; a < 20; ++a) {
        for (Nat b = 0; b < 20; ++b) {
            Code e = index_witness(a, b, a + b, sum);
            bool ok = index_adjacent(a, e, sum) && index_adjacent(b, e, sum);
            if (a != b) {
                // distance exactly 2 on {a, b, e}: no direct edge
                ok = ok && !index_adjacent(a, Code(b), sum) && !index_adjacent(b, Code(a), sum);
            }
            if (!ok) ++failures;
        }
    }
    Nat roundtrip_failures = 0;
    for (Nat a = 0; a < 10; ++a)
        for (Nat b = 0; b < 10; ++b)
            for (Nat c = 0; c < 10; ++c) {
                Code e = special_encode(Code(a), Code(b), Code(c));
                if (!form(e) || code1(e) != a || code2(e) != b || main_code(e) != c)
                    ++roundtrip_failures;
            }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "20x20 witnesses: %llu failures; special-form round trips: %llu failures",
                  static_cast<unsigned long long>(failures),
                  static_cast<unsigned long long>(roundtrip_failures));
    report(3, failures == 0 && roundtrip_failures == 0, buf);
}

// ---------------------------------------------------------------------------
// Criterion 4: shuffle/coding suite over the exhaustive relation family.
// ---------------------------------------------------------------------------
std::vector<FinRel> coding_family() {
    std::vector<FinRel> family;
    for (std::size_t arity = 1; arity <= 3; ++arity) {
        std::vector<TrivialFormula> defaults{TrivialFormula::top(), TrivialFormula::bot()};
        if (arity >= 2) defaults.push_back(TrivialFormula::eq(0, 1));
        // every tuple over {0,1,2}
        std::vector<std::vector<Nat>> tuples;
        std::vector<Nat> t(arity, 0);
        for (;;) {
            tuples.push_back(t);
            std::size_t p = arity;
            bool wrapped = false;
            while (p > 0) {
                --p;
                if (++t[p] <= 2) break;
                t[p] = 0;
                if (p == 0) wrapped = true;
            }
            if (wrapped) break;
        }
        for (const auto& def : defaults) {
            family.emplace_back(arity, def, std::vector<std::vector<Nat>>{});
            for (std::size_t i = 0; i < tuples.size(); ++i) {
                family.emplace_back(arity, def, std::vector<std::vector<Nat>>{tuples[i]});
                for (std::size_t j = i + 1; j < tuples.size(); ++j)
                    family.emplace_back(arity, def,
                                        std::vector<std::vector<Nat>>{tuples[i], tuples[j]});
            }
        }
    }
    return family;
}

void criterion4() {
    auto start = std::chrono::steady_clock::now();
    std::vector<FinRel> family = coding_family();
    Nat coding_mismatches = 0, synth_mismatches = 0, compose_failures = 0;
    for (const FinRel& r : family) {
        LStruct x;
        x.rels.push_back(r);
        bool all_bad = true;
        for (const auto& pi : all_shuffles(r.arity())) {
            ShuffledRel v = make_view(x, 0, pi);
            bool fast = is_coding(v);
            if (fast != is_coding_brute(v, coding_bound(v))) ++coding_mismatches;
            if (fast != is_coding_brute(v, coding_bound(v) + 3)) ++coding_mismatches;
            all_bad = all_bad && !fast;
        }
        if (all_bad) {
            TrivialFormula f = synthesize_trivial(x, 0);
            ShuffleSeq id;
            id.k = r.arity();
            id.indices.resize(r.arity());
            for (std::size_t u = 0; u < r.arity(); ++u) id.indices[u] = u;
            Nat bound = coding_bound(make_view(x, 0, id)) + 3;
            std::vector<Nat> t(r.arity(), 0);
            for (;;) {
                if (f.eval(t) != r.eval(t)) {
                    ++synth_mismatches;
                    break;
                }
                std::size_t p = r.arity();
                bool wrapped = false;
                while (p > 0) {
                    --p;
                    if (++t[p] <= bound) break;
                    t[p] = 0;
                    if (p == 0) wrapped = true;
                }
                if (wrapped) break;
            }
        }
        // composition law on the domain {0..3}
        for (const auto& pi : all_shuffles(r.arity())) {
            ShuffledRel v = make_view(x, 0, pi);
            for (const auto& rho : all_shuffles(pi.k)) {
                if (rho.indices.size() != pi.k) continue;
                ShuffledRel composite = compose_view(v, rho);
                std::vector<Nat> a(rho.k, 0);
                for (;;) {
                    std::vector<Nat> mid(pi.k);
                    for (std::size_t u = 0; u < pi.k; ++u) mid[u] = a[rho.indices[u]];
                    if (composite.eval(a) != v.eval(mid)) ++compose_failures;
                    std::size_t p = rho.k;
                    bool wrapped = false;
                    while (p > 0) {
                        --p;
                        if (++a[p] <= 3) break;
                        a[p] = 0;
                        if (p == 0) wrapped = true;
                    }
                    if (wrapped) break;
                }
            }
        }
    }
    double secs = seconds_since(start);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%zu relations: coding mismatches %llu, synthesis mismatches %llu, "
                  "composition failures %llu, %.1fs (budget 120s)",
                  family.size(), static_cast<unsigned long long>(coding_mismatches),
                  static_cast<unsigned long long>(synth_mismatches),
                  static_cast<unsigned long long>(compose_failures), secs);
    report(4, coding_mismatches == 0 && synth_mismatches == 0 && compose_failures == 0 &&
                  secs < 120.0,
           buf);
}

// ---------------------------------------------------------------------------
// Criterion 5: computable-isomorphism witnesses, stratified.
// ---------------------------------------------------------------------------
void criterion5() {
    const Fuel fuel(100000, 16);
    Rng rng(55);
    Nat failures = 0;
    Nat case1 = 0, case2 = 0, roles_swapped = 0, relabeled = 0;

    auto run_case = [&](const LStruct& x, const SwapList& s) {
        LStruct x2 = pushforward(x, s);
        if (x2 == x) return;  // the swap missed the support; skip
        Code hint = swap_program(swap_inverse(s));
        try {
            CisoWitness w = ciso_witness(x, x2, hint);
            bool ok = (w.q.a.size() + 1 == w.q.pi.k);
            for (std::size_t t = 0; t < w.q.a.size(); ++t) ok = ok && w.q.a[t] == t;
            ok = ok && in_bound_set(w.x_to_y, w.n);
            ok = ok && in_bound_set(w.second_to_y, w.n);
            ok = ok && !ciso_adjacent(x, w.y, fuel).is_refuted();
            ok = ok && !ciso_adjacent(x2, w.y, fuel).is_refuted();
            if (!ok) ++failures;
            (w.case_two ? case2 : case1)++;
            if (w.roles_swapped) ++roles_swapped;
            if (w.relabeled) ++relabeled;
        } catch (const Error&) {
            ++failures;
        }
    };

    for (int t = 0; t < 200; ++t) {
        Nat p = 1 + rng.below(6);
        Nat q = 1 + rng.below(6);
        while (q == p) q = 1 + rng.below(6);
        switch (t % 4) {
            case 0: {  // sparse unary: scarce true side
                LStruct x;
                x.rels.emplace_back(1, TrivialFormula::bot(),
                                    std::vector<std::vector<Nat>>{{p}});
                run_case(x, {{p, q}});
                break;
            }
            case 1: {  // cofinite unary: plentiful true side
                LStruct x;
                x.rels.emplace_back(1, TrivialFormula::top(),
                                    std::vector<std::vector<Nat>>{{p}});
                run_case(x, {{p, q}});
                break;
            }
            case 2: {  // plant an exception on the predicted change point
                LStruct probe;
                probe.rels.emplace_back(1, TrivialFormula::bot(),
                                        std::vector<std::vector<Nat>>{{p}});
                QWitness qw = *q_find(probe);
                CodingPair pair = coding_pair(make_view(probe, 0, qw.pi), qw.a);
                Code hint = swap_program({{p, q}});
                Nat n_hat = static_cast<Nat>(
                    std::max({Code(0), hint, Code(pair.b), Code(pair.c)}) + 1);
                LStruct x;
                x.rels.emplace_back(1, TrivialFormula::bot(),
                                    std::vector<std::vector<Nat>>{{p}, {n_hat}});
                run_case(x, {{p, q}});
                break;
            }
            default: {  // binary with an off-initial witness tuple
                Nat r = rng.below(8);
                while (r == p) r = rng.below(8);
                LStruct x;
                x.rels.emplace_back(2, TrivialFormula::bot(),
                                    std::vector<std::vector<Nat>>{{p, r}});
                if (t % 8 >= 4) {
                    // a second, trivial symbol exercises two-symbol languages
                    x.rels.emplace_back(1, TrivialFormula::top(),
                                        std::vector<std::vector<Nat>>{});
                }
                run_case(x, {{p, q}});
                break;
            }
        }
    }

    Nat rigidity_failures = 0;
    Nat rigid_done = 0;
    std::vector<TrivialFormula> pool{
        TrivialFormula::top(), TrivialFormula::bot(), TrivialFormula::eq(0, 1),
        TrivialFormula::negation(TrivialFormula::eq(0, 1)),
        TrivialFormula::conj({TrivialFormula::eq(0, 1), TrivialFormula::eq(0, 1)})};
    while (rigid_done < 100) {
        LStruct x;
        Nat symbols = 1 + rng.below(2);
        for (Nat i = 0; i < symbols; ++i) {
            std::size_t arity = 1 + rng.below(2);
            TrivialFormula def = pool[rng.below(pool.size())];
            if (def.min_arity() > arity) def = TrivialFormula::bot();
            x.rels.emplace_back(arity, def, std::vector<std::vector<Nat>>{});
        }
        if (!struct_bad_coding(x)) continue;
        ++rigid_done;
        for (int u = 0; u < 20; ++u) {
            if (!(pushforward(x, sample_swap_list(rng, 2, 8)) == x)) ++rigidity_failures;
        }
    }

    bool spread = case1 >= 10 && case2 >= 10 && roles_swapped >= 10 && relabeled >= 10;
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "200 pairs: %llu failures; branches case1=%llu case2=%llu roles=%llu "
                  "relabel=%llu (>=10 each); rigidity failures %llu",
                  static_cast<unsigned long long>(failures),
                  static_cast<unsigned long long>(case1),
                  static_cast<unsigned long long>(case2),
                  static_cast<unsigned long long>(roles_swapped),
                  static_cast<unsigned long long>(relabeled),
                  static_cast<unsigned long long>(rigidity_failures));
    report(5, failures == 0 && spread && rigidity_failures == 0, buf);
}

// ---------------------------------------------------------------------------
// Criterion 6: jump suite, exhaustive at desk scale.
// ---------------------------------------------------------------------------
std::vector<std::vector<std::vector<Nat>>> set_partitions(Nat n) {
    std::vector<std::vector<std::vector<Nat>>> out;
    std::vector<Nat> assign(n, 0);
    std::function<void(Nat, Nat)> rec = [&](Nat at, Nat blocks) {
        if (at == n) {
            std::vector<std::vector<Nat>> part(blocks);
            for (Nat i = 0; i < n; ++i) part[assign[i]].push_back(i);
            out.push_back(part);
            return;
        }
        for (Nat b = 0; b <= blocks; ++b) {
            assign[at] = b;
            rec(at + 1, std::max(blocks, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

// All edge sets connecting one block.
std::vector<std::vector<std::pair<Nat, Nat>>> connected_edge_sets(const std::vector<Nat>& block) {
    std::vector<std::pair<Nat, Nat>> all;
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j) all.emplace_back(block[i], block[j]);
    std::vector<std::vector<std::pair<Nat, Nat>>> out;
    for (Nat mask = 0; mask < (Nat(1) << all.size()); ++mask) {
        std::vector<std::pair<Nat, Nat>> edges;
        for (std::size_t e = 0; e < all.size(); ++e)
            if (mask & (Nat(1) << e)) edges.push_back(all[e]);
        // connectivity check
        std::map<Nat, std::vector<Nat>> adj;
        for (auto& [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        std::set<Nat> seen{block[0]};
        std::vector<Nat> stack{block[0]};
        while (!stack.empty()) {
            Nat u = stack.back();
            stack.pop_back();
            for (Nat v : adj[u])
                if (seen.insert(v).second) stack.push_back(v);
        }
        if (seen.size() == block.size()) out.push_back(edges);
    }
    return out;
}

std::vector<FinSpace> all_small_spaces() {
    std::vector<FinSpace> spaces;
    for (Nat n = 1; n <= 4; ++n) {
        for (const auto& part : set_partitions(n)) {
            // product of connected graphings across blocks
            std::vector<std::vector<std::vector<std::pair<Nat, Nat>>>> per_block;
            for (const auto& block : part) per_block.push_back(connected_edge_sets(block));
            std::vector<std::size_t> pick(per_block.size(), 0);
            for (;;) {
                std::vector<std::pair<Nat, Nat>> edges;
                for (std::size_t b = 0; b < per_block.size(); ++b)
                    for (const auto& e : per_block[b][pick[b]]) edges.push_back(e);
                spaces.emplace_back(n, part, edges);
                std::size_t b = per_block.size();
                bool wrapped = false;
                while (b > 0) {
                    --b;
                    if (++pick[b] < per_block[b].size()) break;
                    pick[b] = 0;
                    if (b == 0) wrapped = true;
                }
                if (wrapped) break;
            }
        }
    }
    return spaces;
}

std::vector<PtSeq> all_small_seqs(Nat size) {
    std::set<PtSeq> out;
    std::vector<std::vector<Nat>> prefixes{{}};
    for (Nat a = 0; a < size; ++a) {
        prefixes.push_back({a});
        for (Nat b = 0; b < size; ++b) prefixes.push_back({a, b});
    }
    std::vector<std::vector<Nat>> periods;
    for (Nat a = 0; a < size; ++a) {
        periods.push_back({a});
        for (Nat b = 0; b < size; ++b) periods.push_back({a, b});
    }
    for (const auto& pre : prefixes)
        for (const auto& per : periods) out.insert(PtSeq(pre, per));
    return std::vector<PtSeq>(out.begin(), out.end());
}

void criterion6() {
    auto start = std::chrono::steady_clock::now();
    std::vector<FinSpace> spaces = all_small_spaces();
    Nat soundness_failures = 0, path_failures = 0, invariance_failures = 0,
        claim2_failures = 0, attain_failures = 0;
    Rng rng(66);

    for (const FinSpace& space : spaces) {
        std::vector<PtSeq> seqs = all_small_seqs(space.size());
        std::vector<std::set<Nat>> blocksets(seqs.size());
        for (std::size_t i = 0; i < seqs.size(); ++i)
            for (Nat id : occurring(seqs[i])) blocksets[i].insert(space.block_of(id));

        // h soundness over every ordered pair
        for (std::size_t i = 0; i < seqs.size(); ++i)
            for (std::size_t j = 0; j < seqs.size(); ++j)
                if (h_adjacent(space, seqs[i], seqs[j]) && blocksets[i] != blocksets[j])
                    ++soundness_failures;

        Nat ell = space.diameter();
        Nat target = std::max<Nat>(2, ell);
        bool d_reaches_ell = false, attained = false;
        for (std::size_t i = 0; i < seqs.size(); ++i) {
            for (std::size_t j = i + 1; j < seqs.size(); ++j) {
                if (blocksets[i] != blocksets[j]) continue;
                auto d = dist_seq_seq(space, seqs[i], seqs[j]);
                if (d && *d == ell) d_reaches_ell = true;
                auto path = jump_path(space, seqs[i], seqs[j]);
                if (path.size() - 1 > target) ++path_failures;
                if (path.size() - 1 == target) attained = true;
                for (std::size_t h = 0; h + 1 < path.size(); ++h)
                    if (!h_adjacent(space, path[h], path[h + 1]) &&
                        !h_adjacent(space, path[h + 1], path[h]))
                        ++path_failures;
                // claim 2 exactness against the BFS distances
                if (d && *d >= 2) {
                    PtSeq w = claim2_midpoint(space, seqs[i], seqs[j]);
                    if (dist_seq_seq(space, seqs[i], w) != std::optional<Nat>(1) ||
                        dist_seq_seq(space, seqs[j], w) != std::optional<Nat>(*d - 1))
                        ++claim2_failures;
                }
            }
        }
        if (d_reaches_ell && !attained) ++attain_failures;

        // distance invariance under rearrangement
        for (int t = 0; t < 40; ++t) {
            const PtSeq& a = seqs[rng.below(seqs.size())];
            const PtSeq& b = seqs[rng.below(seqs.size())];
            std::set<Nat> occ_set = occurring(a);
            std::vector<Nat> occ(occ_set.begin(), occ_set.end());
            PtSeq a2({}, occ);  // a flat rearrangement with the same ids
            if (dist_seq_seq(space, a, b) != dist_seq_seq(space, a2, b))
                ++invariance_failures;
        }
    }

    double secs = seconds_since(start);
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "%zu spaces: soundness %llu, path %llu, attainment %llu, claim2 %llu, "
                  "invariance %llu failures, %.1fs (budget 120s)",
                  spaces.size(), static_cast<unsigned long long>(soundness_failures),
                  static_cast<unsigned long long>(path_failures),
                  static_cast<unsigned long long>(attain_failures),
                  static_cast<unsigned long long>(claim2_failures),
                  static_cast<unsigned long long>(invariance_failures), secs);
    report(6, soundness_failures == 0 && path_failures == 0 && attain_failures == 0 &&
                  claim2_failures == 0 && invariance_failures == 0 && secs < 120.0,
           buf);
}

// ---------------------------------------------------------------------------
// Criterion 7: determinism of every bundled suite.
// ---------------------------------------------------------------------------
void criterion7() {
    Nat mismatches = 0;
    std::vector<std::string> files{"all_decidable.json", "bounded.json",
                                   "negative_controls.json", "universal.json"};
    for (const auto& f : files) {
        std::string path = scenario_dir() + "/" + f;
        auto r1 = run_suite_file(path, std::nullopt);
        auto r2 = run_suite_file(path, std::nullopt);
        if (r1.size() != r2.size()) {
            ++mismatches;
            continue;
        }
        for (std::size_t i = 0; i < r1.size(); ++i)
            if (r1[i].to_json(false) != r2[i].to_json(false)) ++mismatches;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "bundled suites run twice: %llu report mismatches",
                  static_cast<unsigned long long>(mismatches));
    report(7, mismatches == 0, buf);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
