#include "eqgraph/verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eqgraph {

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

EPSeq sample_seq(Rng& rng, Nat alphabet, Nat max_prefix, Nat max_period) {
    Nat plen = rng.below(max_prefix + 1);
    Nat qlen = 1 + rng.below(max_period);
    std::vector<Nat> pre(plen), per(qlen);
    for (auto& v : pre) v = rng.below(alphabet);
    for (auto& v : per) v = rng.below(alphabet);
    return EPSeq(std::move(pre), std::move(per));
}

Rational sample_rational(Rng& rng, Nat num_bound, Nat den_bound) {
    std::int64_t num = static_cast<std::int64_t>(rng.below(2 * num_bound + 1)) -
                       static_cast<std::int64_t>(num_bound);
    std::int64_t den = static_cast<std::int64_t>(1 + rng.below(den_bound));
    return Rational(num, den);
}

SwapList sample_swap_list(Rng& rng, Nat max_len, Nat entry_bound) {
    Nat len = 1 + rng.below(max_len);
    SwapList s;
    for (Nat t = 0; t < len; ++t) {
        Nat a = rng.below(entry_bound);
        Nat b = rng.below(entry_bound);
        while (b == a) b = rng.below(entry_bound);
        s.emplace_back(a, b);
    }
    return s;
}

EPSeq swap_image(const EPSeq& a, const SwapList& s) {
    SwapList inv = swap_inverse(s);
    Nat hi = 0;
    for (const auto& [p, q] : s) hi = std::max({hi, p + 1, q + 1});
    std::vector<std::pair<Nat, Nat>> edits;
    for (Nat v = 0; v < hi; ++v) edits.emplace_back(v, a.at(swap_apply(inv, v)));
    return a.with_edits(edits);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

bool Report::ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const auto& c) { return c.second.ok(); });
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << "scenario " << scenario << " (seed " << seed << ")\n";
    for (const auto& [name, c] : checks) {
        out << "  " << (c.ok() ? "PASS" : "FAIL") << " " << name << ": pass=" << c.pass
            << " fail=" << c.fail << " unknown=" << c.unknown << "\n";
        for (const auto& cx : c.counterexamples) out << "    counterexample: " << cx << "\n";
    }
    out << "  elapsed: " << elapsed_ms << " ms\n";
    return out.str();
}

std::string Report::to_json(bool with_timing) const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["scenario"] = scenario;
    j["seed"] = seed;
    j["ok"] = ok();
    j["checks"] = nlohmann::json::array();
    for (const auto& [name, c] : checks) {
        nlohmann::json e;
        e["name"] = name;
        e["pass"] = c.pass;
        e["fail"] = c.fail;
        e["unknown"] = c.unknown;
        e["counterexamples"] = c.counterexamples;
        j["checks"].push_back(e);
    }
    if (with_timing) j["elapsed_ms"] = elapsed_ms;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Scenario parsing
// ---------------------------------------------------------------------------

Scenario Scenario::parse_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad scenario JSON: ") + e.what());
    }
    return [&] {
        try {
            Scenario s;
            if (!j.contains("name") || !j.contains("graphing"))
                throw ConfigError("scenario needs 'name' and 'graphing'");
            s.name = j["name"].get<std::string>();
            s.graphing = j["graphing"].get<std::string>();
            if (j.contains("seed")) s.seed = j["seed"].get<Nat>();
            if (j.contains("fuel"))
                s.fuel = Fuel(j["fuel"].value("steps", Nat(100000)),
                              j["fuel"].value("input_bound", Nat(64)));
            if (j.contains("pairs")) s.pairs = j["pairs"].get<Nat>();
            if (j.contains("witness_pairs")) s.witness_pairs = j["witness_pairs"].get<Nat>();
            if (j.contains("expected_diameter"))
                s.expected_diameter = j["expected_diameter"].get<Nat>();
            if (j.contains("checks")) s.checks = j["checks"].get<std::vector<std::string>>();
            return s;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("bad scenario field: ") + e.what());
        }
    }();
}

std::vector<Scenario> load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad scenario file '" + path + "': " + e.what());
    }
    std::vector<Scenario> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(Scenario::parse_json_text(e.dump()));
    } else {
        out.push_back(Scenario::parse_json_text(j.dump()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Family plumbing
// ---------------------------------------------------------------------------

namespace {

template <typename P>
struct WitnessCase {
    P x, y;
    std::function<std::optional<P>()> build;
    std::function<bool()> clauses_ok;  // decidable sub-clauses; empty = trivial
};

template <typename P>
struct Family {
    std::function<P(Rng&)> sample;
    std::function<Tri(const P&, const P&)> adjacent;
    std::function<bool(const P&, const P&)> oracle;  // used when sound_decidable
    bool sound_decidable = true;
    std::function<WitnessCase<P>(Rng&)> witness_case;
    // For bounded families: a hint-backed refutation check; soundness fails
    // when adjacency is un-refuted while this check refutes.
    std::function<Tri(const P&, const P&)> hint_check;
    bool bounded_witness = false;  // pass = not-Refuted + clauses, not Verified
};

template <typename P>
CheckOutcome check_axioms(const Family<P>& fam, Nat n_pairs, Rng& rng,
                          const std::function<std::string(const P&)>& show) {
    CheckOutcome out;
    for (Nat t = 0; t < n_pairs; ++t) {
        P x = fam.sample(rng);
        P y = fam.sample(rng);
        Tri xy = fam.adjacent(x, y);
        Tri yx = fam.adjacent(y, x);
        if (xy != yx)
            out.note_fail("asymmetric adjacency at (" + show(x) + ", " + show(y) + ")");
        else
            ++out.pass;
        if (!fam.adjacent(x, x).is_refuted())
            out.note_fail("diagonal not refuted at " + show(x));
        else
            ++out.pass;
        if (xy.is_unknown()) ++out.unknown;
    }
    std::sort(out.counterexamples.begin(), out.counterexamples.end());
    return out;
}

template <typename P>
CheckOutcome check_soundness(const Family<P>& fam, Nat n_pairs, Rng& rng,
                             const std::function<std::string(const P&)>& show) {
    CheckOutcome out;
    for (Nat t = 0; t < n_pairs; ++t) {
        if (fam.sound_decidable) {
            P x = fam.sample(rng);
            P y = fam.sample(rng);
            Tri a = fam.adjacent(x, y);
            if (a.is_unknown()) ++out.unknown;
            if (a.is_verified() && !fam.oracle(x, y))
                out.note_fail("edge outside the relation: (" + show(x) + ", " + show(y) + ")");
            else
                ++out.pass;
        } else {
            WitnessCase<P> wc = fam.witness_case(rng);
            auto z = wc.build();
            if (!z) {
                out.note_fail("witness construction failed");
                continue;
            }
            for (const P* end : {&wc.x, &wc.y}) {
                Tri a = fam.adjacent(*end, *z);
                if (a.is_unknown()) ++out.unknown;
                if (!a.is_refuted() && fam.hint_check && fam.hint_check(*end, *z).is_refuted())
                    out.note_fail("unrefuted edge with a refuted hint at " + show(*end));
                else
                    ++out.pass;
            }
        }
    }
    std::sort(out.counterexamples.begin(), out.counterexamples.end());
    return out;
}

template <typename P>
CheckOutcome check_witness(const Family<P>& fam, Nat n_cases, Rng& rng,
                           const std::function<std::string(const P&)>& show) {
    CheckOutcome out;
    for (Nat t = 0; t < n_cases; ++t) {
        WitnessCase<P> wc = fam.witness_case(rng);
        auto z = wc.build();
        if (!z) {
            out.note_fail("no witness for (" + show(wc.x) + ", " + show(wc.y) + ")");
            continue;
        }
        bool ok;
        if (fam.bounded_witness) {
            ok = !fam.adjacent(wc.x, *z).is_refuted() && !fam.adjacent(wc.y, *z).is_refuted();
            if (ok && wc.clauses_ok) ok = wc.clauses_ok();
            ++out.unknown;  // bounded adjacencies never verify outright
        } else if (*z == wc.x || *z == wc.y) {
            ok = fam.adjacent(wc.x, wc.y).is_verified();
        } else {
            ok = fam.adjacent(wc.x, *z).is_verified() && fam.adjacent(wc.y, *z).is_verified();
        }
        if (ok)
            ++out.pass;
        else
            out.note_fail("witness not adjacent to both: (" + show(wc.x) + ", " + show(wc.y) +
                          ") via " + show(*z));
    }
    std::sort(out.counterexamples.begin(), out.counterexamples.end());
    return out;
}

template <typename P>
CheckOutcome check_witness_diameter(const Family<P>& fam, Nat n_cases, Rng& rng, Nat expected) {
    CheckOutcome out;
    Nat worst = 0;
    for (Nat t = 0; t < n_cases; ++t) {
        WitnessCase<P> wc = fam.witness_case(rng);
        auto z = wc.build();
        if (!z) {
            out.note_fail("no witness to induce a subgraph on");
            continue;
        }
        std::vector<P> verts{wc.x, wc.y, *z};
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        auto edge = [&](const P& a, const P& b) { return fam.adjacent(a, b).is_verified(); };
        // All-pairs BFS on at most three vertices.
        bool over = false;
        const std::size_t n = verts.size();
        for (std::size_t u = 0; u < n; ++u) {
            std::vector<std::optional<Nat>> d(n);
            d[u] = 0;
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) {
                        if (!d[a] || !edge(verts[a], verts[b])) continue;
                        if (!d[b] || *d[b] > *d[a] + 1) {
                            d[b] = *d[a] + 1;
                            changed = true;
                        }
                    }
            }
            for (std::size_t v = 0; v < n; ++v)
                if (d[v]) {
                    worst = std::max(worst, *d[v]);
                    if (*d[v] > expected) over = true;
                }
        }
        if (over)
            out.note_fail("induced distance exceeds " + std::to_string(expected));
        else
            ++out.pass;
    }
    if (out.fail == 0 && worst != expected)
        out.note_fail("diameter " + std::to_string(worst) + " never attains " +
                      std::to_string(expected));
    std::sort(out.counterexamples.begin(), out.counterexamples.end());
    return out;
}

// ---------------------------------------------------------------------------
// Family constructors
// ---------------------------------------------------------------------------

std::string show_seq(const EPSeq& s) { return s.to_string(); }

Family<EPSeq> make_e0_family(bool corrupt_oracle, bool broken_symmetry, bool broken_witness) {
    Family<EPSeq> fam;
    fam.sample = [](Rng& rng) { return sample_seq(rng, 2, 6, 4); };
    if (broken_symmetry)
        fam.adjacent = [](const EPSeq& x, const EPSeq& y) { return Tri::of_bool(e0_raw(x, y)); };
    else
        fam.adjacent = [](const EPSeq& x, const EPSeq& y) {
            return Tri::of_bool(e0_adjacent(x, y));
        };
    fam.oracle = [corrupt_oracle](const EPSeq& x, const EPSeq& y) {
        bool v = eventually_equal(x, y);
        return corrupt_oracle ? !v : v;
    };
    fam.witness_case = [broken_witness](Rng& rng) {
        EPSeq x = sample_seq(rng, 2, 6, 4);
        EPSeq y = x;
        while (y == x) {
            std::vector<std::pair<Nat, Nat>> edits;
            Nat m = 1 + rng.below(5);
            for (Nat p = 0; p < m; ++p) edits.emplace_back(rng.below(6), rng.below(2));
            y = x.with_edits(edits);
        }
        WitnessCase<EPSeq> wc;
        wc.x = x;
        wc.y = y;
        wc.build = [x, y, broken_witness]() -> std::optional<EPSeq> {
            if (broken_witness) return EPSeq({1, 0, 1}, {1});  // unrelated point
            return e0_witness(x, y);
        };
        return wc;
    };
    return fam;
}

Family<EPSeq> make_e0n_family() {
    Family<EPSeq> fam;
    fam.sample = [](Rng& rng) { return sample_seq(rng, 5, 5, 3); };
    fam.adjacent = [](const EPSeq& x, const EPSeq& y) { return Tri::of_bool(e0n_adjacent(x, y)); };
    fam.oracle = [](const EPSeq& x, const EPSeq& y) { return eventually_equal(x, y); };
    fam.witness_case = [](Rng& rng) {
        EPSeq x = sample_seq(rng, 5, 5, 3);
        EPSeq y = x;
        while (y == x) {
            std::vector<std::pair<Nat, Nat>> edits;
            Nat m = 1 + rng.below(4);
            for (Nat p = 0; p < m; ++p) edits.emplace_back(rng.below(5), rng.below(5));
            y = x.with_edits(edits);
        }
        WitnessCase<EPSeq> wc{x, y, {}, {}};
        wc.build = [x, y]() -> std::optional<EPSeq> { return e0n_witness(x, y); };
        return wc;
    };
    return fam;
}

Family<Rational> make_vitali_family() {
    Family<Rational> fam;
    fam.sample = [](Rng& rng) { return sample_rational(rng, 24, 6); };
    fam.adjacent = [](const Rational& x, const Rational& y) {
        return Tri::of_bool(vitali_adjacent(x, y));
    };
    fam.oracle = [](const Rational&, const Rational&) { return true; };
    fam.witness_case = [](Rng& rng) {
        Rational x = sample_rational(rng, 24, 6);
        Rational y = x;
        while (y == x) y = sample_rational(rng, 24, 6);
        WitnessCase<Rational> wc{x, y, {}, {}};
        wc.build = [x, y]() -> std::optional<Rational> { return vitali_witness(x, y); };
        return wc;
    };
    return fam;
}

Family<EPSeq> make_turing_family(const Fuel& fuel) {
    Family<EPSeq> fam;
    Graphing<EPSeq> g = turing_graphing(fuel);
    fam.sample = [](Rng& rng) { return sample_seq(rng, 2, 5, 3); };
    fam.adjacent = g.adjacent;
    fam.sound_decidable = false;
    fam.bounded_witness = true;
    fam.witness_case = [](Rng& rng) {
        // Identity reductions are the only hint codes small enough to sit
        // below a materializable block length, so the generated equivalent
        // pairs are reflexive ones.
        EPSeq x = sample_seq(rng, 2, 5, 3);
        WitnessCase<EPSeq> wc{x, x, {}, {}};
        Code e = identity_oracle_code();
        wc.build = [x, e]() -> std::optional<EPSeq> { return turing_witness(x, x, e, e); };
        return wc;
    };
    fam.hint_check = [fuel](const EPSeq& end, const EPSeq& z) {
        // The generated pairs carry identity hints: the reduction check
        // refutes exactly when the z-tail fails to reproduce the endpoint.
        auto split = [&]() -> std::optional<EPSeq> {
            Nat w = z.prefix_len() + z.period_len();
            for (Nat i = 0; i < w; ++i)
                if (z.at(i) == 1) {
                    std::vector<Nat> pre;
                    for (Nat t = 0; t < w; ++t) pre.push_back(z.at(i + 1 + t));
                    std::vector<Nat> per;
                    for (Nat t = 0; t < z.period_len(); ++t)
                        per.push_back(z.at(i + 1 + w + t));
                    return EPSeq(pre, per);
                }
            return std::nullopt;
        }();
        if (!split) return Tri::refuted();
        FuelMeter meter(fuel);
        return oracle_reduction_check(identity_oracle_code(), *split, end, meter);
    };
    return fam;
}

struct SetPairCase {
    EPSeq a, a2;
    SwapList s;
    Code hint_to_first, hint_to_second;
};

SetPairCase sample_set_pair(Rng& rng) {
    for (;;) {
        EPSeq a = sample_seq(rng, 2, 6, 4);
        if (a.is_constant()) continue;
        SwapList s = sample_swap_list(rng, 2, 8);
        EPSeq a2 = swap_image(a, s);
        if (a2 == a || a2.is_constant()) continue;
        SetPairCase c;
        c.a = a;
        c.a2 = a2;
        c.s = s;
        c.hint_to_first = swap_program(swap_inverse(s));  // a2 -> a
        c.hint_to_second = swap_program(s);               // a -> a2
        return c;
    }
}

Family<EPSeq> make_setequiv_family(const Fuel& fuel, bool one_equiv) {
    Family<EPSeq> fam;
    Graphing<EPSeq> g = one_equiv ? oneequiv_graphing(fuel) : mequiv_graphing(fuel);
    fam.sample = [](Rng& rng) { return sample_seq(rng, 2, 6, 4); };
    fam.adjacent = g.adjacent;
    fam.sound_decidable = false;
    fam.bounded_witness = true;
    fam.witness_case = [one_equiv](Rng& rng) {
        SetPairCase c = sample_set_pair(rng);
        WitnessCase<EPSeq> wc{c.a, c.a2, {}, {}};
        auto shared = std::make_shared<std::optional<SetWitness>>();
        wc.build = [c, one_equiv, shared]() -> std::optional<EPSeq> {
            SetWitness w = one_equiv ? oneequiv_witness(c.a, c.a2, c.hint_to_first)
                                     : mequiv_witness(c.a, c.a2, c.hint_to_first,
                                                      c.hint_to_second);
            *shared = w;
            return w.b;
        };
        wc.clauses_ok = [shared]() {
            if (!*shared) return false;
            const SetWitness& w = **shared;
            bool ok = !w.b.is_constant();
            ok = ok && least_change_point(w.b) == std::optional<Nat>(w.n);
            ok = ok && in_bound_set(w.first_to_b, w.n);
            ok = ok && in_bound_set(w.second_to_b, w.n);
            if (w.b_to_second) ok = ok && in_bound_set(*w.b_to_second, w.n);
            return ok;
        };
        return wc;
    };
    fam.hint_check = [fuel](const EPSeq&, const EPSeq&) { return Tri::unknown(fuel.steps); };
    return fam;
}

using ProductPoint = std::pair<EPSeq, EPSeq>;

Family<ProductPoint> make_product_family() {
    Family<ProductPoint> fam;
    auto g1 = symmetrized<EPSeq>(
        [](const EPSeq& x, const EPSeq& y) { return Tri::of_bool(e0_raw(x, y)); }, 2);
    auto g2 = symmetrized<EPSeq>(
        [](const EPSeq& x, const EPSeq& y) { return Tri::of_bool(e0n_adjacent(x, y)); }, 2);
    fam.sample = [](Rng& rng) {
        return ProductPoint{sample_seq(rng, 2, 4, 3), sample_seq(rng, 4, 4, 3)};
    };
    fam.adjacent = [g1, g2](const ProductPoint& x, const ProductPoint& y) {
        return product_adjacent(g1, g2, x, y);
    };
    fam.oracle = [](const ProductPoint& x, const ProductPoint& y) {
        return eventually_equal(x.first, y.first) && eventually_equal(x.second, y.second);
    };
    fam.witness_case = [](Rng& rng) {
        ProductPoint x{sample_seq(rng, 2, 4, 3), sample_seq(rng, 4, 4, 3)};
        ProductPoint y = x;
        while (y == x) {
            std::vector<std::pair<Nat, Nat>> e1, e2;
            for (Nat p = 0; p < 2; ++p) {
                e1.emplace_back(rng.below(4), rng.below(2));
                e2.emplace_back(rng.below(4), rng.below(4));
            }
            y = ProductPoint{x.first.with_edits(e1), x.second.with_edits(e2)};
        }
        WitnessCase<ProductPoint> wc{x, y, {}, {}};
        wc.build = [x, y]() -> std::optional<ProductPoint> {
            EPSeq zx = (x.first == y.first) ? x.first : e0_witness(x.first, y.first);
            EPSeq zy = (x.second == y.second) ? x.second : e0n_witness(x.second, y.second);
            return ProductPoint{zx, zy};
        };
        return wc;
    };
    return fam;
}

std::string show_product(const ProductPoint& p) {
    return "(" + p.first.to_string() + " | " + p.second.to_string() + ")";
}

// The witness of a product pair can coincide with an endpoint coordinatewise
// only when that coordinate is equal; the generic check handles it.

CheckOutcome universal_diameter_check(Rng& rng, Nat rounds) {
    CheckOutcome out;
    TernaryPredicate sum = [](Nat n, Nat m, Nat k) { return n + m == k; };
    for (Nat t = 0; t < rounds; ++t) {
        std::vector<Nat> nats;
        while (nats.size() < 3) {
            Nat v = rng.below(12);
            if (std::find(nats.begin(), nats.end(), v) == nats.end()) nats.push_back(v);
        }
        std::vector<UNode> verts;
        for (Nat v : nats) verts.emplace_back(v);
        for (std::size_t i = 0; i < nats.size(); ++i)
            for (std::size_t j = 0; j < nats.size(); ++j)
                if (i != j) verts.emplace_back(UTriple{nats[i], nats[j], nats[i] + nats[j]});
        std::function<bool(const UNode&, const UNode&)> edge = [&](const UNode& a,
                                                                   const UNode& b) {
            return universal_adjacent(a, b, sum);
        };
        CheckOutcome local = check_diameter_set<UNode>(verts, edge, 3, true);
        if (local.ok())
            ++out.pass;
        else {
            out.fail += local.fail;
            for (const auto& cx : local.counterexamples) out.note_fail(cx);
        }
    }
    std::sort(out.counterexamples.begin(), out.counterexamples.end());
    return out;
}

template <typename P>
void run_family_checks(const Scenario& s, const Family<P>& fam,
                       const std::function<std::string(const P&)>& show, Report& report) {
    for (const std::string& check : s.checks) {
        Rng rng(s.seed);  // each check draws its own reproducible stream
        if (check == "axioms") {
            report.checks.emplace_back("axioms", check_axioms(fam, s.pairs, rng, show));
        } else if (check == "soundness") {
            report.checks.emplace_back("soundness", check_soundness(fam, s.pairs, rng, show));
        } else if (check == "witness") {
            report.checks.emplace_back("witness",
                                       check_witness(fam, s.witness_pairs, rng, show));
        } else if (check == "diameter") {
            Nat expected = s.expected_diameter.value_or(2);
            report.checks.emplace_back(
                "diameter", check_witness_diameter(fam, s.witness_pairs, rng, expected));
        } else {
            throw ConfigError("unknown check '" + check + "'");
        }
    }
}

}  // namespace

std::vector<std::string> known_graphing_names() {
    return {"e0",     "e0n",       "vitali",  "turing",     "oneequiv",      "mequiv",
            "universal", "product", "neg_axioms", "neg_soundness", "neg_witness"};
}

Report run_suite(const Scenario& s) {
    auto start = std::chrono::steady_clock::now();
    Report report;
    report.scenario = s.name;
    report.seed = s.seed;

    const std::string& g = s.graphing;
    std::function<std::string(const EPSeq&)> show = show_seq;
    if (g == "e0") {
        run_family_checks<EPSeq>(s, make_e0_family(false, false, false), show, report);
    } else if (g == "neg_axioms") {
        run_family_checks<EPSeq>(s, make_e0_family(false, true, false), show, report);
    } else if (g == "neg_soundness") {
        run_family_checks<EPSeq>(s, make_e0_family(true, false, false), show, report);
    } else if (g == "neg_witness") {
        run_family_checks<EPSeq>(s, make_e0_family(false, false, true), show, report);
    } else if (g == "e0n") {
        run_family_checks<EPSeq>(s, make_e0n_family(), show, report);
    } else if (g == "vitali") {
        run_family_checks<Rational>(
            s, make_vitali_family(),
            [](const Rational& r) { return r.to_string(); }, report);
    } else if (g == "turing") {
        run_family_checks<EPSeq>(s, make_turing_family(s.fuel), show, report);
    } else if (g == "oneequiv") {
        run_family_checks<EPSeq>(s, make_setequiv_family(s.fuel, true), show, report);
    } else if (g == "mequiv") {
        run_family_checks<EPSeq>(s, make_setequiv_family(s.fuel, false), show, report);
    } else if (g == "product") {
        run_family_checks<ProductPoint>(s, make_product_family(), show_product, report);
    } else if (g == "universal") {
        Rng rng(s.seed);
        report.checks.emplace_back("diameter",
                                   universal_diameter_check(rng, std::max<Nat>(1, s.pairs / 50)));
    } else {
        throw ConfigError("unknown graphing '" + g + "'");
    }

    auto end = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(end - start).count();
    return report;
}

std::vector<Report> run_suite_file(const std::string& path, std::optional<Nat> seed_override) {
    std::vector<Report> out;
    for (Scenario s : load_scenario_file(path)) {
        if (seed_override) s.seed = *seed_override;
        out.push_back(run_suite(s));
    }
    return out;
}

}  // namespace eqgraph
