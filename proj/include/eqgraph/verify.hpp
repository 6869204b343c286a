#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eqgraph/core.hpp"
#include "eqgraph/graphings.hpp"

namespace eqgraph {

// ---------------------------------------------------------------------------
// Deterministic sampling.  mt19937_64 is fully pinned by the standard; the
// bounded draw below avoids the implementation-defined distributions so the
// same seed yields the same stream everywhere.
// ---------------------------------------------------------------------------
class Rng {
public:
    explicit Rng(Nat seed) : gen_(seed) {}
    Nat below(Nat bound) { return bound == 0 ? 0 : gen_() % bound; }
    bool coin() { return (gen_() & 1) != 0; }

private:
    std::mt19937_64 gen_;
};

EPSeq sample_seq(Rng& rng, Nat alphabet, Nat max_prefix, Nat max_period);
Rational sample_rational(Rng& rng, Nat num_bound, Nat den_bound);
SwapList sample_swap_list(Rng& rng, Nat max_len, Nat entry_bound);
// Image of a set under a finite swapping (the pushforward along
// swap_apply(s, .)).
EPSeq swap_image(const EPSeq& a, const SwapList& s);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------
struct CheckOutcome {
    Nat pass = 0, fail = 0, unknown = 0;
    std::vector<std::string> counterexamples;

    bool ok() const { return fail == 0; }
    void note_fail(const std::string& cx) {
        ++fail;
        if (counterexamples.size() < 16) counterexamples.push_back(cx);
    }
};

struct Report {
    std::string scenario;
    Nat seed = 0;
    std::vector<std::pair<std::string, CheckOutcome>> checks;
    double elapsed_ms = 0;

    bool ok() const;
    std::string to_text() const;
    // with_timing=false yields the canonical comparable form.
    std::string to_json(bool with_timing) const;
};

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------
struct Scenario {
    std::string name;
    std::string graphing;  // family name, possibly a bundled negative control
    Nat seed = 1;
    Fuel fuel{100000, 64};
    Nat pairs = 1000;
    Nat witness_pairs = 500;
    std::optional<Nat> expected_diameter;
    std::vector<std::string> checks{"axioms", "soundness", "witness", "diameter"};

    static Scenario parse_json_text(const std::string& text);
};

std::vector<Scenario> load_scenario_file(const std::string& path);

Report run_suite(const Scenario& s);
std::vector<Report> run_suite_file(const std::string& path, std::optional<Nat> seed_override);

std::vector<std::string> known_graphing_names();

// ---------------------------------------------------------------------------
// Generic checks over an explicit vertex set: BFS all pairs within
// components; distances must stay <= expected and attain it somewhere when
// required.
// ---------------------------------------------------------------------------
template <typename P>
CheckOutcome check_diameter_set(const std::vector<P>& vertices,
                                const std::function<bool(const P&, const P&)>& edge, Nat expected,
                                bool require_attained) {
    CheckOutcome out;
    const std::size_t n = vertices.size();
    std::vector<std::vector<Nat>> d(n, std::vector<Nat>(n, Nat(-1)));
    for (std::size_t s = 0; s < n; ++s) {
        d[s][s] = 0;
        std::vector<std::size_t> frontier{s};
        while (!frontier.empty()) {
            std::vector<std::size_t> next;
            for (std::size_t u : frontier) {
                for (std::size_t v = 0; v < n; ++v) {
                    if (d[s][v] != Nat(-1) || !edge(vertices[u], vertices[v])) continue;
                    d[s][v] = d[s][u] + 1;
                    next.push_back(v);
                }
            }
            frontier = std::move(next);
        }
    }
    Nat worst = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (d[u][v] == Nat(-1)) continue;
            worst = std::max(worst, d[u][v]);
            if (d[u][v] > expected)
                out.note_fail("distance " + std::to_string(d[u][v]) + " exceeds " +
                              std::to_string(expected));
        }
    if (require_attained && worst != expected)
        out.note_fail("diameter " + std::to_string(worst) + " never attains " +
                      std::to_string(expected));
    if (out.fail == 0) ++out.pass;
    return out;
}

}  // namespace eqgraph
