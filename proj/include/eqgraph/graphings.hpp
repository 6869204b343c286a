#pragma once

#include <array>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "eqgraph/core.hpp"
#include "eqgraph/machines.hpp"

namespace eqgraph {

// Hard ceiling on witness parameters we are willing to materialize (sequence
// prefixes and swap schedules grow linearly with them).
inline constexpr Nat kDeskScaleCap = Nat(1) << 22;

// ---------------------------------------------------------------------------
// Graphing record: an adjacency evaluator plus the diameter it promises.
// Families below expose raw (possibly directed) relations; `symmetrized`
// turns a raw relation into a graph by symmetrizing and removing the
// diagonal.
// ---------------------------------------------------------------------------
template <typename P>
using AdjacencyFn = std::function<Tri(const P&, const P&)>;

template <typename P>
struct Graphing {
    AdjacencyFn<P> adjacent;
    std::optional<Nat> claimed_diameter;  // nullopt: unbounded
};

template <typename P>
Graphing<P> symmetrized(AdjacencyFn<P> raw, std::optional<Nat> diameter = std::nullopt) {
    return Graphing<P>{
        [raw = std::move(raw)](const P& x, const P& y) -> Tri {
            if (x == y) return Tri::refuted();
            return tri_or(raw(x, y), raw(y, x));
        },
        diameter};
}

// ---------------------------------------------------------------------------
// Eventual equality on binary sequences.  Edges: y starts with the block
// 0^n 1 and x agrees with y strictly beyond position n.
// ---------------------------------------------------------------------------
bool e0_raw(const EPSeq& x, const EPSeq& y);
bool e0_adjacent(const EPSeq& x, const EPSeq& y);  // symmetrized, irreflexive
// Common neighbor of a distinct eventually-equal pair.  The returned z may
// coincide with an input, in which case the inputs are directly adjacent.
EPSeq e0_witness(const EPSeq& x, const EPSeq& y);

// ---------------------------------------------------------------------------
// Eventual equality on Baire-space sequences.  Edges: heads differ and the
// sequences agree strictly beyond max(x(0), y(0)).
// ---------------------------------------------------------------------------
bool e0n_adjacent(const EPSeq& x, const EPSeq& y);
EPSeq e0n_witness(const EPSeq& x, const EPSeq& y);

// ---------------------------------------------------------------------------
// Vitali relation on rationals.  q_1, q_2, ... is the pinned enumeration of
// the non-integer rationals (see README): positive reduced p/q ordered by
// p+q then p, each followed by its negative.
// ---------------------------------------------------------------------------
Rational vitali_qn(Nat n);  // n >= 1
bool vitali_raw(const Rational& x, const Rational& y);
bool vitali_adjacent(const Rational& x, const Rational& y);
Rational vitali_witness(const Rational& x, const Rational& y);

// ---------------------------------------------------------------------------
// Turing equivalence (directed raw relation; symmetrize for the graph).
// turing_adjacent(x, z): z splits as 0^n 1 ^ y and some pair e0, e1 < n has
// phi_{e0}^x = y and phi_{e1}^y = x.  Verified is unreachable at finite
// fuel; Refuted needs the split to fail or every candidate pair to be
// refuted by a halting disagreement.
// ---------------------------------------------------------------------------
// Attempts to refute "phi_e with oracle x equals y" on inputs below the
// meter's input bound.
Tri oracle_reduction_check(const Code& e, const EPSeq& x, const EPSeq& y, FuelMeter& meter);
Tri turing_adjacent(const EPSeq& x, const EPSeq& z, const Fuel& fuel);
Graphing<EPSeq> turing_graphing(const Fuel& fuel);
EPSeq turing_witness(const EPSeq& x, const EPSeq& y, const Code& e0, const Code& e1);

// ---------------------------------------------------------------------------
// 1-equivalence and m-equivalence of subsets of N (directed raw relations).
// ---------------------------------------------------------------------------
// Bounded refutation of "phi_e is a 1-equivalence from a to b": any halting
// injectivity violation or membership mismatch refutes; divergence never
// does.
Tri oneequiv_check(const Code& e, const EPSeq& a, const EPSeq& b, FuelMeter& meter);
// Same without the injectivity requirement.
Tri mreduction_check(const Code& e, const EPSeq& a, const EPSeq& b, FuelMeter& meter);

// Least n > 0 with b(n-1) != b(n); nullopt for constant b.
std::optional<Nat> least_change_point(const EPSeq& b);

Tri oneequiv_adjacent(const EPSeq& a, const EPSeq& b, const Fuel& fuel);
Tri mequiv_adjacent(const EPSeq& a, const EPSeq& b, const Fuel& fuel);
Graphing<EPSeq> oneequiv_graphing(const Fuel& fuel);
Graphing<EPSeq> mequiv_graphing(const Fuel& fuel);

// Witness construction: starting from `first`, transpose numbers below 2n so
// the image set's least change point lands exactly on n, with n above every
// supplied hint code.  The returned candidates are the codes whose bound-set
// membership the construction promises.
struct SetWitness {
    EPSeq b;             // the common neighbor
    Nat n = 0;           // its least change point
    SwapList schedule;   // transpositions applied to `first`, entries < 2n
    Code first_to_b;     // swap program: first -> b
    Code b_to_first;     // inverse swap program: b -> first
    Code second_to_b;    // compose(swap, hint): second -> b
    std::optional<Code> b_to_second;  // m-equivalence only
};

// hint: a code for a 1-equivalence from `second` to `first`.
SetWitness oneequiv_witness(const EPSeq& first, const EPSeq& second, const Code& hint);
// hint_to_first: m-reduction second -> first; hint_to_second: first -> second.
SetWitness mequiv_witness(const EPSeq& first, const EPSeq& second, const Code& hint_to_first,
                          const Code& hint_to_second);

// ---------------------------------------------------------------------------
// Universal graph over N + N^3 for a relation E with nEm <-> exists k
// R(n,m,k): edges join a and (n,m,k) exactly when a is n or m and R(n,m,k).
// ---------------------------------------------------------------------------
struct UTriple {
    Nat n = 0, m = 0, k = 0;
    friend auto operator<=>(const UTriple&, const UTriple&) = default;
};
using UNode = std::variant<Nat, UTriple>;
using TernaryPredicate = std::function<bool(Nat, Nat, Nat)>;

bool universal_adjacent(const UNode& v, const UNode& w, const TernaryPredicate& r);
// Two-edge path n, (n,m,k), m for the least k below the bound, if any.
std::optional<std::vector<UNode>> universal_path(Nat n, Nat m, const TernaryPredicate& r,
                                                 Nat search_bound);

// ---------------------------------------------------------------------------
// Products.
// ---------------------------------------------------------------------------
template <typename P1, typename P2>
Tri product_adjacent(const Graphing<P1>& g1, const Graphing<P2>& g2, const std::pair<P1, P2>& x,
                     const std::pair<P1, P2>& y) {
    if (x == y) return Tri::refuted();
    auto clause = [](const auto& g, const auto& u, const auto& v) {
        return u == v ? Tri::verified() : g.adjacent(u, v);
    };
    Tri direct = tri_and(clause(g1, x.first, y.first), clause(g2, x.second, y.second));
    Tri mirrored = tri_and(clause(g1, y.first, x.first), clause(g2, y.second, x.second));
    return tri_or(direct, mirrored);
}

// Infinite power of one uniformly-given graphing on naturals-valued points:
// for-all-coordinates clause, evaluated over one combined prefix + lcm
// window.  The base adjacency must itself be symmetric; the diagonal is
// removed here.
Tri seq_product_adjacent(const std::function<Tri(Nat, Nat)>& base, const EPSeq& xs,
                         const EPSeq& ys);

}  // namespace eqgraph
