#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqgraph/core.hpp"

namespace eqgraph {

// ---------------------------------------------------------------------------
// FinSpace: a finite point set carrying an equivalence (blocks) and a graph
// whose connected components are exactly the blocks.  The order on points is
// numeric order on ids.
// ---------------------------------------------------------------------------
class FinSpace {
public:
    FinSpace(Nat size, std::vector<std::vector<Nat>> blocks,
             std::vector<std::pair<Nat, Nat>> edges);

    static FinSpace parse_json_text(const std::string& text);
    std::string to_json() const;

    Nat size() const { return size_; }
    const std::vector<std::vector<Nat>>& blocks() const { return blocks_; }
    Nat block_of(Nat id) const;
    bool edge(Nat u, Nat v) const;
    const std::vector<std::pair<Nat, Nat>>& edges() const { return edges_; }
    // Largest within-block eccentricity (0 when edgeless singletons only).
    Nat diameter() const { return diameter_; }

    // Graph distance; nullopt across blocks.
    std::optional<Nat> dist(Nat x, Nat y) const;

    friend bool operator==(const FinSpace&, const FinSpace&) = default;

private:
    Nat size_;
    std::vector<std::vector<Nat>> blocks_;
    std::vector<std::pair<Nat, Nat>> edges_;
    std::vector<Nat> block_of_;
    std::vector<std::vector<std::optional<Nat>>> dist_;
    Nat diameter_ = 0;
};

// Point sequences are eventually periodic sequences of point ids.
using PtSeq = EPSeq;

void validate_ptseq(const FinSpace& space, const PtSeq& xs);

// Ids occurring anywhere in the sequence.
std::set<Nat> occurring(const PtSeq& xs);

// min over occurrences of ys of the distance from x.
std::optional<Nat> dist_pt_seq(const FinSpace& space, Nat x, const PtSeq& ys);
// max over both sides of the point-to-sequence distances.
std::optional<Nat> dist_seq_seq(const FinSpace& space, const PtSeq& xs, const PtSeq& ys);

// Same set of ids (equality-jump equivalence of the sequences).
bool same_occurrence_set(const PtSeq& xs, const PtSeq& ys);
// Same set of blocks met (the jump equivalence).
bool jump_equiv(const FinSpace& space, const PtSeq& xs, const PtSeq& ys);

// ---------------------------------------------------------------------------
// Descent bookkeeping: position i is a descent when xs(2i+1) < xs(2i).
// in_C: infinitely many descents.  g_eval(xs, n): index of the (n+1)st
// descent; nullopt when fewer exist.
// ---------------------------------------------------------------------------
bool in_C(const PtSeq& xs);
std::optional<Nat> g_eval(const PtSeq& xs, Nat n);

// ---------------------------------------------------------------------------
// The jump graph H on sequences: either every coordinate pair sits within
// distance 1, or zs has infinitely many descents and every n is served by
// indices j0, j1 <= g(zs, n) with d(xs(n), zs(j0)) <= 1 and
// d(xs(j1), zs(n)) <= 1.  Decidable: both clauses stabilize over a window
// of twice the combined period, doubled again for descent parity.
// ---------------------------------------------------------------------------
bool h_adjacent(const FinSpace& space, const PtSeq& xs, const PtSeq& zs);
// Same with the (H2) scan window scaled up, for cross-validation.
bool h_adjacent_windowed(const FinSpace& space, const PtSeq& xs, const PtSeq& zs,
                         Nat window_scale);

// Rearranges ws (same occurrence set) into a descent-patterned zs with
// h_adjacent(xs, zs) and h_adjacent(ys, zs).  Requires both sequence
// distances to ws to be at most 1.  The descent bound is the least strictly
// increasing function covering the four distance conditions at each
// position, pair-partners included.
PtSeq claim1_rearrange(const FinSpace& space, const PtSeq& xs, const PtSeq& ys, const PtSeq& ws);

// From dist_seq_seq(xs, ys) = k+1 >= 2, builds ws with distances exactly 1
// from xs and exactly k from ys.  Ties break toward the least id.
PtSeq claim2_midpoint(const FinSpace& space, const PtSeq& xs, const PtSeq& ys);

// H-path between jump-equivalent sequences, of length <= max(2, diameter);
// consecutive elements are h_adjacent.
std::vector<PtSeq> jump_path(const FinSpace& space, const PtSeq& xs, const PtSeq& ys);

// ---------------------------------------------------------------------------
// Jump graphing through the infinite product: an edge is either an
// occurrence-set equality or a coordinatewise within-one-step move.
// ---------------------------------------------------------------------------
bool borel_jump_adjacent(const FinSpace& space, const PtSeq& xs, const PtSeq& ys);
std::vector<PtSeq> borel_jump_path(const FinSpace& space, const PtSeq& xs, const PtSeq& ys);

}  // namespace eqgraph
