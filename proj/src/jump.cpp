#include "eqgraph/jump.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include <json.hpp>

#include "eqgraph/graphings.hpp"

namespace eqgraph {

// ---------------------------------------------------------------------------
// FinSpace
// ---------------------------------------------------------------------------

FinSpace::FinSpace(Nat size, std::vector<std::vector<Nat>> blocks,
                   std::vector<std::pair<Nat, Nat>> edges)
    : size_(size), blocks_(std::move(blocks)), edges_(std::move(edges)) {
    if (size_ == 0 || size_ > 4096) throw RepresentationError("space size must lie in [1, 4096]");
    block_of_.assign(size_, size_);
    for (Nat b = 0; b < blocks_.size(); ++b) {
        if (blocks_[b].empty()) throw RepresentationError("empty block");
        for (Nat id : blocks_[b]) {
            if (id >= size_) throw RepresentationError("block id out of range");
            if (block_of_[id] != size_) throw RepresentationError("id appears in two blocks");
            block_of_[id] = b;
        }
    }
    for (Nat id = 0; id < size_; ++id)
        if (block_of_[id] == size_) throw RepresentationError("id missing from the partition");
    std::vector<std::vector<Nat>> adj(size_);
    for (auto& [u, v] : edges_) {
        if (u >= size_ || v >= size_) throw RepresentationError("edge id out of range");
        if (u == v) throw RepresentationError("loop edge");
        if (block_of_[u] != block_of_[v]) throw RepresentationError("edge crosses blocks");
        if (u > v) std::swap(u, v);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    // All-pairs BFS; also verifies each block is connected by the edges.
    dist_.assign(size_, std::vector<std::optional<Nat>>(size_));
    for (Nat s = 0; s < size_; ++s) {
        dist_[s][s] = 0;
        std::queue<Nat> q;
        q.push(s);
        while (!q.empty()) {
            Nat u = q.front();
            q.pop();
            for (Nat v : adj[u]) {
                if (!dist_[s][v]) {
                    dist_[s][v] = *dist_[s][u] + 1;
                    q.push(v);
                }
            }
        }
    }
    for (Nat u = 0; u < size_; ++u) {
        for (Nat v = 0; v < size_; ++v) {
            bool same = block_of_[u] == block_of_[v];
            if (same != dist_[u][v].has_value())
                throw RepresentationError("graph components do not match the partition");
            if (dist_[u][v]) diameter_ = std::max(diameter_, *dist_[u][v]);
        }
    }
}

Nat FinSpace::block_of(Nat id) const {
    if (id >= size_) throw RepresentationError("point id out of range");
    return block_of_[id];
}

bool FinSpace::edge(Nat u, Nat v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

std::optional<Nat> FinSpace::dist(Nat x, Nat y) const {
    if (x >= size_ || y >= size_) throw RepresentationError("point id out of range");
    return dist_[x][y];
}

FinSpace FinSpace::parse_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad space JSON: ") + e.what());
    }
    if (!j.contains("size") || !j.contains("blocks"))
        throw ParseError("space JSON needs 'size' and 'blocks'");
    std::vector<std::pair<Nat, Nat>> edges;
    if (j.contains("edges"))
        for (const auto& e : j["edges"]) {
            auto v = e.get<std::vector<Nat>>();
            if (v.size() != 2) throw ParseError("edges must be id pairs");
            edges.emplace_back(v[0], v[1]);
        }
    try {
        return FinSpace(j["size"].get<Nat>(), j["blocks"].get<std::vector<std::vector<Nat>>>(),
                        std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad space JSON: ") + e.what());
    }
}

std::string FinSpace::to_json() const {
    nlohmann::json j;
    j["size"] = size_;
    j["blocks"] = blocks_;
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : edges_) j["edges"].push_back({u, v});
    return j.dump();
}

// ---------------------------------------------------------------------------
// Sequences over the space
// ---------------------------------------------------------------------------

void validate_ptseq(const FinSpace& space, const PtSeq& xs) {
    if (xs.max_value() >= space.size())
        throw RepresentationError("sequence mentions a point id outside the space");
}

std::set<Nat> occurring(const PtSeq& xs) {
    std::set<Nat> out(xs.prefix().begin(), xs.prefix().end());
    out.insert(xs.period().begin(), xs.period().end());
    return out;
}

std::optional<Nat> dist_pt_seq(const FinSpace& space, Nat x, const PtSeq& ys) {
    std::optional<Nat> best;
    for (Nat y : occurring(ys)) {
        auto d = space.dist(x, y);
        if (d && (!best || *d < *best)) best = d;
    }
    return best;
}

std::optional<Nat> dist_seq_seq(const FinSpace& space, const PtSeq& xs, const PtSeq& ys) {
    validate_ptseq(space, xs);
    validate_ptseq(space, ys);
    Nat worst = 0;
    for (Nat x : occurring(xs)) {
        auto d = dist_pt_seq(space, x, ys);
        if (!d) return std::nullopt;
        worst = std::max(worst, *d);
    }
    for (Nat y : occurring(ys)) {
        auto d = dist_pt_seq(space, y, xs);
        if (!d) return std::nullopt;
        worst = std::max(worst, *d);
    }
    return worst;
}

bool same_occurrence_set(const PtSeq& xs, const PtSeq& ys) {
    return occurring(xs) == occurring(ys);
}

bool jump_equiv(const FinSpace& space, const PtSeq& xs, const PtSeq& ys) {
    validate_ptseq(space, xs);
    validate_ptseq(space, ys);
    std::set<Nat> bx, by;
    for (Nat x : occurring(xs)) bx.insert(space.block_of(x));
    for (Nat y : occurring(ys)) by.insert(space.block_of(y));
    return bx == by;
}

// ---------------------------------------------------------------------------
// Descents
// ---------------------------------------------------------------------------

namespace {

bool descent_at(const PtSeq& xs, Nat i) { return xs.at(2 * i + 1) < xs.at(2 * i); }

// First pair index from which the descent pattern is periodic, and its
// period.
std::pair<Nat, Nat> descent_cycle(const PtSeq& xs) {
    Nat p = xs.prefix_len();
    Nat q = xs.period_len();
    Nat start = (p + 1) / 2;
    Nat cycle = (q % 2 == 0) ? q / 2 : q;
    return {start, std::max<Nat>(cycle, 1)};
}

}  // namespace

bool in_C(const PtSeq& xs) {
    auto [start, cycle] = descent_cycle(xs);
    for (Nat i = start; i < start + cycle; ++i)
        if (descent_at(xs, i)) return true;
    return false;
}

std::optional<Nat> g_eval(const PtSeq& xs, Nat n) {
    auto [start, cycle] = descent_cycle(xs);
    bool recurrent = in_C(xs);
    Nat seen = 0;
    Nat limit = recurrent ? start + cycle * (n + 2) + n + 2 : start + cycle;
    for (Nat i = 0; i < limit; ++i) {
        if (descent_at(xs, i)) {
            if (seen == n) return i;
            ++seen;
        }
    }
    return std::nullopt;  // fewer than n+1 descents exist
}

// ---------------------------------------------------------------------------
// H adjacency
// ---------------------------------------------------------------------------

namespace {

bool within_one(const FinSpace& space, Nat u, Nat v) {
    auto d = space.dist(u, v);
    return d && *d <= 1;
}

bool h_clause_one(const FinSpace& space, const PtSeq& xs, const PtSeq& zs) {
    Nat w = agreement_window(xs, zs);
    for (Nat i = 0; i < w; ++i)
        if (!within_one(space, xs.at(i), zs.at(i))) return false;
    return true;
}

bool h_clause_two(const FinSpace& space, const PtSeq& xs, const PtSeq& zs, Nat scale) {
    if (!in_C(zs)) return false;
    Nat p = std::max(xs.prefix_len(), zs.prefix_len());
    Nat l = std::lcm(xs.period_len(), zs.period_len());
    Nat window = p + 2 * scale * l;  // doubled again for descent parity
    for (Nat n = 0; n < window; ++n) {
        Nat g = *g_eval(zs, n);  // total on members of C
        bool j0 = false, j1 = false;
        for (Nat j = 0; j <= g && !(j0 && j1); ++j) {
            if (!j0 && within_one(space, xs.at(n), zs.at(j))) j0 = true;
            if (!j1 && within_one(space, xs.at(j), zs.at(n))) j1 = true;
        }
        if (!(j0 && j1)) return false;
    }
    return true;
}

}  // namespace

bool h_adjacent_windowed(const FinSpace& space, const PtSeq& xs, const PtSeq& zs,
                         Nat window_scale) {
    validate_ptseq(space, xs);
    validate_ptseq(space, zs);
    return h_clause_one(space, xs, zs) || h_clause_two(space, xs, zs, window_scale);
}

bool h_adjacent(const FinSpace& space, const PtSeq& xs, const PtSeq& zs) {
    return h_adjacent_windowed(space, xs, zs, 2);
}

// ---------------------------------------------------------------------------
// Claim 1 rearrangement
// ---------------------------------------------------------------------------

namespace {

// Least index j with d(seq(j), id) <= 1; the preconditions guarantee one.
Nat least_index_within_one(const FinSpace& space, const PtSeq& seq, Nat id) {
    Nat w = seq.prefix_len() + seq.period_len();
    for (Nat j = 0; j < w; ++j)
        if (within_one(space, seq.at(j), id)) return j;
    throw Error("claim1: no index within distance one; precondition violated");
}

}  // namespace

PtSeq claim1_rearrange(const FinSpace& space, const PtSeq& xs, const PtSeq& ys, const PtSeq& ws) {
    validate_ptseq(space, xs);
    validate_ptseq(space, ys);
    validate_ptseq(space, ws);
    {
        auto dxw = dist_seq_seq(space, xs, ws);
        auto dyw = dist_seq_seq(space, ys, ws);
        if (!dxw || *dxw > 1 || !dyw || *dyw > 1)
            throw DomainError("claim1 needs both inputs within sequence distance 1 of ws");
    }
    if (ws.is_constant()) return ws;

    // Re-pattern ws so consecutive pairs are unequal, preserving the
    // occurrence set: o1,o2, o2,o3, ..., then (o1,o2) forever.
    std::set<Nat> occ_set = occurring(ws);
    std::vector<Nat> occ(occ_set.begin(), occ_set.end());
    std::vector<Nat> pre;
    for (std::size_t t = 0; t + 1 < occ.size(); ++t) {
        pre.push_back(occ[t]);
        pre.push_back(occ[t + 1]);
    }
    PtSeq wpat(std::move(pre), {occ[0], occ[1]});

    // Least strictly increasing descent bound covering, at each n, the four
    // distance conditions for position n and for both partners of its pair.
    auto need_at = [&](Nat n) -> Nat {
        Nat m = 0;
        m = std::max(m, least_index_within_one(space, wpat, xs.at(n)));
        m = std::max(m, least_index_within_one(space, wpat, ys.at(n)));
        for (Nat pos : {2 * (n / 2), 2 * (n / 2) + 1}) {
            m = std::max(m, least_index_within_one(space, xs, wpat.at(pos)));
            m = std::max(m, least_index_within_one(space, ys, wpat.at(pos)));
        }
        return m + 1;
    };
    // need_at is eventually periodic; past its cycle the running maximum
    // freezes and f advances by exactly one per step.
    Nat p = std::max({xs.prefix_len(), ys.prefix_len(), wpat.prefix_len()});
    Nat l = std::lcm(std::lcm(xs.period_len(), ys.period_len()),
                     std::lcm<Nat>(wpat.period_len(), 2));
    Nat probe = p + 2 * l;
    Nat ceiling = 0;
    for (Nat n = 0; n < probe; ++n) ceiling = std::max(ceiling, need_at(n));

    std::vector<Nat> f;
    Nat stable_from = 0;
    for (Nat n = 0;; ++n) {
        Nat v = std::max(need_at(n), f.empty() ? Nat(0) : f.back() + 1);
        f.push_back(v);
        if (v >= ceiling && n >= probe) {
            stable_from = n;
            break;
        }
    }
    // Descents exactly at image(f): finitely many sporadic values, then every
    // index from f(stable_from) on.
    Nat tail_start = f[stable_from];
    std::set<Nat> sporadic(f.begin(), f.end());
    auto descending = [&](Nat i) { return i >= tail_start || sporadic.count(i) > 0; };

    Nat pair_prefix = std::max<Nat>((wpat.prefix_len() + 1) / 2, tail_start + 1);
    std::vector<Nat> zpre;
    for (Nat i = 0; i < pair_prefix; ++i) {
        Nat a = wpat.at(2 * i), b = wpat.at(2 * i + 1);
        Nat hi = std::max(a, b), lo = std::min(a, b);
        if (descending(i)) {
            zpre.push_back(hi);
            zpre.push_back(lo);
        } else {
            zpre.push_back(lo);
            zpre.push_back(hi);
        }
    }
    // Beyond the prefix every pair is (occ[0], occ[1]) and every position
    // descends.
    Nat hi = std::max(occ[0], occ[1]), lo = std::min(occ[0], occ[1]);
    return PtSeq(std::move(zpre), {hi, lo});
}

// ---------------------------------------------------------------------------
// Claim 2 midpoint
// ---------------------------------------------------------------------------

PtSeq claim2_midpoint(const FinSpace& space, const PtSeq& xs, const PtSeq& ys) {
    validate_ptseq(space, xs);
    validate_ptseq(space, ys);
    auto dopt = dist_seq_seq(space, xs, ys);
    if (!dopt || *dopt < 2) throw DomainError("claim2 needs finite sequence distance >= 2");
    Nat k = *dopt - 1;

    auto even_slot = [&](Nat i) -> Nat {
        Nat xi = xs.at(i);
        auto d = dist_pt_seq(space, xi, ys);
        if (d && *d <= k) return xi;
        for (Nat w = 0; w < space.size(); ++w) {
            if (!space.edge(xi, w)) continue;
            auto dw = dist_pt_seq(space, w, ys);
            if (dw && *dw == k) return w;
        }
        throw Error("claim2: no qualifying neighbor for an even slot");
    };
    auto odd_slot = [&](Nat i) -> Nat {
        Nat yi = ys.at(i);
        auto d = dist_pt_seq(space, yi, xs);
        if (d && *d <= k) {
            for (Nat x : occurring(xs)) {
                auto dx = space.dist(yi, x);
                if (dx && *dx <= k) return x;
            }
        }
        // Every occurrence of xs is at distance exactly k+1 from ys(i);
        // step one edge from the least such toward ys(i).
        for (Nat x : occurring(xs)) {
            auto dx = space.dist(yi, x);
            if (!dx || *dx != k + 1) continue;
            for (Nat w = 0; w < space.size(); ++w) {
                if (!space.edge(x, w)) continue;
                auto dw = space.dist(w, yi);
                if (dw && *dw == k) return w;
            }
        }
        throw Error("claim2: no qualifying neighbor for an odd slot");
    };

    Nat p = std::max(xs.prefix_len(), ys.prefix_len());
    Nat l = std::lcm(xs.period_len(), ys.period_len());
    std::vector<Nat> pre, per;
    for (Nat i = 0; i < p + l; ++i) {
        pre.push_back(even_slot(i));
        pre.push_back(odd_slot(i));
    }
    for (Nat i = p + l; i < p + 2 * l; ++i) {
        per.push_back(even_slot(i));
        per.push_back(odd_slot(i));
    }
    return PtSeq(std::move(pre), std::move(per));
}

// ---------------------------------------------------------------------------
// Jump paths
// ---------------------------------------------------------------------------

namespace {

void append_dedup(std::vector<PtSeq>& path, const PtSeq& node) {
    if (path.empty() || !(path.back() == node)) path.push_back(node);
}

}  // namespace

std::vector<PtSeq> jump_path(const FinSpace& space, const PtSeq& xs, const PtSeq& ys) {
    if (!jump_equiv(space, xs, ys)) throw DomainError("jump path needs equivalent sequences");
    std::vector<PtSeq> path{xs};
    if (xs == ys) return path;
    PtSeq cur = xs;
    for (;;) {
        Nat d = *dist_seq_seq(space, cur, ys);
        if (d <= 1) {
            PtSeq z = claim1_rearrange(space, cur, ys, cur);
            append_dedup(path, z);
            append_dedup(path, ys);
            return path;
        }
        if (d == 2) {
            PtSeq w = claim2_midpoint(space, cur, ys);
            PtSeq z = claim1_rearrange(space, cur, ys, w);
            append_dedup(path, z);
            append_dedup(path, ys);
            return path;
        }
        PtSeq w = claim2_midpoint(space, cur, ys);
        PtSeq z = claim1_rearrange(space, cur, cur, w);
        append_dedup(path, z);
        cur = z;
    }
}

// ---------------------------------------------------------------------------
// Jump graphing through the infinite product
// ---------------------------------------------------------------------------

bool borel_jump_adjacent(const FinSpace& space, const PtSeq& xs, const PtSeq& ys) {
    validate_ptseq(space, xs);
    validate_ptseq(space, ys);
    if (xs == ys) return false;
    if (same_occurrence_set(xs, ys)) return true;
    Tri product = seq_product_adjacent(
        [&](Nat u, Nat v) { return Tri::of_bool(space.edge(u, v)); }, xs, ys);
    return product.is_verified();
}

std::vector<PtSeq> borel_jump_path(const FinSpace& space, const PtSeq& xs, const PtSeq& ys) {
    if (!jump_equiv(space, xs, ys)) throw DomainError("jump path needs equivalent sequences");
    std::vector<PtSeq> path{xs};
    if (xs == ys) return path;

    // Interleave each sequence with partners from the other so the pair
    // becomes coordinatewise equivalent.
    auto least_block_match = [&](const PtSeq& seq, Nat block) -> Nat {
        Nat w = seq.prefix_len() + seq.period_len();
        for (Nat j = 0; j < w; ++j)
            if (space.block_of(seq.at(j)) == block) return seq.at(j);
        throw Error("borel jump: missing block partner; equivalence violated");
    };
    Nat p = std::max(xs.prefix_len(), ys.prefix_len());
    Nat l = std::lcm(xs.period_len(), ys.period_len());
    std::vector<Nat> xt_pre, xt_per, yt_pre, yt_per;
    for (Nat n = 0; n < p + 2 * l; ++n) {
        Nat xn = xs.at(n), yn = ys.at(n);
        Nat x_partner = least_block_match(xs, space.block_of(yn));
        Nat y_partner = least_block_match(ys, space.block_of(xn));
        auto& xdst = (n < p + l) ? xt_pre : xt_per;
        auto& ydst = (n < p + l) ? yt_pre : yt_per;
        xdst.push_back(xn);
        xdst.push_back(x_partner);
        ydst.push_back(y_partner);
        ydst.push_back(yn);
    }
    PtSeq xt(std::move(xt_pre), std::move(xt_per));
    PtSeq yt(std::move(yt_pre), std::move(yt_per));

    append_dedup(path, xt);
    // Walk every coordinate along a least-id shortest path toward its
    // target; each step is a product-graph edge.
    auto step_toward = [&](Nat u, Nat v) -> Nat {
        if (u == v) return u;
        Nat du = *space.dist(u, v);
        for (Nat w = 0; w < space.size(); ++w) {
            if (!space.edge(u, w)) continue;
            auto dw = space.dist(w, v);
            if (dw && *dw + 1 == du) return w;
        }
        throw Error("borel jump: no step toward target");
    };
    Nat t_max = 0;
    {
        Nat w = agreement_window(xt, yt);
        for (Nat i = 0; i < w; ++i) t_max = std::max(t_max, *space.dist(xt.at(i), yt.at(i)));
    }
    PtSeq cur = xt;
    for (Nat t = 0; t < t_max; ++t) {
        Nat wp = std::max(cur.prefix_len(), yt.prefix_len());
        Nat wl = std::lcm(cur.period_len(), yt.period_len());
        std::vector<Nat> pre, per;
        for (Nat i = 0; i < wp + wl; ++i) pre.push_back(step_toward(cur.at(i), yt.at(i)));
        for (Nat i = wp + wl; i < wp + 2 * wl; ++i) per.push_back(step_toward(cur.at(i), yt.at(i)));
        PtSeq next(std::move(pre), std::move(per));
        append_dedup(path, next);
        cur = next;
    }
    append_dedup(path, yt);
    append_dedup(path, ys);
    return path;
}

}  // namespace eqgraph
