#include "eqgraph/structures.hpp"

#include "eqgraph/graphings.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace eqgraph {

// ---------------------------------------------------------------------------
// TrivialFormula
// ---------------------------------------------------------------------------

TrivialFormula TrivialFormula::negation(TrivialFormula f) {
    TrivialFormula out{Kind::Not, 0, 0, 0, {}};
    out.kids.push_back(std::move(f));
    return out;
}

TrivialFormula TrivialFormula::conj(std::vector<TrivialFormula> kids) {
    return {Kind::And, 0, 0, 0, std::move(kids)};
}

TrivialFormula TrivialFormula::disj(std::vector<TrivialFormula> kids) {
    return {Kind::Or, 0, 0, 0, std::move(kids)};
}

bool TrivialFormula::eval(std::span<const Nat> t) const {
    switch (kind) {
        case Kind::Top: return true;
        case Kind::Bot: return false;
        case Kind::Eq: return t[i] == t[j];
        case Kind::ValEq: return t[i] == c;
        case Kind::Not: return !kids[0].eval(t);
        case Kind::And:
            return std::all_of(kids.begin(), kids.end(),
                               [&](const TrivialFormula& f) { return f.eval(t); });
        case Kind::Or:
            return std::any_of(kids.begin(), kids.end(),
                               [&](const TrivialFormula& f) { return f.eval(t); });
    }
    return false;
}

std::size_t TrivialFormula::min_arity() const {
    std::size_t m = 0;
    switch (kind) {
        case Kind::Eq: m = std::max(i, j) + 1; break;
        case Kind::ValEq: m = i + 1; break;
        default: break;
    }
    for (const auto& k : kids) m = std::max(m, k.min_arity());
    return m;
}

bool TrivialFormula::uses_val_atoms() const {
    if (kind == Kind::ValEq) return true;
    return std::any_of(kids.begin(), kids.end(),
                       [](const TrivialFormula& f) { return f.uses_val_atoms(); });
}

Nat TrivialFormula::max_constant() const {
    Nat m = (kind == Kind::ValEq) ? c : 0;
    for (const auto& k : kids) m = std::max(m, k.max_constant());
    return m;
}

std::strong_ordering TrivialFormula::operator<=>(const TrivialFormula& o) const {
    if (auto c0 = kind <=> o.kind; c0 != 0) return c0;
    if (auto c1 = i <=> o.i; c1 != 0) return c1;
    if (auto c2 = j <=> o.j; c2 != 0) return c2;
    if (auto c3 = c <=> o.c; c3 != 0) return c3;
    if (auto c4 = kids.size() <=> o.kids.size(); c4 != 0) return c4;
    for (std::size_t t = 0; t < kids.size(); ++t)
        if (auto c5 = kids[t] <=> o.kids[t]; c5 != 0) return c5;
    return std::strong_ordering::equal;
}

TrivialFormula TrivialFormula::simplified() const {
    using K = Kind;
    switch (kind) {
        case K::Top:
        case K::Bot:
        case K::ValEq:
            return *this;
        case K::Eq:
            if (i == j) return top();
            return eq(std::min(i, j), std::max(i, j));
        case K::Not: {
            TrivialFormula k = kids[0].simplified();
            if (k.kind == K::Top) return bot();
            if (k.kind == K::Bot) return top();
            if (k.kind == K::Not) return k.kids[0];
            return negation(std::move(k));
        }
        case K::And:
        case K::Or: {
            const bool is_and = (kind == K::And);
            const K unit = is_and ? K::Top : K::Bot;
            const K zero = is_and ? K::Bot : K::Top;
            std::vector<TrivialFormula> flat;
            for (const auto& kid : kids) {
                TrivialFormula k = kid.simplified();
                if (k.kind == unit) continue;
                if (k.kind == zero) return k;
                if (k.kind == kind) {
                    for (auto& g : k.kids) flat.push_back(std::move(g));
                } else {
                    flat.push_back(std::move(k));
                }
            }
            std::sort(flat.begin(), flat.end());
            flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
            if (flat.empty()) return is_and ? top() : bot();
            if (flat.size() == 1) return flat[0];
            return {kind, 0, 0, 0, std::move(flat)};
        }
    }
    return *this;
}

std::string TrivialFormula::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Top: out << "top"; break;
        case Kind::Bot: out << "bot"; break;
        case Kind::Eq: out << "eq " << i << " " << j; break;
        case Kind::ValEq: out << "val " << i << " " << c; break;
        case Kind::Not: out << "not " << kids[0].to_string(); break;
        case Kind::And:
        case Kind::Or: {
            // n-ary nodes print as nested binary applications.
            const char* op = (kind == Kind::And) ? "and" : "or";
            if (kids.empty()) return kind == Kind::And ? "top" : "bot";
            if (kids.size() == 1) return kids[0].to_string();
            std::string acc = kids.back().to_string();
            for (std::size_t t = kids.size() - 1; t-- > 0;)
                acc = std::string(op) + " " + kids[t].to_string() + " " + acc;
            out << acc;
            break;
        }
    }
    return out.str();
}

namespace {

struct FormulaTokens {
    std::vector<std::string> toks;
    std::size_t pos = 0;

    std::string next() {
        if (pos == toks.size()) throw ParseError("formula text ended unexpectedly");
        return toks[pos++];
    }
    std::size_t next_index() {
        std::string t = next();
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("expected a variable index, got '" + t + "'");
        return std::stoull(t);
    }
};

TrivialFormula parse_formula(FormulaTokens& ts) {
    std::string t = ts.next();
    if (t == "top") return TrivialFormula::top();
    if (t == "bot") return TrivialFormula::bot();
    if (t == "eq") {
        std::size_t i = ts.next_index();
        std::size_t j = ts.next_index();
        return TrivialFormula::eq(i, j);
    }
    if (t == "val") {
        std::size_t i = ts.next_index();
        Nat c = ts.next_index();
        return TrivialFormula::val_eq(i, c);
    }
    if (t == "not") return TrivialFormula::negation(parse_formula(ts));
    if (t == "and" || t == "or") {
        TrivialFormula a = parse_formula(ts);
        TrivialFormula b = parse_formula(ts);
        std::vector<TrivialFormula> kids;
        kids.push_back(std::move(a));
        kids.push_back(std::move(b));
        return t == "and" ? TrivialFormula::conj(std::move(kids))
                          : TrivialFormula::disj(std::move(kids));
    }
    throw ParseError("unknown formula token '" + t + "'");
}

}  // namespace

TrivialFormula TrivialFormula::parse(const std::string& text) {
    FormulaTokens ts;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) ts.toks.push_back(tok);
    TrivialFormula f = parse_formula(ts);
    if (ts.pos != ts.toks.size())
        throw ParseError("trailing tokens in formula '" + text + "'");
    return f;
}

// ---------------------------------------------------------------------------
// FinRel / LStruct
// ---------------------------------------------------------------------------

FinRel::FinRel(std::size_t arity, TrivialFormula def, std::vector<std::vector<Nat>> exceptions)
    : arity_(arity), def_(std::move(def)), exceptions_(std::move(exceptions)) {
    if (arity_ == 0 || arity_ > 8)
        throw RepresentationError("relation arity must lie in [1, 8]");
    if (def_.min_arity() > arity_)
        throw RepresentationError("default formula mentions variables beyond the arity");
    for (const auto& t : exceptions_)
        if (t.size() != arity_)
            throw RepresentationError("exception tuple length does not match the arity");
    std::sort(exceptions_.begin(), exceptions_.end());
    auto dup = std::adjacent_find(exceptions_.begin(), exceptions_.end());
    if (dup != exceptions_.end()) throw RepresentationError("duplicate exception tuple");
}

bool FinRel::eval(std::span<const Nat> tuple) const {
    if (tuple.size() != arity_) throw RepresentationError("tuple length does not match the arity");
    bool base = def_.eval(tuple);
    std::vector<Nat> key(tuple.begin(), tuple.end());
    bool exceptional = std::binary_search(exceptions_.begin(), exceptions_.end(), key);
    return base != exceptional;
}

Nat FinRel::max_entry() const {
    Nat m = def_.max_constant();
    for (const auto& t : exceptions_)
        for (Nat v : t) m = std::max(m, v);
    return m;
}

std::vector<std::size_t> LStruct::arities() const {
    std::vector<std::size_t> out;
    out.reserve(rels.size());
    for (const auto& r : rels) out.push_back(r.arity());
    return out;
}

LStruct LStruct::parse_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad structure JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("relations") || !j["relations"].is_array())
        throw ParseError("structure JSON needs a 'relations' array");
    LStruct x;
    for (const auto& r : j["relations"]) {
        if (!r.contains("arity") || !r.contains("default"))
            throw ParseError("relation entry needs 'arity' and 'default'");
        std::size_t arity = r["arity"].get<std::size_t>();
        TrivialFormula def = TrivialFormula::parse(r["default"].get<std::string>());
        std::vector<std::vector<Nat>> exc;
        if (r.contains("exceptions"))
            for (const auto& t : r["exceptions"]) exc.push_back(t.get<std::vector<Nat>>());
        x.rels.emplace_back(arity, std::move(def), std::move(exc));
    }
    if (x.rels.empty()) throw ParseError("structure needs at least one relation symbol");
    return x;
}

std::string LStruct::to_json() const {
    nlohmann::json j;
    j["relations"] = nlohmann::json::array();
    for (const auto& r : rels) {
        nlohmann::json e;
        e["arity"] = r.arity();
        e["default"] = r.def().to_string();
        e["exceptions"] = r.exceptions();
        j["relations"].push_back(e);
    }
    return j.dump();
}

// ---------------------------------------------------------------------------
// Shuffles
// ---------------------------------------------------------------------------

std::string ShuffleSeq::to_string() const {
    std::ostringstream out;
    out << k << ":(";
    for (std::size_t t = 0; t < indices.size(); ++t) {
        if (t) out << ",";
        out << indices[t];
    }
    out << ")";
    return out.str();
}

bool eval(const LStruct& x, std::size_t i, std::span<const Nat> tuple) {
    if (i >= x.rels.size()) throw RepresentationError("no such relation symbol");
    return x.rels[i].eval(tuple);
}

bool ShuffledRel::eval(std::span<const Nat> tuple) const {
    if (tuple.size() != pi.k) throw RepresentationError("tuple length does not match the shuffle");
    std::vector<Nat> selected(pi.indices.size());
    for (std::size_t t = 0; t < pi.indices.size(); ++t) selected[t] = tuple[pi.indices[t]];
    return base->eval(selected);
}

ShuffledRel make_view(const LStruct& x, std::size_t i, const ShuffleSeq& pi) {
    if (i >= x.rels.size()) throw RepresentationError("no such relation symbol");
    if (pi.indices.size() != x.rels[i].arity())
        throw RepresentationError("shuffle length does not match the relation arity");
    for (std::size_t v : pi.indices)
        if (v >= pi.k) throw RepresentationError("shuffle index out of range");
    return ShuffledRel{&x.rels[i], pi};
}

bool shuffle_eval(const LStruct& x, std::size_t i, const ShuffleSeq& pi,
                  std::span<const Nat> tuple) {
    return make_view(x, i, pi).eval(tuple);
}

ShuffledRel compose_view(const ShuffledRel& v, const ShuffleSeq& rho) {
    if (rho.indices.size() != v.pi.k)
        throw RepresentationError("shuffle composition length mismatch");
    ShuffleSeq composite;
    composite.k = rho.k;
    composite.indices.resize(v.pi.indices.size());
    for (std::size_t t = 0; t < v.pi.indices.size(); ++t)
        composite.indices[t] = rho.indices[v.pi.indices[t]];
    return ShuffledRel{v.base, composite};
}

std::vector<ShuffleSeq> all_shuffles(std::size_t base_arity) {
    std::vector<ShuffleSeq> out;
    for (std::size_t k = 1; k <= base_arity; ++k) {
        std::vector<std::size_t> idx(base_arity, 0);
        for (;;) {
            out.push_back(ShuffleSeq{k, idx});
            // next index list in lexicographic order
            std::size_t t = base_arity;
            while (t > 0) {
                --t;
                if (++idx[t] < k) break;
                idx[t] = 0;
                if (t == 0) {
                    t = base_arity + 1;  // odometer wrapped
                    break;
                }
            }
            if (t == base_arity + 1) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coding witnesses.  For a fixed injective tuple a, the map b -> v(a, b)
// over b outside a is constant except at finitely many special values: the
// pullbacks of exception tuples through the shuffle, and designated-value
// constants sitting on a b-slot.  All searches below work off that fact.
// ---------------------------------------------------------------------------

namespace {

std::vector<Nat> iota_tuple(std::size_t k) {
    std::vector<Nat> a(k);
    std::iota(a.begin(), a.end(), Nat(0));
    return a;
}

void collect_val_atoms(const TrivialFormula& f, std::vector<std::pair<std::size_t, Nat>>& out) {
    if (f.kind == TrivialFormula::Kind::ValEq) out.emplace_back(f.i, f.c);
    for (const auto& k : f.kids) collect_val_atoms(k, out);
}

// Values of b at which v(a, b) can differ from the generic value.
std::vector<Nat> special_b_values(const ShuffledRel& v, std::span<const Nat> a) {
    const std::size_t bslot = v.pi.k - 1;
    std::vector<Nat> out;
    bool uses_b = std::any_of(v.pi.indices.begin(), v.pi.indices.end(),
                              [&](std::size_t idx) { return idx == bslot; });
    if (!uses_b) return out;
    for (const auto& exc : v.base->exceptions()) {
        std::optional<Nat> b;
        bool compatible = true;
        for (std::size_t t = 0; t < exc.size() && compatible; ++t) {
            std::size_t idx = v.pi.indices[t];
            if (idx == bslot) {
                if (b && *b != exc[t])
                    compatible = false;
                else
                    b = exc[t];
            } else if (a[idx] != exc[t]) {
                compatible = false;
            }
        }
        if (compatible && b) out.push_back(*b);
    }
    // ValEq atoms live on base slots; one matters when its slot selects b.
    std::vector<std::pair<std::size_t, Nat>> atoms;
    collect_val_atoms(v.base->def(), atoms);
    for (const auto& [var, c] : atoms) {
        if (var < v.pi.indices.size() && v.pi.indices[var] == bslot) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Nat generic_b(const ShuffledRel& v, std::span<const Nat> a) {
    Nat m = v.base->max_entry();
    for (Nat x : a) m = std::max(m, x);
    return m + 1;
}

bool eval_at(const ShuffledRel& v, std::span<const Nat> a, Nat b) {
    std::vector<Nat> t(a.begin(), a.end());
    t.push_back(b);
    return v.eval(t);
}

// Does the injective tuple a exhibit a one-bit store: some b outside a with
// a value different from the generic one?
bool tuple_codes(const ShuffledRel& v, std::span<const Nat> a) {
    Nat gen = generic_b(v, a);
    bool gen_val = eval_at(v, a, gen);
    for (Nat b : special_b_values(v, a)) {
        if (std::find(a.begin(), a.end(), b) != a.end()) continue;
        if (eval_at(v, a, b) != gen_val) return true;
    }
    return false;
}

// Candidate entry values for the least witness tuple: every value pinned by
// an exception or constant, plus enough small fresh values.
std::vector<Nat> candidate_values(const ShuffledRel& v) {
    std::set<Nat> vals;
    for (const auto& exc : v.base->exceptions())
        for (Nat x : exc) vals.insert(x);
    std::vector<std::pair<std::size_t, Nat>> atoms;
    collect_val_atoms(v.base->def(), atoms);
    for (const auto& [var, c] : atoms) {
        (void)var;
        vals.insert(c);
    }
    std::size_t fresh = vals.size() + v.pi.k + 2;
    for (Nat x = 0; x <= fresh; ++x) vals.insert(x);
    return std::vector<Nat>(vals.begin(), vals.end());
}

// Least injective witness tuple in lexicographic order, if any.
std::optional<std::vector<Nat>> least_witness(const ShuffledRel& v) {
    const std::size_t len = v.pi.k - 1;
    if (len == 0) {
        std::vector<Nat> empty;
        if (tuple_codes(v, empty)) return empty;
        return std::nullopt;
    }
    std::vector<Nat> values = candidate_values(v);
    double space = 1;
    for (std::size_t t = 0; t < len; ++t) space *= static_cast<double>(values.size());
    if (space > 2e7) throw Error("coding witness search space too large for desk scale");
    std::vector<std::size_t> pick(len, 0);
    for (;;) {
        std::vector<Nat> a(len);
        bool injective = true;
        for (std::size_t t = 0; t < len && injective; ++t) {
            a[t] = values[pick[t]];
            for (std::size_t u = 0; u < t; ++u)
                if (a[u] == a[t]) injective = false;
        }
        if (injective && tuple_codes(v, a)) return a;
        std::size_t t = len;
        bool wrapped = false;
        while (t > 0) {
            --t;
            if (++pick[t] < values.size()) break;
            pick[t] = 0;
            if (t == 0) wrapped = true;
        }
        if (wrapped) return std::nullopt;
    }
}

}  // namespace

Nat coding_bound(const ShuffledRel& v) { return v.base->max_entry() + v.pi.k + 2; }

bool is_coding(const ShuffledRel& v) { return least_witness(v).has_value(); }

bool is_coding(const LStruct& x, std::size_t i, const ShuffleSeq& pi) {
    return is_coding(make_view(x, i, pi));
}

bool is_coding_brute(const ShuffledRel& v, Nat bound) {
    const std::size_t len = v.pi.k - 1;
    std::vector<Nat> a(len, 0);
    for (;;) {
        bool injective = true;
        for (std::size_t t = 0; t < len && injective; ++t)
            for (std::size_t u = 0; u < t; ++u)
                if (a[u] == a[t]) injective = false;
        if (injective) {
            bool seen_true = false, seen_false = false;
            for (Nat b = 0; b <= bound && !(seen_true && seen_false); ++b) {
                if (std::find(a.begin(), a.end(), b) != a.end()) continue;
                (eval_at(v, a, b) ? seen_true : seen_false) = true;
            }
            if (seen_true && seen_false) return true;
        }
        std::size_t t = len;
        bool wrapped = len == 0;
        while (t > 0) {
            --t;
            if (++a[t] <= bound) break;
            a[t] = 0;
            if (t == 0) wrapped = true;
        }
        if (wrapped) return false;
    }
}

bool has_bad_coding(const LStruct& x, std::size_t i) {
    if (i >= x.rels.size()) throw RepresentationError("no such relation symbol");
    for (const auto& pi : all_shuffles(x.rels[i].arity()))
        if (is_coding(x, i, pi)) return false;
    return true;
}

bool struct_bad_coding(const LStruct& x) {
    for (std::size_t i = 0; i < x.rels.size(); ++i)
        if (!has_bad_coding(x, i)) return false;
    return true;
}

std::optional<QWitness> q_find(const LStruct& x) {
    for (std::size_t i = 0; i < x.rels.size(); ++i) {
        for (const auto& pi : all_shuffles(x.rels[i].arity())) {
            ShuffledRel v = make_view(x, i, pi);
            if (auto a = least_witness(v)) return QWitness{i, pi, *a};
        }
    }
    return std::nullopt;
}

CodingPair coding_pair(const ShuffledRel& v, const std::vector<Nat>& a) {
    Nat limit = generic_b(v, a);
    std::optional<Nat> b, c;
    for (Nat m = 0; m <= limit && !(b && c); ++m) {
        if (std::find(a.begin(), a.end(), m) != a.end()) continue;
        if (eval_at(v, a, m)) {
            if (!b) b = m;
        } else if (!c) {
            c = m;
        }
    }
    if (!b || !c) throw Error("coding pair requested for a non-coding witness tuple");
    return CodingPair{*b, *c};
}

std::optional<Nat> struct_change_point(const ShuffledRel& v, const std::vector<Nat>& a) {
    Nat limit = generic_b(v, a);
    std::optional<Nat> first;
    std::optional<bool> first_val;
    for (Nat m = 0; m <= limit; ++m) {
        if (std::find(a.begin(), a.end(), m) != a.end()) continue;
        bool val = eval_at(v, a, m);
        if (!first) {
            first = m;
            first_val = val;
            continue;
        }
        if (val != *first_val) return m;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

namespace {

TrivialFormula rename_vars(const TrivialFormula& f, const std::vector<std::size_t>& map) {
    TrivialFormula out = f;
    if (f.kind == TrivialFormula::Kind::Eq) {
        out.i = map[f.i];
        out.j = map[f.j];
    } else if (f.kind == TrivialFormula::Kind::ValEq) {
        out.i = map[f.i];
    }
    out.kids.clear();
    for (const auto& k : f.kids) out.kids.push_back(rename_vars(k, map));
    return out;
}

TrivialFormula synthesize_view(const ShuffledRel& v) {
    const std::size_t k = v.pi.k;
    if (least_witness(v))
        throw Error("synthesis recursion reached a coding shuffle");
    if (k == 1) {
        std::vector<Nat> probe{generic_b(v, {})};
        return v.eval(probe) ? TrivialFormula::top() : TrivialFormula::bot();
    }
    std::vector<TrivialFormula> disjuncts;
    // Injective sector: constant by the bad coding property.
    {
        Nat g = v.base->max_entry() + 1;
        std::vector<Nat> fresh(k);
        for (std::size_t t = 0; t < k; ++t) fresh[t] = g + t;
        if (v.eval(fresh)) {
            std::vector<TrivialFormula> atoms;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j)
                    atoms.push_back(TrivialFormula::negation(TrivialFormula::eq(i, j)));
            disjuncts.push_back(TrivialFormula::conj(std::move(atoms)));
        }
    }
    // Duplicate sector: every non-injective tuple factors through a deletion
    // rho (k-ary, length k-1) recovered by a copy-back pi2 ((k-1)-ary,
    // length k).
    std::vector<std::vector<std::size_t>> rhos, pi2s;
    {
        std::vector<std::size_t> idx(k - 1, 0);
        for (;;) {
            rhos.push_back(idx);
            std::size_t t = k - 1;
            bool wrapped = (k - 1 == 0);
            while (t > 0) {
                --t;
                if (++idx[t] < k) break;
                idx[t] = 0;
                if (t == 0) wrapped = true;
            }
            if (wrapped) break;
        }
        std::vector<std::size_t> idx2(k, 0);
        for (;;) {
            pi2s.push_back(idx2);
            std::size_t t = k;
            bool wrapped = false;
            while (t > 0) {
                --t;
                if (++idx2[t] < k - 1) break;
                idx2[t] = 0;
                if (t == 0) wrapped = true;
            }
            if (wrapped) break;
        }
    }
    for (const auto& rho : rhos) {
        for (const auto& pi2 : pi2s) {
            // Equality clause: tuple == pi2(rho(tuple)) coordinatewise.
            std::vector<TrivialFormula> clause;
            bool forces_duplicate = false;
            for (std::size_t j = 0; j < k; ++j) {
                std::size_t src = rho[pi2[j]];
                if (src != j) forces_duplicate = true;
                if (src != j) clause.push_back(TrivialFormula::eq(j, src));
            }
            if (!forces_duplicate) continue;  // identity reconstruction adds nothing
            ShuffledRel sub = compose_view(v, ShuffleSeq{k - 1, pi2});
            TrivialFormula f_sub = synthesize_view(sub);
            clause.push_back(rename_vars(f_sub, rho));
            disjuncts.push_back(TrivialFormula::conj(std::move(clause)));
        }
    }
    return TrivialFormula::disj(std::move(disjuncts));
}

}  // namespace

TrivialFormula synthesize_trivial(const LStruct& x, std::size_t i) {
    if (i >= x.rels.size()) throw RepresentationError("no such relation symbol");
    const FinRel& rel = x.rels[i];
    for (const auto& pi : all_shuffles(rel.arity())) {
        ShuffledRel v = make_view(x, i, pi);
        if (auto a = least_witness(v)) {
            std::ostringstream msg;
            msg << "relation " << i << " has a coding shuffle " << pi.to_string()
                << " witnessed at (";
            for (std::size_t t = 0; t < a->size(); ++t) msg << (t ? "," : "") << (*a)[t];
            msg << ")";
            throw DomainError(msg.str());
        }
    }
    ShuffleSeq identity{rel.arity(), {}};
    identity.indices.resize(rel.arity());
    std::iota(identity.indices.begin(), identity.indices.end(), std::size_t(0));
    TrivialFormula out = synthesize_view(make_view(x, i, identity)).simplified();
    // Certify against the relation itself before handing the formula out.
    Nat bound = coding_bound(make_view(x, i, identity)) + 3;
    std::vector<Nat> t(rel.arity(), 0);
    for (;;) {
        if (out.eval(t) != rel.eval(t)) throw Error("synthesized formula failed certification");
        std::size_t p = rel.arity();
        bool wrapped = false;
        while (p > 0) {
            --p;
            if (++t[p] <= bound) break;
            t[p] = 0;
            if (p == 0) wrapped = true;
        }
        if (wrapped) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pushforward
// ---------------------------------------------------------------------------

namespace {

TrivialFormula map_constants(const TrivialFormula& f, const SwapList& s) {
    TrivialFormula out = f;
    if (f.kind == TrivialFormula::Kind::ValEq) out.c = swap_apply(s, f.c);
    out.kids.clear();
    for (const auto& k : f.kids) out.kids.push_back(map_constants(k, s));
    return out;
}

}  // namespace

LStruct pushforward(const LStruct& x, const SwapList& s) {
    for (const auto& [a, b] : s)
        if (a == b) throw RepresentationError("transposition entries must differ");
    LStruct y;
    for (const auto& r : x.rels) {
        std::vector<std::vector<Nat>> exc;
        exc.reserve(r.exceptions().size());
        for (const auto& t : r.exceptions()) {
            std::vector<Nat> mapped(t.size());
            for (std::size_t p = 0; p < t.size(); ++p) mapped[p] = swap_apply(s, t[p]);
            exc.push_back(std::move(mapped));
        }
        y.rels.emplace_back(r.arity(), map_constants(r.def(), s), std::move(exc));
    }
    return y;
}

// ---------------------------------------------------------------------------
// Computable isomorphism
// ---------------------------------------------------------------------------

Tri structure_map_check(const Code& e, const LStruct& x, const LStruct& y, FuelMeter& meter) {
    if (x.arities() != y.arities())
        throw RepresentationError("structures over different languages");
    Program p = decode(e);
    std::vector<std::pair<Nat, Nat>> graph;  // (input, image), halted only
    std::map<Nat, Nat> image_of;
    for (Nat t = 0; t < meter.input_bound(); ++t) {
        if (meter.exhausted()) return Tri::unknown(0);
        RunResult r = run(p, t, zero_oracle(), meter);
        if (!r.halted) continue;
        auto [it, fresh] = image_of.emplace(r.value, t);
        if (!fresh && it->second != t) return Tri::refuted();  // not injective
        graph.emplace_back(t, r.value);
    }
    // Check the iff-preservation of every symbol on tuples drawn from the
    // halted part of the domain.
    for (std::size_t i = 0; i < x.rels.size(); ++i) {
        const std::size_t m = x.rels[i].arity();
        if (graph.empty()) break;
        std::vector<std::size_t> pick(m, 0);
        for (;;) {
            if (!meter.consume()) return Tri::unknown(0);
            std::vector<Nat> dom(m), img(m);
            for (std::size_t t = 0; t < m; ++t) {
                dom[t] = graph[pick[t]].first;
                img[t] = graph[pick[t]].second;
            }
            if (x.rels[i].eval(dom) != y.rels[i].eval(img)) return Tri::refuted();
            std::size_t t = m;
            bool wrapped = false;
            while (t > 0) {
                --t;
                if (++pick[t] < graph.size()) break;
                pick[t] = 0;
                if (t == 0) wrapped = true;
            }
            if (wrapped) break;
        }
    }
    return Tri::unknown(meter.left());
}

namespace {

// Candidate sweep mirroring the set-equivalence adjacency: Refuted demands
// every bound-set member refuted, and the diverging compositions make that
// unreachable; the first surviving candidate yields Unknown.
template <typename Survives>
Tri structure_bound_sweep(Nat n, FuelMeter& meter, Survives&& survives) {
    for (Nat e2 = 0; e2 < n; ++e2) {
        if (meter.exhausted()) return Tri::unknown(0);
        Code cand = compose(swap_program({}), Code(e2));
        if (survives(cand)) return Tri::unknown(meter.left());
    }
    return Tri::unknown(meter.left());
}

}  // namespace

Tri ciso_adjacent(const LStruct& x, const LStruct& y, const Fuel& fuel) {
    if (x.arities() != y.arities())
        throw RepresentationError("structures over different languages");
    if (struct_bad_coding(y)) return Tri::refuted();  // clause (G1)
    auto q = q_find(x);
    if (!q) return Tri::unknown(fuel.steps);
    auto n = struct_change_point(make_view(y, q->i, q->pi), q->a);
    if (!n) return Tri::unknown(fuel.steps);
    FuelMeter meter(fuel);
    return structure_bound_sweep(*n, meter, [&](const Code& cand) {
        return !structure_map_check(cand, x, y, meter).is_refuted();
    });
}

Tri biembed_adjacent(const LStruct& x, const LStruct& y, const Fuel& fuel) {
    if (x.arities() != y.arities())
        throw RepresentationError("structures over different languages");
    if (struct_bad_coding(y)) return Tri::refuted();
    auto q = q_find(x);
    if (!q) return Tri::unknown(fuel.steps);
    auto n = struct_change_point(make_view(y, q->i, q->pi), q->a);
    if (!n) return Tri::unknown(fuel.steps);
    FuelMeter meter(fuel);
    return structure_bound_sweep(*n, meter, [&](const Code& cand) {
        return !structure_map_check(cand, x, y, meter).is_refuted() &&
               !structure_map_check(cand, y, x, meter).is_refuted();
    });
}

namespace {

CisoWitness ciso_witness_impl(const LStruct& first, const LStruct& second, const Code& hint) {
    if (first.arities() != second.arities())
        throw RepresentationError("structures over different languages");
    if (first == second) throw DomainError("witness needs distinct structures");
    if (struct_bad_coding(first))
        throw DomainError("a structure with the bad coding property is rigid; no witness exists");

    QWitness q = *q_find(first);
    const std::size_t k = q.a.size();
    CodingPair pair0 = coding_pair(make_view(first, q.i, q.pi), q.a);
    Nat max_a = 0;
    for (Nat v : q.a) max_a = std::max(max_a, v + 1);
    Code n_code =
        std::max({Code(k), hint, Code(pair0.b), Code(pair0.c), Code(max_a)}) + 1;
    if (n_code > kDeskScaleCap)
        throw DomainError("witness: hint code too large to materialize the change point");
    Nat n = static_cast<Nat>(n_code);

    CisoWitness w;
    SwapList schedule;
    // Assumption (II): move the witness tuple onto (0..k-1).
    std::vector<Nat> target = iota_tuple(k);
    if (q.a != target) {
        w.relabeled = true;
        for (std::size_t t = 0; t < k; ++t) {
            Nat at = swap_apply(schedule, q.a[t]);
            if (at != t) schedule.emplace_back(at, t);
        }
    }
    LStruct staged = pushforward(first, schedule);
    ShuffledRel view = make_view(staged, q.i, q.pi);
    auto value_at = [&](Nat m) { return eval_at(view, target, m); };

    // Assumption (I): pick the plentiful truth value as the fill.
    Nat true_count = 0;
    for (Nat m = k; m < 2 * n; ++m)
        if (value_at(m)) ++true_count;
    bool fill = true_count >= n - k;
    w.roles_swapped = !fill;

    std::vector<Nat> wrong;  // positions in [k, n) carrying the other value
    for (Nat m = k; m < n; ++m)
        if (value_at(m) == !fill) wrong.push_back(m);
    if (wrong.empty()) throw Error("witness: no wrong-valued position below the change point");

    std::vector<Nat> cur(2 * n);
    for (Nat m = 0; m < 2 * n; ++m) cur[m] = value_at(m) ? 1 : 0;
    auto swap_positions = [&](Nat p, Nat q2) {
        std::swap(cur[p], cur[q2]);
        schedule.emplace_back(p, q2);
    };
    std::size_t wrong_from = 0;
    w.case_two = (cur[n] == Nat(fill ? 1 : 0));
    if (w.case_two) {
        swap_positions(wrong.front(), n);
        wrong_from = 1;
    }
    std::vector<Nat> pool;
    for (Nat m = n + 1; m < 2 * n; ++m)
        if (cur[m] == Nat(fill ? 1 : 0)) pool.push_back(m);
    std::size_t next_pool = 0;
    for (std::size_t t = wrong_from; t < wrong.size(); ++t) {
        if (next_pool >= pool.size()) throw Error("witness: replacement pool exhausted");
        swap_positions(wrong[t], pool[next_pool++]);
    }

    w.y = pushforward(first, schedule);
    w.schedule = schedule;
    w.n = n;
    auto qy = q_find(w.y);
    if (!qy || qy->i != q.i || !(qy->pi == q.pi) || qy->a != target)
        throw Error("witness: minimal coding witness moved during construction");
    auto change = struct_change_point(make_view(w.y, q.i, q.pi), target);
    if (!change || *change != n) throw Error("witness: constructed change point is off");
    w.q = *qy;
    w.x_to_y = swap_program(schedule);
    w.y_to_x = swap_program(swap_inverse(schedule));
    w.second_to_y = compose(w.x_to_y, hint);
    return w;
}

}  // namespace

CisoWitness ciso_witness(const LStruct& first, const LStruct& second, const Code& hint) {
    return ciso_witness_impl(first, second, hint);
}

CisoWitness biembed_witness(const LStruct& first, const LStruct& second, const Code& hint) {
    return ciso_witness_impl(first, second, hint);
}

// ---------------------------------------------------------------------------
// Relationalization
// ---------------------------------------------------------------------------

LStruct relationalize(const FuncStruct& fs) {
    LStruct out;
    out.rels = fs.relations;
    for (const auto& f : fs.functions) {
        if (!f.is_const && f.proj >= f.arity)
            throw DomainError("function default projects a coordinate it does not have");
        auto default_of = [&](const std::vector<Nat>& args) {
            return f.is_const ? f.const_value : args[f.proj];
        };
        std::vector<std::vector<Nat>> exc;
        std::set<std::vector<Nat>> seen;
        for (const auto& [args, val] : f.overrides) {
            if (args.size() != f.arity)
                throw DomainError("function override tuple length does not match the arity");
            if (!seen.insert(args).second) throw DomainError("conflicting function overrides");
            Nat dflt = default_of(args);
            if (val == dflt) continue;
            std::vector<Nat> hit = args;
            hit.push_back(dflt);
            exc.push_back(hit);  // default claims this graph point; it is gone
            hit.back() = val;
            exc.push_back(hit);  // and the actual graph point appears
        }
        TrivialFormula def = f.is_const ? TrivialFormula::val_eq(f.arity, f.const_value)
                                        : TrivialFormula::eq(f.proj, f.arity);
        out.rels.emplace_back(f.arity + 1, std::move(def), std::move(exc));
    }
    if (out.rels.empty()) throw DomainError("relationalization produced an empty language");
    return out;
}

}  // namespace eqgraph
