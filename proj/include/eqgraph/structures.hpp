#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqgraph/core.hpp"
#include "eqgraph/machines.hpp"

namespace eqgraph {

// ---------------------------------------------------------------------------
// Quantifier-free formulas over variable equalities.  The designated-value
// atom "val i c" (variable i equals the constant c) is a catalog extension
// used only for relation defaults produced by relationalize; synthesis never
// emits it.
// ---------------------------------------------------------------------------
struct TrivialFormula {
    enum class Kind : std::uint8_t { Top, Bot, Eq, ValEq, Not, And, Or };

    Kind kind = Kind::Top;
    std::size_t i = 0, j = 0;  // Eq operands / ValEq variable
    Nat c = 0;                 // ValEq constant
    std::vector<TrivialFormula> kids;

    static TrivialFormula top() { return {}; }
    static TrivialFormula bot() { return {Kind::Bot, 0, 0, 0, {}}; }
    static TrivialFormula eq(std::size_t i, std::size_t j) { return {Kind::Eq, i, j, 0, {}}; }
    static TrivialFormula val_eq(std::size_t i, Nat c) { return {Kind::ValEq, i, 0, c, {}}; }
    static TrivialFormula negation(TrivialFormula f);
    static TrivialFormula conj(std::vector<TrivialFormula> kids);
    static TrivialFormula disj(std::vector<TrivialFormula> kids);

    bool eval(std::span<const Nat> tuple) const;
    // One past the largest variable index mentioned (0 for closed formulas).
    std::size_t min_arity() const;
    bool uses_val_atoms() const;
    // Largest ValEq constant mentioned, or 0.
    Nat max_constant() const;

    TrivialFormula simplified() const;

    // Polish prefix text: "top", "bot", "eq 0 1", "val 1 5", "not f",
    // "and f g", "or f g".
    std::string to_string() const;
    static TrivialFormula parse(const std::string& text);

    friend bool operator==(const TrivialFormula&, const TrivialFormula&) = default;
    std::strong_ordering operator<=>(const TrivialFormula& o) const;
};

// ---------------------------------------------------------------------------
// Relation given as a trivial-language default plus a finite exception set
// (tuples where the value is the negation of the default's).
// ---------------------------------------------------------------------------
class FinRel {
public:
    FinRel(std::size_t arity, TrivialFormula def, std::vector<std::vector<Nat>> exceptions);

    std::size_t arity() const { return arity_; }
    const TrivialFormula& def() const { return def_; }
    const std::vector<std::vector<Nat>>& exceptions() const { return exceptions_; }

    bool eval(std::span<const Nat> tuple) const;

    // Largest natural appearing in exceptions or ValEq constants.
    Nat max_entry() const;

    friend bool operator==(const FinRel&, const FinRel&) = default;

private:
    std::size_t arity_;
    TrivialFormula def_;
    std::vector<std::vector<Nat>> exceptions_;  // sorted, unique
};

// A structure is one FinRel per relation symbol.
struct LStruct {
    std::vector<FinRel> rels;

    std::vector<std::size_t> arities() const;
    friend bool operator==(const LStruct&, const LStruct&) = default;

    // JSON form used by the CLI and scenario files; see README.
    static LStruct parse_json_text(const std::string& text);
    std::string to_json() const;
};

// ---------------------------------------------------------------------------
// Shuffles: pre-composition with a coordinate-selection map.
// ---------------------------------------------------------------------------
struct ShuffleSeq {
    std::size_t k = 1;                 // arity of the shuffled relation
    std::vector<std::size_t> indices;  // entries < k; length = base arity

    friend bool operator==(const ShuffleSeq&, const ShuffleSeq&) = default;
    std::string to_string() const;
};

bool eval(const LStruct& x, std::size_t i, std::span<const Nat> tuple);
bool shuffle_eval(const LStruct& x, std::size_t i, const ShuffleSeq& pi,
                  std::span<const Nat> tuple);

// Lazy shuffled view of a base relation; composed shuffles stay views.
struct ShuffledRel {
    const FinRel* base = nullptr;
    ShuffleSeq pi;

    std::size_t arity() const { return pi.k; }
    bool eval(std::span<const Nat> tuple) const;
};

ShuffledRel make_view(const LStruct& x, std::size_t i, const ShuffleSeq& pi);
// (R_pi)_rho as a single view over R.
ShuffledRel compose_view(const ShuffledRel& v, const ShuffleSeq& rho);

// All shuffling sequences for a base arity n, in the pinned order: target
// arity k ascending from 1 to n, then index lists in lexicographic order.
std::vector<ShuffleSeq> all_shuffles(std::size_t base_arity);

// Search bound for coding witnesses: witnesses, when any exist, exist with
// all entries <= max exception/constant entry + arity + 2.
Nat coding_bound(const ShuffledRel& v);

bool is_coding(const ShuffledRel& v);
bool is_coding(const LStruct& x, std::size_t i, const ShuffleSeq& pi);
// Exhaustive search with all entries <= bound; the independent test oracle.
bool is_coding_brute(const ShuffledRel& v, Nat bound);

bool has_bad_coding(const LStruct& x, std::size_t i);
bool struct_bad_coding(const LStruct& x);

// Emits a pure-equality formula agreeing with the relation everywhere;
// requires the bad coding property (DomainError naming a coding shuffle
// otherwise).  The result is brute-force certified on entries up to
// coding_bound + 3 before being returned.
TrivialFormula synthesize_trivial(const LStruct& x, std::size_t i);

// Relabels the universe along the finite swapping (applied in list order):
// exceptions map forward coordinatewise, equality defaults are untouched,
// designated-value constants map forward.
LStruct pushforward(const LStruct& x, const SwapList& s);

// ---------------------------------------------------------------------------
// Minimal coding witness of a structure: least (i, pi) with a coding
// shuffle, then the least injective tuple exhibiting it.
// ---------------------------------------------------------------------------
struct QWitness {
    std::size_t i = 0;
    ShuffleSeq pi;
    std::vector<Nat> a;  // injective, length pi.k - 1

    friend bool operator==(const QWitness&, const QWitness&) = default;
};

std::optional<QWitness> q_find(const LStruct& x);

// Least b with the shuffled relation true at (a, b) and least c with it
// false, both outside a.  Requires the witness to exist.
struct CodingPair {
    Nat b = 0, c = 0;
};
CodingPair coding_pair(const ShuffledRel& v, const std::vector<Nat>& a);

// Least change point of m -> v(a, m) over m outside a: the unique n with
// the value flipped against all smaller positions outside a.
std::optional<Nat> struct_change_point(const ShuffledRel& v, const std::vector<Nat>& a);

// ---------------------------------------------------------------------------
// Computable isomorphism and biembeddability (directed raw relations).
// ---------------------------------------------------------------------------
// Bounded refutation of "phi_e is an isomorphism from x to y" (equally, an
// embedding: surjectivity is not refutable at finite stage).
Tri structure_map_check(const Code& e, const LStruct& x, const LStruct& y, FuelMeter& meter);

Tri ciso_adjacent(const LStruct& x, const LStruct& y, const Fuel& fuel);
Tri biembed_adjacent(const LStruct& x, const LStruct& y, const Fuel& fuel);

struct CisoWitness {
    LStruct y;
    SwapList schedule;  // entries < 2n
    Nat n = 0;          // change point arranged in y
    QWitness q;         // minimal witness of y (same (i, pi) as x's)
    Code x_to_y;        // swap program
    Code y_to_x;        // inverse swap program
    Code second_to_y;   // compose(x_to_y, hint)
    // Construction branch flags.
    bool case_two = false;       // change position held the fill value
    bool roles_swapped = false;  // the true-side pool was scarce
    bool relabeled = false;      // witness tuple was not (0..k-1)
};

// hint: code of an isomorphism from `second` to `first`.
CisoWitness ciso_witness(const LStruct& first, const LStruct& second, const Code& hint);
// Same construction; an isomorphism serves as both embeddings.
CisoWitness biembed_witness(const LStruct& first, const LStruct& second, const Code& hint);

// ---------------------------------------------------------------------------
// Relationalization of function symbols.
// ---------------------------------------------------------------------------
struct FuncSpec {
    std::size_t arity = 0;  // 0: constant symbol
    bool is_const = true;
    Nat const_value = 0;    // default value when is_const
    std::size_t proj = 0;   // defaults to coordinate proj otherwise
    std::vector<std::pair<std::vector<Nat>, Nat>> overrides;  // tuple -> value
};

struct FuncStruct {
    std::vector<FinRel> relations;
    std::vector<FuncSpec> functions;
};

// Replaces every function symbol by the relation holding exactly on its
// graph; relation symbols are unchanged.
LStruct relationalize(const FuncStruct& fs);

}  // namespace eqgraph
