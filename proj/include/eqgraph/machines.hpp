#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqgraph/core.hpp"

namespace eqgraph {

// Program codes are arbitrary-precision naturals: composite codes (pairing of
// two sub-codes) routinely overflow machine words.
using Code = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Register machine.  Registers hold naturals and start at zero except r0,
// which carries the input; HALT returns r0.  DEC on zero is a no-op.  JZ
// jumps when the register is zero.  ORACLE reads one oracle value:
// r[dst] := oracle(r[src]).  Running past the last instruction never halts.
// ---------------------------------------------------------------------------
enum class Op : std::uint8_t { Halt, Inc, Dec, Jz, Oracle };

struct Instr {
    Op op = Op::Halt;
    Nat a = 0;  // register (Inc/Dec/Jz/Oracle src)
    Nat b = 0;  // Jz target / Oracle dst

    friend bool operator==(const Instr&, const Instr&) = default;
};

class Program {
public:
    // Validates: nonempty, jump targets in bounds, and at least one HALT
    // syntactically reachable from instruction 0.
    explicit Program(std::vector<Instr> instrs);

    static std::optional<Program> try_make(std::vector<Instr> instrs);

    // Canonical diverging program [jz r1 0; halt]: loops at 0 forever since
    // r1 is never written.  Every malformed number decodes to this.
    static Program diverging();

    // One instruction per line: "inc r1", "dec r0", "jz r0 5",
    // "oracle r0 r1", "halt".  Case-insensitive mnemonics, '#' comments.
    static Program parse_text(const std::string& text);
    std::string to_text() const;

    const std::vector<Instr>& instructions() const { return instrs_; }
    std::size_t size() const { return instrs_.size(); }

    // Largest register index mentioned by any instruction.
    Nat max_register() const;

    friend bool operator==(const Program&, const Program&) = default;

private:
    Program() = default;
    std::vector<Instr> instrs_;
};

// Injective numbering with a total inverse.  decode(encode(p)) == p for all
// programs; numbers outside encode's range (including all macro codes below)
// still decode to programs.  The digit-level layout is documented in
// docs/encoding.md and is a stable artifact of this project.
Code encode(const Program& p);
Program decode(const Code& n);

struct RunResult {
    bool halted = false;
    Nat value = 0;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

// Deterministic bounded execution; divergence and exhausted budget both
// surface as halted == false.  A halt observed at some budget is preserved,
// with the same value, at every larger budget.
RunResult run(const Program& p, Nat input, const EPSeq& oracle, FuelMeter& meter);
RunResult run(const Code& e, Nat input, const EPSeq& oracle, FuelMeter& meter);
RunResult run(const Code& e, Nat input, const EPSeq& oracle, const Fuel& fuel);

// The all-zeros oracle, for plain (oracle-free) computation.
const EPSeq& zero_oracle();

// ---------------------------------------------------------------------------
// Finite swappings.
// ---------------------------------------------------------------------------
using SwapList = std::vector<std::pair<Nat, Nat>>;

// Applies the transpositions in list order.
Nat swap_apply(const SwapList& s, Nat n);
SwapList swap_inverse(const SwapList& s);
// Image table of swap_apply on [0, size); one pass over the list.
std::vector<Nat> swap_table(const SwapList& s, Nat size);

// Code of a program computing swap_apply(s, .).  Throws RepresentationError
// on a transposition with equal entries.  The code is a dedicated macro
// class, so swap programs are recognizable by code shape alone.
Code swap_program(const SwapList& s);

// Recovers the swap list if `e` has swap-program shape.
std::optional<SwapList> parse_swap_code(const Code& e);

// Code with semantics "run e2, then run e1 on its output".
Code compose(const Code& e1, const Code& e2);
std::optional<std::pair<Code, Code>> parse_compose_code(const Code& e);

// Strictly increases the code past `bound` without changing semantics.
Code pad(const Code& e, const Code& bound);

// ---------------------------------------------------------------------------
// Special-form programs: a code transparently carrying two parameter numbers
// and a payload program with identical semantics (add zero a+1 times to r1,
// add zero b+1 times to r2, then run program c).
// ---------------------------------------------------------------------------
Code special_encode(const Code& a, const Code& b, const Code& c);
bool form(const Code& e);
Code code1(const Code& e);  // the a parameter; requires form(e)
Code code2(const Code& e);  // the b parameter; requires form(e)
Code main_code(const Code& e);  // the payload program; requires form(e)

// Index of the identity oracle machine [oracle r0 r0; halt], which maps
// every oracle to itself pointwise.  The value is a function of the chosen
// numbering, not a universal constant.
Code identity_oracle_code();
// Program mapping input t to table[t] when present and to oracle(t)
// otherwise: computes any finite patch of the oracle.
Code patch_oracle_program(const std::vector<std::pair<Nat, Nat>>& table);
// [halt]: the identity function on inputs.
Code identity_code();
// [inc r0; halt].
Code successor_code();

// ---------------------------------------------------------------------------
// Structural bound set S(n): e belongs when e is a swap program whose
// transpositions only touch numbers < 2n, or a one-sided composition of such
// a swap program with a code < n.  Decidable by code-shape inspection.
// ---------------------------------------------------------------------------
bool in_bound_set(const Code& e, Nat n);

}  // namespace eqgraph
