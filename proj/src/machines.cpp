#include "eqgraph/machines.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace eqgraph {

namespace {

// ---------------------------------------------------------------------------
// Digit-level numbering (see docs/encoding.md).
//
// A code n selects its class by n mod 4:
//   4k   : literal program, k read as a base-9 digit stream
//   4k+1 : swap-program macro
//   4k+2 : composition macro, k = pair(e1, e2)
//   4k+3 : special-form macro
//
// Literal digit alphabet: 0 terminates an argument numeral; 1..5 are the
// instruction tags halt/inc/dec/jz/oracle; 6 and 7 are the bijective-binary
// numeral digits (values 1 and 2); 8 is unused and malformed.
// ---------------------------------------------------------------------------

constexpr unsigned kDigitBase = 9;
constexpr unsigned kTagHalt = 1, kTagInc = 2, kTagDec = 3, kTagJz = 4, kTagOracle = 5;
constexpr unsigned kBij1 = 6, kBij2 = 7;

void append_bijective(std::vector<unsigned>& digits, Code v) {
    // Bijective base-2 numeral, most significant digit first, over {6, 7}.
    std::vector<unsigned> tmp;
    while (v > 0) {
        Code r = v % 2;
        if (r == 1) {
            tmp.push_back(kBij1);
            v = (v - 1) / 2;
        } else {
            tmp.push_back(kBij2);
            v = v / 2 - 1;
        }
    }
    digits.insert(digits.end(), tmp.rbegin(), tmp.rend());
    digits.push_back(0);
}

std::vector<unsigned> code_digits(Code k) {
    std::vector<unsigned> digits;
    while (k > 0) {
        digits.push_back(static_cast<unsigned>(k % kDigitBase));
        k /= kDigitBase;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Code digits_code(const std::vector<unsigned>& digits) {
    Code k = 0;
    for (unsigned d : digits) k = k * kDigitBase + d;
    return k;
}

struct DigitReader {
    const std::vector<unsigned>& digits;
    std::size_t pos = 0;

    bool done() const { return pos == digits.size(); }
    std::optional<unsigned> next() {
        if (done()) return std::nullopt;
        return digits[pos++];
    }
    // Reads a bijective numeral terminated by digit 0; fails on any other
    // digit or on truncation.
    std::optional<Code> read_arg() {
        Code v = 0;
        for (;;) {
            auto d = next();
            if (!d) return std::nullopt;
            if (*d == 0) return v;
            if (*d == kBij1)
                v = v * 2 + 1;
            else if (*d == kBij2)
                v = v * 2 + 2;
            else
                return std::nullopt;
        }
    }
};

std::optional<Nat> to_nat(const Code& c) {
    if (c > Code(std::numeric_limits<Nat>::max())) return std::nullopt;
    return static_cast<Nat>(c);
}

std::optional<std::vector<Instr>> parse_literal_digits(const std::vector<unsigned>& digits) {
    DigitReader rd{digits};
    std::vector<Instr> out;
    while (!rd.done()) {
        auto tag = rd.next();
        Instr ins;
        switch (*tag) {
            case kTagHalt:
                ins.op = Op::Halt;
                break;
            case kTagInc:
            case kTagDec: {
                ins.op = (*tag == kTagInc) ? Op::Inc : Op::Dec;
                auto r = rd.read_arg();
                if (!r) return std::nullopt;
                auto rn = to_nat(*r);
                if (!rn) return std::nullopt;
                ins.a = *rn;
                break;
            }
            case kTagJz:
            case kTagOracle: {
                ins.op = (*tag == kTagJz) ? Op::Jz : Op::Oracle;
                auto r = rd.read_arg();
                auto t = rd.read_arg();
                if (!r || !t) return std::nullopt;
                auto rn = to_nat(*r), tn = to_nat(*t);
                if (!rn || !tn) return std::nullopt;
                ins.a = *rn;
                ins.b = *tn;
                break;
            }
            default:
                return std::nullopt;
        }
        out.push_back(ins);
    }
    if (out.empty()) return std::nullopt;
    return out;
}

// ---------------------------------------------------------------------------
// Bit-stream payloads (swap and special-form macros).  A payload m >= 1 is a
// marker bit followed by the stream: stream = binary of m minus its leading
// 1 bit.
// ---------------------------------------------------------------------------

std::vector<bool> payload_bits(const Code& m) {
    std::vector<bool> bits;
    if (m == 0) return bits;
    std::size_t top = boost::multiprecision::msb(m);
    for (std::size_t i = top; i-- > 0;) bits.push_back(boost::multiprecision::bit_test(m, i));
    return bits;
}

Code bits_payload(const std::vector<bool>& bits) {
    // Leading marker bit, then the stream; import in one pass since these
    // payloads can run to millions of bits.
    std::vector<std::uint8_t> raw;
    raw.reserve(bits.size() + 1);
    raw.push_back(1);
    for (bool b : bits) raw.push_back(b ? 1 : 0);
    Code m;
    boost::multiprecision::import_bits(m, raw.begin(), raw.end(), 1, true);
    return m;
}

void append_gamma(std::vector<bool>& bits, const Code& value_plus_one) {
    // Elias gamma of v >= 1: floor(log2 v) zeros, then v in binary.
    const Code& v = value_plus_one;
    std::size_t top = boost::multiprecision::msb(v);
    for (std::size_t i = 0; i < top; ++i) bits.push_back(false);
    for (std::size_t i = top + 1; i-- > 0;) bits.push_back(boost::multiprecision::bit_test(v, i));
}

struct BitReader {
    const std::vector<bool>& bits;
    std::size_t pos = 0;

    bool done() const { return pos == bits.size(); }
    std::optional<Code> read_gamma() {
        std::size_t zeros = 0;
        while (pos < bits.size() && !bits[pos]) {
            ++zeros;
            ++pos;
        }
        // The binary part is zeros+1 bits starting with the 1 we stopped on.
        if (pos + zeros + 1 > bits.size()) return std::nullopt;
        Code v = 0;
        for (std::size_t i = 0; i <= zeros; ++i) {
            v <<= 1;
            if (bits[pos++]) v |= 1;
        }
        return v;  // this is value+1
    }
};

// ---------------------------------------------------------------------------
// Pairing for composition payloads: gamma-coded bit length of the first
// code, then both codes' bits.  Linear in the operand sizes, which matters
// because swap programs over large witness schedules run to megabits.
// ---------------------------------------------------------------------------

std::size_t bit_length(const Code& v) {
    return v == 0 ? 0 : boost::multiprecision::msb(v) + 1;
}

Code pair_codes(const Code& a, const Code& b) {
    std::vector<bool> bits;
    std::size_t len_a = bit_length(a);
    append_gamma(bits, Code(len_a) + 1);
    for (std::size_t i = len_a; i-- > 0;) bits.push_back(boost::multiprecision::bit_test(a, i));
    for (std::size_t i = bit_length(b); i-- > 0;)
        bits.push_back(boost::multiprecision::bit_test(b, i));
    return bits_payload(bits);
}

std::optional<std::pair<Code, Code>> unpair_codes(const Code& k) {
    if (k == 0) return std::nullopt;
    std::vector<bool> bits = payload_bits(k);
    BitReader rd{bits};
    auto len_plus = rd.read_gamma();
    if (!len_plus) return std::nullopt;
    Code len_a = *len_plus - 1;
    if (len_a > Code(bits.size())) return std::nullopt;
    std::size_t la = static_cast<std::size_t>(len_a);
    if (rd.pos + la > bits.size()) return std::nullopt;
    if (la > 0 && !bits[rd.pos]) return std::nullopt;  // canonical: no leading zero
    Code a = 0;
    if (la > 0) {
        std::vector<std::uint8_t> raw;
        raw.reserve(la);
        for (std::size_t i = 0; i < la; ++i) raw.push_back(bits[rd.pos++] ? 1 : 0);
        boost::multiprecision::import_bits(a, raw.begin(), raw.end(), 1, true);
    }
    Code b = 0;
    std::size_t remaining = bits.size() - rd.pos;
    if (remaining > 0) {
        std::vector<std::uint8_t> raw;
        raw.reserve(remaining);
        while (rd.pos < bits.size()) raw.push_back(bits[rd.pos++] ? 1 : 0);
        boost::multiprecision::import_bits(b, raw.begin(), raw.end(), 1, true);
    }
    return std::make_pair(a, b);
}

// ---------------------------------------------------------------------------
// Swap-program gadget emission.
//
// Register roles: r0 input/output, r1 comparand copy, r2 constant, r3
// transfer temp, r4 never written (known zero, used for unconditional
// jumps), r5 running value.
// ---------------------------------------------------------------------------

class Assembler {
public:
    std::size_t here() const { return out_.size(); }
    std::size_t emit(Op op, Nat a = 0, Nat b = 0) {
        out_.push_back({op, a, b});
        return out_.size() - 1;
    }
    // Emits a jz with a target patched later.
    std::size_t emit_jz_patch(Nat reg) { return emit(Op::Jz, reg, 0); }
    void patch(std::size_t at, std::size_t target) { out_[at].b = target; }
    std::vector<Instr> take() { return std::move(out_); }

private:
    std::vector<Instr> out_;
};

constexpr Nat rIO = 0, rCopy = 1, rConst = 2, rTemp = 3, rZero = 4, rVal = 5;

// while (src > 0) { src--; dst++; }
void emit_move(Assembler& as, Nat src, Nat dst) {
    std::size_t loop = as.here();
    std::size_t exit_jz = as.emit_jz_patch(src);
    as.emit(Op::Dec, src);
    as.emit(Op::Inc, dst);
    as.emit(Op::Jz, rZero, loop);
    as.patch(exit_jz, as.here());
}

// while (src > 0) { src--; }
void emit_drain(Assembler& as, Nat src) {
    std::size_t loop = as.here();
    std::size_t exit_jz = as.emit_jz_patch(src);
    as.emit(Op::Dec, src);
    as.emit(Op::Jz, rZero, loop);
    as.patch(exit_jz, as.here());
}

// Builds the constant v into register r (assumed zero) via binary
// double-and-add, using rTemp (assumed and left zero).
void emit_const(Assembler& as, Nat v, Nat r) {
    if (v == 0) return;
    std::vector<bool> bits;
    for (Nat x = v; x > 0; x >>= 1) bits.push_back(x & 1);
    std::reverse(bits.begin(), bits.end());
    as.emit(Op::Inc, r);  // leading 1 bit
    for (std::size_t i = 1; i < bits.size(); ++i) {
        // r := 2r
        std::size_t l1 = as.here();
        std::size_t x1 = as.emit_jz_patch(r);
        as.emit(Op::Dec, r);
        as.emit(Op::Inc, rTemp);
        as.emit(Op::Inc, rTemp);
        as.emit(Op::Jz, rZero, l1);
        as.patch(x1, as.here());
        emit_move(as, rTemp, r);
        if (bits[i]) as.emit(Op::Inc, r);
    }
}

// Copies rVal to rCopy, preserving rVal, via rTemp.
void emit_copy_val(Assembler& as) {
    std::size_t l1 = as.here();
    std::size_t x1 = as.emit_jz_patch(rVal);
    as.emit(Op::Dec, rVal);
    as.emit(Op::Inc, rCopy);
    as.emit(Op::Inc, rTemp);
    as.emit(Op::Jz, rZero, l1);
    as.patch(x1, as.here());
    emit_move(as, rTemp, rVal);
}

// If rVal == cmp then rVal := set and jump to `done` (patched later by the
// caller); otherwise fall through with r1..r3 zeroed.
std::vector<std::size_t> emit_test_set(Assembler& as, Nat cmp, Nat set) {
    std::vector<std::size_t> done_patches;
    emit_copy_val(as);
    emit_const(as, cmp, rConst);
    // compare rCopy vs rConst by simultaneous decrement
    std::size_t cmp_loop = as.here();
    std::size_t to_c1 = as.emit_jz_patch(rCopy);
    std::size_t to_neq = as.emit_jz_patch(rConst);
    as.emit(Op::Dec, rCopy);
    as.emit(Op::Dec, rConst);
    as.emit(Op::Jz, rZero, cmp_loop);
    as.patch(to_c1, as.here());
    std::size_t to_eq = as.emit_jz_patch(rConst);  // rCopy == 0, rConst == 0 -> equal
    // not equal: leftovers in exactly one of rCopy / rConst
    as.patch(to_neq, as.here());
    emit_drain(as, rCopy);
    emit_drain(as, rConst);
    std::size_t skip_eq = as.emit_jz_patch(rZero);
    // equal: replace the value
    as.patch(to_eq, as.here());
    emit_drain(as, rVal);
    emit_const(as, set, rVal);
    done_patches.push_back(as.emit_jz_patch(rZero));
    as.patch(skip_eq, as.here());
    return done_patches;
}

std::vector<Instr> expand_swap(const SwapList& s) {
    Assembler as;
    emit_move(as, rIO, rVal);
    for (const auto& [a, b] : s) {
        std::vector<std::size_t> patches = emit_test_set(as, a, b);
        auto more = emit_test_set(as, b, a);
        patches.insert(patches.end(), more.begin(), more.end());
        for (std::size_t p : patches) as.patch(p, as.here());
    }
    emit_move(as, rVal, rIO);
    as.emit(Op::Halt);
    return as.take();
}

// ---------------------------------------------------------------------------
// Composition and special-form expansions.
// ---------------------------------------------------------------------------

std::vector<Nat> written_registers(const std::vector<Instr>& instrs) {
    std::vector<Nat> regs;
    for (const Instr& i : instrs) {
        if (i.op == Op::Inc || i.op == Op::Dec) regs.push_back(i.a);
        if (i.op == Op::Oracle) regs.push_back(i.b);
    }
    std::sort(regs.begin(), regs.end());
    regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
    return regs;
}

Nat max_register_of(const std::vector<Instr>& instrs) {
    Nat m = 0;
    for (const Instr& i : instrs) {
        switch (i.op) {
            case Op::Inc:
            case Op::Dec:
            case Op::Jz:
                m = std::max(m, i.a);
                break;
            case Op::Oracle:
                m = std::max(m, std::max(i.a, i.b));
                break;
            case Op::Halt:
                break;
        }
    }
    return m;
}

std::vector<Instr> expand_compose(const Program& p1, const Program& p2) {
    const auto& i1 = p1.instructions();
    const auto& i2 = p2.instructions();
    Nat z = 1 + std::max(max_register_of(i1), max_register_of(i2));
    std::vector<Instr> out;
    // Stage 1: p2 with every halt redirected past the fall-off guard.
    std::size_t guard = i2.size();
    auto cleanup_regs = written_registers(i2);
    cleanup_regs.erase(std::remove(cleanup_regs.begin(), cleanup_regs.end(), Nat(0)),
                       cleanup_regs.end());
    for (const Instr& ins : i2) {
        if (ins.op == Op::Halt)
            out.push_back({Op::Jz, z, static_cast<Nat>(guard + 1)});
        else
            out.push_back(ins);
    }
    // Fall-off guard: p2 running past its end must keep diverging.
    out.push_back({Op::Jz, z, static_cast<Nat>(guard)});
    // Stage 2: zero every register p2 may have dirtied (except r0, the
    // handoff value).
    for (Nat r : cleanup_regs) {
        std::size_t loop = out.size();
        out.push_back({Op::Jz, r, static_cast<Nat>(loop + 3)});
        out.push_back({Op::Dec, r});
        out.push_back({Op::Jz, z, static_cast<Nat>(loop)});
    }
    // Stage 3: p1, shifted.
    Nat shift = out.size();
    for (Instr ins : i1) {
        if (ins.op == Op::Jz) ins.b += shift;
        out.push_back(ins);
    }
    return out;
}

std::vector<Instr> expand_special(Nat a_reps, Nat b_reps, const Program& payload) {
    std::vector<Instr> out;
    for (Nat i = 0; i < a_reps; ++i) {
        out.push_back({Op::Inc, 1});
        out.push_back({Op::Dec, 1});
    }
    for (Nat i = 0; i < b_reps; ++i) {
        out.push_back({Op::Inc, 2});
        out.push_back({Op::Dec, 2});
    }
    Nat shift = out.size();
    for (Instr ins : payload.instructions()) {
        if (ins.op == Op::Jz) ins.b += shift;
        out.push_back(ins);
    }
    return out;
}

std::optional<SwapList> parse_swap_payload(const Code& k) {
    if (k == 0) return SwapList{};
    bool gamma = static_cast<unsigned>(k & 1) == 1;
    Code m = k >> 1;
    if (m == 0) return std::nullopt;
    std::vector<bool> bits = payload_bits(m);
    SwapList s;
    if (!gamma) {
        if (bits.empty() || bits.size() % 6 != 0) return std::nullopt;
        for (std::size_t i = 0; i < bits.size(); i += 6) {
            Nat a = (Nat(bits[i]) << 2) | (Nat(bits[i + 1]) << 1) | Nat(bits[i + 2]);
            Nat b = (Nat(bits[i + 3]) << 2) | (Nat(bits[i + 4]) << 1) | Nat(bits[i + 5]);
            if (a == b) return std::nullopt;
            s.emplace_back(a, b);
        }
    } else {
        BitReader rd{bits};
        if (rd.done()) return std::nullopt;
        while (!rd.done()) {
            auto ap = rd.read_gamma();
            auto bp = rd.read_gamma();
            if (!ap || !bp) return std::nullopt;
            auto a = to_nat(*ap - 1), b = to_nat(*bp - 1);
            if (!a || !b || *a == *b) return std::nullopt;
            s.emplace_back(*a, *b);
        }
        if (s.empty()) return std::nullopt;
    }
    return s;
}

struct SpecialParts {
    Code a, b, c;
};

std::optional<SpecialParts> parse_special_payload(const Code& k) {
    if (k == 0) return std::nullopt;
    std::vector<bool> bits = payload_bits(k);
    BitReader rd{bits};
    auto ap = rd.read_gamma();
    auto bp = rd.read_gamma();
    auto cp = rd.read_gamma();
    if (!ap || !bp || !cp || !rd.done()) return std::nullopt;
    return SpecialParts{*ap - 1, *bp - 1, *cp - 1};
}

}  // namespace

// ---------------------------------------------------------------------------
// Program
// ---------------------------------------------------------------------------

Program::Program(std::vector<Instr> instrs) {
    auto made = try_make(std::move(instrs));
    if (!made) throw RepresentationError("ill-formed program");
    *this = std::move(*made);
}

std::optional<Program> Program::try_make(std::vector<Instr> instrs) {
    if (instrs.empty()) return std::nullopt;
    const std::size_t n = instrs.size();
    for (const Instr& i : instrs)
        if (i.op == Op::Jz && i.b >= n) return std::nullopt;
    // Syntactic reachability of a halt from instruction 0.
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    bool halt_reachable = false;
    while (!stack.empty()) {
        std::size_t at = stack.back();
        stack.pop_back();
        const Instr& i = instrs[at];
        if (i.op == Op::Halt) {
            halt_reachable = true;
            continue;
        }
        std::vector<std::size_t> next;
        if (at + 1 < n) next.push_back(at + 1);
        if (i.op == Op::Jz) next.push_back(static_cast<std::size_t>(i.b));
        for (std::size_t t : next) {
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    if (!halt_reachable) return std::nullopt;
    Program p;
    p.instrs_ = std::move(instrs);
    return p;
}

Program Program::diverging() {
    Program p;
    p.instrs_ = {{Op::Jz, 1, 0}, {Op::Halt}};
    return p;
}

Nat Program::max_register() const { return max_register_of(instrs_); }

Program Program::parse_text(const std::string& text) {
    std::vector<Instr> instrs;
    std::istringstream in(text);
    std::string line;
    auto parse_reg = [](const std::string& tok, const std::string& line) -> Nat {
        if (tok.size() < 2 || (tok[0] != 'r' && tok[0] != 'R') ||
            tok.find_first_not_of("0123456789", 1) != std::string::npos)
            throw ParseError("bad register '" + tok + "' in line '" + line + "'");
        return std::stoull(tok.substr(1));
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        std::transform(op.begin(), op.end(), op.begin(), [](unsigned char c) { return std::tolower(c); });
        std::string t1, t2;
        if (op == "halt") {
            instrs.push_back({Op::Halt});
        } else if (op == "inc" || op == "dec") {
            if (!(ls >> t1)) throw ParseError("missing register in line '" + line + "'");
            instrs.push_back({op == "inc" ? Op::Inc : Op::Dec, parse_reg(t1, line)});
        } else if (op == "jz") {
            if (!(ls >> t1 >> t2)) throw ParseError("jz needs register and target: '" + line + "'");
            if (t2.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("bad jump target '" + t2 + "'");
            instrs.push_back({Op::Jz, parse_reg(t1, line), std::stoull(t2)});
        } else if (op == "oracle") {
            if (!(ls >> t1 >> t2)) throw ParseError("oracle needs two registers: '" + line + "'");
            instrs.push_back({Op::Oracle, parse_reg(t1, line), parse_reg(t2, line)});
        } else {
            throw ParseError("unknown instruction '" + op + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError("trailing token '" + extra + "' in line '" + line + "'");
    }
    auto made = try_make(std::move(instrs));
    if (!made) throw ParseError("program text is ill-formed (empty, bad targets, or no reachable halt)");
    return *made;
}

std::string Program::to_text() const {
    std::ostringstream out;
    for (const Instr& i : instrs_) {
        switch (i.op) {
            case Op::Halt: out << "halt\n"; break;
            case Op::Inc: out << "inc r" << i.a << "\n"; break;
            case Op::Dec: out << "dec r" << i.a << "\n"; break;
            case Op::Jz: out << "jz r" << i.a << " " << i.b << "\n"; break;
            case Op::Oracle: out << "oracle r" << i.a << " r" << i.b << "\n"; break;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Numbering
// ---------------------------------------------------------------------------

Code encode(const Program& p) {
    std::vector<unsigned> digits;
    for (const Instr& i : p.instructions()) {
        switch (i.op) {
            case Op::Halt:
                digits.push_back(kTagHalt);
                break;
            case Op::Inc:
            case Op::Dec:
                digits.push_back(i.op == Op::Inc ? kTagInc : kTagDec);
                append_bijective(digits, Code(i.a));
                break;
            case Op::Jz:
            case Op::Oracle:
                digits.push_back(i.op == Op::Jz ? kTagJz : kTagOracle);
                append_bijective(digits, Code(i.a));
                append_bijective(digits, Code(i.b));
                break;
        }
    }
    return digits_code(digits) * 4;
}

Program decode(const Code& n) {
    if (n < 0) return Program::diverging();
    unsigned cls = static_cast<unsigned>(n % 4);
    Code k = n / 4;
    switch (cls) {
        case 0: {
            auto instrs = parse_literal_digits(code_digits(k));
            if (!instrs) return Program::diverging();
            auto made = Program::try_make(std::move(*instrs));
            return made ? *made : Program::diverging();
        }
        case 1: {
            auto s = parse_swap_payload(k);
            if (!s) return Program::diverging();
            return Program(expand_swap(*s));
        }
        case 2: {
            auto parts = unpair_codes(k);
            if (!parts) return Program::diverging();
            return Program(expand_compose(decode(parts->first), decode(parts->second)));
        }
        default: {
            auto parts = parse_special_payload(k);
            if (!parts) return Program::diverging();
            auto a = to_nat(parts->a), b = to_nat(parts->b);
            if (!a || !b) return Program::diverging();
            return Program(expand_special(*a + 1, *b + 1, decode(parts->c)));
        }
    }
}

// ---------------------------------------------------------------------------
// Virtual machine
// ---------------------------------------------------------------------------

const EPSeq& zero_oracle() {
    static const EPSeq z = EPSeq::constant(0);
    return z;
}

RunResult run(const Program& p, Nat input, const EPSeq& oracle, FuelMeter& meter) {
    const auto& instrs = p.instructions();
    const std::size_t n = instrs.size();
    std::vector<Nat> fast(16, 0);
    std::map<Nat, Nat> slow;
    auto reg = [&](Nat r) -> Nat& { return r < fast.size() ? fast[r] : slow[r]; };
    reg(0) = input;
    std::size_t pc = 0;
    for (;;) {
        if (!meter.consume()) return {false, 0};
        if (pc >= n) {
            // Ran past the end: never halts.  Drain the budget so callers
            // see a deterministic out-of-fuel outcome.
            meter.consume(meter.left());
            return {false, 0};
        }
        const Instr& i = instrs[pc];
        switch (i.op) {
            case Op::Halt:
                return {true, reg(0)};
            case Op::Inc:
                ++reg(i.a);
                ++pc;
                break;
            case Op::Dec: {
                Nat& r = reg(i.a);
                if (r > 0) --r;
                ++pc;
                break;
            }
            case Op::Jz:
                pc = (reg(i.a) == 0) ? static_cast<std::size_t>(i.b) : pc + 1;
                break;
            case Op::Oracle:
                reg(i.b) = oracle.at(reg(i.a));
                ++pc;
                break;
        }
    }
}

RunResult run(const Code& e, Nat input, const EPSeq& oracle, FuelMeter& meter) {
    return run(decode(e), input, oracle, meter);
}

RunResult run(const Code& e, Nat input, const EPSeq& oracle, const Fuel& fuel) {
    FuelMeter meter(fuel);
    return run(e, input, oracle, meter);
}

// ---------------------------------------------------------------------------
// Swappings
// ---------------------------------------------------------------------------

Nat swap_apply(const SwapList& s, Nat n) {
    for (const auto& [a, b] : s) {
        if (n == a)
            n = b;
        else if (n == b)
            n = a;
    }
    return n;
}

SwapList swap_inverse(const SwapList& s) { return SwapList(s.rbegin(), s.rend()); }

std::vector<Nat> swap_table(const SwapList& s, Nat size) {
    // table[v] = swap_apply(s, v).  Enlarge the working range so every
    // transposition entry is covered, then track where each value sits; the
    // list is walked once.
    Nat m = size;
    for (const auto& [a, b] : s) m = std::max({m, a + 1, b + 1});
    std::vector<Nat> table(m), position_of(m);
    for (Nat v = 0; v < m; ++v) table[v] = position_of[v] = v;
    for (const auto& [a, b] : s) {
        Nat va = position_of[a], vb = position_of[b];
        std::swap(table[va], table[vb]);
        std::swap(position_of[a], position_of[b]);
    }
    table.resize(size);
    return table;
}

Code swap_program(const SwapList& s) {
    for (const auto& [a, b] : s)
        if (a == b) throw RepresentationError("transposition entries must differ");
    if (s.empty()) return Code(1);  // 4*0 + 1
    bool packed = std::all_of(s.begin(), s.end(),
                              [](const auto& t) { return t.first < 8 && t.second < 8; });
    std::vector<bool> bits;
    if (packed) {
        for (const auto& [a, b] : s) {
            for (int i = 2; i >= 0; --i) bits.push_back((a >> i) & 1);
            for (int i = 2; i >= 0; --i) bits.push_back((b >> i) & 1);
        }
    } else {
        for (const auto& [a, b] : s) {
            append_gamma(bits, Code(a) + 1);
            append_gamma(bits, Code(b) + 1);
        }
    }
    Code m = bits_payload(bits);
    Code k = m * 2 + (packed ? 0 : 1);
    return k * 4 + 1;
}

std::optional<SwapList> parse_swap_code(const Code& e) {
    if (e < 0 || e % 4 != 1) return std::nullopt;
    return parse_swap_payload(e / 4);
}

Code compose(const Code& e1, const Code& e2) { return pair_codes(e1, e2) * 4 + 2; }

std::optional<std::pair<Code, Code>> parse_compose_code(const Code& e) {
    if (e < 0 || e % 4 != 2) return std::nullopt;
    return unpair_codes(e / 4);
}

Code pad(const Code& e, const Code& bound) {
    Program p = decode(e);
    std::vector<Instr> out = p.instructions();
    Nat z = 1 + p.max_register();
    out.push_back({Op::Jz, z, static_cast<Nat>(out.size())});
    Code k = encode(Program(out)) / 4;
    // Each appended halt appends one digit, multiplying the literal stream
    // value by the digit base.
    while (k * 4 <= bound) k = k * kDigitBase + kTagHalt;
    return k * 4;
}

// ---------------------------------------------------------------------------
// Special forms
// ---------------------------------------------------------------------------

Code special_encode(const Code& a, const Code& b, const Code& c) {
    std::vector<bool> bits;
    append_gamma(bits, a + 1);
    append_gamma(bits, b + 1);
    append_gamma(bits, c + 1);
    return bits_payload(bits) * 4 + 3;
}

bool form(const Code& e) {
    if (e < 0 || e % 4 != 3) return false;
    auto parts = parse_special_payload(e / 4);
    if (!parts) return false;
    // The expansion repeats the add-zero blocks a+1 and b+1 times; those
    // counts must fit a machine word for the code to denote a program we
    // can ever materialize.
    return to_nat(parts->a).has_value() && to_nat(parts->b).has_value();
}

namespace {
SpecialParts special_parts_checked(const Code& e) {
    if (!form(e)) throw DomainError("code " + e.str() + " is not of special form");
    return *parse_special_payload(e / 4);
}
}  // namespace

Code code1(const Code& e) { return special_parts_checked(e).a; }
Code code2(const Code& e) { return special_parts_checked(e).b; }
Code main_code(const Code& e) { return special_parts_checked(e).c; }

Code identity_oracle_code() {
    static const Code c = encode(Program({{Op::Oracle, 0, 0}, {Op::Halt}}));
    return c;
}

Code patch_oracle_program(const std::vector<std::pair<Nat, Nat>>& table) {
    Assembler as;
    emit_move(as, rIO, rVal);
    std::vector<std::size_t> halt_patches;
    for (const auto& [input, output] : table) {
        // if rVal == input: r0 := output; halt
        emit_copy_val(as);
        emit_const(as, input, rConst);
        std::size_t cmp_loop = as.here();
        std::size_t to_c1 = as.emit_jz_patch(rCopy);
        std::size_t to_neq = as.emit_jz_patch(rConst);
        as.emit(Op::Dec, rCopy);
        as.emit(Op::Dec, rConst);
        as.emit(Op::Jz, rZero, cmp_loop);
        as.patch(to_c1, as.here());
        std::size_t to_eq = as.emit_jz_patch(rConst);
        as.patch(to_neq, as.here());
        emit_drain(as, rCopy);
        emit_drain(as, rConst);
        std::size_t skip = as.emit_jz_patch(rZero);
        as.patch(to_eq, as.here());
        emit_const(as, output, rIO);
        halt_patches.push_back(as.emit_jz_patch(rZero));
        as.patch(skip, as.here());
    }
    // No table hit: restore the input and ask the oracle.
    emit_move(as, rVal, rIO);
    as.emit(Op::Oracle, rIO, rIO);
    for (std::size_t p : halt_patches) as.patch(p, as.here());
    as.emit(Op::Halt);
    return encode(Program(as.take()));
}

Code identity_code() {
    static const Code c = encode(Program({{Op::Halt}}));
    return c;
}

Code successor_code() {
    static const Code c = encode(Program({{Op::Inc, 0}, {Op::Halt}}));
    return c;
}

// ---------------------------------------------------------------------------
// Structural bound set
// ---------------------------------------------------------------------------

namespace {
bool swap_entries_below(const SwapList& s, Nat bound) {
    return std::all_of(s.begin(), s.end(),
                       [bound](const auto& t) { return t.first < bound && t.second < bound; });
}
}  // namespace

bool in_bound_set(const Code& e, Nat n) {
    if (n == 0) return false;
    Nat two_n = 2 * n;
    if (auto s = parse_swap_code(e)) return swap_entries_below(*s, two_n);
    if (auto pr = parse_compose_code(e)) {
        const auto& [e1, e2] = *pr;
        if (auto s1 = parse_swap_code(e1))
            if (swap_entries_below(*s1, two_n) && e2 < n) return true;
        if (auto s2 = parse_swap_code(e2))
            if (swap_entries_below(*s2, two_n) && e1 < n) return true;
    }
    return false;
}

}  // namespace eqgraph
