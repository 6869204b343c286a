#include "eqgraph/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqgraph/graphings.hpp"
#include "eqgraph/indexrel.hpp"
#include "eqgraph/jump.hpp"
#include "eqgraph/structures.hpp"
#include "eqgraph/verify.hpp"

namespace eqgraph::cli {

namespace {

using nlohmann::json;

struct Output {
    std::ostream& out;
    bool as_json = false;
    json j;

    explicit Output(std::ostream& o) : out(o) { j["schema_version"] = 1; }
    void field(const std::string& key, const json& value) { j[key] = value; }
    void text_line(const std::string& line) {
        if (!as_json) out << line << "\n";
    }
    void flush() {
        if (as_json) out << j.dump(2) << "\n";
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Code parse_code(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad code '" + text + "'");
    return Code(text);
}

SwapList parse_swaps(const std::string& text) {
    // "0-1,2-3"
    SwapList s;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw ParseError("bad transposition '" + tok + "'");
        std::string a = tok.substr(0, dash), b = tok.substr(dash + 1);
        if (a.empty() || b.empty() || a.find_first_not_of("0123456789") != std::string::npos ||
            b.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad transposition '" + tok + "'");
        s.emplace_back(std::stoull(a), std::stoull(b));
    }
    if (s.empty()) throw ParseError("empty swap list");
    return s;
}

std::vector<Nat> parse_tuple(const std::string& text) {
    std::vector<Nat> t;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad tuple entry '" + tok + "'");
        t.push_back(std::stoull(tok));
    }
    return t;
}

ShuffleSeq parse_shuffle(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("shuffle needs the form k:i0,i1,...");
    std::string k = text.substr(0, colon);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad shuffle arity '" + k + "'");
    ShuffleSeq pi;
    pi.k = std::stoull(k);
    for (Nat v : parse_tuple(text.substr(colon + 1))) pi.indices.push_back(v);
    return pi;
}

UNode parse_unode(const std::string& text) {
    auto t = parse_tuple(text);
    if (t.size() == 1) return UNode(t[0]);
    if (t.size() == 3) return UNode(UTriple{t[0], t[1], t[2]});
    throw ParseError("universal node is a natural 'n' or a triple 'n,m,k'");
}

const std::map<std::string, std::string>& explain_texts() {
    static const std::map<std::string, std::string> texts{
        {"e0",
         "Eventual equality of binary sequences.  Edge: the second point starts with a\n"
         "block 0^n 1 and the first agrees with it strictly beyond n; the relation is\n"
         "then symmetrized and the diagonal removed.  The witness rewrites the prefix\n"
         "through the last disagreement into that block shape, so equivalent points\n"
         "sit at distance at most 2."},
        {"e0n",
         "Eventual equality of sequences of naturals.  Edge: the heads differ and the\n"
         "points agree strictly beyond max of the heads.  The witness replaces the\n"
         "head by the least value dominating both heads and the last disagreement."},
        {"vitali",
         "Rational-difference relation on rationals.  Edge clause (i): the difference\n"
         "is a nonzero integer; clause (ii): x <= y, 1 <= y, and y - x - q_n is an\n"
         "integer for some positive n <= y, where q_1, q_2, ... is the pinned\n"
         "enumeration of non-integer rationals: positive reduced p/q ordered by p+q\n"
         "then p, each followed by its negative (see README).  The witness is\n"
         "max(x,y) + k for the least k clearing both thresholds."},
        {"turing",
         "Oracle-interreducibility relation.  Edge from x to z: z splits as 0^n 1\n"
         "followed by y, and some pair of codes below n computes y from x and x from\n"
         "y.  Bounded evaluation refutes a split-less z outright; candidate pairs are\n"
         "refuted only by halting disagreements, so a surviving pair leaves the\n"
         "verdict unknown."},
        {"oneequiv",
         "1-equivalence of sets of naturals.  Edge clause (i): the target set is\n"
         "neither empty nor everything; clause (ii): with n the least change point of\n"
         "the target, some member of the structural bound set S(n) is a computable\n"
         "bijection carrying one set onto the other.  S(n) holds the swap programs\n"
         "over entries < 2n and their one-sided compositions with codes < n; it\n"
         "replaces a maximum-of-codes bound function, which is astronomically large,\n"
         "by a decidable membership test.  The witness transposes numbers below 2n so\n"
         "the change point lands above the hint code."},
        {"mequiv",
         "m-equivalence of sets of naturals.  As oneequiv, but clause (ii) asks for\n"
         "total many-one reductions both ways (injectivity dropped), each bounded by\n"
         "membership in S(n)."},
        {"universal",
         "Universal graph for a relation presented as 'exists k, R(n,m,k)': edges\n"
         "join a natural a with a triple (n,m,k) exactly when a is n or m and R\n"
         "holds at the triple.  Related naturals sit at distance 2 through a common\n"
         "triple, and a natural reaches a related triple in 3 steps."},
        {"product",
         "Pairwise product of two graphings: coordinates move by equality or by one\n"
         "edge, jointly; the diagonal is removed afterwards.  The diameter is the\n"
         "larger of the two factors' diameters."},
        {"indexrel",
         "Index-relation graphing through special-form codes.  Edge between a and e:\n"
         "e is of special form and either its payload program is a, or its first\n"
         "parameter is a and R(payload, a, second parameter) holds.  The witness for\n"
         "R(a,b,k) is the special form with payload a, parameters b and k; both ends\n"
         "then see the edge, giving distance 2."},
        {"ciso",
         "Computable isomorphism of relational structures.  Edge clause (G1): the\n"
         "second structure is not rigidly trivial (it has a coding shuffle); clause\n"
         "(G2): from the first structure's minimal coding witness (least symbol and\n"
         "shuffle, then least injective tuple) and the change point n read off the\n"
         "second structure, some member of S(n) is an isomorphism.  The witness\n"
         "relabels finitely many points below 2n: first moving the witness tuple\n"
         "onto an initial segment if needed, then filling below the change point\n"
         "with the plentiful truth value (roles swap when the true side is scarce)."},
        {"jump",
         "Jump graphing on sequences over a finite base space.  Clause (H1): every\n"
         "coordinate pair sits within distance 1; clause (H2): the second sequence\n"
         "descends infinitely often and its descent bound g serves every position\n"
         "both ways.  Claim 1 rearranges a common neighbor into descent form; Claim\n"
         "2 peels one step off the sequence distance; together they bound paths by\n"
         "max(2, base diameter)."},
        {"vm",
         "Register machine with inc/dec/jz/oracle/halt over natural registers; r0\n"
         "carries input and output.  Codes are stable artifacts: see\n"
         "docs/encoding.md for the digit-exact numbering, including the swap,\n"
         "composition, and special-form macro classes."},
    };
    return texts;
}

Fuel fuel_from(Nat steps, Nat input_bound) { return Fuel(steps, input_bound); }

int run_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"graphings of arithmetical equivalence relations"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    Nat fuel_steps = 100000, fuel_inputs = 64;
    std::string spec_name = "sum";
    std::string hint_text;
    Nat seed_flag = 0;
    bool seed_set = false;

    Output output(out);

    // ---- adj ----------------------------------------------------------
    auto* adj = app.add_subcommand("adj", "adjacency query");
    std::string adj_family, adj_x, adj_y;
    adj->add_option("graphing", adj_family, "family name")->required();
    adj->add_option("x", adj_x)->required();
    adj->add_option("y", adj_y)->required();
    adj->add_option("--fuel", fuel_steps, "step budget");
    adj->add_option("--input-bound", fuel_inputs, "input bound");
    adj->add_option("--spec", spec_name, "index/universal relation spec");

    // ---- witness ------------------------------------------------------
    auto* wit = app.add_subcommand("witness", "common-neighbor construction");
    std::string wit_family, wit_x, wit_y;
    wit->add_option("graphing", wit_family)->required();
    wit->add_option("x", wit_x)->required();
    wit->add_option("y", wit_y)->required();
    wit->add_option("--hint", hint_text, "hint code(s), comma separated");

    // ---- vm -----------------------------------------------------------
    auto* vm = app.add_subcommand("vm", "register machine");
    auto* vm_run = vm->add_subcommand("run", "run a program");
    std::string vm_code_text, vm_program_path, vm_oracle_text = ";0";
    Nat vm_input = 0;
    vm_run->add_option("--code", vm_code_text, "numeric program code");
    vm_run->add_option("--program", vm_program_path, "program text file");
    vm_run->add_option("--input", vm_input)->required();
    vm_run->add_option("--oracle", vm_oracle_text, "oracle sequence");
    vm_run->add_option("--fuel", fuel_steps);
    auto* vm_encode = vm->add_subcommand("encode", "program text to code");
    vm_encode->add_option("--program", vm_program_path)->required();
    auto* vm_decode = vm->add_subcommand("decode", "code to program text");
    vm_decode->add_option("--code", vm_code_text)->required();

    // ---- indexrel -----------------------------------------------------
    auto* ir = app.add_subcommand("indexrel", "index-relation graphing");
    auto* ir_adj = ir->add_subcommand("adj");
    Nat ir_a = 0, ir_b = 0, ir_k = 0;
    std::string ir_e;
    ir_adj->add_option("a", ir_a)->required();
    ir_adj->add_option("e", ir_e)->required();
    ir_adj->add_option("--spec", spec_name);
    auto* ir_wit = ir->add_subcommand("witness");
    ir_wit->add_option("a", ir_a)->required();
    ir_wit->add_option("b", ir_b)->required();
    ir_wit->add_option("k", ir_k)->required();
    ir_wit->add_option("--spec", spec_name);

    // ---- struct -------------------------------------------------------
    auto* st = app.add_subcommand("struct", "relational structures");
    std::string st_file, st_file2, st_arg;
    Nat st_i = 0;
    auto* st_eval = st->add_subcommand("eval");
    st_eval->add_option("file", st_file)->required();
    st_eval->add_option("symbol", st_i)->required();
    st_eval->add_option("tuple", st_arg)->required();
    auto* st_coding = st->add_subcommand("coding");
    st_coding->add_option("file", st_file)->required();
    st_coding->add_option("symbol", st_i)->required();
    st_coding->add_option("shuffle", st_arg)->required();
    auto* st_bad = st->add_subcommand("badcoding");
    st_bad->add_option("file", st_file)->required();
    auto* st_synth = st->add_subcommand("synth");
    st_synth->add_option("file", st_file)->required();
    st_synth->add_option("symbol", st_i)->required();
    auto* st_push = st->add_subcommand("pushforward");
    st_push->add_option("file", st_file)->required();
    st_push->add_option("swaps", st_arg)->required();
    auto* st_cadj = st->add_subcommand("ciso-adj");
    st_cadj->add_option("file", st_file)->required();
    st_cadj->add_option("file2", st_file2)->required();
    st_cadj->add_option("--fuel", fuel_steps);
    st_cadj->add_option("--input-bound", fuel_inputs);
    auto* st_cwit = st->add_subcommand("ciso-witness");
    st_cwit->add_option("file", st_file)->required();
    st_cwit->add_option("file2", st_file2)->required();
    st_cwit->add_option("--hint", hint_text)->required();

    // ---- jump ---------------------------------------------------------
    auto* jp = app.add_subcommand("jump", "jump graphings over a finite space");
    std::string jp_space, jp_x, jp_y;
    auto* jp_dist = jp->add_subcommand("dist");
    auto* jp_adj = jp->add_subcommand("adj");
    auto* jp_path = jp->add_subcommand("path");
    auto* jp_bpath = jp->add_subcommand("borel-path");
    for (CLI::App* sub : {jp_dist, jp_adj, jp_path, jp_bpath}) {
        sub->add_option("space", jp_space)->required();
        sub->add_option("xs", jp_x)->required();
        sub->add_option("ys", jp_y)->required();
    }

    // ---- verify -------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run a scenario suite");
    std::string ver_file;
    ver->add_option("scenario", ver_file)->required();
    ver->add_option("--seed", seed_flag)->each([&](const std::string&) { seed_set = true; });

    // ---- explain ------------------------------------------------------
    auto* exp = app.add_subcommand("explain", "construction notes");
    std::string exp_name;
    exp->add_option("subcommand", exp_name)->required();

    std::vector<const char*> argv;
    argv.push_back("eqgraph");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "parse error: " << e.what() << "\n";
        return 2;
    }
    output.as_json = (format == "json");

    Fuel fuel = fuel_from(fuel_steps, fuel_inputs);

    if (adj->parsed()) {
        output.field("command", "adj");
        output.field("graphing", adj_family);
        if (adj_family == "e0" || adj_family == "e0n") {
            EPSeq x = EPSeq::parse(adj_x), y = EPSeq::parse(adj_y);
            bool a = adj_family == "e0" ? e0_adjacent(x, y) : e0n_adjacent(x, y);
            output.field("adjacent", a);
            output.text_line(std::string("adjacent: ") + (a ? "true" : "false"));
        } else if (adj_family == "vitali") {
            bool a = vitali_adjacent(Rational::parse(adj_x), Rational::parse(adj_y));
            output.field("adjacent", a);
            output.text_line(std::string("adjacent: ") + (a ? "true" : "false"));
        } else if (adj_family == "turing" || adj_family == "oneequiv" ||
                   adj_family == "mequiv") {
            EPSeq x = EPSeq::parse(adj_x), y = EPSeq::parse(adj_y);
            Graphing<EPSeq> g = adj_family == "turing"     ? turing_graphing(fuel)
                                : adj_family == "oneequiv" ? oneequiv_graphing(fuel)
                                                           : mequiv_graphing(fuel);
            Tri t = g.adjacent(x, y);
            output.field("adjacent", to_string(t));
            output.text_line("adjacent: " + to_string(t));
        } else if (adj_family == "universal") {
            const auto& spec = builtin_index_spec(spec_name);
            bool a = universal_adjacent(parse_unode(adj_x), parse_unode(adj_y), spec.r);
            output.field("adjacent", a);
            output.text_line(std::string("adjacent: ") + (a ? "true" : "false"));
        } else if (adj_family == "product") {
            auto bar_x = adj_x.find('|'), bar_y = adj_y.find('|');
            if (bar_x == std::string::npos || bar_y == std::string::npos)
                throw ParseError("product points have the form 'seq|seq'");
            auto g1 = symmetrized<EPSeq>(
                [](const EPSeq& a, const EPSeq& b) { return Tri::of_bool(e0_raw(a, b)); }, 2);
            auto g2 = symmetrized<EPSeq>(
                [](const EPSeq& a, const EPSeq& b) { return Tri::of_bool(e0n_adjacent(a, b)); },
                2);
            std::pair<EPSeq, EPSeq> x{EPSeq::parse(adj_x.substr(0, bar_x)),
                                      EPSeq::parse(adj_x.substr(bar_x + 1))};
            std::pair<EPSeq, EPSeq> y{EPSeq::parse(adj_y.substr(0, bar_y)),
                                      EPSeq::parse(adj_y.substr(bar_y + 1))};
            Tri t = product_adjacent(g1, g2, x, y);
            output.field("adjacent", to_string(t));
            output.text_line("adjacent: " + to_string(t));
        } else {
            throw ParseError("unknown graphing '" + adj_family + "'");
        }
        output.flush();
        return 0;
    }

    if (wit->parsed()) {
        output.field("command", "witness");
        std::vector<Code> hints;
        if (!hint_text.empty()) {
            std::istringstream in(hint_text);
            std::string tok;
            while (std::getline(in, tok, ',')) hints.push_back(parse_code(tok));
        }
        if (wit_family == "e0" || wit_family == "e0n") {
            EPSeq x = EPSeq::parse(wit_x), y = EPSeq::parse(wit_y);
            EPSeq z = wit_family == "e0" ? e0_witness(x, y) : e0n_witness(x, y);
            output.field("witness", z.to_string());
            output.text_line("witness: " + z.to_string());
        } else if (wit_family == "vitali") {
            Rational z = vitali_witness(Rational::parse(wit_x), Rational::parse(wit_y));
            output.field("witness", z.to_string());
            output.text_line("witness: " + z.to_string());
        } else if (wit_family == "turing") {
            if (hints.size() != 2) throw ParseError("turing witness needs --hint e0,e1");
            EPSeq z = turing_witness(EPSeq::parse(wit_x), EPSeq::parse(wit_y), hints[0],
                                     hints[1]);
            output.field("witness", z.to_string());
            output.text_line("witness: " + z.to_string());
        } else if (wit_family == "oneequiv" || wit_family == "mequiv") {
            EPSeq a = EPSeq::parse(wit_x), a2 = EPSeq::parse(wit_y);
            SetWitness w;
            if (wit_family == "oneequiv") {
                if (hints.size() != 1) throw ParseError("oneequiv witness needs --hint e");
                w = oneequiv_witness(a, a2, hints[0]);
            } else {
                if (hints.size() != 2) throw ParseError("mequiv witness needs --hint e,e'");
                w = mequiv_witness(a, a2, hints[0], hints[1]);
            }
            output.field("witness", w.b.to_string());
            output.field("change_point", w.n);
            output.field("first_to_b", w.first_to_b.str());
            output.field("second_to_b", w.second_to_b.str());
            output.text_line("witness: " + w.b.to_string());
            output.text_line("change point: " + std::to_string(w.n));
        } else {
            throw ParseError("unknown graphing '" + wit_family + "'");
        }
        output.flush();
        return 0;
    }

    if (vm->parsed()) {
        output.field("command", "vm");
        if (vm_run->parsed()) {
            Code code;
            if (!vm_code_text.empty())
                code = parse_code(vm_code_text);
            else if (!vm_program_path.empty())
                code = encode(Program::parse_text(slurp(vm_program_path)));
            else
                throw ParseError("vm run needs --code or --program");
            RunResult r = run(code, vm_input, EPSeq::parse(vm_oracle_text),
                              Fuel(fuel_steps, fuel_inputs));
            if (r.halted) {
                output.field("halted", true);
                output.field("value", r.value);
                output.text_line("halted: " + std::to_string(r.value));
            } else {
                output.field("halted", false);
                output.text_line("out of fuel");
            }
        } else if (vm_encode->parsed()) {
            Code code = encode(Program::parse_text(slurp(vm_program_path)));
            output.field("code", code.str());
            output.text_line(code.str());
        } else if (vm_decode->parsed()) {
            Program p = decode(parse_code(vm_code_text));
            output.field("program", p.to_text());
            output.text_line(p.to_text());
        } else {
            throw ParseError("vm needs run|encode|decode");
        }
        output.flush();
        return 0;
    }

    if (ir->parsed()) {
        output.field("command", "indexrel");
        const auto& spec = builtin_index_spec(spec_name);
        if (ir_adj->parsed()) {
            bool a = index_adjacent(ir_a, parse_code(ir_e), spec);
            output.field("adjacent", a);
            output.text_line(std::string("adjacent: ") + (a ? "true" : "false"));
        } else if (ir_wit->parsed()) {
            Code e = index_witness(ir_a, ir_b, ir_k, spec);
            output.field("witness", e.str());
            output.text_line("witness: " + e.str());
        } else {
            throw ParseError("indexrel needs adj|witness");
        }
        output.flush();
        return 0;
    }

    if (st->parsed()) {
        output.field("command", "struct");
        if (st_eval->parsed()) {
            LStruct x = LStruct::parse_json_text(slurp(st_file));
            bool v = eval(x, st_i, parse_tuple(st_arg));
            output.field("value", v);
            output.text_line(v ? "true" : "false");
        } else if (st_coding->parsed()) {
            LStruct x = LStruct::parse_json_text(slurp(st_file));
            bool v = is_coding(x, st_i, parse_shuffle(st_arg));
            output.field("coding", v);
            output.text_line(v ? "coding" : "not coding");
        } else if (st_bad->parsed()) {
            LStruct x = LStruct::parse_json_text(slurp(st_file));
            bool v = struct_bad_coding(x);
            output.field("bad_coding", v);
            output.text_line(v ? "bad coding" : "has a coding shuffle");
        } else if (st_synth->parsed()) {
            LStruct x = LStruct::parse_json_text(slurp(st_file));
            TrivialFormula f = synthesize_trivial(x, st_i);
            output.field("formula", f.to_string());
            output.text_line(f.to_string());
        } else if (st_push->parsed()) {
            LStruct x = LStruct::parse_json_text(slurp(st_file));
            LStruct y = pushforward(x, parse_swaps(st_arg));
            output.field("structure", json::parse(y.to_json()));
            output.text_line(y.to_json());
        } else if (st_cadj->parsed()) {
            LStruct x = LStruct::parse_json_text(slurp(st_file));
            LStruct y = LStruct::parse_json_text(slurp(st_file2));
            Tri t = ciso_adjacent(x, y, fuel);
            output.field("adjacent", to_string(t));
            output.text_line("adjacent: " + to_string(t));
        } else if (st_cwit->parsed()) {
            LStruct x = LStruct::parse_json_text(slurp(st_file));
            LStruct x2 = LStruct::parse_json_text(slurp(st_file2));
            CisoWitness w = ciso_witness(x, x2, parse_code(hint_text));
            output.field("structure", json::parse(w.y.to_json()));
            output.field("change_point", w.n);
            output.field("x_to_y", w.x_to_y.str());
            output.text_line(w.y.to_json());
            output.text_line("change point: " + std::to_string(w.n));
        } else {
            throw ParseError("struct needs eval|coding|badcoding|synth|pushforward|ciso-adj|ciso-witness");
        }
        output.flush();
        return 0;
    }

    if (jp->parsed()) {
        output.field("command", "jump");
        FinSpace space = FinSpace::parse_json_text(slurp(jp_space));
        PtSeq xs = EPSeq::parse(jp_x), ys = EPSeq::parse(jp_y);
        if (jp_dist->parsed()) {
            auto d = dist_seq_seq(space, xs, ys);
            output.field("distance", d ? json(*d) : json("infinite"));
            output.text_line("distance: " + (d ? std::to_string(*d) : "infinite"));
        } else if (jp_adj->parsed()) {
            bool a = h_adjacent(space, xs, ys) || h_adjacent(space, ys, xs);
            output.field("adjacent", a);
            output.text_line(std::string("adjacent: ") + (a ? "true" : "false"));
        } else if (jp_path->parsed() || jp_bpath->parsed()) {
            auto path = jp_path->parsed() ? jump_path(space, xs, ys)
                                          : borel_jump_path(space, xs, ys);
            json arr = json::array();
            for (const auto& node : path) arr.push_back(node.to_string());
            output.field("path", arr);
            output.field("length", path.size() - 1);
            for (const auto& node : path) output.text_line(node.to_string());
        } else {
            throw ParseError("jump needs dist|adj|path|borel-path");
        }
        output.flush();
        return 0;
    }

    if (ver->parsed()) {
        output.field("command", "verify");
        std::optional<Nat> seed;
        if (seed_set) seed = seed_flag;
        auto reports = run_suite_file(ver_file, seed);
        bool all_ok = true;
        json arr = json::array();
        for (const auto& r : reports) {
            all_ok = all_ok && r.ok();
            arr.push_back(json::parse(r.to_json(true)));
            output.text_line(r.to_text());
        }
        output.field("reports", arr);
        output.field("ok", all_ok);
        output.flush();
        return all_ok ? 0 : 1;
    }

    if (exp->parsed()) {
        const auto& texts = explain_texts();
        auto it = texts.find(exp_name);
        if (it == texts.end()) {
            err << "parse error: no notes for '" << exp_name << "'\n";
            return 2;
        }
        output.field("command", "explain");
        output.field("notes", it->second);
        output.text_line(it->second);
        output.flush();
        return 0;
    }

    err << "parse error: no subcommand\n";
    return 2;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_dispatch(args, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const RepresentationError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace eqgraph::cli
