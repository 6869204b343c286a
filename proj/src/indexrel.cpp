#include "eqgraph/indexrel.hpp"

#include <cmath>

namespace eqgraph {

namespace {

std::optional<Nat> code_to_nat(const Code& c) {
    if (c > Code(std::numeric_limits<Nat>::max())) return std::nullopt;
    return static_cast<Nat>(c);
}

// Small Cantor pairing on machine words, for packing spec parameters.
std::pair<Nat, Nat> unpair_nat(Nat k) {
    Nat s = static_cast<Nat>((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
    while (s * (s + 1) / 2 > k) --s;
    while ((s + 1) * (s + 2) / 2 <= k) ++s;
    Nat b = k - s * (s + 1) / 2;
    return {s - b, b};
}

}  // namespace

bool index_adjacent(Nat a, const Code& e, const IndexRelationSpec& spec) {
    if (!form(e)) return false;
    if (main_code(e) == a) return true;
    if (code1(e) != a) return false;
    auto m = code_to_nat(main_code(e));
    auto k = code_to_nat(code2(e));
    // Spec evaluators take machine words; parameters beyond that can never
    // witness a desk-scale relation.
    if (!m || !k) return false;
    return spec.r(*m, a, *k);
}

Code index_witness(Nat a, Nat b, Nat k, const IndexRelationSpec& spec) {
    if (!spec.r(a, b, k))
        throw DomainError("index witness: R(" + std::to_string(a) + "," + std::to_string(b) +
                          "," + std::to_string(k) + ") does not hold in spec '" + spec.name + "'");
    return special_encode(Code(b), Code(k), Code(a));
}

namespace {

bool halts_within(Nat e, Nat input, Nat steps) {
    if (steps == 0) return false;
    FuelMeter meter(Fuel(steps, 1));
    return run(Code(e), input, zero_oracle(), meter).halted;
}

}  // namespace

const IndexRelationSpec& builtin_index_spec(const std::string& name) {
    static const IndexRelationSpec sum{"sum", [](Nat a, Nat b, Nat k) { return a + b == k; }};
    static const IndexRelationSpec wagree{
        "wagree", [](Nat a, Nat b, Nat k) {
            auto [m, s] = unpair_nat(k);
            for (Nat t = 0; t < m; ++t)
                if (halts_within(a, t, s) != halts_within(b, t, s)) return false;
            return true;
        }};
    if (name == "sum") return sum;
    if (name == "wagree") return wagree;
    throw ConfigError("unknown index relation spec '" + name + "'");
}

std::vector<std::string> builtin_index_spec_names() { return {"sum", "wagree"}; }

}  // namespace eqgraph
