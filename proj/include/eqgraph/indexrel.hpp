#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eqgraph/core.hpp"
#include "eqgraph/machines.hpp"

namespace eqgraph {

// A bounded-decidable ternary predicate presenting an equivalence on indices
// as aEb <-> exists k R(a,b,k).  The evaluator must be deterministic and
// total at every queried triple; whether it genuinely presents an index
// equivalence relation is the supplier's obligation.
struct IndexRelationSpec {
    std::string name;
    std::function<bool(Nat a, Nat b, Nat k)> r;
};

// Edge between a natural a and a code e: e is of special form and either
// its payload program is a itself, or its first parameter is a and
// R(main, a, second parameter) holds.
bool index_adjacent(Nat a, const Code& e, const IndexRelationSpec& spec);

// Special-form code joining a and b through the supplied R-witness k:
// payload program a, first parameter b, second parameter k.  Requires
// R(a,b,k); both index_adjacent(a, e) and index_adjacent(b, e) then hold.
Code index_witness(Nat a, Nat b, Nat k, const IndexRelationSpec& spec);

// Registered specs: "sum" (a+b == k) and "wagree" (the halting domains of a
// and b agree below m within s steps, k coding the pair (m, s)).
const IndexRelationSpec& builtin_index_spec(const std::string& name);
std::vector<std::string> builtin_index_spec_names();

}  // namespace eqgraph
