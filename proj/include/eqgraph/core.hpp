#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqgraph {

using Nat = std::uint64_t;

// Error taxonomy shared by all modules.  The CLI maps these to exit codes:
// parse errors -> 2, domain errors -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    using Error::Error;
};
struct RepresentationError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Tri: three-valued outcome of a fuel-bounded check.
// Verified and Refuted are final; Unknown records how much step budget was
// left when the evaluation gave up (0 when the budget ran dry).
// ---------------------------------------------------------------------------
class Tri {
public:
    enum class Kind : std::uint8_t { Refuted, Unknown, Verified };

    static Tri verified() { return Tri(Kind::Verified, 0); }
    static Tri refuted() { return Tri(Kind::Refuted, 0); }
    static Tri unknown(Nat fuel_left = 0) { return Tri(Kind::Unknown, fuel_left); }
    static Tri of_bool(bool b) { return b ? verified() : refuted(); }

    Kind kind() const { return kind_; }
    bool is_verified() const { return kind_ == Kind::Verified; }
    bool is_refuted() const { return kind_ == Kind::Refuted; }
    bool is_unknown() const { return kind_ == Kind::Unknown; }
    Nat fuel_left() const { return fuel_left_; }

    // Equality is on the verdict only; the fuel annotation is diagnostic.
    friend bool operator==(const Tri& a, const Tri& b) { return a.kind_ == b.kind_; }
    friend bool operator!=(const Tri& a, const Tri& b) { return !(a == b); }

private:
    Tri(Kind k, Nat f) : kind_(k), fuel_left_(f) {}
    Kind kind_;
    Nat fuel_left_;
};

// Kleene combinators: Refuted dominates conjunction, Verified dominates
// disjunction, Unknown propagates otherwise.
Tri tri_and(const Tri& a, const Tri& b);
Tri tri_or(const Tri& a, const Tri& b);
Tri tri_not(const Tri& a);

std::string to_string(const Tri& t);

// ---------------------------------------------------------------------------
// Fuel: budget for bounded evaluation.  `steps` meters virtual-machine steps
// (shared across all runs inside one check); `input_bound` caps which inputs
// a bounded check inspects.
// ---------------------------------------------------------------------------
struct Fuel {
    Nat steps = 100000;
    Nat input_bound = 64;

    Fuel() = default;
    Fuel(Nat s, Nat b) : steps(s), input_bound(b) {
        if (s == 0 || b == 0) throw RepresentationError("fuel components must be positive");
    }
};

// Mutable draw-down meter derived from a Fuel.  One meter per check keeps
// multi-run evaluations terminating and deterministic.
class FuelMeter {
public:
    explicit FuelMeter(const Fuel& f) : left_(f.steps), input_bound_(f.input_bound) {}

    bool consume(Nat n = 1) {
        if (left_ < n) {
            left_ = 0;
            return false;
        }
        left_ -= n;
        return true;
    }
    bool exhausted() const { return left_ == 0; }
    Nat left() const { return left_; }
    Nat input_bound() const { return input_bound_; }

private:
    Nat left_;
    Nat input_bound_;
};

// ---------------------------------------------------------------------------
// EPSeq: eventually periodic sequence of naturals, the finite stand-in for
// points of Cantor and Baire space.  Canonical form is unique per sequence:
// the period is primitive and the prefix is minimal (its last element
// differs from the period element that would replace it).
// ---------------------------------------------------------------------------
class EPSeq {
public:
    // The all-zero sequence.
    EPSeq() : period_{0} {}
    // Normalizes on construction; throws RepresentationError on empty period.
    EPSeq(std::vector<Nat> prefix, std::vector<Nat> period);

    // All-constant sequence v^omega.
    static EPSeq constant(Nat v);

    // Parses "p1,p2,...;q1,q2,..." (prefix may be empty: ";0,1").
    static EPSeq parse(const std::string& text);

    Nat at(Nat i) const;
    const std::vector<Nat>& prefix() const { return prefix_; }
    const std::vector<Nat>& period() const { return period_; }
    Nat prefix_len() const { return prefix_.size(); }
    Nat period_len() const { return period_.size(); }

    bool is_constant() const { return prefix_.empty() && period_.size() == 1; }
    // True when every term is 0 or 1.
    bool is_binary() const;
    // Largest value appearing anywhere.
    Nat max_value() const;

    // Rebuilds this sequence with finitely many positions overridden.
    // `edits` is a list of (position, new value).
    EPSeq with_edits(const std::vector<std::pair<Nat, Nat>>& edits) const;

    std::string to_string() const;

    // Equality of canonical forms == equality as functions.
    friend bool operator==(const EPSeq& a, const EPSeq& b) {
        return a.prefix_ == b.prefix_ && a.period_ == b.period_;
    }
    friend bool operator!=(const EPSeq& a, const EPSeq& b) { return !(a == b); }
    friend bool operator<(const EPSeq& a, const EPSeq& b) {
        if (a.prefix_ != b.prefix_) return a.prefix_ < b.prefix_;
        return a.period_ < b.period_;
    }

private:
    std::vector<Nat> prefix_;
    std::vector<Nat> period_;
};

// normalize is the canonicalizing constructor exposed as a free function.
EPSeq normalize(std::vector<Nat> prefix, std::vector<Nat> period);

// Tails eventually agree.  Decidable: any disagreement of the periodic tails
// recurs within lcm(|period_x|, |period_y|) positions past both prefixes.
bool eventually_equal(const EPSeq& x, const EPSeq& y);

// Strict lexicographic order: x != y and x(i) < y(i) at the first
// differing index.
bool lex_less(const EPSeq& x, const EPSeq& y);

// Smallest window length W such that two sequences agreeing on [0, W) agree
// everywhere: max prefix length plus one lcm of the periods.
Nat agreement_window(const EPSeq& x, const EPSeq& y);

// ---------------------------------------------------------------------------
// Rational: reduced fraction with positive denominator.
// ---------------------------------------------------------------------------
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);

    static Rational parse(const std::string& text);  // "p/q" or "p"

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    std::int64_t floor() const;

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

    std::string to_string() const;

private:
    std::int64_t num_;
    std::int64_t den_;  // > 0
};

}  // namespace eqgraph
