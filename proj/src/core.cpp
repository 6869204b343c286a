#include "eqgraph/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace eqgraph {

Tri tri_and(const Tri& a, const Tri& b) {
    if (a.is_refuted() || b.is_refuted()) return Tri::refuted();
    if (a.is_verified() && b.is_verified()) return Tri::verified();
    return Tri::unknown(std::min(a.fuel_left(), b.fuel_left()));
}

Tri tri_or(const Tri& a, const Tri& b) {
    if (a.is_verified() || b.is_verified()) return Tri::verified();
    if (a.is_refuted() && b.is_refuted()) return Tri::refuted();
    return Tri::unknown(std::min(a.fuel_left(), b.fuel_left()));
}

Tri tri_not(const Tri& a) {
    switch (a.kind()) {
        case Tri::Kind::Verified: return Tri::refuted();
        case Tri::Kind::Refuted: return Tri::verified();
        default: return Tri::unknown(a.fuel_left());
    }
}

std::string to_string(const Tri& t) {
    switch (t.kind()) {
        case Tri::Kind::Verified: return "verified";
        case Tri::Kind::Refuted: return "refuted";
        default: return "unknown";
    }
}

namespace {

// Shortest word w such that `word` = w^k.  Classic failure-function-free
// check: try every divisor length.
std::vector<Nat> primitive_root(const std::vector<Nat>& word) {
    const std::size_t n = word.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = (word[i] == word[i % d]);
        if (ok) return std::vector<Nat>(word.begin(), word.begin() + d);
    }
    return word;
}

}  // namespace

EPSeq::EPSeq(std::vector<Nat> prefix, std::vector<Nat> period) {
    if (period.empty()) throw RepresentationError("EPSeq period must be nonempty");
    prefix_ = std::move(prefix);
    period_ = primitive_root(period);
    // Absorb prefix elements while the last prefix element equals the last
    // period element; each absorption rotates the period right.  Rotation
    // preserves primitivity, so the loop ends at the minimal prefix for the
    // primitive period, which is the unique canonical form.
    while (!prefix_.empty() && prefix_.back() == period_.back()) {
        Nat moved = period_.back();
        period_.pop_back();
        period_.insert(period_.begin(), moved);
        prefix_.pop_back();
    }
}

EPSeq normalize(std::vector<Nat> prefix, std::vector<Nat> period) {
    return EPSeq(std::move(prefix), std::move(period));
}

EPSeq EPSeq::constant(Nat v) { return EPSeq({}, {v}); }

Nat EPSeq::at(Nat i) const {
    if (i < prefix_.size()) return prefix_[i];
    return period_[(i - prefix_.size()) % period_.size()];
}

bool EPSeq::is_binary() const {
    for (Nat v : prefix_)
        if (v > 1) return false;
    for (Nat v : period_)
        if (v > 1) return false;
    return true;
}

Nat EPSeq::max_value() const {
    Nat m = 0;
    for (Nat v : prefix_) m = std::max(m, v);
    for (Nat v : period_) m = std::max(m, v);
    return m;
}

EPSeq EPSeq::with_edits(const std::vector<std::pair<Nat, Nat>>& edits) const {
    Nat hi = prefix_.size();
    for (const auto& [pos, val] : edits) {
        (void)val;
        hi = std::max(hi, pos + 1);
    }
    std::vector<Nat> pre(hi);
    for (Nat i = 0; i < hi; ++i) pre[i] = at(i);
    for (const auto& [pos, val] : edits) pre[pos] = val;
    // Tail beyond hi follows this sequence's period, aligned at hi.
    std::vector<Nat> per(period_.size());
    for (Nat j = 0; j < period_.size(); ++j) per[j] = at(hi + j);
    return EPSeq(std::move(pre), std::move(per));
}

std::string EPSeq::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) out << ',';
        out << prefix_[i];
    }
    out << ';';
    for (std::size_t i = 0; i < period_.size(); ++i) {
        if (i) out << ',';
        out << period_[i];
    }
    return out.str();
}

namespace {

std::vector<Nat> parse_nat_list(const std::string& text, const std::string& whole) {
    std::vector<Nat> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad natural '" + tok + "' in sequence '" + whole + "'");
        out.push_back(std::stoull(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

EPSeq EPSeq::parse(const std::string& text) {
    std::size_t semi = text.find(';');
    if (semi == std::string::npos)
        throw ParseError("sequence '" + text + "' lacks ';' separating prefix from period");
    auto prefix = parse_nat_list(text.substr(0, semi), text);
    auto period = parse_nat_list(text.substr(semi + 1), text);
    if (period.empty()) throw ParseError("sequence '" + text + "' has empty period");
    return EPSeq(std::move(prefix), std::move(period));
}

Nat agreement_window(const EPSeq& x, const EPSeq& y) {
    Nat p = std::max(x.prefix_len(), y.prefix_len());
    Nat l = std::lcm(x.period_len(), y.period_len());
    return p + l;
}

bool eventually_equal(const EPSeq& x, const EPSeq& y) {
    Nat p = std::max(x.prefix_len(), y.prefix_len());
    Nat l = std::lcm(x.period_len(), y.period_len());
    for (Nat i = p; i < p + l; ++i)
        if (x.at(i) != y.at(i)) return false;
    return true;
}

bool lex_less(const EPSeq& x, const EPSeq& y) {
    if (x == y) return false;
    Nat w = agreement_window(x, y);
    for (Nat i = 0; i < w; ++i) {
        if (x.at(i) != y.at(i)) return x.at(i) < y.at(i);
    }
    // Canonical forms differ, so a difference must occur inside the window.
    throw Error("lex_less: canonical forms differ but no differing index found");
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw RepresentationError("rational denominator must be nonzero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rational Rational::parse(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text), 1);
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("bad rational '" + text + "'");
    }
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace eqgraph
