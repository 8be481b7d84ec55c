#include "cenormal/sequences.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "cenormal/errors.hpp"
#include "cenormal/primes.hpp"

namespace cenormal {

struct SequenceSpec::Node {
    Kind kind;
    std::vector<std::uint64_t> values;  // coefficients or explicit members
    Argument argument = Argument::naturals;
    std::optional<SequenceSpec> inner;
};

namespace {

using u64 = std::uint64_t;

std::vector<u64> parse_list(std::string_view text, std::string_view what) {
    std::vector<u64> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    for (;;) {
        std::size_t comma = text.find(',', pos);
        std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.size() - pos
                                                                                 : comma - pos);
        u64 value = 0;
        auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
            throw ParseError("invalid " + std::string(what) + " entry '" + std::string(item) + "'");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string join(const std::vector<u64>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

void require_cap(u64 x, u64 cap) {
    if (x > cap) {
        throw CapExceeded("counting query at " + std::to_string(x) + " exceeds sieve cap " +
                          std::to_string(cap));
    }
}

}  // namespace

SequenceSpec SequenceSpec::naturals() {
    return SequenceSpec(std::make_shared<Node>(Node{Kind::naturals, {}, {}, {}}));
}

SequenceSpec SequenceSpec::composites() {
    return SequenceSpec(std::make_shared<Node>(Node{Kind::composites, {}, {}, {}}));
}

SequenceSpec SequenceSpec::primes() {
    return SequenceSpec(std::make_shared<Node>(Node{Kind::primes, {}, {}, {}}));
}

SequenceSpec SequenceSpec::polynomial(std::vector<u64> coefficients, Argument argument) {
    if (coefficients.size() < 2) {
        throw DomainError("polynomial must be non-constant (at least two coefficients)");
    }
    if (coefficients.back() == 0) {
        throw DomainError("polynomial leading coefficient must be positive");
    }
    return SequenceSpec(
        std::make_shared<Node>(Node{Kind::polynomial, std::move(coefficients), argument, {}}));
}

SequenceSpec SequenceSpec::complement(const SequenceSpec& of) {
    if (of.kind() == Kind::complement) return of.complemented();
    return SequenceSpec(std::make_shared<Node>(Node{Kind::complement, {}, {}, of}));
}

SequenceSpec SequenceSpec::explicit_list(std::vector<u64> members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] == 0) throw DomainError("explicit members must be positive");
        if (i && members[i] <= members[i - 1]) {
            throw DomainError("explicit members must be strictly increasing");
        }
    }
    return SequenceSpec(
        std::make_shared<Node>(Node{Kind::explicit_list, std::move(members), {}, {}}));
}

SequenceSpec SequenceSpec::parse(std::string_view text) {
    auto strip = [&](std::string_view prefix) -> std::optional<std::string_view> {
        if (text.substr(0, prefix.size()) == prefix) return text.substr(prefix.size());
        return std::nullopt;
    };
    if (text == "naturals") return naturals();
    if (text == "composites") return composites();
    if (text == "primes") return primes();
    try {
        if (auto rest = strip("poly:")) return polynomial(parse_list(*rest, "coefficient"));
        if (auto rest = strip("poly-primes:")) {
            return polynomial(parse_list(*rest, "coefficient"), Argument::primes);
        }
        if (auto rest = strip("explicit:")) return explicit_list(parse_list(*rest, "member"));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    if (auto rest = strip("complement:")) return complement(parse(*rest));
    throw ParseError("unknown sequence spec '" + std::string(text) + "'");
}

std::string SequenceSpec::to_string() const {
    switch (kind()) {
        case Kind::naturals: return "naturals";
        case Kind::composites: return "composites";
        case Kind::primes: return "primes";
        case Kind::polynomial:
            return (argument() == Argument::primes ? "poly-primes:" : "poly:") + join(node_->values);
        case Kind::complement: return "complement:" + complemented().to_string();
        case Kind::explicit_list: return "explicit:" + join(node_->values);
    }
    return {};
}

SequenceSpec::Kind SequenceSpec::kind() const { return node_->kind; }

const std::vector<u64>& SequenceSpec::coefficients() const { return node_->values; }

SequenceSpec::Argument SequenceSpec::argument() const { return node_->argument; }

const SequenceSpec& SequenceSpec::complemented() const {
    if (!node_->inner) throw DomainError("not a complement spec");
    return *node_->inner;
}

const std::vector<u64>& SequenceSpec::members() const { return node_->values; }

std::optional<u64> SequenceSpec::evaluate(u64 n) const {
    const auto& coeffs = coefficients();
    u64 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (__builtin_mul_overflow(acc, n, &acc)) return std::nullopt;
        if (__builtin_add_overflow(acc, *it, &acc)) return std::nullopt;
    }
    return acc;
}

u64 SequenceSpec::polynomial_preimage_count(u64 x) const {
    // f(n) >= n for n >= 1, so the answer lies in [0, x].
    u64 lo = 0;
    u64 hi = x;
    while (lo < hi) {
        u64 mid = lo + (hi - lo + 1) / 2;
        auto v = evaluate(mid);
        if (v && *v <= x) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

u64 next_member(const SequenceSpec& spec, u64 after) {
    using Kind = SequenceSpec::Kind;
    auto bump = [](u64 v) {
        if (v == std::numeric_limits<u64>::max()) throw OverflowError("member beyond 64-bit range");
        return v + 1;
    };
    switch (spec.kind()) {
        case Kind::naturals: return bump(after);
        case Kind::primes: {
            u64 n = bump(after);
            while (!primes::is_prime(n)) n = bump(n);
            return n;
        }
        case Kind::composites: {
            u64 n = std::max<u64>(bump(after), 4);
            while (primes::is_prime(n)) n = bump(n);
            return n;
        }
        case Kind::polynomial: {
            u64 n = bump(spec.polynomial_preimage_count(after));
            if (spec.argument() == SequenceSpec::Argument::primes) {
                while (!primes::is_prime(n)) n = bump(n);
            }
            auto v = spec.evaluate(n);
            if (!v) throw OverflowError("polynomial value beyond 64-bit range");
            return *v;
        }
        case Kind::complement: {
            const auto& inner = spec.complemented();
            if (inner.kind() == Kind::naturals) throw SequenceExhausted("complement of naturals is empty");
            u64 n = bump(after);
            while (is_member(inner, n)) n = bump(n);
            return n;
        }
        case Kind::explicit_list: {
            const auto& m = spec.members();
            auto it = std::upper_bound(m.begin(), m.end(), after);
            if (it == m.end()) throw SequenceExhausted("explicit sequence exhausted after " + std::to_string(after));
            return *it;
        }
    }
    return 0;
}

bool is_member(const SequenceSpec& spec, u64 n) {
    using Kind = SequenceSpec::Kind;
    if (n == 0) return false;
    switch (spec.kind()) {
        case Kind::naturals: return true;
        case Kind::primes: return primes::is_prime(n);
        case Kind::composites: return n >= 4 && !primes::is_prime(n);
        case Kind::polynomial: {
            u64 k = spec.polynomial_preimage_count(n);
            if (k == 0 || spec.evaluate(k) != n) return false;
            return spec.argument() == SequenceSpec::Argument::naturals || primes::is_prime(k);
        }
        case Kind::complement: return !is_member(spec.complemented(), n);
        case Kind::explicit_list: return std::binary_search(spec.members().begin(), spec.members().end(), n);
    }
    return false;
}

u64 counting_function(const SequenceSpec& spec, u64 x, u64 cap) {
    using Kind = SequenceSpec::Kind;
    switch (spec.kind()) {
        case Kind::naturals: return x;
        case Kind::primes:
            require_cap(x, cap);
            return primes::prime_pi(x);
        case Kind::composites:
            require_cap(x, cap);
            return x < 4 ? 0 : x - primes::prime_pi(x) - 1;
        case Kind::polynomial: {
            u64 k = spec.polynomial_preimage_count(x);
            if (spec.argument() == SequenceSpec::Argument::naturals) return k;
            require_cap(k, cap);
            return primes::prime_pi(k);
        }
        case Kind::complement: return x - counting_function(spec.complemented(), x, cap);
        case Kind::explicit_list: {
            const auto& m = spec.members();
            return static_cast<u64>(std::upper_bound(m.begin(), m.end(), x) - m.begin());
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct MemberCursor::Impl {
    virtual ~Impl() = default;
    virtual u64 next() = 0;
};

namespace {

struct NaturalsImpl final : MemberCursor::Impl {
    explicit NaturalsImpl(u64 after) : current(after) {}
    u64 next() override { return ++current; }
    u64 current;
};

struct PrimesImpl final : MemberCursor::Impl {
    explicit PrimesImpl(u64 after) : walker(after) {}
    u64 next() override { return walker.next(); }
    primes::PrimeWalker walker;
};

struct CompositesImpl final : MemberCursor::Impl {
    explicit CompositesImpl(u64 after)
        : current(std::max<u64>(after, 3)), walker(current), next_prime(walker.next()) {}
    u64 next() override {
        for (;;) {
            ++current;
            while (next_prime < current) next_prime = walker.next();
            if (current != next_prime) return current;
        }
    }
    u64 current;
    primes::PrimeWalker walker;
    u64 next_prime;
};

struct PolynomialImpl final : MemberCursor::Impl {
    PolynomialImpl(SequenceSpec s, u64 after) : spec(std::move(s)), index(spec.polynomial_preimage_count(after)) {}
    u64 next() override {
        auto v = spec.evaluate(++index);
        if (!v) throw OverflowError("polynomial value beyond 64-bit range");
        return *v;
    }
    SequenceSpec spec;
    u64 index;
};

struct PolynomialPrimesImpl final : MemberCursor::Impl {
    PolynomialPrimesImpl(SequenceSpec s, u64 after)
        : spec(std::move(s)), walker(spec.polynomial_preimage_count(after)) {}
    u64 next() override {
        auto v = spec.evaluate(walker.next());
        if (!v) throw OverflowError("polynomial value beyond 64-bit range");
        return *v;
    }
    SequenceSpec spec;
    primes::PrimeWalker walker;
};

struct ExplicitImpl final : MemberCursor::Impl {
    ExplicitImpl(SequenceSpec s, u64 after) : spec(std::move(s)) {
        const auto& m = spec.members();
        index = static_cast<std::size_t>(std::upper_bound(m.begin(), m.end(), after) - m.begin());
    }
    u64 next() override {
        const auto& m = spec.members();
        if (index >= m.size()) throw SequenceExhausted("explicit sequence exhausted");
        return m[index++];
    }
    SequenceSpec spec;
    std::size_t index;
};

struct ComplementImpl final : MemberCursor::Impl {
    ComplementImpl(const SequenceSpec& s, u64 after) : current(after), inner(s.complemented(), after) {
        empty = s.complemented().kind() == SequenceSpec::Kind::naturals;
        advance_inner();
    }
    void advance_inner() {
        try {
            inner_next = inner.next();
        } catch (const SequenceExhausted&) {
            inner_done = true;
        }
    }
    u64 next() override {
        if (empty) throw SequenceExhausted("complement of naturals is empty");
        for (;;) {
            ++current;
            if (inner_done || current != inner_next) return current;
            advance_inner();
        }
    }
    u64 current;
    MemberCursor inner;
    u64 inner_next = 0;
    bool inner_done = false;
    bool empty = false;
};

}  // namespace

MemberCursor::MemberCursor(const SequenceSpec& spec, u64 after) {
    using Kind = SequenceSpec::Kind;
    switch (spec.kind()) {
        case Kind::naturals: impl_ = std::make_unique<NaturalsImpl>(after); break;
        case Kind::primes: impl_ = std::make_unique<PrimesImpl>(after); break;
        case Kind::composites: impl_ = std::make_unique<CompositesImpl>(after); break;
        case Kind::polynomial:
            if (spec.argument() == SequenceSpec::Argument::primes) {
                impl_ = std::make_unique<PolynomialPrimesImpl>(spec, after);
            } else {
                impl_ = std::make_unique<PolynomialImpl>(spec, after);
            }
            break;
        case Kind::complement: impl_ = std::make_unique<ComplementImpl>(spec, after); break;
        case Kind::explicit_list: impl_ = std::make_unique<ExplicitImpl>(spec, after); break;
    }
}

MemberCursor::MemberCursor(MemberCursor&&) noexcept = default;
MemberCursor& MemberCursor::operator=(MemberCursor&&) noexcept = default;
MemberCursor::~MemberCursor() = default;

u64 MemberCursor::next() { return impl_->next(); }

}  // namespace cenormal
