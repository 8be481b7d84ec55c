#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cenormal {

/// Sieve-backed counting functions refuse queries above this bound.
inline constexpr std::uint64_t kDefaultCountingCap = 100'000'000;

/// Immutable description of an increasing sequence of positive integers.
///
/// 1 is neither prime nor composite, so `composites` starts at 4 while
/// `complement(primes)` starts at 1. Complementing twice yields the original
/// spec. Polynomials take nonnegative coefficients (ascending degree) with a
/// positive leading coefficient and degree >= 1, which keeps f strictly
/// increasing on the naturals with f(1) >= 1.
class SequenceSpec {
public:
    enum class Kind { naturals, composites, primes, polynomial, complement, explicit_list };
    enum class Argument { naturals, primes };

    static SequenceSpec naturals();
    static SequenceSpec composites();
    static SequenceSpec primes();
    static SequenceSpec polynomial(std::vector<std::uint64_t> coefficients,
                                   Argument argument = Argument::naturals);
    static SequenceSpec complement(const SequenceSpec& of);
    static SequenceSpec explicit_list(std::vector<std::uint64_t> members);

    /// `naturals`, `composites`, `primes`, `poly:3,0,1`, `poly-primes:0,1`,
    /// `complement:<spec>`, `explicit:1,4,9` (an empty list is `explicit:`).
    static SequenceSpec parse(std::string_view text);
    std::string to_string() const;

    Kind kind() const;
    const std::vector<std::uint64_t>& coefficients() const;
    Argument argument() const;
    const SequenceSpec& complemented() const;
    const std::vector<std::uint64_t>& members() const;

    /// f(n) for polynomial kinds, or nullopt if it exceeds 64 bits.
    std::optional<std::uint64_t> evaluate(std::uint64_t n) const;

    /// Number of n >= 1 with f(n) <= x, for polynomial kinds.
    std::uint64_t polynomial_preimage_count(std::uint64_t x) const;

    friend bool operator==(const SequenceSpec& a, const SequenceSpec& b) {
        return a.to_string() == b.to_string();
    }

private:
    struct Node;
    explicit SequenceSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Smallest member strictly greater than `after`.
std::uint64_t next_member(const SequenceSpec& spec, std::uint64_t after);

bool is_member(const SequenceSpec& spec, std::uint64_t n);

/// A(x) = |{a in A : a <= x}|. Kinds that need the prime sieve throw
/// CapExceeded when the sieve would have to reach beyond `cap`.
std::uint64_t counting_function(const SequenceSpec& spec, std::uint64_t x,
                                std::uint64_t cap = kDefaultCountingCap);

/// Streams members strictly greater than `after` in increasing order. Bulk
/// generation for the prime-based kinds goes through a windowed sieve.
class MemberCursor {
public:
    explicit MemberCursor(const SequenceSpec& spec, std::uint64_t after = 0);
    MemberCursor(MemberCursor&&) noexcept;
    MemberCursor& operator=(MemberCursor&&) noexcept;
    ~MemberCursor();

    /// Throws SequenceExhausted once a finite sequence runs out.
    std::uint64_t next();

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

}  // namespace cenormal
