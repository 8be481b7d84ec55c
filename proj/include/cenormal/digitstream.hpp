#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cenormal/bigint.hpp"
#include "cenormal/sequences.hpp"

namespace cenormal {

using Digit = std::uint32_t;

/// Streams are limited to bases below 2^16.
inline constexpr std::uint32_t kMaxBase = 65535;

/// A generalized Copeland-Erdos number: the base-b expansions of the members
/// of a sequence, each block (a)_b repeated floor(c^len(a)) times.
struct XiSpec {
    XiSpec(SequenceSpec sequence, std::uint32_t base, Rational multiplier = 1);

    /// `<sequence>|b=<base>|c=<multiplier>`, e.g. `primes|b=10|c=3/2`.
    std::string to_string() const;
    static XiSpec parse(std::string_view text);

    SequenceSpec sequence;
    std::uint32_t base;
    Rational multiplier;
};

/// Base-b digits of n, most significant first.
std::vector<Digit> to_digits(std::uint64_t n, std::uint32_t base);

unsigned digit_length(std::uint64_t n, std::uint32_t base);

/// floor(c^len_b(n)) by exact rational exponentiation.
BigInt repetitions(std::uint64_t n, std::uint32_t base, const Rational& c);

/// Resumable position inside the digit stream of a XiSpec.
///
/// The state names the next digit to be emitted: digit `offset` of copy `rep`
/// of `integer`. `integer == 0` means no member has been loaded yet and
/// `rep == floor(c^len)` means the block of `integer` is finished; the next
/// member is fetched lazily. Positions are 64-bit and checked.
class StreamCursor {
public:
    struct State {
        std::uint64_t position = 0;
        std::uint64_t integer = 0;
        std::uint64_t rep = 0;
        std::uint64_t offset = 0;
    };

    explicit StreamCursor(XiSpec spec);
    StreamCursor(XiSpec spec, const State& state);

    /// Emits the digit at position()+1.
    Digit next_digit();

    /// Reads `out.size()` digits.
    void read(std::span<Digit> out);

    /// Moves forward so that the next digit emitted is at position n+1,
    /// jumping whole repetitions and whole integers.
    void skip_to(std::uint64_t n);

    /// Consumes n digits, adding each digit's occurrences to counts[digit].
    void tally(std::uint64_t n, std::span<std::uint64_t> counts);

    /// Digits emitted so far.
    std::uint64_t position() const { return position_; }

    /// The integer whose block holds the next digit. Loads the next member if
    /// the current block is finished, so it may throw SequenceExhausted.
    std::uint64_t current_integer();

    State state() const { return {position_, integer_, rep_, offset_}; }
    const XiSpec& spec() const { return spec_; }

    /// `position=<int> integer=<int> rep=<int> offset=<int> spec=<xi-spec>`
    std::string checkpoint() const;
    static StreamCursor from_checkpoint(std::string_view record);

private:
    void load(std::uint64_t integer);
    void ensure_block();
    std::uint64_t reps_for_length(unsigned length);
    void jump_naturals(std::uint64_t& remaining);

    XiSpec spec_;
    MemberCursor members_;
    std::uint64_t position_ = 0;
    std::uint64_t integer_ = 0;
    std::uint64_t rep_ = 0;
    std::uint64_t offset_ = 0;
    std::uint64_t reps_ = 0;
    std::vector<Digit> digits_;
    std::vector<std::uint64_t> reps_by_length_;
    std::vector<bool> reps_known_;
};

/// open_stream: a cursor positioned before the first digit.
inline StreamCursor open_stream(const XiSpec& spec) { return StreamCursor(spec); }

}  // namespace cenormal
