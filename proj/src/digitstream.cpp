#include "cenormal/digitstream.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "cenormal/errors.hpp"

namespace cenormal {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kU64Max = std::numeric_limits<u64>::max();

u64 parse_u64(std::string_view text, std::string_view what) {
    u64 value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

XiSpec::XiSpec(SequenceSpec seq, std::uint32_t b, Rational c)
    : sequence(std::move(seq)), base(b), multiplier(std::move(c)) {
    if (base < 2 || base > kMaxBase) {
        throw DomainError("base must lie in [2, " + std::to_string(kMaxBase) + "], got " +
                          std::to_string(base));
    }
    if (multiplier < 1) throw DomainError("multiplier c must be >= 1, got " + cenormal::to_string(multiplier));
}

std::string XiSpec::to_string() const {
    return sequence.to_string() + "|b=" + std::to_string(base) + "|c=" + cenormal::to_string(multiplier);
}

XiSpec XiSpec::parse(std::string_view text) {
    auto c_sep = text.rfind("|c=");
    auto b_sep = text.rfind("|b=", c_sep);
    if (c_sep == std::string_view::npos || b_sep == std::string_view::npos) {
        throw ParseError("invalid xi spec '" + std::string(text) + "'");
    }
    auto seq = SequenceSpec::parse(text.substr(0, b_sep));
    u64 base = parse_u64(text.substr(b_sep + 3, c_sep - b_sep - 3), "base");
    if (base > kMaxBase) throw ParseError("base out of range: " + std::to_string(base));
    auto c = parse_rational(text.substr(c_sep + 3));
    try {
        return XiSpec(std::move(seq), static_cast<std::uint32_t>(base), std::move(c));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

std::vector<Digit> to_digits(u64 n, std::uint32_t base) {
    if (n == 0) throw DomainError("to_digits requires n >= 1");
    if (base < 2) throw DomainError("base must be >= 2");
    std::vector<Digit> out;
    while (n != 0) {
        out.push_back(static_cast<Digit>(n % base));
        n /= base;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

unsigned digit_length(u64 n, std::uint32_t base) {
    if (n == 0) throw DomainError("digit_length requires n >= 1");
    if (base < 2) throw DomainError("base must be >= 2");
    unsigned len = 0;
    for (; n != 0; n /= base) ++len;
    return len;
}

BigInt repetitions(u64 n, std::uint32_t base, const Rational& c) {
    if (c < 1) throw DomainError("multiplier c must be >= 1");
    return floor_pow(c, digit_length(n, base));
}

// ---------------------------------------------------------------------------

StreamCursor::StreamCursor(XiSpec spec) : spec_(std::move(spec)), members_(spec_.sequence) {}

StreamCursor::StreamCursor(XiSpec spec, const State& state)
    : spec_(std::move(spec)), members_(spec_.sequence, state.integer) {
    position_ = state.position;
    if (state.integer == 0) {
        if (state.rep != 0 || state.offset != 0) throw DomainError("cursor state before the first member must have rep=0 offset=0");
        return;
    }
    if (!is_member(spec_.sequence, state.integer)) {
        throw DomainError("cursor integer " + std::to_string(state.integer) + " is not a member of " +
                          spec_.sequence.to_string());
    }
    load(state.integer);
    if (state.rep > reps_ || state.offset >= digits_.size() || (state.rep == reps_ && state.offset != 0)) {
        throw DomainError("cursor repetition/offset out of range for integer " + std::to_string(state.integer));
    }
    rep_ = state.rep;
    offset_ = state.offset;
}

u64 StreamCursor::reps_for_length(unsigned length) {
    if (reps_by_length_.size() <= length) {
        reps_by_length_.resize(length + 1, 0);
        reps_known_.resize(length + 1, false);
    }
    if (!reps_known_[length]) {
        reps_by_length_[length] = to_u64(floor_pow(spec_.multiplier, length), "repetition count");
        reps_known_[length] = true;
    }
    return reps_by_length_[length];
}

void StreamCursor::load(u64 integer) {
    digits_ = to_digits(integer, spec_.base);
    reps_ = reps_for_length(static_cast<unsigned>(digits_.size()));
    integer_ = integer;
    rep_ = 0;
    offset_ = 0;
}

void StreamCursor::ensure_block() {
    if (integer_ == 0 || rep_ == reps_) load(members_.next());
}

u64 StreamCursor::current_integer() {
    ensure_block();
    return integer_;
}

Digit StreamCursor::next_digit() {
    if (position_ == kU64Max) throw OverflowError("stream position beyond 64-bit range");
    ensure_block();
    Digit d = digits_[offset_];
    if (++offset_ == digits_.size()) {
        offset_ = 0;
        ++rep_;
    }
    ++position_;
    return d;
}

void StreamCursor::read(std::span<Digit> out) {
    for (auto& d : out) d = next_digit();
}

// Whole-integer jumps through ξ_{N,b,c}: every integer of length L costs
// L*floor(c^L) digits, so a run of them can be skipped arithmetically.
void StreamCursor::jump_naturals(u64& remaining) {
    u64 start = integer_;
    for (;;) {
        if (integer_ == kU64Max) break;
        unsigned len = digit_length(integer_ + 1, spec_.base);
        u128 cost = static_cast<u128>(len) * reps_for_length(len);
        // largest integer of this length, capped at 2^64-1
        u128 class_end = 1;
        for (unsigned i = 0; i < len && class_end <= kU64Max; ++i) class_end *= spec_.base;
        class_end = std::min<u128>(class_end - 1, kU64Max);
        u128 count = std::min<u128>(class_end - integer_, remaining / cost);
        if (count == 0) break;
        integer_ += static_cast<u64>(count);
        remaining -= static_cast<u64>(count * cost);
        position_ += static_cast<u64>(count * cost);
        if (integer_ != class_end) break;
    }
    if (integer_ != start) {
        load(integer_);
        rep_ = reps_;
        members_ = MemberCursor(spec_.sequence, integer_);
    }
}

void StreamCursor::skip_to(u64 n) {
    if (n < position_) {
        throw DomainError("skip_to target " + std::to_string(n) + " is behind position " +
                          std::to_string(position_));
    }
    u64 remaining = n - position_;
    const bool naturals = spec_.sequence.kind() == SequenceSpec::Kind::naturals;
    while (remaining > 0) {
        if (naturals && (integer_ == 0 || rep_ == reps_)) {
            jump_naturals(remaining);
            if (remaining == 0) break;
        }
        ensure_block();
        const u64 len = digits_.size();
        if (offset_ > 0) {
            u64 take = std::min(remaining, len - offset_);
            offset_ += take;
            remaining -= take;
            position_ += take;
            if (offset_ == len) {
                offset_ = 0;
                ++rep_;
            }
            continue;
        }
        u64 full = std::min(reps_ - rep_, remaining / len);
        rep_ += full;
        remaining -= full * len;
        position_ += full * len;
        if (remaining > 0 && rep_ < reps_) {
            offset_ = remaining;  // remaining < len here
            position_ += remaining;
            remaining = 0;
        }
    }
}

void StreamCursor::tally(u64 n, std::span<u64> counts) {
    if (counts.size() < spec_.base) throw DomainError("tally needs one counter per digit value");
    if (n > kU64Max - position_) throw OverflowError("stream position beyond 64-bit range");
    u64 remaining = n;
    while (remaining > 0) {
        ensure_block();
        const u64 len = digits_.size();
        if (offset_ > 0 || remaining < len) {
            u64 take = std::min(remaining, len - offset_);
            for (u64 i = offset_; i < offset_ + take; ++i) ++counts[digits_[i]];
            offset_ += take;
            remaining -= take;
            position_ += take;
            if (offset_ == len) {
                offset_ = 0;
                ++rep_;
            }
            continue;
        }
        u64 full = std::min(reps_ - rep_, remaining / len);
        for (Digit d : digits_) counts[d] += full;
        rep_ += full;
        remaining -= full * len;
        position_ += full * len;
    }
}

std::string StreamCursor::checkpoint() const {
    return "position=" + std::to_string(position_) + " integer=" + std::to_string(integer_) +
           " rep=" + std::to_string(rep_) + " offset=" + std::to_string(offset_) +
           " spec=" + spec_.to_string();
}

StreamCursor StreamCursor::from_checkpoint(std::string_view record) {
    while (!record.empty() && (record.back() == '\n' || record.back() == '\r')) record.remove_suffix(1);
    static constexpr std::string_view kKeys[] = {"position=", "integer=", "rep=", "offset=", "spec="};
    std::string_view fields[5];
    std::string_view rest = record;
    for (int i = 0; i < 5; ++i) {
        if (rest.substr(0, kKeys[i].size()) != kKeys[i]) {
            throw ParseError("checkpoint field " + std::to_string(i + 1) + " must start with '" +
                             std::string(kKeys[i]) + "'");
        }
        rest.remove_prefix(kKeys[i].size());
        auto space = (i < 4) ? rest.find(' ') : std::string_view::npos;
        if (i < 4 && space == std::string_view::npos) throw ParseError("truncated checkpoint record");
        fields[i] = rest.substr(0, space);
        if (i < 4) rest.remove_prefix(space + 1);
    }
    State state{parse_u64(fields[0], "position"), parse_u64(fields[1], "integer"),
                parse_u64(fields[2], "rep"), parse_u64(fields[3], "offset")};
    XiSpec spec = XiSpec::parse(fields[4]);
    if (spec.to_string() != fields[4]) {
        throw ParseError("checkpoint spec is not canonical: '" + std::string(fields[4]) + "'");
    }
    try {
        return StreamCursor(std::move(spec), state);
    } catch (const DomainError& e) {
        throw ParseError(std::string("inconsistent checkpoint: ") + e.what());
    }
}

}  // namespace cenormal
