#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cenormal/bigint.hpp"
#include "cenormal/digitstream.hpp"

namespace cenormal {

/// Occurrences m_{k,b}(xi; n) of every digit k over a prefix of length n.
class DigitCounter {
public:
    explicit DigitCounter(std::uint32_t base);

    /// Throws DomainError if digit >= base.
    void accumulate(Digit digit);

    /// Consumes the next n digits of a cursor.
    void consume(StreamCursor& cursor, std::uint64_t n);

    std::uint32_t base() const { return base_; }
    std::uint64_t total() const { return total_; }
    std::uint64_t count(Digit digit) const { return counts_.at(digit); }
    std::span<const std::uint64_t> counts() const { return counts_; }

    friend bool operator==(const DigitCounter&, const DigitCounter&) = default;

private:
    friend DigitCounter merge(const DigitCounter& a, const DigitCounter& b);

    std::uint32_t base_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Componentwise sum; throws DomainError on base mismatch.
DigitCounter merge(const DigitCounter& a, const DigitCounter& b);

/// Counts the first n digits of xi, splitting [1, n] into `chunks` ranges that
/// are counted on separate threads by independent cursors and then merged.
DigitCounter count_prefix(const XiSpec& spec, std::uint64_t n, unsigned chunks = 1);

/// Exact count - n/b.
Rational discrepancy(std::uint64_t count, std::uint64_t n, std::uint32_t base);

/// (count - n/b) / sqrt(2 n ln ln n). Throws UndefinedStatistic for n < 16.
double lil_statistic(std::uint64_t count, std::uint64_t n, std::uint32_t base);

/// sqrt(b-1)/b, the limsup required of every digit for simple strong normality.
double lil_bound(std::uint32_t base);

/// Groups consecutive non-overlapping m-tuples of base-b digits, starting at
/// the cursor's current position, into base-b^m digits. A trailing partial
/// block is never produced.
class BlockStream {
public:
    BlockStream(StreamCursor& cursor, unsigned block_length);

    std::uint64_t next();
    std::uint64_t base() const { return block_base_; }

private:
    StreamCursor* cursor_;
    unsigned block_length_;
    std::uint64_t block_base_;
};

struct LilPoint {
    std::uint64_t n;
    std::uint64_t count;
    Rational discrepancy;
    double statistic;
};

struct Trajectory {
    XiSpec spec;
    Digit symbol;
    std::vector<LilPoint> points;
};

/// One streaming pass recording a LilPoint at each checkpoint. Checkpoints must
/// be strictly increasing and >= 16.
Trajectory trajectory(const XiSpec& spec, Digit symbol, std::span<const std::uint64_t> checkpoints);

/// `n,count,discrepancy_num,discrepancy_den,statistic`, LF line endings.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

/// Shortest decimal form that round-trips the double.
std::string format_real(double value);

}  // namespace cenormal
