#include "cenormal/stats.hpp"

#include <charconv>
#include <cmath>
#include <future>
#include <ostream>

#include "cenormal/errors.hpp"

namespace cenormal {

DigitCounter::DigitCounter(std::uint32_t base) : base_(base), counts_(base, 0) {
    if (base < 2) throw DomainError("base must be >= 2");
}

void DigitCounter::accumulate(Digit digit) {
    if (digit >= base_) {
        throw DomainError("digit " + std::to_string(digit) + " out of range for base " + std::to_string(base_));
    }
    ++counts_[digit];
    ++total_;
}

void DigitCounter::consume(StreamCursor& cursor, std::uint64_t n) {
    if (cursor.spec().base != base_) throw DomainError("cursor base does not match counter base");
    cursor.tally(n, counts_);
    total_ += n;
}

DigitCounter merge(const DigitCounter& a, const DigitCounter& b) {
    if (a.base_ != b.base_) {
        throw DomainError("cannot merge counters of base " + std::to_string(a.base_) + " and " +
                          std::to_string(b.base_));
    }
    DigitCounter out = a;
    for (std::size_t i = 0; i < out.counts_.size(); ++i) out.counts_[i] += b.counts_[i];
    out.total_ += b.total_;
    return out;
}

DigitCounter count_prefix(const XiSpec& spec, std::uint64_t n, unsigned chunks) {
    chunks = std::max(1u, chunks);
    if (chunks == 1) {
        DigitCounter counter(spec.base);
        StreamCursor cursor(spec);
        counter.consume(cursor, n);
        return counter;
    }
    std::vector<std::future<DigitCounter>> parts;
    for (unsigned i = 0; i < chunks; ++i) {
        std::uint64_t lo = n / chunks * i + std::min<std::uint64_t>(i, n % chunks);
        std::uint64_t hi = lo + n / chunks + (i < n % chunks ? 1 : 0);
        parts.push_back(std::async(std::launch::async, [&spec, lo, hi] {
            DigitCounter counter(spec.base);
            StreamCursor cursor(spec);
            cursor.skip_to(lo);
            counter.consume(cursor, hi - lo);
            return counter;
        }));
    }
    DigitCounter total(spec.base);
    for (auto& part : parts) total = merge(total, part.get());
    return total;
}

Rational discrepancy(std::uint64_t count, std::uint64_t n, std::uint32_t base) {
    return Rational(BigInt(count)) - Rational(BigInt(n), BigInt(base));
}

double lil_statistic(std::uint64_t count, std::uint64_t n, std::uint32_t base) {
    if (n < 16) {
        throw UndefinedStatistic("LIL statistic needs n >= 16 (ln ln n > 0), got n = " + std::to_string(n));
    }
    // b*count - n is exact in 128 bits; only the final division is inexact.
    __int128 scaled = static_cast<__int128>(count) * base - static_cast<__int128>(n);
    long double ln = std::log(static_cast<long double>(n));
    long double denom = std::sqrt(2.0L * static_cast<long double>(n) * std::log(ln));
    return static_cast<double>(static_cast<long double>(scaled) / base / denom);
}

double lil_bound(std::uint32_t base) {
    if (base < 2) throw DomainError("base must be >= 2");
    return std::sqrt(static_cast<double>(base - 1)) / base;
}

BlockStream::BlockStream(StreamCursor& cursor, unsigned block_length)
    : cursor_(&cursor), block_length_(block_length), block_base_(1) {
    if (block_length == 0) throw DomainError("block length must be >= 1");
    for (unsigned i = 0; i < block_length; ++i) {
        if (__builtin_mul_overflow(block_base_, cursor.spec().base, &block_base_)) {
            throw OverflowError("b^m does not fit in 64 bits");
        }
    }
}

std::uint64_t BlockStream::next() {
    std::uint64_t value = 0;
    for (unsigned i = 0; i < block_length_; ++i) value = value * cursor_->spec().base + cursor_->next_digit();
    return value;
}

Trajectory trajectory(const XiSpec& spec, Digit symbol, std::span<const std::uint64_t> checkpoints) {
    if (symbol >= spec.base) throw DomainError("symbol must be < base");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 16) throw UndefinedStatistic("checkpoints must be >= 16");
        if (i && checkpoints[i] <= checkpoints[i - 1]) throw DomainError("checkpoints must be strictly increasing");
    }
    Trajectory out{spec, symbol, {}};
    DigitCounter counter(spec.base);
    StreamCursor cursor(spec);
    for (std::uint64_t n : checkpoints) {
        counter.consume(cursor, n - counter.total());
        std::uint64_t m = counter.count(symbol);
        out.points.push_back({n, m, discrepancy(m, n, spec.base), lil_statistic(m, n, spec.base)});
    }
    return out;
}

std::string format_real(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
    out << "n,count,discrepancy_num,discrepancy_den,statistic\n";
    for (const auto& p : t.points) {
        out << p.n << ',' << p.count << ',' << boost::multiprecision::numerator(p.discrepancy) << ','
            << boost::multiprecision::denominator(p.discrepancy) << ',' << format_real(p.statistic) << '\n';
    }
}

}  // namespace cenormal
