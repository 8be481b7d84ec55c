#include "cenormal/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>

#include "cenormal/errors.hpp"

namespace cenormal::primes {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr u64 kWindow = u64{1} << 16;

// Odd-only bit table with per-word prefix counts.
class PrimeTable {
public:
    u64 pi(u64 x) {
        std::lock_guard lock(mutex_);
        if (x < 2) return 0;
        if (x > limit_) grow(x);
        // odd numbers 3,5,...,x map to bits 0..(x-3)/2
        if (x < 3) return 1;
        u64 bit = (x - 3) / 2;
        u64 word = bit / 64;
        u64 mask = (bit % 64 == 63) ? ~u64{0} : ((u64{1} << (bit % 64 + 1)) - 1);
        return 1 + prefix_[word] + std::popcount(bits_[word] & mask);
    }

private:
    void grow(u64 x) {
        u64 target = std::max<u64>({x, limit_ * 2, u64{1} << 20});
        u64 nbits = (target - 1) / 2;  // odd numbers 3..target
        std::vector<u64> bits((nbits + 63) / 64, 0);
        for (u64 lo = 3; lo <= target; lo += kWindow * 4) {
            u64 hi = std::min(target + 1, lo + kWindow * 4);
            auto flags = sieve_segment(lo, hi);
            for (u64 n = lo | 1; n < hi; n += 2) {
                if (flags[n - lo]) {
                    u64 bit = (n - 3) / 2;
                    bits[bit / 64] |= u64{1} << (bit % 64);
                }
            }
        }
        std::vector<u64> prefix(bits.size() + 1, 0);
        for (std::size_t i = 0; i < bits.size(); ++i) {
            prefix[i + 1] = prefix[i] + std::popcount(bits[i]);
        }
        bits_ = std::move(bits);
        prefix_ = std::move(prefix);
        limit_ = target;
    }

    std::mutex mutex_;
    u64 limit_ = 2;
    std::vector<u64> bits_;
    std::vector<u64> prefix_{0};
};

PrimeTable& table() {
    static PrimeTable instance;
    return instance;
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    static constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kWitnesses) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : kWitnesses) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::uint8_t> sieve_segment(u64 lo, u64 hi) {
    if (hi <= lo) return {};
    std::vector<std::uint8_t> flags(hi - lo, 1);
    for (u64 n = lo; n < std::min<u64>(hi, 2); ++n) flags[n - lo] = 0;
    u64 root = isqrt(hi - 1);
    if (root > std::numeric_limits<std::uint32_t>::max()) {
        throw OverflowError("sieve segment beyond 2^64 range");
    }
    static thread_local std::vector<std::uint32_t> base;
    static thread_local u64 base_limit = 0;
    if (root > base_limit) {
        base_limit = std::max<u64>(root, base_limit * 2);
        base = primes_up_to(static_cast<std::uint32_t>(std::min<u64>(base_limit, 0xffffffffu)));
    }
    for (std::uint32_t p : base) {
        u64 pp = u64{p} * p;
        if (pp >= hi) break;
        u64 start = std::max(pp, (lo + p - 1) / p * p);
        for (u64 j = start; j < hi; j += p) flags[j - lo] = 0;
    }
    return flags;
}

u64 prime_pi(u64 x) {
    return table().pi(x);
}

PrimeWalker::PrimeWalker(u64 after) : window_lo_(after + 1) {
    window_ = sieve_segment(window_lo_, window_lo_ + kWindow);
}

void PrimeWalker::refill() {
    window_lo_ += window_.size();
    window_ = sieve_segment(window_lo_, window_lo_ + kWindow);
    index_ = 0;
}

u64 PrimeWalker::next() {
    for (;;) {
        while (index_ < window_.size()) {
            if (window_[index_]) return window_lo_ + index_++;
            ++index_;
        }
        refill();
    }
}

}  // namespace cenormal::primes
