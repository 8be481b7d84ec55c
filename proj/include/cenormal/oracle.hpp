#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cenormal/bigint.hpp"
#include "cenormal/sequences.hpp"

namespace cenormal {

/// Closed forms for the digit counts of xi_{N,b,c} at the end of the block of
/// 2b^{k-1}-1. All logarithms in this module are natural logarithms.
struct OracleParams {
    OracleParams(std::uint32_t base, Rational multiplier, unsigned k);

    std::uint32_t b;
    Rational c;
    unsigned k;
};

/// 0 when c is an integer, 1 otherwise. Only the asymptotic error terms depend on it.
int delta_c(const Rational& c);

/// floor(c^k) k b^{k-1} + sum_{n<k} floor(c^n) n b^{n-1} (b-1), exactly.
BigInt d_exact(const OracleParams& p);

/// Leading term (cb+b-2)/(b(cb-1)) * k (cb)^k.
double d_leading(const OracleParams& p);

/// Exact number of 1s in the first d_exact(p) digits of xi_{N,b,c}: leading 1s
/// plus the (exactly uniform) non-leading 1s of each length class.
BigInt ones_exact_champernowne(const OracleParams& p);

/// (cb)^k ((b-1)/b^2 + 1/(b^2 (cb-1))), the leading excess of 1s over d/b.
double ones_excess_leading(const OracleParams& p);

/// Most 1s the members of A can remove from the first d_exact(p) digits:
/// every removed integer of length n counted as floor(c^n) n ones.
BigInt comparison_deficit(const SequenceSpec& removed, const OracleParams& p,
                          std::uint64_t cap = kDefaultCountingCap);

/// (1 - 1/b + 1/(b(bc-1))) ln(b)/2.
double alpha_threshold(std::uint32_t b, const Rational& c);

/// (cb)^k/b^2 (b - 1 + 1/(cb-1) - alpha 2b/ln b): lower bound on the excess of
/// 1s in xi_{N\A,b,c} when A(x) <= alpha x/ln x. Error term omitted.
double excess_lower_bound(const OracleParams& p, double alpha);

struct HypothesisRow {
    std::uint64_t x;
    std::uint64_t count;  // A(x)
    double ratio;         // A(x) ln(x) / x
    bool holds;           // ratio <= threshold
};

struct HypothesisReport {
    SequenceSpec spec;
    std::uint32_t b;
    Rational c;
    double threshold;
    std::vector<HypothesisRow> rows;
};

/// Samples A(x) ln x / x against alpha_threshold(b, c). Diagnostic only: a
/// finite table says nothing about "for large enough x".
HypothesisReport hypothesis_report(const SequenceSpec& spec, std::uint32_t b, const Rational& c,
                                   std::span<const std::uint64_t> xs,
                                   std::uint64_t cap = kDefaultCountingCap);

void write_hypothesis_report(std::ostream& out, const HypothesisReport& report);

// --- streaming cross-checks ------------------------------------------------

struct VerifyRow {
    std::uint32_t b;
    Rational c;
    unsigned k;
    BigInt d_exact;
    BigInt d_stream;
    BigInt ones_exact;
    BigInt ones_stream;

    bool match() const { return d_exact == d_stream && ones_exact == ones_stream; }
};

/// Largest k with d_exact(b, c, k) <= digit_budget, or 0 if even k = 1 exceeds it.
unsigned max_k_within(std::uint32_t b, const Rational& c, std::uint64_t digit_budget);

/// Streams xi_{N,b,c} digit by digit, recording the position and the number of
/// 1s at which all copies of 1..2b^{k-1}-1 are consumed, for k in [k_first, k_last],
/// next to the closed forms.
std::vector<VerifyRow> verify_champernowne(std::uint32_t b, const Rational& c, unsigned k_first,
                                           unsigned k_last);

/// `b,c_num,c_den,k,d_exact,d_stream,ones_exact,ones_stream,match`
void write_verify_csv(std::ostream& out, std::span<const VerifyRow> rows);

}  // namespace cenormal
