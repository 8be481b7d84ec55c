#include "cenormal/oracle.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "cenormal/digitstream.hpp"
#include "cenormal/errors.hpp"
#include "cenormal/stats.hpp"

namespace cenormal {

namespace {

using u64 = std::uint64_t;

BigInt big_pow(std::uint32_t b, unsigned e) {
    return boost::multiprecision::pow(BigInt(b), e);
}

// b^e as a 64-bit value, for sieve arguments.
u64 u64_pow(std::uint32_t b, unsigned e) {
    return to_u64(big_pow(b, e), "b^k");
}

}  // namespace

OracleParams::OracleParams(std::uint32_t base, Rational multiplier, unsigned k_)
    : b(base), c(std::move(multiplier)), k(k_) {
    if (b < 2) throw DomainError("base must be >= 2");
    if (c < 1) throw DomainError("multiplier c must be >= 1");
    if (k < 1) throw DomainError("k must be >= 1");
}

int delta_c(const Rational& c) { return is_integral(c) ? 0 : 1; }

BigInt d_exact(const OracleParams& p) {
    BigInt total = floor_pow(p.c, p.k) * p.k * big_pow(p.b, p.k - 1);
    for (unsigned n = 1; n < p.k; ++n) {
        total += floor_pow(p.c, n) * n * big_pow(p.b, n - 1) * (p.b - 1);
    }
    return total;
}

double d_leading(const OracleParams& p) {
    long double cb = static_cast<long double>(to_double(p.c)) * p.b;
    long double coeff = (cb + p.b - 2) / (p.b * (cb - 1));
    return static_cast<double>(coeff * p.k * std::pow(cb, static_cast<long double>(p.k)));
}

BigInt ones_exact_champernowne(const OracleParams& p) {
    const Rational b(p.b);
    Rational total = 0;
    for (unsigned n = 1; n < p.k; ++n) {
        Rational per_copy = Rational(n - 1) * Rational(big_pow(p.b, n - 1)) * (b - 1) / b  // non-leading
                            + Rational(big_pow(p.b, n - 1));                             // leading
        total += Rational(floor_pow(p.c, n)) * per_copy;
    }
    // only [b^{k-1}, 2b^{k-1}-1] from length k: leading digit is always 1
    Rational last = Rational(p.k - 1) * Rational(big_pow(p.b, p.k - 1)) / b + Rational(big_pow(p.b, p.k - 1));
    total += Rational(floor_pow(p.c, p.k)) * last;
    if (!is_integral(total)) throw Error("ones count is not an integer: " + to_string(total));
    return boost::multiprecision::numerator(total);
}

double ones_excess_leading(const OracleParams& p) {
    long double b = p.b;
    long double cb = static_cast<long double>(to_double(p.c)) * b;
    return static_cast<double>(std::pow(cb, static_cast<long double>(p.k)) *
                               ((b - 1) / (b * b) + 1 / (b * b * (cb - 1))));
}

BigInt comparison_deficit(const SequenceSpec& removed, const OracleParams& p, u64 cap) {
    auto count = [&](u64 x) { return BigInt(counting_function(removed, x, cap)); };
    const u64 top = u64_pow(p.b, p.k - 1);
    if (top > (std::numeric_limits<u64>::max() - 1) / 2 + 1) throw OverflowError("2b^{k-1} beyond 64-bit range");
    BigInt total = floor_pow(p.c, p.k) * p.k * (count(2 * top - 1) - count(top - 1));
    for (unsigned n = 1; n < p.k; ++n) {
        total += floor_pow(p.c, n) * n * (count(u64_pow(p.b, n) - 1) - count(u64_pow(p.b, n - 1) - 1));
    }
    return total;
}

double alpha_threshold(std::uint32_t b, const Rational& c) {
    if (b < 2) throw DomainError("base must be >= 2");
    if (c < 1) throw DomainError("multiplier c must be >= 1");
    double bd = b;
    double bc = bd * to_double(c);
    return (1.0 - 1.0 / bd + 1.0 / (bd * (bc - 1.0))) * std::log(bd) / 2.0;
}

double excess_lower_bound(const OracleParams& p, double alpha) {
    long double b = p.b;
    long double cb = static_cast<long double>(to_double(p.c)) * b;
    long double bracket = b - 1 + 1 / (cb - 1) - alpha * 2 * b / std::log(b);
    return static_cast<double>(std::pow(cb, static_cast<long double>(p.k)) / (b * b) * bracket);
}

HypothesisReport hypothesis_report(const SequenceSpec& spec, std::uint32_t b, const Rational& c,
                                   std::span<const u64> xs, u64 cap) {
    HypothesisReport report{spec, b, c, alpha_threshold(b, c), {}};
    for (u64 x : xs) {
        if (x < 2) throw DomainError("sample points must be >= 2");
        u64 a = counting_function(spec, x, cap);
        double ratio = static_cast<double>(a) * std::log(static_cast<double>(x)) / static_cast<double>(x);
        report.rows.push_back({x, a, ratio, ratio <= report.threshold});
    }
    return report;
}

void write_hypothesis_report(std::ostream& out, const HypothesisReport& report) {
    out << "alpha threshold (b=" << report.b << ", c=" << to_string(report.c)
        << "): " << std::setprecision(10) << report.threshold << '\n'
        << "A = " << report.spec.to_string() << "  (log is the natural logarithm)\n"
        << std::setw(14) << "x" << std::setw(14) << "A(x)" << std::setw(16) << "A(x)ln(x)/x"
        << std::setw(14) << "<= alpha" << '\n';
    for (const auto& row : report.rows) {
        out << std::setw(14) << row.x << std::setw(14) << row.count << std::setw(16) << std::fixed
            << std::setprecision(6) << row.ratio << std::setw(14) << (row.holds ? "yes" : "no") << '\n'
            << std::defaultfloat;
    }
    out << "note: A(x) <= alpha x/ln x is required only for large enough x; these samples are\n"
           "      diagnostic and do not decide the asymptotic inequality.\n";
    if (report.spec.kind() == SequenceSpec::Kind::primes) {
        double t = report.threshold;
        if (t <= 1.0) {
            out << "note: for the primes A(x) ln x / x tends to 1 from above, which exceeds this\n"
                   "      threshold; the inequality never holds for large x.\n";
        } else {
            // pi(x) ln x / x ~ 1 + 1/L + 2/L^2 with L = ln x; solve for the crossover.
            double e = t - 1.0;
            double L = (1.0 + std::sqrt(1.0 + 8.0 * e)) / (2.0 * e);
            out << "note: for the primes the ratio decreases towards 1 only like 1 + 1/ln x; it is\n"
                   "      estimated to fall below this threshold near x ~ "
                << std::scientific << std::setprecision(1) << std::exp(L) << std::defaultfloat
                << " (ln x ~ " << std::fixed << std::setprecision(1) << L << std::defaultfloat
                << "),\n      so the inequality is not decidable at desk scale.\n";
        }
    }
}

unsigned max_k_within(std::uint32_t b, const Rational& c, u64 digit_budget) {
    unsigned k = 0;
    while (d_exact(OracleParams(b, c, k + 1)) <= digit_budget) ++k;
    return k;
}

std::vector<VerifyRow> verify_champernowne(std::uint32_t b, const Rational& c, unsigned k_first,
                                           unsigned k_last) {
    std::vector<VerifyRow> rows;
    if (k_first < 1) k_first = 1;
    StreamCursor cursor(XiSpec(SequenceSpec::naturals(), b, c));
    u64 ones = 0;
    for (unsigned k = 1; k <= k_last; ++k) {
        const u64 boundary = 2 * u64_pow(b, k - 1) - 1;
        while (cursor.current_integer() <= boundary) {
            if (cursor.next_digit() == 1) ++ones;
        }
        if (k < k_first) continue;
        OracleParams p(b, c, k);
        rows.push_back({b, c, k, d_exact(p), BigInt(cursor.position()), ones_exact_champernowne(p), BigInt(ones)});
    }
    return rows;
}

void write_verify_csv(std::ostream& out, std::span<const VerifyRow> rows) {
    out << "b,c_num,c_den,k,d_exact,d_stream,ones_exact,ones_stream,match\n";
    for (const auto& r : rows) {
        out << r.b << ',' << boost::multiprecision::numerator(r.c) << ','
            << boost::multiprecision::denominator(r.c) << ',' << r.k << ',' << r.d_exact << ','
            << r.d_stream << ',' << r.ones_exact << ',' << r.ones_stream << ','
            << (r.match() ? "true" : "false") << '\n';
    }
}

}  // namespace cenormal
