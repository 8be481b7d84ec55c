#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "brute_force.hpp"
#include "cenormal/errors.hpp"
#include "cenormal/oracle.hpp"
#include "cenormal/stats.hpp"

using namespace cenormal;

namespace {

struct Grid {
    std::uint32_t b;
    std::uint64_t num;
    std::uint64_t den;
};

const Grid kGrid[] = {
    {2, 1, 1}, {2, 3, 2}, {2, 2, 1}, {3, 1, 1}, {3, 3, 2}, {3, 2, 1},
    {5, 7, 3}, {10, 1, 1}, {10, 3, 2}, {10, 2, 1}, {16, 5, 4},
};

std::uint64_t block_end(std::uint32_t b, unsigned k) {
    std::uint64_t p = 1;
    for (unsigned i = 1; i < k; ++i) p *= b;
    return 2 * p - 1;
}

}  // namespace

TEST_CASE("d_exact examples") {
    CHECK(brute::champernowne_totals(2, 1, 1, 7).digits == 17);
    CHECK(d_exact(OracleParams(2, 1, 3)) == 17);
    for (std::uint32_t b : {2u, 3u, 10u, 1000u}) CHECK(d_exact(OracleParams(b, 1, 1)) == 1);
    CHECK(brute::champernowne_totals(10, 1, 1, 19).digits == 29);
    CHECK(d_exact(OracleParams(10, 1, 2)) == 29);
}

TEST_CASE("d_exact and ones_exact_champernowne against enumeration") {
    for (const auto& g : kGrid) {
        Rational c(g.num, g.den);
        for (unsigned k = 1; block_end(g.b, k) <= 300'000; ++k) {
            CAPTURE(g.b);
            CAPTURE(k);
            auto totals = brute::champernowne_totals(static_cast<int>(g.b), g.num, g.den, block_end(g.b, k));
            OracleParams p(g.b, c, k);
            CHECK(d_exact(p) == totals.digits);
            CHECK(ones_exact_champernowne(p) == totals.ones);
        }
    }
}

TEST_CASE("ones_exact_champernowne examples") {
    CHECK(ones_exact_champernowne(OracleParams(2, 1, 3)) == 12);
    CHECK(ones_exact_champernowne(OracleParams(10, 1, 1)) == 1);
    CHECK(ones_exact_champernowne(OracleParams(2, 1, 1)) == 1);
}

TEST_CASE("d_leading") {
    CHECK(d_leading(OracleParams(2, 1, 10)) == doctest::Approx(10240.0).epsilon(1e-14));
    CHECK(d_leading(OracleParams(10, 1, 2)) == doctest::Approx(40.0).epsilon(1e-14));
    // d_exact/d_leading -> 1; with b=2, c=1 the gap is exactly 1/k - 1/(k 2^k)
    double fitted = 0;
    for (unsigned k = 5; k <= 40; ++k) {
        OracleParams p(2, 1, k);
        double ratio = d_exact(p).convert_to<double>() / d_leading(p);
        fitted = std::max(fitted, k * std::abs(ratio - 1));
        CHECK(std::abs(ratio - 1) == doctest::Approx(1.0 / k - 1.0 / (k * std::pow(2.0, k))).epsilon(1e-9));
    }
    CHECK(fitted < 1.0);
    for (const auto& g : kGrid) {
        Rational c(g.num, g.den);
        double prev = 1e9;
        for (unsigned k = 8; k <= 40; k += 8) {
            OracleParams p(g.b, c, k);
            double gap = std::abs(d_exact(p).convert_to<double>() / d_leading(p) - 1);
            CHECK(gap < prev);
            prev = gap;
        }
    }
}

TEST_CASE("ones_excess_leading") {
    CHECK(ones_excess_leading(OracleParams(2, 1, 3)) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(ones_excess_leading(OracleParams(10, 1, 2)) == doctest::Approx(100 * (9.0 / 100 + 1.0 / 900)).epsilon(1e-14));
    for (const auto& g : kGrid) {
        for (unsigned k = 1; k < 20; ++k) CHECK(ones_excess_leading(OracleParams(g.b, Rational(g.num, g.den), k)) > 0);
    }
    // the exact excess approaches the leading term for integer c
    for (unsigned k = 10; k <= 30; k += 5) {
        OracleParams p(2, 1, k);
        Rational excess = Rational(ones_exact_champernowne(p)) - Rational(d_exact(p), BigInt(2));
        CHECK(to_double(excess) / ones_excess_leading(p) == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("comparison_deficit") {
    CHECK(comparison_deficit(SequenceSpec::explicit_list({}), OracleParams(10, 1, 4)) == 0);
    CHECK(comparison_deficit(SequenceSpec::explicit_list({1}), OracleParams(2, 1, 3)) == 1);
    std::uint64_t pi9 = 0;
    std::uint64_t pi19 = 0;
    for (std::uint64_t n = 1; n <= 19; ++n) {
        if (brute::is_prime(n)) (n <= 9 ? pi9 : pi19) += 1;
    }
    pi19 += pi9;
    CHECK(pi9 == 4);
    CHECK(pi19 == 8);
    CHECK(comparison_deficit(SequenceSpec::primes(), OracleParams(10, 1, 2)) == 1 * 1 * pi9 + 1 * 2 * (pi19 - pi9));

    // weighted enumeration of the removed members
    const char* removed[] = {"primes", "poly:0,0,1", "composites", "explicit:1,7,100"};
    for (const char* r : removed) {
        auto spec = SequenceSpec::parse(r);
        for (const auto& g : kGrid) {
            for (unsigned k = 1; block_end(g.b, k) <= 100'000; ++k) {
                std::uint64_t expected = 0;
                for (std::uint64_t a = 1; a <= block_end(g.b, k); ++a) {
                    if (!is_member(spec, a)) continue;
                    auto len = static_cast<unsigned>(brute::digits(a, static_cast<int>(g.b)).size());
                    expected += brute::floor_pow(g.num, g.den, len) * len;
                }
                CHECK(comparison_deficit(spec, OracleParams(g.b, Rational(g.num, g.den), k)) == expected);
            }
        }
    }
    CHECK_THROWS_AS(comparison_deficit(SequenceSpec::primes(), OracleParams(10, 1, 6), 100'000), CapExceeded);
}

TEST_CASE("removing members costs at most the comparison deficit") {
    struct Removed {
        const char* spec;
        bool (*member)(std::uint64_t);
    };
    const Removed removed[] = {
        {"primes", brute::is_prime},
        {"explicit:1", [](std::uint64_t n) { return n == 1; }},
        {"poly:0,0,1", brute::is_square},
    };
    for (const auto& r : removed) {
        auto spec = SequenceSpec::parse(r.spec);
        auto complement = SequenceSpec::complement(spec);
        for (const auto& g : kGrid) {
            for (unsigned k = 1; d_exact(OracleParams(g.b, Rational(g.num, g.den), k)) <= 200'000; ++k) {
                OracleParams p(g.b, Rational(g.num, g.den), k);
                auto d = d_exact(p).convert_to<std::size_t>();
                auto digits = brute::xi_prefix([&](std::uint64_t n) { return !r.member(n); },
                                               static_cast<int>(g.b), g.num, g.den, d);
                BigInt measured = std::count(digits.begin(), digits.end(), 1u);
                CHECK(measured >= ones_exact_champernowne(p) - comparison_deficit(spec, p));
                // same count through the library stream
                StreamCursor cursor(XiSpec(complement, g.b, p.c));
                DigitCounter counter(g.b);
                counter.consume(cursor, d);
                CHECK(BigInt(counter.count(1)) == measured);
            }
        }
    }
}

TEST_CASE("alpha_threshold") {
    CHECK(alpha_threshold(10, 1) == doctest::Approx((0.9 + 1.0 / 90) * std::log(10.0) / 2).epsilon(1e-14));
    CHECK(std::abs(alpha_threshold(10, 1) - 1.0490) < 1e-4);
    CHECK(std::abs(alpha_threshold(2, 1) - std::log(2.0) / 2) < 1e-12);
    for (std::uint32_t b : {2u, 3u, 10u}) {
        double prev = alpha_threshold(b, 1);
        for (int step = 1; step < 10; ++step) {
            double next = alpha_threshold(b, Rational(4 + step, 4));
            CHECK(next < prev);
            prev = next;
        }
    }
}

TEST_CASE("hypothesis_report") {
    std::vector<std::uint64_t> xs{1'000'000, 10'000'000};
    auto report = hypothesis_report(SequenceSpec::primes(), 10, 1, xs);
    CHECK(report.threshold == alpha_threshold(10, 1));
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].count == 78498);
    CHECK(report.rows[1].count == 664579);
    CHECK(std::abs(report.rows[0].ratio - 1.0845) < 1e-3);
    CHECK(std::abs(report.rows[1].ratio - 1.0712) < 1e-3);
    CHECK_FALSE(report.rows[0].holds);

    auto none = hypothesis_report(SequenceSpec::explicit_list({}), 10, 1, xs);
    for (const auto& row : none.rows) {
        CHECK(row.ratio == 0.0);
        CHECK(row.holds);
    }

    std::vector<std::uint64_t> too_small{1};
    CHECK_THROWS_AS(hypothesis_report(SequenceSpec::primes(), 10, 1, too_small), DomainError);
    std::vector<std::uint64_t> too_big{1'000'000'000};
    CHECK_THROWS_AS(hypothesis_report(SequenceSpec::primes(), 10, 1, too_big), CapExceeded);

    std::ostringstream text;
    write_hypothesis_report(text, report);
    CHECK(text.str().find("natural logarithm") != std::string::npos);
    CHECK(text.str().find("not decidable") != std::string::npos);
}

TEST_CASE("excess_lower_bound") {
    for (const auto& g : kGrid) {
        for (unsigned k = 1; k < 15; ++k) {
            OracleParams p(g.b, Rational(g.num, g.den), k);
            CHECK(excess_lower_bound(p, 0.0) == doctest::Approx(ones_excess_leading(p)).epsilon(1e-12));
        }
    }
    double direct = 100.0 / 100.0 * (9 + 1.0 / 9 - 2.0 * 10 / std::log(10.0));
    CHECK(excess_lower_bound(OracleParams(10, 1, 2), 1.0) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(excess_lower_bound(OracleParams(10, 1, 2), 1.0) == doctest::Approx(0.4252).epsilon(1e-3));
    for (const auto& g : kGrid) {
        Rational c(g.num, g.den);
        double t = alpha_threshold(g.b, c);
        OracleParams p(g.b, c, 6);
        CHECK(excess_lower_bound(p, t * 0.999) > 0);
        CHECK(excess_lower_bound(p, t * 1.001) < 0);
    }
}

TEST_CASE("delta_c and parameter validation") {
    CHECK(delta_c(1) == 0);
    CHECK(delta_c(2) == 0);
    CHECK(delta_c(Rational(3, 2)) == 1);
    CHECK_THROWS_AS(OracleParams(1, 1, 3), DomainError);
    CHECK_THROWS_AS(OracleParams(2, Rational(1, 2), 3), DomainError);
    CHECK_THROWS_AS(OracleParams(2, 1, 0), DomainError);
}

TEST_CASE("verify_champernowne rows and CSV") {
    auto rows = verify_champernowne(2, 1, 1, 10);
    REQUIRE(rows.size() == 10);
    for (const auto& r : rows) CHECK(r.match());
    CHECK(rows[2].d_exact == 17);
    CHECK(rows[2].ones_exact == 12);
    CHECK(max_k_within(2, 1, 17) == 3);
    CHECK(max_k_within(2, 1, 16) == 2);
    CHECK(max_k_within(10, 2, 1) == 0);

    std::ostringstream csv;
    write_verify_csv(csv, std::span(rows).subspan(2, 1));
    CHECK(csv.str() == "b,c_num,c_den,k,d_exact,d_stream,ones_exact,ones_stream,match\n2,1,1,3,17,17,12,12,true\n");
}
