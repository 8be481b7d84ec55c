#include "cenormal/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cenormal/digitstream.hpp"
#include "cenormal/errors.hpp"
#include "cenormal/oracle.hpp"
#include "cenormal/stats.hpp"

namespace cenormal::cli {

namespace {

using u64 = std::uint64_t;

// Bad flag values; reported with exit code 2.
struct UsageError : Error {
    using Error::Error;
};

u64 parse_count(std::string_view text) {
    auto fail = [&] { return UsageError("invalid count '" + std::string(text) + "'"); };
    auto digits = [&](std::string_view s) {
        u64 v = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) throw fail();
        return v;
    };
    auto power = [&](u64 mantissa, u64 base, u64 exponent) {
        u64 v = mantissa;
        for (u64 i = 0; i < exponent; ++i) {
            if (__builtin_mul_overflow(v, base, &v)) throw fail();
        }
        return v;
    };
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        return power(digits(text.substr(0, e)), 10, digits(text.substr(e + 1)));
    }
    if (auto caret = text.find('^'); caret != std::string_view::npos) {
        return power(1, digits(text.substr(0, caret)), digits(text.substr(caret + 1)));
    }
    return digits(text);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    if (text.empty()) return out;
    for (;;) {
        auto pos = text.find(sep);
        out.push_back(text.substr(0, pos));
        if (pos == std::string_view::npos) break;
        text.remove_prefix(pos + 1);
    }
    return out;
}

std::pair<unsigned, unsigned> parse_k_range(std::string_view text) {
    auto dots = text.find("..");
    u64 lo = 0;
    u64 hi = 0;
    if (dots == std::string_view::npos) {
        lo = hi = parse_count(text);
    } else {
        lo = parse_count(text.substr(0, dots));
        hi = parse_count(text.substr(dots + 2));
    }
    if (lo < 1 || hi < lo || hi > 64) throw UsageError("invalid k range '" + std::string(text) + "'");
    return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
}

Rational parse_multiplier(const std::string& text) {
    try {
        Rational c = parse_rational(text);
        if (c < 1) throw UsageError("--c must be >= 1, got " + text);
        return c;
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

std::uint32_t parse_base(u64 base) {
    if (base < 2 || base > kMaxBase) {
        throw UsageError("--base must lie in [2, " + std::to_string(kMaxBase) + "]");
    }
    return static_cast<std::uint32_t>(base);
}

struct StreamOptions {
    std::string spec = "naturals";
    u64 base = 10;
    std::string c = "1";

    void attach(CLI::App& cmd) {
        cmd.add_option("--spec", spec, "sequence: naturals, composites, primes, poly:a0,a1,..., "
                                       "poly-primes:..., complement:<spec>, explicit:m1,m2,...")
            ->capture_default_str();
        cmd.add_option("--base", base, "digit base b (2..65535)")->capture_default_str();
        cmd.add_option("--c", c, "repetition multiplier c >= 1 (NUM, NUM/DEN or decimal)")
            ->capture_default_str();
    }

    XiSpec build() const {
        try {
            return XiSpec(SequenceSpec::parse(spec), parse_base(base), parse_multiplier(c));
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    }
};

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + path + "' for writing");
    return file;
}

std::optional<StreamCursor> resume_cursor(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot read checkpoint '" + path + "'");
    std::string line;
    std::getline(file, line);
    try {
        return StreamCursor::from_checkpoint(line);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

void save_checkpoint(const std::string& path, const StreamCursor& cursor) {
    if (path.empty()) return;
    auto file = open_output(path);
    file << cursor.checkpoint() << '\n';
}

std::string render_digits(std::span<const Digit> digits, std::uint32_t base) {
    static constexpr char kAlphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    if (base <= 36) {
        out.reserve(digits.size());
        for (Digit d : digits) out += kAlphabet[d];
        return out;
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(digits[i]);
    }
    return out;
}

void require_emission_cap(u64 n, u64 cap) {
    if (n > cap) {
        throw CapExceeded("requested " + std::to_string(n) + " digits exceeds the emission cap " +
                          std::to_string(cap) + " (raise --max-digits or use checkpoints)");
    }
}

// Checkpoints d_exact(b, c, k) for the k that give 16 <= d <= budget.
std::vector<u64> default_checkpoints(const XiSpec& spec, u64 budget) {
    std::vector<u64> out;
    for (unsigned k = 1;; ++k) {
        BigInt d = d_exact(OracleParams(spec.base, spec.multiplier, k));
        if (d > budget) break;
        if (d >= 16) out.push_back(d.convert_to<u64>());
    }
    return out;
}

struct GridOptions {
    std::string bases = "2,3,10";
    std::string cs = "1,3/2,2";
    std::string k_range;
    std::string max_digits = "1e7";
    unsigned jobs = 1;

    void attach(CLI::App& cmd) {
        cmd.add_option("--bases", bases, "comma-separated bases")->capture_default_str();
        cmd.add_option("--cs", cs, "comma-separated multipliers c")->capture_default_str();
        cmd.add_option("--k-range", k_range, "k range a..b (default: every k with d_exact <= --max-digits)");
        cmd.add_option("--max-digits", max_digits, "digit budget per (b, c) cell")->capture_default_str();
        cmd.add_option("--jobs", jobs, "worker threads for grid cells")->capture_default_str();
    }

    std::vector<VerifyRow> run() const {
        std::vector<std::uint32_t> base_list;
        for (auto b : split(bases, ',')) base_list.push_back(parse_base(parse_count(b)));
        std::vector<Rational> c_list;
        for (auto c : split(cs, ',')) c_list.push_back(parse_multiplier(std::string(c)));
        std::sort(base_list.begin(), base_list.end());
        base_list.erase(std::unique(base_list.begin(), base_list.end()), base_list.end());
        std::sort(c_list.begin(), c_list.end());
        c_list.erase(std::unique(c_list.begin(), c_list.end()), c_list.end());
        const u64 budget = parse_count(max_digits);

        struct Cell {
            std::uint32_t b;
            Rational c;
            unsigned k_first;
            unsigned k_last;
        };
        std::vector<Cell> cells;
        for (auto b : base_list) {
            for (const auto& c : c_list) {
                if (k_range.empty()) {
                    cells.push_back({b, c, 1, max_k_within(b, c, budget)});
                } else {
                    auto [lo, hi] = parse_k_range(k_range);
                    if (d_exact(OracleParams(b, c, hi)) > budget) {
                        throw CapExceeded("d_exact(" + std::to_string(b) + ", " + to_string(c) + ", " +
                                          std::to_string(hi) + ") exceeds --max-digits");
                    }
                    cells.push_back({b, c, lo, hi});
                }
            }
        }
        // cells are independent; results are gathered in canonical (b, c, k) order
        std::vector<std::vector<VerifyRow>> results(cells.size());
        const unsigned workers = std::max(1u, jobs);
        for (std::size_t start = 0; start < cells.size(); start += workers) {
            std::vector<std::future<std::vector<VerifyRow>>> batch;
            for (std::size_t i = start; i < std::min(cells.size(), start + workers); ++i) {
                const Cell& cell = cells[i];
                batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                           [&cell] { return verify_champernowne(cell.b, cell.c, cell.k_first, cell.k_last); }));
            }
            for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
        }
        std::vector<VerifyRow> rows;
        for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
        return rows;
    }
};

void print_verify_table(std::ostream& out, std::span<const VerifyRow> rows) {
    out << std::setw(4) << "b" << std::setw(6) << "c" << std::setw(4) << "k" << std::setw(14) << "d_exact"
        << std::setw(14) << "d_stream" << std::setw(14) << "ones_exact" << std::setw(14) << "ones_stream"
        << "  match\n";
    for (const auto& r : rows) {
        out << std::setw(4) << r.b << std::setw(6) << to_string(r.c) << std::setw(4) << r.k << std::setw(14)
            << r.d_exact << std::setw(14) << r.d_stream << std::setw(14) << r.ones_exact << std::setw(14)
            << r.ones_stream << "  " << (r.match() ? "yes" : "NO") << '\n';
    }
}

int report_mismatches(std::span<const VerifyRow> rows, std::ostream& err) {
    int bad = 0;
    for (const auto& r : rows) {
        if (r.match()) continue;
        ++bad;
        err << "mismatch at (b=" << r.b << ", c=" << to_string(r.c) << ", k=" << r.k << "): d " << r.d_exact
            << " vs " << r.d_stream << ", ones " << r.ones_exact << " vs " << r.ones_stream << '\n';
    }
    return bad == 0 ? kSuccess : kMismatch;
}

std::vector<u64> parse_points(const std::string& text) {
    std::vector<u64> out;
    for (auto item : split(text, ',')) out.push_back(parse_count(item));
    return out;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Digit streams, strong-normality statistics and exact oracles for generalized "
                 "Copeland-Erdos numbers"};
    app.require_subcommand(1);

    // digits
    auto* digits = app.add_subcommand("digits", "print the first n digits of xi_{A,b,c}");
    StreamOptions digits_stream;
    digits_stream.attach(*digits);
    std::string digits_n;
    std::string digits_cap = "1e8";
    std::string digits_resume;
    std::string digits_checkpoint;
    digits->add_option("--n", digits_n, "number of digits")->required();
    digits->add_option("--max-digits", digits_cap, "emission cap")->capture_default_str();
    digits->add_option("--resume", digits_resume, "continue from a checkpoint file (ignores stream flags)");
    digits->add_option("--checkpoint-out", digits_checkpoint, "write the cursor state here afterwards");

    // count
    auto* count = app.add_subcommand("count", "count digit occurrences over a prefix");
    StreamOptions count_stream;
    count_stream.attach(*count);
    std::string count_n;
    std::string count_cap = "1e8";
    unsigned count_jobs = 1;
    std::string count_resume;
    std::string count_checkpoint;
    count->add_option("--n", count_n, "number of digits")->required();
    count->add_option("--max-digits", count_cap, "emission cap")->capture_default_str();
    count->add_option("--jobs", count_jobs, "count disjoint chunks on this many threads")->capture_default_str();
    count->add_option("--resume", count_resume, "continue from a checkpoint file (ignores stream flags)");
    count->add_option("--checkpoint-out", count_checkpoint, "write the cursor state here afterwards");

    // trajectory
    auto* traj = app.add_subcommand("trajectory", "LIL statistic of one digit at chosen prefix lengths");
    StreamOptions traj_stream;
    traj_stream.attach(*traj);
    u64 traj_symbol = 1;
    std::optional<std::string> traj_checkpoints;
    std::string traj_k_range;
    std::string traj_out;
    std::string traj_cap = "1e8";
    traj->add_option("--symbol", traj_symbol, "digit k whose count m_{k,b} is tracked")->capture_default_str();
    auto* cp_opt = traj->add_option("--checkpoints", traj_checkpoints, "comma-separated prefix lengths (>= 16)");
    traj->add_option("--k-range", traj_k_range, "use n = d_exact(b, c, k) for k in a..b")->excludes(cp_opt);
    traj->add_option("--out", traj_out, "CSV path (default: stdout)");
    traj->add_option("--max-digits", traj_cap, "emission cap")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "stream xi_{N,b,c} and compare against the exact counts");
    GridOptions verify_grid;
    verify_grid.attach(*verify);
    std::string verify_csv;
    bool inject_fault = false;
    verify->add_option("--csv", verify_csv, "write the verification CSV here");
    verify->add_flag("--inject-fault", inject_fault, "negative control: perturb the first oracle value");

    // threshold
    auto* threshold = app.add_subcommand("threshold", "alpha threshold and A(x) ln x / x samples");
    u64 thr_base = 10;
    std::string thr_c = "1";
    std::string thr_spec = "primes";
    std::string thr_xs = "1e6,1e7";
    std::string thr_cap = "1e8";
    threshold->add_option("--base", thr_base, "digit base b")->capture_default_str();
    threshold->add_option("--c", thr_c, "repetition multiplier c")->capture_default_str();
    threshold->add_option("--spec", thr_spec, "removed set A")->capture_default_str();
    threshold->add_option("--xs", thr_xs, "comma-separated sample points x >= 2")->capture_default_str();
    threshold->add_option("--cap", thr_cap, "sieve cap for A(x)")->capture_default_str();

    // report
    auto* report = app.add_subcommand("report", "exact verification, asymptotic ratios and thresholds");
    GridOptions report_grid;
    report_grid.max_digits = "1e6";
    report_grid.attach(*report);
    std::string report_csv;
    std::string report_xs = "1e6,1e7";
    report->add_option("--csv", report_csv, "write the verification CSV here");
    report->add_option("--xs", report_xs, "sample points for the primes table")->capture_default_str();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("cenormal");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*digits) {
            u64 n = parse_count(digits_n);
            require_emission_cap(n, parse_count(digits_cap));
            auto resumed = resume_cursor(digits_resume);
            StreamCursor cursor = resumed ? std::move(*resumed) : StreamCursor(digits_stream.build());
            std::vector<Digit> buf;
            for (u64 done = 0; done < n; done += buf.size()) {
                buf.resize(std::min<u64>(n - done, 1 << 16));
                cursor.read(buf);
                if (done && cursor.spec().base > 36) out << ',';
                out << render_digits(buf, cursor.spec().base);
            }
            out << '\n';
            save_checkpoint(digits_checkpoint, cursor);
            return kSuccess;
        }
        if (*count) {
            u64 n = parse_count(count_n);
            require_emission_cap(n, parse_count(count_cap));
            auto resumed = resume_cursor(count_resume);
            std::optional<DigitCounter> counter;
            if (resumed || !count_checkpoint.empty() || count_jobs <= 1) {
                StreamCursor cursor = resumed ? std::move(*resumed) : StreamCursor(count_stream.build());
                counter.emplace(cursor.spec().base);
                counter->consume(cursor, n);
                save_checkpoint(count_checkpoint, cursor);
            } else {
                counter = count_prefix(count_stream.build(), n, count_jobs);
            }
            out << "digit,count\n";
            for (std::size_t d = 0; d < counter->counts().size(); ++d) {
                out << d << ',' << counter->counts()[d] << '\n';
            }
            return kSuccess;
        }
        if (*traj) {
            XiSpec spec = traj_stream.build();
            if (traj_symbol >= spec.base) throw UsageError("--symbol must be < base");
            std::vector<u64> points;
            if (traj_checkpoints) {
                points = parse_points(*traj_checkpoints);
            } else if (!traj_k_range.empty()) {
                auto [lo, hi] = parse_k_range(traj_k_range);
                for (unsigned k = lo; k <= hi; ++k) {
                    points.push_back(to_u64(d_exact(OracleParams(spec.base, spec.multiplier, k)), "d_exact"));
                }
            } else {
                points = default_checkpoints(spec, 10'000'000);
            }
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (points[i] < 16) throw UsageError("checkpoint " + std::to_string(points[i]) + " < 16");
                if (i && points[i] <= points[i - 1]) throw UsageError("checkpoints must be strictly increasing");
            }
            if (!points.empty()) require_emission_cap(points.back(), parse_count(traj_cap));
            Trajectory t = trajectory(spec, static_cast<Digit>(traj_symbol), points);
            std::string bound = "lil_bound(" + std::to_string(spec.base) + ")=" + format_real(lil_bound(spec.base)) + "\n";
            if (traj_out.empty()) {
                write_trajectory_csv(out, t);
                err << bound;
            } else {
                auto file = open_output(traj_out);
                write_trajectory_csv(file, t);
                out << bound;
            }
            return kSuccess;
        }
        if (*verify) {
            auto rows = verify_grid.run();
            if (inject_fault && !rows.empty()) rows.front().ones_exact += 1;
            print_verify_table(out, rows);
            if (!verify_csv.empty()) {
                auto file = open_output(verify_csv);
                write_verify_csv(file, rows);
            }
            return report_mismatches(rows, err);
        }
        if (*threshold) {
            SequenceSpec spec = SequenceSpec::parse(thr_spec);
            auto rep = hypothesis_report(spec, parse_base(thr_base), parse_multiplier(thr_c), parse_points(thr_xs),
                                         parse_count(thr_cap));
            write_hypothesis_report(out, rep);
            return kSuccess;
        }
        if (*report) {
            out << "conventions: log is the natural logarithm; positions are 1-indexed; c is exact.\n\n";
            out << "[exact digit and ones counts at the block end of 2b^(k-1)-1]\n";
            auto rows = report_grid.run();
            print_verify_table(out, rows);
            if (!report_csv.empty()) {
                auto file = open_output(report_csv);
                write_verify_csv(file, rows);
            }

            out << "\n[d_exact / d_leading, b=2, c=1]\n";
            double worst = 0;
            for (unsigned k = 5; k <= 25; ++k) {
                OracleParams p(2, 1, k);
                double ratio = d_exact(p).convert_to<double>() / d_leading(p);
                worst = std::max(worst, k * std::abs(ratio - 1));
                out << "k=" << std::setw(2) << k << "  ratio=" << std::setprecision(12) << ratio << '\n';
            }
            out << "fitted C = max k|ratio-1| = " << std::setprecision(6) << worst << '\n';

            out << "\n[excess of 1s over d/b, exact vs leading term]\n";
            for (const auto& r : rows) {
                OracleParams p(r.b, r.c, r.k);
                Rational excess = Rational(r.ones_exact) - Rational(r.d_exact, BigInt(r.b));
                out << "b=" << r.b << " c=" << to_string(r.c) << " k=" << r.k << "  exact="
                    << std::setprecision(10) << to_double(excess) << "  leading=" << ones_excess_leading(p) << '\n';
            }

            out << '\n';
            auto xs = parse_points(report_xs);
            for (std::uint32_t b : {2u, 10u}) {
                write_hypothesis_report(out, hypothesis_report(SequenceSpec::primes(), b, 1, xs));
                out << '\n';
            }
            return report_mismatches(rows, err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kResource;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << '\n';
        return kResource;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace cenormal::cli
