#include <arbor/harness.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

namespace arbor {

namespace {

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run fn(i) for i in [0, jobs) on a small worker pool; exceptions are
// re-thrown on the calling thread after all workers join.
void parallel_for(long jobs, int threads, const std::function<void(long)>& fn) {
    threads = std::min<long>(resolve_threads(threads), jobs);
    if (threads <= 1) {
        for (long i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (long i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
                next.store(jobs);
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string spec_to_string(const ReplacementSpec& r) {
    std::ostringstream os;
    os << r.j << "[";
    for (int i : r.s1) os << i << ",";
    os << "][";
    for (int i : r.s2) os << i << ",";
    os << "]";
    return os.str();
}

}  // namespace

long random_length_bound(const GenConfig& cfg) {
    long log_floor = 0;
    long power = cfg.p;
    while (power <= cfg.N) {
        ++log_floor;
        power *= cfg.p;
    }
    return 2 * (3 * cfg.N + log_floor);
}

Isometry random_sl2(const GenConfig& cfg, Rng& rng, GenStats* stats) {
    require_prime(cfg.p);
    if (cfg.N < 1) throw std::invalid_argument("random_sl2: N must be >= 1");
    while (true) {
        long a = rng.uniform(-cfg.N, cfg.N);
        long b = rng.uniform(-cfg.N, cfg.N);
        long c = rng.uniform(-cfg.N, cfg.N);
        long e = rng.uniform(-cfg.N, cfg.N);
        long f = rng.uniform(-cfg.N, cfg.N);
        long g = rng.uniform(-cfg.N, cfg.N);
        if (a == 0) {
            if (stats) ++stats->rejected_zero_a;
            continue;
        }
        Rational a11 = Rational(a) * rat_pow(cfg.p, e);
        Rational a12 = Rational(b) * rat_pow(cfg.p, f);
        Rational a21 = Rational(c) * rat_pow(cfg.p, g);
        Rational a22 = (1 + a12 * a21) / a11;
        return Isometry({a11, a12, a21, a22}, cfg.p);
    }
}

Isometry random_hyperbolic(const GenConfig& cfg, Rng& rng, GenStats* stats) {
    while (true) {
        Isometry iso = random_sl2(cfg, rng, stats);
        if (iso.elliptic()) {
            if (stats) ++stats->rejected_elliptic;
            continue;
        }
        return iso;
    }
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t certificate_digest(const Certificate& cert) {
    std::ostringstream os;
    os << (cert.free_discrete ? "free" : "elliptic") << ";L0=" << cert.initial_L << ";";
    for (const auto& step : cert.trace) {
        if (step.move) os << spec_to_string(*step.move);
        os << "=" << step.L << ";";
    }
    if (cert.witness) {
        os << "w:";
        for (int letter : cert.witness->word) os << letter << ",";
    }
    if (cert.free_discrete) {
        os << "final:";
        for (const auto& e : cert.final_tuple.elems) {
            for (int letter : e.word) os << letter << ",";
            os << "|";
        }
    }
    return fnv1a(os.str());
}

std::vector<TrialRecord> run_bench(const std::vector<BenchCell>& cells, long N, long trials,
                                   uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("run_bench: trials must be >= 1");
    const long jobs = static_cast<long>(cells.size()) * trials;
    std::vector<TrialRecord> records(jobs);
    parallel_for(jobs, threads, [&](long job) {
        const BenchCell& cell = cells[job / trials];

        GenConfig cfg{cell.p, N, cell.n, seed};
        TrialRecord rec;
        rec.p = cell.p;
        rec.n = cell.n;
        rec.N = N;
        rec.master_seed = seed;
        rec.trial_index = static_cast<uint64_t>(job);
        rec.trial_seed = subseed(seed, rec.trial_index);
        Rng rng(rec.trial_seed);
        GenStats stats;
        std::vector<Mat2> gens;
        gens.reserve(cell.n);
        for (int i = 0; i < cell.n; ++i) gens.push_back(random_hyperbolic(cfg, rng, &stats).m);
        auto t0 = std::chrono::steady_clock::now();
        Certificate cert = decide(gens, cell.p);
        auto t1 = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rec.initial_L = cert.initial_L;
        rec.iterations = cert.iterations;
        rec.free_discrete = cert.free_discrete;
        rec.digest = certificate_digest(cert);
        rec.rejected_zero_a = stats.rejected_zero_a;
        rec.rejected_elliptic = stats.rejected_elliptic;
        check(rec.iterations <= rec.initial_L, "bench: iteration bound exceeded");
        records[job] = std::move(rec);
    });
    return records;
}

std::vector<BenchSummaryRow> summarize_bench(const std::vector<BenchCell>& cells,
                                             const std::vector<TrialRecord>& records) {
    const long trials = cells.empty() ? 0 : static_cast<long>(records.size() / cells.size());
    std::vector<BenchSummaryRow> rows;
    for (size_t c = 0; c < cells.size(); ++c) {
        BenchSummaryRow row;
        row.p = cells[c].p;
        row.n = cells[c].n;
        row.trials = trials;
        std::vector<double> times;
        for (long t = 0; t < trials; ++t) {
            const TrialRecord& rec = records[c * trials + t];
            times.push_back(rec.wall_ms / 1000.0);
            row.mean_s += rec.wall_ms / 1000.0;
            if (rec.free_discrete)
                ++row.free_count;
            else
                ++row.elliptic_count;
        }
        row.mean_s /= static_cast<double>(trials);
        std::sort(times.begin(), times.end());
        row.p50_s = times[times.size() / 2];
        rows.push_back(row);
    }
    return rows;
}

ScanReport conjecture_scan(const GenConfig& cfg, long trials, int threads, long cutoff,
                           bool strict_open) {
    if (cfg.n < 2) throw std::invalid_argument("conjecture_scan: n must be >= 2");
    if (trials < 1) throw std::invalid_argument("conjecture_scan: trials must be >= 1");

    enum class Outcome { Elliptic, PingPong, Indeterminate, Violation };
    struct Slot {
        Outcome outcome;
        uint64_t trial_seed;
        std::string detail;
    };
    std::vector<Slot> slots(trials);
    Tree tree(cfg.p);

    parallel_for(trials, threads, [&](long trial) {
        uint64_t trial_seed = subseed(cfg.seed, static_cast<uint64_t>(trial));
        Rng rng(trial_seed);
        std::vector<Mat2> gens;
        gens.reserve(cfg.n);
        for (int i = 0; i < cfg.n; ++i)
            gens.push_back(random_hyperbolic(cfg, rng, nullptr).m);
        Certificate cert = decide(gens, cfg.p);
        Slot slot{Outcome::Elliptic, trial_seed, {}};
        if (!cert.free_discrete) {
            check(cert.witness.has_value(), "scan: missing witness");
            check(evaluate_word(cert.witness->word, gens) == cert.witness->iso.m,
                  "scan: witness word does not evaluate to its matrix");
            check(cert.witness->iso.elliptic(), "scan: witness is not elliptic");
        } else {
            check(is_minimal(cert.final_tuple), "scan: final tuple is not minimal");
            std::vector<Isometry> tuple;
            for (const auto& e : cert.final_tuple.elems) tuple.push_back(e.iso);
            long radius = cutoff > 0 ? cutoff : default_cutoff(tuple);
            PingPongReport report = check_pingpong(tree, tuple, radius, strict_open);
            switch (report.status) {
                case PingPongStatus::Pass:
                    slot.outcome = Outcome::PingPong;
                    break;
                case PingPongStatus::Indeterminate:
                    slot.outcome = Outcome::Indeterminate;
                    break;
                case PingPongStatus::Fail: {
                    slot.outcome = Outcome::Violation;
                    std::ostringstream os;
                    os << "minimal all-hyperbolic tuple fails ping-pong:";
                    for (const auto& r : report.per_index)
                        if (!r.pass)
                            os << " axis " << r.index << " l=" << r.len
                               << " union_diameter=" << r.union_diameter;
                    slot.detail = os.str();
                    break;
                }
            }
        }
        slots[trial] = std::move(slot);
    });

    ScanReport report;
    report.cfg = cfg;
    report.trials = trials;
    for (long trial = 0; trial < trials; ++trial) {
        const Slot& slot = slots[trial];
        switch (slot.outcome) {
            case Outcome::Elliptic:
                ++report.elliptic_count;
                break;
            case Outcome::PingPong:
                ++report.minimal_count;
                ++report.pingpong_count;
                break;
            case Outcome::Indeterminate:
                ++report.minimal_count;
                ++report.indeterminate_count;
                break;
            case Outcome::Violation:
                ++report.minimal_count;
                report.violations.push_back(
                    {static_cast<uint64_t>(trial), slot.trial_seed, slot.detail});
                break;
        }
    }
    return report;
}

}  // namespace arbor
