#pragma once

#include <arbor/descent.hpp>
#include <arbor/rng.hpp>
#include <arbor/tree.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace arbor {

struct GenConfig {
    long p = 2;
    long N = 10;   // entry bound for the random generator
    int n = 2;     // tuple size
    uint64_t seed = 0;
};

struct GenStats {
    long rejected_zero_a = 0;
    long rejected_elliptic = 0;
};

// Random element of SL2(Q_p) of the shape [[a p^e, b p^f], [c p^g, d]] with
// a, b, c, e, f, g uniform on [-N, N] and d solving determinant 1;
// resamples only while a = 0, so elliptic elements come through.
Isometry random_sl2(const GenConfig& cfg, Rng& rng, GenStats* stats = nullptr);

// Same shape, but resampling while the element is elliptic. Such elements
// have translation length at most 2(3N + floor(log_p N)).
Isometry random_hyperbolic(const GenConfig& cfg, Rng& rng, GenStats* stats = nullptr);

long random_length_bound(const GenConfig& cfg);

struct TrialRecord {
    long p = 0;
    int n = 0;
    long N = 0;
    uint64_t master_seed = 0;
    uint64_t trial_index = 0;
    uint64_t trial_seed = 0;
    long initial_L = 0;
    long iterations = 0;
    bool free_discrete = false;
    double wall_ms = 0.0;  // the only field that is not seed-determined
    uint64_t digest = 0;   // FNV-1a of the serialized trace and witness word
    long rejected_zero_a = 0;
    long rejected_elliptic = 0;
};

struct BenchCell {
    long p = 2;
    int n = 2;
};

// One decide run per (cell, trial); records merged in (cell, trial) order so
// the output does not depend on scheduling.
std::vector<TrialRecord> run_bench(const std::vector<BenchCell>& cells, long N, long trials,
                                   uint64_t seed, int threads);

// Mean/median seconds and outcome counts per cell, in cell order.
struct BenchSummaryRow {
    long p = 0;
    int n = 0;
    long trials = 0;
    double mean_s = 0.0;
    double p50_s = 0.0;
    long free_count = 0;
    long elliptic_count = 0;
};
std::vector<BenchSummaryRow> summarize_bench(const std::vector<BenchCell>& cells,
                                             const std::vector<TrialRecord>& records);

struct ScanViolation {
    uint64_t trial_index = 0;
    uint64_t trial_seed = 0;
    std::string detail;
};

// Outcome counts for a minimality scan. Every trial is exactly one of
// elliptic / pingpong / indeterminate / violation, so those four counts sum
// to trials; minimal_count covers the last three.
struct ScanReport {
    GenConfig cfg;
    long trials = 0;
    long minimal_count = 0;
    long elliptic_count = 0;
    long pingpong_count = 0;
    long indeterminate_count = 0;
    std::vector<ScanViolation> violations;
};

// Sample random n-tuples, run the descent to a certificate, and test the
// disjunction that every minimal all-hyperbolic tuple passes the ping-pong
// criterion. Violations carry full reproduction seeds. Indeterminate trials
// are overlap measurements beyond the cutoff, never counted as pass.
ScanReport conjecture_scan(const GenConfig& cfg, long trials, int threads, long cutoff = 0,
                           bool strict_open = false);

uint64_t fnv1a(const std::string& bytes);

// Digest of a certificate's trace and witness, used to compare runs.
uint64_t certificate_digest(const Certificate& cert);

}  // namespace arbor
