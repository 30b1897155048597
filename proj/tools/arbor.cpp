// arbor: decides whether a tuple of determinant-1 rational 2x2 matrices,
// acting as isometries of the Bruhat-Tits tree T_p, generates a group that
// is both discrete and free -- and certifies the answer either way.
//
// Exit codes: 0 = free and discrete (or command succeeded), 3 = not free
// and discrete, 2 = invalid input, 1 = verification failure.

#include <arbor/json_io.hpp>
#include <arbor/verify.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>

namespace {

using arbor::Json;

constexpr int kExitFree = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNotFree = 3;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text << "\n";
    else
        arbor::write_file(out_path, text + "\n");
}

struct CommonOpts {
    std::string out;
    long cutoff = 0;  // 0 = per-tuple default
    bool strict_open = false;
    uint64_t seed = 0;
    long p = 0;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "Write output to this path instead of stdout")
        ->envname("ARBOR_OUT");
    cmd->add_option("--cutoff", opts.cutoff,
                    "Overlap measurement cutoff radius (0 = 4*max length + 8)")
        ->envname("ARBOR_CUTOFF");
    cmd->add_flag("--open-segment-strict", opts.strict_open,
                  "Use the stricter open-segment convention diameter <= l-2")
        ->envname("ARBOR_OPEN_SEGMENT_STRICT");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)")
        ->envname("ARBOR_THREADS");
}

int run_decide(const std::string& in_path, const CommonOpts& opts) {
    arbor::ProblemInput input = arbor::parse_problem_text(arbor::read_file(in_path));
    arbor::Certificate cert = arbor::decide(input.generators, input.p);
    emit(arbor::certificate_to_json(cert, input).dump(2), opts.out);
    return cert.free_discrete ? kExitFree : kExitNotFree;
}

int run_certify(const std::string& in_path, const CommonOpts& opts) {
    arbor::CertificateDoc cert = arbor::certificate_from_text(arbor::read_file(in_path));
    int threads = opts.threads > 0 ? opts.threads : 2;
    arbor::VerifyReport report =
        arbor::verify_certificate(cert, opts.cutoff, opts.strict_open, threads);
    Json out{{"schema", arbor::kSchemaTag},
             {"ok", report.ok},
             {"conditional", report.conditional},
             {"failures", report.failures},
             {"summary", report.summary}};
    emit(out.dump(2), opts.out);
    if (!report.ok) {
        for (const auto& f : report.failures) std::cerr << "certify: " << f << "\n";
        return kExitVerifyFail;
    }
    return kExitFree;
}

int run_random(long p, long N, int count, uint64_t seed, const CommonOpts& opts) {
    arbor::GenConfig cfg{p, N, count, seed};
    arbor::Rng rng(seed);
    arbor::ProblemInput out;
    out.p = p;
    for (int i = 0; i < count; ++i)
        out.generators.push_back(arbor::random_hyperbolic(cfg, rng).m);
    emit(arbor::problem_to_json(out).dump(2), opts.out);
    return kExitFree;
}

int run_bench_cmd(const std::vector<long>& ps, const std::vector<int>& ns, long N, long trials,
                  uint64_t seed, const std::string& out_dir, const CommonOpts& opts) {
    std::vector<arbor::BenchCell> cells;
    for (long p : ps)
        for (int n : ns) cells.push_back({p, n});
    auto records = arbor::run_bench(cells, N, trials, seed, opts.threads);
    auto rows = arbor::summarize_bench(cells, records);

    std::filesystem::create_directories(out_dir);
    std::string jsonl;
    for (const auto& rec : records) jsonl += arbor::trial_record_to_json(rec).dump() + "\n";
    arbor::write_file(out_dir + "/bench_trials.jsonl", jsonl);
    arbor::write_file(out_dir + "/bench_summary.csv", arbor::bench_summary_csv(rows));
    arbor::write_file(out_dir + "/bench_table.csv", arbor::bench_table_csv(rows));
    std::cout << arbor::bench_table_csv(rows);
    return kExitFree;
}

int run_scan_cmd(int n, const std::vector<long>& ps, long N, long trials, uint64_t seed,
                 const std::string& out_dir, const CommonOpts& opts) {
    std::filesystem::create_directories(out_dir);
    bool any_violation = false;
    for (long p : ps) {
        arbor::GenConfig cfg{p, N, n, seed};
        arbor::ScanReport report =
            arbor::conjecture_scan(cfg, trials, opts.threads, opts.cutoff, opts.strict_open);
        Json j = arbor::scan_report_to_json(report);
        arbor::write_file(out_dir + "/scan_p" + std::to_string(p) + "_n" + std::to_string(n) +
                              ".json",
                          j.dump(2));
        std::cout << j.dump() << "\n";
        any_violation = any_violation || !report.violations.empty();
    }
    return any_violation ? kExitVerifyFail : kExitFree;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "arbor: discreteness-and-freeness decision engine for rational SL2 tuples acting on "
        "Bruhat-Tits trees"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string in_path, out_dir = "out";
    long p = 5, N = 10, trials = 100;
    int n = 2, count = 2;
    uint64_t seed = 0;
    std::vector<long> ps{2};
    std::vector<int> ns{2};

    auto* decide_cmd = app.add_subcommand("decide", "Decide an input tuple and emit a certificate");
    decide_cmd->add_option("--in", in_path, "Input JSON ({\"p\":..,\"generators\":[..]})")
        ->required();
    add_common(decide_cmd, opts);

    auto* certify_cmd =
        app.add_subcommand("certify", "Verify a certificate using only the tree-geometry oracle");
    certify_cmd->add_option("--in", in_path, "Certificate JSON produced by decide")->required();
    add_common(certify_cmd, opts);

    auto* random_cmd = app.add_subcommand("random", "Emit random hyperbolic generators");
    random_cmd->add_option("--p", p, "Prime")->envname("ARBOR_P")->required();
    random_cmd->add_option("--N", N, "Entry bound");
    random_cmd->add_option("--count", count, "Number of generators");
    random_cmd->add_option("--seed", seed, "Seed")->envname("ARBOR_SEED");
    add_common(random_cmd, opts);

    auto* bench_cmd = app.add_subcommand("bench", "Run a timing grid of random decide instances");
    bench_cmd->add_option("--p", ps, "Primes (one cell per (p,n))")->envname("ARBOR_P");
    bench_cmd->add_option("--n", ns, "Tuple sizes");
    bench_cmd->add_option("--N", N, "Entry bound");
    bench_cmd->add_option("--trials", trials, "Trials per cell");
    bench_cmd->add_option("--seed", seed, "Seed")->envname("ARBOR_SEED");
    bench_cmd->add_option("--out-dir", out_dir, "Output directory for JSONL/CSV artifacts");
    add_common(bench_cmd, opts);

    auto* scan_cmd = app.add_subcommand(
        "scan", "Scan random tuples for minimal all-hyperbolic counterexamples to ping-pong");
    scan_cmd->add_option("--n", n, "Tuple size")->required();
    scan_cmd->add_option("--p", ps, "Primes")->envname("ARBOR_P");
    scan_cmd->add_option("--N", N, "Entry bound");
    scan_cmd->add_option("--trials", trials, "Trials per prime");
    scan_cmd->add_option("--seed", seed, "Seed")->envname("ARBOR_SEED");
    scan_cmd->add_option("--out-dir", out_dir, "Output directory for scan reports");
    add_common(scan_cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (decide_cmd->parsed()) return run_decide(in_path, opts);
        if (certify_cmd->parsed()) return run_certify(in_path, opts);
        if (random_cmd->parsed()) return run_random(p, N, count, seed, opts);
        if (bench_cmd->parsed()) return run_bench_cmd(ps, ns, N, trials, seed, out_dir, opts);
        if (scan_cmd->parsed()) return run_scan_cmd(n, ps, N, trials, seed, out_dir, opts);
    } catch (const arbor::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitInvalidInput;
}
