#pragma once

#include <arbor/axes.hpp>
#include <arbor/descent.hpp>
#include <arbor/harness.hpp>
#include <arbor/tree.hpp>

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace arbor {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "arbor/1";

// Thrown on malformed or out-of-contract input documents; the CLI maps it
// to exit code 2.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

struct ProblemInput {
    long p = 2;
    std::vector<Mat2> generators;
};

// {"p": 7, "generators": [[["129/49","-178/49"],["6/49","31/147"]], ...]}
ProblemInput parse_problem(const Json& doc);
ProblemInput parse_problem_text(const std::string& text);
Json problem_to_json(const ProblemInput& input);

Json matrix_to_json(const Mat2& m);
Mat2 matrix_from_json(const Json& j);

Json isometry_to_json(const Isometry& g);
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

// Certificate document: self-contained (carries p and the input generators)
// so verification needs nothing but the file.
Json certificate_to_json(const Certificate& cert, const ProblemInput& input);

struct CertificateDoc {
    long p = 2;
    std::vector<Mat2> generators;
    bool free_discrete = false;
    // free branch
    std::vector<Mat2> final_matrices;
    std::vector<Word> final_words;
    // elliptic branch
    Mat2 witness_matrix;
    Word witness_word;
    long initial_L = 0;
    std::vector<TraceStep> trace;
    bool conditional = false;  // n > 3: minimality criterion is conjectural
};
CertificateDoc certificate_from_json(const Json& doc);
CertificateDoc certificate_from_text(const std::string& text);

Json axis_relation_to_json(const AxisRelation& r);
Json pingpong_report_to_json(const PingPongReport& r);
Json vertex_to_json(const Tree& tree, const Vertex& v);

Json trial_record_to_json(const TrialRecord& rec);
Json scan_report_to_json(const ScanReport& rep);

std::string bench_summary_csv(const std::vector<BenchSummaryRow>& rows);
// Pivot table: one row per p, one column per n, mean seconds per cell.
std::string bench_table_csv(const std::vector<BenchSummaryRow>& rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace arbor
