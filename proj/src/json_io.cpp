#include <arbor/json_io.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace arbor {

namespace {

void require_schema(const Json& doc) {
    if (doc.contains("schema") && doc.at("schema") != kSchemaTag)
        throw InvalidInput("unsupported schema: expected \"" + std::string(kSchemaTag) + "\"");
}

Rational rational_from_json(const Json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
    } catch (const std::exception& e) {
        throw InvalidInput(where + ": " + e.what());
    }
    throw InvalidInput(where + ": expected a rational string like \"-178/49\"");
}

}  // namespace

Json matrix_to_json(const Mat2& m) {
    return Json::array({Json::array({format_rational(m.a), format_rational(m.b)}),
                        Json::array({format_rational(m.c), format_rational(m.d)})});
}

Mat2 matrix_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw InvalidInput("matrix: expected a 2x2 array of rational strings");
    return {rational_from_json(j[0][0], "matrix[0][0]"), rational_from_json(j[0][1], "matrix[0][1]"),
            rational_from_json(j[1][0], "matrix[1][0]"), rational_from_json(j[1][1], "matrix[1][1]")};
}

Json isometry_to_json(const Isometry& g) {
    return Json{{"p", g.p}, {"matrix", matrix_to_json(g.m)}};
}

Json word_to_json(const Word& w) {
    Json j = Json::array();
    for (int letter : w) j.push_back(letter);
    return j;
}

Word word_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("word: expected an array of signed indices");
    Word w;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InvalidInput("word: letters must be integers");
        int letter = x.get<int>();
        if (letter == 0) throw InvalidInput("word: letter 0 is not a generator index");
        w.push_back(letter);
    }
    return w;
}

ProblemInput parse_problem(const Json& doc) {
    require_schema(doc);
    if (!doc.contains("p")) throw InvalidInput("input: missing field \"p\"");
    if (!doc.at("p").is_number_integer()) throw InvalidInput("input: \"p\" must be an integer");
    ProblemInput input;
    input.p = doc.at("p").get<long>();
    if (!is_prime(input.p))
        throw InvalidInput("input: p = " + std::to_string(input.p) + " is not prime");
    if (!doc.contains("generators") || !doc.at("generators").is_array() ||
        doc.at("generators").empty())
        throw InvalidInput("input: missing or empty \"generators\" array");
    int idx = 0;
    for (const auto& jm : doc.at("generators")) {
        ++idx;
        Mat2 m = matrix_from_json(jm);
        if (det(m) != 1)
            throw InvalidInput("input: generator " + std::to_string(idx) +
                               " has determinant " + format_rational(det(m)) + ", expected 1");
        input.generators.push_back(std::move(m));
    }
    return input;
}

ProblemInput parse_problem_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("input: ") + e.what());
    }
    return parse_problem(doc);
}

Json problem_to_json(const ProblemInput& input) {
    Json gens = Json::array();
    for (const auto& m : input.generators) gens.push_back(matrix_to_json(m));
    return Json{{"schema", kSchemaTag}, {"p", input.p}, {"generators", gens}};
}

namespace {

Json trace_to_json(const std::vector<TraceStep>& trace) {
    Json out = Json::array();
    for (const auto& step : trace) {
        Json j;
        if (step.move) {
            j["j"] = step.move->j;
            j["S1"] = step.move->s1;
            j["S2"] = step.move->s2;
        }
        j["L"] = step.L;
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<TraceStep> trace_from_json(const Json& j) {
    std::vector<TraceStep> out;
    if (!j.is_array()) throw InvalidInput("certificate: \"trace\" must be an array");
    for (const auto& e : j) {
        TraceStep step;
        if (!e.contains("L")) throw InvalidInput("certificate: trace entry missing \"L\"");
        step.L = e.at("L").get<long>();
        if (e.contains("j")) {
            ReplacementSpec spec;
            spec.j = e.at("j").get<int>();
            for (const auto& v : e.at("S1")) spec.s1.push_back(v.get<int>());
            for (const auto& v : e.at("S2")) spec.s2.push_back(v.get<int>());
            step.move = std::move(spec);
        }
        out.push_back(std::move(step));
    }
    return out;
}

}  // namespace

Json certificate_to_json(const Certificate& cert, const ProblemInput& input) {
    Json doc;
    doc["schema"] = kSchemaTag;
    doc["result"] = cert.free_discrete ? "free_discrete" : "not_free_discrete";
    doc["p"] = input.p;
    Json gens = Json::array();
    for (const auto& m : input.generators) gens.push_back(matrix_to_json(m));
    doc["generators"] = gens;
    doc["initial_L"] = cert.initial_L;
    doc["iterations"] = cert.iterations;
    doc["trace"] = trace_to_json(cert.trace);
    if (cert.free_discrete) {
        Json tuple = Json::array();
        for (const auto& e : cert.final_tuple.elems) {
            Json je = isometry_to_json(e.iso);
            je["word"] = word_to_json(e.word);
            tuple.push_back(std::move(je));
        }
        doc["final_tuple"] = tuple;
        if (input.generators.size() > 3) doc["conditional"] = true;
    } else {
        doc["witness_word"] = word_to_json(cert.witness->word);
        doc["witness_matrix"] = matrix_to_json(cert.witness->iso.m);
    }
    return doc;
}

CertificateDoc certificate_from_json(const Json& doc) {
    require_schema(doc);
    CertificateDoc cert;
    if (!doc.contains("result")) throw InvalidInput("certificate: missing \"result\"");
    std::string result = doc.at("result").get<std::string>();
    if (result == "free_discrete")
        cert.free_discrete = true;
    else if (result == "not_free_discrete")
        cert.free_discrete = false;
    else
        throw InvalidInput("certificate: unknown result \"" + result + "\"");
    if (!doc.contains("p") || !doc.contains("generators"))
        throw InvalidInput("certificate: missing \"p\" or \"generators\"");
    cert.p = doc.at("p").get<long>();
    if (!is_prime(cert.p)) throw InvalidInput("certificate: p is not prime");
    for (const auto& jm : doc.at("generators")) cert.generators.push_back(matrix_from_json(jm));
    if (cert.generators.empty()) throw InvalidInput("certificate: empty generator list");
    cert.initial_L = doc.value("initial_L", 0L);
    if (doc.contains("trace")) cert.trace = trace_from_json(doc.at("trace"));
    cert.conditional = doc.value("conditional", false);
    if (cert.free_discrete) {
        if (!doc.contains("final_tuple") || !doc.at("final_tuple").is_array() ||
            doc.at("final_tuple").empty())
            throw InvalidInput("certificate: free_discrete requires a non-empty \"final_tuple\"");
        for (const auto& je : doc.at("final_tuple")) {
            if (!je.contains("matrix") || !je.contains("word"))
                throw InvalidInput("certificate: final_tuple entries need \"matrix\" and \"word\"");
            cert.final_matrices.push_back(matrix_from_json(je.at("matrix")));
            cert.final_words.push_back(word_from_json(je.at("word")));
        }
    } else {
        if (!doc.contains("witness_word") || !doc.contains("witness_matrix"))
            throw InvalidInput(
                "certificate: not_free_discrete requires \"witness_word\" and \"witness_matrix\"");
        cert.witness_word = word_from_json(doc.at("witness_word"));
        cert.witness_matrix = matrix_from_json(doc.at("witness_matrix"));
    }
    return cert;
}

CertificateDoc certificate_from_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("certificate: ") + e.what());
    }
    return certificate_from_json(doc);
}

Json axis_relation_to_json(const AxisRelation& r) {
    switch (r.kind) {
        case AxisKind::Disjoint:
            return Json{{"kind", "disjoint"}, {"d", r.d}};
        case AxisKind::TouchPoint:
            return Json{{"kind", "touch_point"}};
        case AxisKind::Overlap:
            return Json{{"kind", "overlap"}, {"delta", r.delta},
                        {"sameOrientation", r.same_orientation}};
        case AxisKind::LargeOverlap:
            return Json{{"kind", "large_overlap"}, {"deltaLowerBound", r.delta_lower_bound}};
    }
    throw std::logic_error("axis_relation_to_json: bad kind");
}

Json pingpong_report_to_json(const PingPongReport& r) {
    Json per = Json::array();
    for (const auto& ir : r.per_index)
        per.push_back(Json{{"i", ir.index},
                           {"l", ir.len},
                           {"union_diameter", ir.union_diameter},
                           {"pass", ir.pass},
                           {"determinate", ir.determinate}});
    const char* status = r.status == PingPongStatus::Pass          ? "pass"
                         : r.status == PingPongStatus::Fail        ? "fail"
                                                                   : "indeterminate";
    return Json{{"status", status}, {"per_index", per}};
}

Json vertex_to_json(const Tree& tree, const Vertex& v) {
    return matrix_to_json(tree.basis(v));
}

Json trial_record_to_json(const TrialRecord& rec) {
    return Json{{"p", rec.p},
                {"n", rec.n},
                {"N", rec.N},
                {"master_seed", rec.master_seed},
                {"trial_index", rec.trial_index},
                {"trial_seed", rec.trial_seed},
                {"initial_L", rec.initial_L},
                {"iterations", rec.iterations},
                {"result", rec.free_discrete ? "free_discrete" : "not_free_discrete"},
                {"wall_ms", rec.wall_ms},
                {"digest", rec.digest},
                {"rejected_zero_a", rec.rejected_zero_a},
                {"rejected_elliptic", rec.rejected_elliptic}};
}

Json scan_report_to_json(const ScanReport& rep) {
    Json violations = Json::array();
    for (const auto& v : rep.violations)
        violations.push_back(Json{{"trial_index", v.trial_index},
                                  {"trial_seed", v.trial_seed},
                                  {"detail", v.detail}});
    return Json{{"schema", kSchemaTag},
                {"p", rep.cfg.p},
                {"n", rep.cfg.n},
                {"N", rep.cfg.N},
                {"seed", rep.cfg.seed},
                {"trials", rep.trials},
                {"minimal_count", rep.minimal_count},
                {"elliptic_count", rep.elliptic_count},
                {"pingpong_count", rep.pingpong_count},
                {"indeterminate_count", rep.indeterminate_count},
                {"violations", violations}};
}

std::string bench_summary_csv(const std::vector<BenchSummaryRow>& rows) {
    std::ostringstream os;
    os << "p,n,trials,mean_s,p50_s,free_count,elliptic_count\n";
    os << std::fixed << std::setprecision(6);
    for (const auto& r : rows)
        os << r.p << "," << r.n << "," << r.trials << "," << r.mean_s << "," << r.p50_s << ","
           << r.free_count << "," << r.elliptic_count << "\n";
    return os.str();
}

std::string bench_table_csv(const std::vector<BenchSummaryRow>& rows) {
    std::map<long, std::map<int, double>> grid;  // p -> n -> mean_s
    std::map<int, bool> cols;
    for (const auto& r : rows) {
        grid[r.p][r.n] = r.mean_s;
        cols[r.n] = true;
    }
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "p\\n";
    for (const auto& [n, _] : cols) os << "," << n;
    os << "\n";
    for (const auto& [p, row] : grid) {
        os << p;
        for (const auto& [n, _] : cols) {
            os << ",";
            auto it = row.find(n);
            if (it != row.end()) os << it->second;
        }
        os << "\n";
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

}  // namespace arbor
