#include "commands.hpp"

#include "record.hpp"
#include "suite/acceptance.hpp"

#include "rigidity/errors.hpp"
#include "rigidity/isometry.hpp"
#include "rigidity/twobridge.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <ostream>
#include <regex>
#include <sstream>

namespace rigidity::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_tolerance(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(v > 0.0) || !std::isfinite(v))
        throw UsageError(what + " must be a positive number, got '" + text + "'");
    return v;
}

void emit(std::ostream& out, const Record& r, bool json) { out << (json ? r.json() : r.text()) << '\n'; }

void add_slope(Record& r, const std::string& key, const Slope& s) {
    if (s.infinite)
        r.add(key, "inf");
    else
        r.add(key, s.value);
}

// ---- slope ----------------------------------------------------------------------

struct SlopeConfig {
    double tol = kRankTol;
    std::optional<int> root_index;
    bool json = false;
};

struct Job {
    std::string input;
    std::string location;  // "file:line" for catalog entries
};

struct Outcome {
    Record record;
    int code = exit_ok;
    std::string message;
};

Outcome run_knot(const Job& job, const SlopeConfig& cfg) {
    Outcome o;
    Record& r = o.record;
    std::string knot_text = job.input;
    try {
        const TwoBridgeKnot k = TwoBridgeKnot::parse(job.input).canonical();
        knot_text = k.to_string();
        SlopeOptions opts;
        opts.tol = cfg.tol;
        opts.root_index = cfg.root_index;
        const SlopeResult s = limit_slope(k, opts);
        r.add("knot", knot_text).add("input", job.input).add("status", "ok").add("basis", "meridian-longitude");
        add_slope(r, "l", s.l);
        add_slope(r, "l_alt", s.l_alt);
        r.add("omega.x", s.omega.x()).add("omega.y", s.omega.y()).add("lambda", s.lambda);
        r.add("root_index", s.root_index).add("root.re", s.root.real()).add("root.im", s.root.imag());
        r.add("x_longitude.re", s.lattice.x_longitude.real()).add("x_longitude.im", s.lattice.x_longitude.imag());
        r.add("meridian", s.basis_first.to_string()).add("longitude", s.basis_second.to_string());
        const SlopeDims& d = s.h1_dims;
        r.add("dims.z1_r31_M", d.z1_r31_m).add("dims.b1_r31_M", d.b1_r31_m).add("dims.h1_r31_M", d.h1_r31_m);
        r.add("dims.z1_r31_T", d.z1_r31_torus).add("dims.b1_r31_T", d.b1_r31_torus).add("dims.h1_r31_T", d.h1_r31_torus);
        r.add("dims.h1_so31_M", d.h1_so31_m).add("dims.h1_so41_M", d.h1_so41_m);
        r.add("dims.image_so41", d.image_so41).add("dims.ph1_so41", d.ph1_so41);
        const SlopeResiduals& res = s.residuals;
        r.add("residuals.relator", res.relator).add("residuals.commutator", res.commutator);
        r.add("residuals.cocycle", res.cocycle).add("residuals.normal_form", res.normal_form);
        r.add("residuals.boundary_distance", res.generator_boundary_distance);
    } catch (const Error& e) {
        r = Record();
        r.add("knot", knot_text).add("input", job.input).add("status", "error").add("error", e.what());
        if (const auto* p = dynamic_cast<const PipelineError*>(&e); p && !p->report().empty())
            r.add("report", p->report());
        o.code = dynamic_cast<const DomainError*>(&e) || dynamic_cast<const DimensionError*>(&e) ? exit_domain
                                                                                                 : exit_pipeline;
        o.message = (job.location.empty() ? job.input : job.location) + ": " + e.what();
    }
    r.add("config.tol", cfg.tol);
    if (cfg.root_index)
        r.add("config.root_index", *cfg.root_index);
    else
        r.add("config.root_index", "auto");
    return o;
}

std::vector<Job> read_jobs(const std::string& input) {
    static const std::regex knot_pattern(R"(\s*\d+\s*/\s*\d+\s*)");
    if (std::regex_match(input, knot_pattern)) return {{input, ""}};
    std::ifstream in(input);
    if (!in) throw UsageError("cannot read knot or catalog '" + input + "'");
    std::vector<Job> jobs;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (!std::regex_match(line, knot_pattern))
            throw UsageError(input + ":" + std::to_string(n) + ": expected p/q, got '" + line + "'");
        jobs.push_back({line, input + ":" + std::to_string(n)});
    }
    return jobs;
}

int cmd_slope(const std::string& input, const SlopeConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<Job> jobs = read_jobs(input);
    std::vector<std::future<Outcome>> pending;
    for (const Job& job : jobs) pending.push_back(std::async(std::launch::async, run_knot, job, cfg));
    int code = exit_ok;
    for (auto& f : pending) {
        Outcome o = f.get();
        emit(out, o.record, cfg.json);
        if (!o.message.empty()) err << "rigidity slope: " << o.message << '\n';
        code = std::max(code, o.code);
    }
    return code;
}

// ---- classify -----------------------------------------------------------------

Matrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read matrix file '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw UsageError("not a number in matrix file: '" + tok + "'");
            row.push_back(v);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.size() != 5) throw UsageError("expected a 5x5 matrix, got " + std::to_string(rows.size()) + " rows");
    Matrix m(5, 5);
    for (int i = 0; i < 5; ++i) {
        if (rows[i].size() != 5) throw UsageError("expected a 5x5 matrix, row " + std::to_string(i + 1) + " has " +
                                                  std::to_string(rows[i].size()) + " entries");
        for (int j = 0; j < 5; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

int cmd_classify(const std::string& path, double tol, bool json, std::ostream& out, std::ostream& err) {
    const Matrix m = read_matrix(path);
    try {
        const IsometryClass c = classify(m, tol);
        Record r;
        r.add("kind", to_string(c.kind)).add("translation_length", c.translation_length);
        r.add("alpha", c.alpha).add("beta", c.beta).add("trace", c.trace).add("trace_residual", c.trace_residual);
        r.add("config.tol", tol);
        emit(out, r, json);
        return exit_ok;
    } catch (const DomainError& e) {
        err << "rigidity classify: " << e.what() << '\n';
        return exit_domain;
    }
}

// ---- verify ---------------------------------------------------------------------

int cmd_verify(double tol, bool json, std::ostream& out) {
    suite::Options opts;
    opts.tol = tol;
    const auto results = suite::run_acceptance(opts);
    int passed = 0;
    for (const auto& c : results) {
        if (c.passed) ++passed;
        if (json) {
            Record r;
            r.add("id", c.id).add("name", c.name).add("status", c.passed ? "pass" : "fail");
            r.add("claim", c.claim).add("detail", c.detail);
            emit(out, r, true);
        } else {
            out << suite::format_line(c) << '\n';
        }
    }
    Record summary;
    summary.add("summary", "verify").add("passed", passed).add("failed", static_cast<int>(results.size()) - passed);
    summary.add("config.tol", tol);
    emit(out, summary, json);
    return passed == static_cast<int>(results.size()) ? exit_ok : exit_check_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
    CLI::App app{"Infinitesimal rigidity computations for hyperbolic two-bridge knot exteriors", "rigidity"};
    app.require_subcommand(1);

    std::string tol_text, classify_tol_text, input, matrix_path, basis = "meridian-longitude";
    int root_index = -1;
    bool json = false;

    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
    verify->add_option("--tol", tol_text, "Relative rank tolerance");
    verify->add_flag("--json", json, "One JSON object per line");

    auto* slope = app.add_subcommand("slope", "Excluded filling slope of two-bridge knots");
    slope->add_option("input", input, "Knot as p/q, or a catalog file with one p/q per line")->required();
    slope->add_option("--tol", tol_text, "Relative rank tolerance");
    slope->add_option("--root-index", root_index, "Use this Riley root instead of the default candidate")
        ->check(CLI::NonNegativeNumber);
    slope->add_option("--basis", basis, "Peripheral basis")->check(CLI::IsMember({"meridian-longitude"}));
    slope->add_flag("--json", json, "One JSON object per line");

    auto* cls = app.add_subcommand("classify", "Classify an element of SO0(4,1)");
    cls->add_option("matrix", matrix_path, "File with a 5x5 matrix, one row per line")->required();
    cls->add_option("--tol", classify_tol_text, "Membership tolerance");
    cls->add_flag("--json", json, "One JSON object per line");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("rigidity");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_parse;
    }

    try {
        double tol = kRankTol;
        if (env.tol) tol = parse_tolerance(*env.tol, "RIGIDITY_TOL");
        if (!tol_text.empty()) tol = parse_tolerance(tol_text, "--tol");

        if (verify->parsed()) return cmd_verify(tol, json, out);
        if (slope->parsed()) {
            SlopeConfig cfg;
            cfg.tol = tol;
            cfg.json = json;
            if (root_index >= 0) cfg.root_index = root_index;
            return cmd_slope(input, cfg, out, err);
        }
        double ctol = kMembershipTol;
        if (!classify_tol_text.empty()) ctol = parse_tolerance(classify_tol_text, "--tol");
        return cmd_classify(matrix_path, ctol, json, out, err);
    } catch (const UsageError& e) {
        err << "rigidity: " << e.what() << '\n';
        return exit_parse;
    } catch (const std::exception& e) {
        err << "rigidity: " << e.what() << '\n';
        return exit_pipeline;
    }
}

}  // namespace rigidity::cli
