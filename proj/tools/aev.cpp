// aev: verify ∀∃ relational properties of imperative programs.
//
// Exit codes: 0 verdict matches the file's expectation (or there is none), 1 mismatch,
// 2 solver answered unknown, 3 tool error (including an oracle cross-check that contradicts a
// valid verdict).

#include "aev/frontend.hpp"
#include "aev/oracles.hpp"
#include "aev/smtlib.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kAgree = 0, kMismatch = 1, kUnknown = 2, kToolError = 3 };

std::string read_file(const std::string & path) {
    std::ifstream in(path);
    if (!in) { throw aev::Error("cannot read " + path); }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string & path, const std::string & text) {
    std::ofstream out(path);
    if (!out) { throw aev::Error("cannot write " + path); }
    out << text;
}

std::vector<std::string> split_command(const std::string & s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) { out.push_back(w); }
    return out;
}

int verify_file(const std::string & path, const aev::SolverConfig & config, const std::string & dump_path,
                bool oracle, const std::string & domain, std::size_t fuel) {
    aev::VerificationProblem problem = aev::parse_input(read_file(path));
    aev::VerificationResult r = aev::run_verification(problem, config);
    if (!dump_path.empty()) {
        std::string dump = path == "-" ? "" : "; " + path + "\n";
        dump += "; vc: " + aev::to_smtlib(r.vc) + "\n" + r.query;
        if (dump_path == "-") {
            std::cout << dump;
        } else {
            write_file(dump_path, dump);
        }
    }

    std::cout << path << ": " << aev::to_string(r.verdict);
    if (r.verdict.is_unknown() && !r.verdict.detail.empty()) { std::cout << " [" << r.verdict.detail << "]"; }
    if (r.expected) { std::cout << " (expected " << (*r.expected ? "valid" : "invalid") << ")"; }
    std::cout << "\n";
    if (r.verdict.is_invalid() && !r.verdict.model.empty()) {
        std::cout << "falsifying model:\n";
        std::istringstream lines(r.model_text());
        for (std::string line; std::getline(lines, line);) { std::cout << "  " << line << "\n"; }
    }

    int code = r.verdict.is_unknown() ? kUnknown : r.matches_expected() ? kAgree : kMismatch;
    if (r.expected && !r.verdict.is_unknown() && !r.matches_expected()) { std::cout << "MISMATCH with expected verdict\n"; }

    if (oracle) {
        aev::OracleOptions opts;
        opts.domain = aev::IntRange::parse(domain);
        opts.fuel = fuel;
        aev::OracleReport rep = aev::check_rhle_semantics(problem, nullptr, opts);
        std::cout << "oracle: " << rep.seeds_checked << " seeds over " << domain << ", " << rep.violations.size()
                  << " counterexample(s)" << (rep.truncated ? " (fuel exhausted on some paths)" : "") << "\n";
        std::cout << rep.to_text();
        if (r.verdict.is_valid() && !rep.ok()) {
            std::cout << "oracle contradicts the valid verdict\n";
            code = kToolError;
        }
    }
    return code;
}

} // namespace

int main(int argc, char ** argv) {
    CLI::App app{"Verifier for forall-exists relational properties"};
    std::vector<std::string> inputs;
    std::string solver, dump_path, bench_dir, domain = "-4..4";
    long timeout_ms = 30000;
    std::size_t fuel = 16;
    bool oracle = false, csv = false;

    app.add_option("inputs", inputs, "Problem files (.imp)")->check(CLI::ExistingFile);
    app.add_option("--solver", solver, "Solver command line (default: $AEV_SOLVER, then 'z3 -in -smt2')");
    app.add_option("--timeout-ms", timeout_ms, "Per-query solver timeout in milliseconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--dump-vcs", dump_path, "Write the generated VC and solver query to a file ('-' for stdout)");
    app.add_flag("--oracle-check", oracle, "Cross-check the verdict with the bounded semantic oracle");
    app.add_option("--domain", domain, "Integer domain lo..hi for --oracle-check")->capture_default_str();
    app.add_option("--fuel", fuel, "Loop/call fuel for --oracle-check")->capture_default_str();
    app.add_option("--bench", bench_dir, "Run every .imp file in a directory and print a report")->check(CLI::ExistingDirectory);
    app.add_flag("--csv", csv, "With --bench, print comma-separated rows instead of a table");
    CLI11_PARSE(app, argc, argv);

    aev::SolverConfig config;
    config.command = split_command(solver);
    config.timeout_ms = timeout_ms;

    try {
        if (oracle) { aev::IntRange::parse(domain); }
        if (!bench_dir.empty()) {
            aev::BenchmarkReport report = aev::run_benchmarks(bench_dir, config);
            std::cout << (csv ? report.csv() : report.table());
            return report.all_agree() ? kAgree : kMismatch;
        }
        if (inputs.empty()) {
            std::cerr << "no input files (see --help)\n";
            return kToolError;
        }
        if (inputs.size() > 1 && !dump_path.empty() && dump_path != "-") {
            std::cerr << "--dump-vcs with a file path takes a single input\n";
            return kToolError;
        }
        int worst = kAgree;
        for (const auto & path : inputs) {
            int code;
            try {
                code = verify_file(path, config, dump_path, oracle, domain, fuel);
            } catch (const std::exception & e) {
                std::cout << path << ": error: " << e.what() << "\n";
                code = kToolError;
            }
            worst = std::max(worst, code);
        }
        return worst;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return kToolError;
    }
}
