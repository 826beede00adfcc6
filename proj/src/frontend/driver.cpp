#include "aev/frontend.hpp"
#include "aev/smtlib.hpp"
#include "aev/vcgen.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace aev {

bool VerificationResult::matches_expected() const {
    if (!expected) { return true; }
    if (verdict.is_unknown()) { return false; }
    return verdict.is_valid() == *expected;
}

std::string VerificationResult::model_text() const {
    std::string out;
    for (const auto & [name, value] : verdict.model) { out += name + " = " + value.str() + "\n"; }
    return out;
}

namespace {

template <class F>
auto stage(const char * name, F && f) {
    try {
        return f();
    } catch (const StageError &) {
        throw;
    } catch (const std::exception & e) {
        throw StageError(name, e.what());
    }
}

} // namespace

VerificationResult run_verification(const VerificationProblem & problem, const SolverConfig & config) {
    VerificationResult out;
    out.expected = problem.expected_valid;
    InstantiatedCopies copies = stage("instantiate", [&] {
        check_well_formed(problem);
        return instantiate_copies(problem);
    });
    out.vc = stage("vcgen", [&] {
        return rhle_vc(problem.pre, copies.universals, copies.existentials, problem.post, problem.specs);
    });
    out.query = validity_query(out.vc, config);
    out.verdict = stage("solver", [&] { return verify(out.vc, config); });
    return out;
}

// ---------------------------------------------------------------------------------------------

bool BenchmarkReport::all_agree() const {
    for (const auto & r : rows) {
        if (!r.agree) { return false; }
    }
    return true;
}

namespace {

std::string expected_cell(const std::optional<bool> & e) {
    if (!e) { return "-"; }
    return *e ? "valid" : "invalid";
}

std::string seconds_cell(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

std::string csv_field(const std::string & s) {
    if (s.find_first_of(",\"\n") == std::string::npos) { return s; }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') { out += '"'; }
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

} // namespace

std::string BenchmarkReport::table() const {
    std::vector<std::vector<std::string>> cells{{"Name", "Time (s)", "Valid", "Verified", "Agree"}};
    for (const auto & r : rows) {
        cells.push_back({r.name, seconds_cell(r.seconds), expected_cell(r.expected), r.verified, r.agree ? "yes" : "NO"});
    }
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (const auto & row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) { width[i] = std::max(width[i], row[i].size()); }
    }
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto & row = cells[k];
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string pad(width[i] - row[i].size(), ' ');
            // Right-align the numeric column.
            line += i == 1 ? pad + row[i] : i + 1 < row.size() ? row[i] + pad : row[i];
            if (i + 1 < row.size()) { line += "  "; }
        }
        out += line + "\n";
        if (k == 0) {
            std::size_t total = 0;
            for (auto w : width) { total += w + 2; }
            out += std::string(total - 2, '-') + "\n";
        }
    }
    return out;
}

std::string BenchmarkReport::csv() const {
    std::string out = "name,seconds,expected,verified,agree,detail\n";
    for (const auto & r : rows) {
        out += csv_field(r.name) + "," + seconds_cell(r.seconds) + "," + expected_cell(r.expected) + "," + r.verified + "," +
               (r.agree ? "true" : "false") + "," + csv_field(r.detail) + "\n";
    }
    return out;
}

BenchmarkReport run_benchmarks(const std::filesystem::path & directory, const SolverConfig & config) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory)) { throw InvalidProblem("not a directory: " + directory.string()); }
    std::vector<fs::path> files;
    for (const auto & entry : fs::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".imp") { files.push_back(entry.path()); }
    }
    std::sort(files.begin(), files.end());

    BenchmarkReport report;
    for (const auto & file : files) {
        BenchmarkRow row;
        row.name = file.stem().string();
        auto start = std::chrono::steady_clock::now();
        try {
            std::ifstream in(file);
            std::stringstream buf;
            buf << in.rdbuf();
            VerificationProblem problem = parse_input(buf.str());
            row.expected = problem.expected_valid;
            VerificationResult r = run_verification(problem, config);
            row.verified = r.verdict.is_unknown() ? "unknown" : r.verdict.is_valid() ? "valid" : "invalid";
            if (r.verdict.is_unknown()) { row.detail = to_string(r.verdict.reason) + (r.verdict.detail.empty() ? "" : ": " + r.verdict.detail); }
            row.agree = r.matches_expected();
        } catch (const std::exception & e) {
            row.verified = "error";
            row.detail = e.what();
            row.agree = false;
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace aev
