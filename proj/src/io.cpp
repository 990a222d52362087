#include "iht/io.hpp"

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iht {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& tok, const std::string& path, std::size_t line) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0') || errno == ERANGE)
        parse_fail(path, line, "not a number: '" + tok + "'");
    return v;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

DenseMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> toks = split_csv(line);
        std::vector<double> row;
        row.reserve(toks.size());
        for (const std::string& t : toks) row.push_back(parse_double(t, path, lineno));
        if (!rows.empty() && row.size() != rows.front().size())
            parse_fail(path, lineno,
                       "expected " + std::to_string(rows.front().size()) + " columns, got " +
                           std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": empty matrix file");
    DenseMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
    return m;
}

void write_matrix_csv(const std::string& path, const DenseMatrix& m) {
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << fmt17(m(i, j));
        }
        out << '\n';
    }
}

SamplingSet read_sampling_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::size_t lineno = 0;
    std::size_t n1 = 0, n2 = 0;
    bool have_header = false;
    std::vector<SamplingSet::Pair> pairs;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            unsigned long a = 0, b = 0;
            if (std::sscanf(line.c_str(), "# n1=%lu,n2=%lu", &a, &b) != 2)
                parse_fail(path, lineno, "malformed header, expected '# n1=<>,n2=<>'");
            n1 = a;
            n2 = b;
            have_header = true;
            continue;
        }
        std::vector<std::string> toks = split_csv(line);
        if (toks.size() != 2) parse_fail(path, lineno, "expected 'i,j'");
        const double iv = parse_double(toks[0], path, lineno);
        const double jv = parse_double(toks[1], path, lineno);
        if (iv < 0 || jv < 0 || iv != std::floor(iv) || jv != std::floor(jv))
            parse_fail(path, lineno, "indices must be nonnegative integers");
        pairs.emplace_back(std::uint32_t(iv), std::uint32_t(jv));
    }
    if (!have_header) throw std::runtime_error(path + ": missing '# n1=<>,n2=<>' header");
    return SamplingSet(n1, n2, std::move(pairs));
}

void write_sampling_csv(const std::string& path, const SamplingSet& omega) {
    std::ofstream out = open_out(path);
    out << "# n1=" << omega.n1() << ",n2=" << omega.n2() << '\n';
    for (const auto& [i, j] : omega.pairs()) out << i << ',' << j << '\n';
}

void write_trace_csv(const std::string& path, const SolverTrace& trace) {
    std::ofstream out = open_out(path);
    out << "k,error_norm\n";
    for (std::size_t k = 0; k < trace.error_norms.size(); ++k)
        out << k << ',' << fmt17(trace.error_norms[k]) << '\n';
}

void write_cells_csv(const std::string& path, const std::vector<CellResult>& cells) {
    std::ofstream out = open_out(path);
    out << "rho_r,rho_s,analytical_mean,analytical_std,empirical_mean,empirical_std,"
           "prob_conv_analytical,prob_conv_empirical,rho_infinity,censored_fraction\n";
    for (const CellResult& c : cells) {
        out << fmt17(c.rho_r) << ',' << fmt17(c.rho_s) << ',' << fmt17(c.analytical_mean) << ','
            << fmt17(c.analytical_std) << ',' << fmt17(c.empirical_mean) << ','
            << fmt17(c.empirical_std) << ',' << fmt17(c.prob_conv_analytical) << ','
            << fmt17(c.prob_conv_empirical) << ',' << fmt17(c.rho_infinity) << ','
            << fmt17(c.censored_fraction) << '\n';
    }
}

void write_esd_csv(const std::string& path, const EsdSample& sample) {
    std::ofstream out = open_out(path);
    out << "eigenvalue\n";
    for (double v : sample.eigenvalues) out << fmt17(v) << '\n';
    nlohmann::json side{{"n", sample.n},
                        {"p", sample.p},
                        {"q", sample.q},
                        {"construction", to_string(sample.construction)},
                        {"seed", sample.seed}};
    std::ofstream meta = open_out(path + ".json");
    meta << side.dump(2) << '\n';
}

}  // namespace iht
