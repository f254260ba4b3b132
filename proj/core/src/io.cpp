#include "homcone/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "homcone/error.hpp"

namespace homcone {

using nlohmann::json;

namespace {

struct Token {
    std::string_view text;
    std::size_t line;
};

// Whitespace tokens with `#` comments removed; `extra` lists further separators.
class Tokens {
public:
    Tokens(std::string_view text, std::string_view extra = {})
    {
        std::size_t line = 1;
        std::size_t i = 0;
        while (i < text.size()) {
            char ch = text[i];
            if (ch == '\n') {
                ++line;
                ++i;
            } else if (ch == '#') {
                while (i < text.size() && text[i] != '\n') {
                    ++i;
                }
            } else if (std::isspace(static_cast<unsigned char>(ch)) || extra.find(ch) != std::string_view::npos) {
                ++i;
            } else {
                std::size_t start = i;
                while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#' &&
                       extra.find(text[i]) == std::string_view::npos) {
                    ++i;
                }
                tokens_.push_back({text.substr(start, i - start), line});
            }
        }
    }

    bool done() const { return next_ == tokens_.size(); }
    std::size_t line() const { return done() ? (tokens_.empty() ? 1 : tokens_.back().line) : tokens_[next_].line; }

    const Token& take(const char* what)
    {
        if (done()) {
            throw ParseError(line(), std::string("unexpected end of input, expected ") + what);
        }
        return tokens_[next_++];
    }

    long long integer(const char* what)
    {
        const Token& t = take(what);
        long long v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            throw ParseError(t.line, std::string("expected integer ") + what + ", got '" + std::string(t.text) + "'");
        }
        return v;
    }

    double real(const char* what)
    {
        const Token& t = take(what);
        std::string_view s = t.text;
        if (!s.empty() && s.front() == '+') {
            s.remove_prefix(1);
        }
        double v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            throw ParseError(t.line, std::string("expected number ") + what + ", got '" + std::string(t.text) + "'");
        }
        return v;
    }

private:
    std::vector<Token> tokens_;
    std::size_t next_ = 0;
};

SparsityPattern read_pattern(Tokens& in)
{
    const std::size_t header = in.line();
    long long n = in.integer("vertex count N");
    long long m = in.integer("edge count M");
    if (n < 1 || m < 0 || n > (1LL << 30)) {
        throw ParseError(header, "invalid header");
    }
    std::vector<Edge> edges;
    edges.reserve(m);
    std::unordered_set<long long> seen;
    for (long long e = 0; e < m; ++e) {
        const std::size_t line = in.line();
        long long i = in.integer("edge endpoint");
        long long j = in.integer("edge endpoint");
        if (i < 1 || j < 1 || i > n || j > n) {
            throw ParseError(line, "edge endpoint out of range 1.." + std::to_string(n));
        }
        if (i == j) {
            throw ParseError(line, "self-loop at vertex " + std::to_string(i));
        }
        long long lo = std::min(i, j) - 1;
        long long hi = std::max(i, j) - 1;
        if (!seen.insert(lo * n + hi).second) {
            throw ParseError(line, "duplicate edge {" + std::to_string(lo + 1) + "," + std::to_string(hi + 1) + "}");
        }
        edges.emplace_back(static_cast<int>(lo), static_cast<int>(hi));
    }
    return SparsityPattern(static_cast<int>(n), edges);
}

std::size_t line_of_byte(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(line_of_byte(text, e.byte), std::string("invalid JSON: ") + e.what());
    }
}

template <class T>
T field(const json& j, const char* key)
{
    if (!j.contains(key)) {
        throw InputError(std::string("missing field \"") + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("field \"") + key + "\" has the wrong type");
    }
}

SparsityPattern json_pattern(const json& j)
{
    int n = field<int>(j, "n");
    if (n < 1) {
        throw InputError("n must be positive");
    }
    auto raw = j.contains("edges") ? field<std::vector<std::array<int, 2>>>(j, "edges")
                                   : std::vector<std::array<int, 2>>{};
    std::vector<Edge> edges;
    for (auto [a, b] : raw) {
        if (a < 1 || b < 1 || a > n || b > n) {
            throw InputError("edge {" + std::to_string(a) + "," + std::to_string(b) + "} out of range");
        }
        edges.emplace_back(a - 1, b - 1);
    }
    return SparsityPattern(n, edges);
}

std::optional<Ordering> json_ordering(const json& j, int n)
{
    if (!j.contains("ordering")) {
        return std::nullopt;
    }
    auto sigma = field<std::vector<int>>(j, "ordering");
    if (static_cast<int>(sigma.size()) != n) {
        throw InputError("ordering must list all " + std::to_string(n) + " vertices");
    }
    for (int& v : sigma) {
        --v;
    }
    return Ordering(std::move(sigma));
}

std::vector<Triplet> json_triplets(const json& arr, const SparsityPattern& pattern, const std::string& what)
{
    std::vector<Triplet> out;
    if (!arr.is_array()) {
        throw InputError(what + " must be an array of [i, j, value] triplets");
    }
    for (const json& t : arr) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
            !t[2].is_number()) {
            throw InputError(what + " must be an array of [i, j, value] triplets");
        }
        int i = t[0].get<int>();
        int jj = t[1].get<int>();
        double v = t[2].get<double>();
        if (i < 1 || jj < 1 || i > pattern.size() || jj > pattern.size()) {
            throw InputError(what + ": index (" + std::to_string(i) + "," + std::to_string(jj) + ") out of range");
        }
        if (i < jj) {
            throw InputError(what + ": entry (" + std::to_string(i) + "," + std::to_string(jj) +
                             ") is not in the lower triangle");
        }
        if (i != jj && !pattern.has_edge(i - 1, jj - 1)) {
            throw InputError(what + ": entry (" + std::to_string(i) + "," + std::to_string(jj) +
                             ") is not in the sparsity pattern");
        }
        out.push_back({i - 1, jj - 1, v});
    }
    return out;
}

json triplets_json(std::span<const Triplet> entries)
{
    json arr = json::array();
    for (const Triplet& t : entries) {
        arr.push_back({t.row + 1, t.col + 1, t.value});
    }
    return arr;
}

json edges_json(const SparsityPattern& p)
{
    json arr = json::array();
    for (auto [u, v] : p.edges()) {
        arr.push_back({u + 1, v + 1});
    }
    return arr;
}

std::vector<Triplet> sparse_entries(const SymSparse& x)
{
    std::vector<Triplet> out;
    for (const Triplet& t : to_triplets(x)) {
        if (t.value != 0.0) {
            out.push_back(t);
        }
    }
    return out;
}

}  // namespace

SparsityPattern parse_pattern(std::string_view text)
{
    Tokens in(text);
    SparsityPattern p = read_pattern(in);
    if (!in.done()) {
        throw ParseError(in.line(), "unexpected trailing content");
    }
    return p;
}

std::string format_pattern(const SparsityPattern& pattern)
{
    std::ostringstream out;
    out << pattern.size() << ' ' << pattern.num_edges() << '\n';
    for (auto [u, v] : pattern.edges()) {
        out << u + 1 << ' ' << v + 1 << '\n';
    }
    return out.str();
}

MatrixFile parse_matrix(std::string_view text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        json j = parse_json(text);
        MatrixFile f;
        f.pattern = json_pattern(j);
        f.ordering = json_ordering(j, f.pattern.size());
        f.entries = json_triplets(j.contains("entries") ? j["entries"] : json::array(), f.pattern, "entries");
        return f;
    }
    Tokens in(text);
    MatrixFile f;
    f.pattern = read_pattern(in);
    const std::size_t header = in.line();
    long long k = in.integer("entry count K");
    if (k < 0) {
        throw ParseError(header, "negative entry count");
    }
    for (long long e = 0; e < k; ++e) {
        const std::size_t line = in.line();
        long long i = in.integer("row index");
        long long j = in.integer("column index");
        double v = in.real("value");
        if (i < 1 || j < 1 || i > f.pattern.size() || j > f.pattern.size()) {
            throw ParseError(line, "index out of range");
        }
        if (i < j) {
            throw ParseError(line, "entry is not in the lower triangle (need i >= j)");
        }
        if (i != j && !f.pattern.has_edge(static_cast<int>(i - 1), static_cast<int>(j - 1))) {
            throw ParseError(line, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") is not in the sparsity pattern");
        }
        f.entries.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), v});
    }
    if (!in.done()) {
        throw ParseError(in.line(), "unexpected trailing content");
    }
    return f;
}

std::string format_matrix_text(const SparsityPattern& pattern, std::span<const Triplet> entries)
{
    std::ostringstream out;
    out.precision(17);
    out << format_pattern(pattern) << entries.size() << '\n';
    for (const Triplet& t : entries) {
        out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
    }
    return out.str();
}

StructurePtr structure_for(const SparsityPattern& pattern, const std::optional<Ordering>& ordering, std::string* note)
{
    if (ordering) {
        return SymbolicStructure::create(pattern, *ordering);
    }
    auto result = lbfs_order(pattern);
    if (auto* ok = std::get_if<TreeOrdering>(&result)) {
        return SymbolicStructure::create(pattern, std::move(ok->ordering));
    }
    Extension ext = homogeneous_extension(pattern);
    if (note) {
        *note = "pattern is not homogeneous chordal; extended with " +
                std::to_string(ext.extended.num_edges() - pattern.num_edges()) + " fill edges";
    }
    return SymbolicStructure::create(std::move(ext.extended), std::move(ext.ordering));
}

LoadedProblem parse_problem(std::string_view text)
{
    json j = parse_json(text);
    if (!j.is_object()) {
        throw InputError("problem file must be a JSON object");
    }
    LoadedProblem out;
    out.declared = json_pattern(j);
    std::string note;
    StructurePtr st = structure_for(out.declared, json_ordering(j, out.declared.size()), &note);
    if (!note.empty()) {
        out.notes.push_back(note);
    }
    ConicProblem& p = out.problem;
    p.structure = st;
    if (!j.contains("c")) {
        throw InputError("missing field \"c\"");
    }
    p.c = from_triplets(st, json_triplets(j["c"], out.declared, "c"));
    auto b = j.contains("b") ? field<std::vector<double>>(j, "b") : std::vector<double>{};
    if (!j.contains("A") || !j["A"].is_array()) {
        throw InputError("missing array field \"A\"");
    }
    if (j["A"].size() != b.size()) {
        throw InputError("b has length " + std::to_string(b.size()) + " but A lists " +
                         std::to_string(j["A"].size()) + " matrices");
    }
    p.b = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    for (std::size_t i = 0; i < j["A"].size(); ++i) {
        p.A.push_back(from_triplets(st, json_triplets(j["A"][i], out.declared, "A[" + std::to_string(i + 1) + "]")));
    }
    for (auto& w : p.validate()) {
        out.notes.push_back("warning: " + w);
    }
    return out;
}

std::string serialize_problem(const ConicProblem& problem)
{
    const auto& st = *problem.structure;
    json j;
    j["n"] = st.size();
    j["edges"] = edges_json(st.pattern());
    json sigma = json::array();
    for (int v : st.ordering().sigma()) {
        sigma.push_back(v + 1);
    }
    j["ordering"] = sigma;
    j["c"] = triplets_json(sparse_entries(problem.c));
    j["b"] = std::vector<double>(problem.b.data(), problem.b.data() + problem.b.size());
    json a = json::array();
    for (const SymSparse& ai : problem.A) {
        a.push_back(triplets_json(sparse_entries(ai)));
    }
    j["A"] = a;
    return j.dump(2);
}

LoadedProblem parse_sdpa(std::string_view text)
{
    // Leading comment lines start with '"' or '*'.
    std::size_t pos = 0;
    std::size_t skipped_lines = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        auto first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '"' && line[first] != '*') {
            break;
        }
        ++skipped_lines;
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
    }
    std::string body(skipped_lines, '\n');
    body.append(text.substr(pos));
    Tokens in(body, ",(){}");

    long long m = in.integer("number of constraints");
    long long nblocks = in.integer("number of blocks");
    if (m < 0 || nblocks < 1) {
        throw ParseError(in.line(), "invalid SDPA header");
    }
    std::vector<long long> size(nblocks);
    std::vector<int> offset(nblocks + 1, 0);
    for (long long b = 0; b < nblocks; ++b) {
        size[b] = in.integer("block size");
        if (size[b] == 0) {
            throw ParseError(in.line(), "zero block size");
        }
        offset[b + 1] = offset[b] + static_cast<int>(std::llabs(size[b]));
    }
    const int n = offset[nblocks];
    std::vector<double> cvec(m);
    for (long long i = 0; i < m; ++i) {
        cvec[i] = in.real("objective coefficient");
    }

    std::vector<std::vector<Triplet>> mats(m + 1);
    std::set<std::pair<int, int>> edge_set;
    while (!in.done()) {
        const std::size_t line = in.line();
        long long mat = in.integer("matrix number");
        long long blk = in.integer("block number");
        long long i = in.integer("row");
        long long j = in.integer("column");
        double v = in.real("value");
        if (mat < 0 || mat > m || blk < 1 || blk > nblocks) {
            throw ParseError(line, "matrix or block number out of range");
        }
        long long bs = std::llabs(size[blk - 1]);
        if (i < 1 || j < 1 || i > bs || j > bs) {
            throw ParseError(line, "index out of block range");
        }
        if (size[blk - 1] < 0 && i != j) {
            throw ParseError(line, "off-diagonal entry in a diagonal block");
        }
        int u = offset[blk - 1] + static_cast<int>(i) - 1;
        int w = offset[blk - 1] + static_cast<int>(j) - 1;
        if (u != w) {
            edge_set.emplace(std::min(u, w), std::max(u, w));
        }
        mats[mat].push_back({std::max(u, w), std::min(u, w), v});
    }

    LoadedProblem out;
    std::vector<Edge> edges(edge_set.begin(), edge_set.end());
    out.declared = SparsityPattern(n, edges);
    std::string note;
    StructurePtr st = structure_for(out.declared, std::nullopt, &note);
    if (!note.empty()) {
        out.notes.push_back(note);
    }
    out.notes.push_back("SDPA import: objective is -<F0, x>; SDPA primal value = -(reported value)");

    auto assemble = [&](const std::vector<Triplet>& entries) {
        SymSparse x(st);
        const auto& ord = st->ordering();
        for (const Triplet& t : entries) {
            int a = ord.position(t.row);
            int b = ord.position(t.col);
            x.ref(std::max(a, b), std::min(a, b)) += t.value;
        }
        return x;
    };
    ConicProblem& p = out.problem;
    p.structure = st;
    p.c = -assemble(mats[0]);
    for (long long i = 1; i <= m; ++i) {
        p.A.push_back(assemble(mats[i]));
    }
    p.b = Eigen::Map<const Eigen::VectorXd>(cvec.data(), static_cast<Eigen::Index>(m));
    for (auto& w : p.validate()) {
        out.notes.push_back("warning: " + w);
    }
    return out;
}

std::string solve_report_json(const ConicProblem& problem, const SolveReport& report)
{
    const Iterate& it = report.iterate;
    json j;
    j["status"] = to_string(report.status);
    j["iterations"] = report.iterations;
    j["primal_objective"] = report.primal_objective;
    j["dual_objective"] = report.dual_objective;
    j["gap"] = inner(it.s, it.x);
    j["mu"] = it.mu;
    j["primal_residual"] = it.primal_residual;
    j["dual_residual"] = it.dual_residual;
    j["n"] = problem.structure->size();
    j["m"] = problem.m();
    j["x"] = triplets_json(to_triplets(it.x));
    j["y"] = std::vector<double>(it.y.data(), it.y.data() + it.y.size());
    j["s"] = triplets_json(to_triplets(it.s));
    json trace = json::array();
    for (const TraceRecord& r : report.trace) {
        trace.push_back(json::parse(trace_record_json(r)));
    }
    j["trace"] = trace;
    return j.dump(2);
}

std::string trace_record_json(const TraceRecord& r)
{
    json j;
    j["iteration"] = r.iteration;
    j["mu"] = r.mu;
    j["gap"] = r.gap;
    j["primal_residual"] = r.primal_residual;
    j["dual_residual"] = r.dual_residual;
    j["primal_objective"] = r.primal_objective;
    j["dual_objective"] = r.dual_objective;
    j["step"] = r.step;
    j["gamma"] = r.gamma;
    j["scaling_residual"] = r.scaling_residual;
    j["scaling_newton_steps"] = r.scaling_newton_steps;
    j["proximity"] = r.proximity;
    j["bfgs_corrected"] = r.bfgs_corrected;
    return j.dump();
}

}  // namespace homcone
