#pragma once

// Grid surveys over (lambda, a) for the families X + a and X^3 + a: connectedness
// counts, Hamiltonian cycle statistics and the U(p) = L(p) conjecture checks.
//
// Results are folded in task order, so output does not depend on the worker count.
// With a state file, every finished task is appended as one JSON line and a rerun
// with `resume` skips the tasks already on disk.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "eqgraph/error.hpp"
#include "eqgraph/field.hpp"
#include "eqgraph/graph.hpp"
#include "eqgraph/hamilton.hpp"
#include "eqgraph/structure.hpp"
#include "json.hpp"

namespace eqgraph {

// ---------------------------------------------------------------------------
// Grid and closed-form counts.

struct LambdaGrid {
    Elem p = 0;
    std::vector<Elem> lambdas;  // non-squares with lambda <= 1/lambda, ascending
    std::size_t size() const noexcept { return lambdas.size(); }
};

inline LambdaGrid lambda_grid(const FieldCtx& ctx) {
    LambdaGrid g{ctx.p(), {}};
    for (Elem l = 1; l < ctx.p(); ++l) {
        if (ctx.chi(l) == -1 && l <= ctx.inv(l)) g.lambdas.push_back(l);
    }
    return g;
}

/// (p - 1)/4 for p = 1 mod 4, (p + 1)/4 for p = 3 mod 4.
constexpr std::size_t lambda_grid_size(Elem p) noexcept { return p % 4 == 1 ? (p - 1) / 4 : (p + 1) / 4; }

/// Number of graphs forced to be unconnected by the 2- and 3-vertex component
/// characterizations, by p mod 8.
constexpr long long l_of_p(Elem p) noexcept {
    const long long q = static_cast<long long>(p);
    switch (p % 8) {
        case 1: return (q - 1) / 4;
        case 3: return (q + 1) / 4;
        case 5: return (q + 3) / 4;
        default: return (q - 3) / 4;
    }
}

/// Exact non-negative ratio, printed truncated to five decimals.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const noexcept { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

    std::string truncated(int digits = 5) const {
        if (den == 0) return "nan";
        unsigned __int128 scale = 1;
        for (int i = 0; i < digits; ++i) scale *= 10;
        const unsigned __int128 scaled = static_cast<unsigned __int128>(num) * scale / den;
        const auto whole = static_cast<std::uint64_t>(scaled / scale);
        auto frac = static_cast<std::uint64_t>(scaled % scale);
        std::string f = std::to_string(frac);
        f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
        return std::to_string(whole) + "." + f;
    }
};

/// (a / b) / (c / d) as an exact ratio.
inline Ratio ratio_of_ratios(Ratio x, Ratio y) {
    return {x.num * y.den, x.den * y.num};
}

inline Family parse_family(const std::string& s) {
    if (s == "linear") return Family::Linear;
    if (s == "quadratic") return Family::Quadratic;
    if (s == "cubic") return Family::Cubic;
    throw Error(Errc::InvalidArgument, "unknown family '" + s + "'");
}

inline void check_survey_family(Elem p, Family family) {
    if (family == Family::Quadratic) throw Error(Errc::UnsupportedForm, "surveys cover the linear and cubic families");
    if (family == Family::Cubic && (p - 1) % 3 == 0) {
        throw Error(Errc::CubicFamilyInvalid, "3 divides p - 1 = " + std::to_string(p - 1));
    }
}

/// f(x) = x + a or x^3 + a for all x.
inline void family_values(const FieldCtx& ctx, Family family, Elem a, std::vector<Elem>& out) {
    out.resize(ctx.p());
    for (Elem x = 0; x < ctx.p(); ++x) out[x] = ctx.add(family == Family::Cubic ? ctx.cube(x) : x, a);
}

inline PolySpec family_poly(const FieldCtx& ctx, Family family, Elem a, Elem lambda) {
    return family == Family::Cubic ? PolySpec::cubic(ctx, a, lambda) : PolySpec::linear(ctx, a, lambda);
}

// ---------------------------------------------------------------------------
// Worker pool and persistence.

struct SurveyOptions {
    unsigned workers = 1;
    std::optional<std::filesystem::path> state_path;
    bool resume = false;
    std::size_t chunk = 64;  // a-values per connectedness task
    /// hamilton surveys: largest p allowed and per-component cap
    Elem hamilton_max_p = 23;
    std::size_t component_cap = 100;
    /// stop after this many newly computed tasks (simulates an interrupted run)
    std::optional<std::size_t> task_limit;
};

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    next.store(n);
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Line-delimited state file: one header object, then one object per finished task.
class SurveyStore {
   public:
    static constexpr int format_version = 1;

    SurveyStore(std::filesystem::path path, nlohmann::json header, bool resume)
        : path_(std::move(path)), header_(std::move(header)) {
        header_["format"] = "eqgraph-survey";
        header_["version"] = format_version;
        if (resume && std::filesystem::exists(path_)) {
            load();
        } else {
            std::ofstream out(path_, std::ios::trunc);
            if (!out) throw Error(Errc::Io, "cannot create state file " + path_.string());
            out << header_.dump() << '\n';
        }
        out_.open(path_, std::ios::app);
        if (!out_) throw Error(Errc::Io, "cannot append to state file " + path_.string());
    }

    const std::vector<nlohmann::json>& records() const noexcept { return records_; }

    void append(const nlohmann::json& record) {
        std::lock_guard lock(mu_);
        out_ << record.dump() << '\n';
        out_.flush();
    }

   private:
    void load() {
        std::ifstream in(path_);
        std::string line;
        if (!std::getline(in, line)) throw Error(Errc::Io, "empty state file " + path_.string());
        const auto head = nlohmann::json::parse(line, nullptr, false);
        if (head.is_discarded() || head != header_) {
            throw Error(Errc::InvalidArgument, "state file " + path_.string() + " belongs to a different survey");
        }
        bool truncated_tail = false;
        while (std::getline(in, line)) {
            auto rec = nlohmann::json::parse(line, nullptr, false);
            // an interrupted write leaves at most one malformed final line
            if (rec.is_discarded()) {
                truncated_tail = true;
                continue;
            }
            if (truncated_tail) throw Error(Errc::Io, "corrupt record in state file " + path_.string());
            records_.push_back(std::move(rec));
        }
        if (truncated_tail) {
            // rewrite without the partial line so appends start on a clean line
            std::ofstream out(path_, std::ios::trunc);
            out << header_.dump() << '\n';
            for (const auto& r : records_) out << r.dump() << '\n';
        }
    }

    std::filesystem::path path_;
    nlohmann::json header_;
    std::vector<nlohmann::json> records_;
    std::ofstream out_;
    std::mutex mu_;
};

namespace detail {

/// Runs `compute` for every task key not already persisted and returns all results
/// in key order. Key and Result must round-trip through nlohmann::json.
template <class Key, class Result, class Compute>
std::vector<Result> run_tasks(const std::vector<Key>& keys, const nlohmann::json& header, const SurveyOptions& opts,
                              Compute&& compute) {
    std::optional<SurveyStore> store;
    std::map<Key, Result> done;
    if (opts.state_path) {
        store.emplace(*opts.state_path, header, opts.resume);
        for (const auto& rec : store->records()) {
            Result r = rec.get<Result>();
            done.emplace(r.key(), std::move(r));
        }
    }
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (!done.count(keys[i])) todo.push_back(i);
    }
    bool interrupted = false;
    if (opts.task_limit && todo.size() > *opts.task_limit) {
        todo.resize(*opts.task_limit);
        interrupted = true;
    }
    std::vector<std::optional<Result>> fresh(todo.size());
    parallel_for(todo.size(), opts.workers, [&](std::size_t i) {
        Result r = compute(keys[todo[i]]);
        if (store) store->append(nlohmann::json(r));
        fresh[i] = std::move(r);
    });
    if (interrupted) throw Error(Errc::BudgetExceeded, "task limit reached; partial results persisted");
    for (auto& r : fresh) done.emplace(r->key(), std::move(*r));
    std::vector<Result> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(std::move(done.at(k)));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Connectedness survey.

struct UnconnectedGraph {
    Elem lambda = 0;
    Elem a = 0;
    std::vector<std::size_t> component_sizes;  // descending
};

struct ConnectednessChunk {
    Elem lambda = 0;
    Elem a_lo = 0;
    Elem a_hi = 0;  // inclusive
    std::uint64_t connected = 0;
    std::vector<UnconnectedGraph> unconnected;

    std::pair<Elem, Elem> key() const { return {lambda, a_lo}; }
};

inline void to_json(nlohmann::json& j, const ConnectednessChunk& c) {
    nlohmann::json un = nlohmann::json::array();
    for (const auto& u : c.unconnected) un.push_back({{"a", u.a}, {"sizes", u.component_sizes}});
    j = {{"lambda", c.lambda}, {"a_lo", c.a_lo}, {"a_hi", c.a_hi}, {"connected", c.connected}, {"unconnected", un}};
}

inline void from_json(const nlohmann::json& j, ConnectednessChunk& c) {
    c.lambda = j.at("lambda").get<Elem>();
    c.a_lo = j.at("a_lo").get<Elem>();
    c.a_hi = j.at("a_hi").get<Elem>();
    c.connected = j.at("connected").get<std::uint64_t>();
    c.unconnected.clear();
    for (const auto& u : j.at("unconnected")) {
        c.unconnected.push_back({c.lambda, u.at("a").get<Elem>(), u.at("sizes").get<std::vector<std::size_t>>()});
    }
}

struct HamiltonStats {
    std::uint64_t graphs = 0;  // connected graphs enumerated
    std::uint64_t h_min = 0;
    std::uint64_t h_max = 0;
    std::uint64_t h_sum = 0;
    std::uint64_t type2_graphs = 0;
    std::uint64_t type2_cycles = 0;
    std::uint64_t type3_graphs = 0;
    std::uint64_t type3_cycles = 0;

    Ratio h_avg() const { return {h_sum, graphs}; }
    Ratio a2() const { return {type2_cycles, type2_graphs}; }
    Ratio a3() const { return {type3_cycles, type3_graphs}; }
    Ratio r2() const { return {type2_graphs, graphs}; }
    Ratio r3() const { return {type3_graphs, graphs}; }
    Ratio a2_over_h() const { return ratio_of_ratios(a2(), h_avg()); }
    Ratio a3_over_h() const { return ratio_of_ratios(a3(), h_avg()); }
};

struct SurveyRecord {
    Elem p = 0;
    Family family = Family::Linear;
    std::uint64_t connected = 0;    // C
    std::uint64_t unconnected = 0;  // U
    long long l = 0;                // L(p)
    std::size_t max_components = 0;  // M
    std::vector<UnconnectedGraph> unconnected_graphs;
    std::optional<HamiltonStats> hamilton;

    std::uint64_t grid_size() const noexcept { return connected + unconnected; }
    Ratio ratio() const { return {connected, grid_size()}; }
};

inline SurveyRecord connectedness_survey(Elem p, Family family, const SurveyOptions& opts = {}) {
    check_survey_family(p, family);
    const FieldCtx ctx = make_ctx(p, family == Family::Cubic);
    const LambdaGrid grid = lambda_grid(ctx);
    const std::size_t chunk = std::max<std::size_t>(opts.chunk, 1);

    std::vector<std::pair<Elem, Elem>> keys;
    for (Elem lambda : grid.lambdas) {
        for (Elem a = 1; a < p; a += chunk) keys.emplace_back(lambda, a);
    }
    const nlohmann::json header = {
        {"kind", "connectedness"}, {"p", p}, {"family", to_string(family)}, {"chunk", chunk}};

    auto chunks = detail::run_tasks<std::pair<Elem, Elem>, ConnectednessChunk>(
        keys, header, opts, [&](const std::pair<Elem, Elem>& key) {
            ConnectednessChunk c{key.first, key.second, std::min<Elem>(key.second + chunk - 1, p - 1), 0, {}};
            std::vector<Elem> values;
            std::vector<std::size_t> sizes;
            for (Elem a = c.a_lo; a <= c.a_hi; ++a) {
                family_values(ctx, family, a, values);
                const EqGraph g = build_from_values(ctx, PolySpec{p, {a}, c.lambda}, values);
                sizes.clear();
                if (count_weak_components(g, &sizes) == 1) {
                    ++c.connected;
                } else {
                    std::sort(sizes.rbegin(), sizes.rend());
                    c.unconnected.push_back({c.lambda, a, sizes});
                }
            }
            return c;
        });

    SurveyRecord rec;
    rec.p = p;
    rec.family = family;
    rec.l = l_of_p(p);
    for (auto& c : chunks) {
        rec.connected += c.connected;
        rec.unconnected += c.unconnected.size();
        for (auto& u : c.unconnected) {
            rec.max_components = std::max(rec.max_components, u.component_sizes.size());
            rec.unconnected_graphs.push_back(std::move(u));
        }
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Hamiltonian cycle survey.

struct GraphHamilton {
    Elem lambda = 0;
    Elem a = 0;
    bool connected = false;
    std::uint64_t total = 0;
    std::map<std::size_t, std::uint64_t> by_type;

    std::pair<Elem, Elem> key() const { return {lambda, a}; }
};

inline void to_json(nlohmann::json& j, const GraphHamilton& g) {
    nlohmann::json types = nlohmann::json::object();
    for (const auto& [t, c] : g.by_type) types[std::to_string(t)] = c;
    j = {{"lambda", g.lambda}, {"a", g.a}, {"connected", g.connected}, {"total", g.total}, {"by_type", types}};
}

inline void from_json(const nlohmann::json& j, GraphHamilton& g) {
    g.lambda = j.at("lambda").get<Elem>();
    g.a = j.at("a").get<Elem>();
    g.connected = j.at("connected").get<bool>();
    g.total = j.at("total").get<std::uint64_t>();
    g.by_type.clear();
    for (const auto& [t, c] : j.at("by_type").items()) g.by_type[std::stoul(t)] = c.get<std::uint64_t>();
}

struct HamiltonSurvey {
    SurveyRecord record;
    std::vector<GraphHamilton> graphs;  // ordered by (lambda, a)
};

/// Enumerates Hamiltonian cycles of every connected graph in the grid. Statistics use
/// exact Type counts; averages of Type-n counts are over graphs having such cycles.
inline HamiltonSurvey hamilton_survey(Elem p, Family family, const SurveyOptions& opts = {}) {
    check_survey_family(p, family);
    if (p > opts.hamilton_max_p) {
        throw Error(Errc::BudgetExceeded,
                    "p = " + std::to_string(p) + " exceeds the Hamiltonian survey budget (max p " +
                        std::to_string(opts.hamilton_max_p) + ")");
    }
    const FieldCtx ctx = make_ctx(p, family == Family::Cubic);
    const LambdaGrid grid = lambda_grid(ctx);
    std::vector<std::pair<Elem, Elem>> keys;
    for (Elem lambda : grid.lambdas) {
        for (Elem a = 1; a < p; ++a) keys.emplace_back(lambda, a);
    }
    const nlohmann::json header = {{"kind", "hamilton"}, {"p", p}, {"family", to_string(family)}};

    auto graphs = detail::run_tasks<std::pair<Elem, Elem>, GraphHamilton>(
        keys, header, opts, [&](const std::pair<Elem, Elem>& key) {
            GraphHamilton out{key.first, key.second, false, 0, {}};
            const EqGraph g = build(family_poly(ctx, family, key.second, key.first), ctx);
            auto comps = weak_components(g);
            out.connected = comps.size() == 1;
            if (out.connected) {
                const auto rep = enumerate(g, comps.front(), {std::nullopt, opts.component_cap, false});
                out.total = rep.total;
                out.by_type = rep.by_type;
            }
            return out;
        });

    HamiltonSurvey s;
    s.record.p = p;
    s.record.family = family;
    s.record.l = l_of_p(p);
    HamiltonStats st;
    bool first = true;
    for (const auto& g : graphs) {
        if (!g.connected) {
            ++s.record.unconnected;
            continue;
        }
        ++s.record.connected;
        ++st.graphs;
        st.h_min = first ? g.total : std::min(st.h_min, g.total);
        st.h_max = first ? g.total : std::max(st.h_max, g.total);
        first = false;
        st.h_sum += g.total;
        if (auto it = g.by_type.find(2); it != g.by_type.end() && it->second > 0) {
            ++st.type2_graphs;
            st.type2_cycles += it->second;
        }
        if (auto it = g.by_type.find(3); it != g.by_type.end() && it->second > 0) {
            ++st.type3_graphs;
            st.type3_cycles += it->second;
        }
    }
    s.record.hamilton = st;
    s.graphs = std::move(graphs);
    return s;
}

// ---------------------------------------------------------------------------
// CSV tables.

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const {
        std::string out;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out;
    }

    static CsvTable parse(const std::string& text) {
        CsvTable t;
        std::istringstream in(text);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream ls(line);
            while (std::getline(ls, cell, ',')) cells.push_back(cell);
            if (!line.empty() && line.back() == ',') cells.emplace_back();
            if (first) {
                t.header = std::move(cells);
                first = false;
            } else {
                if (cells.size() != t.header.size()) throw Error(Errc::InvalidArgument, "ragged CSV row: " + line);
                t.rows.push_back(std::move(cells));
            }
        }
        return t;
    }
};

/// p,C,U,L,M,R
inline CsvTable connectedness_csv(const std::vector<SurveyRecord>& records) {
    CsvTable t{{"p", "C", "U", "L", "M", "R"}, {}};
    for (const auto& r : records) {
        t.rows.push_back({std::to_string(r.p), std::to_string(r.connected), std::to_string(r.unconnected),
                          std::to_string(r.l), std::to_string(r.max_components), r.ratio().truncated()});
    }
    return t;
}

/// p,Hmin,Hmax,Havg
inline CsvTable hamilton_counts_csv(const std::vector<SurveyRecord>& records) {
    CsvTable t{{"p", "Hmin", "Hmax", "Havg"}, {}};
    for (const auto& r : records) {
        const auto& h = r.hamilton.value();
        t.rows.push_back({std::to_string(r.p), std::to_string(h.h_min), std::to_string(h.h_max), h.h_avg().truncated()});
    }
    return t;
}

/// p,A12,A12_over_H,R12 (Type 2) or p,A13,A13_over_H,R13 (Type 3); the leading digit
/// is 3 instead of 1 for the cubic family.
inline CsvTable hamilton_type_csv(const std::vector<SurveyRecord>& records, int type) {
    if (type != 2 && type != 3) throw Error(Errc::InvalidArgument, "type tables exist for Types 2 and 3");
    const std::string fam = !records.empty() && records.front().family == Family::Cubic ? "3" : "1";
    const std::string idx = fam + std::to_string(type);
    CsvTable t{{"p", "A" + idx, "A" + idx + "_over_H", "R" + idx}, {}};
    for (const auto& r : records) {
        const auto& h = r.hamilton.value();
        const Ratio a = type == 2 ? h.a2() : h.a3();
        const Ratio ah = type == 2 ? h.a2_over_h() : h.a3_over_h();
        const Ratio rr = type == 2 ? h.r2() : h.r3();
        t.rows.push_back({std::to_string(r.p), a.truncated(), ah.truncated(), rr.truncated()});
    }
    return t;
}

inline nlohmann::json survey_json(const SurveyRecord& r) {
    nlohmann::json j = {{"p", r.p},
                        {"family", to_string(r.family)},
                        {"C", r.connected},
                        {"U", r.unconnected},
                        {"L", r.l},
                        {"M", r.max_components},
                        {"R", {{"num", r.ratio().num}, {"den", r.ratio().den}, {"truncated", r.ratio().truncated()}}}};
    nlohmann::json un = nlohmann::json::array();
    for (const auto& u : r.unconnected_graphs) un.push_back({{"lambda", u.lambda}, {"a", u.a}, {"sizes", u.component_sizes}});
    j["unconnected_graphs"] = un;
    if (r.hamilton) {
        const auto& h = *r.hamilton;
        j["hamilton"] = {{"graphs", h.graphs},           {"Hmin", h.h_min},
                         {"Hmax", h.h_max},              {"Hsum", h.h_sum},
                         {"type2_graphs", h.type2_graphs}, {"type2_cycles", h.type2_cycles},
                         {"type3_graphs", h.type3_graphs}, {"type3_cycles", h.type3_cycles}};
    }
    return j;
}

// ---------------------------------------------------------------------------
// Conjecture checks.

struct PrimeCheck {
    Elem p = 0;
    std::uint64_t unconnected = 0;
    long long l = 0;
    std::size_t max_components = 0;
    bool in_conjecture_range = false;  // p > 31
    bool u_equals_l = false;
    std::size_t unpredicted_small_components = 0;
};

struct ConjectureReport {
    Family family = Family::Linear;
    std::vector<PrimeCheck> primes;
    std::vector<std::string> counterexamples;
};

/// For every prime 5 <= p <= p_max (cubic: 3 not dividing p - 1) checks U(p) = L(p)
/// when p > 31, that every unconnected graph has exactly two components, and that
/// its smaller component is one predicted by the small-component characterizations.
inline ConjectureReport conjecture_check(Elem p_max, Family family, const SurveyOptions& opts = {}) {
    ConjectureReport report;
    report.family = family;
    for (Elem p = 5; p <= p_max; ++p) {
        if (!is_prime(p)) continue;
        if (family == Family::Cubic && (p - 1) % 3 == 0) continue;
        SurveyOptions o = opts;
        o.state_path.reset();
        const SurveyRecord rec = connectedness_survey(p, family, o);
        PrimeCheck pc;
        pc.p = p;
        pc.unconnected = rec.unconnected;
        pc.l = rec.l;
        pc.max_components = rec.max_components;
        pc.in_conjecture_range = p > 31;
        pc.u_equals_l = static_cast<long long>(rec.unconnected) == rec.l;
        if (pc.in_conjecture_range && !pc.u_equals_l) {
            report.counterexamples.push_back("p=" + std::to_string(p) + ": U=" + std::to_string(rec.unconnected) +
                                             " != L=" + std::to_string(rec.l));
        }
        const FieldCtx ctx = make_ctx(p, family == Family::Cubic);
        for (const auto& u : rec.unconnected_graphs) {
            const std::string id = "p=" + std::to_string(p) + " lambda=" + std::to_string(u.lambda) +
                                   " a=" + std::to_string(u.a);
            if (u.component_sizes.size() != 2) {
                report.counterexamples.push_back(id + ": " + std::to_string(u.component_sizes.size()) + " components");
            }
            const auto audit = audit_small_components(family_poly(ctx, family, u.a, u.lambda), ctx);
            const std::size_t small = u.component_sizes.back();
            const bool predicted = std::any_of(audit.predicted.begin(), audit.predicted.end(),
                                               [&](const SmallComponentFinding& f) {
                                                   return f.matches_formula && f.size == small;
                                               });
            if (!predicted) ++pc.unpredicted_small_components;
        }
        report.primes.push_back(pc);
    }
    return report;
}

}  // namespace eqgraph
