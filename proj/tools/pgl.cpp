// pgl: growth quantities for finite groups, with a verify harness.
//
// Exit codes: 0 ok, 1 check failure, 2 invalid input, 3 budget refusal.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pgl/extensions.hpp"
#include "pgl/fq.hpp"
#include "pgl/freegrowth.hpp"
#include "pgl/group.hpp"
#include "pgl/modrep.hpp"
#include "pgl/probgen.hpp"
#include "pgl/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pgl;

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr const char* kRefRn = "r_n(G,\\mathbb{F}) = \\left| \\Irr_n(G,\\mathbb{F}) \\right|";
constexpr const char* kRefUberg = "r_n(G,\\mathbb{F}_p) \\leq p^{en}";
constexpr const char* kRefEmin = "polynomial minimal extension growth";
constexpr const char* kRefCensus = "r_n(F,\\mathbb{F}_p) \\geq c_p^d p^{n^2(d-1)}";
constexpr const char* kRefPexact = "probability that $k$ randomly chosen relations in $R$ already generate all relations";
constexpr const char* kRefIdeal = "r_n(G,\\mathbb{F}_p) \\leq m_{p^n}^{\\triangleleft}(\\cGrAlg{G}) \\leq p^n r_n(G,\\mathbb{F}_p)";

struct BudgetRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- group spec parsing -----------------------------------------------------
// Factors separated by 'x': C<m>, D<m>, S3..S6, A4..A6, PSL27, 1.

GroupPtr parse_group_factor(const std::string& s) {
    if (s == "1" || s == "C1") return FiniteGroup::trivial();
    if (s == "PSL27") return FiniteGroup::psl27();
    if (s.size() >= 2 && (s[0] == 'C' || s[0] == 'D' || s[0] == 'S' || s[0] == 'A')) {
        int m = 0;
        try {
            std::size_t used = 0;
            m = std::stoi(s.substr(1), &used);
            if (used + 1 != s.size()) m = 0;
        } catch (...) {
            m = 0;
        }
        if (m > 0) {
            switch (s[0]) {
                case 'C': return FiniteGroup::cyclic(m);
                case 'D': return FiniteGroup::dihedral(m);
                case 'S': return FiniteGroup::symmetric(m);
                case 'A': return FiniteGroup::alternating(m);
            }
        }
    }
    throw std::invalid_argument("unrecognized group spec factor '" + s +
                                "' (expected C<m>, D<m>, S3..S6, A4..A6, PSL27, 1)");
}

GroupPtr parse_group(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("--group is required for this command");
    GroupPtr out;
    std::string part;
    std::stringstream ss(spec);
    while (std::getline(ss, part, 'x')) {
        auto g = parse_group_factor(part);
        out = out ? FiniteGroup::direct_product(out, g) : g;
    }
    return out;
}

// --- result records and cache -----------------------------------------------

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct RunConfig {
    std::string command;
    std::string group;
    std::uint32_t p = 2, e = 1;
    int nmax = 4, kmax = 3, d = 2;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string cache_dir;
    long long budget_ms = -1;

    // canonical key text; excludes presentation-only settings (format)
    std::string canonical() const {
        std::ostringstream os;
        os << "v=" << kVersion << ";cmd=" << command << ";group=" << group
           << ";p=" << p << ";e=" << e << ";nmax=" << nmax << ";kmax=" << kmax
           << ";d=" << d << ";seed=" << seed;
        return os.str();
    }

    json echo() const {
        json c;
        c["command"] = command;
        if (!group.empty()) c["group"] = group;
        c["p"] = p;
        c["e"] = e;
        c["nmax"] = nmax;
        c["kmax"] = kmax;
        c["d"] = d;
        c["seed"] = seed;
        return c;
    }
};

std::string cache_path(const RunConfig& cfg) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.canonical())));
    return (fs::path(cfg.cache_dir) / (std::string(hex) + ".json")).string();
}

json make_record(const RunConfig& cfg, const std::string& quantity,
                 const char* ref, json rows) {
    json rec;
    rec["config"] = cfg.echo();
    rec["quantity"] = quantity;
    rec["ref"] = ref;
    rec["rows"] = std::move(rows);
    rec["provenance"] = {{"library_version", kVersion}, {"seed", cfg.seed}};
    return rec;
}

std::optional<json> cache_load(const RunConfig& cfg) {
    if (cfg.cache_dir.empty()) return std::nullopt;
    std::ifstream in(cache_path(cfg));
    if (!in) return std::nullopt;
    json rec;
    try {
        in >> rec;
        if (!rec.contains("provenance") ||
            rec["provenance"].value("library_version", "") != kVersion)
            return std::nullopt;  // stale version: recompute
        if (!rec.contains("rows") || !rec.contains("quantity") ||
            !rec.contains("config"))
            throw std::runtime_error("missing fields");
    } catch (const std::exception& e) {
        std::cerr << "warning: corrupt cache entry " << cache_path(cfg)
                  << " (" << e.what() << "); recomputing\n";
        return std::nullopt;
    }
    return rec;
}

void cache_store(const RunConfig& cfg, const json& rec) {
    if (cfg.cache_dir.empty()) return;
    std::error_code ec;
    fs::create_directories(cfg.cache_dir, ec);
    std::string path = cache_path(cfg);
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        if (!out) {
            std::cerr << "warning: cache dir not writable: " << cfg.cache_dir << "\n";
            return;
        }
        out << rec.dump(2) << "\n";
    }
    fs::rename(tmp, path, ec);
    if (ec) std::cerr << "warning: cache write failed: " << ec.message() << "\n";
}

// --- output -----------------------------------------------------------------

void emit(const RunConfig& cfg, const json& rec) {
    if (cfg.format == "json") {
        std::cout << rec.dump(2) << "\n";
        return;
    }
    // CSV projection: the union of row keys, in first-row order, as columns.
    const auto& rows = rec["rows"];
    std::vector<std::string> cols;
    for (const auto& row : rows)
        for (auto it = row.begin(); it != row.end(); ++it)
            if (std::find(cols.begin(), cols.end(), it.key()) == cols.end())
                cols.push_back(it.key());
    for (std::size_t i = 0; i < cols.size(); ++i)
        std::cout << (i ? "," : "") << cols[i];
    std::cout << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) std::cout << ",";
            if (row.contains(cols[i])) {
                const auto& v = row[cols[i]];
                if (v.is_string()) std::cout << v.get<std::string>();
                else std::cout << v.dump();
            }
        }
        std::cout << "\n";
    }
}

void check_budget(const RunConfig& cfg, long long estimated_ms, const std::string& cap) {
    if (cfg.budget_ms >= 0 && estimated_ms > cfg.budget_ms) {
        std::ostringstream os;
        os << "estimated " << estimated_ms << " ms for " << cap
           << " exceeds --budget-ms " << cfg.budget_ms;
        throw BudgetRefusal(os.str());
    }
}

// --- commands ---------------------------------------------------------------

json cmd_repgrowth(const RunConfig& cfg) {
    auto g = parse_group(cfg.group);
    if (g->order() > 300)
        throw std::invalid_argument("repgrowth: |G| <= 300 required");
    check_budget(cfg, 1 + static_cast<long long>(g->order()) * g->order() / 500,
                 "simple-module census of " + cfg.group);
    auto f = FqField::make(cfg.p, cfg.e);
    auto table = r_counts(g, f, cfg.nmax);
    json rows = json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"n", r.n}, {"r", r.r}, {"r_star", r.r_star}});
    auto rec = make_record(cfg, "r", kRefRn, std::move(rows));
    if (cfg.e == 1) {
        // smallest integer e with r_n <= p^{e n} over the computed range
        int exp = 0;
        for (const auto& r : table.rows) {
            int need = 0;
            mpz_class bound = 1;
            while (bound < static_cast<long>(r.r)) {
                for (int i = 0; i < r.n; ++i) bound *= cfg.p;
                ++need;
            }
            exp = std::max(exp, need);
        }
        rec["uberg_exponent"] = {{"e", exp},
                                 {"ref", kRefUberg},
                                 {"scope", "finite-range witness only"}};
    }
    return rec;
}

json cmd_extgrowth(const RunConfig& cfg) {
    auto g = parse_group(cfg.group);
    if (g->order() > 60)
        throw std::invalid_argument("extgrowth: |G| <= 60 required");
    check_budget(cfg, 5 + static_cast<long long>(g->order()) * cfg.nmax,
                 "minimal-extension census of " + cfg.group);
    json rows = json::array();
    for (int n = 2; n <= cfg.nmax; ++n) {
        long long ab = 0, nonab = 0;
        for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
            long long pk = p;
            int k = 1;
            while (pk < n) {
                pk *= p;
                ++k;
            }
            if (pk == n) ab += static_cast<long long>(
                abelian_minimal_extensions(g, p, k).size());
        }
        for (const auto& info : simple_group_table())
            if (info.order == n)
                nonab += nonabelian_minimal_extension_count(g, info.construct());
        if (ab == 0 && nonab == 0) continue;
        rows.push_back({{"degree", n}, {"abelian", ab}, {"nonabelian", nonab}});
    }
    return make_record(cfg, "e_min_ab", kRefEmin, std::move(rows));
}

json cmd_freegrowth(const RunConfig& cfg) {
    json rows = json::array();
    for (int n = 1; n <= cfg.nmax; ++n) {
        mpz_class glo = gl_order(n, cfg.p);
        mpz_class work;
        mpz_pow_ui(work.get_mpz_t(), glo.get_mpz_t(), cfg.d);
        if (work > 100000000)
            throw BudgetRefusal("tuple census budget |GL|^d <= 10^8 violated at n = " +
                                std::to_string(n));
        check_budget(cfg, 1 + mpz_class(work / 20000).get_si(),
                     "tuple census at n = " + std::to_string(n));
        auto census = tuple_census(cfg.d, n, cfg.p);
        auto bounds = free_bound_check(census);
        rows.push_back({{"n", n},
                        {"total_tuples", census.total.get_str()},
                        {"irreducible_tuples", census.irreducible_tuples},
                        {"iso_classes", census.iso_classes},
                        {"cp_bound", bounds.cp_bound.get_str()},
                        {"parabolic_bound", bounds.eq2_bound.get_str()},
                        {"bounds_ok", bounds.ok},
                        {"accounting_ok", census.orbit_accounting && census.burnside_ok}});
    }
    return make_record(cfg, "census", kRefCensus, std::move(rows));
}

json cmd_probgen(const RunConfig& cfg) {
    auto g = parse_group(cfg.group);
    if (g->order() > 200)
        throw std::invalid_argument("probgen: |G| <= 200 required");
    check_budget(cfg, 5 + static_cast<long long>(g->order()) * g->order() / 100,
                 "stable-lattice analysis of " + cfg.group);
    // R = G itself, via the surjection onto the trivial group
    std::vector<int> all;
    for (int i = 0; i < g->order(); ++i) all.push_back(i);
    auto f = quotient(g, Subgroup{g, all}).proj;
    auto l = stable_lattice(f);
    json rows = json::array();
    for (int k = 1; k <= cfg.kmax; ++k) {
        auto exact = exact_gen_probability(l, k);
        auto mc = monte_carlo_gen_probability(f, k, 100000, cfg.seed);
        char est[32], se[32];
        std::snprintf(est, sizeof est, "%.6f", mc.estimate);
        std::snprintf(se, sizeof se, "%.6f", mc.stderr_est);
        rows.push_back({{"k", k},
                        {"p_exact", exact.get_str()},
                        {"p_mc", est},
                        {"mc_stderr", se},
                        {"mc_trials", mc.trials}});
    }
    return make_record(cfg, "p_exact", kRefPexact, std::move(rows));
}

json cmd_idealgrowth(const RunConfig& cfg) {
    auto g = parse_group(cfg.group);
    if (g->order() > 100)
        throw std::invalid_argument("idealgrowth: |G| <= 100 required");
    check_budget(cfg, 5 + static_cast<long long>(g->order()) * g->order() / 100,
                 "maximal-ideal census of " + cfg.group);
    auto census = ideal_census(g, cfg.p, cfg.nmax);
    json rows = json::array();
    for (int n = 1; n <= cfg.nmax; ++n)
        rows.push_back({{"n", n},
                        {"m_ideal", census.m[n - 1]},
                        {"r", census.r[n - 1]}});
    auto rec = make_record(cfg, "m_ideal", kRefIdeal, std::move(rows));
    rec["sandwich_ok"] = census.sandwich_ok;
    return rec;
}

int cmd_verify(const std::string& suite) {
    std::vector<std::string> suites;
    if (suite.empty())
        suites = verify_suite_names();
    else
        suites.push_back(suite);
    bool all_pass = true;
    json out = json::array();
    for (const auto& name : suites) {
        auto sr = run_verify_suite(name);  // throws invalid_argument if unknown
        json checks = json::array();
        for (const auto& c : sr.checks)
            checks.push_back({{"name", c.name},
                              {"ref", c.ref},
                              {"pass", c.pass},
                              {"detail", c.detail}});
        out.push_back({{"suite", sr.suite}, {"pass", sr.pass}, {"checks", checks}});
        if (!sr.pass) all_pass = false;
    }
    std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growth quantities for finite groups"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string suite;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--group", cfg.group, "group spec, e.g. S3 or S3xC2");
        sub->add_option("--p", cfg.p, "field characteristic");
        sub->add_option("--e", cfg.e, "field extension degree");
        sub->add_option("--nmax", cfg.nmax, "largest degree / dimension");
        sub->add_option("--kmax", cfg.kmax, "largest tuple length");
        sub->add_option("--d", cfg.d, "number of generators");
        sub->add_option("--seed", cfg.seed, "sampler seed");
        sub->add_option("--format", cfg.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--cache", cfg.cache_dir, "cache directory");
        sub->add_option("--budget-ms", cfg.budget_ms, "refuse runs estimated above this");
    };

    for (const char* name : {"repgrowth", "extgrowth", "freegrowth", "probgen",
                             "idealgrowth"})
        add_common(app.add_subcommand(name));
    auto* sv = app.add_subcommand("verify");
    add_common(sv);
    sv->add_option("suite", suite, "invariant suite name (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (const char* env = std::getenv("PGL_CACHE")) cfg.cache_dir = env;

    auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (cfg.command == "verify") {
            code = cmd_verify(suite);
        } else {
            auto cached = cache_load(cfg);
            json rec;
            if (cached) {
                rec = *cached;
            } else {
                if (cfg.command == "repgrowth") rec = cmd_repgrowth(cfg);
                else if (cfg.command == "extgrowth") rec = cmd_extgrowth(cfg);
                else if (cfg.command == "freegrowth") rec = cmd_freegrowth(cfg);
                else if (cfg.command == "probgen") rec = cmd_probgen(cfg);
                else rec = cmd_idealgrowth(cfg);
                cache_store(cfg, rec);
            }
            emit(cfg, rec);
        }
    } catch (const BudgetRefusal& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        if (msg.find("budget") != std::string::npos) {
            std::cerr << "budget refusal: " << msg << "\n";
            return 3;
        }
        std::cerr << "invalid input: " << msg << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "wall_ms=" << ms << "\n";
    return code;
}
