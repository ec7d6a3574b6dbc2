// kleincl: construct, verify, search and classify Cameron-Liebler sets of
// generators on the Klein quadric Q+(5,q).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "kleincl/constructions.hpp"
#include "kleincl/document.hpp"
#include "kleincl/search.hpp"

namespace {

using namespace kleincl;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct Gates {
    std::size_t max_points = 200000;
    unsigned long long trial_budget = 10000;
    unsigned long long node_budget = 200'000'000;
};

Gates read_gates() {
    Gates g;
    if (const char* env = std::getenv("KLEINCL_BUDGET")) {
        unsigned long long v = std::stoull(env);
        g.max_points = static_cast<std::size_t>(v);
        g.trial_budget = v;
        g.node_budget = v;
    }
    return g;
}

/// Decompose a prime power q = p^h; throws if q is not one.
std::pair<unsigned, unsigned> prime_power(unsigned q) {
    for (unsigned p = 2; p <= q; ++p) {
        if (!kleincl::detail::is_prime(p)) continue;
        if (q % p) continue;
        unsigned h = 0, v = q;
        while (v % p == 0) {
            v /= p;
            ++h;
        }
        if (v != 1) break;
        return {p, h};
    }
    throw std::invalid_argument("--q: " + std::to_string(q) + " is not a prime power");
}

struct Model {
    std::unique_ptr<Field> field;
    std::unique_ptr<Geometry> geom;
    std::unique_ptr<KleinModel> klein;
};

Model build_model(unsigned p, unsigned h, unsigned t, const Gates& gates) {
    Model m;
    m.field = std::make_unique<Field>(p, h, t);
    m.geom = std::make_unique<Geometry>(*m.field, gates.max_points);
    m.klein = std::make_unique<KleinModel>(*m.geom);
    return m;
}

void write_candidate(const std::string& path, const CLCandidate& c, json provenance) {
    SetDocument d = make_document(c, std::move(provenance));
    save_document(path, to_json(d, &c));
}

int cmd_construct(const std::string& kind, unsigned q, unsigned t, long long x, unsigned seed,
                  const std::string& out) {
    Gates gates = read_gates();
    auto [p, h] = prime_power(q);

    json prov = {{"construction", kind}, {"q", q}, {"seed", seed}};
    CLCandidate cand;
    Model m;

    if (kind == "pencils") {
        m = build_model(p, h, 1, gates);
        cand = CLCandidate(*m.klein);
        std::vector<int> vertices;
        for (std::size_t v = 0; v < m.klein->quadric_points().size() &&
                                static_cast<long long>(vertices.size()) < x; ++v) {
            bool clash = false;
            for (int u : vertices)
                if (m.klein->point_pencil(static_cast<int>(v)).intersects(m.klein->point_pencil(u)))
                    clash = true;
            if (!clash) {
                vertices.push_back(static_cast<int>(v));
                cand.members |= m.klein->point_pencil(static_cast<int>(v));
            }
        }
        if (static_cast<long long>(vertices.size()) < x)
            throw std::invalid_argument("--x: cannot place " + std::to_string(x) +
                                        " pairwise non-collinear vertices");
        prov["x"] = x;
    } else if (kind == "lines") {
        m = build_model(p, h, 1, gates);
        PartialSpread s = greedy_partial_spread(*m.geom, seed, static_cast<std::size_t>(x));
        if (static_cast<long long>(s.lines.size()) < x)
            throw std::invalid_argument("--x: greedy search found only " +
                                        std::to_string(s.lines.size()) + " disjoint lines");
        cand = from_pg3(*m.klein, from_disjoint_lines(*m.geom, s.lines));
        prov["x"] = x;
    } else if (kind == "spread-holes") {
        m = build_model(p, h, 1, gates);
        PartialSpread s = greedy_partial_spread(*m.geom, seed);
        cand = from_pg3(*m.klein, holes_construction(*m.geom, s));
        prov["spread_size"] = s.lines.size();
        prov["spread_maximal"] = (s.maximality == Maximality::Maximal);
    } else if (kind == "baer") {
        m = build_model(p, h, 2, gates);
        cand = from_pg3(*m.klein, baer_construction(*m.geom));
        prov["t"] = 2;
    } else if (kind == "projected") {
        m = build_model(p, h, 3, gates);
        ProjectedResult r = projected_pg5_construction(*m.geom, seed, gates.trial_budget);
        cand = from_pg3(*m.klein, r.system);
        prov["t"] = 3;
        prov["trials"] = r.trials;
    } else if (kind == "linear-set") {
        if (t < 2) throw std::invalid_argument("--t: linear-set construction needs t >= 2");
        m = build_model(p, h, t, gates);
        LinearSetSpec spec = (t == 2) ? canonical_subgeometry_spec(*m.field)
                                      : find_scattered_spec(*m.field, seed, gates.trial_budget);
        cand = from_pg3(*m.klein, linear_set_construction(*m.geom, spec));
        prov["t"] = t;
    } else {
        throw std::invalid_argument("unknown construction: " + kind);
    }

    write_candidate(out, cand, prov);
    std::cout << "wrote " << out << " (|L| = " << cand.size() << ", x = " << parameter_of(cand)
              << ")\n";
    return kExitOk;
}

int cmd_verify(const std::string& in, const std::string& check, bool exact) {
    Gates gates = read_gates();
    SetDocument d = document_from_json(load_json(in));
    Model m = build_model(d.p, d.h, d.t, gates);
    CLCandidate c = realize(d, *m.klein);

    ImageMode mode = exact ? ImageMode::Exact : ImageMode::Auto;
    VerificationReport rep;
    if (check == "disjoint" || check == "all") rep.checks.push_back(check_disjointness(c));
    if (check == "intersections" || check == "all") rep.checks.push_back(check_intersection_numbers(c));
    if (check == "image" || check == "all") rep.checks.push_back(check_image(c, mode));
    if (check == "property31" || check == "all")
        rep.checks.push_back(check_property31(to_pg3(c), parameter_of(c)));
    if (rep.checks.empty()) throw std::invalid_argument("--check: unknown check " + check);

    std::cout << report_to_json(rep).dump(2) << "\n" << report_to_csv(rep);
    return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_search(unsigned q, long long x, int workers, const std::string& out_dir) {
    Gates gates = read_gates();
    auto [p, h] = prime_power(q);
    Model m = build_model(p, h, 1, gates);

    SearchConfig cfg;
    cfg.x = x;
    cfg.workers = workers;
    cfg.node_budget = gates.node_budget;
    SearchStats stats;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CLCandidate> sols = exhaustive_search(*m.klein, cfg, &stats);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < sols.size(); ++i) {
        json prov = {{"construction", "search"}, {"q", q}, {"x", x}, {"solution_index", i}};
        write_candidate(out_dir + "/solution_" + std::to_string(i) + ".json", sols[i], prov);
    }
    json summary = {{"q", q},
                    {"x", x},
                    {"solutions", sols.size()},
                    {"wall_seconds", secs},
                    {"nodes", stats.nodes},
                    {"pruned", stats.pruned},
                    {"leaves_checked", stats.leaves_checked}};
    save_document(out_dir + "/summary.json", summary);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_decompose(const std::string& in) {
    Gates gates = read_gates();
    SetDocument d = document_from_json(load_json(in));
    Model m = build_model(d.p, d.h, d.t, gates);
    CLCandidate c = realize(d, *m.klein);
    auto dec = pencil_decomposition(c);
    json j;
    if (dec) {
        j["decomposable"] = true;
        json verts = json::array();
        for (int v : *dec) {
            const Vec& pt = m.klein->quadric_points()[v];
            verts.push_back({{"index", v}, {"point", std::vector<Elem>(pt.begin(), pt.end())}});
        }
        j["vertices"] = verts;
    } else {
        j["decomposable"] = false;
    }
    std::cout << j.dump(2) << "\n";
    return dec ? kExitOk : kExitCheckFailed;
}

int cmd_enumerate(unsigned q) {
    Gates gates = read_gates();
    auto [p, h] = prime_power(q);
    Model m = build_model(p, h, 1, gates);
    json j = {{"q", q},
              {"pg3_points", m.geom->points.size()},
              {"pg3_lines", m.geom->lines.size()},
              {"pg3_planes", m.geom->planes.size()},
              {"quadric_points", m.klein->quadric_points().size()},
              {"generators", m.klein->num_generators()},
              {"pencil_size", 2 * (q + 1)}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cameron-Liebler sets of generators on the Klein quadric Q+(5,q)"};
    app.require_subcommand(1);

    unsigned q = 2, t = 2, seed = 0;
    long long x = 1;
    int workers = 1;
    std::string kind, in_file, out_file = "out.json", out_dir = "search_out", check = "all";
    bool exact = false;

    auto* construct = app.add_subcommand("construct", "build a Cameron-Liebler set");
    construct->add_option("kind", kind, "pencils|lines|spread-holes|baer|projected|linear-set")
        ->required();
    construct->add_option("--q", q, "field order (prime power)")->required();
    construct->add_option("--t", t, "tower extension degree (linear-set)");
    construct->add_option("--x", x, "parameter x");
    construct->add_option("--seed", seed, "random seed (0 = canonical order)");
    construct->add_option("--out", out_file, "output JSON file");

    auto* verify = app.add_subcommand("verify", "verify a stored set");
    verify->add_option("--in", in_file, "input JSON file")->required();
    verify->add_option("--check", check, "disjoint|intersections|image|property31|all");
    verify->add_flag("--exact", exact, "force exact rational elimination for the image check");

    auto* search = app.add_subcommand("search", "exhaustive classification search");
    search->add_option("--q", q, "field order (prime power)")->required();
    search->add_option("--x", x, "parameter x")->required();
    search->add_option("--workers", workers, "worker thread count");
    search->add_option("--out", out_dir, "output directory");

    auto* decompose = app.add_subcommand("decompose", "pencil decomposition of a stored set");
    decompose->add_option("--in", in_file, "input JSON file")->required();

    auto* enumerate = app.add_subcommand("enumerate", "print geometry cardinalities");
    enumerate->add_option("--q", q, "field order (prime power)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (construct->parsed()) return cmd_construct(kind, q, t, x, seed, out_file);
        if (verify->parsed()) return cmd_verify(in_file, check, exact);
        if (search->parsed()) return cmd_search(q, x, workers, out_dir);
        if (decompose->parsed()) return cmd_decompose(in_file);
        if (enumerate->parsed()) return cmd_enumerate(q);
    } catch (const kleincl::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        return msg.find("budget") != std::string::npos ? kExitBudget : kExitBadInput;
    }
    return kExitBadInput;
}
