#pragma once

#include <atomic>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "kleincl/cl.hpp"

namespace kleincl {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchConfig {
    long long x = 1;
    int workers = 1;
    bool prune_class_balance = true;
    bool prune_disjointness = true;
    std::optional<std::size_t> max_solutions;
    unsigned long long node_budget = 200'000'000;
    std::optional<Bitset> restrict_to;  // candidate pool; whole table if absent
};

struct SearchStats {
    unsigned long long nodes = 0;
    unsigned long long pruned = 0;
    unsigned long long leaves_checked = 0;
};

namespace detail {

struct SearchContext {
    const KleinModel* M;
    SearchConfig cfg;
    std::size_t target, class_max;
    long long disj_target;             // (x-1) q
    std::vector<int> latin_suffix;     // Latins at index >= i
    std::vector<int> greek_suffix;
    std::vector<Bitset> tail_mask;     // indices >= i
};

/// DFS over ascending generator indices. Pruning uses only conditions that
/// are necessary for every completion, so no solution is lost.
inline void dfs(const SearchContext& ctx, std::vector<int>& chosen, std::vector<long long>& disj,
                int latin_cnt, int greek_cnt, std::size_t next, std::vector<CLCandidate>& out,
                std::atomic<unsigned long long>& nodes, SearchStats& stats, bool& stop) {
    const KleinModel& M = *ctx.M;
    if (stop) return;
    if (nodes.fetch_add(1, std::memory_order_relaxed) >= ctx.cfg.node_budget)
        throw BudgetExceeded("search exceeded the configured node budget");

    if (chosen.size() == ctx.target) {
        ++stats.leaves_checked;
        CLCandidate c(M);
        for (int g : chosen) c.members.set(g);
        if (check_disjointness(c).pass) {
            out.push_back(std::move(c));
            if (ctx.cfg.max_solutions && out.size() >= *ctx.cfg.max_solutions) stop = true;
        }
        return;
    }
    const std::size_t ngen = M.num_generators();
    const std::size_t missing = ctx.target - chosen.size();
    if (next + missing > ngen) return;

    for (std::size_t g = next; g + missing <= ngen; ++g) {
        if (ctx.cfg.restrict_to && !ctx.cfg.restrict_to->test(g)) continue;
        const bool latin = M.generators()[g].cls == GenClass::Latin;
        if (ctx.cfg.prune_class_balance) {
            if (latin && latin_cnt + 1 > static_cast<int>(ctx.class_max)) continue;
            if (!latin && greek_cnt + 1 > static_cast<int>(ctx.class_max)) continue;
            // Remaining supply of each class must suffice.
            int latin_left = ctx.latin_suffix[g + 1];
            int greek_left = ctx.greek_suffix[g + 1];
            int latin_need = static_cast<int>(ctx.class_max) - latin_cnt - (latin ? 1 : 0);
            int greek_need = static_cast<int>(ctx.class_max) - greek_cnt - (latin ? 0 : 1);
            if (latin_left < latin_need || greek_left < greek_need) {
                ++stats.pruned;
                continue;
            }
        }
        bool ok = true;
        if (ctx.cfg.prune_disjointness) {
            long long g_disj = 0;
            for (std::size_t i = 0; i < chosen.size() && ok; ++i) {
                bool dj = M.meet_dim(chosen[i], static_cast<int>(g)) == -1;
                long long d = disj[i] + (dj ? 1 : 0);
                if (dj) ++g_disj;
                if (d > ctx.disj_target) ok = false;
                // Feasibility: the missing members still to be picked must be
                // able to supply the remaining disjointness deficit.
                else if (d + static_cast<long long>(
                             M.disjoint_from(chosen[i]).count_and(ctx.tail_mask[g + 1])) <
                         ctx.disj_target)
                    ok = false;
            }
            if (ok && g_disj > ctx.disj_target) ok = false;
            if (ok && g_disj + static_cast<long long>(
                          M.disjoint_from(static_cast<int>(g)).count_and(ctx.tail_mask[g + 1])) <
                          ctx.disj_target)
                ok = false;
        }
        if (!ok) {
            ++stats.pruned;
            continue;
        }
        chosen.push_back(static_cast<int>(g));
        std::vector<long long> disj2 = disj;
        for (std::size_t i = 0; i + 1 < chosen.size(); ++i)
            if (M.meet_dim(chosen[i], static_cast<int>(g)) == -1) ++disj2[i];
        long long own = 0;
        for (std::size_t i = 0; i + 1 < chosen.size(); ++i)
            if (M.meet_dim(chosen[i], static_cast<int>(g)) == -1) ++own;
        disj2.push_back(own);
        dfs(ctx, chosen, disj2, latin_cnt + (latin ? 1 : 0), greek_cnt + (latin ? 0 : 1), g + 1,
            out, nodes, stats, stop);
        chosen.pop_back();
        if (stop) return;
    }
}

}  // namespace detail

/// All CL sets of parameter x, as subsets of the generator table, in
/// canonical (lexicographic index) order. Sound pruning; every returned
/// candidate passes check_disjointness.
inline std::vector<CLCandidate> exhaustive_search(const KleinModel& M, const SearchConfig& cfg,
                                                  SearchStats* stats_out = nullptr) {
    const long long q = M.field().order();
    detail::SearchContext ctx;
    ctx.M = &M;
    ctx.cfg = cfg;
    ctx.target = static_cast<std::size_t>(2 * cfg.x * (q + 1));
    ctx.class_max = static_cast<std::size_t>(cfg.x * (q + 1));
    ctx.disj_target = (cfg.x - 1) * q;
    if (ctx.target > M.num_generators())
        throw std::invalid_argument("2x(q+1) exceeds the number of generators");

    const std::size_t ngen = M.num_generators();
    ctx.latin_suffix.assign(ngen + 1, 0);
    ctx.greek_suffix.assign(ngen + 1, 0);
    for (std::size_t i = ngen; i-- > 0;) {
        bool latin = M.generators()[i].cls == GenClass::Latin;
        ctx.latin_suffix[i] = ctx.latin_suffix[i + 1] + (latin ? 1 : 0);
        ctx.greek_suffix[i] = ctx.greek_suffix[i + 1] + (latin ? 0 : 1);
    }
    ctx.tail_mask.assign(ngen + 1, Bitset(ngen));
    for (std::size_t i = ngen; i-- > 0;) {
        ctx.tail_mask[i] = ctx.tail_mask[i + 1];
        ctx.tail_mask[i].set(i);
    }

    std::atomic<unsigned long long> nodes{0};
    if (cfg.x == 0) {
        CLCandidate empty(M);
        return {empty};
    }

    const int workers = std::max(1, cfg.workers);
    std::vector<std::vector<CLCandidate>> slot(ngen);
    std::vector<SearchStats> wstats(workers);
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&](int wid) {
        try {
            while (true) {
                std::size_t g0 = cursor.fetch_add(1);
                if (g0 >= ngen) break;
                if (g0 + ctx.target > ngen) continue;
                if (ctx.cfg.restrict_to && !ctx.cfg.restrict_to->test(g0)) continue;
                std::vector<int> chosen{static_cast<int>(g0)};
                std::vector<long long> disj{0};
                bool latin = M.generators()[g0].cls == GenClass::Latin;
                bool stop = false;
                detail::dfs(ctx, chosen, disj, latin ? 1 : 0, latin ? 0 : 1, g0 + 1, slot[g0],
                            nodes, wstats[wid], stop);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(error_mu);
            if (!error) error = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    std::vector<CLCandidate> out;
    for (auto& s : slot)
        for (auto& c : s) out.push_back(std::move(c));
    if (cfg.max_solutions && out.size() > *cfg.max_solutions) out.resize(*cfg.max_solutions);
    if (stats_out) {
        for (const auto& ws : wstats) {
            stats_out->nodes += ws.nodes;
            stats_out->pruned += ws.pruned;
            stats_out->leaves_checked += ws.leaves_checked;
        }
        stats_out->nodes = nodes.load();
    }
    return out;
}

/// Greedy pencil decomposition: repeatedly remove the pencil of the least
/// quadric point whose whole pencil is contained in the candidate. Returns
/// the vertex list iff the residue empties, otherwise nothing.
inline std::optional<std::vector<int>> pencil_decomposition(const CLCandidate& c) {
    const KleinModel& M = *c.model;
    Bitset rest = c.members;
    std::vector<int> vertices;
    while (rest.any()) {
        bool removed = false;
        for (std::size_t p = 0; p < M.quadric_points().size() && !removed; ++p) {
            const Bitset& pen = M.point_pencil(static_cast<int>(p));
            if (pen.subset_of(rest)) {
                rest -= pen;
                vertices.push_back(static_cast<int>(p));
                removed = true;
            }
        }
        if (!removed) return std::nullopt;
    }
    return vertices;
}

}  // namespace kleincl
