#include "clusterforge/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "clusterforge/clusters.hpp"

namespace clusterforge {

std::string to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::cluster_free: return "cluster_free";
        case SearchMode::simple_cluster_free: return "simple_cluster_free";
        case SearchMode::weighted: return "weighted";
    }
    return "unknown";
}

bool mode_regime_ok(const Params& params, SearchMode mode) {
    switch (mode) {
        case SearchMode::cluster_free: return params.cluster_regime_ok();
        case SearchMode::simple_cluster_free: return params.simple_bound_regime_ok();
        case SearchMode::weighted: return params.weighted_regime_ok();
    }
    return false;
}

long long mode_expected_optimum(const Params& params, SearchMode mode) {
    if (mode == SearchMode::weighted) return params.k * binom(params.n, params.k);
    return binom(params.n - 1, params.k - 1);
}

namespace {

constexpr int max_universe = 256;
constexpr int universe_words = max_universe / 64;

struct WideMask {
    std::array<std::uint64_t, universe_words> w{};

    void set(int i) { w[static_cast<size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
    bool test(int i) const {
        return (w[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u;
    }
    WideMask& operator|=(const WideMask& o) {
        for (int i = 0; i < universe_words; ++i) w[static_cast<size_t>(i)] |= o.w[static_cast<size_t>(i)];
        return *this;
    }
    friend WideMask operator&(const WideMask& a, const WideMask& b) {
        WideMask r;
        for (int i = 0; i < universe_words; ++i)
            r.w[static_cast<size_t>(i)] = a.w[static_cast<size_t>(i)] & b.w[static_cast<size_t>(i)];
        return r;
    }
    WideMask minus(const WideMask& o) const {
        WideMask r;
        for (int i = 0; i < universe_words; ++i)
            r.w[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] & ~o.w[static_cast<size_t>(i)];
        return r;
    }
    void clear_through(int i) {  // drop all bits <= i
        int word = i >> 6;
        for (int j = 0; j < word; ++j) w[static_cast<size_t>(j)] = 0;
        int rem = (i & 63) + 1;
        if (rem == 64)
            w[static_cast<size_t>(word)] = 0;
        else
            w[static_cast<size_t>(word)] &= ~((std::uint64_t{1} << rem) - 1);
    }
    int count() const {
        int c = 0;
        for (std::uint64_t word : w) c += std::popcount(word);
        return c;
    }
    bool any() const {
        for (std::uint64_t word : w)
            if (word) return true;
        return false;
    }
    template <typename Fn>
    void for_each(Fn&& fn) const {  // ascending bit order
        for (int i = 0; i < universe_words; ++i) {
            std::uint64_t word = w[static_cast<size_t>(i)];
            while (word) {
                fn((i << 6) + std::countr_zero(word));
                word &= word - 1;
            }
        }
    }
};

// Everything one exact search needs: the k-set universe in canonical
// order, the mode's forbidden-tuple predicate, completion tables for
// d <= 3, and the shared budget state.
struct Engine {
    Params params;
    SearchMode mode;
    int d;
    int universe_size = 0;
    std::vector<KSet> universe;
    bool simple_pred = false;

    std::vector<WideMask> comp1;  // d = 2: partners completing a cluster with i
    std::vector<WideMask> comp2;  // d = 3: partners completing with the pair (i,j)

    std::atomic<long long> nodes{0};
    std::atomic<bool> tripped{false};
    long long max_nodes = 0;
    std::chrono::steady_clock::time_point deadline;

    explicit Engine(const SearchProblem& problem)
        : params(problem.params), mode(problem.mode), d(problem.params.d) {
        simple_pred = (mode == SearchMode::simple_cluster_free);
        long long count = binom(params.n, params.k);
        if (count > max_universe)
            throw resource_guard_error("exact search needs a k-set universe of at most " +
                                       std::to_string(max_universe) + " sets, got " +
                                       std::to_string(count));
        universe = all_ksets(params.n, params.k);
        universe_size = static_cast<int>(universe.size());
        max_nodes = problem.budget.max_nodes;
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(problem.budget.max_seconds));
        build_tables();
    }

    bool forbidden(const std::vector<KSet>& sets) const {
        if (!simple_pred) {
            KSet uni{0};
            KSet inter{~std::uint64_t{0}};
            for (KSet s : sets) {
                uni = uni | s;
                inter = inter & s;
            }
            return uni.size() <= 2 * params.k && inter.empty();
        }
        return as_simple_cluster(sets, params).has_value();
    }

    void build_tables() {
        if (d == 2) {
            // In both modes a forbidden pair is exactly a disjoint pair.
            comp1.assign(static_cast<size_t>(universe_size), WideMask{});
            for (int i = 0; i < universe_size; ++i)
                for (int j = i + 1; j < universe_size; ++j)
                    if ((universe[static_cast<size_t>(i)] & universe[static_cast<size_t>(j)])
                            .empty()) {
                        comp1[static_cast<size_t>(i)].set(j);
                        comp1[static_cast<size_t>(j)].set(i);
                    }
        } else if (d == 3) {
            comp2.assign(static_cast<size_t>(universe_size) * static_cast<size_t>(universe_size),
                         WideMask{});
            std::vector<KSet> triple(3);
            for (int i = 0; i < universe_size; ++i)
                for (int j = i + 1; j < universe_size; ++j) {
                    KSet uij = universe[static_cast<size_t>(i)] | universe[static_cast<size_t>(j)];
                    if (uij.size() > 2 * params.k && !simple_pred) continue;
                    for (int c = j + 1; c < universe_size; ++c) {
                        triple[0] = universe[static_cast<size_t>(i)];
                        triple[1] = universe[static_cast<size_t>(j)];
                        triple[2] = universe[static_cast<size_t>(c)];
                        if (!forbidden(triple)) continue;
                        pair_mask(i, j).set(c);
                        pair_mask(i, c).set(j);
                        pair_mask(j, c).set(i);
                    }
                }
        }
    }

    WideMask& pair_mask(int a, int b) {
        if (a > b) std::swap(a, b);
        return comp2[static_cast<size_t>(a) * static_cast<size_t>(universe_size) +
                     static_cast<size_t>(b)];
    }
    const WideMask& pair_mask(int a, int b) const {
        if (a > b) std::swap(a, b);
        return comp2[static_cast<size_t>(a) * static_cast<size_t>(universe_size) +
                     static_cast<size_t>(b)];
    }

    // Mask of candidates c for which chosen ∪ {c} contains a forbidden
    // d-tuple through c and the just-added set `added`.
    WideMask block_delta(const std::vector<int>& chosen, int added) const {
        WideMask delta;
        if (d == 2) {
            delta = comp1[static_cast<size_t>(added)];
        } else if (d == 3) {
            for (int p : chosen)
                if (p != added) delta |= pair_mask(p, added);
        } else {
            // Generic path: for each (d-2)-subset of the other chosen sets,
            // scan all candidates against the forbidden predicate.
            std::vector<int> others;
            for (int p : chosen)
                if (p != added) others.push_back(p);
            std::vector<int> pick;
            std::vector<KSet> sets(static_cast<size_t>(d));
            auto rec = [&](auto&& self, size_t from) -> void {
                if (static_cast<int>(pick.size()) == d - 2) {
                    for (int i = 0; i < d - 2; ++i)
                        sets[static_cast<size_t>(i)] =
                            universe[static_cast<size_t>(pick[static_cast<size_t>(i)])];
                    sets[static_cast<size_t>(d - 2)] = universe[static_cast<size_t>(added)];
                    for (int c = 0; c < universe_size; ++c) {
                        if (c == added || delta.test(c)) continue;
                        bool in_pick = false;
                        for (int p : pick)
                            if (p == c) in_pick = true;
                        if (in_pick) continue;
                        sets[static_cast<size_t>(d - 1)] = universe[static_cast<size_t>(c)];
                        if (forbidden(sets)) delta.set(c);
                    }
                    return;
                }
                for (size_t i = from; i < others.size(); ++i) {
                    pick.push_back(others[i]);
                    self(self, i + 1);
                    pick.pop_back();
                }
            };
            rec(rec, 0);
        }
        return delta;
    }

    // Fold a batch of visited nodes into the budget. Returns false once
    // the budget trips; callers batch to keep the shared counter cold.
    bool consume(long long batch) {
        long long seen = nodes.fetch_add(batch, std::memory_order_relaxed) + batch;
        if (seen > max_nodes || std::chrono::steady_clock::now() > deadline) {
            tripped.store(true, std::memory_order_relaxed);
            return false;
        }
        return !tripped.load(std::memory_order_relaxed);
    }

    Family family_of(const std::vector<int>& chosen) const {
        std::vector<KSet> members;
        members.reserve(chosen.size());
        for (int i : chosen) members.push_back(universe[static_cast<size_t>(i)]);
        std::sort(members.begin(), members.end());
        return Family{params, std::move(members)};
    }

    Family family_of_mask(const WideMask& m) const {
        std::vector<KSet> members;
        m.for_each([&](int i) { members.push_back(universe[static_cast<size_t>(i)]); });
        return Family{params, std::move(members)};
    }
};

// Weighted-mode bookkeeping: which chosen sets currently lie in some
// forbidden tuple (the marked subfamily), with an undo trail.
struct MarkState {
    WideMask chosen_mask;
    WideMask marked;
    int marked_count = 0;
    std::vector<int> trail;

    int mark(int i) {
        if (marked.test(i)) return 0;
        marked.set(i);
        ++marked_count;
        trail.push_back(i);
        return 1;
    }
    void rollback(size_t to) {
        while (trail.size() > to) {
            marked.w[static_cast<size_t>(trail.back() >> 6)] &=
                ~(std::uint64_t{1} << (trail.back() & 63));
            --marked_count;
            trail.pop_back();
        }
    }
};

struct CensusAccumulator {
    long long count = 0;
    ExtremalCensus census;
    std::optional<Family> least_star, least_full, least_other;

    void add(const Family& f) {
        ++count;
        auto shape = classify_family_shape(f);
        auto keep_min = [&](std::optional<Family>& slot) {
            if (!slot || f.members < slot->members) slot = f;
        };
        switch (shape.cls) {
            case ExtremalClass::star:
                ++census.stars;
                keep_min(least_star);
                break;
            case ExtremalClass::full:
                ++census.full;
                keep_min(least_full);
                break;
            case ExtremalClass::other:
                ++census.other;
                keep_min(least_other);
                break;
        }
    }
    void merge(const CensusAccumulator& o) {
        count += o.count;
        census.stars += o.census.stars;
        census.full += o.census.full;
        census.other += o.census.other;
        auto keep_min = [](std::optional<Family>& slot, const std::optional<Family>& other) {
            if (other && (!slot || other->members < slot->members)) slot = *other;
        };
        keep_min(least_star, o.least_star);
        keep_min(least_full, o.least_full);
        keep_min(least_other, o.least_other);
    }
    std::vector<Family> representatives(int cap) const {
        std::vector<Family> reps;
        for (const auto& slot : {least_star, least_full, least_other})
            if (slot) reps.push_back(*slot);
        std::sort(reps.begin(), reps.end(),
                  [](const Family& a, const Family& b) { return a.members < b.members; });
        if (static_cast<int>(reps.size()) > cap)
            reps.erase(reps.begin() + cap, reps.end());
        return reps;
    }
};

// Maximum-size branch and bound for the freeness modes. Branches on the
// least chosen candidate; `blocked` accumulates every candidate whose
// addition would complete a forbidden d-tuple with the chosen prefix.
constexpr long long node_batch = 256;

struct FreeSearch {
    Engine& eng;
    std::atomic<long long>& best;
    // Phase 2 (census) runs with `target` set: every free family of that
    // size is recorded, and bounds prune strictly below it.
    std::optional<long long> target;
    CensusAccumulator acc;
    long long pending_nodes = 0;
    bool dead = false;

    FreeSearch(Engine& e, std::atomic<long long>& b) : eng(e), best(b) {}

    bool tick() {
        if (dead) return false;
        if (++pending_nodes >= node_batch) {
            if (!eng.consume(pending_nodes)) dead = true;
            pending_nodes = 0;
        }
        return !dead;
    }

    // Fold the unflushed node count into the budget at task end, so small
    // subtrees are still accounted for.
    void flush() {
        if (pending_nodes > 0) eng.consume(pending_nodes);
        pending_nodes = 0;
    }

    void rec(std::vector<int>& chosen, const WideMask& avail) {
        if (!tick()) return;
        long long size = static_cast<long long>(chosen.size());
        if (target) {
            if (size == *target) {
                acc.add(eng.family_of(chosen));
                return;  // free supersets would beat the optimum: impossible
            }
        } else {
            long long prev = best.load(std::memory_order_relaxed);
            while (size > prev && !best.compare_exchange_weak(prev, size)) {
            }
        }
        int remaining = avail.count();
        for (int word = 0; word < universe_words; ++word) {
            std::uint64_t bits = avail.w[static_cast<size_t>(word)];
            while (bits) {
                int c = (word << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                long long bound = size + remaining;
                if (target ? bound < *target : bound <= best.load(std::memory_order_relaxed))
                    return;
                chosen.push_back(c);
                WideMask child = avail;
                child.clear_through(c);
                child = child.minus(eng.block_delta(chosen, c));
                rec(chosen, child);
                chosen.pop_back();
                --remaining;
                if (dead) return;
            }
        }
    }
};

// Weighted branch and bound: maximize n|F| - (n-k)|marked(F)| where
// marked(F) is the subfamily lying in some forbidden d-tuple. Adding sets
// never unmarks anything, which gives the upper bound below.
struct WeightedSearch {
    Engine& eng;
    std::atomic<long long>& best;
    std::optional<long long> target;
    CensusAccumulator acc;
    long long pending_nodes = 0;
    bool dead = false;

    WeightedSearch(Engine& e, std::atomic<long long>& b) : eng(e), best(b) {}

    bool tick() {
        if (dead) return false;
        if (++pending_nodes >= node_batch) {
            if (!eng.consume(pending_nodes)) dead = true;
            pending_nodes = 0;
        }
        return !dead;
    }

    void flush() {
        if (pending_nodes > 0) eng.consume(pending_nodes);
        pending_nodes = 0;
    }

    long long value(long long size, int marked) const {
        return static_cast<long long>(eng.params.n) * size -
               static_cast<long long>(eng.params.n - eng.params.k) * marked;
    }

    // Mark every set pulled into a forbidden tuple by adding `added`.
    void apply_marks(std::vector<int>& chosen, int added, MarkState& st) {
        if (eng.d == 2) {
            WideMask hits = eng.comp1[static_cast<size_t>(added)] & st.chosen_mask;
            if (hits.any()) {
                st.mark(added);
                hits.for_each([&](int p) { st.mark(p); });
            }
        } else if (eng.d == 3) {
            for (int p : chosen) {
                if (p == added) continue;
                WideMask hits = eng.pair_mask(p, added) & st.chosen_mask;
                if (hits.any()) {
                    st.mark(added);
                    st.mark(p);
                    hits.for_each([&](int q) { st.mark(q); });
                }
            }
        } else {
            // Generic path: scan (d-1)-subsets of the prior chosen sets.
            std::vector<int> others;
            for (int p : chosen)
                if (p != added) others.push_back(p);
            std::vector<int> pick;
            std::vector<KSet> sets(static_cast<size_t>(eng.d));
            auto rec = [&](auto&& self, size_t from) -> void {
                if (static_cast<int>(pick.size()) == eng.d - 1) {
                    for (int i = 0; i < eng.d - 1; ++i)
                        sets[static_cast<size_t>(i)] =
                            eng.universe[static_cast<size_t>(pick[static_cast<size_t>(i)])];
                    sets[static_cast<size_t>(eng.d - 1)] =
                        eng.universe[static_cast<size_t>(added)];
                    if (eng.forbidden(sets)) {
                        st.mark(added);
                        for (int p : pick) st.mark(p);
                    }
                    return;
                }
                for (size_t i = from; i < others.size(); ++i) {
                    pick.push_back(others[i]);
                    self(self, i + 1);
                    pick.pop_back();
                }
            };
            rec(rec, 0);
        }
    }

    void rec(std::vector<int>& chosen, const WideMask& avail, MarkState& st) {
        if (!tick()) return;
        long long size = static_cast<long long>(chosen.size());
        long long here = value(size, st.marked_count);
        if (target) {
            if (here == *target) acc.add(eng.family_of(chosen));
        } else {
            long long prev = best.load(std::memory_order_relaxed);
            while (here > prev && !best.compare_exchange_weak(prev, here)) {
            }
        }
        int remaining = avail.count();
        for (int word = 0; word < universe_words; ++word) {
            std::uint64_t bits = avail.w[static_cast<size_t>(word)];
            while (bits) {
                int c = (word << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                long long bound = value(size + remaining, st.marked_count);
                if (target ? bound < *target : bound <= best.load(std::memory_order_relaxed))
                    return;
                chosen.push_back(c);
                st.chosen_mask.set(c);
                size_t mark_point = st.trail.size();
                apply_marks(chosen, c, st);
                WideMask child = avail;
                child.clear_through(c);
                rec(chosen, child, st);
                st.rollback(mark_point);
                st.chosen_mask.w[static_cast<size_t>(c >> 6)] &= ~(std::uint64_t{1} << (c & 63));
                chosen.pop_back();
                --remaining;
                if (dead) return;
            }
        }
    }
};

WideMask full_mask(int universe_size) {
    WideMask m;
    for (int i = 0; i < universe_size; ++i) m.set(i);
    return m;
}

int clamp_threads(int threads) { return std::max(1, std::min(threads, 64)); }

// Top-level branch descriptor for parallel exploration.
struct Task {
    std::vector<int> chosen;
    WideMask avail;
    MarkState marks;  // weighted mode only
};

template <typename MakeSearch>
void run_tasks(std::vector<Task>& tasks, int threads, MakeSearch&& make_search) {
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) break;
            make_search(tasks[idx]);
        }
    };
    int nthreads = clamp_threads(threads);
    if (nthreads == 1 || tasks.size() <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

void check_gate(const SearchProblem& problem, SearchMode expected_kind) {
    bool mode_matches = (expected_kind == SearchMode::weighted)
                            ? (problem.mode == SearchMode::weighted)
                            : (problem.mode != SearchMode::weighted);
    if (!mode_matches) throw std::invalid_argument("search mode does not fit this operation");
    if (!problem.force && !mode_regime_ok(problem.params, problem.mode))
        throw std::invalid_argument(
            "parameters lie outside the validity regime for mode " + to_string(problem.mode) +
            "; pass force to explore anyway");
}

SearchResult assemble(Engine& eng, long long optimum, const CensusAccumulator& acc,
                      int max_representatives) {
    SearchResult result;
    result.optimum = optimum;
    result.exhausted = !eng.tripped.load();
    if (result.exhausted) {
        result.extremal_count = acc.count;
        result.census = acc.census;
        result.representatives = acc.representatives(max_representatives);
    }
    return result;
}

}  // namespace

SearchResult max_cluster_free(const SearchProblem& problem) {
    check_gate(problem, SearchMode::cluster_free);
    Engine eng(problem);
    std::atomic<long long> best{1};  // a single set is always free (d >= 2)

    // Phase 1: the optimum. Some optimum family contains the least k-set
    // (relabel any member onto [1,k]), so the root pins index 0.
    {
        std::vector<int> root{0};
        WideMask avail = full_mask(eng.universe_size);
        avail.clear_through(0);
        avail = avail.minus(eng.block_delta(root, 0));
        std::vector<Task> tasks;
        std::vector<int> order;
        avail.for_each([&](int c) { order.push_back(c); });
        for (size_t idx = 0; idx < order.size(); ++idx) {
            int c = order[idx];
            Task t;
            t.chosen = {0, c};
            WideMask child = avail;
            child.clear_through(c);
            t.avail = child.minus(eng.block_delta(t.chosen, c));
            tasks.push_back(std::move(t));
        }
        run_tasks(tasks, problem.threads, [&](Task& t) {
            FreeSearch search(eng, best);
            search.rec(t.chosen, t.avail);
            search.flush();
        });
    }
    long long optimum = best.load();
    CensusAccumulator acc;
    if (!eng.tripped.load()) {
        // Phase 2: census of every free family of optimum size, without
        // the root pinning (exact counts need all of them).
        std::vector<Task> tasks;
        for (int c = 0; c < eng.universe_size; ++c) {
            Task t;
            t.chosen = {c};
            WideMask avail = full_mask(eng.universe_size);
            avail.clear_through(c);
            t.avail = avail.minus(eng.block_delta(t.chosen, c));
            tasks.push_back(std::move(t));
        }
        std::vector<CensusAccumulator> results(tasks.size());
        std::atomic<size_t> slot{0};
        run_tasks(tasks, problem.threads, [&](Task& t) {
            FreeSearch search(eng, best);
            search.target = optimum;
            search.rec(t.chosen, t.avail);
            search.flush();
            results[slot.fetch_add(1)] = std::move(search.acc);
        });
        if (optimum == 0) acc.add(Family{eng.params, {}});
        for (const auto& r : results) acc.merge(r);
    }
    return assemble(eng, optimum, acc, problem.max_representatives);
}

SearchResult max_weighted(const SearchProblem& problem) {
    check_gate(problem, SearchMode::weighted);
    Engine eng(problem);
    std::atomic<long long> best{0};  // the empty family scores zero

    {
        std::vector<int> root{0};
        MarkState marks;
        marks.chosen_mask.set(0);
        WideMask avail = full_mask(eng.universe_size);
        avail.clear_through(0);
        std::vector<Task> tasks;
        {
            Task t;
            t.chosen = root;
            t.avail = avail;
            t.marks = marks;
            tasks.push_back(std::move(t));
        }
        run_tasks(tasks, problem.threads, [&](Task& t) {
            WeightedSearch search(eng, best);
            search.rec(t.chosen, t.avail, t.marks);
            search.flush();
        });
    }
    long long optimum = best.load();
    CensusAccumulator acc;
    if (!eng.tripped.load()) {
        std::vector<Task> tasks;
        for (int c = 0; c < eng.universe_size; ++c) {
            Task t;
            t.chosen = {c};
            t.marks.chosen_mask.set(c);
            WideMask avail = full_mask(eng.universe_size);
            avail.clear_through(c);
            t.avail = avail;
            tasks.push_back(std::move(t));
        }
        std::vector<CensusAccumulator> results(tasks.size());
        std::atomic<size_t> slot{0};
        run_tasks(tasks, problem.threads, [&](Task& t) {
            WeightedSearch search(eng, best);
            search.target = optimum;
            search.rec(t.chosen, t.avail, t.marks);
            search.flush();
            results[slot.fetch_add(1)] = std::move(search.acc);
        });
        if (optimum == 0) acc.add(Family{eng.params, {}});
        for (const auto& r : results) acc.merge(r);
    }
    return assemble(eng, optimum, acc, problem.max_representatives);
}

namespace {

constexpr int oracle_free_limit = 25;
constexpr int oracle_weighted_limit = 20;

// Does set i complete a forbidden d-tuple with d-1 sets from `others`?
bool oracle_completes(const Engine& eng, int i, std::uint32_t others) {
    if (eng.d == 2) {
        std::uint32_t mask = 0;
        eng.comp1[static_cast<size_t>(i)].for_each([&](int j) {
            if (j < 32) mask |= std::uint32_t{1} << j;
        });
        return (mask & others) != 0;
    }
    if (eng.d == 3) {
        std::uint32_t rest = others;
        while (rest) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            std::uint32_t mask = 0;
            eng.pair_mask(i, j).for_each([&](int c) {
                if (c < 32) mask |= std::uint32_t{1} << c;
            });
            if ((mask & others & ~(std::uint32_t{1} << j)) != 0) return true;
        }
        return false;
    }
    std::vector<int> pool;
    std::uint32_t rest = others;
    while (rest) {
        pool.push_back(std::countr_zero(rest));
        rest &= rest - 1;
    }
    std::vector<int> pick;
    std::vector<KSet> sets(static_cast<size_t>(eng.d));
    bool hit = false;
    auto rec = [&](auto&& self, size_t from) -> void {
        if (hit) return;
        if (static_cast<int>(pick.size()) == eng.d - 1) {
            for (int t = 0; t < eng.d - 1; ++t)
                sets[static_cast<size_t>(t)] =
                    eng.universe[static_cast<size_t>(pick[static_cast<size_t>(t)])];
            sets[static_cast<size_t>(eng.d - 1)] = eng.universe[static_cast<size_t>(i)];
            if (eng.forbidden(sets)) hit = true;
            return;
        }
        for (size_t t = from; t < pool.size(); ++t) {
            pick.push_back(pool[t]);
            self(self, t + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return hit;
}

}  // namespace

SearchResult oracle_exhaustive(const SearchProblem& problem) {
    check_gate(problem, problem.mode == SearchMode::weighted ? SearchMode::weighted
                                                             : SearchMode::cluster_free);
    Engine eng(problem);
    const int limit =
        problem.mode == SearchMode::weighted ? oracle_weighted_limit : oracle_free_limit;
    if (eng.universe_size > limit)
        throw resource_guard_error("exhaustive oracle limited to " + std::to_string(limit) +
                                   " k-sets, instance has " + std::to_string(eng.universe_size));
    const std::uint32_t total = std::uint32_t{1} << eng.universe_size;
    CensusAccumulator acc;

    auto family_of_bits = [&](std::uint32_t m) {
        std::vector<KSet> members;
        std::uint32_t rest = m;
        while (rest) {
            members.push_back(eng.universe[static_cast<size_t>(std::countr_zero(rest))]);
            rest &= rest - 1;
        }
        return Family{eng.params, std::move(members)};
    };

    long long optimum;
    if (problem.mode == SearchMode::weighted) {
        auto value_of = [&](std::uint32_t m) {
            int marked = 0;
            std::uint32_t rest = m;
            while (rest) {
                int i = std::countr_zero(rest);
                rest &= rest - 1;
                if (oracle_completes(eng, i, m & ~(std::uint32_t{1} << i))) ++marked;
            }
            return static_cast<long long>(eng.params.n) * std::popcount(m) -
                   static_cast<long long>(eng.params.n - eng.params.k) * marked;
        };
        optimum = 0;  // the empty family
        for (std::uint32_t m = 1; m < total; ++m) optimum = std::max(optimum, value_of(m));
        for (std::uint32_t m = 0; m < total; ++m)
            if (value_of(m) == optimum) acc.add(family_of_bits(m));
    } else {
        // free[m] extends free[m minus its least set] by one membership test.
        std::vector<char> free_family(total, 0);
        free_family[0] = 1;
        optimum = 0;
        for (std::uint32_t m = 1; m < total; ++m) {
            int i = std::countr_zero(m);
            std::uint32_t rest = m & (m - 1);
            free_family[m] =
                free_family[rest] && !oracle_completes(eng, i, rest) ? 1 : 0;
            if (free_family[m]) optimum = std::max(optimum, static_cast<long long>(std::popcount(m)));
        }
        for (std::uint32_t m = 0; m < total; ++m)
            if (free_family[m] && std::popcount(m) == optimum) acc.add(family_of_bits(m));
    }

    SearchResult result;
    result.optimum = optimum;
    result.exhausted = true;
    result.extremal_count = acc.count;
    result.census = acc.census;
    result.representatives = acc.representatives(problem.max_representatives);
    return result;
}

ExtremalClassification classify_family_shape(const Family& f) {
    const Params& p = f.params;
    if (static_cast<long long>(f.size()) == binom(p.n, p.k))
        return {ExtremalClass::full, 0};
    if (static_cast<long long>(f.size()) == binom(p.n - 1, p.k - 1) && !f.empty()) {
        KSet common{~std::uint64_t{0}};
        for (KSet s : f.members) common = common & s;
        if (!common.empty()) return {ExtremalClass::star, common.min_element()};
    }
    return {ExtremalClass::other, 0};
}

ExtremalClassification classify_extremal(const Family& f, const SearchProblem& problem) {
    const Params& p = problem.params;
    if (f.params.n != p.n || f.params.k != p.k)
        throw std::invalid_argument("family parameters do not match the search problem");
    if (!mode_regime_ok(p, problem.mode))
        throw std::invalid_argument("extremal value unknown outside the parameter regime");
    long long expected = mode_expected_optimum(p, problem.mode);
    long long objective;
    if (problem.mode == SearchMode::weighted) {
        long long marked = cluster_members(f, p.d).size();
        objective = static_cast<long long>(p.n) * f.size() -
                    static_cast<long long>(p.n - p.k) * marked;
    } else {
        bool simple_only = problem.mode == SearchMode::simple_cluster_free;
        if (find_cluster(f, p.d, simple_only))
            throw std::invalid_argument("family is not feasible for mode " +
                                        to_string(problem.mode));
        objective = f.size();
    }
    if (objective != expected)
        throw std::invalid_argument("family objective " + std::to_string(objective) +
                                    " does not attain the optimum " + std::to_string(expected));
    return classify_family_shape(f);
}

}  // namespace clusterforge
