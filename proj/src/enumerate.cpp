#include "halftrek/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "canon.hpp"
#include "halftrek/errors.hpp"

namespace halftrek {

std::string to_string(GraphFamily f) {
    switch (f) {
        case GraphFamily::all: return "all";
        case GraphFamily::acyclic: return "acyclic";
        case GraphFamily::cyclic: return "cyclic";
    }
    return "all";
}

std::vector<MixedGraph> enumerate_unlabeled(int m, GraphFamily family, int max_edges) {
    using detail::EdgeMasks;
    if (m > enumerate_max_nodes) {
        throw capability_error("enumeration supports at most " +
                               std::to_string(enumerate_max_nodes) + " nodes");
    }
    if (m < 1) throw std::invalid_argument("node count must be positive");
    const bool acyclic_only = family == GraphFamily::acyclic;
    detail::Canonizer canon(m);

    std::vector<int> directed_slots, bidirected_slots;
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            if (u != v) directed_slots.push_back(u * m + v);
            if (u < v) bidirected_slots.push_back(u * m + v);
        }
    }

    // Level k holds canonical edge sets with exactly k edges; every graph with
    // k + 1 edges arises from one with k edges by adding an edge, and deleting a
    // directed edge keeps a graph acyclic.
    std::vector<EdgeMasks> level{EdgeMasks{}};
    std::vector<EdgeMasks> found = level;
    for (int k = 0; k < max_edges && !level.empty(); ++k) {
        std::unordered_set<EdgeMasks, detail::EdgeMasksHash> next;
        for (const auto& g : level) {
            for (int slot : directed_slots) {
                if ((g.directed >> slot) & 1U) continue;
                EdgeMasks h{g.directed | (std::uint64_t{1} << slot), g.bidirected};
                if (acyclic_only && !detail::masks_acyclic(m, h.directed)) continue;
                next.insert(canon.canonical(h));
            }
            for (int slot : bidirected_slots) {
                if ((g.bidirected >> slot) & 1U) continue;
                next.insert(canon.canonical({g.directed, g.bidirected | (std::uint64_t{1} << slot)}));
            }
        }
        level.assign(next.begin(), next.end());
        std::sort(level.begin(), level.end());
        found.insert(found.end(), level.begin(), level.end());
    }

    std::vector<MixedGraph> out;
    for (const auto& k : found) {
        if (family == GraphFamily::cyclic && detail::masks_acyclic(m, k.directed)) continue;
        out.push_back(detail::from_masks(m, k));
    }
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("HTC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(long n, int threads, const std::function<void(long)>& body) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max(1L, n))));
    if (threads == 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (long i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

CensusRow tabulate_graphs(int m, GraphFamily family, const std::vector<MixedGraph>& graphs,
                          int threads, const ProgressFn& progress) {
    std::vector<Verdict> verdicts(graphs.size());
    std::atomic<long> done{0};
    std::mutex progress_mutex;
    const long total = static_cast<long>(graphs.size());
    parallel_for(total, threads, [&](long i) {
        verdicts[i] = classify(graphs[i]).verdict;
        long d = ++done;
        if (progress && (d % 5000 == 0 || d == total)) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            progress(d, total);
        }
    });
    CensusRow row;
    row.m = m;
    row.family = family;
    row.total = total;
    for (Verdict v : verdicts) {
        switch (v) {
            case Verdict::identifiable: ++row.htc_identifiable; break;
            case Verdict::infinite_to_one: ++row.htc_infinite; break;
            case Verdict::inconclusive: ++row.inconclusive; break;
        }
    }
    return row;
}

CensusRow tabulate(int m, GraphFamily family, int threads, const ProgressFn& progress) {
    if (m > 5) throw capability_error("census supports at most 5 nodes");
    auto graphs = enumerate_unlabeled(m, family, m * (m - 1) / 2);
    return tabulate_graphs(m, family, graphs, threads, progress);
}

int edge_slots(int m, bool acyclic_only) {
    const int pairs = m * (m - 1) / 2;
    return acyclic_only ? 2 * pairs : 3 * pairs;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over a counter stream.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

MixedGraph random_graph(int m, int n_edges, bool acyclic_only, std::uint64_t seed) {
    const int slots = edge_slots(m, acyclic_only);
    if (n_edges < 0 || n_edges > slots) {
        throw std::invalid_argument("cannot place " + std::to_string(n_edges) + " edges in " +
                                    std::to_string(slots) + " slots");
    }
    // Slot layout: directed pairs first, then bidirected pairs u < v.
    std::vector<std::pair<int, int>> directed, bidirected;
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            if (u == v) continue;
            if (!acyclic_only || u < v) directed.emplace_back(u, v);
            if (u < v) bidirected.emplace_back(u, v);
        }
    }
    std::vector<int> index(slots);
    std::iota(index.begin(), index.end(), 0);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < n_edges; ++i) {
        std::uniform_int_distribution<int> pick(i, slots - 1);
        std::swap(index[i], index[pick(rng)]);
    }
    std::vector<DirectedEdge> d;
    std::vector<BidirectedEdge> b;
    const int n_directed = static_cast<int>(directed.size());
    for (int i = 0; i < n_edges; ++i) {
        int s = index[i];
        if (s < n_directed) {
            d.push_back({directed[s].first, directed[s].second});
        } else {
            auto [u, v] = bidirected[s - n_directed];
            b.push_back({u, v});
        }
    }
    return MixedGraph(m, d, b);
}

SimulationRow simulate(int m, int n_edges, int samples, bool acyclic_only, std::uint64_t seed,
                       int threads) {
    if (samples < 1) throw std::invalid_argument("at least one sample is required");
    if (m < 2 || m > max_nodes) throw std::invalid_argument("node count must lie in [2, 64]");
    if (n_edges < 0 || n_edges > edge_slots(m, acyclic_only)) {
        throw std::invalid_argument("edge count exceeds the available edge slots");
    }
    std::vector<Verdict> verdicts(samples);
    parallel_for(samples, threads, [&](long i) {
        verdicts[i] = classify(random_graph(m, n_edges, acyclic_only, sub_seed(seed, i))).verdict;
    });
    long counts[3] = {0, 0, 0};
    for (Verdict v : verdicts) ++counts[static_cast<int>(v)];
    SimulationRow row{m, n_edges, samples, acyclic_only, seed};
    row.frac_identifiable = static_cast<double>(counts[0]) / samples;
    row.frac_infinite = static_cast<double>(counts[1]) / samples;
    row.frac_inconclusive = static_cast<double>(counts[2]) / samples;
    return row;
}

std::string census_csv_header() { return "m,mode,total,htc_identifiable,htc_infinite,inconclusive"; }

std::string census_csv_line(const CensusRow& r) {
    return std::to_string(r.m) + "," + to_string(r.family) + "," + std::to_string(r.total) + "," +
           std::to_string(r.htc_identifiable) + "," + std::to_string(r.htc_infinite) + "," +
           std::to_string(r.inconclusive);
}

std::string simulation_csv_header() { return "m,n_edges,samples,seed,frac_id,frac_inf,frac_inc"; }

std::string simulation_csv_line(const SimulationRow& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%llu,%.6f,%.6f,%.6f", r.m, r.n_edges, r.samples,
                  static_cast<unsigned long long>(r.seed), r.frac_identifiable, r.frac_infinite,
                  r.frac_inconclusive);
    return buf;
}

}  // namespace halftrek
