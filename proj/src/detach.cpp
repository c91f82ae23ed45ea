#include "detkit/detach.hpp"

#include <atomic>
#include <thread>

namespace detkit {

bool minor_is_3connected(const Matroid& m, Mask rest, Mask contracted) {
    if (rest & contracted) throw ArgError("minor ground set overlaps the contracted set");
    const auto& t = m.table();
    int n = popcount(rest);
    if (n <= 1) return true;

    // lambda'(X) = r(X u C) + r((rest-X) u C) - r(C) - r(rest u C).
    int base = t[contracted] + t[rest | contracted];

    // Each complementary pair once: anchor the highest element of rest in the
    // unscanned side.
    Mask scan = rest & ~bit(31 - std::countl_zero(rest));
    Mask x = scan;
    while (true) {
        if (x != 0) {
            int lam = t[x | contracted] + t[(rest & ~x) | contracted] - base;
            if (lam == 0) return false;
            int px = popcount(x);
            if (lam == 1 && px >= 2 && n - px >= 2) return false;
        }
        if (x == 0) break;
        x = (x - 1) & scan;
    }
    return true;
}

PairVerdict pair_status(const Matroid& m, int e, int f) {
    if (e == f) throw ArgError("pair elements must differ");
    if (e < 0 || f < 0 || e >= m.size() || f >= m.size())
        throw ArgError("element out of range");
    if (m.size() < 6)
        throw PreconditionError("pair_status needs at least 6 elements");

    Mask pair = bit(e) | bit(f);
    Mask rest = m.all() & ~pair;
    PairVerdict v;
    v.e = std::min(e, f);
    v.f = std::max(e, f);
    v.delete_ok = minor_is_3connected(m, rest, 0);
    v.contract_ok = minor_is_3connected(m, rest, pair);
    return v;
}

std::vector<PairVerdict> find_detachable_pairs(const Matroid& m, SearchMode mode, int jobs) {
    if (m.size() < 6) throw PreconditionError("pair search needs at least 6 elements");
    int n = m.size();
    std::vector<std::pair<int, int>> pairs;
    for (int e = 0; e < n; ++e)
        for (int f = e + 1; f < n; ++f) pairs.emplace_back(e, f);

    std::vector<PairVerdict> out;
    if (jobs <= 1 || mode == SearchMode::first) {
        for (auto [e, f] : pairs) {
            PairVerdict v = pair_status(m, e, f);
            if (v.detachable()) {
                out.push_back(v);
                if (mode == SearchMode::first) break;
            }
        }
        return out;
    }

    // Static work-claiming keeps the result order deterministic: verdicts land
    // in per-pair slots, the detachable ones are collected afterwards.
    std::vector<PairVerdict> slots(pairs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1))
            slots[i] = pair_status(m, pairs[i].first, pairs[i].second);
    };
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    for (const PairVerdict& v : slots)
        if (v.detachable()) out.push_back(v);
    return out;
}

PairVerdict graph_pair_status(const Graph& g, int e, int f) {
    if (e == f) throw ArgError("pair edges must differ");
    if (e < 0 || f < 0 || e >= g.ne() || f >= g.ne())
        throw ArgError("edge index out of range");
    if (!is_simple_3connected(g))
        throw PreconditionError("graph_pair_status needs a simple 3-connected graph");

    Mask pair = bit(e) | bit(f);
    PairVerdict v;
    v.e = std::min(e, f);
    v.f = std::max(e, f);
    v.delete_ok = is_simple_3connected(graph_minor_set(g, pair, 0));
    v.contract_ok = is_simple_3connected(graph_minor_set(g, 0, pair));
    return v;
}

std::vector<PairVerdict> find_graph_detachable_pairs(const Graph& g, SearchMode mode) {
    if (!is_simple_3connected(g))
        throw PreconditionError("pair search needs a simple 3-connected graph");
    std::vector<PairVerdict> out;
    for (int e = 0; e < g.ne(); ++e)
        for (int f = e + 1; f < g.ne(); ++f) {
            PairVerdict v = graph_pair_status(g, e, f);
            if (v.detachable()) {
                out.push_back(v);
                if (mode == SearchMode::first) return out;
            }
        }
    return out;
}

}  // namespace detkit
