#include "detkit/connectivity.hpp"

#include <algorithm>

namespace detkit {

bool is_3connected(const Matroid& m) {
    int n = m.size();
    if (n <= 1) return true;
    const auto& t = m.table();
    Mask top = m.all();
    int r = t[top];
    // Enumerate masks missing the highest element: each complementary pair once.
    Mask limit = Mask{1} << (n - 1);
    for (Mask x = 1; x < limit; ++x) {
        int lam = t[x] + t[top & ~x] - r;
        if (lam == 0) return false;  // both sides nonempty by construction
        if (lam == 1 && popcount(x) >= 2 && n - popcount(x) >= 2) return false;
    }
    return true;
}

std::optional<Separation> find_k_separation(const Matroid& m, int k) {
    if (k < 1 || k > 2) throw ArgError("only 1- and 2-separations supported");
    int n = m.size();
    const auto& t = m.table();
    Mask top = m.all();
    int r = t[top];
    std::optional<Separation> best;
    int best_size = n + 1;
    Mask limit = Mask{1} << (n > 0 ? n - 1 : 0);
    for (Mask x = 1; x < limit; ++x) {
        int px = popcount(x);
        if (px < k || n - px < k) continue;
        if (t[x] + t[top & ~x] - r != k - 1) continue;
        // Canonical witness: smaller side, then smaller mask.
        Mask side = x;
        int size = px;
        Mask other = top & ~x;
        if (n - px < size || (n - px == size && other < side)) {
            side = other;
            size = n - px;
        }
        if (size < best_size || (size == best_size && side < best->side)) {
            best = Separation{side, k, SepKind::plain, -1};
            best_size = size;
        }
    }
    return best;
}

std::vector<Separation> three_separations_at(const Matroid& m, int e, SepKind mode) {
    if (mode == SepKind::plain) throw ArgError("mode must be vertical or cyclic");
    if (e < 0 || e >= m.size()) throw ArgError("element out of range");
    int n = m.size();
    Mask rest = m.all() & ~bit(e);
    int anchor = lowest(rest);  // reported side avoids this element

    std::vector<Separation> out;
    if (n < 3) return out;
    bool cyc = (mode == SepKind::cyclic);

    auto lam = [&](Mask x) { return m.lambda(x); };
    auto rk = [&](Mask x) { return cyc ? m.corank(x) : m.rank(x); };
    auto in_cl = [&](Mask x) {
        Mask c = cyc ? m.coclosure(x) : m.closure(x);
        return has(c, e);
    };

    // Enumerate sides X over subsets of E - e avoiding the anchor (the
    // partner Y gets the anchor), so each partition appears once.
    Mask free = rest & ~bit(anchor);
    std::vector<int> freel = elements_of(free);
    int fk = static_cast<int>(freel.size());
    for (Mask s = 1; s < (Mask{1} << fk); ++s) {
        Mask x = 0;
        for_each_bit(s, [&](int i) { x |= bit(freel[i]); });
        Mask y = rest & ~x;
        if (lam(x) != 2 || lam(y) != 2) continue;
        if (rk(x) < 3 || rk(y) < 3) continue;
        if (!in_cl(x) || !in_cl(y)) continue;
        out.push_back(Separation{x, 3, mode, e});
    }
    std::sort(out.begin(), out.end(), [](const Separation& a, const Separation& b) {
        return a.side < b.side;
    });
    return out;
}

BixbySplit bixby_split(const Matroid& m, int e) {
    if (m.size() < 4) throw PreconditionError("bixby_split needs at least 4 elements");
    if (!is_3connected(m)) throw PreconditionError("bixby_split needs a 3-connected matroid");
    if (e < 0 || e >= m.size()) throw ArgError("element out of range");

    bool si_ok = is_3connected(simplify(minor(m, MinorOp::contract, bit(e))));
    bool co_ok = is_3connected(cosimplify(minor(m, MinorOp::del, bit(e))));
    if (si_ok && co_ok) return BixbySplit::both;
    if (si_ok) return BixbySplit::si_ok;
    if (co_ok) return BixbySplit::co_ok;
    throw PreconditionError("neither si(M/e) nor co(M\\e) is 3-connected: upstream bug");
}

}  // namespace detkit
