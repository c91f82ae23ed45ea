#pragma once

#include <vector>

#include "detkit/connectivity.hpp"
#include "detkit/graph.hpp"
#include "detkit/matroid.hpp"

namespace detkit {

enum class SearchMode { first, all };

struct PairVerdict {
    int e = -1;
    int f = -1;
    bool delete_ok = false;    // M\e\f (resp. G\e\f) stays 3-connected
    bool contract_ok = false;  // M/e/f (resp. G/e/f) stays 3-connected

    bool detachable() const { return delete_ok || contract_ok; }
};

// 3-connectivity of the minor with ground set `rest`, contracting `contracted`
// and deleting everything else, evaluated in-place against m's rank table
// (no minor table is materialized). Equivalent to
// is_3connected(minor(m, E - rest - contracted, contracted)).
bool minor_is_3connected(const Matroid& m, Mask rest, Mask contracted);

// Tests M\e\f and M/e/f. Ground sets below 6 are refused: both minors must
// keep at least 4 elements.
PairVerdict pair_status(const Matroid& m, int e, int f);

// All detachable pairs in lexicographic (e, f) order with e < f; `first`
// stops at the first hit. `jobs` > 1 splits the pair loop across threads;
// the result order is deterministic either way.
std::vector<PairVerdict> find_detachable_pairs(const Matroid& m, SearchMode mode, int jobs = 1);

// Graph semantics: both minors tested by is_simple_3connected.
PairVerdict graph_pair_status(const Graph& g, int e, int f);
std::vector<PairVerdict> find_graph_detachable_pairs(const Graph& g, SearchMode mode);

}  // namespace detkit
