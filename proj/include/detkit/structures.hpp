#pragma once

#include <optional>
#include <vector>

#include "detkit/matroid.hpp"

namespace detkit {

enum class DepKind { circuit, cocircuit };

struct SmallSet {
    Mask mask = 0;
    DepKind kind = DepKind::circuit;
    int size = 0;
};

// All minimal dependent sets of size 3..kmax in M (kind=circuit) or M*
// (kind=cocircuit), ascending mask order. kmax in {3,4,5}.
std::vector<SmallSet> small_dependents(const Matroid& m, DepKind kind, int kmax);

// Convenience wrappers returning just masks.
std::vector<Mask> triangles_of(const Matroid& m);
std::vector<Mask> triads_of(const Matroid& m);
// 4-element sets that are both circuits and cocircuits.
std::vector<Mask> quads_of(const Matroid& m);

// A fan: consecutive triples of the ordering alternate triangle/triad.
// Wheels and whirls are reported as one cyclic pseudo-fan covering the ground
// set (cyclic=true) instead of the many overlapping linear fans they contain.
struct Fan {
    std::vector<int> order;
    bool starts_triangle = true;  // kind of the first triple
    bool maximal = false;
    bool cyclic = false;

    int length() const { return static_cast<int>(order.size()); }
    Mask mask() const { return mask_of(order); }
};

struct FanEnds {
    std::vector<int> ends;
    bool ambiguous = false;  // length <= 3: every element can serve as an end
};

// Every maximal fan of length >= 3, each once, canonically ordered
// (lexicographically smaller end first; the interchangeable middle pair of a
// length-4 fan sorted ascending). 2-element fans (all 2-subsets) only on
// request and never marked maximal. Search is capped at 10^6 nodes.
std::vector<Fan> maximal_fans(const Matroid& m, bool include_pairs = false);

FanEnds fan_ends(const Fan& f);

// Checks whether the ordering is a valid fan of m (alternating triples
// matching starts_triangle); used to replay certificates.
bool is_fan_ordering(const Matroid& m, const std::vector<int>& order, bool starts_triangle);

// Finds a fan ordering of the set `x` (optionally anchored to given ends);
// returns the ordering or nothing. Tries both start kinds unless fixed.
std::optional<Fan> fan_ordering_of(const Matroid& m, Mask x);

// The cyclic alternating triangle/triad cover of a wheel or whirl, starting at
// element 0 with deterministic direction; absent when no cover exists.
std::optional<Fan> cyclic_fan_cover(const Matroid& m);

// True iff some labeling {a,b,c,x,y,z} of the 6-element set has {x,y,z} a
// triad and {a,b,c}, {a,x,y}, {b,x,z}, {c,y,z} all triangles.
bool is_mk4_separator(const Matroid& m, Mask x);

enum class FlowerKind { paddle, spike_like, copaddle, mixed, none };

struct FlowerReport {
    std::vector<Mask> parts;
    bool is_flower = false;
    bool is_anemone = false;
    FlowerKind subkind = FlowerKind::none;
    std::vector<std::vector<int>> pairwise_pi;  // local connectivity matrix
};

// Classifies a partition of E into >=2-element petals: flower (all petals and
// consecutive unions 3-separating in the given cyclic order), anemone (all
// petal unions 3-separating; at most 12 parts), and the pairwise-local-
// connectivity subkind (2 -> paddle, 1 -> spike-like, 0 -> copaddle).
FlowerReport flower_classify(const Matroid& m, const std::vector<Mask>& parts);

}  // namespace detkit
