#pragma once

#include <optional>
#include <vector>

#include "detkit/matroid.hpp"

namespace detkit {

enum class SepKind { plain, vertical, cyclic };

// A witnessing side of a separation. For plain k-separations: lambda(side) =
// k-1 with both sides of size >= k. For vertical/cyclic 3-separations the
// partition is (side, {e}, rest) with both lambdas 2 and the closure/rank
// conditions on both sides.
struct Separation {
    Mask side = 0;
    int k = 0;
    SepKind kind = SepKind::plain;
    int e = -1;
};

// No 1- or 2-separation exists. Full scan over complementary mask pairs with
// early exit.
bool is_3connected(const Matroid& m);

// Minimum-cardinality witness (lowest mask among ties), or absent.
std::optional<Separation> find_k_separation(const Matroid& m, int k);

// All vertical (mode=vertical) or cyclic (= vertical in the dual) partitions
// (X, {e}, Y) up to side swap; the reported side is the one not containing the
// lowest element != e. Empty iff si(M/e) (resp. co(M\e)) is 3-connected; the
// caller-facing biconditional is asserted by the test suites, not assumed here.
std::vector<Separation> three_separations_at(const Matroid& m, int e, SepKind mode);

enum class BixbySplit { si_ok, co_ok, both };

// Which of si(M/e), co(M\e) stays 3-connected. Requires m 3-connected with at
// least 4 elements; a "neither" outcome throws (it would contradict the
// underlying lemma and means a bug upstream).
BixbySplit bixby_split(const Matroid& m, int e);

}  // namespace detkit
