#pragma once

#include <optional>
#include <vector>

#include "detkit/detach.hpp"
#include "detkit/graph.hpp"
#include "detkit/matroid.hpp"
#include "detkit/structures.hpp"

namespace detkit {

// Classification outcomes. Dual-tagged outcomes mean the structure was found
// in M*; certificates for those are stated in the dual, whose elements carry
// the same indices.
enum class Outcome {
    detachable_pair,
    wheel,
    whirl,
    accordion,
    even_fan_spike,
    even_fan_spike_tip_cotip,
    even_fan_paddle,
    even_fan_paddle_dual,
    triad_paddle,
    triad_paddle_dual,
    hinged_triad_paddle,
    hinged_triad_paddle_dual,
    tri_paddle_copaddle,
    quasi_triad_paddle,
    quasi_triad_paddle_dual,
    unclassified,
};
const char* outcome_name(Outcome o);

// Special-petal shapes of a quasi-triad-paddle.
enum class PetalKind { augmented_fan, co_augmented_fan, quad, near_quad };
const char* petal_kind_name(PetalKind k);

// Graph-level families; the graph classifier reports one of these alongside
// the matroid outcome.
enum class GraphFamily {
    none,
    wheel,
    mutant_wheel,
    twisted_wheel,
    warped_wheel,
    multi_wheel,
    stretched_wheel,
    k3m,
    k3m_prime,
    k3m_doubleprime,
};
const char* graph_family_name(GraphFamily f);

// Certificates -------------------------------------------------------------
//
// Every recognizer returns a certificate that re-validates under the defining
// predicates alone (see the verify_* functions); the searches never have to
// be trusted.

// Cyclic ordering whose consecutive triples alternate triangle/triad,
// plus an exact rank-table match against the canonical wheel of that size
// (is_wheel) or its rim relaxation (whirl).
struct WheelCert {
    std::vector<int> order;  // cyclic; covers the ground set
    Mask rim = 0;            // elements lying in two triads of the cover
    bool is_wheel = true;    // false: rim independent, i.e. a whirl
};

// Partition into legs (pairs) such that the union of any two legs is both a
// circuit and a cocircuit.
struct SpikeCert {
    std::vector<Mask> legs;
};

// Even-fan-spike, all four variants. Tipless: petals partition E; degenerate
// means exactly two fan petals tied front (circuit) and back (cocircuit).
// With tip and cotip: petal u {tip, cotip} is an even fan with those ends;
// in the degenerate form {tip, cotip} is its own part (stored last).
struct EfsCert {
    std::vector<Mask> petals;
    std::vector<std::vector<int>> orderings;  // representative fan ordering per petal
    bool degenerate = false;
    bool tip_cotip = false;
    int tip = -1;
    int cotip = -1;
};

// Even-fan-paddle: paddle whose petals all become even fans ending at a
// common hinge element x in the last petal.
struct EfpCert {
    std::vector<Mask> petals;                 // hinge petal last
    std::vector<std::vector<int>> orderings;  // of petal u {hinge}, ending at the hinge
    int hinge = -1;
    bool degenerate = false;  // three petals, hinge petal of size two
};

// Triad-paddle: a matroid isomorphic to the cycle matroid of K_{3,m},
// partitioned into its m star triads. `iso` maps each element to the edge
// index of the canonical copy (stars first, consistent side classes).
struct TriadPaddleCert {
    std::vector<Mask> triads;
    std::vector<int> iso;
};

// Hinged triad-paddle: partition (P_1..P_m, {hinge}).
struct HingedCert {
    std::vector<Mask> triads;  // P_m (the petal the hinge attaches to) last
    int hinge = -1;
};

// Quasi-triad-paddle: deleting the special petal leaves a triad-paddle with
// the given triads; the petal matches `kind` against every triad.
struct QtpCert {
    std::vector<Mask> triads;
    Mask petal = 0;
    PetalKind kind = PetalKind::quad;
};

// Tri-paddle-copaddle: triads P_1..P_s and triangles Q_1..Q_t with the
// quasi-triad-paddle condition holding in M (triad side) and in M* (triangle
// side).
struct TpcCert {
    std::vector<Mask> triads;
    std::vector<Mask> triangles;
};

enum class EndKind { fan, quad, triangle, triad };
const char* end_kind_name(EndKind k);

// Accordion: central maximal even fan F plus a left end G and right end H of
// the declared kinds. left_order holds the end labelling used by the
// predicate: fan-type (g_2..g_5), quad-type (a_1,a_2,b_1,b_2), triangle-type
// the two elements; right_order mirrors it.
struct AccordionCert {
    std::vector<int> fan_order;  // triangle-first ordering of F
    Mask left = 0;
    Mask right = 0;
    EndKind left_kind = EndKind::fan;
    EndKind right_kind = EndKind::fan;
    std::vector<int> left_order;
    std::vector<int> right_order;
};

// Recognizers ---------------------------------------------------------------
//
// All return the certificate or nothing; they throw CapError only if the
// backtracking budget (10^6 nodes) is exhausted.

std::optional<WheelCert> recognize_wheel_whirl(const Matroid& m);
std::optional<SpikeCert> recognize_spike(const Matroid& m);
std::optional<TriadPaddleCert> recognize_triad_paddle(const Matroid& m);
std::optional<HingedCert> recognize_hinged_triad_paddle(const Matroid& m);
std::optional<QtpCert> recognize_quasi_triad_paddle(const Matroid& m);
std::optional<TpcCert> recognize_tri_paddle_copaddle(const Matroid& m);
std::optional<EfsCert> recognize_even_fan_spike(const Matroid& m);
std::optional<EfpCert> recognize_even_fan_paddle(const Matroid& m);
std::optional<AccordionCert> recognize_accordion(const Matroid& m);

// Certificate replay: direct evaluation of the defining predicates against
// the certificate data, independent of how the search found it.
bool verify_wheel_cert(const Matroid& m, const WheelCert& c);
bool verify_spike_cert(const Matroid& m, const SpikeCert& c);
bool verify_triad_paddle_cert(const Matroid& m, const TriadPaddleCert& c);
bool verify_hinged_cert(const Matroid& m, const HingedCert& c);
bool verify_qtp_cert(const Matroid& m, const QtpCert& c);
bool verify_tpc_cert(const Matroid& m, const TpcCert& c);
bool verify_efs_cert(const Matroid& m, const EfsCert& c);
bool verify_efp_cert(const Matroid& m, const EfpCert& c);
bool verify_accordion_cert(const Matroid& m, const AccordionCert& c);

// Classification ------------------------------------------------------------

struct Classification {
    Outcome outcome = Outcome::unclassified;
    GraphFamily graph_family = GraphFamily::none;  // set by classify_graph
    std::optional<PairVerdict> pair;
    std::optional<PetalKind> petal_kind;  // quasi-triad-paddle outcomes

    // Certificate for the reported outcome; dual-tagged outcomes carry the
    // certificate of dual(m).
    std::optional<WheelCert> wheel;
    std::optional<EfsCert> efs;
    std::optional<EfpCert> efp;
    std::optional<TriadPaddleCert> triad_paddle;
    std::optional<HingedCert> hinged;
    std::optional<QtpCert> qtp;
    std::optional<TpcCert> tpc;
    std::optional<AccordionCert> accordion;
};

// Replays whatever certificate the classification carries (in the dual for
// dual-tagged outcomes). detachable_pair re-runs pair_status; unclassified is
// never valid.
bool verify_classification(const Matroid& m, const Classification& c);

// Requires a 3-connected matroid with at least 13 elements (the chain
// theorems are silent below that). Detachable-pair search first, then the
// family recognizers on M and M* in a fixed specific-to-general order;
// exactly one outcome is reported. jobs parallelizes the pair search.
Classification classify_matroid(const Matroid& m, int jobs = 1);

// Graph counterpart: requires simple 3-connected with at least 13 edges.
// Graph-native pair search, then the matroid recognizers on the cycle
// matroid, mapped to the graph families with a graph-level confirmation
// (wheel hub, K_{3,m} bipartition).
Classification classify_graph(const Graph& g, int jobs = 1);

}  // namespace detkit
