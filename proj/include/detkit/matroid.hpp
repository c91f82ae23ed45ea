#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "detkit/base.hpp"
#include "detkit/graph.hpp"

namespace detkit {

// Table-build limits: ground sets up to `soft_cap` build directly; 23 and 24
// need the explicit opt-in (the table doubles twice); larger is rejected.
struct TableLimits {
    int soft_cap = 22;
    bool allow_big = false;
    int effective() const { return allow_big ? 24 : soft_cap; }
};

enum class Source : std::uint8_t { graphic, linear_gfp, bases, minor_of, dual_of, relaxed, derived };

struct Provenance {
    Source source = Source::derived;
    std::string detail;               // human note: construction name, params
    bool validated = true;            // false when a bases list was caller-asserted
    std::vector<int> parent_labels;   // minors: current index -> parent index
};

// Exact matroid as a dense rank table over a <=24-element ground set.
// Immutable after construction; all queries are table lookups.
class Matroid {
public:
    Matroid(int n, std::vector<std::uint8_t> table, Provenance prov = {});

    int size() const { return n_; }
    Mask all() const { return full_mask(n_); }
    int rank() const { return table_[all()]; }

    int rank(Mask x) const {
        check(x);
        return table_[x];
    }
    int corank(Mask x) const {
        check(x);
        return popcount(x) + table_[all() & ~x] - rank();
    }
    int lambda(Mask x) const {
        check(x);
        return table_[x] + table_[all() & ~x] - rank();
    }
    // r(X) + r(Y) - r(X u Y); sets may intersect.
    int local_conn(Mask x, Mask y) const {
        check(x | y);
        return table_[x] + table_[y] - table_[x | y];
    }
    int local_conn_dual(Mask x, Mask y) const {
        check(x | y);
        return corank(x) + corank(y) - corank(x | y);
    }

    bool indep(Mask x) const { return rank(x) == popcount(x); }
    bool is_loop(int e) const { return rank(bit(e)) == 0; }
    bool is_coloop(int e) const { return corank(bit(e)) == 0; }
    // Minimal dependent set: dependent with every one-element-removed subset independent.
    bool is_circuit(Mask x) const;
    bool is_cocircuit(Mask x) const;

    Mask closure(Mask x) const;
    Mask coclosure(Mask x) const;

    const std::vector<std::uint8_t>& table() const { return table_; }
    const Provenance& provenance() const { return prov_; }

    bool same_table(const Matroid& o) const { return n_ == o.n_ && table_ == o.table_; }

private:
    void check(Mask x) const {
        if (x & ~all()) throw ArgError("mask has bits outside the ground set");
    }
    int n_;
    std::vector<std::uint8_t> table_;
    Provenance prov_;
};

// GF(p) matrix: columns are the matroid elements.
struct GfpMatrix {
    int p = 2;
    std::vector<std::vector<int>> rows;  // each row: one residue per column
    int cols() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

struct BasesList {
    int r = 0;
    std::vector<Mask> bases;
};

// Builders ---------------------------------------------------------------

// Cycle matroid: r(X) = (vertices touched by X) - (components of X's subgraph).
Matroid from_graph(const Graph& g, TableLimits lim = {});

// Column matroid over GF(p) by exact modular elimination.
Matroid from_gfp_matrix(const GfpMatrix& rep, TableLimits lim = {});

// r(X) = max over bases B of |B n X|. Validates the rank axioms of the derived
// table (equivalent to basis exchange) when n <= 16 or validate is forced; for
// larger ground sets the caller asserts validity and provenance records that.
Matroid from_bases(const BasesList& b, int n, bool caller_asserts_valid = false,
                   TableLimits lim = {});

// All bases (maximal independent sets) of m, ascending mask order.
std::vector<Mask> bases_of(const Matroid& m);

// Operations --------------------------------------------------------------

enum class MinorOp { del, contract };

// Table view with compacted indices; never re-derives from representations.
Matroid minor(const Matroid& m, MinorOp mode, Mask s);
Matroid minor(const Matroid& m, Mask del, Mask contract);

Matroid dual(const Matroid& m);

// Circuit-hyperplane relaxation: the bases gain exactly {h}.
Matroid relax(const Matroid& m, Mask h);

// si: drop loops and all but the lowest-index member of each parallel class.
// co: dual operation. Both keep an index map in provenance.
Matroid simplify(const Matroid& m);
Matroid cosimplify(const Matroid& m);

// Rank-axiom check used by from_bases and the test suites: returns an empty
// string on success, else a short description of the first violated axiom.
std::string validate_rank_table(const std::vector<std::uint8_t>& table, int n);

}  // namespace detkit
