#pragma once

// Generators for the structured no-detachable-pair families: the nine graph
// constructions (wheels and their mutant/twisted/warped/multi/stretched
// variants, K_{3,m} and its two extensions) and the matroid-only families
// (whirls, free spikes, hinged triad-paddles, and the fan-built families).
// Every generated matroid is post-validated: 3-connected and accepted by the
// recognizer for its declared family.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "detkit/graph.hpp"
#include "detkit/matroid.hpp"
#include "detkit/recognize.hpp"

namespace detkit {

enum class Family {
    wheel,
    mutant_wheel,
    twisted_wheel,
    warped_wheel,
    multi_wheel,
    stretched_wheel,
    k3m,
    k3m_prime,
    k3m_doubleprime,
    whirl,
    free_spike,
    hinged_triad_paddle,
    even_fan_spike,
    even_fan_paddle,
    quasi_triad_paddle,
};

const char* family_name(Family f);
// Case-sensitive lookup of the names above; nullopt for anything else.
std::optional<Family> family_from_name(const std::string& name);

// True for the families built as simple graphs (gen_graph accepts exactly
// these). The matroid-only families reject gen_graph.
bool is_graph_family(Family f);

// One family instance. `params` holds the scalar knobs (r, m, j, k, s,
// kind, tipped, dualize); `lengths` holds the per-branch list when the
// family takes one (subdivision counts, petal sizes). Unknown keys are
// rejected by the generators so typos cannot silently select defaults.
struct FamilySpec {
    Family family = Family::wheel;
    std::map<std::string, int> params;
    std::vector<int> lengths;

    int get(const std::string& key, int fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
    bool flag(const std::string& key) const { return get(key, 0) != 0; }

    // "family k=v ... lengths=a,b,c" with keys sorted; parseable by eye.
    std::string to_string() const;

    nlohmann::ordered_json to_json() const;
    static FamilySpec from_json(const nlohmann::json& j);
};

// Build the graph for a graph family. Edge roles (spoke/rim/strip/tie/...)
// are recorded in Graph::elabel. Parameter violations raise ArgError naming
// the constraint; every output is simple, and 3-connected once it has at
// least 13 edges.
Graph gen_graph(const FamilySpec& spec);

// A generated matroid plus one role string per element (for graph routes
// these are the edge roles).
struct GenMatroid {
    Matroid m;
    std::vector<std::string> roles;
};

// Build the matroid for any family. Graph families go through gen_graph +
// from_graph. Matroid families use the linear constructions (whirl, free
// spike with or without the tip/cotip boundary form, hinged triad-paddle)
// or, for non-graphic fan-built parameterizations, a pre-searched fixture
// file under `fixtures_dir` (layout fixtures/<family>/<params>.matroid).
// A missing fixture raises ArgError (never a silent substitute); a
// generated matroid that fails its own recognizer raises logic_error.
// The "dualize" param flips the result through dual() after validation.
GenMatroid gen_matroid(const FamilySpec& spec, const std::string& fixtures_dir = "fixtures",
                       TableLimits lim = {});

// The classification outcome a valid instance of `spec` must produce,
// including the effect of the dualize flag.
Outcome expected_outcome(const FamilySpec& spec);

// Fixture-file path for a non-graphic parameterization, relative to the
// fixtures directory ("" when the spec has a direct construction).
std::string fixture_rel_path(const FamilySpec& spec);

}  // namespace detkit
