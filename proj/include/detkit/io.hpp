#pragma once

// Text formats: graph6 lines, three matroid file formats, and report
// records (JSON / CSV) for batch runs.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "detkit/base.hpp"
#include "detkit/graph.hpp"
#include "detkit/matroid.hpp"
#include "detkit/recognize.hpp"

namespace detkit {

// graph6 ------------------------------------------------------------------

// Decode one graph6 line (the ">>graph6<<" header prefix is accepted).
// Malformed bytes raise ParseError with the byte offset into the line.
Graph graph6_decode(const std::string& line);

// Encode a simple graph.  Edge multiplicity or loops raise ArgError.
std::string graph6_encode(const Graph& g);

// Decode every nonempty line of a stream; the ParseError offset is rebased
// to "line <k>, byte <off>" via the message, offset stays line-local.
std::vector<Graph> graph6_read_lines(std::istream& in);

// Matroid files -------------------------------------------------------------
//
//   graph <nv> <ne>    followed by <ne> lines "u v"
//   gfp <p> <r> <n>    followed by <r> lines of <n> residues
//   bases <n> <r>      followed by one basis per line, r sorted indices
//
// The loader keeps the parsed artifact so converters can re-emit the
// original representation.

enum class MatroidFormat { graph, gfp, bases };

struct MatroidFile {
    MatroidFormat format = MatroidFormat::bases;
    Graph graph;     // format == graph
    GfpMatrix gfp;   // format == gfp
    BasesList bases; // format == bases
    int n = 0;       // element count, all formats
};

MatroidFile read_matroid_file(std::istream& in);
MatroidFile read_matroid_text(const std::string& text);

// Build the rank table.  Bases files with more than 16 elements cannot be
// axiom-checked by from_bases; the loader builds the table and then runs
// the full table validator, so a bad file still fails loudly.
Matroid to_matroid(const MatroidFile& file, TableLimits lim = {});

std::string write_graph_format(const Graph& g);
std::string write_gfp_format(const GfpMatrix& rep);
std::string write_bases_format(const Matroid& m);

// Reports -------------------------------------------------------------------

struct ReportRecord {
    std::string id;
    std::string source;  // "gen", "graph6", "file", ...
    std::string family;  // family spec string or input digest
    int elements = 0;
    std::string outcome;
    nlohmann::ordered_json witness = nlohmann::ordered_json::object();
    double ms = 0.0;
    std::string version = kVersion;
};

// Stable key order, newline-terminated; deterministic for fixed input.
std::string write_report_json(const std::vector<ReportRecord>& records);
std::string write_report_csv(const std::vector<ReportRecord>& records);

// Classification as JSON: outcome plus the certificate, with element sets
// rendered as sorted index arrays. graph_family / petal_kind appear only
// when meaningful.
nlohmann::ordered_json classification_json(const Classification& c);

}  // namespace detkit
