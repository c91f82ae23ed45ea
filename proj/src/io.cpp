#include "detkit/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <sstream>

namespace detkit {

namespace {

const std::string kG6Header = ">>graph6<<";

// graph6 characters are printable ASCII 63..126 carrying 6 bits each.
int g6_value(const std::string& line, std::size_t pos) {
    unsigned char c = static_cast<unsigned char>(line[pos]);
    if (c < 63 || c > 126)
        throw ParseError("graph6: byte out of range 63..126", pos);
    return c - 63;
}

}  // namespace

Graph graph6_decode(const std::string& raw) {
    std::size_t base = 0;
    std::string line = raw;
    if (raw.rfind(kG6Header, 0) == 0) {
        base = kG6Header.size();
        line = raw.substr(base);
    }
    if (line.empty()) throw ParseError("graph6: empty line", base);

    std::size_t pos = 0;
    long long n = 0;
    if (line[0] != '~') {
        n = g6_value(line, 0);
        pos = 1;
    } else if (line.size() >= 2 && line[1] != '~') {
        if (line.size() < 4) throw ParseError("graph6: truncated size field", base + line.size());
        n = 0;
        for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | g6_value(line, i);
        pos = 4;
    } else {
        if (line.size() < 8) throw ParseError("graph6: truncated size field", base + line.size());
        n = 0;
        for (std::size_t i = 2; i <= 7; ++i) n = (n << 6) | g6_value(line, i);
        pos = 8;
    }
    if (n > 100000) throw ParseError("graph6: vertex count too large", base);

    const long long bits = n * (n - 1) / 2;
    const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
    if (line.size() - pos < need)
        throw ParseError("graph6: truncated adjacency data", base + line.size());
    if (line.size() - pos > need)
        throw ParseError("graph6: trailing bytes after adjacency data", base + pos + need);

    Graph g;
    for (long long i = 0; i < n; ++i) g.add_vertex();

    long long k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            int chunk = g6_value(line, pos + static_cast<std::size_t>(k / 6));
            if ((chunk >> (5 - k % 6)) & 1) g.add_edge(i, j);
        }
    }
    // Any padding bits must be zero.
    for (long long t = k; t < static_cast<long long>(need) * 6; ++t) {
        std::size_t at = pos + static_cast<std::size_t>(t / 6);
        if ((g6_value(line, at) >> (5 - t % 6)) & 1)
            throw ParseError("graph6: nonzero padding bit", base + at);
    }
    return g;
}

std::string graph6_encode(const Graph& g) {
    if (!is_simple(g)) throw ArgError("graph6 encodes simple graphs only");
    const int n = g.nv;
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back('~');
        for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    } else {
        out.push_back('~');
        out.push_back('~');
        for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
    }

    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int e = 0; e < g.ne(); ++e) {
        auto [u, v] = g.edges[e];
        adj[u][v] = adj[v][u] = 1;
    }
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | adj[i][j];
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

std::vector<Graph> graph6_read_lines(std::istream& in) {
    std::vector<Graph> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            out.push_back(graph6_decode(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), e.where);
        }
    }
    return out;
}

// Matroid files -------------------------------------------------------------

namespace {

// Pulls whitespace-separated integer tokens, tracking the line for errors.
struct TokenReader {
    std::istream& in;
    std::size_t line = 1;

    int next_int(const char* what) {
        skip_space();
        std::string tok;
        char c;
        while (in.get(c) && !std::isspace(static_cast<unsigned char>(c))) tok.push_back(c);
        if (in) in.unget();  // keep the terminator so newline counting stays exact
        if (tok.empty())
            throw ParseError(std::string("unexpected end of input, wanted ") + what, line);
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + tok + "' for " + what, line);
        }
    }

    std::string next_word() {
        skip_space();
        std::string tok;
        char c;
        while (in.get(c) && !std::isspace(static_cast<unsigned char>(c))) tok.push_back(c);
        return tok;
    }

    bool at_end() {
        skip_space();
        return in.peek() == EOF;
    }

   private:
    void skip_space() {
        int c;
        while ((c = in.peek()) != EOF && std::isspace(c)) {
            if (c == '\n') ++line;
            in.get();
        }
    }
};

}  // namespace

MatroidFile read_matroid_file(std::istream& in) {
    TokenReader tr{in};
    std::string kind = tr.next_word();
    MatroidFile file;
    if (kind == "graph") {
        file.format = MatroidFormat::graph;
        int nv = tr.next_int("vertex count");
        int ne = tr.next_int("edge count");
        if (nv < 0 || ne < 0) throw ParseError("negative graph header", tr.line);
        for (int i = 0; i < nv; ++i) file.graph.add_vertex();
        for (int e = 0; e < ne; ++e) {
            int u = tr.next_int("edge endpoint");
            int v = tr.next_int("edge endpoint");
            if (u < 0 || u >= nv || v < 0 || v >= nv)
                throw ParseError("edge endpoint out of range", tr.line);
            file.graph.add_edge(u, v);
        }
        file.n = ne;
    } else if (kind == "gfp") {
        file.format = MatroidFormat::gfp;
        int p = tr.next_int("modulus");
        int r = tr.next_int("row count");
        int n = tr.next_int("column count");
        if (p < 2 || r < 0 || n < 0) throw ParseError("bad gfp header", tr.line);
        file.gfp.p = p;
        file.gfp.rows.assign(r, std::vector<int>(n));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j) {
                int v = tr.next_int("matrix entry");
                if (v < 0 || v >= p) throw ParseError("matrix entry outside 0..p-1", tr.line);
                file.gfp.rows[i][j] = v;
            }
        file.n = n;
    } else if (kind == "bases") {
        file.format = MatroidFormat::bases;
        int n = tr.next_int("element count");
        int r = tr.next_int("rank");
        if (n < 0 || n > 30 || r < 0 || r > n) throw ParseError("bad bases header", tr.line);
        file.bases.r = r;
        file.n = n;
        while (!tr.at_end()) {
            Mask b = 0;
            int prev = -1;
            for (int t = 0; t < r; ++t) {
                int v = tr.next_int("basis element");
                if (v < 0 || v >= n) throw ParseError("basis element out of range", tr.line);
                if (v <= prev) throw ParseError("basis elements must be strictly increasing", tr.line);
                prev = v;
                b |= bit(v);
            }
            file.bases.bases.push_back(b);
        }
        if (file.bases.bases.empty()) throw ParseError("bases file lists no bases", tr.line);
    } else {
        throw ParseError("unknown matroid format '" + kind + "'", tr.line);
    }
    if (!tr.at_end()) throw ParseError("trailing tokens after matroid data", tr.line);
    return file;
}

MatroidFile read_matroid_text(const std::string& text) {
    std::istringstream ss(text);
    return read_matroid_file(ss);
}

Matroid to_matroid(const MatroidFile& file, TableLimits lim) {
    switch (file.format) {
        case MatroidFormat::graph:
            return from_graph(file.graph, lim);
        case MatroidFormat::gfp:
            return from_gfp_matrix(file.gfp, lim);
        case MatroidFormat::bases: {
            if (file.n <= 16) return from_bases(file.bases, file.n, false, lim);
            Matroid m = from_bases(file.bases, file.n, true, lim);
            std::string err = validate_rank_table(m.table(), file.n);
            if (!err.empty()) throw ParseError("bases file fails rank axioms: " + err, 0);
            return m;
        }
    }
    throw ArgError("unhandled matroid format");
}

std::string write_graph_format(const Graph& g) {
    std::string out = "graph " + std::to_string(g.nv) + " " + std::to_string(g.ne()) + "\n";
    for (int e = 0; e < g.ne(); ++e) {
        auto [u, v] = g.edges[e];
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    }
    return out;
}

std::string write_gfp_format(const GfpMatrix& rep) {
    std::string out = "gfp " + std::to_string(rep.p) + " " + std::to_string(rep.rows.size()) +
                      " " + std::to_string(rep.cols()) + "\n";
    for (const auto& row : rep.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string write_bases_format(const Matroid& m) {
    std::vector<Mask> bl = bases_of(m);
    std::string out =
        "bases " + std::to_string(m.size()) + " " + std::to_string(m.rank()) + "\n";
    for (Mask b : bl) {
        bool first = true;
        for_each_bit(b, [&](int e) {
            if (!first) out += ' ';
            out += std::to_string(e);
            first = false;
        });
        out += '\n';
    }
    return out;
}

// Reports -------------------------------------------------------------------

namespace {

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

nlohmann::ordered_json record_json(const ReportRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["source"] = r.source;
    j["family"] = r.family;
    j["elements"] = r.elements;
    j["outcome"] = r.outcome;
    j["witness"] = r.witness;
    j["ms"] = format_ms(r.ms);
    j["version"] = r.version;
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string write_report_json(const std::vector<ReportRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) arr.push_back(record_json(r));
    return arr.dump(2) + "\n";
}

std::string write_report_csv(const std::vector<ReportRecord>& records) {
    std::string out = "id,source,family,elements,outcome,witness,ms,version\n";
    for (const auto& r : records) {
        out += csv_escape(r.id) + ',' + csv_escape(r.source) + ',' + csv_escape(r.family) + ',' +
               std::to_string(r.elements) + ',' + csv_escape(r.outcome) + ',' +
               csv_escape(r.witness.dump()) + ',' + format_ms(r.ms) + ',' + csv_escape(r.version) +
               '\n';
    }
    return out;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson set_json(Mask m) {
    ojson a = ojson::array();
    for (int e : elements_of(m)) a.push_back(e);
    return a;
}

ojson sets_json(const std::vector<Mask>& ms) {
    ojson a = ojson::array();
    for (Mask m : ms) a.push_back(set_json(m));
    return a;
}

ojson orders_json(const std::vector<std::vector<int>>& os) {
    ojson a = ojson::array();
    for (const auto& o : os) a.push_back(o);
    return a;
}

}  // namespace

nlohmann::ordered_json classification_json(const Classification& c) {
    ojson j;
    j["outcome"] = outcome_name(c.outcome);
    if (c.graph_family != GraphFamily::none)
        j["graph_family"] = graph_family_name(c.graph_family);
    if (c.petal_kind) j["petal_kind"] = petal_kind_name(*c.petal_kind);
    ojson w = ojson::object();
    switch (c.outcome) {
        case Outcome::detachable_pair:
            if (c.pair) {
                w["e"] = c.pair->e;
                w["f"] = c.pair->f;
                w["delete_ok"] = c.pair->delete_ok;
                w["contract_ok"] = c.pair->contract_ok;
            }
            break;
        case Outcome::wheel:
        case Outcome::whirl:
            if (c.wheel) {
                w["order"] = c.wheel->order;
                w["rim"] = set_json(c.wheel->rim);
            }
            break;
        case Outcome::even_fan_spike:
        case Outcome::even_fan_spike_tip_cotip:
            if (c.efs) {
                w["petals"] = sets_json(c.efs->petals);
                w["orderings"] = orders_json(c.efs->orderings);
                w["degenerate"] = c.efs->degenerate;
                if (c.efs->tip_cotip) {
                    w["tip"] = c.efs->tip;
                    w["cotip"] = c.efs->cotip;
                }
            }
            break;
        case Outcome::even_fan_paddle:
        case Outcome::even_fan_paddle_dual:
            if (c.efp) {
                w["petals"] = sets_json(c.efp->petals);
                w["orderings"] = orders_json(c.efp->orderings);
                w["hinge"] = c.efp->hinge;
                w["degenerate"] = c.efp->degenerate;
            }
            break;
        case Outcome::triad_paddle:
        case Outcome::triad_paddle_dual:
            if (c.triad_paddle) {
                w["triads"] = sets_json(c.triad_paddle->triads);
                w["iso"] = c.triad_paddle->iso;
            }
            break;
        case Outcome::hinged_triad_paddle:
        case Outcome::hinged_triad_paddle_dual:
            if (c.hinged) {
                w["triads"] = sets_json(c.hinged->triads);
                w["hinge"] = c.hinged->hinge;
            }
            break;
        case Outcome::tri_paddle_copaddle:
            if (c.tpc) {
                w["triads"] = sets_json(c.tpc->triads);
                w["triangles"] = sets_json(c.tpc->triangles);
            }
            break;
        case Outcome::quasi_triad_paddle:
        case Outcome::quasi_triad_paddle_dual:
            if (c.qtp) {
                w["triads"] = sets_json(c.qtp->triads);
                w["petal"] = set_json(c.qtp->petal);
                w["petal_kind"] = petal_kind_name(c.qtp->kind);
            }
            break;
        case Outcome::accordion:
            if (c.accordion) {
                w["fan_order"] = c.accordion->fan_order;
                w["left"] = set_json(c.accordion->left);
                w["right"] = set_json(c.accordion->right);
                w["left_kind"] = end_kind_name(c.accordion->left_kind);
                w["right_kind"] = end_kind_name(c.accordion->right_kind);
                w["left_order"] = c.accordion->left_order;
                w["right_order"] = c.accordion->right_order;
            }
            break;
        case Outcome::unclassified: break;
    }
    j["witness"] = w;
    return j;
}

}  // namespace detkit
