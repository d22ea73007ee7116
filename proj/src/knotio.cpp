#include "mn/knotio.hpp"

#include "mn/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mn {

// ---------------------------------------------------------------------------
// Braid words
// ---------------------------------------------------------------------------

namespace {

struct TextCursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    [[noreturn]] void fail(const std::string& what) {
        throw parse_error("syntax error at position " + std::to_string(i) + ": " + what);
    }
    long integer() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected an integer");
        long v = 0;
        try {
            v = std::stol(std::string(s.substr(start, i - start)));
        } catch (const std::out_of_range&) {
            fail("integer out of range");
        }
        return neg ? -v : v;
    }
};

} // namespace

BraidWord BraidWord::parse(std::string_view text) {
    TextCursor c{text};
    if (!c.eat('s')) c.fail("expected 's='");
    if (!c.eat('=')) c.fail("expected '=' after 's'");
    long strands = c.integer();
    if (!c.eat(';')) c.fail("expected ';' after strand count");
    if (!c.eat('w')) c.fail("expected 'w='");
    if (!c.eat('=')) c.fail("expected '=' after 'w'");
    std::vector<int> letters;
    if (!c.done()) {
        letters.push_back(static_cast<int>(c.integer()));
        while (c.eat(',')) letters.push_back(static_cast<int>(c.integer()));
    }
    if (!c.done()) c.fail("trailing characters after braid word");
    BraidWord b{static_cast<int>(strands), std::move(letters)};
    b.validate();
    return b;
}

std::string BraidWord::str() const {
    std::ostringstream out;
    out << "s=" << strands << "; w=";
    for (std::size_t k = 0; k < letters.size(); ++k) {
        if (k) out << ",";
        out << letters[k];
    }
    return out.str();
}

void BraidWord::validate() const {
    if (strands < 2) throw data_error("braid needs at least 2 strands");
    for (int l : letters) {
        if (l == 0 || std::abs(l) > strands - 1)
            throw data_error("braid letter " + std::to_string(l) + " out of range for " +
                             std::to_string(strands) + " strands");
    }
    // closure components = cycles of the underlying permutation
    std::vector<int> perm(static_cast<std::size_t>(strands));
    std::iota(perm.begin(), perm.end(), 0);
    for (int l : letters) {
        int i = std::abs(l) - 1;
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i) + 1]);
    }
    std::vector<bool> seen(static_cast<std::size_t>(strands), false);
    int cycles = 0;
    for (int v = 0; v < strands; ++v) {
        if (seen[static_cast<std::size_t>(v)]) continue;
        ++cycles;
        int u = v;
        while (!seen[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = true;
            u = perm[static_cast<std::size_t>(u)];
        }
    }
    if (cycles != 1)
        throw data_error("braid closure is not a knot (" + std::to_string(cycles) +
                         " components)");
}

// ---------------------------------------------------------------------------
// PD codes
// ---------------------------------------------------------------------------

PDCode PDCode::parse(std::string_view text) {
    TextCursor c{text};
    PDCode pd;
    if (c.done()) c.fail("empty planar-diagram code");
    while (!c.done()) {
        if (!c.eat('X')) c.fail("expected 'X'");
        if (!c.eat('(')) c.fail("expected '(' after 'X'");
        Crossing x{};
        x.a = static_cast<int>(c.integer());
        if (!c.eat(',')) c.fail("expected ','");
        x.b = static_cast<int>(c.integer());
        if (!c.eat(',')) c.fail("expected ','");
        x.c = static_cast<int>(c.integer());
        if (!c.eat(',')) c.fail("expected ','");
        x.d = static_cast<int>(c.integer());
        if (!c.eat(')')) c.fail("expected ')'");
        pd.crossings.push_back(x);
        c.eat(','); // optional separator between tuples
    }
    pd.validate();
    return pd;
}

std::string PDCode::str() const {
    std::ostringstream out;
    for (std::size_t k = 0; k < crossings.size(); ++k) {
        if (k) out << " ";
        const Crossing& x = crossings[k];
        out << "X(" << x.a << "," << x.b << "," << x.c << "," << x.d << ")";
    }
    return out.str();
}

namespace {

int pd_succ(int k, int n_edges) { return k % n_edges + 1; }

} // namespace

int PDCode::over_in(const Crossing& x) const {
    const int n = 2 * static_cast<int>(crossings.size());
    const bool enters_d = x.b == pd_succ(x.d, n);
    const bool enters_b = x.d == pd_succ(x.b, n);
    // both only in the 1-crossing diagram; the incoming under-edge breaks the tie
    if (enters_d && enters_b) return x.b == x.a ? x.d : x.b;
    if (enters_d) return x.d;
    if (enters_b) return x.b;
    throw data_error("over-strand edges are not consecutive at crossing X(" +
                     std::to_string(x.a) + "," + std::to_string(x.b) + "," + std::to_string(x.c) +
                     "," + std::to_string(x.d) + ")");
}

int PDCode::sign(const Crossing& x) const { return over_in(x) == x.d ? 1 : -1; }

void PDCode::validate() const {
    const int c = static_cast<int>(crossings.size());
    const int n = 2 * c;
    std::vector<int> uses(static_cast<std::size_t>(n) + 1, 0);
    for (const Crossing& x : crossings) {
        for (int label : {x.a, x.b, x.c, x.d}) {
            if (label < 1 || label > n)
                throw data_error("edge label " + std::to_string(label) +
                                 " out of range 1.." + std::to_string(n));
            ++uses[static_cast<std::size_t>(label)];
        }
    }
    for (int label = 1; label <= n; ++label) {
        if (uses[static_cast<std::size_t>(label)] != 2)
            throw data_error("edge label " + std::to_string(label) + " occurs " +
                             std::to_string(uses[static_cast<std::size_t>(label)]) +
                             " times; every label 1.." + std::to_string(n) +
                             " must occur exactly twice");
    }
    std::vector<int> incoming(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> outgoing(static_cast<std::size_t>(n) + 1, 0);
    for (const Crossing& x : crossings) {
        if (x.c != pd_succ(x.a, n))
            throw data_error(
                "under-strand edges " + std::to_string(x.a) + " -> " + std::to_string(x.c) +
                " are not consecutive along the orientation; diagram is not a "
                "single-component knot in standard labeling");
        int oin = over_in(x); // throws when the over pair is inconsistent
        int oout = pd_succ(oin, n);
        ++incoming[static_cast<std::size_t>(x.a)];
        ++incoming[static_cast<std::size_t>(oin)];
        ++outgoing[static_cast<std::size_t>(x.c)];
        ++outgoing[static_cast<std::size_t>(oout)];
    }
    for (int label = 1; label <= n; ++label) {
        if (incoming[static_cast<std::size_t>(label)] != 1 ||
            outgoing[static_cast<std::size_t>(label)] != 1)
            throw data_error("edge " + std::to_string(label) +
                             " does not enter and leave exactly one crossing");
    }
}

// ---------------------------------------------------------------------------
// Braid closure -> PD
// ---------------------------------------------------------------------------

PDCode braid_to_pd(const BraidWord& b) {
    b.validate();
    const int c = static_cast<int>(b.letters.size());
    const int n_edges = 2 * c;

    struct Ports {
        int in_left = 0, in_right = 0, out_left = 0, out_right = 0;
    };
    std::vector<Ports> ports(static_cast<std::size_t>(c));

    // Walk the closure once, numbering edges 1..2c in the order passages occur.
    int pos = 1;
    int letter = 0;
    int edge = 1;
    for (int passage = 0; passage < n_edges; ++passage) {
        // advance to the next crossing involving the current strand position
        for (;;) {
            int col = std::abs(b.letters[static_cast<std::size_t>(letter)]);
            if (pos == col || pos == col + 1) break;
            letter = (letter + 1) % c;
        }
        Ports& p = ports[static_cast<std::size_t>(letter)];
        int col = std::abs(b.letters[static_cast<std::size_t>(letter)]);
        int next_edge = edge % n_edges + 1;
        if (pos == col) {
            p.in_left = edge;
            p.out_right = next_edge;
            pos = col + 1;
        } else {
            p.in_right = edge;
            p.out_left = next_edge;
            pos = col;
        }
        edge = next_edge;
        letter = (letter + 1) % c;
    }

    PDCode pd;
    pd.crossings.reserve(static_cast<std::size_t>(c));
    for (int j = 0; j < c; ++j) {
        const Ports& p = ports[static_cast<std::size_t>(j)];
        if (b.letters[static_cast<std::size_t>(j)] > 0) {
            // positive letter: right strand passes over; under runs NW -> SE
            pd.crossings.push_back({p.in_left, p.out_left, p.out_right, p.in_right});
        } else {
            // negative letter: left strand passes over; under runs NE -> SW
            pd.crossings.push_back({p.in_right, p.in_left, p.out_left, p.out_right});
        }
    }
    pd.validate();
    return pd;
}

// ---------------------------------------------------------------------------
// Montesinos data
// ---------------------------------------------------------------------------

void MontesinosData::validate() const {
    for (const auto& [alpha, beta] : tangles) {
        if (alpha < 2) throw data_error("Montesinos tangle needs alpha >= 2");
        if (std::gcd(alpha, beta) != 1)
            throw data_error("Montesinos tangle (" + std::to_string(alpha) + "," +
                             std::to_string(beta) + ") is not reduced");
    }
}

namespace {

// "b=<int>; (a1,b1),(a2,b2),(a3,b3)"
MontesinosData montesinos_from_string(std::string_view text) {
    TextCursor c{text};
    if (!c.eat('b')) c.fail("expected 'b='");
    if (!c.eat('=')) c.fail("expected '=' after 'b'");
    MontesinosData m{};
    m.b = c.integer();
    if (!c.eat(';')) c.fail("expected ';' after b");
    for (int k = 0; k < 3; ++k) {
        if (k && !c.eat(',')) c.fail("expected ',' between tangles");
        if (!c.eat('(')) c.fail("expected '('");
        long alpha = c.integer();
        if (!c.eat(',')) c.fail("expected ',' inside tangle");
        long beta = c.integer();
        if (!c.eat(')')) c.fail("expected ')'");
        m.tangles[static_cast<std::size_t>(k)] = {alpha, beta};
    }
    if (!c.done()) c.fail("trailing characters after Montesinos data");
    m.validate();
    return m;
}

std::string montesinos_to_string(const MontesinosData& m) {
    std::ostringstream out;
    out << "b=" << m.b << "; ";
    for (int k = 0; k < 3; ++k) {
        if (k) out << ",";
        out << "(" << m.tangles[static_cast<std::size_t>(k)].first << ","
            << m.tangles[static_cast<std::size_t>(k)].second << ")";
    }
    return out.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Records and the database file
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

long nonneg_fact(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw data_error("field '" + key + "' must be an integer");
    long x = v.get<long>();
    if (x < 0) throw data_error("field '" + key + "' must be nonnegative");
    return x;
}

std::string string_field(const json& v, const std::string& key) {
    if (!v.is_string()) throw data_error("field '" + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace

KnotRecord record_from_json(const json& j) {
    if (!j.is_object()) throw data_error("record must be a JSON object");
    KnotRecord r;
    for (const auto& [key, value] : j.items()) {
        if (key == "name") {
            r.name = string_field(value, key);
        } else if (key == "dimension") {
            r.dimension = static_cast<int>(nonneg_fact(value, key));
        } else if (key == "pd") {
            r.pd = PDCode::parse(string_field(value, key));
        } else if (key == "braid") {
            r.braid = BraidWord::parse(string_field(value, key));
        } else if (key == "tunnel_number") {
            r.tunnel_number = nonneg_fact(value, key);
        } else if (key == "bridge_number") {
            r.bridge_number = nonneg_fact(value, key);
        } else if (key == "sd") {
            r.sd = nonneg_fact(value, key);
        } else if (key == "ch") {
            r.ch = nonneg_fact(value, key);
        } else if (key == "fibred") {
            r.fibred = tri_from_string(string_field(value, key));
        } else if (key == "goda_mn2") {
            if (!value.is_boolean()) throw data_error("field 'goda_mn2' must be a boolean");
            r.goda_mn2 = value.get<bool>();
        } else if (key == "hm_applicable") {
            if (!value.is_boolean()) throw data_error("field 'hm_applicable' must be a boolean");
            r.hm_applicable = value.get<bool>();
        } else if (key == "montesinos") {
            r.montesinos = montesinos_from_string(string_field(value, key));
        } else if (key == "f0") {
            r.f0 = tri_from_string(string_field(value, key));
        } else if (key == "f1") {
            r.f1 = tri_from_string(string_field(value, key));
        } else if (key == "tau") {
            r.tau = torsion_from_string(string_field(value, key));
        } else if (key.starts_with("provenance.")) {
            r.provenance[key.substr(std::string("provenance.").size())] =
                string_field(value, key);
        } else {
            r.extras[key] = value;
        }
    }
    if (r.name.empty()) throw data_error("record is missing a name");
    if (r.dimension < 1) throw data_error("record dimension must be at least 1");
    if (r.dimension == 1 && !r.pd && !r.braid)
        throw data_error("classical record '" + r.name + "' needs a pd or braid notation");
    return r;
}

json record_to_json(const KnotRecord& r) {
    json j = r.extras.is_object() ? r.extras : json::object();
    j["name"] = r.name;
    j["dimension"] = r.dimension;
    if (r.pd) j["pd"] = r.pd->str();
    if (r.braid) j["braid"] = r.braid->str();
    if (r.tunnel_number) j["tunnel_number"] = *r.tunnel_number;
    if (r.bridge_number) j["bridge_number"] = *r.bridge_number;
    if (r.sd) j["sd"] = *r.sd;
    if (r.ch) j["ch"] = *r.ch;
    if (r.fibred != Tri::unknown) j["fibred"] = r.fibred == Tri::holds ? "yes" : "no";
    if (r.goda_mn2) j["goda_mn2"] = true;
    if (r.hm_applicable) j["hm_applicable"] = true;
    if (r.montesinos) j["montesinos"] = montesinos_to_string(*r.montesinos);
    if (r.f0 != Tri::unknown) j["f0"] = to_string(r.f0);
    if (r.f1 != Tri::unknown) j["f1"] = to_string(r.f1);
    if (r.tau != TorsionState::unknown) j["tau"] = to_string(r.tau);
    for (const auto& [fact, note] : r.provenance) j["provenance." + fact] = note;
    return j;
}

std::vector<KnotRecord> parse_db(std::string_view content, const std::string& origin) {
    std::vector<KnotRecord> records;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string_view line =
            content.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                              : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            json j = json::parse(line);
            records.push_back(record_from_json(j));
        } catch (const json::exception& e) {
            throw data_error(origin + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const std::runtime_error& e) {
            throw data_error(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<KnotRecord> load_db(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open database file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_db(buffer.str(), path);
}

void save_db(const std::vector<KnotRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot open file for writing: " + path);
    for (const auto& r : records) out << record_to_json(r).dump() << "\n";
}

} // namespace mn
