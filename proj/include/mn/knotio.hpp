#pragma once

#include "mn/tri.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mn {

/// Braid word on s strands; letters are nonzero integers i with |i| < s,
/// sign giving the crossing sign.  Valid words close up to a knot (the
/// closure permutation is a single s-cycle).
struct BraidWord {
    int strands;
    std::vector<int> letters;

    /// Grammar: "s=<int>; w=<signed ints comma-separated>", e.g. "s=2; w=1,1,1".
    static BraidWord parse(std::string_view text);
    std::string str() const;

    /// Range and closure validation; throws data_error on violation.
    void validate() const;
};

/// Planar-diagram code.  Each crossing lists the four incident edges
/// counterclockwise starting from the incoming under-strand; edges are
/// numbered 1..2c consecutively along the orientation.
struct PDCode {
    struct Crossing {
        int a, b, c, d;
        bool operator==(const Crossing&) const = default;
    };
    std::vector<Crossing> crossings;

    /// Grammar: whitespace-separated "X(a,b,c,d)" tuples.
    static PDCode parse(std::string_view text);
    std::string str() const;

    /// Label multiset, orientation consistency and single-component checks.
    void validate() const;

    /// Edge the over-strand enters at; the over-strand leaves at the edge
    /// numbered one higher (mod 2c).
    int over_in(const Crossing& x) const;
    /// Crossing sign under the counterclockwise tuple convention:
    /// +1 when the over-strand enters at the d position, -1 at the b position.
    int sign(const Crossing& x) const;

    bool operator==(const PDCode&) const = default;
};

/// PD code of the braid closure with deterministic edge labeling (edges are
/// numbered along the orientation starting from strand 1 at the top).
/// Positive braid letters produce positive crossings.
PDCode braid_to_pd(const BraidWord& b);

/// Montesinos knot data M(3, (a1,b1), (a2,b2), (a3,b3)) with integer part b.
struct MontesinosData {
    long b;
    std::array<std::pair<long, long>, 3> tangles; // (alpha >= 2, beta), gcd(alpha,beta) = 1

    void validate() const;
};

/// One knot-table entry.  Facts are curated literature values, each carrying a
/// provenance note; they are inputs, never computed.
struct KnotRecord {
    std::string name;
    int dimension = 1;
    std::optional<PDCode> pd;
    std::optional<BraidWord> braid;

    std::optional<long> tunnel_number;
    std::optional<long> bridge_number;
    std::optional<long> sd;
    std::optional<long> ch;
    Tri fibred = Tri::unknown;
    bool goda_mn2 = false;      // non-fibred prime knot with <= 10 crossings
    bool hm_applicable = false; // monic Alexander polynomial detects fibredness
    std::optional<MontesinosData> montesinos;

    // High-dimensional records (dimension >= 6) may carry the fibration
    // conditions as input flags.
    Tri f0 = Tri::unknown;
    Tri f1 = Tri::unknown;
    TorsionState tau = TorsionState::unknown;

    std::map<std::string, std::string> provenance; // fact name -> source note
    nlohmann::json extras = nlohmann::json::object(); // unknown fields, preserved
};

KnotRecord record_from_json(const nlohmann::json& j);
nlohmann::json record_to_json(const KnotRecord& r);

/// Loads a newline-delimited UTF-8 knot database.  Schema violations are
/// reported with "path:line:" prefixes.  An empty file yields no records.
std::vector<KnotRecord> load_db(const std::string& path);

/// Parses database content given as a string (same format as load_db).
std::vector<KnotRecord> parse_db(std::string_view content, const std::string& origin);

/// Writes records back out, one JSON object per line with sorted keys.
void save_db(const std::vector<KnotRecord>& records, const std::string& path);

/// Knot table bundled into the binary (used when no --db is given).
std::string_view bundled_seed_db();

struct BoundReport;
/// Serializes a derivation report (see mn/engine.hpp) to a file.
void save_report(const BoundReport& report, const std::string& path);

} // namespace mn
