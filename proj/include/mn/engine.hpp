#pragma once

#include "mn/expr.hpp"
#include "mn/knotio.hpp"
#include "mn/spin.hpp"
#include "mn/wirtinger.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mn {

/// Closed integer interval; an absent upper end means +infinity.
struct Interval {
    int lo = 0;
    std::optional<int> hi;

    bool operator==(const Interval&) const = default;
    std::string str() const;
};

/// Lower bound for the Morse-Novikov number coming from the Novikov
/// inequalities: sum over k of (b^_k + q^_k + q^_{k-1}), i.e. every torsion
/// number is counted in two adjacent degrees.
int novikov_lower_bound(const NovikovProfile& profile);

/// Tunnel-number-one criterion for Montesinos knots M(3, ...): true iff
/// beta_2/alpha_2 = beta_3/alpha_3 (mod Z) and b - sum(beta_i/alpha_i) =
/// 1/(alpha_1 alpha_2), decided in exact rational arithmetic.
bool montesinos_tunnel_one(const MontesinosData& d);

struct TraceStep {
    std::string rule;       // rule identifier, e.g. "R4"
    std::string citation;   // statement of the fact the rule encodes
    std::string node;       // expression the step narrows
    std::string premise;
    std::string conclusion;
};

struct NodeReport {
    std::string expr;
    int dimension = 0;
    Interval mn;
    Interval sd;
    Tri fibred = Tri::unknown;
    std::optional<NovikovProfile> profile;
    std::optional<std::string> alexander;
    std::map<std::string, std::string> facts;
};

/// Result of a derivation: per-node bounds (post-order over the expression
/// tree, root last) and the full narrowing trace.
struct BoundReport {
    std::vector<NodeReport> nodes;
    std::vector<TraceStep> trace;

    const NodeReport& root() const { return nodes.back(); }
};

struct DeriveOptions {
    std::size_t max_minors = kDefaultMinorCap;
    /// Nonzero seeds shuffle the rule application order; the fixpoint must
    /// not depend on it (exercised by the confluence tests).
    unsigned rule_shuffle_seed = 0;
};

/// Runs the classical pipeline on base knots and propagates the rule set to a
/// fixpoint.  Every narrowing is traced with the rule that produced it;
/// conflicting conclusions raise inconsistency_error naming both trace steps.
BoundReport derive(const KnotExpr& expr, const std::vector<KnotRecord>& db,
                   const DeriveOptions& options = {});

/// Renders the trace and final bounds as deterministic text.
std::string explain(const BoundReport& report);

nlohmann::json report_to_json(const BoundReport& report);
BoundReport report_from_json(const nlohmann::json& j);

/// Invariants of a classical knot computed from its diagram notation.
struct KnotInvariants {
    LaurentPoly delta;
    bool monic = false;
    TorsionCount torsion{0, 0};
    NovikovProfile profile;
};

/// Diagram -> Wirtinger -> Fox -> Alexander -> Novikov profile, with the knot
/// polynomial constraints checked along the way.  Uses the PD notation when
/// present, otherwise converts the braid word.
KnotInvariants classical_invariants(const KnotRecord& record,
                                    std::size_t minor_cap = kDefaultMinorCap);

} // namespace mn
