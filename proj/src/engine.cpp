#include "mn/engine.hpp"

#include "mn/errors.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <tuple>

namespace mn {

std::string Interval::str() const {
    std::string s = "[" + std::to_string(lo) + ", ";
    return hi ? s + std::to_string(*hi) + "]" : s + "inf)";
}

int novikov_lower_bound(const NovikovProfile& profile) {
    int sum = 0;
    for (const auto& [b, q] : profile.entries) sum += static_cast<int>(b + 2 * q);
    return sum;
}

bool montesinos_tunnel_one(const MontesinosData& d) {
    d.validate();
    const auto& [a1, b1] = d.tangles[0];
    const auto& [a2, b2] = d.tangles[1];
    const auto& [a3, b3] = d.tangles[2];
    // beta_2/alpha_2 = beta_3/alpha_3 (mod Z)
    if (((b2 * a3 - b3 * a2) % (a2 * a3)) != 0) return false;
    mpq_class lhs(d.b);
    lhs -= mpq_class(b1, a1) + mpq_class(b2, a2) + mpq_class(b3, a3);
    lhs.canonicalize();
    mpq_class rhs(1, a1 * a2);
    rhs.canonicalize();
    return lhs == rhs;
}

KnotInvariants classical_invariants(const KnotRecord& record, std::size_t minor_cap) {
    if (record.dimension != 1)
        throw data_error("record '" + record.name + "' is not a classical knot");
    if (!record.pd && !record.braid)
        throw data_error("record '" + record.name + "' has no diagram notation");
    PDCode pd = record.pd ? *record.pd : braid_to_pd(*record.braid);
    WirtingerPresentation pres = wirtinger_from_pd(pd);
    ModulePresentation alex = alexander_presentation(pres);

    KnotInvariants inv;
    inv.delta = alexander_polynomial(alex);
    if (!validate_knot_polynomial(inv.delta))
        throw data_error("record '" + record.name +
                         "': Alexander polynomial violates the knot constraints");
    inv.monic = is_monic(inv.delta);
    inv.torsion = torsion_count(alex, minor_cap);
    inv.profile = knot_profile(alex, record.dimension, minor_cap);
    return inv;
}

// ---------------------------------------------------------------------------
// Derivation engine
// ---------------------------------------------------------------------------

namespace {

std::string profile_str(const NovikovProfile& p) {
    bool any_betti = false;
    for (const auto& e : p.entries) any_betti |= e.betti != 0;
    std::ostringstream out;
    if (any_betti) {
        out << "b^ = (";
        for (std::size_t k = 0; k < p.entries.size(); ++k)
            out << (k ? "," : "") << p.entries[k].betti;
        out << "), ";
    }
    out << "q^ = (";
    for (std::size_t k = 0; k < p.entries.size(); ++k)
        out << (k ? "," : "") << p.entries[k].torsion;
    out << ")";
    return out.str();
}

std::string fibred_str(Tri t) {
    switch (t) {
        case Tri::holds: return "yes";
        case Tri::fails: return "no";
        default: return "unknown";
    }
}

struct Node {
    const KnotExpr* expr = nullptr;
    std::string label;
    int dimension = 0;
    int child = -1; // spin
    int left = -1, right = -1; // sum
    const KnotRecord* record = nullptr;

    Interval mn;
    Interval sd;
    Tri fibred = Tri::unknown;
    Tri f0 = Tri::unknown;
    Tri f1 = Tri::unknown;
    TorsionState tau = TorsionState::unknown;
    std::optional<NovikovProfile> profile;
    std::optional<LaurentPoly> delta;
    bool monic = false;

    std::optional<long> tunnel;
    std::optional<long> bridge;
    std::optional<long> ch;
    bool goda_mn2 = false;
    bool hm_applicable = false;
    std::optional<MontesinosData> montesinos;

    // trace indices that produced each bound; -1 means initial facts
    int mn_lo_src = -1, mn_hi_src = -1, sd_lo_src = -1, sd_hi_src = -1;
    int fibred_src = -1;
};

struct Rule {
    std::string id;
    std::string citation;
    std::function<void()> apply;
};

class Engine {
public:
    Engine(const KnotExpr& expr, const std::vector<KnotRecord>& db, const DeriveOptions& options)
        : db_(db), options_(options) {
        build(expr);
    }

    BoundReport run() {
        std::vector<Rule> rules = make_rules();
        if (options_.rule_shuffle_seed != 0) {
            std::mt19937 gen(options_.rule_shuffle_seed);
            std::shuffle(rules.begin(), rules.end(), gen);
        }
        changed_ = true;
        int passes = 0;
        while (changed_) {
            changed_ = false;
            if (++passes > 1000)
                throw std::logic_error("rule propagation failed to reach a fixpoint");
            for (const Rule& r : rules) {
                current_ = &r;
                r.apply();
            }
        }
        return make_report();
    }

private:
    const std::vector<KnotRecord>& db_;
    DeriveOptions options_;
    std::vector<Node> nodes_;
    std::vector<TraceStep> trace_;
    const Rule* current_ = nullptr;
    bool changed_ = false;

    // -- construction --------------------------------------------------------

    int build(const KnotExpr& e) {
        Node n;
        n.expr = &e;
        switch (e.kind) {
            case KnotExpr::Kind::base: {
                n.record = find_record(e.name);
                n.dimension = n.record->dimension;
                init_base(n);
                break;
            }
            case KnotExpr::Kind::spin: {
                n.child = build(*e.inner);
                n.dimension = nodes_[static_cast<std::size_t>(n.child)].dimension + e.p;
                break;
            }
            case KnotExpr::Kind::sum: {
                n.left = build(*e.left);
                n.right = build(*e.right);
                const Node& l = nodes_[static_cast<std::size_t>(n.left)];
                const Node& r = nodes_[static_cast<std::size_t>(n.right)];
                if (l.dimension != r.dimension)
                    throw data_error("connected sum of knots of different dimensions: " +
                                     l.label + " has dimension " + std::to_string(l.dimension) +
                                     ", " + r.label + " has dimension " +
                                     std::to_string(r.dimension));
                n.dimension = l.dimension;
                break;
            }
        }
        n.label = e.str();
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }

    const KnotRecord* find_record(const std::string& name) {
        for (const auto& r : db_)
            if (r.name == name) return &r;
        throw data_error("unknown knot '" + name + "' (not in the database)");
    }

    void init_base(Node& n) {
        const KnotRecord& r = *n.record;
        n.tunnel = r.tunnel_number;
        n.bridge = r.bridge_number;
        n.ch = r.ch;
        n.goda_mn2 = r.goda_mn2;
        n.hm_applicable = r.hm_applicable;
        n.montesinos = r.montesinos;
        n.fibred = r.fibred;
        n.f0 = r.f0;
        n.f1 = r.f1;
        n.tau = r.tau;
        if (r.sd) n.sd = {static_cast<int>(*r.sd), static_cast<int>(*r.sd)};
        if (r.dimension == 1) {
            KnotInvariants inv = classical_invariants(r, options_.max_minors);
            n.delta = inv.delta;
            n.monic = inv.monic;
            n.profile = inv.profile;
        }
    }

    // -- narrowing primitives -------------------------------------------------

    std::string step_name(int src) const {
        if (src < 0) return "initial facts";
        const TraceStep& s = trace_[static_cast<std::size_t>(src)];
        return "step " + std::to_string(src + 1) + " [" + s.rule + "] " + s.conclusion;
    }

    int push_step(const Node& n, std::string premise, std::string conclusion) {
        trace_.push_back({current_->id, current_->citation, n.label, std::move(premise),
                          std::move(conclusion)});
        changed_ = true;
        return static_cast<int>(trace_.size()) - 1;
    }

    void check_interval(const Node& n, const char* what, const Interval& iv, int lo_src,
                        int hi_src) {
        if (iv.hi && *iv.hi < iv.lo)
            throw inconsistency_error("inconsistent facts for " + n.label + ": " + what +
                                      " lower bound from " + step_name(lo_src) +
                                      " exceeds upper bound from " + step_name(hi_src));
    }

    void narrow_mn_lo(int idx, int value, const std::string& premise) {
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (value <= n.mn.lo) return;
        n.mn_lo_src = push_step(n, premise, "MN(" + n.label + ") >= " + std::to_string(value));
        n.mn.lo = value;
        check_interval(n, "MN", n.mn, n.mn_lo_src, n.mn_hi_src);
    }

    void narrow_mn_hi(int idx, int value, const std::string& premise) {
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (n.mn.hi && *n.mn.hi <= value) return;
        n.mn_hi_src = push_step(n, premise, "MN(" + n.label + ") <= " + std::to_string(value));
        n.mn.hi = value;
        check_interval(n, "MN", n.mn, n.mn_lo_src, n.mn_hi_src);
    }

    void narrow_sd_lo(int idx, int value, const std::string& premise) {
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (value <= n.sd.lo) return;
        n.sd_lo_src = push_step(n, premise, "sd(" + n.label + ") >= " + std::to_string(value));
        n.sd.lo = value;
        check_interval(n, "sd", n.sd, n.sd_lo_src, n.sd_hi_src);
    }

    void narrow_sd_hi(int idx, int value, const std::string& premise) {
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (n.sd.hi && *n.sd.hi <= value) return;
        n.sd_hi_src = push_step(n, premise, "sd(" + n.label + ") <= " + std::to_string(value));
        n.sd.hi = value;
        check_interval(n, "sd", n.sd, n.sd_lo_src, n.sd_hi_src);
    }

    void set_fibred(int idx, Tri value, const std::string& premise) {
        if (value == Tri::unknown) return;
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (n.fibred == value) return;
        if (n.fibred != Tri::unknown)
            throw inconsistency_error("inconsistent facts for " + n.label +
                                      ": fibred = " + fibred_str(n.fibred) + " from " +
                                      step_name(n.fibred_src) + " conflicts with fibred = " +
                                      fibred_str(value) + " derived by rule " + current_->id);
        n.fibred_src =
            push_step(n, premise, "fibred(" + n.label + ") = " + fibred_str(value));
        n.fibred = value;
    }

    void set_tau(int idx, TorsionState value, const std::string& premise) {
        if (value == TorsionState::unknown) return;
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (n.tau == value) return;
        if (n.tau != TorsionState::unknown)
            throw inconsistency_error("inconsistent facts for " + n.label +
                                      ": conflicting torsion states");
        push_step(n, premise, "tau(" + n.label + ") = " + to_string(value));
        n.tau = value;
    }

    void set_condition(int idx, Tri Node::* field, const char* cname, Tri value,
                       const std::string& premise) {
        if (value == Tri::unknown) return;
        Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (n.*field == value) return;
        if (n.*field != Tri::unknown)
            throw inconsistency_error("inconsistent facts for " + n.label +
                                      ": conflicting states for condition " + cname);
        push_step(n, premise, std::string(cname) + "(" + n.label + ") = " + to_string(value));
        n.*field = value;
    }

    // -- rules ----------------------------------------------------------------

    std::vector<Rule> make_rules() {
        std::vector<Rule> rules;
        auto add = [&](std::string id, std::string citation, std::function<void()> f) {
            rules.push_back({std::move(id), std::move(citation), std::move(f)});
        };

        add("R1",
            "Novikov inequality: sum_k (b^_k + q^_k + q^_{k-1}) <= MN(K)",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (!n.profile) continue;
                    int lb = novikov_lower_bound(*n.profile);
                    narrow_mn_lo(static_cast<int>(i), lb, profile_str(*n.profile));
                }
            });

        add("R2",
            "two-knot Novikov bound: 2(q^_1 + q^_2) <= MN(K)",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.dimension != 2 || !n.profile) continue;
                    const auto& e = n.profile->entries;
                    long q1 = e.size() > 1 ? e[1].torsion : 0;
                    long q2 = e.size() > 2 ? e[2].torsion : 0;
                    narrow_mn_lo(static_cast<int>(i), static_cast<int>(2 * (q1 + q2)),
                                 profile_str(*n.profile));
                }
            });

        add("R3",
            "suspension bound: MN(S_p(K)) <= 2 MN(K)",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.child < 0) continue;
                    const Node& k = nodes_[static_cast<std::size_t>(n.child)];
                    if (!k.mn.hi) continue;
                    narrow_mn_hi(static_cast<int>(i), 2 * *k.mn.hi,
                                 "MN(" + k.label + ") <= " + std::to_string(*k.mn.hi));
                }
            });

        add("R4",
            "tunnel-number bound: MN(K) <= 2 t(K) for classical K",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.dimension != 1 || !n.record || !n.tunnel) continue;
                    narrow_mn_hi(static_cast<int>(i), static_cast<int>(2 * *n.tunnel),
                                 "t(" + n.label + ") = " + std::to_string(*n.tunnel));
                }
            });

        add("R5",
            "a knot is fibred exactly when MN = 0",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    Node& n = nodes_[i];
                    if (n.fibred == Tri::holds)
                        narrow_mn_hi(static_cast<int>(i), 0, "fibred(" + n.label + ") = yes");
                    if (n.fibred == Tri::fails)
                        narrow_mn_lo(static_cast<int>(i), 1, "fibred(" + n.label + ") = no");
                    if (n.mn.hi && *n.mn.hi == 0)
                        set_fibred(static_cast<int>(i), Tri::holds,
                                   "MN(" + n.label + ") = [0, 0]");
                    if (n.mn.lo >= 1)
                        set_fibred(static_cast<int>(i), Tri::fails,
                                   "MN(" + n.label + ") >= 1");
                }
            });

        add("R6",
            "spun-knot computation: a classical knot with MN(K) = 2 has MN(S(K)) = 4",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.child < 0 || n.expr->p != 1) continue;
                    const Node& k = nodes_[static_cast<std::size_t>(n.child)];
                    if (k.dimension != 1) continue;
                    if (k.mn.lo != 2 || !k.mn.hi || *k.mn.hi != 2) continue;
                    std::string premise = "MN(" + k.label + ") = [2, 2]";
                    narrow_mn_lo(static_cast<int>(i), 4, premise);
                    narrow_mn_hi(static_cast<int>(i), 4, premise);
                }
            });

        add("R6'",
            "the spin of a non-fibred classical knot has MN >= 4",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.child < 0 || n.expr->p != 1) continue;
                    const Node& k = nodes_[static_cast<std::size_t>(n.child)];
                    if (k.dimension != 1 || k.fibred != Tri::fails) continue;
                    narrow_mn_lo(static_cast<int>(i), 4, "fibred(" + k.label + ") = no");
                }
            });

        add("R7",
            "saddle bound: MN(K) <= 2 sd(K) for 2-knots",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.dimension != 2 || !n.sd.hi) continue;
                    narrow_mn_hi(static_cast<int>(i), 2 * *n.sd.hi,
                                 "sd(" + n.label + ") <= " + std::to_string(*n.sd.hi));
                }
            });

        add("R8",
            "spun saddle bound: sd(S(K)) <= 2 (b(K) - 1) for classical K",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.child < 0 || n.expr->p != 1) continue;
                    const Node& k = nodes_[static_cast<std::size_t>(n.child)];
                    if (k.dimension != 1 || !k.bridge || *k.bridge < 1) continue;
                    narrow_sd_hi(static_cast<int>(i), static_cast<int>(2 * (*k.bridge - 1)),
                                 "b(" + k.label + ") = " + std::to_string(*k.bridge));
                }
            });

        add("R9",
            "regular Morse maps need no extreme-index critical points and the complement "
            "has zero Euler characteristic, so MN is even",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    Node& n = nodes_[i];
                    if (n.mn.lo % 2 != 0)
                        narrow_mn_lo(static_cast<int>(i), n.mn.lo + 1,
                                     "MN(" + n.label + ") >= " + std::to_string(n.mn.lo));
                    if (n.mn.hi && *n.mn.hi % 2 != 0)
                        narrow_mn_hi(static_cast<int>(i), *n.mn.hi - 1,
                                     "MN(" + n.label + ") <= " + std::to_string(*n.mn.hi));
                }
            });

        add("R10",
            "fibredness passes from K to S_p(K); for classical K and p = 1 it also passes back",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.child < 0) continue;
                    int child = n.child;
                    const Node& k = nodes_[static_cast<std::size_t>(child)];
                    if (k.fibred == Tri::holds)
                        set_fibred(static_cast<int>(i), Tri::holds,
                                   "fibred(" + k.label + ") = yes");
                    if (n.fibred == Tri::fails)
                        set_fibred(child, Tri::fails, "fibred(" + n.label + ") = no");
                    if (n.expr->p == 1 && k.dimension == 1) {
                        if (n.fibred == Tri::holds)
                            set_fibred(child, Tri::holds, "fibred(" + n.label + ") = yes");
                        if (k.fibred == Tri::fails)
                            set_fibred(static_cast<int>(i), Tri::fails,
                                       "fibred(" + k.label + ") = no");
                    }
                }
            });

        add("R11",
            "high-dimensional fibredness logic: fibred iff F0, F1, F2 hold (dimension >= 6); "
            "tau(S_p(K)) = (1 + (-1)^p) tau(K); same-parity and odd-p iterated spins share "
            "their fibredness",
            [this] { rule_highdim(); });

        add("R12",
            "the Novikov homology of a superspun knot is the base homology plus a degree-p "
            "shifted copy, so profiles suspend",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    Node& n = nodes_[i];
                    if (n.child < 0 || n.profile) continue;
                    const Node& k = nodes_[static_cast<std::size_t>(n.child)];
                    if (!k.profile) continue;
                    NovikovProfile suspended = suspend_profile(*k.profile, n.expr->p);
                    push_step(n, profile_str(*k.profile) + " for " + k.label,
                              "profile(" + n.label + ") = " + profile_str(suspended));
                    n.profile = std::move(suspended);
                }
            });

        add("R13",
            "connected-sum bound: MN(K1 # K2) <= MN(K1) + MN(K2); the lower bound is the "
            "larger component bound",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.left < 0) continue;
                    const Node& l = nodes_[static_cast<std::size_t>(n.left)];
                    const Node& r = nodes_[static_cast<std::size_t>(n.right)];
                    if (l.mn.hi && r.mn.hi)
                        narrow_mn_hi(static_cast<int>(i), *l.mn.hi + *r.mn.hi,
                                     "MN(" + l.label + ") <= " + std::to_string(*l.mn.hi) +
                                         ", MN(" + r.label + ") <= " + std::to_string(*r.mn.hi));
                    int lo = std::max(l.mn.lo, r.mn.lo);
                    narrow_mn_lo(static_cast<int>(i), lo,
                                 "MN(" + l.label + ") >= " + std::to_string(l.mn.lo) + ", MN(" +
                                     r.label + ") >= " + std::to_string(r.mn.lo));
                }
            });

        add("R14",
            "Montesinos criterion: M(3,(a1,b1),(a2,b2),(a3,b3)) with b2/a2 = b3/a3 (mod Z) "
            "and b - sum(bi/ai) = 1/(a1 a2) has tunnel number 1",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    Node& n = nodes_[i];
                    if (!n.record || !n.montesinos) continue;
                    if (!montesinos_tunnel_one(*n.montesinos)) continue;
                    if (n.tunnel && *n.tunnel != 1)
                        throw inconsistency_error(
                            "inconsistent facts for " + n.label + ": tunnel_number fact " +
                            std::to_string(*n.tunnel) +
                            " conflicts with the Montesinos criterion (tunnel number 1)");
                    if (n.tunnel) continue;
                    push_step(n, "Montesinos data satisfies the criterion",
                              "t(" + n.label + ") = 1");
                    n.tunnel = 1;
                }
            });

        add("R15",
            "for flagged records, fibredness is detected by the monicness of the Alexander "
            "polynomial",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (!n.record || !n.hm_applicable || !n.delta) continue;
                    set_fibred(static_cast<int>(i), n.monic ? Tri::holds : Tri::fails,
                               "Delta = " + n.delta->str() + " is " +
                                   (n.monic ? "monic" : "not monic"));
                }
            });

        add("R16",
            "saddle-number squeeze: q^_1 + q^_2 <= sd(K) <= ch(K) for 2-knots",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (n.dimension != 2) continue;
                    if (n.profile) {
                        const auto& e = n.profile->entries;
                        long q1 = e.size() > 1 ? e[1].torsion : 0;
                        long q2 = e.size() > 2 ? e[2].torsion : 0;
                        narrow_sd_lo(static_cast<int>(i), static_cast<int>(q1 + q2),
                                     profile_str(*n.profile));
                    }
                    if (n.ch)
                        narrow_sd_hi(static_cast<int>(i), static_cast<int>(*n.ch),
                                     "ch(" + n.label + ") = " + std::to_string(*n.ch));
                }
            });

        add("R17",
            "non-fibred prime knots with at most 10 crossings have MN = 2 (flagged records)",
            [this] {
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    const Node& n = nodes_[i];
                    if (!n.record || !n.goda_mn2 || n.fibred != Tri::fails) continue;
                    std::string premise = "goda_mn2 flag, fibred(" + n.label + ") = no";
                    narrow_mn_lo(static_cast<int>(i), 2, premise);
                    narrow_mn_hi(static_cast<int>(i), 2, premise);
                }
            });

        return rules;
    }

    void rule_highdim() {
        // torsion parity and the F0/F1 transfer across one spin
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            Node& n = nodes_[i];
            if (n.child < 0) continue;
            int child = n.child;
            Node& k = nodes_[static_cast<std::size_t>(child)];
            if (k.dimension < 6) continue;
            set_tau(static_cast<int>(i), spun_torsion(k.tau, n.expr->p),
                    "tau(" + k.label + ") = " + to_string(k.tau) + ", p = " +
                        std::to_string(n.expr->p));
            // Ker xi and the abelian Novikov homology are unchanged by spinning
            set_condition(static_cast<int>(i), &Node::f0, "F0", k.f0,
                          "F0(" + k.label + ") = " + to_string(k.f0));
            set_condition(child, &Node::f0, "F0", n.f0, "F0(" + n.label + ") = " + to_string(n.f0));
            set_condition(static_cast<int>(i), &Node::f1, "F1", k.f1,
                          "F1(" + k.label + ") = " + to_string(k.f1));
            set_condition(child, &Node::f1, "F1", n.f1, "F1(" + n.label + ") = " + to_string(n.f1));
        }

        // fibredness from the three conditions
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            if (n.dimension < 6) continue;
            FibredState state{n.f0, n.f1, n.tau};
            Tri verdict = highdim_fibred(state, n.dimension);
            set_fibred(static_cast<int>(i), verdict,
                       "F0 = " + to_string(n.f0) + ", F1 = " + to_string(n.f1) +
                           ", tau = " + to_string(n.tau));
        }

        // same-parity spins of the same base are fibred together
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& a = nodes_[i];
            if (a.child < 0 || a.fibred == Tri::unknown) continue;
            const Node& base_a = nodes_[static_cast<std::size_t>(a.child)];
            if (base_a.dimension < 6) continue;
            for (std::size_t j = 0; j < nodes_.size(); ++j) {
                if (i == j) continue;
                const Node& b = nodes_[j];
                if (b.child < 0) continue;
                const Node& base_b = nodes_[static_cast<std::size_t>(b.child)];
                if (base_b.label != base_a.label) continue;
                Tri transferred =
                    spin_parity_transfer(a.expr->p, b.expr->p, a.fibred, base_a.dimension);
                set_fibred(static_cast<int>(j), transferred,
                           "fibred(" + a.label + ") = " + fibred_str(a.fibred) +
                               ", same spin parity");
            }
        }

        // odd-p iterated spin towers over the same core share their fibredness
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            auto tower_i = spin_tower(static_cast<int>(i));
            if (!tower_i || nodes_[i].fibred == Tri::unknown) continue;
            auto [core_i, p_i, height_i] = *tower_i;
            if (p_i % 2 == 0 || nodes_[static_cast<std::size_t>(core_i)].dimension < 6) continue;
            for (std::size_t j = 0; j < nodes_.size(); ++j) {
                if (i == j) continue;
                auto tower_j = spin_tower(static_cast<int>(j));
                if (!tower_j) continue;
                auto [core_j, p_j, height_j] = *tower_j;
                if (p_j != p_i ||
                    nodes_[static_cast<std::size_t>(core_j)].label !=
                        nodes_[static_cast<std::size_t>(core_i)].label)
                    continue;
                Tri transferred = iterated_spin_transfer(
                    p_i, height_j, height_i, nodes_[i].fibred,
                    nodes_[static_cast<std::size_t>(core_i)].dimension);
                set_fibred(static_cast<int>(j), transferred,
                           "fibred(" + nodes_[i].label + ") = " + fibred_str(nodes_[i].fibred) +
                               ", odd-p iterated spin of the same knot");
            }
        }
    }

    // (core index, p, height) when the node is a tower of same-degree spins.
    std::optional<std::tuple<int, int, int>> spin_tower(int idx) const {
        const Node& n = nodes_[static_cast<std::size_t>(idx)];
        if (n.child < 0) return std::nullopt;
        int p = n.expr->p;
        int height = 0;
        int core = idx;
        while (true) {
            const Node& c = nodes_[static_cast<std::size_t>(core)];
            if (c.child < 0 || c.expr->p != p) break;
            ++height;
            core = c.child;
        }
        return std::tuple<int, int, int>{core, p, height};
    }

    // -- report ---------------------------------------------------------------

    BoundReport make_report() const {
        BoundReport report;
        report.trace = trace_;
        for (const Node& n : nodes_) {
            NodeReport nr;
            nr.expr = n.label;
            nr.dimension = n.dimension;
            nr.mn = n.mn;
            nr.sd = n.sd;
            nr.fibred = n.fibred;
            nr.profile = n.profile;
            if (n.delta) nr.alexander = n.delta->str();
            if (n.tunnel) nr.facts["tunnel_number"] = std::to_string(*n.tunnel);
            if (n.bridge) nr.facts["bridge_number"] = std::to_string(*n.bridge);
            if (n.ch) nr.facts["ch"] = std::to_string(*n.ch);
            if (n.record && n.record->sd) nr.facts["sd"] = std::to_string(*n.record->sd);
            if (n.goda_mn2) nr.facts["goda_mn2"] = "true";
            if (n.hm_applicable) nr.facts["hm_applicable"] = "true";
            if (n.record && n.record->fibred != Tri::unknown)
                nr.facts["fibred"] = fibred_str(n.record->fibred);
            if (n.f0 != Tri::unknown) nr.facts["f0"] = to_string(n.f0);
            if (n.f1 != Tri::unknown) nr.facts["f1"] = to_string(n.f1);
            if (n.tau != TorsionState::unknown) nr.facts["tau"] = to_string(n.tau);
            report.nodes.push_back(std::move(nr));
        }
        return report;
    }
};

} // namespace

BoundReport derive(const KnotExpr& expr, const std::vector<KnotRecord>& db,
                   const DeriveOptions& options) {
    return Engine(expr, db, options).run();
}

std::string explain(const BoundReport& report) {
    std::ostringstream out;
    out << "derivation for " << report.root().expr << "\n\n";
    if (report.trace.empty()) {
        out << "no rule narrowed any bound\n";
    } else {
        out << "steps:\n";
        for (std::size_t i = 0; i < report.trace.size(); ++i) {
            const TraceStep& s = report.trace[i];
            out << "  " << i + 1 << ". [" << s.rule << "] " << s.node << ": " << s.premise
                << "  =>  " << s.conclusion << "\n";
            out << "     rule: " << s.citation << "\n";
        }
    }
    out << "\nfinal bounds:\n";
    for (const NodeReport& n : report.nodes) {
        out << "  " << n.expr << ": dimension " << n.dimension << ", MN = " << n.mn.str()
            << ", fibred = " << fibred_str(n.fibred);
        if (n.sd.lo != 0 || n.sd.hi) out << ", sd = " << n.sd.str();
        if (n.profile) out << ", " << profile_str(*n.profile);
        if (n.alexander) out << ", Delta = " << *n.alexander;
        out << "\n";
    }
    return out.str();
}

namespace {

nlohmann::json interval_to_json(const Interval& iv) {
    nlohmann::json j;
    j["lo"] = iv.lo;
    if (iv.hi)
        j["hi"] = *iv.hi;
    else
        j["hi"] = nullptr;
    return j;
}

Interval interval_from_json(const nlohmann::json& j) {
    Interval iv;
    iv.lo = j.at("lo").get<int>();
    if (!j.at("hi").is_null()) iv.hi = j.at("hi").get<int>();
    return iv;
}

nlohmann::json profile_to_json(const NovikovProfile& p) {
    nlohmann::json betti = nlohmann::json::array();
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& e : p.entries) {
        betti.push_back(e.betti);
        torsion.push_back(e.torsion);
    }
    return {{"betti", betti}, {"torsion", torsion}};
}

NovikovProfile profile_from_json(const nlohmann::json& j) {
    NovikovProfile p;
    const auto& betti = j.at("betti");
    const auto& torsion = j.at("torsion");
    for (std::size_t k = 0; k < betti.size(); ++k)
        p.entries.push_back({betti[k].get<long>(), torsion[k].get<long>()});
    return p;
}

} // namespace

nlohmann::json report_to_json(const BoundReport& report) {
    nlohmann::json j;
    j["report_version"] = 1;
    j["expr"] = report.root().expr;
    nlohmann::json nodes = nlohmann::json::array();
    for (const NodeReport& n : report.nodes) {
        nlohmann::json nj;
        nj["expr"] = n.expr;
        nj["dimension"] = n.dimension;
        nj["mn"] = interval_to_json(n.mn);
        nj["sd"] = interval_to_json(n.sd);
        nj["fibred"] = fibred_str(n.fibred);
        if (n.profile) nj["profile"] = profile_to_json(*n.profile);
        if (n.alexander) nj["alexander"] = *n.alexander;
        nj["facts"] = n.facts;
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
    nlohmann::json trace = nlohmann::json::array();
    for (const TraceStep& s : report.trace)
        trace.push_back({{"rule", s.rule},
                         {"citation", s.citation},
                         {"node", s.node},
                         {"premise", s.premise},
                         {"conclusion", s.conclusion}});
    j["trace"] = std::move(trace);
    return j;
}

BoundReport report_from_json(const nlohmann::json& j) {
    if (j.at("report_version").get<int>() != 1)
        throw data_error("unsupported report version");
    BoundReport report;
    for (const auto& nj : j.at("nodes")) {
        NodeReport n;
        n.expr = nj.at("expr").get<std::string>();
        n.dimension = nj.at("dimension").get<int>();
        n.mn = interval_from_json(nj.at("mn"));
        n.sd = interval_from_json(nj.at("sd"));
        n.fibred = tri_from_string(nj.at("fibred").get<std::string>());
        if (nj.contains("profile")) n.profile = profile_from_json(nj.at("profile"));
        if (nj.contains("alexander")) n.alexander = nj.at("alexander").get<std::string>();
        if (nj.contains("facts"))
            n.facts = nj.at("facts").get<std::map<std::string, std::string>>();
        report.nodes.push_back(std::move(n));
    }
    for (const auto& sj : j.at("trace"))
        report.trace.push_back({sj.at("rule").get<std::string>(),
                                sj.at("citation").get<std::string>(),
                                sj.at("node").get<std::string>(),
                                sj.at("premise").get<std::string>(),
                                sj.at("conclusion").get<std::string>()});
    return report;
}

void save_report(const BoundReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot open file for writing: " + path);
    out << report_to_json(report).dump(2) << "\n";
}

} // namespace mn
