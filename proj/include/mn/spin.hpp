#pragma once

#include "mn/novikov.hpp"
#include "mn/tri.hpp"

#include <vector>

namespace mn {

/// Index counts m_0..m_{n+2} of a regular circle-valued Morse map on the
/// complement of an n-knot.  The alternating sum vanishes (the complement has
/// zero Euler characteristic).
struct MorseVector {
    int knot_dimension;
    std::vector<long> counts;

    MorseVector(int knot_dimension, std::vector<long> counts);
    long total() const;
    bool operator==(const MorseVector&) const = default;
};

/// Morse data of the p-fold superspin: m'_i = m_i + m_{i-p} on the complement
/// of the resulting (n+p)-knot.  The total count doubles.
MorseVector suspend_morse(const MorseVector& m, int p);

/// Novikov profile of the p-fold superspin: the homology acquires a degree-p
/// shifted copy, so b'_k = b_k + b_{k-p} and q'_k = q_k + q_{k-p}.
NovikovProfile suspend_profile(const NovikovProfile& q, int p);

/// Whitehead-torsion state after p-spinning: tau(S_p(K)) = (1 + (-1)^p) tau(K).
/// Odd p kills the torsion outright; for even p the doubled value is only
/// known to vanish when tau(K) itself does (2*tau may die in the Whitehead
/// group, so "nonzero" is never propagated).
TorsionState spun_torsion(TorsionState tau, int p);

/// Fibration conditions for a high-dimensional knot.  F2 (vanishing of the
/// Whitehead torsion of the completed complex) is determined by the torsion
/// state and cannot be set independently.
struct FibredState {
    Tri f0 = Tri::unknown;
    Tri f1 = Tri::unknown;
    TorsionState tau = TorsionState::unknown;

    Tri f2() const;
};

/// Fibredness criterion for knots of dimension >= 6: fibred iff F0, F1 and F2
/// all hold.  Throws data_error below dimension 6.
Tri highdim_fibred(const FibredState& s, int dimension);

/// For base dimension >= 6 and p, p' of the same parity, S_p(K) and S_p'(K)
/// are either both fibred or both not; different parity transfers nothing.
Tri spin_parity_transfer(int p, int p_prime, Tri fibred_p, int base_dimension);

/// For odd p and any iteration counts l, m >= 1, the iterated spins S_p^m(K)
/// and S_p^l(K) have the same fibredness state.  Throws on even p.
Tri iterated_spin_transfer(int p, int l, int m, Tri fibred_m, int base_dimension);

} // namespace mn
