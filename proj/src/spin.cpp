#include "mn/spin.hpp"

#include "mn/errors.hpp"

namespace mn {

MorseVector::MorseVector(int knot_dimension, std::vector<long> counts_in)
    : knot_dimension(knot_dimension), counts(std::move(counts_in)) {
    if (knot_dimension < 1) throw data_error("knot dimension must be at least 1");
    if (counts.size() != static_cast<std::size_t>(knot_dimension) + 3)
        throw data_error("Morse vector needs counts m_0..m_{n+2}");
    long chi = 0;
    int sign = 1;
    for (long m : counts) {
        if (m < 0) throw data_error("Morse counts must be nonnegative");
        chi += sign * m;
        sign = -sign;
    }
    if (chi != 0) throw data_error("Morse counts must have vanishing alternating sum");
}

long MorseVector::total() const {
    long sum = 0;
    for (long m : counts) sum += m;
    return sum;
}

MorseVector suspend_morse(const MorseVector& m, int p) {
    if (p < 1) throw data_error("spin degree must be at least 1");
    const std::size_t shift = static_cast<std::size_t>(p);
    std::vector<long> out(m.counts.size() + shift, 0);
    for (std::size_t i = 0; i < m.counts.size(); ++i) {
        out[i] += m.counts[i];
        out[i + shift] += m.counts[i];
    }
    // the validating constructor re-checks the alternating-sum invariant
    return MorseVector(m.knot_dimension + p, std::move(out));
}

NovikovProfile suspend_profile(const NovikovProfile& q, int p) {
    if (p < 1) throw data_error("spin degree must be at least 1");
    const std::size_t shift = static_cast<std::size_t>(p);
    NovikovProfile out;
    out.entries.assign(q.entries.size() + shift, {0, 0});
    for (std::size_t k = 0; k < q.entries.size(); ++k) {
        out.entries[k].betti += q.entries[k].betti;
        out.entries[k].torsion += q.entries[k].torsion;
        out.entries[k + shift].betti += q.entries[k].betti;
        out.entries[k + shift].torsion += q.entries[k].torsion;
    }
    return out;
}

TorsionState spun_torsion(TorsionState tau, int p) {
    if (p < 1) throw data_error("spin degree must be at least 1");
    if (p % 2 == 1) return TorsionState::zero;
    if (tau == TorsionState::zero) return TorsionState::zero;
    return TorsionState::unknown;
}

Tri FibredState::f2() const {
    switch (tau) {
        case TorsionState::zero: return Tri::holds;
        case TorsionState::nonzero: return Tri::fails;
        default: return Tri::unknown;
    }
}

namespace {

void check_highdim(int dimension) {
    if (dimension < 6) throw data_error("criterion valid only for n >= 6");
}

} // namespace

Tri highdim_fibred(const FibredState& s, int dimension) {
    check_highdim(dimension);
    const Tri conds[3] = {s.f0, s.f1, s.f2()};
    bool any_unknown = false;
    for (Tri c : conds) {
        if (c == Tri::fails) return Tri::fails;
        if (c == Tri::unknown) any_unknown = true;
    }
    return any_unknown ? Tri::unknown : Tri::holds;
}

Tri spin_parity_transfer(int p, int p_prime, Tri fibred_p, int base_dimension) {
    check_highdim(base_dimension);
    if (p < 1 || p_prime < 1) throw data_error("spin degree must be at least 1");
    return p % 2 == p_prime % 2 ? fibred_p : Tri::unknown;
}

Tri iterated_spin_transfer(int p, int l, int m, Tri fibred_m, int base_dimension) {
    check_highdim(base_dimension);
    if (p % 2 == 0) throw data_error("proposition requires odd p");
    if (p < 1 || l < 1 || m < 1) throw data_error("spin degree and iteration counts must be >= 1");
    return fibred_m;
}

} // namespace mn
