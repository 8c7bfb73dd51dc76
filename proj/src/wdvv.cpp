#include "frobrec/wdvv.hpp"

namespace frobrec {

std::string instance_str(const Orbifold& A, const WdvvInstance& inst) {
    auto coord = [&](Coord c) -> std::string {
        if (A.is_unit(c)) return "1";
        if (A.is_divisor(c)) return "mu";
        int t = A.twisted_index(c);
        return "(" + std::to_string(A.leg_of(t) + 1) + "," + std::to_string(A.j_of(t)) + ")";
    };
    std::string s = "WDVV(" + coord(inst.q[0]) + "," + coord(inst.q[1]) + "," + coord(inst.q[2]) +
                    "," + coord(inst.q[3]) + ") @ {" + inst.beta.str(A) + "} e^" +
                    std::to_string(inst.n);
    return s;
}

Rational forced_target_degree(const Orbifold& A, const std::array<Coord, 4>& q, int n) {
    Rational d = 3 - n * A.chi();
    for (Coord c : q) {
        if (A.is_unit(c))
            d -= 1;
        else if (A.is_twisted(c))
            d -= A.twisted_degree(A.twisted_index(c));
    }
    return d;
}

namespace {

// one side of a product: either a known scalar or a single unknown key with
// a multiplier (third derivatives touch exactly one coefficient per monomial)
struct Factor {
    bool known = true;
    Rational value;   // when known
    CoeffKey key;     // when unknown
    Rational mult;    // when unknown
    bool is_zero() const { return known && value == 0; }
};

Factor eval_factor(const Potential& P, const std::array<Coord, 3>& T, const MultiIndex& beta,
                   int n) {
    LinearForm f = third_derivative_coefficient(P, T[0], T[1], T[2], beta, n);
    Factor out;
    if (!f.terms.empty()) {
        out.known = false;
        out.key = f.terms.begin()->first;
        out.mult = f.terms.begin()->second;
    } else {
        out.value = f.constant;
    }
    return out;
}

void accumulate_product(LinearForm& out, const Factor& f1, const Factor& f2,
                        const Rational& weight) {
    if (f1.is_zero() || f2.is_zero()) return;
    if (f1.known && f2.known) {
        out.constant += weight * f1.value * f2.value;
    } else if (f1.known) {
        out.add_term(f2.key, weight * f1.value * f2.mult);
    } else if (f2.known) {
        out.add_term(f1.key, weight * f2.value * f1.mult);
    } else {
        out.nonlinear = true;
    }
}

// sum over splits beta = b1 + b2, n = n1 + n2 of
//   [coeff of (b1,n1) in dT1 F] * [coeff of (b2,n2) in dT2 F] * weight
void accumulate_pair(LinearForm& out, const Potential& P, std::array<Coord, 3> T1,
                     std::array<Coord, 3> T2, const MultiIndex& beta, int n,
                     const Rational& weight) {
    const Orbifold& A = P.orbifold();

    bool unit1 = false;
    for (Coord c : T1) unit1 = unit1 || A.is_unit(c);
    if (unit1) {
        // factor 1 is the metric constant at (0,0); factor 2 takes the whole target
        Factor f1 = eval_factor(P, T1, MultiIndex(A.num_twisted()), 0);
        if (f1.is_zero()) return;
        Factor f2 = eval_factor(P, T2, beta, n);
        accumulate_product(out, f1, f2, weight);
        return;
    }

    int d1 = 0;
    MultiIndex shift1(A.num_twisted());
    for (Coord c : T1) {
        if (A.is_divisor(c))
            ++d1;
        else
            shift1 = shift1.plus(A.twisted_index(c));
    }
    Rational shift_deg = alpha_degree(A, shift1);

    for (int n1 = (d1 > 0 ? 1 : 0); n1 <= n; ++n1) {
        // keys hit by factor 1 are admissible: deg(b1) is forced
        Rational need = 2 - n1 * A.chi() - shift_deg;
        for (const MultiIndex& b1 : indices_with_degree(A, need, &beta)) {
            Factor f1 = eval_factor(P, T1, b1, n1);
            if (f1.is_zero()) continue;
            Factor f2 = eval_factor(P, T2, beta.minus(b1), n - n1);
            accumulate_product(out, f1, f2, weight);
        }
    }
}

}  // namespace

LinearForm wdvv_form(const Potential& P, const WdvvInstance& inst) {
    const Orbifold& A = P.orbifold();
    auto [a, b, c, d] = inst.q;
    LinearForm out;
    for (auto& [sg, tu, w] : A.metric_inverse_pairs()) {
        accumulate_pair(out, P, {a, b, sg}, {tu, c, d}, inst.beta, inst.n, w);
        accumulate_pair(out, P, {a, c, sg}, {tu, b, d}, inst.beta, inst.n, -w);
    }
    return out;
}

Rational wdvv_residual(const Potential& P, const WdvvInstance& inst) {
    LinearForm f = wdvv_form(P, inst);
    if (f.nonlinear || !f.terms.empty())
        throw IncompletePotentialError("wdvv_residual: unknown coefficient reachable from " +
                                       instance_str(P.orbifold(), inst));
    return f.constant;
}

bool antisymmetry_check(const Potential& P, Coord a, Coord b, Coord c, Coord d,
                        const MultiIndex& beta, int n) {
    LinearForm f1 = wdvv_form(P, WdvvInstance{{a, b, c, d}, beta, n});
    LinearForm f2 = wdvv_form(P, WdvvInstance{{a, c, b, d}, beta, n});
    if (f1.nonlinear != f2.nonlinear) return false;
    f1 += f2;
    return f1.constant == 0 && f1.terms.empty();
}

}  // namespace frobrec
