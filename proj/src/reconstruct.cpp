#include "frobrec/reconstruct.hpp"

#include <algorithm>
#include <map>

namespace frobrec {

CoeffKey base_exponential_key(const Orbifold& A) {
    MultiIndex alpha(A.num_twisted());
    for (int leg = 0; leg < 3; ++leg) {
        int t = A.twisted_lookup(leg, 1);
        if (t >= 0) alpha = alpha.plus(t);
    }
    return {alpha, 1};
}

Potential seed(const Orbifold& A, SeedReport* report) {
    Potential P(A);
    SeedReport rep;
    for (int leg = 0; leg < 3; ++leg) {
        int a = A.a(leg);
        if (a < 2) continue;
        for (int j1 = 1; j1 <= a - 1; ++j1)
            for (int j2 = j1; j2 <= a - 1; ++j2) {
                int j3 = a - j1 - j2;
                if (j3 < j2 || j3 > a - 1) continue;
                MultiIndex alpha(A.num_twisted());
                alpha = alpha.plus(A.twisted_lookup(leg, j1))
                            .plus(A.twisted_lookup(leg, j2))
                            .plus(A.twisted_lookup(leg, j3));
                P.set({alpha, 0}, rat_frac(1, static_cast<long>(a) * symmetry_factor(j1, j2, j3)));
                ++rep.cubic;
            }
    }
    P.set(base_exponential_key(A), 1);
    rep.base = 1;
    if (report) *report = rep;
    return P;
}

// out(i, j) = alpha(perm(i), j); perm must preserve the orders a_i
MultiIndex permute_legs(const Orbifold& A, const MultiIndex& alpha,
                        const std::array<int, 3>& perm) {
    MultiIndex out(A.num_twisted());
    for (int t = 0; t < out.size(); ++t) {
        int src = A.twisted_lookup(perm[A.leg_of(t)], A.j_of(t));
        out[t] = alpha[src];
    }
    return out;
}

SolveState::SolveState(const Orbifold& A, int max_m, std::optional<int> max_len) : A_(&A), P_(A) {
    P_ = seed(A, &seeds_);
    P_.set_bounds(max_m, max_len);
    for (int m = 0; m <= P_.max_m(); ++m) {
        for (const MultiIndex& alpha : admissible_alphas(A, m, max_len)) {
            CoeffKey key{alpha, m};
            if (P_.structural_zero(key)) {
                ++seeds_.structural_zero;
                continue;
            }
            if (!P_.coeff(key).known) unknown_.insert(key);
        }
    }
}

CoeffKey SolveState::orbit_rep(const CoeffKey& key) const {
    CoeffKey best = key;
    for (const auto& perm : A_->leg_symmetries()) {
        CoeffKey cand{permute_legs(*A_, key.alpha, perm), key.m};
        if (cand < best) best = cand;
    }
    return best;
}

std::vector<CoeffKey> SolveState::orbit(const CoeffKey& key) const {
    std::set<CoeffKey> seen;
    for (const auto& perm : A_->leg_symmetries())
        seen.insert({permute_legs(*A_, key.alpha, perm), key.m});
    return {seen.begin(), seen.end()};
}

void SolveState::assign(const CoeffKey& key, const Rational& value, const WdvvInstance& inst) {
    for (const CoeffKey& k : orbit(key)) {
        auto e = P_.coeff(k);
        if (e.known) {
            if (e.value != value) throw InconsistentError(*A_, k, e.value, value);
            continue;
        }
        P_.set(k, value);
        unknown_.erase(k);
    }
    log_.push_back({key, inst, value});
}

int apply_symmetry(SolveState& state) {
    const Orbifold& A = state.orbifold();
    Potential& P = state.potential();
    int copied = 0;
    for (const auto& [key, value] : P.sorted_items()) {
        for (const auto& perm : A.leg_symmetries()) {
            CoeffKey img{permute_legs(A, key.alpha, perm), key.m};
            auto e = P.coeff(img);
            if (e.known) {
                if (e.value != value) throw SymmetryConflictError(A, key, img);
                continue;
            }
            P.set(img, value);
            ++copied;
        }
    }
    return copied;
}

namespace {

// Instance families that resolve keys of the given shape. Each family pairs
// the unknown against already-determined coefficients when tried in induction
// order; the generic scan is the fallback.
std::vector<WdvvInstance> prescribed_instances(const Orbifold& A, const CoeffKey& key) {
    std::vector<WdvvInstance> out;
    const MultiIndex& alpha = key.alpha;
    const CoeffKey base = base_exponential_key(A);
    const Coord div = A.divisor();

    // divisor-pair instances on a j >= 2 entry:
    // WDVV((i,1),(i,j-1),mu,mu) at t^{alpha - e_{i,j}} e^{m t_mu}
    for (int t = 0; t < alpha.size(); ++t) {
        if (!alpha[t] || A.j_of(t) < 2) continue;
        int leg = A.leg_of(t), j = A.j_of(t);
        Coord c1 = A.twisted_coord(A.twisted_lookup(leg, 1));
        Coord c2 = A.twisted_coord(A.twisted_lookup(leg, j - 1));
        out.push_back({{c1, c2, div, div}, alpha.minus(t), key.m});
    }

    // divisor-pair instances on a full leg pairing:
    // WDVV((i,1),(i,a_i-1),mu,mu) at t^alpha e^{m t_mu}
    for (int leg = 0; leg < 3; ++leg) {
        if (A.a(leg) < 2) continue;
        Coord c1 = A.twisted_coord(A.twisted_lookup(leg, 1));
        Coord c2 = A.twisted_coord(A.twisted_lookup(leg, A.a(leg) - 1));
        out.push_back({{c1, c2, div, div}, alpha, key.m});
    }

    if (key.m == 1) {
        // one-divisor instances for keys e_{i,x} + e_{i,y} + (base legs), x+y = a_i+1:
        // WDVV((i,y-1),(i,1),(i,x),mu) at t^{alpha - e_{i,x} - e_{i,y}} e^{t_mu}
        for (int leg = 0; leg < 3; ++leg) {
            int a = A.a(leg);
            if (a < 3) continue;
            MultiIndex rest = base.alpha;
            int t1 = A.twisted_lookup(leg, 1);
            if (rest[t1]) rest = rest.minus(t1);
            // alpha must be rest + e_{leg,x} + e_{leg,y}
            MultiIndex onleg(A.num_twisted());
            bool ok = true;
            int total = 0;
            for (int t = 0; t < alpha.size(); ++t) {
                if (A.leg_of(t) == leg) {
                    onleg[t] = alpha[t];
                    total += alpha[t];
                } else if (alpha[t] != rest[t]) {
                    ok = false;
                }
            }
            if (!ok || total != 2) continue;
            for (int x = 2; x <= a - 1; ++x) {
                int y = a + 1 - x;
                if (y < 2 || y > a - 1) continue;
                int tx = A.twisted_lookup(leg, x), ty = A.twisted_lookup(leg, y);
                MultiIndex want(A.num_twisted());
                want = want.plus(tx).plus(ty);
                if (onleg != want) continue;
                Coord cy1 = A.twisted_coord(A.twisted_lookup(leg, y - 1));
                Coord c1 = A.twisted_coord(t1);
                Coord cx = A.twisted_coord(tx);
                out.push_back({{cy1, c1, cx, div}, alpha.minus(tx).minus(ty), 1});
            }
        }
    }

    if (key.m == 0) {
        // divisor-pair instances against the base term, for keys holding e_{i,a_i-1}:
        // WDVV((i,j),(i,j'),mu,mu) at t^{alpha - e_{i,j} - e_{i,j'} - e_{i,a_i-1}
        //                               + base - e_{i,1}} e^{t_mu}
        for (int leg = 0; leg < 3; ++leg) {
            int a = A.a(leg);
            if (a < 2) continue;
            int ttop = A.twisted_lookup(leg, a - 1);
            int t1 = A.twisted_lookup(leg, 1);
            if (!alpha[ttop] || !base.alpha[t1]) continue;
            MultiIndex rest = alpha.minus(ttop);
            MultiIndex tail = base.alpha.minus(t1);
            for (int j = 1; j <= a - 1; ++j) {
                int tj = A.twisted_lookup(leg, j);
                if (!rest[tj]) continue;
                MultiIndex r2 = rest.minus(tj);
                for (int j2 = j; j2 <= a - 1; ++j2) {
                    int tj2 = A.twisted_lookup(leg, j2);
                    if (!r2[tj2]) continue;
                    out.push_back({{A.twisted_coord(tj), A.twisted_coord(tj2), div, div},
                                   r2.minus(tj2).plus(tail), 1});
                }
            }
        }

        // one-divisor instances: WDVV((i,p),(i,p'),(i,l),mu) at
        // t^{alpha - e_{i,l-1} - e_{i,p} - e_{i,p'} + base - e_{i,1}} e^{t_mu}
        for (int leg = 0; leg < 3; ++leg) {
            int a = A.a(leg);
            if (a < 3) continue;
            int t1 = A.twisted_lookup(leg, 1);
            if (!base.alpha[t1]) continue;
            MultiIndex tail = base.alpha.minus(t1);
            for (int l = 2; l <= a - 1; ++l) {
                int tl1 = A.twisted_lookup(leg, l - 1);
                if (!alpha[tl1]) continue;
                MultiIndex rest = alpha.minus(tl1);
                for (int p = 1; p <= a - 1; ++p) {
                    int tp = A.twisted_lookup(leg, p);
                    if (!rest[tp]) continue;
                    MultiIndex r2 = rest.minus(tp);
                    for (int p2 = p; p2 <= a - 1; ++p2) {
                        int tp2 = A.twisted_lookup(leg, p2);
                        if (!r2[tp2]) continue;
                        out.push_back({{A.twisted_coord(tp), A.twisted_coord(tp2),
                                        A.twisted_coord(A.twisted_lookup(leg, l)), div},
                                       r2.minus(tp2).plus(tail), 1});
                    }
                }
            }
        }

        // divisor-free instances: WDVV((i,1),(i,l),(i,j),(i,j')) at
        // t^{alpha - e_{i,j} - e_{i,j'} - e_{i,l+1}}
        for (int leg = 0; leg < 3; ++leg) {
            int a = A.a(leg);
            if (a < 3) continue;
            Coord c1 = A.twisted_coord(A.twisted_lookup(leg, 1));
            for (int l = 1; l <= a - 2; ++l) {
                int tl1 = A.twisted_lookup(leg, l + 1);
                if (!alpha[tl1]) continue;
                MultiIndex rest = alpha.minus(tl1);
                Coord cl = A.twisted_coord(A.twisted_lookup(leg, l));
                for (int j = 1; j <= a - 1; ++j) {
                    int tj = A.twisted_lookup(leg, j);
                    if (!rest[tj]) continue;
                    MultiIndex r2 = rest.minus(tj);
                    for (int j2 = j; j2 <= a - 1; ++j2) {
                        int tj2 = A.twisted_lookup(leg, j2);
                        if (!r2[tj2]) continue;
                        out.push_back({{c1, cl, A.twisted_coord(tj), A.twisted_coord(tj2)},
                                       r2.minus(tj2), 0});
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace

namespace {

// folds a form's unknowns through the equal-leg orbit; true when the result
// isolates the key's orbit with nonzero multiplier
bool try_form(SolveState& state, const CoeffKey& key, const WdvvInstance& inst) {
    LinearForm form = wdvv_form(state.potential(), inst);
    if (form.nonlinear || form.terms.empty()) return false;
    CoeffKey want = state.orbit_rep(key);
    std::map<CoeffKey, Rational> folded;
    for (auto& [k, mult] : form.terms) folded[state.orbit_rep(k)] += mult;
    Rational self = 0;
    for (auto& [rep, mult] : folded) {
        if (mult == 0) continue;
        if (rep != want) return false;
        self = mult;
    }
    if (self == 0) return false;
    state.assign(key, -form.constant / self, inst);
    return true;
}

}  // namespace

std::optional<Rational> resolve_key(SolveState& state, const CoeffKey& key,
                                    bool allow_generic_scan) {
    const Orbifold& A = state.orbifold();
    if (auto e = state.potential().coeff(key); e.known) return e.value;
    for (const WdvvInstance& inst : prescribed_instances(A, key)) {
        if (inst.n > state.potential().max_m()) continue;
        if (try_form(state, key, inst)) return state.potential().coeff(key).value;
    }
    if (!allow_generic_scan) return std::nullopt;

    // generic scan: every non-unit quadruple, every degree-matched target
    int n_hi = std::min(state.potential().max_m(), key.m + 1);
    int len_cap = key.alpha.length() + 2;
    int mu = A.mu();
    for (Coord q1 = 1; q1 < mu; ++q1)
        for (Coord q2 = q1; q2 < mu; ++q2)
            for (Coord q3 = q2; q3 < mu; ++q3)
                for (Coord q4 = q3; q4 < mu; ++q4) {
                    std::array<std::array<Coord, 4>, 2> arrangements{
                        {{q1, q2, q3, q4}, {q1, q2, q4, q3}}};
                    for (const auto& q : arrangements)
                        for (int n = 0; n <= n_hi; ++n) {
                            Rational need = forced_target_degree(A, q, n);
                            for (const MultiIndex& beta :
                                 indices_with_degree(A, need, nullptr, len_cap)) {
                                WdvvInstance inst{q, beta, n};
                                if (try_form(state, key, inst))
                                    return state.potential().coeff(key).value;
                            }
                        }
                }
    return std::nullopt;
}

namespace {

// one level of the induction: resolve to a fixpoint, prescribed instances
// first, the generic scan only for stragglers
void solve_level(SolveState& state, const std::vector<CoeffKey>& level) {
    auto remaining = [&]() {
        std::vector<CoeffKey> out;
        for (const CoeffKey& k : level)
            if (state.is_unknown(k)) out.push_back(k);
        return out;
    };
    bool scan = false;
    while (true) {
        auto todo = remaining();
        if (todo.empty()) return;
        bool progress = false;
        for (const CoeffKey& k : todo) {
            if (!state.is_unknown(k)) continue;
            if (resolve_key(state, k, scan)) progress = true;
        }
        if (progress) {
            scan = false;
            continue;
        }
        if (!scan) {
            scan = true;
            continue;
        }
        throw StalledError(state.orbifold(), remaining().front());
    }
}

}  // namespace

Reconstruction reconstruct(const Orbifold& A, int max_m, std::optional<int> max_len) {
    if (max_m < 1) throw std::invalid_argument("max_m must be >= 1");
    SolveState state(A, max_m, max_len);

    std::map<int, std::vector<CoeffKey>> stage01;          // length -> keys, m in {0,1}
    std::map<std::pair<int, int>, std::vector<CoeffKey>> higher;  // (m, length) -> keys
    for (const CoeffKey& k : state.unknown()) {
        if (k.m <= 1)
            stage01[k.alpha.length()].push_back(k);
        else
            higher[{k.m, k.alpha.length()}].push_back(k);
    }
    for (auto& [len, keys] : stage01) solve_level(state, keys);
    for (auto& [lvl, keys] : higher) solve_level(state, keys);

    if (!state.unknown().empty()) throw StalledError(A, *state.unknown().begin());
    state.potential().mark_complete();
    return {state.potential(), state.log(), state.seeds()};
}

}  // namespace frobrec
