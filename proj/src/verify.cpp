#include "frobrec/verify.hpp"

#include <algorithm>
#include <map>

namespace frobrec {

namespace {

using Series = std::vector<std::pair<CoeffKey, Rational>>;  // target -> coefficient

// sparse series of dT F up to e-power max_m, from the stored coefficients
// plus the trivial-part constant
Series deriv_series(const Potential& P, std::array<Coord, 3> T, int max_m) {
    const Orbifold& A = P.orbifold();
    Series out;
    for (int i = 0; i < 3; ++i) {
        if (A.is_unit(T[i])) {
            // one unit consumed; the remaining two give the metric constant
            Rational v = A.metric(T[(i + 1) % 3], T[(i + 2) % 3]);
            if (v != 0) out.push_back({CoeffKey{MultiIndex(A.num_twisted()), 0}, v});
            return out;
        }
    }
    int d = 0;
    MultiIndex shift(A.num_twisted());
    for (Coord c : T) {
        if (A.is_divisor(c))
            ++d;
        else
            shift = shift.plus(A.twisted_index(c));
    }
    for (const auto& [key, value] : P.sorted_items()) {
        if (value == 0 || key.m > max_m) continue;
        if (d > 0 && key.m == 0) continue;
        if (!key.alpha.contains(shift)) continue;
        Rational mult = 1;
        for (int t = 0; t < shift.size(); ++t)
            for (int k = 0; k < shift[t]; ++k) mult *= key.alpha[t] - k;
        for (int i = 0; i < d; ++i) mult *= key.m;
        if (mult == 0) continue;
        out.push_back({CoeffKey{key.alpha.minus(shift), key.m}, mult * value});
    }
    return out;
}

struct SeriesCache {
    const Potential& P;
    int max_m;
    std::map<std::array<Coord, 3>, Series> cache;

    const Series& get(Coord x, Coord y, Coord z) {
        std::array<Coord, 3> k{x, y, z};
        std::sort(k.begin(), k.end());
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, deriv_series(P, k, max_m)).first;
        return it->second;
    }
};

// sum_{s,t} dx dy ds F eta^{st} dt dz dw F as a sparse target map
std::map<CoeffKey, Rational> pairing_sum(SeriesCache& sc, Coord x, Coord y, Coord z, Coord w) {
    const Orbifold& A = sc.P.orbifold();
    std::map<CoeffKey, Rational> acc;
    for (auto& [sg, tu, wgt] : A.metric_inverse_pairs()) {
        const Series& s1 = sc.get(x, y, sg);
        const Series& s2 = sc.get(tu, z, w);
        for (auto& [k1, v1] : s1)
            for (auto& [k2, v2] : s2) {
                int n = k1.m + k2.m;
                if (n > sc.max_m) continue;
                CoeffKey target{k1.alpha.plus(k2.alpha), n};
                acc[target] += wgt * v1 * v2;
            }
    }
    return acc;
}

bool homogeneity_audit(const Potential& P) {
    for (const auto& [key, value] : P.sorted_items()) {
        (void)value;
        if (!P.admissible(key)) return false;
    }
    return true;
}

bool symmetry_audit(const Potential& P) {
    const Orbifold& A = P.orbifold();
    for (const auto& [key, value] : P.sorted_items()) {
        for (const auto& perm : A.leg_symmetries()) {
            CoeffKey img{permute_legs(A, key.alpha, perm), key.m};
            auto e = P.coeff(img);
            if (!e.known || e.value != value) return false;
        }
    }
    return true;
}

void require_fully_known(const Potential& P) {
    const Orbifold& A = P.orbifold();
    for (int m = 0; m <= P.max_m(); ++m)
        for (const MultiIndex& alpha : admissible_alphas(A, m, P.max_len()))
            if (!P.coeff({alpha, m}).known)
                throw IncompletePotentialError("sweep requires a fully reconstructed potential; " +
                                               key_str(A, {alpha, m}) + " is unknown");
}

}  // namespace

VerificationReport sweep_residuals(const Potential& P, int max_m) {
    const Orbifold& A = P.orbifold();
    require_fully_known(P);
    VerificationReport rep;
    int bound = std::min(max_m, P.max_m());
    SeriesCache sc{P, bound, {}};

    auto borderline = [&](const CoeffKey& target) {
        return P.max_len() && target.alpha.length() + 3 > *P.max_len();
    };
    auto compare = [&](const std::map<CoeffKey, Rational>& lhs,
                       const std::map<CoeffKey, Rational>& rhs, std::array<Coord, 4> inst_q) {
        std::map<CoeffKey, Rational> diff = lhs;
        for (auto& [k, v] : rhs) diff[k] -= v;
        for (auto& [k, v] : diff) {
            if (borderline(k)) {
                ++rep.borderline_skipped;
                continue;
            }
            ++rep.residuals_checked;
            if (v != 0) rep.failures.push_back({WdvvInstance{inst_q, k.alpha, k.m}, v});
        }
    };

    int mu = A.mu();
    for (Coord q1 = 1; q1 < mu; ++q1)
        for (Coord q2 = q1; q2 < mu; ++q2)
            for (Coord q3 = q2; q3 < mu; ++q3)
                for (Coord q4 = q3; q4 < mu; ++q4) {
                    auto p12 = pairing_sum(sc, q1, q2, q3, q4);
                    auto p13 = pairing_sum(sc, q1, q3, q2, q4);
                    auto p14 = pairing_sum(sc, q1, q4, q2, q3);
                    // the third difference p13 - p14 is implied
                    compare(p12, p13, {q1, q2, q3, q4});
                    compare(p12, p14, {q1, q2, q4, q3});
                }

    rep.homogeneity_ok = homogeneity_audit(P);
    rep.symmetry_ok = symmetry_audit(P);
    rep.algebra_ok = check_presentation(A, limit_algebra(A, P));
    return rep;
}

StructureConstants limit_algebra(const Orbifold& A, const Potential& P) {
    StructureConstants S;
    S.mu = A.mu();
    MultiIndex zero(A.num_twisted());
    S.table.assign(S.mu, std::vector<std::vector<Rational>>(S.mu));
    for (Coord x = 0; x < S.mu; ++x)
        for (Coord y = 0; y < S.mu; ++y) {
            std::vector<Rational> vec(S.mu, Rational(0));
            for (auto& [sg, tu, wgt] : A.metric_inverse_pairs()) {
                LinearForm f = third_derivative_coefficient(P, x, y, sg, zero, 0);
                if (!f.terms.empty())
                    throw IncompletePotentialError("limit algebra touches an unknown cubic");
                if (f.constant != 0) vec[tu] += wgt * f.constant;
            }
            S.table[x][y] = std::move(vec);
        }
    return S;
}

namespace {

std::vector<Rational> compose(const StructureConstants& S, const std::vector<Rational>& v,
                              Coord z) {
    std::vector<Rational> out(S.mu, Rational(0));
    for (int k = 0; k < S.mu; ++k) {
        if (v[k] == 0) continue;
        for (int r = 0; r < S.mu; ++r) out[r] += v[k] * S.table[k][z][r];
    }
    return out;
}

std::vector<Rational> basis_vec(int mu, Coord c) {
    std::vector<Rational> v(mu, Rational(0));
    v[c] = 1;
    return v;
}

}  // namespace

bool check_presentation(const Orbifold& A, const StructureConstants& S,
                        std::vector<std::string>* diagnosis) {
    bool ok = true;
    auto fail = [&](const std::string& msg) {
        ok = false;
        if (diagnosis) diagnosis->push_back(msg);
    };
    int mu = A.mu();

    for (Coord y = 0; y < mu; ++y)
        if (S.table[A.unit()][y] != basis_vec(mu, y)) fail("unit does not act as identity");
    for (Coord x = 0; x < mu; ++x)
        for (Coord y = x + 1; y < mu; ++y)
            if (S.table[x][y] != S.table[y][x]) fail("product not commutative");
    for (Coord x = 0; x < mu && ok; ++x)
        for (Coord y = 0; y < mu && ok; ++y)
            for (Coord z = 0; z < mu; ++z) {
                if (compose(S, S.table[x][y], z) != compose(S, S.table[y][z], x))
                    // x(yz) computed as (yz)x by commutativity
                    fail("product not associative");
                if (!ok) break;
            }

    std::vector<Rational> zero(mu, Rational(0));
    for (int li = 0; li < 3; ++li) {
        if (A.a(li) < 2) continue;
        Coord xi = A.twisted_coord(A.twisted_lookup(li, 1));
        for (int lk = li + 1; lk < 3; ++lk) {
            if (A.a(lk) < 2) continue;
            Coord xk = A.twisted_coord(A.twisted_lookup(lk, 1));
            if (S.table[xi][xk] != zero)
                fail("x" + std::to_string(li + 1) + "x" + std::to_string(lk + 1) + " != 0");
        }
        // powers of the generator climb the leg and land on (1/a_i) d_mu
        std::vector<Rational> pw = basis_vec(mu, xi);
        for (int j = 2; j <= A.a(li); ++j) {
            pw = compose(S, pw, xi);
            if (j <= A.a(li) - 1) {
                if (pw != basis_vec(mu, A.twisted_coord(A.twisted_lookup(li, j))))
                    fail("x" + std::to_string(li + 1) + "^" + std::to_string(j) +
                         " != d_(" + std::to_string(li + 1) + "," + std::to_string(j) + ")");
            } else {
                std::vector<Rational> want(mu, Rational(0));
                want[A.divisor()] = rat_frac(1, A.a(li));
                if (pw != want)
                    fail("a_i x" + std::to_string(li + 1) + "^a_i != d_mu");
            }
        }
    }
    // the socle is nilpotent: d_mu annihilates everything but the unit
    for (Coord y = 1; y < mu; ++y)
        if (S.table[A.divisor()][y] != zero) fail("d_mu * d_y != 0");
    return ok;
}

Rational to_gw_invariant(const Potential& P, const CoeffKey& key) {
    auto v = P.lookup(key);
    if (!v) throw IncompletePotentialError("to_gw_invariant of unknown key");
    Rational out = *v;
    for (int t = 0; t < key.alpha.size(); ++t) out *= rat_factorial(key.alpha[t]);
    return out;
}

// ---------------------------------------------------------------------------
// brute-force oracle
// ---------------------------------------------------------------------------

namespace {

struct OracleLevel {
    std::vector<CoeffKey> vars;  // orbit representatives
    std::map<CoeffKey, int> index;
};

CoeffKey orbit_rep_of(const Orbifold& A, const CoeffKey& key) {
    CoeffKey best = key;
    for (const auto& perm : A.leg_symmetries()) {
        CoeffKey cand{permute_legs(A, key.alpha, perm), key.m};
        if (cand < best) best = cand;
    }
    return best;
}

// solves rows * vars = rhs exactly; throws unless the solution exists and is
// unique on every variable
std::vector<Rational> solve_unique(std::vector<std::vector<Rational>> M,
                                   std::vector<Rational> rhs, size_t nvars) {
    size_t rows = M.size();
    std::vector<int> pivot_of(nvars, -1);
    size_t r = 0;
    for (size_t c = 0; c < nvars && r < rows; ++c) {
        size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[r]);
        std::swap(rhs[p], rhs[r]);
        Rational inv = 1 / M[r][c];
        for (size_t k = c; k < nvars; ++k) M[r][k] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rational f = M[i][c];
            for (size_t k = c; k < nvars; ++k) M[i][k] -= f * M[r][k];
            rhs[i] -= f * rhs[r];
        }
        pivot_of[c] = static_cast<int>(r);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) throw std::runtime_error("oracle: inconsistent linear system");
    std::vector<Rational> sol(nvars);
    for (size_t c = 0; c < nvars; ++c) {
        if (pivot_of[c] < 0) throw std::runtime_error("oracle: level solution not unique");
        sol[c] = rhs[pivot_of[c]];
    }
    return sol;
}

}  // namespace

Potential oracle_reconstruct(const Orbifold& A, int max_m, std::optional<int> max_len) {
    Potential P = seed(A);
    P.set_bounds(max_m, max_len);

    std::map<std::pair<int, int>, std::vector<CoeffKey>> levels;  // (block, length)
    int max_alpha_len = 0;
    for (int m = 0; m <= P.max_m(); ++m)
        for (const MultiIndex& alpha : admissible_alphas(A, m, max_len)) {
            CoeffKey key{alpha, m};
            max_alpha_len = std::max(max_alpha_len, alpha.length());
            if (P.structural_zero(key) || P.coeff(key).known) continue;
            levels[{std::max(key.m, 1), alpha.length()}].push_back(key);
        }

    for (auto& [lvl, keys] : levels) {
        OracleLevel L;
        std::set<CoeffKey> reps;
        for (const CoeffKey& k : keys) reps.insert(orbit_rep_of(A, k));
        L.vars.assign(reps.begin(), reps.end());
        for (size_t i = 0; i < L.vars.size(); ++i) L.index[L.vars[i]] = static_cast<int>(i);

        std::vector<std::vector<Rational>> M;
        std::vector<Rational> rhs;
        int mu = A.mu();
        for (Coord q1 = 1; q1 < mu; ++q1)
            for (Coord q2 = q1; q2 < mu; ++q2)
                for (Coord q3 = q2; q3 < mu; ++q3)
                    for (Coord q4 = q3; q4 < mu; ++q4) {
                        std::array<std::array<Coord, 4>, 2> arr{
                            {{q1, q2, q3, q4}, {q1, q2, q4, q3}}};
                        for (const auto& q : arr)
                            for (int n = 0; n <= P.max_m(); ++n) {
                                Rational need = forced_target_degree(A, q, n);
                                for (const MultiIndex& beta :
                                     indices_with_degree(A, need, nullptr, max_alpha_len + 2)) {
                                    LinearForm f = wdvv_form(P, WdvvInstance{q, beta, n});
                                    if (f.nonlinear) continue;
                                    std::map<CoeffKey, Rational> folded;
                                    for (auto& [k, mult] : f.terms)
                                        folded[orbit_rep_of(A, k)] += mult;
                                    std::vector<Rational> row(L.vars.size(), Rational(0));
                                    bool usable = true, any = false;
                                    for (auto& [rep, mult] : folded) {
                                        if (mult == 0) continue;
                                        auto it = L.index.find(rep);
                                        if (it == L.index.end()) {
                                            usable = false;
                                            break;
                                        }
                                        row[it->second] = mult;
                                        any = true;
                                    }
                                    if (!usable || !any) continue;
                                    M.push_back(std::move(row));
                                    rhs.push_back(-f.constant);
                                }
                            }
                    }

        std::vector<Rational> sol = solve_unique(std::move(M), std::move(rhs), L.vars.size());
        for (const CoeffKey& k : keys) {
            CoeffKey rep = orbit_rep_of(A, k);
            P.set(k, sol[L.index[rep]]);
        }
    }
    P.mark_complete();
    return P;
}

}  // namespace frobrec
