#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobrec/reconstruct.hpp"
#include "frobrec/wdvv.hpp"

namespace frobrec {

struct VerificationReport {
    long residuals_checked = 0;
    long borderline_skipped = 0;  // targets whose keys fall outside reconstructed bounds
    std::vector<std::pair<WdvvInstance, Rational>> failures;
    bool homogeneity_ok = true;
    bool symmetry_ok = true;
    bool algebra_ok = true;

    bool clean() const {
        return failures.empty() && homogeneity_ok && symmetry_ok && algebra_ok;
    }
};

// Exact residual sweep over every non-unit quadruple (three pairings per
// 4-multiset, two independent differences) and every target with n <= max_m,
// plus the homogeneity, equal-leg symmetry and limit-algebra audits.
// Requires a fully Known potential within its bounds.
VerificationReport sweep_residuals(const Potential& P, int max_m);

// Multiplication table of the limit algebra at t = 0, e^{t_mu} = 0:
// dx o dy = sum (dx dy ds F)|_0 eta^{st} dt. Needs only the trivial part and
// the cubic coefficients, so it is available from the seed.
struct StructureConstants {
    int mu = 0;
    std::vector<std::vector<std::vector<Rational>>> table;  // [x][y] -> basis coeffs

    const std::vector<Rational>& product(Coord x, Coord y) const { return table[x][y]; }
};

StructureConstants limit_algebra(const Orbifold& A, const Potential& P);

// Verifies the presentation C[x1,x2,x3]/(x_i x_k, a_i x_i^{a_i} - a_k x_k^{a_k})
// with x_i = d_{i,1}: unit, commutativity, associativity, cross products zero,
// powers x_i^j = d_{i,j}, x_i^{a_i} = (1/a_i) d_mu, socle nilpotent. Legs with
// a_i = 1 contribute no generator.
bool check_presentation(const Orbifold& A, const StructureConstants& S,
                        std::vector<std::string>* diagnosis = nullptr);

// c(alpha, m) * prod alpha_{i,j}! — the n-point degree-m genus-0 invariant
// without unit or divisor insertions. Throws on Unknown keys.
Rational to_gw_invariant(const Potential& P, const CoeffKey& key);

// Independent brute-force reconstruction: per level, gathers every coefficient
// equation the generic scan can produce and solves the exact linear system in
// equal-leg orbit variables, certifying the solution is unique. Intended for
// small A only.
Potential oracle_reconstruct(const Orbifold& A, int max_m,
                             std::optional<int> max_len = std::nullopt);

}  // namespace frobrec
