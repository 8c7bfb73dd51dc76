#pragma once

#include <array>
#include <vector>

#include "frobrec/series.hpp"

namespace frobrec {

// One scalar equation: the coefficient of t^beta e^{n t_mu} in
//   sum_{s,t} da db ds F eta^{st} dt dc dd F - sum_{s,t} da dc ds F eta^{st} dt db dd F.
struct WdvvInstance {
    std::array<Coord, 4> q{};  // (a, b, c, d)
    MultiIndex beta;
    int n = 0;
};

std::string instance_str(const Orbifold& A, const WdvvInstance& inst);

// Euler degree the target of a quadruple must have for a nonzero extraction:
// deg beta + n*chi = 3 - deg(a) - deg(b) - deg(c) - deg(d), with deg(unit) = 1,
// deg(divisor) = 0 (each eta pair consumes total degree 1).
Rational forced_target_degree(const Orbifold& A, const std::array<Coord, 4>& q, int n);

// Coefficient extraction as an affine-linear form. Known*Known products feed
// the constant, Known*Unknown the terms, Unknown*Unknown sets nonlinear.
LinearForm wdvv_form(const Potential& P, const WdvvInstance& inst);

// Exact residual; throws IncompletePotentialError when an Unknown key is
// reachable from the instance.
Rational wdvv_residual(const Potential& P, const WdvvInstance& inst);

struct IncompletePotentialError : std::runtime_error {
    explicit IncompletePotentialError(const std::string& what) : std::runtime_error(what) {}
};

// wdvv_form(a,b,c,d) + wdvv_form(a,c,b,d) must be the zero form.
bool antisymmetry_check(const Potential& P, Coord a, Coord b, Coord c, Coord d,
                        const MultiIndex& beta, int n);

}  // namespace frobrec
