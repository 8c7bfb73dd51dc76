#pragma once

#include <array>
#include <cstdint>
#include <tuple>
#include <vector>

#include "frobrec/rational.hpp"

namespace frobrec {

// Flat coordinates are indexed 0..mu-1 in the fixed order
//   unit < twisted(1,1) < ... < twisted(3,a3-1) < divisor.
using Coord = int;

// The triple A = (a1,a2,a3) with its rank, Euler number, coordinate table,
// flat metric and Euler grading. Immutable after construction.
class Orbifold {
public:
    // Requires 1 <= a1 <= a2 <= a3; throws std::invalid_argument otherwise.
    Orbifold(int a1, int a2, int a3);

    const std::array<int, 3>& a() const { return a_; }
    int a(int leg) const { return a_[leg]; }  // legs are 0-based internally
    int mu() const { return mu_; }
    const Rational& chi() const { return chi_; }

    // --- coordinates ---
    int num_twisted() const { return mu_ - 2; }
    Coord unit() const { return 0; }
    Coord divisor() const { return mu_ - 1; }
    bool is_unit(Coord c) const { return c == 0; }
    bool is_divisor(Coord c) const { return c == mu_ - 1; }
    bool is_twisted(Coord c) const { return c > 0 && c < mu_ - 1; }
    bool valid(Coord c) const { return c >= 0 && c < mu_; }

    // twisted coordinates carry a 0-based dense index t = c-1
    int twisted_index(Coord c) const { return c - 1; }
    Coord twisted_coord(int t) const { return t + 1; }
    int leg_of(int t) const { return twisted_[t].first; }    // 0-based leg
    int j_of(int t) const { return twisted_[t].second; }     // 1 <= j <= a_leg - 1
    // dense index of t_{leg+1, j}, or -1 when absent
    int twisted_lookup(int leg, int j) const;

    // Euler degree: unit -> 1, twisted(i,j) -> (a_i-j)/a_i, divisor -> chi
    // (the grading of e^{t_mu}; the coordinate itself is degree 0).
    Rational coordinate_degree(Coord c) const;
    const Rational& twisted_degree(int t) const { return tw_degree_[t]; }

    // integer weights: twisted_degree(t) * weight_den() (used for exact knapsacks)
    long weight_den() const { return den_; }
    long twisted_weight(int t) const { return tw_weight_[t]; }

    // --- flat metric ---
    Rational metric(Coord c1, Coord c2) const;
    Rational metric_inverse(Coord c1, Coord c2) const;
    // all ordered pairs (sigma, tau) with eta^{sigma tau} != 0, with the value
    const std::vector<std::tuple<Coord, Coord, Rational>>& metric_inverse_pairs() const {
        return eta_inv_pairs_;
    }

    // leg permutations fixing (a1,a2,a3); always contains the identity
    const std::vector<std::array<int, 3>>& leg_symmetries() const { return leg_perms_; }

    bool operator==(const Orbifold& o) const { return a_ == o.a_; }

private:
    std::array<int, 3> a_;
    int mu_;
    Rational chi_;
    std::vector<std::pair<int, int>> twisted_;  // t -> (leg, j)
    std::array<int, 3> leg_start_{};            // leg -> dense index of j=1 (or -1)
    std::vector<Rational> tw_degree_;
    long den_;
    std::vector<long> tw_weight_;
    std::vector<std::tuple<Coord, Coord, Rational>> eta_inv_pairs_;
    std::vector<std::array<int, 3>> leg_perms_;
};

// s_{a,b,c}: 1 if all distinct, 6 if all equal, 2 otherwise.
int symmetry_factor(long a, long b, long c);

}  // namespace frobrec
