#include "frobrec/orbifold.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace frobrec {

Orbifold::Orbifold(int a1, int a2, int a3) : a_{a1, a2, a3} {
    if (a1 < 1 || a2 < 1 || a3 < 1)
        throw std::invalid_argument("orbifold orders must be positive");
    if (!(a1 <= a2 && a2 <= a3))
        throw std::invalid_argument("orbifold orders must be sorted: a1 <= a2 <= a3");

    mu_ = a1 + a2 + a3 - 1;
    chi_ = rat_frac(1, a1) + rat_frac(1, a2) + rat_frac(1, a3) - 1;

    leg_start_.fill(-1);
    for (int leg = 0; leg < 3; ++leg) {
        if (a_[leg] < 2) continue;
        leg_start_[leg] = static_cast<int>(twisted_.size());
        for (int j = 1; j <= a_[leg] - 1; ++j) twisted_.emplace_back(leg, j);
    }

    long l12 = std::lcm(static_cast<long>(a1), static_cast<long>(a2));
    den_ = std::lcm(l12, static_cast<long>(a3));
    for (auto [leg, j] : twisted_) {
        tw_degree_.push_back(rat_frac(a_[leg] - j, a_[leg]));
        tw_weight_.push_back(den_ / a_[leg] * (a_[leg] - j));
    }

    // eta is anti-diagonal: unit<->divisor with value 1, twisted(i,j)<->twisted(i,a_i-j)
    // with value 1/a_i; the inverse swaps 1/a_i for a_i.
    eta_inv_pairs_.emplace_back(unit(), divisor(), rat_int(1));
    eta_inv_pairs_.emplace_back(divisor(), unit(), rat_int(1));
    for (int t = 0; t < num_twisted(); ++t) {
        int leg = leg_of(t), j = j_of(t);
        int p = twisted_lookup(leg, a_[leg] - j);
        eta_inv_pairs_.emplace_back(twisted_coord(t), twisted_coord(p), rat_int(a_[leg]));
    }

    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& p : perms) {
        if (a_[p[0]] == a_[0] && a_[p[1]] == a_[1] && a_[p[2]] == a_[2])
            leg_perms_.push_back({p[0], p[1], p[2]});
    }
}

int Orbifold::twisted_lookup(int leg, int j) const {
    if (leg < 0 || leg > 2 || j < 1 || j > a_[leg] - 1) return -1;
    return leg_start_[leg] + (j - 1);
}

Rational Orbifold::coordinate_degree(Coord c) const {
    if (is_unit(c)) return rat_int(1);
    if (is_divisor(c)) return chi_;
    return tw_degree_[twisted_index(c)];
}

Rational Orbifold::metric(Coord c1, Coord c2) const {
    if (is_unit(c1) && is_divisor(c2)) return rat_int(1);
    if (is_divisor(c1) && is_unit(c2)) return rat_int(1);
    if (is_twisted(c1) && is_twisted(c2)) {
        int t1 = twisted_index(c1), t2 = twisted_index(c2);
        if (leg_of(t1) == leg_of(t2) && j_of(t1) + j_of(t2) == a_[leg_of(t1)])
            return rat_frac(1, a_[leg_of(t1)]);
    }
    return rat_int(0);
}

Rational Orbifold::metric_inverse(Coord c1, Coord c2) const {
    Rational m = metric(c1, c2);
    if (m == 0) return m;
    return 1 / m;
}

int symmetry_factor(long a, long b, long c) {
    if (a == b && b == c) return 6;
    if (a != b && b != c && a != c) return 1;
    return 2;
}

}  // namespace frobrec
