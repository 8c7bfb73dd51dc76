#include "frobrec/series.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace frobrec {

int MultiIndex::length() const {
    int s = 0;
    for (auto v : e_) s += v;
    return s;
}

bool MultiIndex::is_zero() const {
    for (auto v : e_)
        if (v) return false;
    return true;
}

bool MultiIndex::contains(const MultiIndex& other) const {
    for (int t = 0; t < size(); ++t)
        if (e_[t] < other.e_[t]) return false;
    return true;
}

MultiIndex MultiIndex::plus(int t, int count) const {
    MultiIndex r = *this;
    r.e_[t] = static_cast<uint16_t>(r.e_[t] + count);
    return r;
}

MultiIndex MultiIndex::minus(int t, int count) const {
    MultiIndex r = *this;
    if (r.e_[t] < count) throw std::logic_error("multi-index underflow");
    r.e_[t] = static_cast<uint16_t>(r.e_[t] - count);
    return r;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
    MultiIndex r = *this;
    for (int t = 0; t < size(); ++t) r.e_[t] = static_cast<uint16_t>(r.e_[t] + other.e_[t]);
    return r;
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
    MultiIndex r = *this;
    for (int t = 0; t < size(); ++t) {
        if (r.e_[t] < other.e_[t]) throw std::logic_error("multi-index underflow");
        r.e_[t] = static_cast<uint16_t>(r.e_[t] - other.e_[t]);
    }
    return r;
}

std::string MultiIndex::str(const Orbifold& A) const {
    std::string s;
    for (int t = 0; t < size(); ++t) {
        if (!e_[t]) continue;
        if (!s.empty()) s += ';';
        s += std::to_string(A.leg_of(t) + 1) + "," + std::to_string(A.j_of(t)) + ":" +
             std::to_string(e_[t]);
    }
    return s;
}

size_t MultiIndex::hash() const {
    size_t h = 1469598103934665603ull;
    for (auto v : e_) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

std::string key_str(const Orbifold& A, const CoeffKey& key) {
    return "c({" + key.alpha.str(A) + "}, " + std::to_string(key.m) + ")";
}

Rational alpha_degree(const Orbifold& A, const MultiIndex& alpha) {
    long w = 0;
    for (int t = 0; t < alpha.size(); ++t) w += static_cast<long>(alpha[t]) * A.twisted_weight(t);
    return rat_frac(w, A.weight_den());
}

namespace {

// integer degree target for keys at level m: (2 - m*chi) * weight_den
std::optional<long> level_weight(const Orbifold& A, int m) {
    Rational d = (2 - m * A.chi()) * A.weight_den();
    if (!rat_is_integer(d)) return std::nullopt;  // cannot happen: chi*den is integral
    if (d < 0) return std::nullopt;
    return d.get_num().get_si();
}

// all sub-vectors alpha (entrywise <= cap when cap != nullptr) with
// sum alpha_t * weight_t == target; lexicographic output order
void enumerate_weighted(const Orbifold& A, long target, const MultiIndex* cap,
                        std::optional<int> max_len, std::vector<MultiIndex>& out) {
    out.clear();
    int nt = A.num_twisted();
    MultiIndex cur(nt);
    std::function<void(int, long, int)> rec = [&](int t, long rem, int len) {
        if (t == nt) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        long w = A.twisted_weight(t);
        long emax = rem / w;
        if (cap) emax = std::min<long>(emax, (*cap)[t]);
        if (max_len) emax = std::min<long>(emax, *max_len - len);
        for (long e = 0; e <= emax; ++e) {
            cur[t] = static_cast<uint16_t>(e);
            rec(t + 1, rem - e * w, len + static_cast<int>(e));
        }
        cur[t] = 0;
    };
    rec(0, target, 0);
}

}  // namespace

std::vector<MultiIndex> admissible_alphas(const Orbifold& A, int m, std::optional<int> max_len) {
    std::vector<MultiIndex> out;
    if (m < 0) return out;
    auto target = level_weight(A, m);
    if (!target) return out;
    enumerate_weighted(A, *target, nullptr, max_len, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> indices_with_degree(const Orbifold& A, const Rational& degree,
                                            const MultiIndex* cap, std::optional<int> max_len) {
    std::vector<MultiIndex> out;
    if (degree < 0) return out;
    Rational w = degree * A.weight_den();
    if (!rat_is_integer(w)) return out;
    if (!w.get_num().fits_slong_p()) return out;
    enumerate_weighted(A, w.get_num().get_si(), cap, max_len, out);
    std::sort(out.begin(), out.end());
    return out;
}

int effective_max_m(const Orbifold& A, int max_m) {
    if (A.chi() <= 0) return max_m;
    // natural bound: 2 - m*chi >= 0, i.e. m <= 2/chi
    Rational bound = Rational(2) / A.chi();
    int m = max_m;
    if (bound < m) m = static_cast<int>(bound.get_num().get_si() / bound.get_den().get_si());
    return std::max(m, 1);
}

void LinearForm::add_term(const CoeffKey& key, const Rational& mult) {
    auto it = terms.find(key);
    if (it == terms.end()) {
        if (mult != 0) terms.emplace(key, mult);
        return;
    }
    it->second += mult;
    if (it->second == 0) terms.erase(it);
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    constant += o.constant;
    for (auto& [k, v] : o.terms) add_term(k, v);
    nonlinear = nonlinear || o.nonlinear;
    return *this;
}

Potential::Potential(const Orbifold& A) : A_(A) {
    requested_max_m_ = 1;
    max_m_eff_ = effective_max_m(A_, 1);
}

bool Potential::admissible(const CoeffKey& key) const {
    if (key.m < 0) return false;
    if (key.alpha.size() != A_.num_twisted()) return false;
    return alpha_degree(A_, key.alpha) + key.m * A_.chi() == 2;
}

bool Potential::structural_zero(const CoeffKey& key) const {
    if (key.m != 0) return false;
    int legs = 0;
    std::array<bool, 3> seen{false, false, false};
    for (int t = 0; t < key.alpha.size(); ++t) {
        if (key.alpha[t] && !seen[A_.leg_of(t)]) {
            seen[A_.leg_of(t)] = true;
            ++legs;
        }
    }
    return legs >= 2;
}

bool Potential::in_bounds(const CoeffKey& key) const {
    if (key.m > max_m_eff_) return false;
    if (max_len_ && key.alpha.length() > *max_len_) return false;
    return true;
}

void Potential::set_bounds(int requested_max_m, std::optional<int> max_len) {
    requested_max_m_ = requested_max_m;
    max_m_eff_ = effective_max_m(A_, requested_max_m);
    max_len_ = max_len;
}

Potential::Entry Potential::coeff(const CoeffKey& key) const {
    if (!admissible(key)) return {true, 0};
    if (structural_zero(key)) return {true, 0};
    auto it = values_.find(key);
    if (it != values_.end()) return {true, it->second};
    if (complete_ && in_bounds(key)) return {true, 0};
    return {false, 0};
}

std::optional<Rational> Potential::lookup(const CoeffKey& key) const {
    if (!admissible(key)) throw std::invalid_argument("lookup of inadmissible key");
    Entry e = coeff(key);
    if (!e.known) return std::nullopt;
    return e.value;
}

void Potential::set(const CoeffKey& key, const Rational& value) {
    if (!admissible(key)) throw std::invalid_argument("set of inadmissible key");
    if (structural_zero(key)) throw std::invalid_argument("set of structural zero key");
    values_[key] = value;
}

std::vector<std::pair<CoeffKey, Rational>> Potential::sorted_items() const {
    std::vector<std::pair<CoeffKey, Rational>> out(values_.begin(), values_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<std::pair<CoeffKey, Rational>> Potential::sorted_nonzero() const {
    auto out = sorted_items();
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& kv) { return kv.second == 0; }),
              out.end());
    return out;
}

bool Potential::same_values(const Potential& other) const {
    return sorted_nonzero() == other.sorted_nonzero();
}

LinearForm third_derivative_coefficient(const Potential& P, Coord x, Coord y, Coord z,
                                        const MultiIndex& beta, int n) {
    const Orbifold& A = P.orbifold();
    LinearForm out;
    std::array<Coord, 3> c{x, y, z};

    // the unit direction reduces to the metric: d1 dp dq F = eta(p,q)
    for (int i = 0; i < 3; ++i) {
        if (A.is_unit(c[i])) {
            if (beta.is_zero() && n == 0)
                out.constant = A.metric(c[(i + 1) % 3], c[(i + 2) % 3]);
            return out;
        }
    }

    int divisors = 0;
    MultiIndex shift(A.num_twisted());
    for (Coord q : c) {
        if (A.is_divisor(q))
            ++divisors;
        else
            shift = shift.plus(A.twisted_index(q));
    }
    if (divisors > 0 && n == 0) return out;

    CoeffKey key{beta.plus(shift), n};
    // falling-factorial multiplicity of repeated twisted derivatives, times n^divisors
    Rational mult = 1;
    for (int t = 0; t < shift.size(); ++t)
        for (int k = 0; k < shift[t]; ++k) mult *= key.alpha[t] - k;
    for (int d = 0; d < divisors; ++d) mult *= n;
    if (mult == 0) return out;

    auto e = P.coeff(key);
    if (e.known)
        out.constant = mult * e.value;
    else
        out.add_term(key, mult);
    return out;
}

}  // namespace frobrec
