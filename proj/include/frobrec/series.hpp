#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "frobrec/orbifold.hpp"
#include "frobrec/rational.hpp"

namespace frobrec {

// Exponent vector over the twisted coordinates, dense in the canonical order.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int num_twisted) : e_(num_twisted, 0) {}

    int size() const { return static_cast<int>(e_.size()); }
    uint16_t operator[](int t) const { return e_[t]; }
    uint16_t& operator[](int t) { return e_[t]; }
    int length() const;

    bool is_zero() const;
    bool contains(const MultiIndex& other) const;  // other <= this entrywise
    MultiIndex plus(int t, int count = 1) const;
    MultiIndex minus(int t, int count = 1) const;  // requires e_[t] >= count
    MultiIndex plus(const MultiIndex& other) const;
    MultiIndex minus(const MultiIndex& other) const;  // requires contains(other)

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }
    bool operator<(const MultiIndex& o) const { return e_ < o.e_; }  // lexicographic

    // "1,1:2;1,2:2" in coordinate order; "" for the zero index
    std::string str(const Orbifold& A) const;

    size_t hash() const;

private:
    std::vector<uint16_t> e_;
};

// One unknown of the expansion: the coefficient c(alpha, m) of t^alpha e^{m t_mu}.
struct CoeffKey {
    MultiIndex alpha;
    int m = 0;

    bool operator==(const CoeffKey& o) const { return m == o.m && alpha == o.alpha; }
    bool operator!=(const CoeffKey& o) const { return !(*this == o); }
    bool operator<(const CoeffKey& o) const {
        if (m != o.m) return m < o.m;
        return alpha < o.alpha;
    }
};

struct CoeffKeyHash {
    size_t operator()(const CoeffKey& k) const {
        return k.alpha.hash() * 1000003u + static_cast<size_t>(k.m);
    }
};

Rational alpha_degree(const Orbifold& A, const MultiIndex& alpha);

// All alpha >= 0 with sum alpha_{i,j} (a_i-j)/a_i = 2 - m*chi, in lexicographic
// order; empty when the target degree is negative. Optional length cap.
std::vector<MultiIndex> admissible_alphas(const Orbifold& A, int m,
                                          std::optional<int> max_len = std::nullopt);

// All alpha with exact Euler degree `degree`, entrywise <= cap when given,
// lexicographic order. Empty when the degree is not realizable.
std::vector<MultiIndex> indices_with_degree(const Orbifold& A, const Rational& degree,
                                            const MultiIndex* cap = nullptr,
                                            std::optional<int> max_len = std::nullopt);

// Largest m with any admissible key when chi > 0 (the support is finite);
// max_m unchanged when chi <= 0.
int effective_max_m(const Orbifold& A, int max_m);

// Affine-linear expression in unknown coefficients: constant + sum mult * key.
// nonlinear is set when a product of two unknowns occurred; the form is then
// unusable for solving and only the flag is meaningful.
struct LinearForm {
    Rational constant = 0;
    std::map<CoeffKey, Rational> terms;
    bool nonlinear = false;

    void add_term(const CoeffKey& key, const Rational& mult);
    bool is_zero_form() const { return !nonlinear && constant == 0 && terms.empty(); }
    LinearForm& operator+=(const LinearForm& o);
};

// F = trivial cubic part (closed form, never stored) + sparse map of
// nontrivial coefficients. Admissibility and the condition-(iv) cross-leg
// zeros are structural: such keys read as Known 0 without storage.
class Potential {
public:
    explicit Potential(const Orbifold& A);

    const Orbifold& orbifold() const { return A_; }

    bool admissible(const CoeffKey& key) const;
    // m = 0 and support on two or more legs
    bool structural_zero(const CoeffKey& key) const;
    bool in_bounds(const CoeffKey& key) const;

    void set_bounds(int requested_max_m, std::optional<int> max_len);
    int requested_max_m() const { return requested_max_m_; }
    int max_m() const { return max_m_eff_; }
    std::optional<int> max_len() const { return max_len_; }

    // a fully reconstructed/deserialized potential reads absent in-bounds keys
    // as Known 0 instead of Unknown
    void mark_complete() { complete_ = true; }
    bool complete() const { return complete_; }

    struct Entry {
        bool known;
        Rational value;  // meaningful when known
    };
    // Tolerant status query; inadmissible and structural keys are Known 0.
    Entry coeff(const CoeffKey& key) const;

    // Exact value, or nullopt when the coefficient is still unknown.
    // Inadmissible keys are a caller error.
    std::optional<Rational> lookup(const CoeffKey& key) const;

    // Requires an admissible, non-structural key.
    void set(const CoeffKey& key, const Rational& value);

    size_t stored_count() const { return values_.size(); }
    // (key, value) pairs sorted by (m, alpha), zeros included
    std::vector<std::pair<CoeffKey, Rational>> sorted_items() const;
    // same, zeros dropped
    std::vector<std::pair<CoeffKey, Rational>> sorted_nonzero() const;

    bool same_values(const Potential& other) const;

private:
    Orbifold A_;
    int requested_max_m_ = 0;
    int max_m_eff_ = 0;
    std::optional<int> max_len_;
    bool complete_ = false;
    std::unordered_map<CoeffKey, Rational, CoeffKeyHash> values_;
};

// Coefficient of t^beta e^{n t_mu} in dx dy dz F, as an affine-linear form in
// the Unknown coefficients of P. The trivial part enters only at (0,0):
// d1 dx dy F = eta(x,y).
LinearForm third_derivative_coefficient(const Potential& P, Coord x, Coord y, Coord z,
                                        const MultiIndex& beta, int n);

std::string key_str(const Orbifold& A, const CoeffKey& key);

}  // namespace frobrec
