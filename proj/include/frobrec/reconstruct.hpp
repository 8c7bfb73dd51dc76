#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "frobrec/wdvv.hpp"

namespace frobrec {

struct StalledError : std::runtime_error {
    CoeffKey key;
    StalledError(const Orbifold& A, const CoeffKey& k)
        : std::runtime_error("reconstruction stalled at " + key_str(A, k)), key(k) {}
};

struct InconsistentError : std::runtime_error {
    CoeffKey key;
    Rational v1, v2;
    InconsistentError(const Orbifold& A, const CoeffKey& k, Rational a, Rational b)
        : std::runtime_error("inconsistent values for " + key_str(A, k) + ": " + rat_str(a) +
                             " vs " + rat_str(b)),
          key(k),
          v1(a),
          v2(b) {}
};

struct SymmetryConflictError : std::runtime_error {
    CoeffKey key1, key2;
    SymmetryConflictError(const Orbifold& A, const CoeffKey& k1, const CoeffKey& k2)
        : std::runtime_error("symmetry orbit disagrees: " + key_str(A, k1) + " vs " +
                             key_str(A, k2)),
          key1(k1),
          key2(k2) {}
};

struct SeedReport {
    long cubic = 0;            // nonzero same-leg cubics
    long base = 0;             // the exponential seed term
    long structural_zero = 0;  // admissible m=0 cross-leg keys within bounds
};

// The term of condition (vi): e_{i,1} over every leg with a_i >= 2, at m = 1.
CoeffKey base_exponential_key(const Orbifold& A);

// Trivial part plus: cubic coefficients 1/(a_i s_{j1,j2,j3}) for same-leg
// triples with j1+j2+j3 = a_i, and the base exponential term with value 1.
Potential seed(const Orbifold& A, SeedReport* report = nullptr);

// alpha with the legs relabelled by a degree-preserving permutation
MultiIndex permute_legs(const Orbifold& A, const MultiIndex& alpha,
                        const std::array<int, 3>& perm);

struct LogEntry {
    CoeffKey key;
    WdvvInstance inst;
    Rational value;
};

class SolveState {
public:
    SolveState(const Orbifold& A, int max_m, std::optional<int> max_len);

    const Orbifold& orbifold() const { return *A_; }
    Potential& potential() { return P_; }
    const Potential& potential() const { return P_; }
    const std::vector<LogEntry>& log() const { return log_; }
    const SeedReport& seeds() const { return seeds_; }
    const std::set<CoeffKey>& unknown() const { return unknown_; }

    CoeffKey orbit_rep(const CoeffKey& key) const;
    std::vector<CoeffKey> orbit(const CoeffKey& key) const;

    // records the value for the whole orbit; detects disagreements
    void assign(const CoeffKey& key, const Rational& value, const WdvvInstance& inst);

    bool is_unknown(const CoeffKey& key) const { return unknown_.count(key) > 0; }

private:
    const Orbifold* A_;
    Potential P_;
    SeedReport seeds_;
    std::set<CoeffKey> unknown_;
    std::vector<LogEntry> log_;
};

// Searches the prescribed instance families for the key, then a bounded
// generic scan; accepts the first form whose unknowns fold (through the
// equal-leg symmetry) onto this key's orbit with a nonzero multiplier.
// Returns the value and marks the orbit Known; nullopt when no candidate
// resolves the key yet.
std::optional<Rational> resolve_key(SolveState& state, const CoeffKey& key,
                                    bool allow_generic_scan = true);

// Copies Known values across equal-leg orbits; returns the number of keys
// newly determined this way.
int apply_symmetry(SolveState& state);

struct Reconstruction {
    Potential potential;
    std::vector<LogEntry> log;
    SeedReport seeds;
};

// Seeds and resolves every admissible key within bounds, level by level:
// m in {0,1} jointly by length, then (m, length) for m >= 2, with an
// intra-level fixpoint. Deterministic: identical inputs give identical logs.
Reconstruction reconstruct(const Orbifold& A, int max_m,
                           std::optional<int> max_len = std::nullopt);

}  // namespace frobrec
