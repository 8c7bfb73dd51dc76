#pragma once

#include <cstdint>
#include <initializer_list>

#include "frobrec/reconstruct.hpp"

namespace frobrec::testing {

// deterministic xorshift for property-style tests
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

struct Part {
    int leg;  // 1-based
    int j;
    int e;
};

inline MultiIndex mk(const Orbifold& A, std::initializer_list<Part> parts) {
    MultiIndex m(A.num_twisted());
    for (auto [leg, j, e] : parts) m[A.twisted_lookup(leg - 1, j)] += e;
    return m;
}

inline Coord tw(const Orbifold& A, int leg, int j) {
    return A.twisted_coord(A.twisted_lookup(leg - 1, j));
}

}  // namespace frobrec::testing
