#pragma once

#include <cmath>
#include <cstdint>

namespace hybridsim {

struct Coord {
    int x = 0;
    int y = 0;

    friend bool operator==(const Coord& a, const Coord& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Coord& a, const Coord& b) { return !(a == b); }
};

inline int chebyshev(Coord a, Coord b) {
    int dx = std::abs(a.x - b.x);
    int dy = std::abs(a.y - b.y);
    return dx > dy ? dx : dy;
}

// Squared Euclidean distance in exact integer arithmetic; used for all
// nearest-exit / nearest-rescuer comparisons so ties are exact.
inline long long euclid_sq(Coord a, Coord b) {
    long long dx = a.x - b.x;
    long long dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline int sign_step(int from, int to) {
    if (to > from) return 1;
    if (to < from) return -1;
    return 0;
}

}  // namespace hybridsim
