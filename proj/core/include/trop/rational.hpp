#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <stdexcept>

namespace trop {

using Rat = mpq_class;

inline Rat rat_of(long long n) { return Rat(static_cast<long>(n)); }

// Parses "p/q" or "p". Throws on malformed input or zero denominator.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

// Canonical "p/q" form; integers render without the "/1".
inline std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_str();
}

struct QPoint {
    Rat x, y;
    bool operator==(const QPoint& o) const { return x == o.x && y == o.y; }
};

} // namespace trop
