#ifndef DSCURVE_TEST_SUPPORT_HPP
#define DSCURVE_TEST_SUPPORT_HPP

// Shared helpers for the unit tests: deterministic generators and small
// independent reference computations.

#include <cstdint>
#include <random>
#include <vector>

#include "dscurve/gfpoly.hpp"

namespace testsupport {

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20240601);
    return r;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

inline dsc::gf::Elem random_elem(const dsc::gf::Field& F) { return uniform(0, F.q() - 1); }

inline dsc::gf::FieldPoly random_poly(const dsc::gf::Field& F, int degree, bool monic = false) {
    std::vector<dsc::gf::Elem> c(degree + 1);
    for (auto& v : c) v = random_elem(F);
    c[degree] = monic ? 1 : (c[degree] ? c[degree] : 1);
    return dsc::gf::FieldPoly(F, c);
}

}  // namespace testsupport

#endif
