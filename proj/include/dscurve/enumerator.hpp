#ifndef DSCURVE_ENUMERATOR_HPP
#define DSCURVE_ENUMERATOR_HPP

// Depth-first enumeration of candidate place sequences [a_1..a_g] whose real
// Weil polynomial has every root in [-2 sqrt q, 2 sqrt q].

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "dscurve/zeta.hpp"

namespace dsc::enumerator {

using zeta::ExactPoly;
using zeta::Int;
using zeta::Rat;

/// H_1..H_i of h(x) = sum H_n x^{g-n} for the prefix a_1..a_i, and the
/// slope of H_i in a_i.
struct HCoefficients {
    std::vector<Rat> H;  // H[0] = H_1
    Rat slope;
};

HCoefficients h_coefficients(std::uint64_t q, int g, const std::vector<Int>& prefix);

/// h^{(g-i)}(x) for the prefix a_1..a_i.
ExactPoly derivative_at_depth(std::uint64_t q, int g, const std::vector<Int>& prefix);

/// A node of the search tree at depth i = prefix.size().
struct PartialCandidate {
    std::uint64_t q = 0;
    int g = 0;
    std::vector<Int> prefix;
    std::vector<Rat> H;
};

PartialCandidate root_node(std::uint64_t q, int g);
PartialCandidate child(const PartialCandidate& node, const Int& a);

struct RootEnclosure {
    Rat lo, hi;
    int multiplicity = 1;
    int precision = 32;
};

/// Real roots of T_i' for the child depth, ascending and with multiplicity.
std::vector<RootEnclosure> critical_points(const PartialCandidate& node, int precision = 32);

struct Range {
    Int lo, hi;  // empty when lo > hi
    bool empty() const { return lo > hi; }
};

/// Certified range for the next entry a_{i+1}: every value outside it fails
/// acceptance. Depth 0 returns hws_interval(q, g).
Range prune_range(const PartialCandidate& node);
/// Range from the Weil bound on N_{i+1} alone.
Range weil_range(const PartialCandidate& node);

/// Exact: h^{(g-i-1)} of the child has every root real and in the window.
bool accept(const PartialCandidate& node, const Int& a);

struct Candidate {
    std::vector<Int> a;
    ExactPoly h;
    std::vector<Int> P;
};

struct Constraints {
    std::optional<Int> a1;
    std::set<int> zeros;
    std::optional<int> ds_m;
    bool prune = true;
    unsigned jobs = 1;
};

/// Calls `emit` for each survivor in lexicographic order of a.
void enumerate(std::uint64_t q, int g, const Constraints& c, const std::function<void(const Candidate&)>& emit);
std::vector<Candidate> enumerate(std::uint64_t q, int g, const Constraints& c = {});

}  // namespace dsc::enumerator

#endif
