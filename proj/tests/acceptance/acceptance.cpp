// Acceptance gate: one PASS/FAIL line per criterion.
//
// Criteria 1-10 run the pinned reproduce targets. A criterion whose only
// failing items are listed in kKnownDeviations prints FAIL with the reason
// but does not fail the run; any other failure, or a known deviation that
// starts passing, makes the exit code nonzero.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dscurve/carlitz.hpp"
#include "dscurve/curvelab.hpp"
#include "dscurve/enumerator.hpp"
#include "dscurve/error.hpp"
#include "dscurve/reproduce.hpp"
#include "dscurve/zeta.hpp"

namespace {

using dsc::zeta::ExactPoly;
using dsc::zeta::Int;

struct Known {
    std::string target, item, reason;
};

const std::vector<Known> kKnownDeviations{
    {"genus1-table", "(2,3) y^2+y=x^3+1",
     "the tabulated equation has N_1 = 3, N_3 = 9; y^2+xy=x^3+1 realizes N = 4"},
    {"basechange", "Phi_M", "the tabulated x^3 coefficient omits the +1 contributed by [t]"},
};

struct Outcome {
    bool pass = true;
    std::vector<std::string> failures;  // unexpected
    std::vector<std::string> known;     // known deviations that still fail
};

const Known* known_for(const std::string& target, const std::string& item) {
    for (const auto& k : kKnownDeviations)
        if (k.target == target && k.item == item) return &k;
    return nullptr;
}

Outcome run_targets(const std::vector<std::string>& targets) {
    Outcome o;
    for (const auto& t : targets) {
        dsc::cli::Report rep;
        try {
            rep = dsc::cli::reproduce(t, {0, 1});
        } catch (const std::exception& e) {
            o.failures.push_back(t + ": " + e.what());
            continue;
        }
        for (const auto& i : rep.items) {
            const Known* k = known_for(t, i.name);
            if (i.pass && k) o.failures.push_back(t + ": known deviation '" + i.name + "' now passes");
            if (!i.pass && k) o.known.push_back(i.name + " (" + k->reason + ")");
            if (!i.pass && !k) o.failures.push_back(t + ": " + i.name + " expected " + i.expected + ", got " + i.actual);
        }
    }
    o.pass = o.failures.empty() && o.known.empty();
    return o;
}

// ---------------------------------------------------------------------------
// Criterion 11 property suites

std::mt19937_64 rng(20261016);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

void mobius_round_trips(Outcome& o) {
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Int> a(uniform(1, 16));
        for (auto& x : a) x = uniform(0, 1000000);
        auto N = dsc::zeta::points_from_places(a);
        if (dsc::zeta::places_from_points(N) != a) {
            o.failures.push_back("Moebius round trip, trial " + std::to_string(trial));
            return;
        }
    }
}

ExactPoly linear(const Int& root) { return ExactPoly::from_ints({-root, Int(1)}); }

void real_weil_round_trips(Outcome& o) {
    const std::uint64_t qs[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49};
    for (int trial = 0; trial < 500; ++trial) {
        std::uint64_t q = qs[uniform(0, 12)];
        int g = static_cast<int>(uniform(1, 6));
        long r = dsc::zeta::floor_two_sqrt(Int(q)).get_si();
        ExactPoly h = ExactPoly::from_ints({Int(1)});
        for (int i = 0; i < g;) {
            if (i + 2 <= g && uniform(0, 2) == 0) {
                // x^2 - k has roots +-sqrt(k) inside the window for k <= 4q.
                h = h * ExactPoly::from_ints({Int(-uniform(0, 4 * static_cast<long>(q))), Int(0), Int(1)});
                i += 2;
            } else {
                h = h * linear(Int(uniform(-r, r)));
                i += 1;
            }
        }
        std::string tag = "P<->h trial " + std::to_string(trial) + " h=" + dsc::zeta::format(h, 'x');
        try {
            if (!dsc::zeta::is_weil_valid(h, Int(q))) {
                o.failures.push_back(tag + ": generator produced an invalid h");
                return;
            }
            auto P = dsc::zeta::frobenius_from_real_weil_coeffs(h, Int(q), g);
            if (dsc::zeta::real_weil_from_frobenius_coeffs(P, Int(q), g) != h ||
                dsc::zeta::ZetaData::from_frobenius(q, g, P).real_weil() != h) {
                o.failures.push_back(tag);
                return;
            }
        } catch (const dsc::Error& e) {
            o.failures.push_back(tag + ": " + e.what());
            return;
        }
    }
}

void enumerator_completeness(Outcome& o) {
    std::set<std::vector<Int>> stream;
    for (const auto& c : dsc::enumerator::enumerate(2, 2)) stream.insert(c.h.integer_coeffs());
    // Every monic quadratic in the box |b| <= 2*2*sqrt 2, |c| <= 8 whose roots
    // are in the window and whose place counts a_1, a_2 are nonnegative.
    std::set<std::vector<Int>> brute;
    for (long b = -6; b <= 6; ++b)
        for (long c = -8; c <= 8; ++c) {
            auto h = ExactPoly::from_ints({Int(c), Int(b), Int(1)});
            if (!dsc::zeta::is_weil_valid(h, Int(2))) continue;
            try {
                auto a = dsc::zeta::ZetaData::from_real_weil(2, 2, h).places_upto(2);
                if (a[0] >= 0 && a[1] >= 0) brute.insert(h.integer_coeffs());
            } catch (const dsc::InconsistentError&) {
                // a negative place count: not a curve
            }
        }
    if (stream != brute)
        o.failures.push_back("enumerate(2, 2) gives " + std::to_string(stream.size()) + " candidates, the box gives " +
                             std::to_string(brute.size()));

    std::set<std::vector<Int>> places;
    for (const auto& c : dsc::enumerator::enumerate(2, 2)) places.insert(c.a);
    auto F = dsc::gf::Field::of_order(2);
    int curves = 0;
    for (std::uint64_t hc = 0; hc < 16; ++hc)
        for (std::uint64_t fc = 0; fc < 128; ++fc) {
            auto h = dsc::gf::decode(F, hc), f = dsc::gf::decode(F, fc);
            if (dsc::curvelab::hyperelliptic_genus(h, f) != 2 || !dsc::curvelab::hyperelliptic_smooth(h, f)) continue;
            auto curve = dsc::curvelab::CurveModel(dsc::curvelab::make_hyperelliptic(F, h, f));
            auto N = dsc::curvelab::count_points_upto(curve, 2);
            auto a = dsc::zeta::places_from_points({Int(static_cast<long>(N[0])), Int(static_cast<long>(N[1]))});
            ++curves;
            if (!places.count(a)) {
                o.failures.push_back("genus-2 curve " + dsc::curvelab::describe(curve) + " is not covered");
                return;
            }
        }
    if (curves == 0) o.failures.push_back("no genus-2 curves scanned");
}

void carlitz_oracle(Outcome& o) {
    for (std::uint64_t q : {2, 3}) {
        auto F = dsc::gf::Field::of_order(q);
        int max_pi = q == 2 ? 6 : 3;
        for (int dm = 1; dm <= 4; ++dm) {
            std::uint64_t n = dsc::gf::checked_pow(q, dm);
            for (std::uint64_t code = 0; code < n; ++code) {
                auto M = dsc::gf::decode(F, code) + dsc::gf::FieldPoly::monomial(F, 1, dm);
                auto G = dsc::carlitz::unit_group(M);
                auto phi = dsc::carlitz::carlitz_phi(M);
                for (int d = 1; d <= max_pi; ++d)
                    for (const auto& pi : dsc::gf::irreducibles(F, d)) {
                        if (!G.is_unit(pi)) continue;
                        auto f = dsc::carlitz::residual_degree(pi, G);
                        dsc::gf::DegreeProfile expect{{static_cast<int>(f), static_cast<int>(G.order() / f)}};
                        if (dsc::gf::ddf_degrees(dsc::carlitz::specialize(phi, pi)) != expect) {
                            o.failures.push_back("q=" + std::to_string(q) + " M=" + dsc::gf::format(M) +
                                                 " pi=" + dsc::gf::format(pi));
                            return;
                        }
                    }
            }
        }
    }
}

Outcome run_properties() {
    Outcome o;
    std::vector<std::pair<const char*, std::function<void(Outcome&)>>> suites{
        {"Moebius round trips", mobius_round_trips},
        {"P<->h round trips", real_weil_round_trips},
        {"enumerator completeness at (2,2)", enumerator_completeness},
        {"Carlitz place-count oracle", carlitz_oracle},
    };
    for (const auto& [name, suite] : suites) {
        try {
            suite(o);
        } catch (const std::exception& e) {
            o.failures.push_back(std::string(name) + ": " + e.what());
        }
    }
    o.pass = o.failures.empty();
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    auto targets = [](std::vector<std::string> t) { return [t] { return run_targets(t); }; };
    const std::vector<Criterion> criteria{
        {1, "admissible-pair tables g = 1..5",
         targets({"admissible-g1", "admissible-g2", "admissible-g3", "admissible-g4", "admissible-g5"})},
        {2, "genus-1 DS table", targets({"genus1-table"})},
        {3, "genus-2 DS table", targets({"genus2-table"})},
        {4, "elephant pipeline", targets({"elephant"})},
        {5, "non-DS genus-6 example", targets({"nonds-genus6"})},
        {6, "Deligne-Lusztig families", targets({"hermitian", "suzuki", "ree", "drinfeld-dl"})},
        {7, "Carlitz curve M = t^4+t+1", targets({"carlitz-ex1"})},
        {8, "Carlitz curve M = (t^6+t+1)^2", targets({"carlitz-ex2"})},
        {9, "Drinfeld torsion, rank-3 check, base change", targets({"rank3-footnote", "basechange"})},
        {10, "Howe constructions", targets({"howe-cubic"})},
        {11, "property suites", run_properties},
    };

    int passed = 0, known = 0, unexpected = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char time[32];
        std::snprintf(time, sizeof time, "%.1f s", s);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " (" << time << ")";
        if (!o.failures.empty()) std::cout << " [unexpected]";
        else if (!o.known.empty()) std::cout << " [known deviation]";
        std::cout << "\n";
        for (const auto& f : o.failures) std::cout << "      unexpected: " << f << "\n";
        for (const auto& k : o.known) std::cout << "      known: " << k << "\n";
        if (o.pass) ++passed;
        else if (o.failures.empty()) ++known;
        else ++unexpected;
    }
    std::cout << passed << " passed, " << known << " failed on known deviations, " << unexpected
              << " failed unexpectedly\n";
    return unexpected == 0 ? 0 : 1;
}
