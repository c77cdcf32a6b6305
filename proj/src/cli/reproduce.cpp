#include "dscurve/reproduce.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "dscurve/carlitz.hpp"
#include "dscurve/curvelab.hpp"
#include "dscurve/drinfeld.hpp"
#include "dscurve/enumerator.hpp"
#include "dscurve/error.hpp"
#include "dscurve/zeta.hpp"

namespace dsc::cli {

namespace {

using zeta::ExactPoly;
using zeta::Int;

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream s;
    s << "[";
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << "]";
    return s.str();
}

std::string boolstr(bool b) { return b ? "true" : "false"; }

void add(Report& r, std::string name, std::string expected, std::string actual) {
    bool pass = expected == actual;
    r.items.push_back({std::move(name), std::move(expected), std::move(actual), pass});
}

// Runs `body`, turning a library error into a failing item.
void guarded(Report& r, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        r.items.push_back({name, "no error", std::string("error: ") + e.what(), false});
    }
}

curvelab::Hyperelliptic hyp(std::uint64_t q, const char* h, const char* f) {
    gf::Field F = gf::Field::of_order(q);
    return curvelab::make_hyperelliptic(F, gf::parse_poly(F, h, 'x'), gf::parse_poly(F, f, 'x'));
}

std::int64_t count(const curvelab::Hyperelliptic& c, int m) { return curvelab::count_points(curvelab::CurveModel(c), m); }

std::string pairs_string(const std::vector<zeta::AdmissiblePair>& v) {
    std::string s;
    for (const auto& p : v) s += (s.empty() ? "" : " ") + ("(" + std::to_string(p.q) + "," + std::to_string(p.m) + ")");
    return s;
}

std::vector<Int> ints(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

// ---------------------------------------------------------------------------

Report admissible(int g) {
    static const std::map<int, const char*> table{
        {1, "(2,2) (2,3) (3,2) (4,2)"},
        {2, "(2,2) (2,3) (2,4) (3,2) (3,3) (4,2) (5,2)"},
        {3, "(2,2) (2,3) (2,4) (2,5) (3,2) (3,3) (4,2) (4,3) (5,2) (7,2) (8,2) (9,2)"},
        {4, "(2,2) (2,3) (2,4) (2,5) (2,6) (3,2) (3,3) (3,4) (4,2) (4,3) (5,2) (7,2) (8,2) (9,2) (11,2)"},
        {5, "(2,2) (2,3) (2,4) (2,5) (2,6) (3,2) (3,3) (3,4) (4,2) (4,3) (5,2) (5,3) (7,2) (8,2) (9,2) (11,2) (13,2)"},
    };
    Report r{"admissible-g" + std::to_string(g), {}};
    add(r, "admissible pairs for g = " + std::to_string(g), table.at(g), pairs_string(zeta::admissible_pairs(g)));
    return r;
}

struct TableRow {
    std::uint64_t q;
    int m;
    const char *h, *f, *label;
    long N;
};

Report curve_table(const std::string& target, int g, const std::vector<TableRow>& rows) {
    Report r{target, {}};
    for (const auto& row : rows) {
        std::string name = "(" + std::to_string(row.q) + "," + std::to_string(row.m) + ") " + row.label;
        guarded(r, name, [&] {
            auto c = hyp(row.q, row.h, row.f);
            std::vector<Int> N;
            for (int k = 1; k <= g; ++k) N.emplace_back(count(c, k));
            std::int64_t nm = count(c, row.m);
            std::string ds;
            try {
                ds = boolstr(zeta::ds_check(zeta::frobenius_from_counts(row.q, g, N), row.m));
            } catch (const Error& e) {
                ds = std::string("error: ") + e.what();
            }
            add(r, name, "N_1=" + std::to_string(row.N) + " N_m=" + std::to_string(row.N) + " ds=true",
                "N_1=" + N[0].get_str() + " N_m=" + std::to_string(nm) + " ds=" + ds);
        });
    }
    return r;
}

Report genus1_table() {
    Report r = curve_table("genus1-table", 1,
                           {{2, 2, "1", "x^3+x", "y^2+y=x^3+x", 5},
                            {2, 3, "1", "x^3+1", "y^2+y=x^3+1", 4},
                            {2, 3, "1", "x^3+x", "y^2+y=x^3+x", 5},
                            {3, 2, "0", "x^3+2*x+1", "y^2=x^3+2*x+1", 7},
                            {4, 2, "1", "x^3", "y^2+y=x^3", 9}});
    guarded(r, "y^2+y=x^3 over F_2: N_1, N_2, N_4", [&] {
        auto c = hyp(2, "1", "x^3");
        add(r, "y^2+y=x^3 over F_2: N_1, N_2, N_4", "3,9,9",
            std::to_string(count(c, 1)) + "," + std::to_string(count(c, 2)) + "," + std::to_string(count(c, 4)));
    });
    return r;
}

Report genus2_table() {
    Report r = curve_table("genus2-table", 2,
                           {{2, 2, "x^2+x", "x^5+x^3+x^2+x", "y^2+(x^2+x)*y=x^5+x^3+x^2+x", 3},
                            {2, 2, "x", "x^5+x", "y^2+x*y=x^5+x", 4},
                            {2, 2, "1", "x^5+x^3", "y^2+y=x^5+x^3", 5},
                            {2, 2, "x^3+x+1", "x^5+x^4+x^3+x", "y^2+(x^3+x+1)*y=x^5+x^4+x^3+x", 6},
                            {2, 3, "1", "x^5+x^3+1", "y^2+y=x^5+x^3+1", 1},
                            {2, 3, "x", "x^5+x^2+x", "y^2+x*y=x^5+x^2+x", 2},
                            {2, 3, "1", "x^5+x^4", "y^2+y=x^5+x^4", 5},
                            {3, 2, "0", "x^5+2*x^4+2*x^3+2*x", "y^2=x^5+2*x^4+2*x^3+2*x", 5},
                            {3, 3, "0", "x^6+x^4+x^2+1", "y^2=x^6+x^4+x^2+1", 8},
                            {5, 2, "0", "x^5+4*x", "y^2=x^5+4*x", 6}});
    const std::string name = "y^2+(x^2+x)*y=a*(x^5+x^3+x^2+x) over F_4: N_2-N_1";
    guarded(r, name, [&] {
        auto c = hyp(4, "x^2+x", "a*(x^5+x^3+x^2+x)");
        add(r, name, "2", std::to_string(count(c, 2) - count(c, 1)));
    });
    return r;
}

Report elephant(const ReproduceOptions& opts) {
    Report r{"elephant", {}};
    guarded(r, "zeta data", [&] {
        auto a = ints({9, 0, 0, 2, 0});
        auto N = zeta::points_from_places(a);
        add(r, "N_1..N_5", "[9,9,9,17,9]", join(N));
        auto z = zeta::frobenius_from_counts(2, 5, N);
        add(r, "P(t)", "32*t^10+96*t^9+160*t^8+192*t^7+184*t^6+144*t^5+92*t^4+48*t^3+20*t^2+6*t+1",
            zeta::format(ExactPoly::from_ints(z.frobenius())));
        add(r, "h(x)", "x^5+6*x^4+10*x^3-8*x", zeta::format(z.real_weil(), 'x'));
        add(r, "DS for m = 2 and m = 3", "true,true", boolstr(zeta::ds_check(z, 2)) + "," + boolstr(zeta::ds_check(z, 3)));
    });
    guarded(r, "tree search", [&] {
        auto node = enumerator::child(enumerator::root_node(2, 5), Int(9));
        auto range = enumerator::prune_range(node);
        add(r, "a_2 range at [9]", "[0,4]", "[" + range.lo.get_str() + "," + range.hi.get_str() + "]");
        auto leaf = node;
        for (long v : {0, 0, 2}) leaf = enumerator::child(leaf, Int(v));
        auto weil = enumerator::weil_range(leaf);
        std::vector<Int> survivors;
        for (Int v = std::max(weil.lo, Int(0)); v <= weil.hi; ++v)
            if (enumerator::accept(leaf, v)) survivors.push_back(v);
        add(r, "a_5 accepted at [9,0,0,2] within the Weil range", "[0]", join(survivors));
        enumerator::Constraints c;
        c.a1 = Int(9);
        c.jobs = opts.jobs;
        bool found = false;
        enumerator::enumerate(2, 5, c, [&](const enumerator::Candidate& cand) {
            if (cand.a == ints({9, 0, 0, 2, 0})) found = true;
        });
        add(r, "enumeration with a_1 = 9 emits [9,0,0,2,0]", "true", boolstr(found));
    });
    return r;
}

Report nonds_genus6() {
    Report r{"nonds-genus6", {}};
    guarded(r, "genus-6 curve", [&] {
        auto c = hyp(2, "x^6+x^5+x^4+x^3+x^2+x+1", "x^13+x^5+x+1");
        auto counts = curvelab::count_points_upto(curvelab::CurveModel(c), 16);
        std::vector<Int> N(counts.begin(), counts.end());
        add(r, "N_1..N_16", "[3,5,9,17,33,11,129,257,513,1025,2049,4379,8193,16385,32769,65537]", join(N));
        auto a = zeta::places_from_points(N);
        add(r, "a_1..a_16", "[3,1,2,3,6,0,18,30,56,99,186,363,630,1161,2182,4080]", join(a));
        auto z = zeta::frobenius_from_counts(2, 6, std::vector<Int>(N.begin(), N.begin() + 6));
        auto L = zeta::parse_exact("(t^2-t+2)*(t^2+t+2)*(t^4-t^3-t^2-2*t+4)*(t^4+t^3-t^2+2*t+4)");
        add(r, "L(t)", zeta::format(L), zeta::format(ExactPoly::from_ints(z.weil_polynomial())));
        std::string expect, got;
        for (const auto& p : zeta::admissible_pairs(6)) {
            if (p.q != 2) continue;
            expect += "m=" + std::to_string(p.m) + ":false ";
            got += "m=" + std::to_string(p.m) + ":" + boolstr(zeta::ds_check(a, p.m)) + " ";
        }
        add(r, "DS at the admissible (2,m)", expect, got);
    });
    return r;
}

Report hermitian() {
    Report r{"hermitian", {}};
    for (std::uint64_t q0 : {2, 3}) {
        std::string tag = "q0=" + std::to_string(q0);
        guarded(r, tag, [&] {
            curvelab::FamilyParams p{curvelab::Family::Hermitian, q0};
            auto z = curvelab::family_zeta(p);
            std::string n = std::to_string(q0 * q0 * q0 + 1);
            add(r, tag + " N_1,N_2 closed form", n + "," + n,
                zeta::extend_counts(z, 1).get_str() + "," + zeta::extend_counts(z, 2).get_str());
            auto model = curvelab::family_model(p);
            add(r, tag + " N_1,N_2 projective count", n + "," + n,
                std::to_string(curvelab::count_points(model, 1)) + "," + std::to_string(curvelab::count_points(model, 2)));
        });
    }
    return r;
}

Report suzuki() {
    Report r{"suzuki", {}};
    guarded(r, "e=1", [&] {
        curvelab::FamilyParams p{curvelab::Family::Suzuki, 1};
        auto z = curvelab::family_zeta(p);
        add(r, "L(t)", zeta::format(zeta::parse_exact("(t^2+4*t+8)^14")),
            zeta::format(ExactPoly::from_ints(z.weil_polynomial())));
        add(r, "N_1,N_2,N_3 closed form", "65,65,65",
            z.points(1).get_str() + "," + z.points(2).get_str() + "," + z.points(3).get_str());
        auto model = curvelab::family_model(p);
        add(r, "N_1,N_2 affine scan + 1 over F_8, F_64", "65,65",
            std::to_string(curvelab::count_points(model, 1)) + "," + std::to_string(curvelab::count_points(model, 2)));
    });
    return r;
}

Report ree() {
    Report r{"ree", {}};
    guarded(r, "s=1", [&] {
        curvelab::FamilyParams p{curvelab::Family::Ree, 1};
        auto z = curvelab::family_zeta(p);
        std::vector<Int> N;
        for (int m = 1; m <= 5; ++m) N.push_back(z.points(m));
        add(r, "N_1..N_5 closed form", "[19684,19684,19684,19684,19684]", join(N));
        add(r, "N_6 differs", "true", boolstr(z.points(6) != 19684));
        add(r, "N_1 affine scan + 1 over F_27", "19684", std::to_string(curvelab::count_points(curvelab::family_model(p), 1)));
    });
    return r;
}

Report drinfeld_dl() {
    Report r{"drinfeld-dl", {}};
    for (std::uint64_t q : {3, 5}) {
        std::string tag = "q=" + std::to_string(q);
        guarded(r, tag, [&] {
            std::string n = std::to_string(q + 1);
            add(r, tag + " N over F_q, F_q^2", n + "," + n,
                std::to_string(curvelab::drinfeld_dl_counts(q, 1)) + "," + std::to_string(curvelab::drinfeld_dl_counts(q, 2)));
        });
    }
    guarded(r, "q=3 zeta", [&] {
        auto z = curvelab::family_zeta({curvelab::Family::DrinfeldDL, 3});
        add(r, "q=3 genus and N_1,N_2 from zeta data", "g=3 4,4",
            "g=" + std::to_string(z.g()) + " " + z.points(1).get_str() + "," + z.points(2).get_str());
    });
    return r;
}

Report carlitz_ex1() {
    Report r{"carlitz-ex1", {}};
    guarded(r, "M=t^4+t+1", [&] {
        gf::Field F = gf::Field::make(2, 1);
        auto G = carlitz::unit_group(gf::parse_poly(F, "t^4+t+1"));
        auto Z = carlitz::zeta_numerator(G);
        auto P = zeta::parse_exact(
            "(4*T^4-T^2+1)*(4*T^4+2*T^3+3*T^2+T+1)^2*(16*T^8+40*T^7+52*T^6+50*T^5+39*T^4+25*T^3+13*T^2+5*T+1)^2");
        add(r, "P(T)", zeta::format(P, 'T'), zeta::format(ExactPoly::from_ints(Z.P), 'T'));
        add(r, "genus", "14", std::to_string(Z.genus));
        const std::string a = "[15,0,0,1,0,5,30,30,60,45,210,345,690,1095]";
        add(r, "a_1..a_14 from the zeta numerator", a, join(Z.places_upto(14)));
        add(r, "a_1..a_14 from place counts", a, join(carlitz::place_counts(G, 14)));
    });
    return r;
}

Report carlitz_ex2() {
    Report r{"carlitz-ex2", {}};
    guarded(r, "M=(t^6+t+1)^2", [&] {
        gf::Field F = gf::Field::make(2, 1);
        auto G = carlitz::unit_group(gf::parse_poly(F, "(t^6+t+1)^2"));
        add(r, "group order", "4032", std::to_string(G.order()));
        add(r, "a_1..a_11", "[4032,0,0,0,0,1,0,0,0,0,0]", join(carlitz::place_counts(G, 11)));
        add(r, "DS criterion for l = 5", "true", boolstr(carlitz::ds_criterion_51(G, 5)));
        std::string expect, got;
        for (int k = 2; k < 12; ++k) {
            if (k == 6) continue;
            expect += std::to_string(k) + ":true ";
            got += std::to_string(k) + ":" + boolstr(carlitz::zero_places_52(G, k)) + " ";
        }
        add(r, "a_k = 0 by ramification, 2 <= k < 12, k != 6", expect, got);
    });
    return r;
}

Report basechange() {
    Report r{"basechange", {}};
    guarded(r, "M=t^3+t+1, q=2, n=2", [&] {
        gf::Field F = gf::Field::make(2, 1);
        auto M = gf::parse_poly(F, "t^3+t+1");
        auto bc = drinfeld::basechange_phi(2, 2, M);
        add(r, "Phi_M", "x^63+(t^16+t^4+t)*x^15+(t^8+t^5+t^2)*x^3+t^3+t+1", carlitz::format(bc.phi));
        add(r, "Drinfeld over F_2 equals Carlitz over F_4", "true", boolstr(bc.equal));
        add(r, "coefficients in F_2[t]", "true", boolstr(bc.coefficients_in_base));
        auto D = drinfeld::descent_zero_places(2, 2, M);
        add(r, "a_2 of the Carlitz curve over F_4", "0", D.carlitz_places.at(1).get_str());
        bool four = std::find(D.certified.begin(), D.certified.end(), 4) != D.certified.end();
        add(r, "a_4 of the Drinfeld curve over F_2 certified zero", "true", boolstr(four));
    });
    return r;
}

Report rank3_reference() {
    Report r{"rank3-footnote", {}};
    gf::Field F = gf::Field::make(2, 1);
    auto rf = [&](const char* s) { return gf::parse_ratfunc(F, s); };
    auto u1 = rf("t*(t^2+t+1)/(t^3+t+1)"), u2 = rf("t*(t+1)^2/(t^3+t+1)"), u3 = rf("1");
    guarded(r, "Phi_t", [&] {
        // Phi_t against the closed form for several coefficient choices.
        std::vector<std::array<gf::RatFunc, 3>> us{{u1, u2, u3}, {rf("1"), rf("1"), rf("1")}, {rf("t"), rf("t"), rf("1")},
                                                   {rf("1/(t+1)"), rf("0"), rf("t^2+1")}};
        for (const auto& u : us) {
            auto D = drinfeld::DrinfeldAction::make(F, {u[0], u[1], u[2]});
            auto phi = drinfeld::drinfeld_phi(D, gf::parse_poly(F, "t"));
            carlitz::XPoly expect{F, std::vector<gf::RatFunc>(8, gf::RatFunc(F))};
            expect.c[7] = u[2];
            expect.c[3] = u[1];
            expect.c[1] = u[0];
            expect.c[0] = rf("t");
            expect.trim();
            add(r, "Phi_t for u = " + drinfeld::format(D), carlitz::format(expect), carlitz::format(phi));
        }
    });
    guarded(r, "rank-3 check", [&] {
        auto v = drinfeld::rank3_check(u1, u2, u3);
        add(r, "reference example passes every condition", "true", boolstr(v.overall));
        auto w = drinfeld::rank3_check(rf("1"), rf("1"), rf("1"));
        add(r, "u = (1,1,1) fails ord_t(u2) >= 1", "false,false", boolstr(w.ord_t_u2_positive) + "," + boolstr(w.overall));
        auto x = drinfeld::rank3_check(rf("t"), rf("t"), rf("1"));
        add(r, "u = (t,t,1) fails the t+1 condition", "false,false",
            boolstr(x.no_quadratic_at_t_plus_1) + "," + boolstr(x.overall));
        auto A = drinfeld::place_audit_rank3(u1, u2, u3);
        add(r, "audit of the reference example: conclusive, new points", "true,0",
            boolstr(A.conclusive) + "," + std::to_string(A.new_points));
    });
    return r;
}

Report howe_cubic(const ReproduceOptions& opts) {
    Report r{"howe-cubic", {}};
    for (std::uint64_t q : {3, 5}) {
        std::string tag = "q=" + std::to_string(q) + ", n=2";
        guarded(r, tag, [&] {
            auto c = curvelab::howe_cubic(q, 2);
            add(r, tag + " N_1,N_3", "1,1", std::to_string(c.n1) + "," + std::to_string(c.n3));
            add(r, tag + " N_1,N_3 by scanning y", "1,1",
                std::to_string(curvelab::count_hyperelliptic_naive(c.curve, 1)) + "," +
                    std::to_string(curvelab::count_hyperelliptic_naive(c.curve, 3)));
        });
    }
    guarded(r, "interpolation q=3", [&] {
        auto h = curvelab::howe_interpolation(3, opts.seed);
        add(r, "interpolation q=3: N_1 = N_2 and genus <= 3", "true,true",
            boolstr(count(h.curve, 1) == count(h.curve, 2)) + "," + boolstr(h.curve.genus <= 3));
    });
    return r;
}

}  // namespace

bool Report::pass() const {
    return !items.empty() && std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
}

const std::vector<std::string>& reproduce_targets() {
    static const std::vector<std::string> t{
        "admissible-g1", "admissible-g2", "admissible-g3", "admissible-g4", "admissible-g5",
        "genus1-table",  "genus2-table",  "elephant",      "nonds-genus6",  "hermitian",
        "suzuki",        "ree",           "drinfeld-dl",   "carlitz-ex1",   "carlitz-ex2",
        "basechange",    "rank3-footnote", "howe-cubic"};
    return t;
}

Report reproduce(std::string_view target, const ReproduceOptions& opts) {
    if (target.size() == 13 && target.substr(0, 12) == "admissible-g" && target[12] >= '1' && target[12] <= '5')
        return admissible(target[12] - '0');
    if (target == "genus1-table") return genus1_table();
    if (target == "genus2-table") return genus2_table();
    if (target == "elephant") return elephant(opts);
    if (target == "nonds-genus6") return nonds_genus6();
    if (target == "hermitian") return hermitian();
    if (target == "suzuki") return suzuki();
    if (target == "ree") return ree();
    if (target == "drinfeld-dl") return drinfeld_dl();
    if (target == "carlitz-ex1") return carlitz_ex1();
    if (target == "carlitz-ex2") return carlitz_ex2();
    if (target == "basechange") return basechange();
    if (target == "rank3-footnote") return rank3_reference();
    if (target == "howe-cubic") return howe_cubic(opts);
    throw PreconditionError("unknown reproduce target '" + std::string(target) + "'");
}

}  // namespace dsc::cli
