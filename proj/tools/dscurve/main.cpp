// dscurve: command-line front end over the library modules.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dscurve/carlitz.hpp"
#include "dscurve/curvelab.hpp"
#include "dscurve/drinfeld.hpp"
#include "dscurve/enumerator.hpp"
#include "dscurve/error.hpp"
#include "dscurve/gfpoly.hpp"
#include "dscurve/reproduce.hpp"
#include "dscurve/zeta.hpp"

namespace {

using json = nlohmann::ordered_json;
using dsc::zeta::ExactPoly;
using dsc::zeta::Int;

constexpr const char* kSchema = "dscurve/1";

/// Bad flag value; exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string format = "json";
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    bool timing = false;
};

struct Result {
    json inputs = json::object();
    json outputs = json::object();
    bool uses_seed = false;
    bool failed = false;  // exit 1 after printing (reproduce mismatches)
};

// Runs `f`, turning precondition and parse errors into a diagnostic naming `flags`.
template <class F>
auto flag(const std::string& flags, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const dsc::PreconditionError& e) {
        throw UsageError(flags + ": " + e.what());
    } catch (const dsc::ParseError& e) {
        throw UsageError(flags + ": " + e.what());
    }
}

json num(const Int& v) {
    static const Int limit = Int(1) << 53;
    if (abs(v) <= limit) return json(v.get_si());
    return json(v.get_str());
}

json nums(const std::vector<Int>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(num(x));
    return a;
}

template <class T>
json plain(const std::vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x);
    return a;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<Int> parse_ints(const std::string& name, const std::string& text) {
    std::vector<Int> out;
    for (auto piece : split(text, ',')) {
        auto b = piece.find_first_not_of(" \t"), e = piece.find_last_not_of(" \t");
        piece = b == std::string::npos ? "" : piece.substr(b, e - b + 1);
        Int v;
        if (piece.empty() || v.set_str(piece, 10) != 0) throw UsageError(name + ": expected a comma-separated integer list");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(name + ": expected at least one integer");
    return out;
}

dsc::gf::Field field_of(std::uint64_t q) {
    return flag("--q", [&] { return dsc::gf::Field::of_order(q); });
}

dsc::gf::FieldPoly poly_flag(const dsc::gf::Field& F, const std::string& name, const std::string& text, char var = 't') {
    return flag(name, [&] { return dsc::gf::parse_poly(F, text, var); });
}

json zeta_record(const dsc::zeta::ZetaData& z, int upto) {
    json o;
    o["q"] = z.q();
    o["g"] = z.g();
    o["P"] = nums(z.frobenius());
    o["L"] = nums(z.weil_polynomial());
    o["h"] = dsc::zeta::format(z.real_weil(), 'x');
    o["N"] = nums(z.points_upto(upto));
    o["a"] = nums(z.places_upto(upto));
    return o;
}

// ---------------------------------------------------------------------------
// Rendering

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ";") + cell(x);
        return s;
    }
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// Rows of the first array-of-objects in `outputs`, else a single row.
std::vector<json> rows_of(const json& outputs) {
    for (const auto& [k, v] : outputs.items())
        if (v.is_array() && !v.empty() && v.front().is_object()) return std::vector<json>(v.begin(), v.end());
    return {outputs};
}

void print_rows(std::ostream& os, const std::vector<json>& rows, const std::string& format, bool header = true) {
    if (rows.empty()) return;
    std::vector<std::string> cols;
    for (const auto& [k, v] : rows.front().items()) cols.push_back(k);
    std::vector<std::vector<std::string>> cells;
    if (header) cells.push_back(cols);
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (const auto& c : cols) line.push_back(r.contains(c) ? cell(r[c]) : "");
        cells.push_back(std::move(line));
    }
    if (format == "csv") {
        for (const auto& line : cells) {
            for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << csv_escape(line[i]);
            os << "\n";
        }
        return;
    }
    std::vector<std::size_t> width(cols.size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    for (const auto& line : cells) {
        std::string s;
        for (std::size_t i = 0; i < line.size(); ++i) {
            s += line[i];
            if (i + 1 < line.size()) s += std::string(width[i] - line[i].size() + 2, ' ');
        }
        os << s << "\n";
    }
}

// ---------------------------------------------------------------------------
// Commands

Result cmd_admissible(int genus) {
    Result r;
    r.inputs["genus"] = genus;
    auto pairs = flag("--genus", [&] { return dsc::zeta::admissible_pairs(genus); });
    json list = json::array();
    for (const auto& p : pairs) list.push_back({{"q", p.q}, {"m", p.m}});
    r.outputs["genus"] = genus;
    r.outputs["pairs"] = list;
    return r;
}

struct ZetaArgs {
    std::uint64_t q = 0;
    int g = 0;
    std::string counts, places, P, h;
    std::optional<int> ds;
    int upto = 0;
};

Result cmd_zeta(const std::string& mode, const ZetaArgs& z) {
    Result r;
    r.inputs["q"] = z.q;
    r.inputs["g"] = z.g;
    std::optional<dsc::zeta::ZetaData> data;
    if (mode == "from-counts") {
        auto N = parse_ints("--counts", z.counts);
        r.inputs["counts"] = nums(N);
        data = flag("--q, --g, --counts", [&] { return dsc::zeta::frobenius_from_counts(z.q, z.g, N); });
    } else if (mode == "from-places") {
        auto a = parse_ints("--places", z.places);
        r.inputs["places"] = nums(a);
        data = flag("--q, --g, --places",
                    [&] { return dsc::zeta::frobenius_from_counts(z.q, z.g, dsc::zeta::points_from_places(a)); });
    } else if (mode == "from-P") {
        auto P = parse_ints("--P", z.P);
        r.inputs["P"] = nums(P);
        data = flag("--P", [&] { return dsc::zeta::ZetaData::from_frobenius(z.q, z.g, P); });
    } else {
        r.inputs["h"] = z.h;
        auto h = flag("--h", [&] { return dsc::zeta::parse_exact(z.h); });
        data = flag("--h", [&] { return dsc::zeta::ZetaData::from_real_weil(z.q, z.g, h); });
    }
    int upto = std::max({z.upto, data->g(), z.ds.value_or(0), 1});
    r.outputs = zeta_record(*data, upto);
    if (z.ds) {
        r.inputs["ds"] = *z.ds;
        r.outputs["ds"] = flag("--ds", [&] { return dsc::zeta::ds_check(*data, *z.ds); });
    }
    return r;
}

json candidate_json(const dsc::enumerator::Candidate& c) {
    return {{"a", nums(c.a)}, {"h", nums(c.h.integer_coeffs())}, {"P", nums(c.P)}};
}

struct EnumArgs {
    std::uint64_t q = 0;
    int g = 0;
    std::optional<long> a1;
    std::string zeros;
    std::optional<int> ds_m;
    bool no_prune = false;
};

int cmd_enumerate(const EnumArgs& e, const Globals& G) {
    dsc::enumerator::Constraints c;
    if (e.a1) c.a1 = Int(*e.a1);
    if (!e.zeros.empty())
        for (const auto& z : parse_ints("--zero", e.zeros)) {
            if (z < 1 || z > e.g) throw UsageError("--zero: indices must lie in 1..g");
            c.zeros.insert(static_cast<int>(z.get_si()));
        }
    c.ds_m = e.ds_m;
    c.prune = !e.no_prune;
    c.jobs = G.jobs;
    auto t0 = std::chrono::steady_clock::now();
    bool header = true;
    std::size_t count = 0;
    flag("--q, --g, --ds-m", [&] {
        dsc::enumerator::enumerate(e.q, e.g, c, [&](const dsc::enumerator::Candidate& cand) {
            ++count;
            json row = candidate_json(cand);
            if (G.format == "json") {
                std::cout << row.dump() << "\n";
            } else {
                print_rows(std::cout, {row}, G.format, header);
                header = false;
            }
        });
        return 0;
    });
    if (G.timing) {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "candidates: " << count << ", timing_ms: " << static_cast<long long>(ms) << "\n";
    }
    return 0;
}

Result cmd_count(const std::string& spec, int m) {
    Result r;
    r.inputs["curve"] = spec;
    r.inputs["m"] = m;
    if (m < 1) throw UsageError("--m: must be at least 1");
    auto c = flag("--curve", [&] { return dsc::curvelab::parse_curve(spec); });
    auto N = dsc::curvelab::count_points_upto(c, m);
    r.outputs["model"] = dsc::curvelab::describe(c);
    r.outputs["q"] = dsc::curvelab::base_order(c);
    r.outputs["counts"] = plain(N);
    return r;
}

Result cmd_family(const std::string& name, std::uint64_t param, int m, bool brute) {
    using namespace dsc::curvelab;
    Result r;
    r.inputs["name"] = name;
    r.inputs["param"] = param;
    r.inputs["m"] = m;
    if (m < 1) throw UsageError("--m: must be at least 1");
    FamilyParams p{flag("--name", [&] { return parse_family(name); }), param};
    auto info = flag("--param", [&] { return family_info(p); });
    r.outputs["family"] = family_name(p.family);
    r.outputs["q"] = info.q;
    r.outputs["q0"] = info.q0;
    r.outputs["genus"] = info.genus;
    std::optional<dsc::zeta::ZetaData> z;
    try {
        z = family_zeta(p);
    } catch (const dsc::SizeLimitError&) {
        if (p.family != Family::DrinfeldDL) throw;
    } catch (const dsc::PreconditionError&) {
        if (p.family != Family::DrinfeldDL) throw;
    }
    if (z) {
        r.outputs["L"] = dsc::zeta::format(ExactPoly::from_ints(z->weil_polynomial()));
        r.outputs["N"] = nums(z->points_upto(m));
    }
    if (brute || !z) {
        json counts = json::array();
        for (int k = 1; k <= m; ++k)
            counts.push_back(p.family == Family::DrinfeldDL ? drinfeld_dl_counts(info.q, k)
                                                            : count_points(family_model(p), k));
        r.outputs["counts"] = counts;
    }
    return r;
}

struct CarlitzArgs {
    std::uint64_t q = 0;
    std::string M, H;
    int dmax = 0;
};

Result cmd_carlitz(const std::string& mode, const CarlitzArgs& a) {
    using namespace dsc::carlitz;
    Result r;
    auto F = field_of(a.q);
    auto M = poly_flag(F, "--M", a.M);
    r.inputs["q"] = a.q;
    r.inputs["M"] = a.M;
    if (mode == "phi") {
        r.outputs["M"] = dsc::gf::format(M);
        r.outputs["q"] = a.q;
        r.outputs["phi"] = format(flag("--M", [&] { return carlitz_phi(M); }));
        return r;
    }
    std::vector<dsc::gf::FieldPoly> H;
    if (!a.H.empty())
        for (const auto& g : split(a.H, ',')) H.push_back(poly_flag(F, "--H", g));
    r.inputs["H"] = a.H;
    auto G = flag("--M, --H", [&] { return unit_group(M, H); });
    r.outputs["M"] = dsc::gf::format(M);
    r.outputs["q"] = a.q;
    json hs = json::array();
    for (const auto& g : H) hs.push_back(dsc::gf::format(g));
    r.outputs["H"] = hs;
    r.outputs["order"] = G.order() / G.h();
    if (mode == "places") {
        if (a.dmax < 1) throw UsageError("--dmax: must be at least 1");
        r.inputs["dmax"] = a.dmax;
        r.outputs["a"] = nums(place_counts(G, a.dmax));
        return r;
    }
    auto Z = zeta_numerator(G);
    int upto = a.dmax > 0 ? a.dmax : std::max(Z.genus, 1);
    if (a.dmax > 0) r.inputs["dmax"] = a.dmax;
    r.outputs["genus"] = Z.genus;
    r.outputs["P"] = nums(Z.P);
    r.outputs["a"] = nums(Z.places_upto(upto));
    return r;
}

struct DrinfeldArgs {
    std::uint64_t q = 2;
    int n = 0, l = 0;
    std::string M, u;
};

json segments(const std::vector<dsc::drinfeld::NewtonSegment>& s) {
    json a = json::array();
    for (const auto& seg : s) a.push_back({{"valuation", seg.valuation.get_str()}, {"length", seg.length}});
    return a;
}

Result cmd_drinfeld(const std::string& mode, const DrinfeldArgs& a) {
    using namespace dsc::drinfeld;
    Result r;
    auto F = field_of(a.q);
    r.inputs["q"] = a.q;
    if (mode == "phi") {
        if (a.u.empty() && a.n < 1) throw UsageError("--n or --u: give the rank or the coefficients");
        auto D = a.u.empty() ? flag("--n", [&] { return DrinfeldAction::standard(F, a.n); })
                             : flag("--u", [&] { return parse_action(F, a.u); });
        if (!a.u.empty() && a.n > 0 && a.n != D.rank()) throw UsageError("--n: does not match the number of --u entries");
        auto M = poly_flag(F, "--M", a.M);
        r.inputs["n"] = D.rank();
        r.inputs["u"] = format(D);
        r.inputs["M"] = a.M;
        r.outputs["rank"] = D.rank();
        r.outputs["u"] = format(D);
        r.outputs["M"] = dsc::gf::format(M);
        r.outputs["phi"] = dsc::carlitz::format(flag("--M", [&] { return drinfeld_phi(D, M); }));
        return r;
    }
    if (mode == "rank3-check" || mode == "audit") {
        if (a.q != 2) throw UsageError("--q: the rank-3 check works over F_2");
        auto D = flag("--u", [&] { return parse_action(F, a.u); });
        if (D.rank() != 3) throw UsageError("--u: expected three coefficients u1;u2;u3");
        r.inputs["u"] = format(D);
        if (mode == "rank3-check") {
            auto v = flag("--u", [&] { return rank3_check(D.u[0], D.u[1], D.u[2]); });
            json conds = json::array();
            for (const auto& c : v.conditions()) conds.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            r.outputs["conditions"] = conds;
            r.outputs["overall"] = v.overall;
            return r;
        }
        auto A = flag("--u", [&] { return place_audit_rank3(D.u[0], D.u[1], D.u[2]); });
        json places = json::array();
        for (const auto& p : A.places) {
            json prof = json::array();
            for (const auto& [deg, mult] : p.profile) prof.push_back({{"degree", deg}, {"count", mult}});
            places.push_back({{"place", p.place}, {"status", p.status}, {"profile", prof}, {"new_places", p.new_places}});
        }
        r.outputs["places"] = places;
        r.outputs["slopes_at_t"] = segments(A.slopes_at_t);
        r.outputs["slopes_at_infinity"] = segments(A.slopes_at_infinity);
        r.outputs["conclusive"] = A.conclusive;
        r.outputs["new_points"] = A.new_points;
        return r;
    }
    auto M = poly_flag(F, "--M", a.M);
    r.inputs["M"] = a.M;
    if (mode == "basechange") {
        if (a.n < 1) throw UsageError("--n: must be at least 1");
        r.inputs["n"] = a.n;
        auto bc = flag("--q, --n, --M", [&] { return basechange_phi(a.q, a.n, M); });
        r.outputs["phi"] = dsc::carlitz::format(bc.phi);
        r.outputs["equal"] = bc.equal;
        r.outputs["coefficients_in_base"] = bc.coefficients_in_base;
        return r;
    }
    r.inputs["l"] = a.l;
    auto d = flag("--q, --l, --M", [&] { return descent_zero_places(a.q, a.l, M); });
    r.outputs["certified"] = plain(d.certified);
    r.outputs["carlitz_places"] = nums(d.carlitz_places);
    r.outputs["ramification_zero"] = d.ramification_zero;
    return r;
}

Result cmd_howe(const std::string& mode, std::uint64_t q, const std::string& n, const Globals& G) {
    using namespace dsc::curvelab;
    Result r;
    r.inputs["q"] = q;
    if (mode == "cubic") {
        auto F = field_of(q);
        auto e = flag("--n", [&] { return F.parse(n); });
        r.inputs["n"] = n;
        auto c = flag("--q, --n", [&] { return howe_cubic(q, e); });
        r.outputs["curve"] = describe(c.curve);
        r.outputs["genus"] = c.curve.genus;
        r.outputs["N1"] = c.n1;
        r.outputs["N3"] = c.n3;
        return r;
    }
    r.uses_seed = true;
    auto h = flag("--q", [&] { return howe_interpolation(q, G.seed); });
    r.outputs["curve"] = describe(h.curve);
    r.outputs["genus"] = h.curve.genus;
    r.outputs["attempts"] = h.attempts;
    r.outputs["N1"] = h.n1;
    r.outputs["N2"] = h.n2;
    return r;
}

Result cmd_reproduce(const std::string& target, const Globals& G) {
    Result r;
    r.inputs["target"] = target;
    r.uses_seed = target == "howe-cubic";
    auto rep = flag("<target>", [&] { return dsc::cli::reproduce(target, {G.seed, G.jobs}); });
    json items = json::array();
    for (const auto& i : rep.items)
        items.push_back({{"name", i.name}, {"pass", i.pass}, {"expected", i.expected}, {"actual", i.actual}});
    r.outputs["target"] = rep.target;
    r.outputs["pass"] = rep.pass();
    r.outputs["items"] = items;
    r.failed = !rep.pass();
    for (const auto& i : rep.items)
        if (!i.pass) std::cerr << "mismatch: " << i.name << "\n  - expected " << i.expected << "\n  + actual   " << i.actual << "\n";
    return r;
}

int emit(const std::string& command, Result r, const Globals& G, double ms) {
    if (G.format == "json") {
        json env;
        env["schema"] = kSchema;
        env["command"] = command;
        env["inputs"] = r.inputs;
        if (r.uses_seed) env["seed"] = G.seed;
        env["outputs"] = r.outputs;
        if (G.timing) env["timing_ms"] = static_cast<long long>(ms);
        std::cout << env.dump(2) << "\n";
    } else {
        print_rows(std::cout, rows_of(r.outputs), G.format);
        if (G.timing) std::cerr << "timing_ms: " << static_cast<long long>(ms) << "\n";
    }
    return r.failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diophantine stability of curves over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals G;
    app.add_option("--format", G.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--jobs", G.jobs, "Worker threads for the enumerator")->check(CLI::Range(1u, 256u));
    app.add_option("--seed", G.seed, "Seed for randomized constructions");
    app.add_flag("--timing", G.timing, "Report wall-clock time");

    std::function<Result()> run;
    std::string command;
    std::function<int()> stream;

    auto* adm = app.add_subcommand("admissible", "Admissible (q, m) pairs for a genus");
    int genus = 0;
    adm->add_option("--genus", genus, "Genus g >= 1")->required()->check(CLI::Range(1, 50));
    adm->callback([&] { command = "admissible"; run = [&] { return cmd_admissible(genus); }; });

    auto* zeta = app.add_subcommand("zeta", "Convert between counts and zeta data");
    zeta->require_subcommand(1);
    ZetaArgs za;
    for (const char* mode : {"from-counts", "from-places", "from-P", "from-h"}) {
        auto* s = zeta->add_subcommand(mode, std::string("Zeta data ") + mode);
        s->add_option("--q", za.q, "Field order")->required();
        s->add_option("--g", za.g, "Genus")->required()->check(CLI::Range(0, 200));
        std::string m = mode;
        if (m == "from-counts") s->add_option("--counts", za.counts, "N_1,...,N_g")->required();
        if (m == "from-places") s->add_option("--places", za.places, "a_1,...,a_g")->required();
        if (m == "from-P") s->add_option("--P", za.P, "A_0,...,A_2g")->required();
        if (m == "from-h") s->set_help_flag("--help", "Print this help message and exit");
        if (m == "from-h") s->add_option("--h", za.h, "Real Weil polynomial in x")->required();
        s->add_option("--ds", za.ds, "Check C(F_q) = C(F_{q^m})")->check(CLI::Range(2, 64));
        s->add_option("--upto", za.upto, "Report N and a up to this index")->check(CLI::Range(1, 64));
        s->callback([&, m] { command = "zeta " + m; run = [&, m] { return cmd_zeta(m, za); }; });
    }

    auto* en = app.add_subcommand("enumerate", "Candidate real Weil polynomials (JSON lines)");
    EnumArgs ea;
    en->add_option("--q", ea.q, "Field order")->required();
    en->add_option("--g", ea.g, "Genus")->required()->check(CLI::Range(1, 12));
    en->add_option("--a1", ea.a1, "Fix a_1");
    en->add_option("--zero", ea.zeros, "Indices d with a_d = 0, e.g. 2,3");
    en->add_option("--ds-m", ea.ds_m, "Require a_d = 0 for 1 < d | m")->check(CLI::Range(2, 64));
    en->add_flag("--no-prune", ea.no_prune, "Use only the Weil box at each level");
    en->callback([&] { command = "enumerate"; stream = [&] { return cmd_enumerate(ea, G); }; });

    auto* cnt = app.add_subcommand("count", "Point counts N_1..N_m of a curve");
    std::string curve;
    int cm = 1;
    cnt->add_option("--curve", curve, "e.g. \"hyp q=2 h=x^2+x f=x^5+x^3+x^2+x\"")->required();
    cnt->add_option("--m", cm, "Largest extension degree")->required();
    cnt->callback([&] { command = "count"; run = [&] { return cmd_count(curve, cm); }; });

    auto* fam = app.add_subcommand("family", "Deligne-Lusztig families");
    std::string fname;
    std::uint64_t fparam = 0;
    int fm = 1;
    bool fbrute = false;
    fam->add_option("--name", fname, "hermitian | suzuki | ree | drinfeld-dl")->required();
    fam->add_option("--param", fparam, "q0, e, s or q")->required();
    fam->add_option("--m", fm, "Largest extension degree");
    fam->add_flag("--brute", fbrute, "Also count points on the model");
    fam->callback([&] { command = "family"; run = [&] { return cmd_family(fname, fparam, fm, fbrute); }; });

    auto* car = app.add_subcommand("carlitz", "Carlitz torsion curves");
    car->require_subcommand(1);
    CarlitzArgs ca;
    for (const char* mode : {"phi", "places", "zeta"}) {
        std::string m = mode;
        auto* s = car->add_subcommand(mode, "Carlitz " + m);
        s->add_option("--q", ca.q, "Field order")->required();
        s->add_option("--M", ca.M, "Monic modulus in t")->required();
        if (m != "phi") s->add_option("--H", ca.H, "Generators of H, comma-separated");
        if (m == "places") s->add_option("--dmax", ca.dmax, "Largest place degree")->required()->check(CLI::Range(1, 64));
        if (m == "zeta") s->add_option("--dmax", ca.dmax, "Report a_1..a_dmax")->check(CLI::Range(1, 64));
        s->callback([&, m] { command = "carlitz " + m; run = [&, m] { return cmd_carlitz(m, ca); }; });
    }

    auto* dr = app.add_subcommand("drinfeld", "Drinfeld torsion curves");
    dr->require_subcommand(1);
    DrinfeldArgs da;
    for (const char* mode : {"phi", "rank3-check", "audit", "basechange", "descent"}) {
        std::string m = mode;
        auto* s = dr->add_subcommand(mode, "Drinfeld " + m);
        s->add_option("--q", da.q, "Field order (default 2)");
        if (m == "phi" || m == "basechange") s->add_option("--n", da.n, "Rank")->check(CLI::Range(1, 16));
        if (m == "basechange") s->get_option("--n")->required();
        if (m == "phi" || m == "rank3-check" || m == "audit")
            s->add_option("--u", da.u, "u1;u2;...;un over F_q(t)")->required(m != "phi");
        if (m == "phi" || m == "basechange" || m == "descent") s->add_option("--M", da.M, "Monic modulus in t")->required();
        if (m == "descent") s->add_option("--l", da.l, "Prime extension degree")->required();
        s->callback([&, m] { command = "drinfeld " + m; run = [&, m] { return cmd_drinfeld(m, da); }; });
    }

    auto* howe = app.add_subcommand("howe", "Howe constructions");
    howe->require_subcommand(1);
    std::uint64_t hq = 3;
    std::string hn;
    auto* cub = howe->add_subcommand("cubic", "y^2 = x^{q^3} - x + n");
    cub->add_option("--q", hq, "Odd field order")->required();
    cub->add_option("--n", hn, "Nonsquare in F_q")->required();
    cub->callback([&] { command = "howe cubic"; run = [&] { return cmd_howe("cubic", hq, hn, G); }; });
    auto* itp = howe->add_subcommand("interpolation", "Randomized DS curve for F_{q^2}/F_q");
    itp->add_option("--q", hq, "Odd field order")->required();
    itp->callback([&] { command = "howe interpolation"; run = [&] { return cmd_howe("interpolation", hq, hn, G); }; });

    auto* rep = app.add_subcommand("reproduce", "Recompute a reference table and diff it");
    std::string target;
    rep->add_option("target", target, "Target name")->required()->check(CLI::IsMember(dsc::cli::reproduce_targets()));
    rep->callback([&] { command = "reproduce"; run = [&] { return cmd_reproduce(target, G); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (stream) return stream();
        auto t0 = std::chrono::steady_clock::now();
        Result r = run();
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return emit(command, std::move(r), G, ms);
    } catch (const UsageError& e) {
        std::cerr << "dscurve " << command << ": invalid value for " << e.what() << "\n";
        return 2;
    } catch (const dsc::PreconditionError& e) {
        std::cerr << "dscurve " << command << ": invalid input: " << e.what() << "\n";
        return 2;
    } catch (const dsc::ParseError& e) {
        std::cerr << "dscurve " << command << ": invalid input: " << e.what() << "\n";
        return 2;
    } catch (const dsc::Error& e) {
        std::cerr << "dscurve " << command << ": " << e.what() << "\n";
        return 1;
    }
}
