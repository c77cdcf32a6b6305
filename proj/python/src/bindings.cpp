#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dscurve/carlitz.hpp"
#include "dscurve/curvelab.hpp"
#include "dscurve/drinfeld.hpp"
#include "dscurve/enumerator.hpp"
#include "dscurve/error.hpp"
#include "dscurve/gfpoly.hpp"
#include "dscurve/reproduce.hpp"
#include "dscurve/zeta.hpp"

namespace py = pybind11;
using dsc::zeta::Int;

namespace {

py::int_ to_py(const Int& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list to_py(const std::vector<Int>& v) {
    py::list out;
    for (const auto& x : v) out.append(to_py(x));
    return out;
}

std::vector<Int> from_py(const std::vector<py::int_>& v) {
    std::vector<Int> out;
    for (const auto& x : v) out.emplace_back(std::string(py::str(x)));
    return out;
}

py::dict zeta_dict(const dsc::zeta::ZetaData& z) {
    py::dict d;
    d["q"] = z.q();
    d["g"] = z.g();
    d["P"] = to_py(z.frobenius());
    d["L"] = to_py(z.weil_polynomial());
    d["h"] = dsc::zeta::format(z.real_weil(), 'x');
    return d;
}

dsc::gf::FieldPoly poly(std::uint64_t q, const std::string& s) {
    return dsc::gf::parse_poly(dsc::gf::Field::of_order(q), s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Diophantine stability of curves over finite fields";

    static py::exception<dsc::Error> error(m, "Error");
    static py::exception<dsc::PreconditionError> precondition(m, "PreconditionError", error.ptr());
    static py::exception<dsc::ParseError> parse(m, "ParseError", error.ptr());
    static py::exception<dsc::SizeLimitError> size(m, "SizeLimitError", error.ptr());
    static py::exception<dsc::InconsistentError> inconsistent(m, "InconsistentError", error.ptr());
    static py::exception<dsc::InvariantError> invariant(m, "InvariantError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const dsc::PreconditionError& e) {
            py::set_error(precondition, e.what());
        } catch (const dsc::ParseError& e) {
            py::set_error(parse, e.what());
        } catch (const dsc::SizeLimitError& e) {
            py::set_error(size, e.what());
        } catch (const dsc::InconsistentError& e) {
            py::set_error(inconsistent, e.what());
        } catch (const dsc::InvariantError& e) {
            py::set_error(invariant, e.what());
        } catch (const dsc::Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("admissible_pairs", [](int g) {
        std::vector<std::pair<std::uint64_t, int>> out;
        for (const auto& p : dsc::zeta::admissible_pairs(g)) out.emplace_back(p.q, p.m);
        return out;
    }, py::arg("g"));

    m.def("places_from_points", [](const std::vector<py::int_>& N) {
        return to_py(dsc::zeta::places_from_points(from_py(N)));
    }, py::arg("N"));
    m.def("points_from_places", [](const std::vector<py::int_>& a) {
        return to_py(dsc::zeta::points_from_places(from_py(a)));
    }, py::arg("a"));

    m.def("zeta_from_counts", [](std::uint64_t q, int g, const std::vector<py::int_>& N) {
        return zeta_dict(dsc::zeta::frobenius_from_counts(q, g, from_py(N)));
    }, py::arg("q"), py::arg("g"), py::arg("N"));
    m.def("zeta_from_real_weil", [](std::uint64_t q, int g, const std::string& h) {
        return zeta_dict(dsc::zeta::ZetaData::from_real_weil(q, g, dsc::zeta::parse_exact(h)));
    }, py::arg("q"), py::arg("g"), py::arg("h"));
    m.def("ds_check", [](const std::vector<py::int_>& a, int mm) {
        return dsc::zeta::ds_check(from_py(a), mm);
    }, py::arg("a"), py::arg("m"), "DS test on place counts a_1..a_m.");

    m.def("enumerate", [](std::uint64_t q, int g, std::optional<long> a1, std::set<int> zeros, std::optional<int> ds_m,
                          unsigned jobs) {
        dsc::enumerator::Constraints c;
        if (a1) c.a1 = Int(*a1);
        c.zeros = std::move(zeros);
        c.ds_m = ds_m;
        c.jobs = jobs;
        std::vector<dsc::enumerator::Candidate> found;
        {
            py::gil_scoped_release release;
            found = dsc::enumerator::enumerate(q, g, c);
        }
        py::list out;
        for (const auto& cand : found) {
            py::dict d;
            d["a"] = to_py(cand.a);
            d["h"] = to_py(cand.h.integer_coeffs());
            d["P"] = to_py(cand.P);
            out.append(d);
        }
        return out;
    }, py::arg("q"), py::arg("g"), py::arg("a1") = py::none(), py::arg("zeros") = std::set<int>{},
       py::arg("ds_m") = py::none(), py::arg("jobs") = 1u);

    m.def("count_points", [](const std::string& spec, int mm) {
        return dsc::curvelab::count_points_upto(dsc::curvelab::parse_curve(spec), mm);
    }, py::arg("curve"), py::arg("m"), "N_1..N_m for a curve spec such as 'hyp q=2 h=1 f=x^3'.");

    m.def("carlitz_phi", [](std::uint64_t q, const std::string& M) {
        return dsc::carlitz::format(dsc::carlitz::carlitz_phi(poly(q, M)));
    }, py::arg("q"), py::arg("M"));
    m.def("place_counts", [](std::uint64_t q, const std::string& M, int dmax, const std::vector<std::string>& H) {
        std::vector<dsc::gf::FieldPoly> gens;
        for (const auto& h : H) gens.push_back(poly(q, h));
        return to_py(dsc::carlitz::place_counts(dsc::carlitz::unit_group(poly(q, M), gens), dmax));
    }, py::arg("q"), py::arg("M"), py::arg("dmax"), py::arg("H") = std::vector<std::string>{});

    m.def("drinfeld_phi", [](std::uint64_t q, const std::string& u, const std::string& M) {
        auto F = dsc::gf::Field::of_order(q);
        return dsc::carlitz::format(dsc::drinfeld::drinfeld_phi(dsc::drinfeld::parse_action(F, u), poly(q, M)));
    }, py::arg("q"), py::arg("u"), py::arg("M"));
    m.def("rank3_check", [](const std::string& u) {
        auto D = dsc::drinfeld::parse_action(dsc::gf::Field::of_order(2), u);
        if (D.rank() != 3) throw dsc::PreconditionError("expected three coefficients u1;u2;u3");
        auto v = dsc::drinfeld::rank3_check(D.u[0], D.u[1], D.u[2]);
        py::dict d;
        for (const auto& c : v.conditions()) d[py::str(c.name)] = c.pass;
        d["overall"] = v.overall;
        return d;
    }, py::arg("u"));
    m.def("basechange_phi", [](std::uint64_t q, int n, const std::string& M) {
        auto bc = dsc::drinfeld::basechange_phi(q, n, poly(q, M));
        py::dict d;
        d["phi"] = dsc::carlitz::format(bc.phi);
        d["equal"] = bc.equal;
        d["coefficients_in_base"] = bc.coefficients_in_base;
        return d;
    }, py::arg("q"), py::arg("n"), py::arg("M"));

    m.def("reproduce_targets", &dsc::cli::reproduce_targets);
    m.def("reproduce", [](const std::string& target, std::uint64_t seed) {
        auto r = dsc::cli::reproduce(target, {seed, 1});
        py::list items;
        for (const auto& i : r.items) {
            py::dict d;
            d["name"] = i.name;
            d["pass"] = i.pass;
            d["expected"] = i.expected;
            d["actual"] = i.actual;
            items.append(d);
        }
        py::dict d;
        d["target"] = r.target;
        d["pass"] = r.pass();
        d["items"] = items;
        return d;
    }, py::arg("target"), py::arg("seed") = 0);
}
