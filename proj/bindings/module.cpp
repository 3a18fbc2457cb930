#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kmaj/harness.hpp"
#include "kmaj/kfunc.hpp"
#include "kmaj/majorization.hpp"

namespace py = pybind11;
using namespace kmaj;

namespace {

Seq seq_from_list(const std::vector<double>& xs) {
    std::vector<Scalar> v;
    v.reserve(xs.size());
    for (double x : xs) v.push_back(Scalar::real(x));
    return Seq(std::move(v));
}

std::vector<double> seq_to_list(const Seq& x) {
    std::vector<double> out;
    out.reserve(x.size());
    for (const Scalar& s : x) out.push_back(s.to_double());
    return out;
}

SpaceSpec space_from_name(const std::string& text) {
    if (text == "l1") return SpaceSpec::lp(1.0);
    auto colon = text.find(':');
    if (colon == std::string::npos) throw Error("space must be l1, lp:<p> or weak-lp:<p>");
    double p = std::stod(text.substr(colon + 1));
    std::string kind = text.substr(0, colon);
    if (kind == "lp") return SpaceSpec::lp(p);
    if (kind == "weak-lp") return SpaceSpec::weak_lp(p);
    if (kind == "weak-lp-sep") return SpaceSpec::weak_lp_separable(p);
    throw Error("unknown space kind '" + kind + "'");
}

} // namespace

PYBIND11_MODULE(_kmaj, m) {
    m.doc() = "sequence majorization and K-functional toolkit";

    m.def("rearrange", [](const std::vector<double>& xs) {
        return seq_to_list(rearrange(seq_from_list(xs)));
    });

    m.def(
        "check_sq_premise",
        [](const std::vector<double>& u, const std::vector<double>& v, double q) {
            PremiseCheck c = check_sq_premise(seq_from_list(u), seq_from_list(v),
                                              Scalar::real(q));
            py::dict out;
            out["holds"] = c.holds;
            out["first_violation"] =
                c.first_violation ? py::cast(*c.first_violation) : py::none();
            return out;
        },
        py::arg("u"), py::arg("v"), py::arg("q") = 2.0);

    m.def("check_hlp", [](const std::vector<double>& x, const std::vector<double>& y) {
        return check_hlp(seq_from_list(x), seq_from_list(y));
    });

    m.def(
        "k_l1_linf",
        [](double t, const std::vector<double>& x) {
            return k_l1_linf(Scalar::real(t), seq_from_list(x)).to_double();
        },
        py::arg("t"), py::arg("x"));

    m.def(
        "k_l1_lq",
        [](double t, const std::vector<double>& x, double q, double tol) {
            KBracket b = k_l1_lq(t, seq_from_list(x), q, tol);
            py::dict out;
            out["value"] = b.value;
            out["lower"] = b.lower;
            out["upper"] = b.upper;
            return out;
        },
        py::arg("t"), py::arg("x"), py::arg("q") = 2.0, py::arg("tol") = 1e-9);

    m.def("c_q_bound", &c_q_bound, py::arg("q"));

    m.def(
        "hlp_transfer",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            ConvexCombo combo = hlp_transfer(seq_from_list(x), seq_from_list(y));
            py::list terms;
            for (const auto& [w, p] : combo.terms) {
                py::list entries;
                for (std::size_t t = 0; t < p.targets.size(); ++t)
                    if (p.targets[t])
                        entries.append(py::make_tuple(t, p.targets[t]->source,
                                                      p.targets[t]->sign));
                terms.append(py::make_tuple(w.to_double(), entries));
            }
            return terms;
        },
        py::arg("x"), py::arg("y"));

    m.def(
        "space_norm",
        [](const std::string& space, const std::vector<double>& x) {
            return space_norm(space_from_name(space), seq_from_list(x));
        },
        py::arg("space"), py::arg("x"));

    m.def(
        "run_pipeline",
        [](const std::vector<double>& x, const std::vector<double>& y, double q,
           double c1, double c2, double eps, const std::string& space) {
            PipelineResult r = theorem_main_pipeline(
                seq_from_list(x), seq_from_list(y),
                q == 2.0 ? Scalar(2) : Scalar::real(q), Scalar::real(c1),
                Scalar::real(c2), Scalar::real(eps), {space_from_name(space)});
            py::dict out;
            out["bound_holds"] = r.bound_holds;
            out["c3"] = r.c3.to_double();
            out["trivial"] = r.trivial;
            out["steps"] =
                r.decomposition ? py::cast(r.decomposition->steps.size()) : py::none();
            return out;
        },
        py::arg("x"), py::arg("y"), py::arg("q") = 2.0, py::arg("c1") = 1.0,
        py::arg("c2") = 1.0, py::arg("eps") = 1.0 / 1024.0, py::arg("space") = "l1");

    m.def(
        "verify_thm_easy",
        [](const std::string& space, double q, double C, std::uint64_t trials,
           std::uint64_t seed) {
            Report r = verify_thm_easy(space_from_name(space), 1.0, q, C, trials, seed);
            py::dict out;
            out["pass"] = r.pass;
            out["violations"] = r.violations.size();
            return out;
        },
        py::arg("space") = "l1", py::arg("q") = 2.0, py::arg("C") = 1.0,
        py::arg("trials") = 1000, py::arg("seed") = 7);
}
