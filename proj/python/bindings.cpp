// Python bindings for the main operations: exact Picard arithmetic, cover
// invariants, lct computations and the certificate checker. Rationals cross
// the boundary as fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "burniat5/bicover.hpp"
#include "burniat5/checker.hpp"
#include "burniat5/divexpr.hpp"
#include "burniat5/lct.hpp"

namespace py = pybind11;
using namespace bur5;

namespace {

py::object fraction(const Rat& q) {
    static py::object ctor = py::module_::import("fractions").attr("Fraction");
    static py::object toint = py::module_::import("builtins").attr("int");
    return ctor(toint(py::str(numerator(q).str())), toint(py::str(denominator(q).str())));
}

Rat to_rat(py::handle h) {
    py::object frac = py::module_::import("fractions").attr("Fraction")(h);
    std::string num = py::str(frac.attr("numerator")).cast<std::string>();
    std::string den = py::str(frac.attr("denominator")).cast<std::string>();
    return Rat(Int(num), Int(den));
}

DivClass to_class(py::sequence seq) {
    if (py::len(seq) != 5) throw std::invalid_argument("class needs 5 coefficients");
    DivClass d;
    for (int i = 0; i < 5; ++i) d.c[i] = to_rat(seq[i]);
    return d;
}

py::list from_class(const DivClass& d) {
    py::list out;
    for (int i = 0; i < 5; ++i) out.append(fraction(d.c[i]));
    return out;
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["valid"] = v.valid;
    d["reason"] = v.reason;
    d["step"] = v.step_index;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact intersection theory and certificate checking for the "
              "secondary Burniat surface with K^2 = 5";

    m.def("pair", [](py::sequence a, py::sequence b) {
        return fraction(pair(to_class(a), to_class(b)));
    });
    m.def("canonical_class", [] { return from_class(canonical_class()); });
    m.def("negative_curves", [] {
        py::list out;
        for (const auto& c : negative_curves()) out.append(from_class(c));
        return out;
    });
    m.def("is_effective", [](py::sequence a) { return is_effective(to_class(a)); });
    m.def("h0", [](py::sequence a) { return h0(to_class(a)); });

    m.def("ixn", [](const std::string& a, const std::string& b) {
        return fraction(ixn_curves(a, b));
    });
    m.def("ixn_classes", [](py::sequence a, py::sequence b) {
        return fraction(ixn(to_class(a), to_class(b)));
    });
    m.def("meets", [](const std::string& a, const std::string& b) { return meets(a, b); });

    m.def("invariants", [] {
        Invariants inv = invariants();
        py::dict d;
        d["K2"] = fraction(inv.k2);
        d["pg"] = inv.pg;
        d["chi"] = fraction(inv.chi);
        d["q"] = inv.q;
        return d;
    });

    m.def("eigensystem", [](int mm, int i) {
        EigenSystem es = eigen_system(mm, i);
        py::dict d;
        d["fixed"] = es.fixed;
        d["mobile"] = from_class(es.mobile);
        d["dim"] = es.dim;
        return d;
    });
    m.def("plurigenus", [](int mm) { return plurigenus(mm); });

    m.def("lct", [](const std::string& expr) {
        LctResult r = lct_divisor(parse_divisor(expr));
        py::dict d;
        d["value"] = r.value ? fraction(*r.value) : py::object(py::none());
        d["point"] = r.point;
        return d;
    });
    m.def("lct_witness", [](const std::string& name, long n) {
        QDivisorX w;
        if (name == "D1-even")
            w = witness_even_anti(n);
        else if (name == "D0-odd")
            w = witness_odd_inv(n);
        else if (name == "D1-odd")
            w = witness_odd_anti(n);
        else
            throw std::invalid_argument("unknown witness: " + name);
        LctResult r = lct_divisor(w);
        py::dict d;
        d["value"] = fraction(*r.value);
        d["point"] = r.point;
        return d;
    });

    m.def("glct_upper", [](int max_coeff) {
        GlctUpperResult r = glct_upper_search(DivClass(3, -1, -1, -1, -1), max_coeff);
        py::dict d;
        d["bound_2K"] = fraction(r.bound);
        d["bound_K"] = fraction(2 * r.bound);
        py::dict wit;
        for (const auto& [name, c] : r.witness)
            if (c != 0) wit[py::str(name)] = c;
        d["witness"] = wit;
        return d;
    });

    m.def("check_certificate", [](const std::string& text) {
        return verdict_dict(check_certificate(parse_certificate(text)));
    });
    m.def("check_certificate_file", [](const std::string& path) {
        return verdict_dict(check_certificate(parse_certificate_file(path)));
    });
    m.def("mutation_report", [](const std::string& text) {
        MutationReport r = mutate_and_check(parse_certificate(text));
        py::dict d;
        d["mutants"] = r.mutants;
        d["rejected"] = r.rejected;
        d["accepted"] = r.accepted;
        return d;
    });

#ifdef BURNIAT5_DEFAULT_CERT_DIR
    m.attr("DEFAULT_CERT_DIR") = BURNIAT5_DEFAULT_CERT_DIR;
#endif
}
