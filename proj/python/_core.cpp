#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "completeness/classifier.hpp"
#include "completeness/cli.hpp"
#include "completeness/sequence.hpp"
#include "completeness/sumset.hpp"
#include "completeness/tiler.hpp"
#include "completeness/verifier.hpp"

namespace py = pybind11;
using namespace completeness;

namespace {

py::int_ to_py(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list to_py(const std::vector<BigInt>& values) {
    py::list out;
    for (const auto& v : values) out.append(to_py(v));
    return out;
}

Rational q(const std::string& text) { return Rational::parse(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact completeness computations for floor(t * alpha^n)";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("canonical", [](const std::string& x) { return q(x).str(); }, py::arg("value"));

    m.def(
        "term", [](const std::string& t, const std::string& alpha, std::size_t n) { return to_py(term(q(t), q(alpha), n)); },
        py::arg("t"), py::arg("alpha"), py::arg("n"));
    m.def(
        "prefix",
        [](const std::string& t, const std::string& alpha, std::size_t n) { return to_py(prefix(q(t), q(alpha), n).terms); },
        py::arg("t"), py::arg("alpha"), py::arg("n") = kDefaultPrefixLength);

    m.def(
        "subset_sums",
        [](const std::vector<std::uint64_t>& values, std::optional<std::uint64_t> bound) {
            return (bound ? subset_sums(values, *bound) : subset_sums(values)).members();
        },
        py::arg("values"), py::arg("bound") = py::none());
    m.def(
        "naive_subset_sums",
        [](const std::vector<std::uint64_t>& values) {
            const auto s = naive_subset_sums(values);
            return std::vector<std::uint64_t>(s.begin(), s.end());
        },
        py::arg("values"));
    m.def(
        "find_run",
        [](const std::vector<std::uint64_t>& values, std::uint64_t length, std::optional<std::uint64_t> limit) {
            const auto bits = subset_sums(values);
            if (bits.bound() < length) return std::optional<std::uint64_t>{};
            return find_run(bits, length, limit.value_or(bits.bound() - length + 1));
        },
        py::arg("values"), py::arg("length"), py::arg("limit") = py::none());

    m.def(
        "classify_json",
        [](const std::string& t, const std::string& alpha) { return classification_to_json(classify(q(t), q(alpha))); },
        py::arg("t"), py::arg("alpha"));
    m.def(
        "corollary_witness",
        [](const std::string& t, const std::string& alpha, std::size_t n) -> std::optional<py::tuple> {
            const auto w = corollary_witness(q(t), q(alpha), n);
            if (!w) return std::nullopt;
            return py::make_tuple(to_py(w->m), w->r);
        },
        py::arg("t"), py::arg("alpha"), py::arg("n") = kDefaultPrefixLength);
    m.def(
        "folkman_chain",
        [](const std::string& t, const std::string& alpha, const std::string& m_value, std::size_t r, std::size_t k) {
            return to_py(folkman_chain(q(t), q(alpha), BigInt(m_value), r, k));
        },
        py::arg("t"), py::arg("alpha"), py::arg("m"), py::arg("r"), py::arg("k"));

    m.def(
        "tile",
        [](const std::string& region, int max_depth, std::size_t prefix_length, unsigned jobs) {
            TileOptions options;
            options.max_depth = max_depth;
            options.prefix_length = prefix_length;
            options.jobs = jobs;
            Certificate cert;
            {
                py::gil_scoped_release release;
                cert = tile(Region::parse(region), options);
            }
            return certificate_to_json(cert);
        },
        py::arg("region"), py::arg("max_depth") = 12, py::arg("prefix_length") = kDefaultTilePrefix,
        py::arg("jobs") = 1);
    m.def(
        "verify",
        [](const std::string& certificate_json, const std::string& region) {
            const auto cert = verify::parse_certificate(certificate_json);
            return verify::report_to_json(verify::verify(cert, Region::parse(region)));
        },
        py::arg("certificate_json"), py::arg("region"));

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "completeness");
            std::ostringstream out;
            std::ostringstream err;
            const int status = cli::run(args, out, err);
            return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"));
}
