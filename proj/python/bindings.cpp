// Python module: string-described problems in, record dicts (the CLI's JSON
// form) out.

#include "qdc/analysis.hpp"
#include "qdc/errors.hpp"
#include "qdc/oracles.hpp"
#include "qdc/qmath.hpp"
#include "qdc/record.hpp"
#include "qdc/states.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;

namespace {

py::object as_dict(const qdc::RunRecord& record) {
    return py::module_::import("json").attr("loads")(qdc::to_json(record));
}

struct ProblemKw {
    std::string state;
    std::string channel;
    int senders;
    int receivers;
    int split;
    bool optimize;
    std::uint64_t opt_seed;
    long max_evals;
    int restarts;
};

qdc::Problem make_problem(const ProblemKw& k) {
    if (k.receivers != 1 && k.receivers != 2) throw qdc::DomainError("receivers must be 1 or 2");
    qdc::Problem pr;
    pr.state = qdc::parse_state(k.state);
    pr.layout.n_senders = k.senders;
    pr.layout.two_receivers = k.receivers == 2;
    pr.layout.split = k.split;
    pr.channel = qdc::parse_channel(k.channel);
    pr.opt.seed = k.opt_seed;
    pr.opt.max_evaluations = k.max_evals;
    pr.opt.restarts = k.restarts;
    pr.opt.enabled = k.optimize;
    qdc::validate(pr);
    return pr;
}

qdc::QuenchConfig make_quench(long realizations, std::uint64_t seed, bool optimize_per_realization, int threads) {
    qdc::QuenchConfig qc;
    qc.realizations = realizations;
    qc.master_seed = seed;
    qc.optimize_per_realization = optimize_per_realization;
    qc.threads = threads;
    return qc;
}

py::array_t<std::complex<double>> to_numpy(const qdc::ComplexMatrix& m) {
    const auto n = static_cast<py::ssize_t>(m.dim());
    py::array_t<std::complex<double>> out({n, n});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t r = 0; r < n; ++r)
        for (py::ssize_t c = 0; c < n; ++c) view(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    return out;
}

qdc::ComplexMatrix from_numpy(const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw qdc::DomainError("expected a square matrix");
    const auto* data = a.data();
    return qdc::ComplexMatrix(static_cast<std::size_t>(a.shape(0)),
                              std::vector<std::complex<double>>(data, data + a.size()));
}

#define QDC_PROBLEM_ARGS                                                                                      \
    py::arg("state"), py::arg("channel"), py::kw_only(), py::arg("senders") = 2,                   \
        py::arg("receivers") = 1, py::arg("split") = 1, py::arg("optimize") = true, py::arg("opt_seed") = 1, \
        py::arg("max_evals") = 20000, py::arg("restarts") = 3

}  // namespace

PYBIND11_MODULE(_qdc, m) {
    m.doc() = "Dense-coding capacity of multiqubit resource states under local noise";
    m.attr("__version__") = qdc::tool_version();

    m.def(
        "capacity",
        [](const std::string& state, const std::string& channel, int senders, int receivers, int split, bool optimize,
           std::uint64_t opt_seed, long max_evals, int restarts) {
            const qdc::Problem pr =
                make_problem({state, channel, senders, receivers, split, optimize, opt_seed, max_evals, restarts});
            if (pr.channel.epsilon > 0.0) throw qdc::DomainError("random channels need quench()");
            return as_dict(qdc::make_record(pr, qdc::evaluate(pr)));
        },
        QDC_PROBLEM_ARGS, "Capacity (one receiver) or upper bound (two receivers) as a record dict.");

    m.def(
        "quench",
        [](const std::string& state, const std::string& channel, int senders, int receivers, int split, bool optimize,
           std::uint64_t opt_seed, long max_evals, int restarts, long realizations, std::uint64_t seed,
           bool optimize_per_realization, int threads) {
            const qdc::Problem pr =
                make_problem({state, channel, senders, receivers, split, optimize, opt_seed, max_evals, restarts});
            const auto qc = make_quench(realizations, seed, optimize_per_realization, threads);
            return as_dict(qdc::make_record(pr, qc, qdc::quenched_capacity(pr, qc)));
        },
        QDC_PROBLEM_ARGS, py::arg("realizations") = 4000, py::arg("seed") = 1,
        py::arg("optimize_per_realization") = false, py::arg("threads") = 1,
        "Quenched mean capacity over random channel draws as a record dict.");

    m.def(
        "critical",
        [](const std::string& state, const std::string& channel, int senders, int receivers, int split, bool optimize,
           std::uint64_t opt_seed, long max_evals, int restarts, double scan_step, double refine, bool with_pa,
           long realizations, std::uint64_t seed, int threads) {
            const qdc::Problem pr =
                make_problem({state, channel, senders, receivers, split, optimize, opt_seed, max_evals, restarts});
            std::optional<qdc::QuenchConfig> qc;
            if (pr.channel.epsilon > 0.0) qc = make_quench(realizations, seed, false, threads);
            const auto cs = qdc::critical_strengths(pr, qdc::ScanConfig{scan_step, refine}, with_pa, qc);
            return as_dict(qdc::make_record(pr, cs, qc));
        },
        QDC_PROBLEM_ARGS, py::arg("scan_step") = 1e-3, py::arg("refine") = 1e-4, py::arg("with_pa") = true,
        py::arg("realizations") = 4000, py::arg("seed") = 1, py::arg("threads") = 1,
        "p_c, p_r and p_a as a record dict; the channel's p is ignored.");

    m.def(
        "density_matrix", [](const std::string& state) { return to_numpy(qdc::build(qdc::parse_state(state)).matrix()); },
        py::arg("state"), "Density matrix of a resource state (senders first, big-endian).");
    m.def(
        "entropy", [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
            return qdc::von_neumann_entropy(qdc::DensityMatrix(from_numpy(a)));
        },
        py::arg("rho"), "Von Neumann entropy in bits.");

    m.def("pc_closed_form", &qdc::pc_closed_form, py::arg("alpha"));
    m.def("pa_closed_form", &qdc::pa_closed_form, py::arg("alpha"));
    m.def("gghz_two_receiver_bound", &qdc::gghz_two_receiver_bound, py::arg("x"));
    m.def("bell_depolarizing_threshold", &qdc::bell_depolarizing_threshold, py::arg("alpha"));
    m.def(
        "validate",
        []() {
            py::list out;
            for (const auto& r : qdc::validation_suite(qdc::OptimizerConfig{})) {
                py::dict d;
                d["name"] = r.name;
                d["numeric"] = r.numeric_value;
                d["closed_form"] = r.closed_form_value;
                d["abs_error"] = r.abs_error;
                d["tolerance"] = r.tolerance;
                d["pass"] = r.pass;
                out.append(d);
            }
            return out;
        },
        "Oracle reports: numerics against closed forms.");
}
