// Python extension. Values cross the boundary as JSON text in the same format the
// command line uses; the forcelab package turns it into Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "forcelab/codec.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/suites.hpp"

namespace py = pybind11;
using namespace forcelab;

namespace {

template <class T>
T in(const std::string& text) {
  return decode_text<T>(text);
}

template <class T>
std::string out(const T& v) {
  return dump(encode(v));
}

template <class T>
std::string out_all(const std::vector<T>& xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(encode(x));
  return dump(arr);
}

LabelSet labels_of(const std::vector<Label>& v) { return LabelSet(v.begin(), v.end()); }

std::string validation(const ValidationResult& v) { return out(v); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "forcelab core (JSON text in, JSON text out)";

  auto base = py::register_exception<Error>(m, "ForcelabError");
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<InputTooLarge>(m, "InputTooLarge", base.ptr());
  py::register_exception<IncompatibleError>(m, "IncompatibleError", base.ptr());
  py::register_exception<DecodeError>(m, "DecodeError", base.ptr());

  m.attr("DEFAULT_BUDGET") = kDefaultBudget;

  // Trees
  m.def("enumerate_t_level", [](std::uint32_t n, std::uint64_t budget) { return out_all(enumerate_t_level(n, budget)); },
        py::arg("n"), py::arg("budget") = kDefaultBudget);
  m.def("enumerate_b_level", [](std::uint32_t n, std::uint64_t budget) { return out_all(enumerate_b_level(n, budget)); },
        py::arg("n"), py::arg("budget") = kDefaultBudget);
  m.def("disjoint_above", [](const std::vector<std::string>& family, std::size_t k) {
    std::vector<TSeq> seqs;
    for (const auto& s : family) seqs.push_back(in<TSeq>(s));
    return disjoint_above(seqs, k);
  });

  // Q0
  m.def("validate_q0", [](const std::string& p) { return validation(validate_q0(in<Q0Condition>(p))); });
  m.def("leq_q0", [](const std::string& p, const std::string& q) { return leq_q0(in<Q0Condition>(p), in<Q0Condition>(q)); });
  m.def("compatible", [](const std::string& p, const std::string& q) { return compatible(in<Q0Condition>(p), in<Q0Condition>(q)); });
  m.def("oracle_compatible", [](const std::string& p, const std::string& q, std::uint64_t budget) {
    return oracle_compatible(in<Q0Condition>(p), in<Q0Condition>(q), budget);
  }, py::arg("p"), py::arg("q"), py::arg("budget") = kDefaultBudget);
  m.def("common_extension", [](const std::string& p, const std::string& q) {
    return out(common_extension(in<Q0Condition>(p), in<Q0Condition>(q)));
  });
  m.def("extend_to_height", [](const std::string& p, std::uint32_t k) {
    return out(extend_to_height(in<Q0Condition>(p), k).condition);
  });
  m.def("extend_domain", [](const std::string& p, Label a) { return out(extend_domain(in<Q0Condition>(p), a)); });
  m.def("separativity_witness", [](const std::string& p, const std::string& q) {
    return out(separativity_witness(in<Q0Condition>(p), in<Q0Condition>(q)));
  });
  m.def("reduction", [](const std::string& p, const std::vector<Label>& x) {
    return out(reduction(in<Q0Condition>(p), labels_of(x)));
  });
  m.def("enumerate_q0", [](const std::vector<Label>& labels, std::uint32_t h, std::uint64_t budget) {
    return out_all(enumerate_q0(labels_of(labels), h, budget));
  }, py::arg("labels"), py::arg("max_ht"), py::arg("budget") = kDefaultBudget);
  m.def("count_q0", [](const std::vector<Label>& labels, std::uint32_t h) { return count_q0(labels_of(labels), h); });

  // Forcing
  m.def("forces_atom", [](const std::string& q, const std::string& s) {
    return forces_atom(in<Q0Condition>(q), in<AtomicSentence>(s));
  });
  m.def("n_witness", [](const std::string& q, const std::string& s) -> std::optional<std::string> {
    auto w = n_witness(in<Q0Condition>(q), in<AtomicSentence>(s));
    if (!w) return std::nullopt;
    return out(*w);
  });
  m.def("forces_neg_conj", [](const std::string& q, Label b, Label c, std::uint32_t i, std::uint64_t j) {
    return forces_neg_conj(in<Q0Condition>(q), b, c, i, j);
  });
  m.def("forces_sigma_set", [](const std::string& q, const std::string& p, std::uint32_t h) {
    return forces_sigma_set(in<Q0Condition>(q), in<Q0Condition>(p), h);
  });
  m.def("refuter_condition", [](Label a, Label b) { return out(refuter_condition(a, b)); });
  m.def("refuting_common_extension", [](const std::string& p, const std::string& pp, const std::string& q, Label a, Label b) {
    return out(refuting_common_extension(in<Q0Condition>(p), in<Q0Condition>(pp), in<Q0Condition>(q), a, b));
  });
  m.def("refutation_report", [](const std::string& p, const std::string& pp, Label a, Label b) {
    return dump(refutation_report(in<Q0Condition>(p), in<Q0Condition>(pp), a, b));
  });

  // Standard parts
  m.def("validate_stp_q", [](const std::string& a) { return validation(validate_stp_q(in<StpQPair>(a))); });
  m.def("leq_stp_q", [](const std::string& a, const std::string& b) { return leq_stp_q(in<StpQPair>(a), in<StpQPair>(b)); });
  m.def("is_dq", [](const std::string& a) { return is_dq(in<StpQPair>(a)); });
  m.def("densify_q", [](const std::string& a) { return out(densify_q(in<StpQPair>(a))); });
  m.def("enumerate_dq", [](const std::vector<Label>& labels, std::uint32_t h, std::uint64_t budget) {
    return out_all(enumerate_dq(labels_of(labels), h, budget));
  }, py::arg("labels"), py::arg("max_ht"), py::arg("budget") = kDefaultBudget);
  m.def("validate_stp_p", [](const std::string& a) { return validation(validate_stp_p(in<StpPPair>(a))); });
  m.def("leq_stp_p", [](const std::string& a, const std::string& b) { return leq_stp_p(in<StpPPair>(a), in<StpPPair>(b)); });
  m.def("is_dp", [](const std::string& a) { return is_dp(in<StpPPair>(a)); });
  m.def("densify_p", [](const std::string& a) { return out(densify_p(in<StpPPair>(a))); });
  m.def("enumerate_dp", [](const std::vector<Label>& labels, std::uint32_t h, std::uint64_t budget) {
    return out_all(enumerate_dp(labels_of(labels), h, budget));
  }, py::arg("labels"), py::arg("max_ht"), py::arg("budget") = kDefaultBudget);

  // Isomorphism
  m.def("restrict_dp", [](const std::string& a) { return out(restrict_dp(in<DPElement>(a))); });
  m.def("dp_to_dq", [](const std::string& a) { return out(dp_to_dq(in<DPStarElement>(a))); });
  m.def("dq_to_dp", [](const std::string& d) { return out(dq_to_dp(in<DQElement>(d))); });
  m.def("check_order_iso", [](const std::vector<Label>& labels, std::uint32_t h, std::uint64_t budget) {
    return out(check_order_iso(labels_of(labels), h, budget));
  }, py::arg("labels"), py::arg("max_ht"), py::arg("budget") = kDefaultBudget);

  // Generic filters
  m.def("build_filter", [](const std::vector<Label>& labels, std::uint32_t n, std::uint64_t seed) {
    return out(build_filter(labels_of(labels), n, seed));
  });
  m.def("simulate", [](const std::vector<Label>& labels, std::uint32_t n, std::uint64_t seed) {
    const auto g = extract_objects(build_filter(labels_of(labels), n, seed));
    Json j;
    j["objects"] = encode(g);
    j["coherence"] = encode(check_coherence(g));
    j["almost_disjoint"] = encode(check_almost_disjoint(g));
    return dump(j);
  });
  m.def("check_coherence", [](const std::string& g) { return out(check_coherence(in<GenericObjects>(g))); });
  m.def("check_almost_disjoint", [](const std::string& g) { return out(check_almost_disjoint(in<GenericObjects>(g))); });

  // Suites
  m.def("run_suite", [](const std::string& name, std::optional<std::vector<Label>> labels, std::optional<std::uint32_t> max_ht,
                        std::optional<std::uint64_t> seeds, std::uint64_t seed, std::uint64_t budget,
                        std::optional<std::uint64_t> samples) {
    const auto s = parse_suite(name);
    if (!s) throw PreconditionError("unknown suite \"" + name + "\"");
    SuiteConfig cfg;
    cfg.suite = *s;
    cfg.labels = std::move(labels);
    cfg.max_ht = max_ht;
    cfg.seeds = seeds;
    cfg.seed = seed;
    cfg.budget = budget;
    cfg.samples = samples;
    py::gil_scoped_release release;
    return dump(encode(run_suite(cfg)));
  }, py::arg("suite"), py::arg("labels") = py::none(), py::arg("max_ht") = py::none(), py::arg("seeds") = py::none(),
     py::arg("seed") = 0, py::arg("budget") = kDefaultBudget, py::arg("samples") = py::none());
}
