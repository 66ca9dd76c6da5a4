#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frobcoord/coordination.hpp"
#include "frobcoord/lexicon.hpp"
#include "frobcoord/pregroup.hpp"
#include "frobcoord/selftest.hpp"
#include "frobcoord/sentence.hpp"

namespace py = pybind11;
namespace fc = frobcoord;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

template <fc::Semiring S>
py::array to_numpy(const fc::Tensor<S>& t) {
  std::vector<py::ssize_t> shape;
  for (const auto& w : t.wires()) shape.push_back(static_cast<py::ssize_t>(w.dim));
  if constexpr (std::is_same_v<S, fc::BooleanSemiring>) {
    py::array_t<bool> out(shape);
    auto* p = out.mutable_data();
    for (std::size_t k = 0; k < t.size(); ++k) p[k] = t[k] != 0;
    return std::move(out);
  } else {
    py::array_t<double> out(shape);
    std::copy(t.data().begin(), t.data().end(), out.mutable_data());
    return std::move(out);
  }
}

fc::RealTensor from_numpy(const Array& a, const fc::PregroupType& type,
                          const fc::SpaceAssignment& spaces) {
  auto wires = spaces.wires(type);
  if (static_cast<std::size_t>(a.ndim()) != wires.size()) {
    throw fc::DimMismatch("array has " + std::to_string(a.ndim()) + " axes, type " +
                          fc::format_type(type) + " needs " + std::to_string(wires.size()));
  }
  for (std::size_t k = 0; k < wires.size(); ++k) {
    if (static_cast<std::size_t>(a.shape(k)) != wires[k].dim) {
      throw fc::DimMismatch("axis " + std::to_string(k) + " has length " +
                            std::to_string(a.shape(k)) + ", expected " + std::to_string(wires[k].dim));
    }
  }
  return fc::RealTensor(std::move(wires), std::vector<double>(a.data(), a.data() + a.size()));
}

fc::SpaceAssignment spaces_of(const std::map<std::string, std::size_t>& dims) {
  fc::SpaceAssignment s;
  for (const auto& [sym, d] : dims) s.set(sym, d);
  return s;
}

std::vector<fc::PregroupType> parse_all(const std::vector<std::string>& texts) {
  std::vector<fc::PregroupType> out;
  for (const auto& t : texts) out.push_back(fc::parse_type(t));
  return out;
}

py::dict derivation_dict(const fc::Derivation& d) {
  py::list links;
  for (const auto& l : d.links) links.append(py::make_tuple(l.left, l.right));
  py::dict out;
  out["links"] = links;
  out["residual"] = d.residual;
  out["notation"] = fc::format_links(d);
  return out;
}

fc::EvalMode mode_of(const std::string& mode) {
  if (mode == "explicit") return fc::EvalMode::explicit_network;
  if (mode == "closed-form") return fc::EvalMode::closed_form;
  throw py::value_error("mode must be 'explicit' or 'closed-form'");
}

class PyLexicon {
 public:
  explicit PyLexicon(fc::AnyLexicon lex) : lex_(std::move(lex)) {}

  std::string semiring() const {
    return std::holds_alternative<fc::Lexicon<fc::RealSemiring>>(lex_) ? "real" : "bool";
  }

  std::map<std::string, std::size_t> dims() const {
    return std::visit([](const auto& l) { return l.spaces().entries(); }, lex_);
  }

  std::vector<std::string> words() const {
    return std::visit(
        [](const auto& l) {
          std::vector<std::string> out;
          for (const auto& w : l.words()) out.push_back(w.word + " : " + fc::format_type(w.type));
          return out;
        },
        lex_);
  }

  py::object check(const std::vector<std::string>& words, const std::string& target) const {
    return std::visit(
        [&](const auto& l) -> py::object {
          const auto symbols = l.spaces().symbols();
          const auto r = fc::read_words(words, l, fc::parse_type(target, &symbols));
          if (!r) return py::none();
          return derivation_dict(r->derivation);
        },
        lex_);
  }

  py::array evaluate(const std::vector<std::string>& words, const std::string& target,
                     const std::string& mode) const {
    return std::visit(
        [&](const auto& l) -> py::array {
          const auto symbols = l.spaces().symbols();
          const auto r = fc::read_words(words, l, fc::parse_type(target, &symbols));
          if (!r) throw fc::UngrammaticalSentence("sentence does not reduce to " + target);
          return to_numpy(fc::evaluate_reading(*r, l.spaces(), mode_of(mode)));
        },
        lex_);
  }

 private:
  fc::AnyLexicon lex_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pregroup reductions and Frobenius coordination over dense tensors";

  py::register_exception<fc::Error>(m, "FrobcoordError", PyExc_ValueError);

  m.def("parse_type", [](const std::string& t) { return fc::format_type(fc::parse_type(t)); },
        "Normalizes a type string, raising on malformed input.");
  m.def("coordinator_type",
        [](const std::string& x) { return fc::format_type(fc::coordinator_type(fc::parse_type(x))); });
  m.def("adjoint_right",
        [](const std::string& t) { return fc::format_type(fc::adjoint_right(fc::parse_type(t))); });
  m.def("adjoint_left",
        [](const std::string& t) { return fc::format_type(fc::adjoint_left(fc::parse_type(t))); });

  m.def(
      "reduce",
      [](const std::vector<std::string>& tokens, const std::string& target) -> py::object {
        const auto d = fc::reduce(parse_all(tokens), fc::parse_type(target));
        if (!d) return py::none();
        return derivation_dict(*d);
      },
      py::arg("tokens"), py::arg("target") = "s",
      "Canonical derivation as a dict, or None when the tokens do not reduce.");
  m.def(
      "enumerate_reductions",
      [](const std::vector<std::string>& tokens, const std::string& target, std::size_t cap) {
        py::list out;
        for (const auto& d : fc::enumerate_reductions(parse_all(tokens), fc::parse_type(target), cap)) {
          out.append(derivation_dict(d));
        }
        return out;
      },
      py::arg("tokens"), py::arg("target") = "s", py::arg("cap") = 1024);

  m.def(
      "coordinator_tensor",
      [](const std::string& x, const std::map<std::string, std::size_t>& dims,
         const std::string& semiring) -> py::array {
        const auto spaces = spaces_of(dims);
        if (semiring == "bool") {
          return to_numpy(fc::coordinator_tensor<fc::BooleanSemiring>(fc::parse_type(x), spaces));
        }
        return to_numpy(fc::coordinator_tensor<fc::RealSemiring>(fc::parse_type(x), spaces));
      },
      py::arg("conjunct"), py::arg("dims"), py::arg("semiring") = "real");

  m.def(
      "coordinate",
      [](const std::string& x, const Array& a, const Array& b,
         const std::map<std::string, std::size_t>& dims, const std::string& mode) {
        const auto spaces = spaces_of(dims);
        const auto type = fc::parse_type(x);
        const auto ta = from_numpy(a, type, spaces);
        const auto tb = from_numpy(b, type, spaces);
        if (mode_of(mode) == fc::EvalMode::closed_form) {
          return to_numpy(fc::coordinate_closed_form(ta, tb));
        }
        const auto d = fc::reduce({type, fc::coordinator_type(type), type}, type);
        return to_numpy(fc::evaluate(fc::build_network(
            *d, std::vector<fc::RealTensor>{ta, fc::coordinator_tensor<fc::RealSemiring>(type, spaces), tb},
            spaces)));
      },
      py::arg("conjunct"), py::arg("a"), py::arg("b"), py::arg("dims"),
      py::arg("mode") = "explicit",
      "Coordinates two meanings of type `conjunct` through the coordinator tensor.");

  m.def(
      "stripping_sentence",
      [](const Array& subject, const Array& verb, const Array& obj1, const Array& obj2) {
        if (subject.ndim() != 1 || verb.ndim() != 3) {
          throw fc::DimMismatch("subject must be a vector and verb an order-3 array");
        }
        const auto spaces = spaces_of({{"n", static_cast<std::size_t>(subject.shape(0))},
                                       {"s", static_cast<std::size_t>(verb.shape(1))}});
        const auto n = fc::parse_type("n");
        return to_numpy(fc::stripping_sentence(from_numpy(subject, n, spaces),
                                               from_numpy(verb, fc::parse_type("n.r s n.l"), spaces),
                                               from_numpy(obj1, n, spaces),
                                               from_numpy(obj2, n, spaces)));
      },
      py::arg("subject"), py::arg("verb"), py::arg("obj1"), py::arg("obj2"));

  py::class_<PyLexicon>(m, "Lexicon")
      .def_static("load", [](const std::string& path) { return PyLexicon(fc::load_lexicon(path)); })
      .def_static("parse",
                  [](const std::string& text) { return PyLexicon(fc::realize_any(fc::parse_lexicon(text))); })
      .def_property_readonly("semiring", &PyLexicon::semiring)
      .def_property_readonly("dims", &PyLexicon::dims)
      .def("words", &PyLexicon::words)
      .def("check", &PyLexicon::check, py::arg("words"), py::arg("target") = "s")
      .def("evaluate", &PyLexicon::evaluate, py::arg("words"), py::arg("target") = "s",
           py::arg("mode") = "explicit");

  m.def(
      "selftest",
      [](std::size_t max_dim, std::size_t trials, std::uint64_t seed) {
        fc::selftest::Options opts;
        opts.max_dim = max_dim;
        opts.trials = trials;
        opts.seed = seed;
        py::list out;
        for (const auto& r : fc::selftest::run_all(opts)) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["total"] = r.total;
          d["counterexample"] = r.counterexample;
          out.append(d);
        }
        return out;
      },
      py::arg("max_dim") = 4, py::arg("trials") = 100, py::arg("seed") = fc::selftest::kDefaultSeed);
}
