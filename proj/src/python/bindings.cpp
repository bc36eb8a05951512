#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bandyn/ban.hpp"
#include "bandyn/counting.hpp"
#include "bandyn/injection.hpp"
#include "bandyn/numtheory.hpp"
#include "bandyn/words.hpp"

namespace py = pybind11;
using namespace bandyn;

namespace {

// Exact integers cross the boundary as python ints via their decimal form.
py::int_ to_py(const Int& v) {
  py::object builtins = py::module_::import("builtins");
  return builtins.attr("int")(py::str(v.str()));
}

py::dict map_to_dict(const std::map<std::uint64_t, Int>& m) {
  py::dict d;
  for (auto& [k, v] : m) d[py::int_(k)] = to_py(v);
  return d;
}

Sign sign_arg(const std::string& s) { return sign_from_string(s); }

NetworkSpec build_net(const std::string& kind, int a, int b,
                      const std::string& sa, const std::string& sb,
                      const std::string& gate) {
  if (kind == "bac") return make_bac(a, sign_arg(sa));
  if (kind == "bad")
    return make_bad(a, b, sign_arg(sa), sign_arg(sb),
                    gate == "and" ? Gate::And : Gate::Or);
  throw std::invalid_argument("kind must be 'bac' or 'bad'");
}

TypeParams params_of(const std::string& type, int a, int b) {
  if (type == "pos-bac") return TypeParams::pos_bac(a);
  if (type == "neg-bac") return TypeParams::neg_bac(a);
  if (type == "pos-bad") return TypeParams::pos_bad(a, b);
  if (type == "mixed-bad") return TypeParams::mixed_bad(a, b);
  if (type == "neg-bad") return TypeParams::neg_bad(a, b);
  throw std::invalid_argument("unknown network type: " + type);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact attractor censuses for Boolean automata cycles and "
            "double-cycles, with the matching necklace combinatorics";

  // number theory
  m.def("divisors", &divisors);
  m.def("mobius", &mobius);
  m.def("totient", &totient);
  m.def("lucas", [](std::uint64_t n) { return to_py(lucas(n)); });
  m.def("perrin", [](std::uint64_t n) { return to_py(perrin(n)); });
  m.def("lyndon_count", [](std::uint64_t n) { return to_py(lyndon_count(n)); });
  m.def("necklace_count",
        [](std::uint64_t n) { return to_py(necklace_count(n)); });

  // words
  m.def(
      "is_admissible",
      [](const std::string& w, const std::string& family, int d) {
        return is_admissible(CyclicWord::from_string(w),
                             {family_from_name(family), d});
      },
      py::arg("word"), py::arg("family"), py::arg("d"));
  m.def("primitive_period", [](const std::string& w) {
    return primitive_period(CyclicWord::from_string(w));
  });
  m.def("canonical_rotation", [](const std::string& w) {
    return canonical_rotation(CyclicWord::from_string(w)).canonical.str();
  });
  m.def(
      "word_census",
      [](int n, const std::string& family, int d) {
        auto c = enumerate_admissible(n, {family_from_name(family), d});
        py::dict out;
        out["W"] = c.total;
        out["C"] = c.necklaces;
        out["Ct"] = c.primitive_necklaces();
        py::dict per;
        for (auto& [p, v] : c.primitive_period) per[py::int_(p)] = v;
        out["Wt_by_period"] = per;
        return out;
      },
      py::arg("n"), py::arg("family"), py::arg("d"));

  // networks
  m.def(
      "census",
      [](const std::string& kind, int a, int b, const std::string& sa,
         const std::string& sb, const std::string& gate, bool orbits) {
        NetworkSpec net = build_net(kind, a, b, sa, sb, gate);
        auto rep = attractor_census(net, CensusOptions{kNetworkCap, orbits});
        py::dict out;
        out["n"] = net.n;
        out["omega"] = rep.omega;
        out["recurrent"] = rep.recurrent_count;
        out["X"] = map_to_dict(rep.X);
        out["Xt"] = map_to_dict(rep.Xt);
        out["A"] = map_to_dict(rep.A);
        out["At"] = map_to_dict(rep.At);
        py::dict hist;
        for (auto& [k, v] : rep.instability_histogram) hist[py::int_(k)] = v;
        out["instabilities"] = hist;
        if (orbits) {
          py::list orbits_out;
          for (auto& orbit : rep.attractors) {
            py::list o;
            for (Config x : orbit) {
              std::string s(static_cast<std::size_t>(net.n), '0');
              for (int i = 0; i < net.n; ++i)
                if ((x >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
              o.append(s);
            }
            orbits_out.append(o);
          }
          out["attractors"] = orbits_out;
        }
        return out;
      },
      py::arg("kind"), py::arg("a"), py::arg("b") = 0, py::arg("sa") = "+",
      py::arg("sb") = "+", py::arg("gate") = "or", py::arg("orbits") = false);
  m.def("orbit_correspondence_check", [](int l, int r, const std::string& sr,
                           const std::string& gate) {
    return orbit_correspondence_check(make_bad(l, r, Sign::Minus, sign_arg(sr),
                                 gate == "and" ? Gate::And : Gate::Or));
  });

  // closed forms
  m.def("closed_form_omega", [](const std::string& type, int a, int b) {
    return params_of(type, a, b).omega;
  });
  m.def("closed_form_X", [](const std::string& type, int a, int b,
                            std::uint64_t p) {
    return to_py(closed_form_X(params_of(type, a, b), p));
  });
  m.def("attractor_bound_verdict", [](const std::string& type, int a, int b) {
    TypeParams tp = params_of(type, a, b);
    NetworkSpec net;
    switch (tp.type) {
      case NetworkTag::PosBac: net = make_bac(a, Sign::Plus); break;
      case NetworkTag::NegBac: net = make_bac(a, Sign::Minus); break;
      case NetworkTag::PosBad:
        net = make_bad(a, b, Sign::Plus, Sign::Plus, Gate::Or);
        break;
      case NetworkTag::MixedBad:
        net = make_bad(a, b, Sign::Minus, Sign::Plus, Gate::Or);
        break;
      default: net = make_bad(a, b, Sign::Minus, Sign::Minus, Gate::Or); break;
    }
    auto rep = attractor_census(net, CensusOptions{kNetworkCap, false});
    auto v = attractor_bound_verdict(rep, tp);
    py::dict out;
    out["lower_ok"] = v.lower_ok;
    out["upper_ok"] = v.upper_ok;
    out["exception"] = v.exception_flag;
    out["A"] = to_py(v.a_omega);
    out["At"] = to_py(v.at_omega);
    out["X"] = to_py(v.x_omega);
    out["omega"] = v.omega;
    return out;
  });

  // injection
  m.def(
      "verify_injection",
      [](int n, int d, const std::string& family) {
        auto rep = verify_necklace_bound(n, family_from_name(family), d);
        py::dict out;
        out["C"] = rep.necklaces;
        out["Ct"] = rep.primitive_necklaces;
        out["inequality"] = rep.inequality_ok;
        out["excluded"] = rep.excluded;
        if (rep.excluded) out["reason"] = rep.exclusion_reason;
        if (rep.construction_ran) {
          out["roundtrip"] = rep.all_roundtrips_ok;
          out["images_distinct"] = rep.images_pairwise_distinct;
          out["images_valid"] = rep.all_images_valid;
          out["sources"] = rep.rows.size();
        }
        return out;
      },
      py::arg("n"), py::arg("d"), py::arg("family") = "neg-bad");
  m.def("map_necklace", [](const std::string& word, int n, int d) {
    auto params = InjectionParams::make(n, d);
    auto src = canonical_rotation(CyclicWord::from_string(word));
    return map_necklace(src, params).canonical.str();
  });
  m.def("decode_necklace", [](const std::string& word, int n, int d)
            -> py::object {
    auto params = InjectionParams::make(n, d);
    auto neck = canonical_rotation(CyclicWord::from_string(word));
    auto decoded = decode_image(neck, params);
    if (!decoded) return py::none();
    py::dict out;
    out["p"] = decoded->p;
    out["source"] =
        canonical_rotation(compose(decoded->list, decoded->list.step))
            .canonical.str();
    return out;
  });
}
