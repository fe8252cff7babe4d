#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "cforge/verify.hpp"

namespace py = pybind11;
using namespace cforge;

namespace {

// One constructed group with its class data (and, on demand, its
// character table) kept alive together.
struct PyGroup {
  GroupMeta meta;
  std::shared_ptr<ClassTable> table;
  std::shared_ptr<CharTable> chart;

  const ClassTable& classes() {
    if (!table) table = std::make_shared<ClassTable>(meta.group);
    return *table;
  }
  const CharTable& chartab() {
    if (!chart) {
      classes();
      chart = std::make_shared<CharTable>(character_table(table));
    }
    return *chart;
  }
  u32 checked(u32 i) {
    if (i >= classes().count())
      throw BadSpec("class index out of range; the table has " +
                    std::to_string(classes().count()) + " classes");
    return i;
  }
};

PyGroup build(const std::string& spec_json, u64 cap_order, u64 cap_class) {
  Caps caps;
  if (cap_order) caps.max_order = cap_order;
  if (cap_class) caps.max_class = cap_class;
  return PyGroup{make_group(parse_group_spec(spec_json), caps), nullptr,
                 nullptr};
}

// Reports cross the boundary as real dicts, via the canonical JSON form.
py::object report_dict(const VerifierReport& r) {
  return py::module_::import("json").attr("loads")(py::str(r.to_json()));
}

py::object value_to_py(const Cyclo& v, const CycloCtx& ctx) {
  if (auto n = cyclo_as_integer(v, ctx)) return py::int_(*n);
  py::dict d;
  d["zeta"] = v.e;
  d["mults"] = v.mults;
  return std::move(d);
}

Perm perm_from_py(const PyGroup& g, const std::vector<u16>& images) {
  if (images.size() != g.meta.group->degree() || !p_is_perm(images))
    throw BadSpec("expected a 0-based image array of length " +
                  std::to_string(g.meta.group->degree()));
  return images;
}

}  // namespace

PYBIND11_MODULE(_cforge, m) {
  m.doc() =
      "exact conjugacy classes, class-algebra products, character tables, "
      "and the theorem verifiers built on them";

  py::register_exception<BadSpec>(m, "BadSpec", PyExc_ValueError);
  py::register_exception<SizeCapExceeded>(m, "SizeCapExceeded",
                                          PyExc_ValueError);

  py::class_<PyGroup>(m, "Group")
      .def_property_readonly("name",
                             [](PyGroup& g) { return g.meta.name; })
      .def_property_readonly("order",
                             [](PyGroup& g) { return g.meta.group->order(); })
      .def_property_readonly("degree",
                             [](PyGroup& g) { return g.meta.group->degree(); })
      .def_property_readonly("action",
                             [](PyGroup& g) { return g.meta.action; })
      .def_property_readonly(
          "characteristic", [](PyGroup& g) { return g.meta.characteristic; })
      .def_property_readonly(
          "spec", [](PyGroup& g) { return spec_to_json(g.meta.spec); })
      .def_property_readonly(
          "class_count", [](PyGroup& g) { return g.classes().count(); })
      .def("class_size",
           [](PyGroup& g, u32 i) { return g.classes().size(g.checked(i)); })
      .def("element_order",
           [](PyGroup& g, u32 i) {
             return g.classes().element_order(g.checked(i));
           })
      .def("centralizer_order",
           [](PyGroup& g, u32 i) {
             return g.classes().centralizer_order(g.checked(i));
           })
      .def("class_rep",
           [](PyGroup& g, u32 i) { return g.classes().rep(g.checked(i)); })
      .def("identify",
           [](PyGroup& g, const std::vector<u16>& images) {
             Perm x = perm_from_py(g, images);
             if (!g.meta.group->contains(x))
               throw BadSpec("permutation is not a member of " + g.meta.name);
             return g.classes().identify(x);
           },
           "class index of a member permutation (0-based image array)")
      .def("is_simple", [](PyGroup& g) { return is_simple(g.classes()); })
      .def("product_support",
           [](PyGroup& g, u32 i, u32 j) {
             auto s = product_support(g.classes(), g.checked(i), g.checked(j));
             return s.entries;
           },
           "every (class, coefficient) with a nonzero structure constant")
      .def("structure_constant",
           [](PyGroup& g, u32 i, u32 j, u32 k) {
             return structure_constant(g.classes(), g.checked(i), g.checked(j),
                                       g.checked(k));
           })
      .def("double_cosets",
           [](PyGroup& g, u32 i, u32 j) {
             auto dc = centralizer_orbit_count(*g.meta.group,
                                               g.classes().rep(g.checked(i)),
                                               g.classes().rep(g.checked(j)));
             return dc.count;
           },
           "number of (C(a), C(b)) double cosets for reps of classes i, j")
      .def_property_readonly(
          "conductor", [](PyGroup& g) { return g.chartab().conductor(); })
      .def("char_degrees",
           [](PyGroup& g) {
             std::vector<u64> out;
             for (u32 r = 0; r < g.chartab().rows(); ++r)
               out.push_back(g.chartab().degree(r));
             return out;
           })
      .def("char_value",
           [](PyGroup& g, u32 r, u32 j) {
             if (r >= g.chartab().rows())
               throw BadSpec("row index out of range");
             return value_to_py(g.chartab().value(r, g.checked(j)),
                                g.chartab().ctx());
           },
           "exact value: an int, or {'zeta': e, 'mults': [...]} meaning "
           "sum(mults[t] * exp(2j*pi*t/e))")
      .def("__repr__", [](PyGroup& g) {
        return "<Group " + g.meta.name + " of order " +
               std::to_string(g.meta.group->order()) + ">";
      });

  m.def("make_group", &build, py::arg("spec"), py::arg("cap_order") = 0,
        py::arg("cap_class") = 0,
        "build a group from its JSON spec (a string); caps of 0 keep the "
        "defaults");
  m.def("spec_name",
        [](const std::string& s) { return spec_name(parse_group_spec(s)); });
  m.def("canonical_spec",
        [](const std::string& s) { return spec_to_json(parse_group_spec(s)); });
  m.def(
      "zsigmondy",
      [](u64 q, u32 n) -> py::object {
        auto p = zsigmondy(q, n);
        if (!p) return py::none();
        return py::int_(*p);
      },
      py::arg("q"), py::arg("n"),
      "least prime dividing q^n - 1 but no smaller q^m - 1, or None");

  m.def("arad_herzog",
        [](PyGroup& g) { return report_dict(verify_arad_herzog(g.meta, g.classes())); },
        "product of two nontrivial classes is never one class");
  m.def("szep",
        [](PyGroup& g) { return report_dict(verify_szep(g.meta, g.classes())); },
        "no factorization into two element centralizers");
  m.def("fixed_point_nonconstancy",
        [](PyGroup& g, PyGroup* h) {
          const PermGroup& sub = h ? *h->meta.group : *g.meta.group;
          return report_dict(verify_fixed_point_nonconstancy(g.meta, sub));
        },
        py::arg("g"), py::arg("h") = nullptr,
        "fixed-point counts non-constant on products of H-classes (H "
        "defaults to G)");
  m.def("steinberg_nonconstancy",
        [](PyGroup& g) {
          return report_dict(verify_steinberg_nonconstancy(g.meta, g.chartab()));
        });
  m.def("unipotent_products",
        [](PyGroup& g, u64 p) {
          return report_dict(verify_unipotent_products(g.meta, g.classes(), p));
        },
        py::arg("g"), py::arg("p") = 0);
  m.def("bs_theorem",
        [](PyGroup& g, u64 p) {
          return report_dict(verify_bs_theorem(g.meta, g.classes(), p));
        },
        py::arg("g"), py::arg("p"));
  m.def("bsas",
        [](PyGroup& g, u64 p) {
          return report_dict(verify_bsas(g.meta, g.classes(), p));
        },
        py::arg("g"), py::arg("p"),
        "nonsolvable and non-p-product witnesses for order-p class pairs");
}
