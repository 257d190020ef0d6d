#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nscover/steinberg.hpp"

namespace py = pybind11;
using namespace nscover;

namespace {

using StrMatrix = std::vector<std::vector<std::string>>;

StrMatrix mat_str(const CMat& M) {
  StrMatrix out(size_t(M.rows()));
  for (int i = 0; i < M.rows(); ++i) {
    out[size_t(i)].reserve(size_t(M.cols()));
    for (int j = 0; j < M.cols(); ++j) out[size_t(i)].push_back(M.at(i, j).str());
  }
  return out;
}

/// One cover (r, h, k) with its homology model, catalog, and representations.
class System {
 public:
  System(int r, int h, int k)
      : pres_(r),
        spec_(CoverSpec::standard(pres_, h, k)),
        model_(pres_, spec_),
        cat_(pres_, spec_),
        rep_(model_, cat_) {}

  int dim() const { return model_.dim(); }
  std::vector<std::string> coord_names() const { return model_.coord_names(); }
  std::string model_json() const { return model_.to_json(); }

  StrMatrix varrho(const std::string& word) { return mat_str(rep_.varrho(parse(word))); }
  StrMatrix rho(int alpha, int beta, const std::string& word) {
    return mat_str(rep_.rho(alpha, beta, rep_.evaluate(parse(word))));
  }
  bool in_gamma(const std::string& word) { return rep_.in_gamma(rep_.evaluate(parse(word))); }
  bool gamma_alpha(const std::string& word, int alpha) {
    return rep_.gamma_alpha(rep_.evaluate(parse(word)), alpha);
  }

  std::pair<bool, std::vector<std::string>> verify_structure() const {
    auto r = model_.verify_structure();
    return {r.ok, r.lines};
  }
  std::pair<bool, std::vector<std::string>> verify_identities(const std::string& word, long ell) {
    auto r = rep_.verify_identities(cat_.evaluate(parse(word)), ell);
    return {r.ok, r.lines};
  }

  std::string certify() {
    SteinbergEngine eng(rep_);
    SteinbergEngine::Result res = eng.run();
    return eng.to_json(res);
  }
  void replay(const std::string& json) { SteinbergEngine::replay(rep_, json); }

 private:
  AutoWord parse(const std::string& word) { return cat_.parse(word); }
  SurfacePresentation pres_;
  CoverSpec spec_;
  HomologyModel model_;
  Catalog cat_;
  Representation rep_;
};

py::dict orientation_info(int r) {
  SurfacePresentation pres(r);
  CoverSpec w1 = CoverSpec::orientation(pres);
  bool kernel_ok = true;
  Word image;
  for (int i = 0; i < 2 * r; ++i) {
    Word pa = p_star(pres, 2 * i), pb = p_star(pres, 2 * i + 1);
    kernel_ok = kernel_ok && w1.in_kernel(pa) && w1.in_kernel(pb);
    image.push_word(commutator(pa, pb));
  }
  bool relator_ok = is_identity(pres, image).proven_identity();

  OrientationSystem ori(pres);
  Catalog cat(pres, CoverSpec::standard(pres, 2, 2));
  std::vector<Endo> gens;
  for (const std::string& name : cat.names()) gens.push_back(cat.get(name).endo);
  auto P = ori.duality_intertwiner(gens);

  py::dict d;
  d["dim"] = ori.model().dim();
  d["pstar_kernel_ok"] = kernel_ok;
  d["pstar_relator_ok"] = relator_ok;
  d["duality_intertwiner"] = P.has_value();
  return d;
}

}  // namespace

PYBIND11_MODULE(_nscover, m) {
  m.doc() = "covering-space representations of mapping class groups of N_{2r+1}";

  py::class_<System>(m, "System")
      .def(py::init<int, int, int>(), py::arg("r"), py::arg("h"), py::arg("k"))
      .def("dim", &System::dim)
      .def("coord_names", &System::coord_names)
      .def("model_json", &System::model_json)
      .def("varrho", &System::varrho, py::arg("word"))
      .def("rho", &System::rho, py::arg("alpha"), py::arg("beta"), py::arg("word"))
      .def("in_gamma", &System::in_gamma, py::arg("word"))
      .def("gamma_alpha", &System::gamma_alpha, py::arg("word"), py::arg("alpha"))
      .def("verify_structure", &System::verify_structure)
      .def("verify_identities", &System::verify_identities, py::arg("word"), py::arg("ell"))
      .def("certify", &System::certify)
      .def("replay", &System::replay, py::arg("json"));

  m.def("orientation_info", &orientation_info, py::arg("r"));
}
