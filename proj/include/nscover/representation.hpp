#pragma once

#include <map>

#include "nscover/catalog.hpp"
#include "nscover/homology.hpp"

namespace nscover {

/// Action of a U-preserving automorphism on H_1 of the cover: the full matrix
/// in model coordinates plus the label permutation induced by chi.
struct InducedMap {
  CMat M;
  GElem chi1, chi2;  // chi(1,0), chi(0,1)
};

/// The per-eigenspace form of an induced map: block[l] maps H^l to
/// H^{perm[l]} in the fixed eigenbases. Composition is (a*b).block[l] =
/// a.block[b.perm[l]] * b.block[l].
struct RepData {
  std::vector<int> perm;   // by label index (spec.index)
  std::vector<CMat> block;
};

/// The representations rho^{alpha,beta} of S13 and varrho of S27 over one
/// homology model, with cached eigenbases and per-generator matrices.
class Representation {
 public:
  explicit Representation(const HomologyModel& model, Catalog& catalog);

  const HomologyModel& model() const { return model_; }
  Catalog& catalog() const { return cat_; }
  int label(int alpha, int beta) const {
    return model_.spec().index(model_.spec().reduce(alpha, beta));
  }
  int block_size(int lab) const { return bases_[size_t(lab)].cols(); }
  const CMat& basis(int lab) const { return bases_[size_t(lab)]; }

  InducedMap induced(const Endo& phi) const;
  RepData rep_data(const Endo& phi) const;

  /// Matrix-level evaluation; every factor must preserve U.
  RepData evaluate(const AutoWord& w) const;
  RepData rep_mul(const RepData& a, const RepData& b) const;
  RepData rep_pow(const RepData& d, long e) const;
  RepData rep_identity() const;
  bool in_gamma(const RepData& d) const;  // label permutation is trivial

  CMat rho(int alpha, int beta, const RepData& d) const;
  CMat rho(int alpha, int beta, const Endo& phi) const { return rho(alpha, beta, rep_data(phi)); }

  /// S27: conjugation of the (0,1) block by E_{g-1,r-1}.
  CMat varrho(const RepData& d) const;
  CMat varrho(const AutoWord& w) const { return varrho(evaluate(w)); }

  /// S19 components: rho^{alpha,1} for alpha in Z/k (h = k only).
  std::vector<CMat> rho_product(const RepData& d) const;
  bool is_concentrated(const RepData& d, int alpha) const;
  bool gamma_alpha(const RepData& d, int alpha) const;

  struct Report {
    bool ok = true;
    std::vector<std::string> lines;
    void fail(const std::string& s) {
      ok = false;
      lines.push_back("FAIL " + s);
    }
    void pass(const std::string& s) { lines.push_back("ok   " + s); }
  };
  /// S23, S24 (word-level conjugation by S1, R1) and S25 (Galois) on phi.
  Report verify_identities(const Endo& phi, long ell) const;

 private:
  const HomologyModel& model_;
  Catalog& cat_;
  std::vector<CMat> bases_;  // per label index; kernel basis at (0,0)
  mutable std::map<std::string, RepData> cache_;
};

/// rho^+/rho^- of the orientation cover (paragraph 2.2) for one automorphism.
struct OrientationReps {
  CMat plus;   // on H^+ (trivial character)
  CMat minus;  // on H^-
};

class OrientationSystem {
 public:
  explicit OrientationSystem(const SurfacePresentation& pres);
  const HomologyModel& model() const { return model_; }
  OrientationReps reps(const Endo& phi) const;
  /// Invertible P with minus = P * transpose(plus)^-1 * P^-1 simultaneously
  /// for all given automorphisms; realizes "rho^- is dual to rho^+".
  std::optional<CMat> duality_intertwiner(const std::vector<Endo>& phis) const;

 private:
  SurfacePresentation pres_;
  HomologyModel model_;
  CMat basis_plus_, basis_minus_;
};

}  // namespace nscover
