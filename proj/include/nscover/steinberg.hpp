#pragma once

#include "nscover/representation.hpp"

namespace nscover {

/// Certificate engine replaying the elementary-matrix constructions of the
/// arithmeticity proof: the assertion table A_{i,j} with rules (i)-(v), the
/// Galois-product step, and the production of Gamma^0 witnesses whose varrho
/// values are E_{i,j}(n zeta^ell).
///
/// Witnesses are stored as AutoWords in the catalog generators so the whole
/// certificate can be re-verified from scratch, independently of how it was
/// found.
class SteinbergEngine {
 public:
  struct Assertion {
    int i = 0, j = 0;       // 1-based, 1 <= i != j <= g-1
    AutoWord witness;       // in Gamma(v); varrho(witness) = E_{i,j}(m)
    Integer m;              // nonzero
    std::string rule;       // provenance: seed / rule tag
  };

  struct FamilyWitness {
    int i = 0, j = 0, ell = 0;  // varrho(witness) = E_{i,j}(n zeta^ell)
    AutoWord witness;           // in Gamma^0
  };

  struct Result {
    std::map<std::pair<int, int>, Assertion> table;
    bool table_complete = false;
    std::vector<std::pair<int, int>> pending;  // unproven pairs, if any

    std::vector<Integer> galois_row;  // row s of the Galois product, cols 1..g-1
    Integer nu;                       // its (s, 2s+1) entry, must be nonzero

    Integer n;  // single global scalar of the Gamma^0 family
    std::vector<FamilyWitness> family;

    std::vector<std::string> log;
  };

  explicit SteinbergEngine(Representation& rep);

  /// Verifies the commutator identities the engine relies on, on random
  /// cyclotomic samples: [E_{i,j}(x), E_{j,l}(y)] = E_{i,l}(xy), commutation
  /// of disjoint pairs, additivity, and the two L_i relations.
  static bool steinberg_check(const CycloContext* ctx, int r, unsigned seed, std::string* err);

  /// Full pipeline: seed, close the table, Galois step, concentrate.
  /// Each stage verifies its own output; throws on any mismatch with the
  /// displayed formulas.
  Result run();

  /// T_{i+1}^{-1} R_{i+1} R_{i+2} (1 <= i <= s-1) and its verified varrho value.
  std::pair<AutoWord, CMat> L_element(int i) const;
  /// Word omega in <R1, S1> with varrho(omega^-1 gamma omega) = psi_ell(varrho(gamma)).
  AutoWord galois_word(long ell) const;

  std::string to_json(const Result& res) const;
  /// Re-verifies a serialized certificate against a fresh representation.
  static void replay(Representation& rep, const std::string& json);

 private:
  CMat elem(int i, int j, const Cyclo& z) const;  // 1-based
  CMat elem(int i, int j, const Integer& m) const;
  /// Checks that M = E_{i,j}(c * zeta^ell) for some nonzero integer c.
  Integer expect_elem_zeta(const CMat& M, int i, int j, int ell, const std::string& what) const;
  void prove(Result& res, int i, int j, AutoWord w, Integer m, const std::string& rule);
  void saturate(Result& res);
  AutoWord conj(const AutoWord& gamma, const AutoWord& omega) const {
    return aw_concat(aw_inverse(omega), aw_concat(gamma, omega));
  }

  Representation& rep_;
  int s_, dim_, k_;
  Cyclo zeta_;
};

}  // namespace nscover
