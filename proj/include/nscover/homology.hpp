#pragma once

#include "nscover/linalg.hpp"
#include "nscover/surface.hpp"

namespace nscover {

/// H_1 of the cover attached to a CoverSpec, with coefficients in Q(zeta,eta),
/// built by Reidemeister-Schreier rewriting and exact elimination.
///
/// For the standard table the transversal is {a1^nu b1^mu} and the surviving
/// coordinates are the paper's A, B, D^{nu,mu}; the relation Sum C^{nu,mu} = 0
/// is normalized away by eliminating C^{h-1,k-1}. Any other table falls back
/// to a BFS transversal and raw Schreier-generator coordinates.
class HomologyModel {
 public:
  HomologyModel(const SurfacePresentation& pres, const CoverSpec& spec);

  const SurfacePresentation& pres() const { return pres_; }
  const CoverSpec& spec() const { return spec_; }
  const CycloContext* ctx() const { return ctx_; }
  Cyclo zeta() const { return Cyclo::root_of_unity(ctx_, ctx_->m() / spec_.h); }
  Cyclo eta() const { return Cyclo::root_of_unity(ctx_, ctx_->m() / spec_.k); }

  int dim() const { return dim_; }
  bool standard_mode() const { return standard_; }

  const std::vector<std::string>& coord_names() const { return names_; }
  /// Kernel word whose class is the coordinate's unit vector.
  const std::vector<Word>& coord_words() const { return words_; }
  const Word& transversal(int coset) const { return transversal_[size_t(coset)]; }

  /// Coordinates of q(w); requires v(w) = 0.
  std::vector<Rational> q_map(const Word& w) const;
  std::vector<Cyclo> q_map_cyclo(const Word& w) const;

  /// Column index of the paper coordinate D^{nu,mu} for generator d (a2..c);
  /// -1 for the eliminated C^{h-1,k-1}. Standard mode only.
  int coord_D(int d, int nu, int mu) const;
  int coord_A() const { return standard_ ? 0 : -1; }
  int coord_B() const { return standard_ ? 1 : -1; }
  /// Expression of D^{nu,mu} as a coordinate vector (identity except for the
  /// eliminated class).
  std::vector<Rational> class_D(int d, int nu, int mu) const;

  /// Matrix of the deck action J_1 (axis 1) or J_2 (axis 2) on coordinates.
  const CMat& deck(int axis) const;

  /// Columns = the g-1 classes (A2^,...,Ar^, B2^,...,Br^, C^) of S11 for
  /// labels != (0,0); kernel computation in non-standard mode.
  CMat eigenbasis(int alpha, int beta) const;
  /// dim of the (alpha,beta) simultaneous eigenspace, computed by kernel rank
  /// (independent of the explicit S11 formulas).
  int eigenspace_dim(int alpha, int beta) const;

  struct StructureReport {
    bool ok;
    std::vector<std::string> lines;
  };
  /// Compares the character-dimension profile with Prop. 2.4 (b)/(c).
  StructureReport verify_structure() const;

  std::string to_json() const;

 private:
  void build();
  std::vector<Rational> rewrite(const Word& w) const;  // over Schreier columns
  int schreier_col(int coset, int gen) const { return col_[size_t(coset) * size_t(pres_.gens()) + size_t(gen)]; }

  SurfacePresentation pres_;
  CoverSpec spec_;
  const CycloContext* ctx_;
  bool standard_;
  int dim_ = 0;

  std::vector<Word> transversal_;         // per coset index
  std::vector<int> col_;                  // (coset, gen) -> Schreier column or -1
  std::vector<Word> schreier_words_;      // per Schreier column
  std::vector<std::vector<Rational>> expr_;  // Schreier column -> coordinates
  std::vector<int> kept_;                 // coordinate -> Schreier column
  std::vector<std::string> names_;
  std::vector<Word> words_;
  CMat deck1_, deck2_;
};

}  // namespace nscover
