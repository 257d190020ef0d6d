#pragma once

#include <optional>
#include <utility>

#include "nscover/word.hpp"

namespace nscover {

/// pi_1(N_{2r+1}) = < a1,b1,...,ar,br,c | [a1,b1]...[ar,br] c^-2 >
struct SurfacePresentation {
  int r;
  Alphabet alph;
  Word relator;

  explicit SurfacePresentation(int r);

  int gens() const { return 2 * r + 1; }
  int a(int i) const { return 2 * (i - 1); }      // 1-based
  int b(int i) const { return 2 * (i - 1) + 1; }  // 1-based
  int c() const { return 2 * r; }

  /// w_i = b_i a_i^-1 b_i^-1 a_{i+1}, 1 <= i <= r-1.
  Word w(int i) const;
};

/// Element of G = Z/h x Z/k.
struct GElem {
  int x = 0, y = 0;
  bool operator==(const GElem& o) const { return x == o.x && y == o.y; }
  bool is_zero() const { return x == 0 && y == 0; }
};

/// Homomorphism v: pi -> Z/h x Z/k given by a generator exponent table.
struct CoverSpec {
  int h = 1, k = 1;
  std::vector<GElem> table;  // one entry per generator

  /// a1 -> (1,0), b1 -> (0,1), others -> 0.
  static CoverSpec standard(const SurfacePresentation& pres, int h, int k);
  /// a_i, b_i -> 0, c -> (1,0) with h = 2, k = 1.
  static CoverSpec orientation(const SurfacePresentation& pres);

  bool is_standard(const SurfacePresentation& pres) const;
  bool operator==(const CoverSpec& o) const { return h == o.h && k == o.k && table == o.table; }

  GElem reduce(long x, long y) const {
    int xr = int(((x % h) + h) % h), yr = int(((y % k) + k) % k);
    return {xr, yr};
  }
  GElem add(GElem a, GElem b) const { return reduce(long(a.x) + b.x, long(a.y) + b.y); }
  GElem sub(GElem a, GElem b) const { return reduce(long(a.x) - b.x, long(a.y) - b.y); }
  int order() const { return h * k; }
  int index(GElem g) const { return g.x + h * g.y; }
  GElem element(int idx) const { return {idx % h, idx / h}; }

  GElem v(const Word& w) const;
  bool in_kernel(const Word& w) const { return v(w).is_zero(); }
  /// v must be onto Z/h x Z/k.
  bool surjective() const;
};

/// Verdict of the word-problem routine; a certificate, not a guess.
enum class IdentityStatus { ProvenIdentity, ProvenNonIdentity, Inconclusive };

struct IdentityCertificate {
  IdentityStatus status;
  std::vector<std::string> trace;
  bool proven_identity() const { return status == IdentityStatus::ProvenIdentity; }
};

/// Decides w = 1 in pi: Dehn-style greedy reduction, then bounded
/// relator-insertion search, then homomorphic invariants.
IdentityCertificate is_identity(const SurfacePresentation& pres, const Word& w, int search_depth = 6);

/// Certificate that phi(relator) = 1 in pi.
IdentityCertificate validate_endo(const SurfacePresentation& pres, const Endo& phi);

/// The automorphism chi of G with chi o v = v o phi, when it exists.
std::optional<std::pair<GElem, GElem>> preserves_U(const SurfacePresentation& pres,
                                                   const CoverSpec& spec, const Endo& phi);

inline bool in_gamma_v(const SurfacePresentation& pres, const CoverSpec& spec, const Endo& phi) {
  for (int g = 0; g < pres.gens(); ++g)
    if (!(spec.v(phi.images[size_t(g)]) == spec.table[size_t(g)])) return false;
  return true;
}

/// p_*: pi_1(Sigma_2r) -> pi, explicit generator images.
/// idx indexes the orientable alphabet (Alphabet::orientable(2r)).
Word p_star(const SurfacePresentation& pres, int idx);

}  // namespace nscover
