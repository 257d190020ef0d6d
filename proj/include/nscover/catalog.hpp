#pragma once

#include <map>
#include <optional>

#include "nscover/surface.hpp"

namespace nscover {

struct NamedAuto {
  std::string name;
  Endo endo;
  Endo inv;
};

/// One factor of an automorphism word: catalog name and nonzero exponent.
struct AutoFactor {
  std::string name;
  long exp = 1;
  bool operator==(const AutoFactor& o) const { return name == o.name && exp == o.exp; }
};
using AutoWord = std::vector<AutoFactor>;

AutoWord aw_inverse(const AutoWord& w);
AutoWord aw_concat(const AutoWord& a, const AutoWord& b);
AutoWord aw_commutator(const AutoWord& a, const AutoWord& b);
/// w repeated n times (n may be negative); single factors just scale their exponent.
AutoWord aw_power(const AutoWord& w, long n);
std::string aw_str(const AutoWord& w);
inline AutoWord aw(const std::string& name, long exp = 1) { return {{name, exp}}; }

/// The generator catalog of the mapping class group action:
/// R_i, S_i (1<=i<=r), T_i (1<=i<=r-1), Y, V = T1^k (h = k), W, and inner(w).
class Catalog {
 public:
  Catalog(const SurfacePresentation& pres, const CoverSpec& spec);

  const SurfacePresentation& pres() const { return pres_; }
  const CoverSpec& spec() const { return spec_; }

  bool has(const std::string& name) const { return table_.count(name) > 0; }
  const NamedAuto& get(const std::string& name) const;
  /// Registers (or returns) the inner automorphism by w.
  const NamedAuto& inner(const Word& w);
  std::vector<std::string> names() const;

  /// Left-to-right composition; negative exponents via catalog inverses.
  Endo evaluate(const AutoWord& w) const;

  /// Grammar: factors `R1 S3 T2 Y V W inner(a1 b1^-1)` with optional `*`
  /// separators and `^n` powers. Throws with a position on syntax errors.
  AutoWord parse(const std::string& text);

 private:
  void add(const std::string& name, Endo endo, Endo inv);
  SurfacePresentation pres_;
  CoverSpec spec_;
  std::map<std::string, NamedAuto> table_;
};

/// Inverts an endomorphism of a free group by greedy Nielsen reduction on the
/// image tuple; nullopt if the tuple does not reduce to a signed permutation
/// of the generators.
std::optional<Endo> invert_free_endo(const Endo& f);

}  // namespace nscover
