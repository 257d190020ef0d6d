#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nscover {

// A letter is a generator index with a sign: +(g+1) or -(g+1).
using Letter = int32_t;

inline Letter make_letter(int gen, int sign) {
  return sign > 0 ? Letter(gen + 1) : Letter(-(gen + 1));
}
inline int letter_gen(Letter l) { return (l > 0 ? l : -l) - 1; }
inline int letter_sign(Letter l) { return l > 0 ? 1 : -1; }

/// Ordered generator alphabet with serialization-stable names.
struct Alphabet {
  std::vector<std::string> names;

  int size() const { return int(names.size()); }
  int index_of(const std::string& name) const;

  /// a1,b1,...,ar,br,c  (fundamental group of N_{2r+1})
  static Alphabet surface(int r);
  /// a1,b1,...,ag,bg    (fundamental group of Sigma_g)
  static Alphabet orientable(int g);
};

/// Freely reduced word in a free group. The empty word is the identity.
class Word {
 public:
  Word() = default;

  // Appends with cancellation; the word stays reduced.
  void push(Letter l);
  void push_word(const Word& w);
  void push_inverse(const Word& w);

  static Word from_letters(const std::vector<Letter>& ls);
  static Word gen(int g, int sign = 1, int power = 1);

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  bool operator==(const Word& rhs) const { return ls_ == rhs.ls_; }

  int size() const { return int(ls_.size()); }
  bool empty() const { return ls_.empty(); }
  const std::vector<Letter>& letters() const { return ls_; }
  Letter operator[](int i) const { return ls_[size_t(i)]; }

  /// Exponent sum of generator g.
  long exponent_sum(int g) const;

  /// Cyclic reduction; returns the conjugator u with *this = u * core * u^-1.
  Word cyclic_reduce(Word* conjugator = nullptr) const;

  /// Whitespace-separated tokens "a1 b1^-1 c a2^3"; identity is "e".
  static Word parse(const Alphabet& alph, const std::string& text);
  std::string str(const Alphabet& alph) const;

 private:
  std::vector<Letter> ls_;
};

Word commutator(const Word& u, const Word& v);

/// Endomorphism of a free group given by generator images.
struct Endo {
  std::vector<Word> images;  // one per generator

  int rank() const { return int(images.size()); }
  static Endo identity(int n);
  /// x -> w x w^-1 for every generator x.
  static Endo inner(const Word& w, int n);

  Word apply(const Word& w) const;
  bool operator==(const Endo& rhs) const { return images == rhs.images; }
};

/// (f o g)(x) = f(g(x)).
Endo compose(const Endo& f, const Endo& g);
/// f^k by iterated composition, k >= 0.
Endo endo_power(const Endo& f, int k);

}  // namespace nscover
