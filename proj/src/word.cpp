#include "nscover/word.hpp"

#include <sstream>

namespace nscover {

int Alphabet::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[size_t(i)] == name) return i;
  throw std::invalid_argument("unknown generator '" + name + "'");
}

Alphabet Alphabet::surface(int r) {
  if (r < 1) throw std::invalid_argument("surface alphabet needs r >= 1");
  Alphabet a;
  for (int i = 1; i <= r; ++i) {
    a.names.push_back("a" + std::to_string(i));
    a.names.push_back("b" + std::to_string(i));
  }
  a.names.push_back("c");
  return a;
}

Alphabet Alphabet::orientable(int g) {
  if (g < 1) throw std::invalid_argument("orientable alphabet needs g >= 1");
  Alphabet a;
  for (int i = 1; i <= g; ++i) {
    a.names.push_back("a" + std::to_string(i));
    a.names.push_back("b" + std::to_string(i));
  }
  return a;
}

void Word::push(Letter l) {
  if (!ls_.empty() && ls_.back() == -l)
    ls_.pop_back();
  else
    ls_.push_back(l);
}

void Word::push_word(const Word& w) {
  for (Letter l : w.ls_) push(l);
}

void Word::push_inverse(const Word& w) {
  for (auto it = w.ls_.rbegin(); it != w.ls_.rend(); ++it) push(-*it);
}

Word Word::from_letters(const std::vector<Letter>& ls) {
  Word w;
  for (Letter l : ls) w.push(l);
  return w;
}

Word Word::gen(int g, int sign, int power) {
  Word w;
  if (power < 0) {
    sign = -sign;
    power = -power;
  }
  for (int i = 0; i < power; ++i) w.push(make_letter(g, sign));
  return w;
}

Word Word::inverse() const {
  Word w;
  w.ls_.reserve(ls_.size());
  for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) w.ls_.push_back(-*it);
  return w;
}

Word Word::operator*(const Word& rhs) const {
  Word w = *this;
  w.push_word(rhs);
  return w;
}

long Word::exponent_sum(int g) const {
  long s = 0;
  for (Letter l : ls_)
    if (letter_gen(l) == g) s += letter_sign(l);
  return s;
}

Word Word::cyclic_reduce(Word* conjugator) const {
  size_t lo = 0, hi = ls_.size();
  while (hi - lo >= 2 && ls_[lo] == -ls_[hi - 1]) {
    ++lo;
    --hi;
  }
  if (conjugator) {
    Word u;
    for (size_t i = 0; i < lo; ++i) u.push(ls_[i]);
    *conjugator = u;
  }
  Word core;
  for (size_t i = lo; i < hi; ++i) core.push(ls_[i]);
  return core;
}

Word Word::parse(const Alphabet& alph, const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    long power = 1;
    std::string name = tok;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      try {
        power = std::stol(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in token '" + tok + "'");
      }
    }
    int g = alph.index_of(name);
    int sign = power >= 0 ? 1 : -1;
    for (long i = 0; i < std::labs(power); ++i) w.push(make_letter(g, sign));
  }
  return w;
}

std::string Word::str(const Alphabet& alph) const {
  if (ls_.empty()) return "e";
  std::string out;
  size_t i = 0;
  while (i < ls_.size()) {
    size_t j = i;
    while (j < ls_.size() && ls_[j] == ls_[i]) ++j;
    long power = long(j - i) * letter_sign(ls_[i]);
    if (!out.empty()) out += ' ';
    out += alph.names[size_t(letter_gen(ls_[i]))];
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

Word commutator(const Word& u, const Word& v) {
  Word w = u;
  w.push_word(v);
  w.push_inverse(u);
  w.push_inverse(v);
  return w;
}

Endo Endo::identity(int n) {
  Endo e;
  for (int g = 0; g < n; ++g) e.images.push_back(Word::gen(g));
  return e;
}

Endo Endo::inner(const Word& w, int n) {
  Endo e;
  for (int g = 0; g < n; ++g) {
    Word img = w;
    img.push(make_letter(g, 1));
    img.push_inverse(w);
    e.images.push_back(img);
  }
  return e;
}

Word Endo::apply(const Word& w) const {
  Word out;
  for (Letter l : w.letters()) {
    const Word& img = images[size_t(letter_gen(l))];
    if (letter_sign(l) > 0)
      out.push_word(img);
    else
      out.push_inverse(img);
  }
  return out;
}

Endo compose(const Endo& f, const Endo& g) {
  if (f.rank() != g.rank()) throw std::invalid_argument("rank mismatch in compose");
  Endo out;
  out.images.reserve(size_t(g.rank()));
  for (const Word& img : g.images) out.images.push_back(f.apply(img));
  return out;
}

Endo endo_power(const Endo& f, int k) {
  if (k < 0) throw std::invalid_argument("endo_power needs k >= 0");
  Endo out = Endo::identity(f.rank());
  for (int i = 0; i < k; ++i) out = compose(f, out);
  return out;
}

}  // namespace nscover
