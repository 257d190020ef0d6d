#include "nscover/catalog.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace nscover {

AutoWord aw_inverse(const AutoWord& w) {
  AutoWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->name, -it->exp});
  return out;
}

AutoWord aw_concat(const AutoWord& a, const AutoWord& b) {
  AutoWord out = a;
  for (const auto& f : b) {
    if (!out.empty() && out.back().name == f.name) {
      out.back().exp += f.exp;
      if (out.back().exp == 0) out.pop_back();
      continue;
    }
    out.push_back(f);
  }
  return out;
}

AutoWord aw_commutator(const AutoWord& a, const AutoWord& b) {
  return aw_concat(aw_concat(a, b), aw_concat(aw_inverse(a), aw_inverse(b)));
}

AutoWord aw_power(const AutoWord& w, long n) {
  if (n == 0) return {};
  if (w.size() == 1) return {{w[0].name, w[0].exp * n}};
  AutoWord base = n < 0 ? aw_inverse(w) : w;
  long cnt = n < 0 ? -n : n;
  AutoWord out;
  for (long i = 0; i < cnt; ++i) out = aw_concat(out, base);
  return out;
}

std::string aw_str(const AutoWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& f : w) {
    if (!out.empty()) out += " * ";
    out += f.name;
    if (f.exp != 1) out += "^" + std::to_string(f.exp);
  }
  return out;
}

std::optional<Endo> invert_free_endo(const Endo& f) {
  int n = f.rank();

  // best-first search over Nielsen moves on the image tuple; strict greedy
  // descent is not enough (plateaus occur), so plateau moves are explored too
  struct State {
    std::vector<Word> u;
    int parent;
    Endo move;  // F_parent o move has images u
  };
  auto total = [](const std::vector<Word>& t) {
    long s = 0;
    for (const auto& w : t) s += w.size();
    return s;
  };
  auto key = [](const std::vector<Word>& t) {
    std::vector<std::vector<Letter>> k;
    for (const auto& w : t) k.push_back(w.letters());
    return k;
  };

  // only generators touched by f (closed under the letters of their images)
  // participate in moves; everything else is fixed throughout
  std::vector<int> support;
  {
    std::vector<bool> in(size_t(n), false);
    for (int i = 0; i < n; ++i)
      if (!(f.images[size_t(i)] == Word::gen(i))) in[size_t(i)] = true;
    for (bool grew = true; grew;) {
      grew = false;
      for (int i = 0; i < n; ++i)
        if (in[size_t(i)])
          for (Letter l : f.images[size_t(i)].letters())
            if (!in[size_t(letter_gen(l))]) {
              in[size_t(letter_gen(l))] = true;
              grew = true;
            }
    }
    for (int i = 0; i < n; ++i)
      if (in[size_t(i)]) support.push_back(i);
  }

  std::vector<State> states{{f.images, -1, Endo::identity(n)}};
  std::set<std::vector<std::vector<Letter>>> seen{key(f.images)};
  using QEntry = std::pair<long, int>;  // (total length, state index)
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> queue;
  queue.push({total(f.images), 0});

  int goal = -1;
  long expansions = 0;
  while (!queue.empty() && expansions < 20000) {
    int idx = queue.top().second;
    queue.pop();
    std::vector<Word> u = states[size_t(idx)].u;
    bool basis = true;
    for (int i : support)
      if (u[size_t(i)].size() != 1) basis = false;
    if (basis) {
      goal = idx;
      break;
    }
    ++expansions;
    auto visit = [&](std::vector<Word>&& nu, Endo&& m) {
      if (!seen.insert(key(nu)).second) return;
      states.push_back({std::move(nu), idx, std::move(m)});
      queue.push({total(states.back().u), int(states.size()) - 1});
    };
    for (int i : support) {
      {
        std::vector<Word> nu = u;
        nu[size_t(i)] = u[size_t(i)].inverse();
        Endo m = Endo::identity(n);
        m.images[size_t(i)] = Word::gen(i, -1);
        visit(std::move(nu), std::move(m));
      }
      for (int j : support) {
        if (i == j) continue;
        for (int s : {1, -1}) {
          for (bool left : {false, true}) {
            Word other = s > 0 ? u[size_t(j)] : u[size_t(j)].inverse();
            Word cand = left ? other * u[size_t(i)] : u[size_t(i)] * other;
            if (cand.size() > u[size_t(i)].size()) continue;  // never grow
            std::vector<Word> nu = u;
            nu[size_t(i)] = cand;
            Endo m = Endo::identity(n);
            m.images[size_t(i)] =
                left ? Word::gen(j, s) * Word::gen(i) : Word::gen(i) * Word::gen(j, s);
            visit(std::move(nu), std::move(m));
          }
        }
      }
    }
  }
  if (goal < 0) return std::nullopt;

  // final tuple is a signed permutation of the generators
  const std::vector<Word>& u = states[size_t(goal)].u;
  std::vector<int> hit(size_t(n), 0);
  Endo perm_inv = Endo::identity(n);
  for (int i = 0; i < n; ++i) {
    if (u[size_t(i)].size() != 1) return std::nullopt;
    Letter l = u[size_t(i)][0];
    int g = letter_gen(l);
    if (hit[size_t(g)]++) return std::nullopt;
    perm_inv.images[size_t(g)] = Word::gen(i, letter_sign(l));
  }
  // F o m_1 o ... o m_t = P, hence F^-1 = m_1 o ... o m_t o P^-1
  Endo inv = perm_inv;
  for (int idx = goal; states[size_t(idx)].parent >= 0; idx = states[size_t(idx)].parent)
    inv = compose(states[size_t(idx)].move, inv);
  return inv;
}

Catalog::Catalog(const SurfacePresentation& pres, const CoverSpec& spec)
    : pres_(pres), spec_(spec) {
  int r = pres.r;
  int n = pres.gens();
  for (int i = 1; i <= r; ++i) {
    Endo e = Endo::identity(n), inv = Endo::identity(n);
    e.images[size_t(pres.b(i))] = Word::gen(pres.b(i)) * Word::gen(pres.a(i));
    inv.images[size_t(pres.b(i))] = Word::gen(pres.b(i)) * Word::gen(pres.a(i), -1);
    add("R" + std::to_string(i), e, inv);
  }
  for (int i = 1; i <= r; ++i) {
    Endo e = Endo::identity(n), inv = Endo::identity(n);
    e.images[size_t(pres.a(i))] = Word::gen(pres.a(i)) * Word::gen(pres.b(i), -1);
    inv.images[size_t(pres.a(i))] = Word::gen(pres.a(i)) * Word::gen(pres.b(i));
    add("S" + std::to_string(i), e, inv);
  }
  for (int i = 1; i <= r - 1; ++i) {
    Word w = pres.w(i);
    Word wi = w.inverse();
    Endo e = Endo::identity(n), inv = Endo::identity(n);
    e.images[size_t(pres.b(i))] = wi * Word::gen(pres.b(i));
    e.images[size_t(pres.a(i + 1))] = wi * Word::gen(pres.a(i + 1)) * w;
    e.images[size_t(pres.b(i + 1))] = Word::gen(pres.b(i + 1)) * w;
    inv.images[size_t(pres.b(i))] = w * Word::gen(pres.b(i));
    inv.images[size_t(pres.a(i + 1))] = w * Word::gen(pres.a(i + 1)) * wi;
    inv.images[size_t(pres.b(i + 1))] = Word::gen(pres.b(i + 1)) * wi;
    add("T" + std::to_string(i), e, inv);
  }
  {
    int a = pres.a(r), b = pres.b(r), c = pres.c();
    auto G = [](int g, int s = 1) { return Word::gen(g, s); };
    Endo e = Endo::identity(n);
    e.images[size_t(a)] =
        G(b, -1) * G(c, -1) * G(b) * G(a, -1) * G(b, -1) * G(c, -1) * G(b);
    e.images[size_t(b)] =
        G(b, -1) * G(c) * G(b) * G(a) * G(b) * G(a, -1) * G(b, -1) * G(c, -1) * G(b);
    e.images[size_t(c)] =
        G(c) * G(c) * G(b) * G(a) * G(b, -1) * G(a, -1) * G(b, -1) * G(c, -1) * G(b);
    auto inv = invert_free_endo(e);
    if (!inv) throw std::logic_error("failed to invert Y by Nielsen reduction");
    add("Y", e, *inv);
  }
  if (spec.h == spec.k && spec.k >= 2) {
    const NamedAuto& t1 = get("T1");
    add("V", endo_power(t1.endo, spec.k), endo_power(t1.inv, spec.k));
  }
  {
    Endo p = Endo::identity(n), pinv = Endo::identity(n);
    for (int i = 1; i <= r - 1; ++i) {
      p = compose(p, compose(get("S" + std::to_string(i)).endo, get("T" + std::to_string(i)).endo));
    }
    for (int i = r - 1; i >= 1; --i) {
      pinv = compose(pinv, compose(get("T" + std::to_string(i)).inv, get("S" + std::to_string(i)).inv));
    }
    const NamedAuto& y = get("Y");
    add("W", compose(p, compose(y.endo, pinv)), compose(p, compose(y.inv, pinv)));
  }
}

void Catalog::add(const std::string& name, Endo endo, Endo inv) {
  table_.emplace(name, NamedAuto{name, std::move(endo), std::move(inv)});
}

const NamedAuto& Catalog::get(const std::string& name) const {
  auto it = table_.find(name);
  if (it == table_.end()) throw std::invalid_argument("unknown automorphism '" + name + "'");
  return it->second;
}

const NamedAuto& Catalog::inner(const Word& w) {
  std::string name = "inner(" + w.str(pres_.alph) + ")";
  auto it = table_.find(name);
  if (it == table_.end()) {
    Endo e = Endo::inner(w, pres_.gens());
    Endo inv = Endo::inner(w.inverse(), pres_.gens());
    it = table_.emplace(name, NamedAuto{name, std::move(e), std::move(inv)}).first;
  }
  return it->second;
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : table_) out.push_back(k);
  return out;
}

Endo Catalog::evaluate(const AutoWord& w) const {
  Endo out = Endo::identity(pres_.gens());
  for (const auto& f : w) {
    const NamedAuto& a = get(f.name);
    const Endo& base = f.exp > 0 ? a.endo : a.inv;
    long cnt = f.exp > 0 ? f.exp : -f.exp;
    for (long i = 0; i < cnt; ++i) out = compose(out, base);
  }
  return out;
}

AutoWord Catalog::parse(const std::string& text) {
  AutoWord out;
  size_t pos = 0;
  auto skip = [&]() {
    while (pos < text.size() && (std::isspace((unsigned char)text[pos]) || text[pos] == '*')) ++pos;
  };
  skip();
  while (pos < text.size()) {
    size_t start = pos;
    std::string name;
    while (pos < text.size() && (std::isalnum((unsigned char)text[pos]) || text[pos] == '_')) ++pos;
    name = text.substr(start, pos - start);
    if (name.empty())
      throw std::invalid_argument("syntax error at position " + std::to_string(pos));
    if (name == "inner") {
      if (pos >= text.size() || text[pos] != '(')
        throw std::invalid_argument("expected '(' after inner at position " + std::to_string(pos));
      size_t close = text.find(')', pos);
      if (close == std::string::npos)
        throw std::invalid_argument("unterminated inner(...) at position " + std::to_string(start));
      Word w = Word::parse(pres_.alph, text.substr(pos + 1, close - pos - 1));
      name = inner(w).name;
      pos = close + 1;
    } else if (!has(name)) {
      throw std::invalid_argument("unknown automorphism '" + name + "' at position " +
                                  std::to_string(start));
    }
    long exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      size_t estart = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
      if (pos == estart)
        throw std::invalid_argument("missing exponent at position " + std::to_string(estart));
      exp = std::stol(text.substr(estart, pos - estart));
      if (exp == 0)
        throw std::invalid_argument("zero exponent at position " + std::to_string(estart));
    }
    out.push_back({name, exp});
    skip();
  }
  return out;
}

}  // namespace nscover
