#include "nscover/surface.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace nscover {

SurfacePresentation::SurfacePresentation(int r_) : r(r_), alph(Alphabet::surface(std::max(r_, 1))) {
  if (r < 2) throw std::invalid_argument("presentation needs r >= 2");
  Word rel;
  for (int i = 1; i <= r; ++i)
    rel.push_word(commutator(Word::gen(a(i)), Word::gen(b(i))));
  rel.push_word(Word::gen(c(), -1, 2));
  relator = rel;
}

Word SurfacePresentation::w(int i) const {
  if (i < 1 || i > r - 1) throw std::out_of_range("w_i needs 1 <= i <= r-1");
  Word out = Word::gen(b(i));
  out.push_word(Word::gen(a(i), -1));
  out.push_word(Word::gen(b(i), -1));
  out.push_word(Word::gen(a(i + 1)));
  return out;
}

CoverSpec CoverSpec::standard(const SurfacePresentation& pres, int h, int k) {
  if (h < 1 || k < 1) throw std::invalid_argument("cyclic orders must be >= 1");
  CoverSpec s;
  s.h = h;
  s.k = k;
  s.table.assign(size_t(pres.gens()), GElem{});
  s.table[size_t(pres.a(1))] = s.reduce(1, 0);
  s.table[size_t(pres.b(1))] = s.reduce(0, 1);
  return s;
}

CoverSpec CoverSpec::orientation(const SurfacePresentation& pres) {
  CoverSpec s;
  s.h = 2;
  s.k = 1;
  s.table.assign(size_t(pres.gens()), GElem{});
  s.table[size_t(pres.c())] = {1, 0};
  return s;
}

bool CoverSpec::is_standard(const SurfacePresentation& pres) const {
  return *this == standard(pres, h, k);
}

GElem CoverSpec::v(const Word& w) const {
  long x = 0, y = 0;
  for (Letter l : w.letters()) {
    const GElem& e = table[size_t(letter_gen(l))];
    x += letter_sign(l) * e.x;
    y += letter_sign(l) * e.y;
  }
  return reduce(x, y);
}

bool CoverSpec::surjective() const {
  std::set<std::pair<int, int>> seen;
  std::deque<GElem> queue{GElem{}};
  seen.insert({0, 0});
  while (!queue.empty()) {
    GElem g = queue.front();
    queue.pop_front();
    for (const GElem& t : table) {
      GElem n = add(g, t);
      if (seen.insert({n.x, n.y}).second) queue.push_back(n);
      n = sub(g, t);
      if (seen.insert({n.x, n.y}).second) queue.push_back(n);
    }
  }
  return int(seen.size()) == order();
}

namespace {

std::vector<std::vector<Letter>> relator_rotations(const SurfacePresentation& pres) {
  std::vector<std::vector<Letter>> rots;
  for (const Word& base : {pres.relator, pres.relator.inverse()}) {
    const auto& ls = base.letters();
    int L = int(ls.size());
    for (int s = 0; s < L; ++s) {
      std::vector<Letter> rot(static_cast<size_t>(L));
      for (int i = 0; i < L; ++i) rot[size_t(i)] = ls[size_t((s + i) % L)];
      rots.push_back(std::move(rot));
    }
  }
  std::sort(rots.begin(), rots.end());
  rots.erase(std::unique(rots.begin(), rots.end()), rots.end());
  return rots;
}

// One pass of Dehn's greedy step: replace a subword longer than half a
// relator rotation by the inverse of its complement. Returns true if changed.
bool dehn_step(const std::vector<std::vector<Letter>>& rots, int L, Word* w) {
  const auto& ls = w->letters();
  int n = int(ls.size());
  int need = L / 2 + 1;
  int best_len = 0, best_pos = -1;
  const std::vector<Letter>* best_rot = nullptr;
  for (int pos = 0; pos + need <= n; ++pos) {
    for (const auto& rot : rots) {
      int t = 0;
      int cap = std::min(L, n - pos);
      while (t < cap && ls[size_t(pos + t)] == rot[size_t(t)]) ++t;
      if (t >= need && t > best_len) {
        best_len = t;
        best_pos = pos;
        best_rot = &rot;
      }
    }
  }
  if (!best_rot) return false;
  Word out;
  for (int i = 0; i < best_pos; ++i) out.push(ls[size_t(i)]);
  for (int i = L - 1; i >= best_len; --i) out.push(-(*best_rot)[size_t(i)]);
  for (int i = best_pos + best_len; i < n; ++i) out.push(ls[size_t(i)]);
  *w = out;
  return true;
}

Word dehn_reduce(const std::vector<std::vector<Letter>>& rots, int L, Word w) {
  while (!w.empty() && dehn_step(rots, L, &w)) {
  }
  return w;
}

// Dehn reduction of the conjugacy class: cyclically reduce, then scan the
// doubled word for relator subwords of length > L/2 (possibly wrapping).
Word dehn_reduce_cyclic(const std::vector<std::vector<Letter>>& rots, int L, Word w) {
  int need = L / 2 + 1;
  for (;;) {
    w = w.cyclic_reduce();
    int n = w.size();
    if (n < need) return w;
    const auto& ls = w.letters();
    int found_pos = -1, found_len = 0;
    const std::vector<Letter>* found_rot = nullptr;
    for (int pos = 0; pos < n && found_rot == nullptr; ++pos) {
      for (const auto& rot : rots) {
        int cap = std::min(L, n);
        int t = 0;
        while (t < cap && ls[size_t((pos + t) % n)] == rot[size_t(t)]) ++t;
        if (t >= need) {
          found_pos = pos;
          found_len = t;
          found_rot = &rot;
          break;
        }
      }
    }
    if (!found_rot) return w;
    // rotate so the match is a prefix, then swap it for the shorter complement
    Word out;
    for (int i = L - 1; i >= found_len; --i) out.push(-(*found_rot)[size_t(i)]);
    for (int i = found_len; i < n; ++i) out.push(ls[size_t((found_pos + i) % n)]);
    w = out;
  }
}

// Longest common prefix over distinct elements of the symmetrized relator
// set; the relator satisfies C'(1/6) iff this stays below L/6, and then
// Greendlinger makes the cyclic Dehn pass a complete decision procedure.
int max_piece_length(const std::vector<std::vector<Letter>>& rots) {
  int best = 0;
  for (size_t i = 0; i < rots.size(); ++i)
    for (size_t j = i + 1; j < rots.size(); ++j) {
      int t = 0;
      int cap = int(std::min(rots[i].size(), rots[j].size()));
      while (t < cap && rots[i][size_t(t)] == rots[j][size_t(t)]) ++t;
      best = std::max(best, t);
    }
  return best;
}

}  // namespace

IdentityCertificate is_identity(const SurfacePresentation& pres, const Word& w, int search_depth) {
  IdentityCertificate cert{IdentityStatus::Inconclusive, {}};
  auto rots = relator_rotations(pres);
  int L = pres.relator.size();

  Word reduced = dehn_reduce_cyclic(rots, L, dehn_reduce(rots, L, w));
  if (reduced.empty()) {
    cert.status = IdentityStatus::ProvenIdentity;
    cert.trace.push_back("dehn-greedy: reduced to the empty word");
    return cert;
  }

  // Homomorphic invariants: pi^ab = Z^2r (+) Z/2 with c the torsion class.
  for (int i = 1; i <= pres.r; ++i) {
    if (w.exponent_sum(pres.a(i)) != 0 || w.exponent_sum(pres.b(i)) != 0) {
      cert.status = IdentityStatus::ProvenNonIdentity;
      cert.trace.push_back("abelianization: nonzero exponent sum at index " + std::to_string(i));
      return cert;
    }
  }
  if (w.exponent_sum(pres.c()) % 2 != 0) {
    cert.status = IdentityStatus::ProvenNonIdentity;
    cert.trace.push_back("abelianization: odd exponent sum of c");
    return cert;
  }

  // When the relator is C'(1/6), Greendlinger's lemma promises every
  // nontrivial trivial-in-pi word a relator subword of length > L/2, so a
  // nonempty cyclic Dehn residue settles the question.
  if (6 * max_piece_length(rots) < L) {
    cert.status = IdentityStatus::ProvenNonIdentity;
    cert.trace.push_back("small cancellation: C'(1/6) holds and the Dehn residue has length " +
                         std::to_string(reduced.size()));
    return cert;
  }

  // Bounded relator-insertion search from the greedy-reduced word.
  if (reduced.size() <= 240) {
    struct Node {
      Word w;
      int depth;
    };
    std::deque<Node> queue{{reduced, 0}};
    std::set<std::vector<Letter>> seen{reduced.letters()};
    long expansions = 0;
    while (!queue.empty() && expansions < 20000) {
      Node node = queue.front();
      queue.pop_front();
      if (node.depth >= search_depth) continue;
      const auto& ls = node.w.letters();
      for (int pos = 0; pos <= int(ls.size()); ++pos) {
        for (const auto& rot : rots) {
          ++expansions;
          Word cand;
          for (int i = 0; i < pos; ++i) cand.push(ls[size_t(i)]);
          for (Letter l : rot) cand.push(l);
          for (int i = pos; i < int(ls.size()); ++i) cand.push(ls[size_t(i)]);
          cand = dehn_reduce(rots, L, cand);
          if (cand.empty()) {
            cert.status = IdentityStatus::ProvenIdentity;
            cert.trace.push_back("insertion search: depth " + std::to_string(node.depth + 1));
            return cert;
          }
          if (cand.size() <= reduced.size() + L && seen.insert(cand.letters()).second)
            queue.push_back({cand, node.depth + 1});
        }
      }
    }
  }

  cert.trace.push_back("undecided: greedy residue of length " + std::to_string(reduced.size()));
  return cert;
}

IdentityCertificate validate_endo(const SurfacePresentation& pres, const Endo& phi) {
  if (phi.rank() != pres.gens()) throw std::invalid_argument("endomorphism rank mismatch");
  return is_identity(pres, phi.apply(pres.relator));
}

std::optional<std::pair<GElem, GElem>> preserves_U(const SurfacePresentation& pres,
                                                   const CoverSpec& spec, const Endo& phi) {
  // chi is determined by images of (1,0) and (0,1); G is small, enumerate.
  std::vector<GElem> vphi;
  for (int g = 0; g < pres.gens(); ++g) vphi.push_back(spec.v(phi.images[size_t(g)]));
  for (int i1 = 0; i1 < spec.order(); ++i1) {
    GElem im1 = spec.element(i1);
    if (!spec.reduce(long(spec.h) * im1.x, long(spec.h) * im1.y).is_zero()) continue;
    for (int i2 = 0; i2 < spec.order(); ++i2) {
      GElem im2 = spec.element(i2);
      if (!spec.reduce(long(spec.k) * im2.x, long(spec.k) * im2.y).is_zero()) continue;
      auto chi = [&](GElem g) {
        return spec.reduce(long(g.x) * im1.x + long(g.y) * im2.x,
                           long(g.x) * im1.y + long(g.y) * im2.y);
      };
      bool ok = true;
      for (int g = 0; g < pres.gens() && ok; ++g)
        ok = chi(spec.table[size_t(g)]) == vphi[size_t(g)];
      if (!ok) continue;
      // must be a bijection of G
      std::set<std::pair<int, int>> image;
      for (int e = 0; e < spec.order(); ++e) {
        GElem im = chi(spec.element(e));
        image.insert({im.x, im.y});
      }
      if (int(image.size()) == spec.order()) return std::make_pair(im1, im2);
    }
  }
  return std::nullopt;
}

Word p_star(const SurfacePresentation& pres, int idx) {
  int r = pres.r;
  int g2 = 4 * r;
  if (idx < 0 || idx >= g2) throw std::out_of_range("p_star index out of range");
  int i = idx / 2 + 1;       // 1-based index into a_i / b_i of Sigma_{2r}
  bool is_b = (idx % 2) == 1;
  if (i <= r) return Word::gen(is_b ? pres.b(i) : pres.a(i));

  int ip = 2 * r + 1 - i;  // 1 <= ip <= r
  if (!is_b) {
    // (c b_r ... b_{ip+1}) [a_{ip+1},b_{ip+1}]...[a_r,b_r] c^-2 b_ip a_ip^-1 b_ip^-1 (...)^-1
    Word pre = Word::gen(pres.c());
    for (int j = r; j >= ip + 1; --j) pre.push_word(Word::gen(pres.b(j)));
    Word mid;
    for (int j = ip + 1; j <= r; ++j)
      mid.push_word(commutator(Word::gen(pres.a(j)), Word::gen(pres.b(j))));
    mid.push_word(Word::gen(pres.c(), -1, 2));
    mid.push_word(Word::gen(pres.b(ip)));
    mid.push_word(Word::gen(pres.a(ip), -1));
    mid.push_word(Word::gen(pres.b(ip), -1));
    Word out = pre;
    out.push_word(mid);
    out.push_inverse(pre);
    return out;
  }
  // (c b_r ... b_ip a_ip) b_ip (...)^-1
  Word pre = Word::gen(pres.c());
  for (int j = r; j >= ip; --j) pre.push_word(Word::gen(pres.b(j)));
  pre.push_word(Word::gen(pres.a(ip)));
  Word out = pre;
  out.push_word(Word::gen(pres.b(ip)));
  out.push_inverse(pre);
  return out;
}

}  // namespace nscover
