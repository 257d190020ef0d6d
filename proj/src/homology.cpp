#include "nscover/homology.hpp"

#include <json.hpp>

#include <deque>
#include <numeric>

namespace nscover {

namespace {

std::string capitalized(const std::string& gen) {
  std::string s = gen;
  s[0] = char(std::toupper((unsigned char)s[0]));
  return s;
}

}  // namespace

HomologyModel::HomologyModel(const SurfacePresentation& pres, const CoverSpec& spec)
    : pres_(pres), spec_(spec), ctx_(CycloContext::get(std::lcm(spec.h, spec.k))) {
  if (!spec_.in_kernel(pres_.relator))
    throw std::invalid_argument("cover spec does not kill the relator");
  standard_ = spec_.is_standard(pres_);
  build();
}

void HomologyModel::build() {
  const int n = pres_.gens();
  const int nc = spec_.order();

  transversal_.assign(size_t(nc), Word{});
  if (standard_) {
    for (int t = 0; t < nc; ++t) {
      GElem e = spec_.element(t);
      Word rep = Word::gen(pres_.a(1), 1, e.x);
      rep.push_word(Word::gen(pres_.b(1), 1, e.y));
      transversal_[size_t(t)] = rep;
    }
  } else {
    std::vector<bool> seen(size_t(nc), false);
    seen[0] = true;
    std::deque<int> queue{0};
    int found = 1;
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      for (int x = 0; x < n && found < nc; ++x) {
        for (int sign : {1, -1}) {
          GElem e = spec_.element(t);
          GElem step = spec_.table[size_t(x)];
          GElem nx = sign > 0 ? spec_.add(e, step) : spec_.sub(e, step);
          int t2 = spec_.index(nx);
          if (seen[size_t(t2)]) continue;
          seen[size_t(t2)] = true;
          transversal_[size_t(t2)] = transversal_[size_t(t)] * Word::gen(x, sign);
          queue.push_back(t2);
          ++found;
        }
      }
    }
    if (found != nc) throw std::invalid_argument("cover spec is not transitive on cosets");
  }

  // Schreier generators: coset-crossing words rep(t)·x·rep(t·v(x))^{-1}
  col_.assign(size_t(nc) * size_t(n), -1);
  schreier_words_.clear();
  for (int t = 0; t < nc; ++t) {
    for (int x = 0; x < n; ++x) {
      int t2 = spec_.index(spec_.add(spec_.element(t), spec_.table[size_t(x)]));
      Word w = transversal_[size_t(t)] * Word::gen(x);
      w.push_inverse(transversal_[size_t(t2)]);
      if (w.empty()) continue;  // tree edge
      col_[size_t(t) * size_t(n) + size_t(x)] = int(schreier_words_.size());
      schreier_words_.push_back(w);
    }
  }
  const int N = int(schreier_words_.size());
  if (N != n * nc - (nc - 1))
    throw std::logic_error("Schreier generator count off: got " + std::to_string(N));

  // abelianized relator conjugates, one per coset
  std::vector<std::vector<Rational>> rows;
  for (int t = 0; t < nc; ++t) {
    Word conj = transversal_[size_t(t)] * pres_.relator;
    conj.push_inverse(transversal_[size_t(t)]);
    rows.push_back(rewrite(conj));
  }

  // column order for elimination: the paper's extras plus C^{h-1,k-1} first
  // in standard mode, natural order otherwise
  std::vector<int> order;
  if (standard_) {
    std::vector<bool> early(size_t(N), false);
    for (int t = 0; t < nc; ++t) {
      GElem e = spec_.element(t);
      int ca = schreier_col(t, pres_.a(1));
      if (ca >= 0 && e.y != 0) early[size_t(ca)] = true;
      int cb = schreier_col(t, pres_.b(1));
      if (cb >= 0 && e.x != 0) early[size_t(cb)] = true;
    }
    int clast = schreier_col(spec_.index({spec_.h - 1, spec_.k - 1}), pres_.c());
    if (clast >= 0) early[size_t(clast)] = true;
    for (int c = 0; c < N; ++c)
      if (early[size_t(c)]) order.push_back(c);
    const int n_early = int(order.size());
    if (n_early != nc) throw std::logic_error("unexpected count of eliminable generators");
    // kept: A, B, then D^{nu,mu} by generator then coset
    int colA = schreier_col(spec_.index({spec_.h - 1, 0}), pres_.a(1));
    int colB = schreier_col(spec_.index({0, spec_.k - 1}), pres_.b(1));
    if (colA < 0 || colB < 0) throw std::logic_error("A or B coordinate missing");
    order.push_back(colA);
    order.push_back(colB);
    for (int x = 2; x < n; ++x)
      for (int t = 0; t < nc; ++t) {
        int c = schreier_col(t, x);
        if (c >= 0 && !early[size_t(c)]) order.push_back(c);
      }
    if (int(order.size()) != N) throw std::logic_error("column ordering incomplete");
  } else {
    order.resize(size_t(N));
    std::iota(order.begin(), order.end(), 0);
  }

  CMat M(ctx_, nc, N);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < N; ++j) M.at(i, j) = Cyclo(ctx_, rows[size_t(i)][size_t(order[size_t(j)])]);
  Rref f = rref(M);
  if (standard_) {
    if (f.rank() != nc) throw std::logic_error("relation rank is not hk in standard mode");
    for (int p : f.pivots)
      if (p >= nc) throw std::logic_error("elimination pivot escaped the designated columns");
  }

  std::vector<bool> pivot_col(size_t(N), false);
  for (int p : f.pivots) pivot_col[size_t(p)] = true;
  std::vector<int> coord_of_perm(size_t(N), -1);
  kept_.clear();
  for (int j = 0; j < N; ++j)
    if (!pivot_col[size_t(j)]) {
      coord_of_perm[size_t(j)] = int(kept_.size());
      kept_.push_back(order[size_t(j)]);
    }
  dim_ = int(kept_.size());
  // The cover is orientable iff w1 (the c-parity character) factors through v;
  // then dim = 2 - hk*chi(N) = (g-1)hk + 2, otherwise 1 - hk*chi(N).
  bool orientable = false;
  for (int ex = 0; ex < 2 && !orientable; ++ex)
    for (int ey = 0; ey < 2 && !orientable; ++ey) {
      if ((spec_.h % 2 != 0 && ex != 0) || (spec_.k % 2 != 0 && ey != 0)) continue;
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) {
        int w1 = (x == pres_.c()) ? 1 : 0;
        ok = ((ex * spec_.table[size_t(x)].x + ey * spec_.table[size_t(x)].y) % 2 + 2) % 2 == w1;
      }
      orientable = ok;
    }
  if (dim_ != (n - 2) * nc + (orientable ? 2 : 1))
    throw std::logic_error("homology dimension mismatch: got " + std::to_string(dim_));

  expr_.assign(size_t(N), {});
  for (int j = 0; j < N; ++j) {
    std::vector<Rational> e(size_t(dim_), Rational(0));
    if (!pivot_col[size_t(j)]) e[size_t(coord_of_perm[size_t(j)])] = 1;
    expr_[size_t(order[size_t(j)])] = std::move(e);
  }
  for (size_t pr = 0; pr < f.pivots.size(); ++pr) {
    int p = f.pivots[pr];
    std::vector<Rational>& e = expr_[size_t(order[size_t(p)])];
    for (int j = p + 1; j < N; ++j) {
      if (pivot_col[size_t(j)] || f.R.at(int(pr), j).is_zero()) continue;
      if (!f.R.at(int(pr), j).is_rational()) throw std::logic_error("non-rational elimination entry");
      e[size_t(coord_of_perm[size_t(j)])] -= f.R.at(int(pr), j).rational_part();
    }
  }

  names_.clear();
  words_.clear();
  for (int c : kept_) {
    words_.push_back(schreier_words_[size_t(c)]);
    names_.push_back("");
  }
  if (standard_) {
    for (int t = 0; t < nc; ++t)
      for (int x = 0; x < n; ++x) {
        int c = schreier_col(t, x);
        if (c < 0) continue;
        auto it = std::find(kept_.begin(), kept_.end(), c);
        if (it == kept_.end()) continue;
        size_t ci = size_t(it - kept_.begin());
        GElem e = spec_.element(t);
        if (x == pres_.a(1))
          names_[ci] = "A";
        else if (x == pres_.b(1))
          names_[ci] = "B";
        else
          names_[ci] = capitalized(pres_.alph.names[size_t(x)]) + "^{" + std::to_string(e.x) +
                       "," + std::to_string(e.y) + "}";
      }
  } else {
    for (size_t ci = 0; ci < words_.size(); ++ci) names_[ci] = words_[ci].str(pres_.alph);
  }

  // deck actions: conjugation by the transversal words of (1,0) and (0,1)
  auto deck_matrix = [&](GElem gen_elem) {
    const Word& wax = transversal_[size_t(spec_.index(gen_elem))];
    CMat J(ctx_, dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
      Word img = wax.inverse() * words_[size_t(j)] * wax;
      std::vector<Rational> cls = q_map(img);
      for (int i = 0; i < dim_; ++i) J.at(i, j) = Cyclo(ctx_, cls[size_t(i)]);
    }
    return J;
  };
  deck1_ = deck_matrix(spec_.reduce(1, 0));
  deck2_ = deck_matrix(spec_.reduce(0, 1));
}

std::vector<Rational> HomologyModel::rewrite(const Word& w) const {
  if (!spec_.in_kernel(w)) throw std::invalid_argument("word is not in the kernel of v");
  std::vector<Rational> out(schreier_words_.size(), Rational(0));
  GElem cur{0, 0};
  for (Letter l : w.letters()) {
    int x = letter_gen(l);
    if (letter_sign(l) > 0) {
      int c = schreier_col(spec_.index(cur), x);
      if (c >= 0) out[size_t(c)] += 1;
      cur = spec_.add(cur, spec_.table[size_t(x)]);
    } else {
      cur = spec_.sub(cur, spec_.table[size_t(x)]);
      int c = schreier_col(spec_.index(cur), x);
      if (c >= 0) out[size_t(c)] -= 1;
    }
  }
  return out;
}

std::vector<Rational> HomologyModel::q_map(const Word& w) const {
  std::vector<Rational> raw = rewrite(w);
  std::vector<Rational> out(size_t(dim_), Rational(0));
  for (size_t c = 0; c < raw.size(); ++c) {
    if (raw[c] == 0) continue;
    const auto& e = expr_[c];
    for (int i = 0; i < dim_; ++i) out[size_t(i)] += raw[c] * e[size_t(i)];
  }
  return out;
}

std::vector<Cyclo> HomologyModel::q_map_cyclo(const Word& w) const {
  std::vector<Rational> q = q_map(w);
  std::vector<Cyclo> out;
  out.reserve(q.size());
  for (const Rational& r : q) out.emplace_back(ctx_, r);
  return out;
}

int HomologyModel::coord_D(int d, int nu, int mu) const {
  if (!standard_) throw std::logic_error("paper coordinates need the standard cover spec");
  int c = schreier_col(spec_.index(spec_.reduce(nu, mu)), d);
  auto it = std::find(kept_.begin(), kept_.end(), c);
  return it == kept_.end() ? -1 : int(it - kept_.begin());
}

std::vector<Rational> HomologyModel::class_D(int d, int nu, int mu) const {
  if (!standard_) throw std::logic_error("paper coordinates need the standard cover spec");
  int c = schreier_col(spec_.index(spec_.reduce(nu, mu)), d);
  if (c < 0) throw std::logic_error("trivial Schreier generator is not a class");
  return expr_[size_t(c)];
}

const CMat& HomologyModel::deck(int axis) const {
  if (axis != 1 && axis != 2) throw std::invalid_argument("deck axis must be 1 or 2");
  return axis == 1 ? deck1_ : deck2_;
}

CMat HomologyModel::eigenbasis(int alpha, int beta) const {
  alpha = ((alpha % spec_.h) + spec_.h) % spec_.h;
  beta = ((beta % spec_.k) + spec_.k) % spec_.k;
  CMat E;
  if (standard_) {
    if (alpha == 0 && beta == 0)
      throw std::invalid_argument("label (0,0) has no S11 basis");
    // order: A2^..Ar^, B2^..Br^, C^
    std::vector<int> ds;
    for (int i = 2; i <= pres_.r; ++i) ds.push_back(pres_.a(i));
    for (int i = 2; i <= pres_.r; ++i) ds.push_back(pres_.b(i));
    ds.push_back(pres_.c());
    E = CMat(ctx_, dim_, int(ds.size()));
    Cyclo z = zeta(), e = eta();
    for (size_t j = 0; j < ds.size(); ++j) {
      for (int t = 0; t < spec_.order(); ++t) {
        GElem el = spec_.element(t);
        Cyclo coeff = Cyclo::root_of_unity(ctx_, long(alpha) * el.x * (ctx_->m() / spec_.h) +
                                                     long(beta) * el.y * (ctx_->m() / spec_.k));
        std::vector<Rational> cls = class_D(ds[j], el.x, el.y);
        for (int i = 0; i < dim_; ++i)
          if (cls[size_t(i)] != 0) E.at(i, int(j)) += coeff * Cyclo(ctx_, cls[size_t(i)]);
      }
    }
    (void)z;
    (void)e;
  } else {
    // simultaneous-kernel computation
    Cyclo za = Cyclo::root_of_unity(ctx_, long(alpha) * (ctx_->m() / spec_.h));
    Cyclo eb = Cyclo::root_of_unity(ctx_, long(beta) * (ctx_->m() / spec_.k));
    CMat S(ctx_, 2 * dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        S.at(i, j) = deck1_.at(i, j) - (i == j ? za : Cyclo::zero(ctx_));
        S.at(dim_ + i, j) = deck2_.at(i, j) - (i == j ? eb : Cyclo::zero(ctx_));
      }
    E = kernel_basis(S);
  }
  // verification: columns really are simultaneous eigenvectors
  Cyclo za = Cyclo::root_of_unity(ctx_, long(alpha) * (ctx_->m() / spec_.h));
  Cyclo eb = Cyclo::root_of_unity(ctx_, long(beta) * (ctx_->m() / spec_.k));
  if (!(deck1_ * E == E.scaled(za)) || !(deck2_ * E == E.scaled(eb)))
    throw std::logic_error("eigenbasis verification failed");
  return E;
}

int HomologyModel::eigenspace_dim(int alpha, int beta) const {
  Cyclo za = Cyclo::root_of_unity(ctx_, long(((alpha % spec_.h) + spec_.h) % spec_.h) *
                                            (ctx_->m() / spec_.h));
  Cyclo eb = Cyclo::root_of_unity(ctx_, long(((beta % spec_.k) + spec_.k) % spec_.k) *
                                            (ctx_->m() / spec_.k));
  CMat S(ctx_, 2 * dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      S.at(i, j) = deck1_.at(i, j) - (i == j ? za : Cyclo::zero(ctx_));
      S.at(dim_ + i, j) = deck2_.at(i, j) - (i == j ? eb : Cyclo::zero(ctx_));
    }
  return dim_ - rref(S).rank();
}

HomologyModel::StructureReport HomologyModel::verify_structure() const {
  StructureReport rep{true, {}};
  const int g = 2 * pres_.r;
  int total = 0;
  bool orientation_like = (spec_ == CoverSpec::orientation(pres_));
  for (int a = 0; a < spec_.h; ++a)
    for (int b = 0; b < spec_.k; ++b) {
      int d = eigenspace_dim(a, b);
      total += d;
      int expected = -1;
      if (standard_) expected = (a == 0 && b == 0) ? g : g - 1;
      if (orientation_like) expected = g;
      std::string line = "H^{" + std::to_string(a) + "," + std::to_string(b) +
                         "}: dim = " + std::to_string(d);
      if (expected >= 0) {
        line += " (expected " + std::to_string(expected) + ")";
        if (d != expected) {
          rep.ok = false;
          line += " MISMATCH";
        }
      }
      rep.lines.push_back(line);
    }
  if (total != dim_) {
    rep.ok = false;
    rep.lines.push_back("eigenspace dims sum to " + std::to_string(total) + " != " +
                        std::to_string(dim_));
  }
  return rep;
}

std::string HomologyModel::to_json() const {
  nlohmann::json j;
  j["r"] = pres_.r;
  j["h"] = spec_.h;
  j["k"] = spec_.k;
  j["dimension"] = dim_;
  j["standard_transversal"] = standard_;
  j["elimination"] =
      standard_ ? "C^{h-1,k-1} eliminated by the relation Sum C^{nu,mu} = 0" : "rref pivots";
  j["coordinates"] = names_;
  nlohmann::json table = nlohmann::json::object();
  for (size_t c = 0; c < schreier_words_.size(); ++c) {
    nlohmann::json coords = nlohmann::json::array();
    for (const Rational& r : expr_[c]) coords.push_back(r.get_str());
    table[schreier_words_[c].str(pres_.alph)] = coords;
  }
  j["schreier_expressions"] = table;
  return j.dump(2);
}

}  // namespace nscover
