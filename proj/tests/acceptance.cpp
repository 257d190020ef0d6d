// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "nscover/steinberg.hpp"

using namespace nscover;

namespace {

int failures = 0;

void criterion(int num, const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << num << ": " << name
            << (detail.empty() ? "" : " [" + detail + "]") << std::endl;
  if (!ok) ++failures;
}

struct Session {
  SurfacePresentation pres;
  CoverSpec spec;
  HomologyModel model;
  Catalog cat;
  Representation rep;
  Session(int r, int h, int k)
      : pres(r),
        spec(CoverSpec::standard(pres, h, k)),
        model(pres, spec),
        cat(pres, spec),
        rep(model, cat) {}
};

CMat E1(const CycloContext* ctx, int n, int i, int j, const Cyclo& z) {
  return CMat::elementary(ctx, n, i - 1, j - 1, z);
}
CMat E1(const CycloContext* ctx, int n, int i, int j, long m = 1) {
  return E1(ctx, n, i, j, Cyclo::from_int(ctx, m));
}

AutoWord random_gamma_word(int r, std::mt19937& rng, int len) {
  std::vector<std::string> pool{"Y", "V", "W"};
  for (int i = 2; i <= r; ++i) {
    pool.push_back("R" + std::to_string(i));
    pool.push_back("S" + std::to_string(i));
    if (i <= r - 1) pool.push_back("T" + std::to_string(i));
  }
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> exp(-2, 2);
  AutoWord w;
  for (int i = 0; i < len; ++i) {
    int e = exp(rng);
    if (e == 0) e = 1;
    w = aw_concat(w, aw(pool[pick(rng)], e));
  }
  return w;
}

void crit1_dimensions() {
  bool ok = true;
  std::string detail;
  for (auto [r, h, k] : std::vector<std::tuple<int, int, int>>{
           {2, 2, 2}, {2, 3, 3}, {3, 2, 2}, {3, 2, 3}}) {
    SurfacePresentation pres(r);
    HomologyModel model(pres, CoverSpec::standard(pres, h, k));
    int g = 2 * r;
    bool dim_ok = model.dim() == (g - 1) * h * k + 1;
    bool eig_ok = true;
    for (int a = 0; a < h; ++a)
      for (int b = 0; b < k; ++b)
        eig_ok = eig_ok && model.eigenspace_dim(a, b) == ((a == 0 && b == 0) ? g : g - 1);
    ok = ok && dim_ok && eig_ok;
    detail += "(" + std::to_string(r) + "," + std::to_string(h) + "," + std::to_string(k) +
              "): dim=" + std::to_string(model.dim()) + (dim_ok && eig_ok ? " ok; " : " BAD; ");
  }
  criterion(1, "dim H_1 = (g-1)hk+1 and eigenspace dims g / g-1", ok, detail);
}

void crit2_structure() {
  bool ok = true;
  for (auto [r, h, k] : std::vector<std::tuple<int, int, int>>{
           {2, 2, 2}, {2, 3, 3}, {3, 2, 2}, {3, 2, 3}}) {
    SurfacePresentation pres(r);
    HomologyModel model(pres, CoverSpec::standard(pres, h, k));
    ok = ok && model.verify_structure().ok;
  }
  for (int r : {2, 3}) {
    SurfacePresentation pres(r);
    HomologyModel model(pres, CoverSpec::orientation(pres));
    ok = ok && model.verify_structure().ok && model.dim() == 4 * r;
  }
  criterion(2, "character-dimension profiles (main covers and orientation covers)", ok);
}

bool generator_formulas(Session& su) {
  const CycloContext* ctx = su.model.ctx();
  int r = su.pres.r, s = r - 1, n = 2 * s + 1;
  bool ok = true;
  for (int i = 1; i <= s - 1; ++i)
    ok = ok && su.rep.varrho(aw("R" + std::to_string(i + 1))) == E1(ctx, n, i, i + s);
  ok = ok && su.rep.varrho(aw("R" + std::to_string(s + 1))) ==
                 E1(ctx, n, s, 2 * s) * E1(ctx, n, 2 * s + 1, 2 * s, -1);
  for (int i = 1; i <= s; ++i)
    ok = ok && su.rep.varrho(aw("S" + std::to_string(i + 1))) == E1(ctx, n, i + s, i, -1);
  for (int i = 1; i <= s - 2; ++i)
    ok = ok && su.rep.varrho(aw("T" + std::to_string(i + 1))) ==
                   E1(ctx, n, i, i + s) * E1(ctx, n, i + 1, i + 1 + s) *
                       E1(ctx, n, i, i + 1 + s, -1) * E1(ctx, n, i + 1, i + s, -1);
  if (r >= 3)
    ok = ok && su.rep.varrho(aw("T" + std::to_string(s))) ==
                   E1(ctx, n, s - 1, 2 * s - 1) * E1(ctx, n, s, 2 * s) *
                       E1(ctx, n, s - 1, 2 * s, -1) * E1(ctx, n, s, 2 * s - 1, -1) *
                       E1(ctx, n, 2 * s + 1, 2 * s - 1) * E1(ctx, n, 2 * s + 1, 2 * s, -1);
  CMat Ds = CMat::identity(ctx, n);
  Ds.at(s - 1, s - 1) = -Cyclo::one(ctx);
  return ok && su.rep.varrho(aw("Y")) == Ds;
}

void crit3_generators() {
  bool ok = true;
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
    Session su(r, k, k);
    ok = ok && generator_formulas(su);
  }
  criterion(3, "varrho on R, S, T, Y matches the displayed formulas", ok);
}

void crit4_lemma_v() {
  bool ok = true;
  for (int k : {2, 3}) {
    Session su(3, k, k);  // general-position case r = 3
    const CycloContext* ctx = su.model.ctx();
    int r = 3, s = r - 1, n = 2 * s + 1;
    Cyclo zeta = su.model.zeta();
    Cyclo z1 = Cyclo::from_int(ctx, 2 * k) * (Cyclo::one(ctx) - zeta).inv();
    Cyclo z2 = Cyclo::zero(ctx);
    for (int j = 1; j <= k; ++j)
      z2 += Cyclo::from_int(ctx, j) * Cyclo::root_of_unity(ctx, (j - 1) * (ctx->m() / k));
    z2 = Cyclo::from_int(ctx, -2) * z2;
    ok = ok && z1 == z2;
    RepData dV = su.rep.evaluate(aw("V"));
    ok = ok && su.rep.varrho(dV) == E1(ctx, n, 1, r, Cyclo::from_int(ctx, k)) *
                                        E1(ctx, n, 2 * s + 1, r, z1);
    ok = ok && su.rep.rho(0, 1, dV) == E1(ctx, n, 1, r, Cyclo::from_int(ctx, k)) *
                                           E1(ctx, n, 2 * s + 1, r, z1);
    ok = ok && su.rep.gamma_alpha(dV, 0);
  }
  criterion(4, "varrho(V) = E_{1,r}(k) E_{g-1,r}(z), both z forms, V in Gamma^0", ok);
}

void crit5_lemma_w() {
  bool ok = true;
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
    Session su(r, k, k);
    const CycloContext* ctx = su.model.ctx();
    int s = r - 1, n = 2 * s + 1;
    Cyclo zeta = su.model.zeta();
    CMat Wm = CMat::identity(ctx, n);
    for (int j = 1; j <= s - 1; ++j) Wm.at(s - 1, j - 1) = Cyclo::from_int(ctx, -2);
    Wm.at(s - 1, s - 1) = -zeta;
    Wm.at(s - 1, 2 * s - 1) = Cyclo::one(ctx) + zeta;
    Wm.at(s - 1, 2 * s) = Cyclo::one(ctx) - zeta;
    ok = ok && su.rep.varrho(aw("W")) == Wm;
  }
  criterion(5, "varrho(W) matches the bordered matrix", ok);
}

void crit6_commutators() {
  bool ok = true;
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
    Session su(r, k, k);
    const CycloContext* ctx = su.model.ctx();
    int s = r - 1, n = 2 * s + 1;
    ok = ok &&
         su.rep.varrho(aw_commutator(aw("W"), aw("R2", -1))) == E1(ctx, n, s, s + 1, 2) &&
         su.rep.varrho(aw_commutator(aw("R2"), aw("W", -1))) ==
             E1(ctx, n, s, s + 1, Cyclo::from_int(ctx, 2) * su.model.zeta().inv());
  }
  criterion(6, "varrho([W,R2^-1]) = E(2) and varrho([R2,W^-1]) = E(2 zeta^-1)", ok);
}

void crit7_identities() {
  bool ok = true;
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
    Session su(r, k, k);
    std::mt19937 rng(2024);
    for (int t = 0; t < 20 && ok; ++t) {
      Endo phi = su.cat.evaluate(random_gamma_word(r, rng, 3));
      for (long ell = 1; ell < k && ok; ++ell) {
        if (std::gcd(ell, long(k)) != 1) continue;
        ok = su.rep.verify_identities(phi, ell).ok;
      }
    }
  }
  criterion(7, "S23/S24/S25 hold on 20 seeded random Gamma(v) words per config", ok);
}

void crit8_functoriality() {
  bool ok = true;
  for (auto [r, k, trials] :
       std::vector<std::tuple<int, int, int>>{{2, 2, 60}, {2, 3, 40}}) {
    Session su(r, k, k);
    std::mt19937 rng(777);
    for (int t = 0; t < trials && ok; ++t) {
      AutoWord u = random_gamma_word(r, rng, 3);
      AutoWord v = random_gamma_word(r, rng, 3);
      RepData du = su.rep.evaluate(u), dv = su.rep.evaluate(v);
      RepData duv = su.rep.rep_data(compose(su.cat.evaluate(u), su.cat.evaluate(v)));
      ok = su.rep.in_gamma(du);
      for (int a = 0; a < k && ok; ++a)
        for (int b = 0; b < k && ok; ++b) {
          if (a == 0 && b == 0) continue;
          CMat m = su.rep.rho(a, b, duv);
          ok = m == su.rep.rho(a, b, du) * su.rep.rho(a, b, dv);
          for (int i = 0; i < m.rows() && ok; ++i)
            for (int j = 0; j < m.cols() && ok; ++j) ok = m.at(i, j).is_integral();
          ok = ok && m.det().norm() * m.det().norm() == 1;
        }
    }
    for (const char* text : {"a1", "b1 c", "a2 b1^-1 a1"}) {
      Word w = Word::parse(su.pres.alph, text);
      RepData d = su.rep.rep_data(Endo::inner(w, su.pres.gens()));
      for (int a = 0; a < k && ok; ++a)
        for (int b = 0; b < k && ok; ++b) {
          if (a == 0 && b == 0) continue;
          CMat m = su.rep.rho(a, b, d);
          Cyclo scal = m.at(0, 0);
          ok = ok && m == CMat::identity(su.model.ctx(), m.rows()).scaled(scal);
          Cyclo p = Cyclo::one(su.model.ctx());
          for (int e = 0; e < k * k; ++e) p *= scal;
          ok = ok && p.is_one();
        }
    }
  }
  criterion(8, "100 seeded functoriality/integrality pairs; inner scalars are hk-torsion", ok);
}

void crit9_certificates() {
  bool ok = true;
  std::string detail;
  for (auto [r, k] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}}) {
    Session su(r, k, k);
    SteinbergEngine eng(su.rep);
    SteinbergEngine::Result res = eng.run();
    int s = r - 1;
    bool bordered = res.galois_row.size() == size_t(2 * s + 2) && res.nu != 0 &&
                    res.galois_row[size_t(2 * s + 1)] == res.nu;
    for (int q = s + 1; q <= 2 * s - 1; ++q)
      bordered = bordered && res.galois_row[size_t(q)] == 0;
    bool this_ok = res.table_complete && res.pending.empty() && bordered && res.n != 0 &&
                   res.family.size() == size_t((2 * s + 1) * 2 * s * k);
    // re-verification from the serialized certificate, independent of the run
    try {
      SteinbergEngine::replay(su.rep, eng.to_json(res));
    } catch (const std::exception&) {
      this_ok = false;
    }
    ok = ok && this_ok;
    detail += "(" + std::to_string(r) + "," + std::to_string(k) + "): nu=" + res.nu.get_str() +
              " n=" + res.n.get_str() + "; ";
  }
  {
    // r = 2 boundary: the engine must terminate and report what closes
    Session su(2, 2, 2);
    SteinbergEngine eng(su.rep);
    SteinbergEngine::Result res = eng.run();
    detail += "(2,2): " + std::string(res.table_complete ? "complete" : "incomplete, pending=") +
              (res.table_complete ? "" : std::to_string(res.pending.size()));
    ok = ok && (res.table_complete || !res.pending.empty());
  }
  criterion(9, "certificate closure, galois step, global-n family, full replay", ok, detail);
}

void crit10_orientation() {
  bool ok = true;
  for (int r : {2, 3}) {
    SurfacePresentation pres(r);
    CoverSpec w1 = CoverSpec::orientation(pres);
    Word image;
    for (int i = 0; i < 2 * r; ++i) {
      Word pa = p_star(pres, 2 * i), pb = p_star(pres, 2 * i + 1);
      ok = ok && w1.in_kernel(pa) && w1.in_kernel(pb);
      image.push_word(commutator(pa, pb));
    }
    ok = ok && is_identity(pres, image).proven_identity();

    OrientationSystem ori(pres);
    Catalog cat(pres, CoverSpec::standard(pres, 2, 2));
    std::vector<Endo> gens;
    for (const std::string& nme : cat.names()) gens.push_back(cat.get(nme).endo);
    auto P = ori.duality_intertwiner(gens);
    ok = ok && P.has_value();
    if (P)
      for (const Endo& phi : gens) {
        OrientationReps rp = ori.reps(phi);
        ok = ok && rp.minus * *P == *P * rp.plus.transpose().inverse();
      }
  }
  criterion(10, "p_star kernel checks, relator identity, rho^+/rho^- duality", ok);
}

}  // namespace

int main() {
  crit1_dimensions();
  crit2_structure();
  crit3_generators();
  crit4_lemma_v();
  crit5_lemma_w();
  crit6_commutators();
  crit7_identities();
  crit8_functoriality();
  crit9_certificates();
  crit10_orientation();
  std::cout << (failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " (" << (10 - failures)
            << "/10)" << std::endl;
  return failures == 0 ? 0 : 1;
}
