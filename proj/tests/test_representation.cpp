#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nscover/representation.hpp"

using namespace nscover;

namespace {

struct Setup {
  SurfacePresentation pres;
  CoverSpec spec;
  HomologyModel model;
  Catalog cat;
  Representation rep;
  Setup(int r, int h, int k)
      : pres(r),
        spec(CoverSpec::standard(pres, h, k)),
        model(pres, spec),
        cat(pres, spec),
        rep(model, cat) {}
};

// 1-based elementary matrix, the paper's E_{i,j}(z)
CMat E1(const CycloContext* ctx, int n, int i, int j, const Cyclo& z) {
  return CMat::elementary(ctx, n, i - 1, j - 1, z);
}
CMat E1(const CycloContext* ctx, int n, int i, int j, long m = 1) {
  return E1(ctx, n, i, j, Cyclo::from_int(ctx, m));
}

AutoWord random_gamma_word(const Catalog& cat, int r, std::mt19937& rng, int len) {
  // generators of the catalog lying in Gamma(v): everything except R1, S1, T1
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

}  // namespace

TEST_CASE("generator formulas S30-S35") {
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
    INFO("r=", r, " k=", k);
    Setup su(r, k, k);
    const CycloContext* ctx = su.model.ctx();
    int s = r - 1, n = 2 * s + 1;
    Cyclo zeta = su.model.zeta();

    for (int i = 1; i <= s - 1; ++i)
      CHECK(su.rep.varrho(aw("R" + std::to_string(i + 1))) == E1(ctx, n, i, i + s));
    CHECK(su.rep.varrho(aw("R" + std::to_string(s + 1))) ==
          E1(ctx, n, s, 2 * s) * E1(ctx, n, 2 * s + 1, 2 * s, -1));
    for (int i = 1; i <= s; ++i)
      CHECK(su.rep.varrho(aw("S" + std::to_string(i + 1))) == E1(ctx, n, i + s, i, -1));
    for (int i = 1; i <= s - 2; ++i)
      CHECK(su.rep.varrho(aw("T" + std::to_string(i + 1))) ==
            E1(ctx, n, i, i + s) * E1(ctx, n, i + 1, i + 1 + s) *
                E1(ctx, n, i, i + 1 + s, -1) * E1(ctx, n, i + 1, i + s, -1));
    if (r >= 3)
      CHECK(su.rep.varrho(aw("T" + std::to_string(s))) ==
            E1(ctx, n, s - 1, 2 * s - 1) * E1(ctx, n, s, 2 * s) * E1(ctx, n, s - 1, 2 * s, -1) *
                E1(ctx, n, s, 2 * s - 1, -1) * E1(ctx, n, 2 * s + 1, 2 * s - 1) *
                E1(ctx, n, 2 * s + 1, 2 * s, -1));
    // S35: varrho(Y) = D_s
    CMat Ds = CMat::identity(ctx, n);
    Ds.at(s - 1, s - 1) = -Cyclo::one(ctx);
    CHECK(su.rep.varrho(aw("Y")) == Ds);

    // Lemma 4.2: varrho(V) with both closed forms of z
    Cyclo z1 = (Cyclo::from_int(ctx, 2 * k)) *
               (Cyclo::one(ctx) - zeta).inv();
    Cyclo z2 = Cyclo::zero(ctx);
    for (int j = 1; j <= k; ++j)
      z2 += Cyclo::from_int(ctx, j) * Cyclo::root_of_unity(ctx, (j - 1) * (ctx->m() / k));
    z2 = Cyclo::from_int(ctx, -2) * z2;
    CHECK(z1 == z2);
    RepData dV = su.rep.evaluate(aw("V"));
    CHECK(su.rep.rho(0, 1, dV) == E1(ctx, n, 1, r, k) * E1(ctx, n, 2 * s + 1, r, z1));
    if (r >= 3) {
      CHECK(su.rep.varrho(dV) == E1(ctx, n, 1, r, k) * E1(ctx, n, 2 * s + 1, r, z1));
    } else {
      // r = 2: the S27 conjugator E_{3,1} interacts with column r and shifts
      // the (g-1, r) entry from z to z - k
      CHECK(su.rep.varrho(dV) ==
            E1(ctx, n, 1, r, k) * E1(ctx, n, 2 * s + 1, r, z1 - Cyclo::from_int(ctx, k)));
    }
    CHECK(su.rep.gamma_alpha(dV, 0));

    // Lemma 4.3: the bordered matrix of varrho(W)
    CMat Wm = CMat::identity(ctx, n);
    for (int j = 1; j <= s - 1; ++j) Wm.at(s - 1, j - 1) = Cyclo::from_int(ctx, -2);
    Wm.at(s - 1, s - 1) = -zeta;
    Wm.at(s - 1, 2 * s - 1) = Cyclo::one(ctx) + zeta;
    Wm.at(s - 1, 2 * s) = Cyclo::one(ctx) - zeta;
    CHECK(su.rep.varrho(aw("W")) == Wm);

    // the two commutator values of section 4
    CHECK(su.rep.varrho(aw_commutator(aw("W"), aw("R2", -1))) == E1(ctx, n, s, s + 1, 2));
    CHECK(su.rep.varrho(aw_commutator(aw("R2"), aw("W", -1))) ==
          E1(ctx, n, s, s + 1, Cyclo::from_int(ctx, 2) * zeta.inv()));
  }
}

TEST_CASE("label permutations: S22 and friends") {
  Setup su(2, 3, 3);
  RepData s1 = su.rep.rep_data(su.cat.get("S1").endo);
  RepData r1 = su.rep.rep_data(su.cat.get("R1").endo);
  const CoverSpec& spec = su.spec;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CHECK(s1.perm[size_t(su.rep.label(a, b))] == su.rep.label(a + b, b));
      CHECK(r1.perm[size_t(su.rep.label(a, b))] == su.rep.label(a, b - a));
      // S22: the S1 blocks are identity matrices in the hat bases
      if (!(a == 0 && b == 0)) CHECK(s1.block[size_t(su.rep.label(a, b))].is_identity());
    }
  (void)spec;
}

TEST_CASE("functoriality, integrality, inner scalars") {
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
    Setup su(r, k, k);
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 12; ++trial) {
      AutoWord u = random_gamma_word(su.cat, r, rng, 3);
      AutoWord v = random_gamma_word(su.cat, r, rng, 3);
      RepData du = su.rep.evaluate(u), dv = su.rep.evaluate(v);
      RepData duv = su.rep.rep_data(compose(su.cat.evaluate(u), su.cat.evaluate(v)));
      CHECK(su.rep.in_gamma(du));
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          if (a == 0 && b == 0) continue;
          CMat m = su.rep.rho(a, b, duv);
          CHECK(m == su.rep.rho(a, b, du) * su.rep.rho(a, b, dv));
          for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) CHECK(m.at(i, j).is_integral());
          CHECK(m.det().norm() * m.det().norm() == 1);
        }
    }
    // inner automorphisms act by hk-torsion scalars (Lemma 2.7 proof)
    std::mt19937 rng2(99);
    for (const char* text : {"a1", "b1 c", "a2 b1^-1 a1"}) {
      Word w = Word::parse(su.pres.alph, text);
      RepData d = su.rep.rep_data(Endo::inner(w, su.pres.gens()));
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          if (a == 0 && b == 0) continue;
          CMat m = su.rep.rho(a, b, d);
          Cyclo scal = m.at(0, 0);
          CMat want = CMat::identity(su.model.ctx(), m.rows()).scaled(scal);
          CHECK(m == want);
          Cyclo p = Cyclo::one(su.model.ctx());
          for (int e = 0; e < k * k; ++e) p *= scal;
          CHECK(p.is_one());
        }
    }
    (void)rng2;
  }
}

TEST_CASE("Lemma 4.1 identities S23, S24, S25") {
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
    Setup su(r, k, k);
    std::mt19937 rng(555);
    for (int trial = 0; trial < 4; ++trial) {
      Endo phi = su.cat.evaluate(random_gamma_word(su.cat, r, rng, 3));
      for (long ell = 1; ell < k; ++ell) {
        if (std::gcd(ell, long(k)) != 1) continue;
        auto rep = su.rep.verify_identities(phi, ell);
        for (const auto& line : rep.lines) INFO(line);
        CHECK(rep.ok);
      }
    }
  }
}

TEST_CASE("orientation cover representations and duality") {
  for (int r : {2, 3}) {
    SurfacePresentation pres(r);
    OrientationSystem ori(pres);
    CHECK(ori.model().dim() == 4 * r);

    Catalog cat(pres, CoverSpec::standard(pres, 2, 2));
    std::vector<Endo> gens;
    for (const std::string& name : cat.names()) gens.push_back(cat.get(name).endo);

    OrientationReps id = ori.reps(Endo::identity(pres.gens()));
    CHECK(id.plus.is_identity());
    CHECK(id.minus.is_identity());
    CHECK(id.plus.rows() == 2 * r);
    CHECK(id.minus.rows() == 2 * r);

    auto P = ori.duality_intertwiner(gens);
    REQUIRE(P.has_value());
    for (const Endo& phi : gens) {
      OrientationReps rp = ori.reps(phi);
      CHECK(rp.minus * *P == *P * rp.plus.transpose().inverse());
    }
  }
}
