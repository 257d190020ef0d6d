#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "nscover/steinberg.hpp"

using namespace nscover;

namespace {

struct Setup {
  SurfacePresentation pres;
  CoverSpec spec;
  HomologyModel model;
  Catalog cat;
  Representation rep;
  Setup(int r, int k)
      : pres(r),
        spec(CoverSpec::standard(pres, k, k)),
        model(pres, spec),
        cat(pres, spec),
        rep(model, cat) {}
};

CMat E1(const CycloContext* ctx, int n, int i, int j, const Cyclo& z) {
  return CMat::elementary(ctx, n, i - 1, j - 1, z);
}

}  // namespace

TEST_CASE("steinberg_check validates the commutator identities") {
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
    INFO("r=", r, " k=", k);
    Setup su(r, k);
    std::string err;
    CHECK(SteinbergEngine::steinberg_check(su.model.ctx(), r, 7u, &err));
    INFO(err);
    CHECK(err.empty());
  }
}

TEST_CASE("L_element matches the displayed two-case formula") {
  for (int r : {3, 4}) {
    Setup su(r, 2);
    const CycloContext* ctx = su.model.ctx();
    int s = r - 1, n = 2 * s + 1;
    SteinbergEngine eng(su.rep);
    Cyclo one = Cyclo::one(ctx);
    for (int i = 1; i <= s - 1; ++i) {
      auto [w, m] = eng.L_element(i);
      CHECK(su.rep.varrho(w) == m);
      if (i <= s - 2)
        CHECK(m == E1(ctx, n, i, i + 1 + s, one) * E1(ctx, n, i + 1, i + s, one));
      else
        CHECK(m == E1(ctx, n, s - 1, 2 * s, one) * E1(ctx, n, s, 2 * s - 1, one) *
                       E1(ctx, n, 2 * s + 1, 2 * s - 1, -one));
    }
    CHECK_THROWS(eng.L_element(0));
    CHECK_THROWS(eng.L_element(s));
  }
  // r = 2: the valid range 1 <= i <= s-1 is empty; no panic, just a range error
  Setup su2(2, 2);
  SteinbergEngine eng2(su2.rep);
  CHECK_THROWS(eng2.L_element(1));
}

TEST_CASE("galois_word realizes every unit conjugation") {
  for (auto [r, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}}) {
    Setup su(r, k);
    const CycloContext* ctx = su.model.ctx();
    int s = r - 1, n = 2 * s + 1;
    SteinbergEngine eng(su.rep);
    // varrho([R2, W^-1]) = E_{s,s+1}(2 zeta^-1); conjugating by galois_word(ell)
    // applies psi_ell to the value
    AutoWord gamma = aw_commutator(aw("R2"), aw("W", -1));
    Cyclo zbar = su.model.zeta().inv();
    for (long ell = 1; ell < k; ++ell) {
      if (std::gcd(ell, long(k)) != 1) continue;
      AutoWord omega = eng.galois_word(ell);
      AutoWord conj = aw_concat(aw_inverse(omega), aw_concat(gamma, omega));
      Cyclo zl = Cyclo::one(ctx);
      for (long e = 0; e < ell; ++e) zl *= zbar;
      CHECK(su.rep.varrho(conj) == E1(ctx, n, s, s + 1, Cyclo::from_int(ctx, 2) * zl));
    }
  }
}

TEST_CASE("full pipeline closes and replays (r=2, k=2)") {
  Setup su(2, 2);
  SteinbergEngine eng(su.rep);
  SteinbergEngine::Result res = eng.run();
  CHECK(res.table_complete);
  CHECK(res.pending.empty());
  CHECK(res.table.size() == 6);  // all (i,j), 1 <= i != j <= 3
  CHECK(res.nu != 0);
  CHECK(res.n != 0);
  // one family witness per (i,j) and per residue of ell mod k
  CHECK(res.family.size() == size_t(6 * 2));
  for (const auto& [ij, a] : res.table) {
    CHECK(a.m != 0);
    RepData d = su.rep.evaluate(a.witness);
    CHECK(su.rep.in_gamma(d));
    CHECK(su.rep.varrho(d) ==
          E1(su.model.ctx(), 3, ij.first, ij.second, Cyclo::from_int(su.model.ctx(), a.m.get_si())));
  }

  std::string js = eng.to_json(res);
  CHECK_NOTHROW(SteinbergEngine::replay(su.rep, js));

  // tampering with any recorded value must make replay fail
  std::string bad = js;
  size_t pos = bad.find("\"m\": \"");
  REQUIRE(pos != std::string::npos);
  bad[pos + 6] = bad[pos + 6] == '9' ? '8' : '9';
  CHECK_THROWS(SteinbergEngine::replay(su.rep, bad));
}

TEST_CASE("full pipeline closes and replays (r=3, k=2)") {
  Setup su(3, 2);
  SteinbergEngine eng(su.rep);
  SteinbergEngine::Result res = eng.run();
  CHECK(res.table_complete);
  CHECK(res.table.size() == 20);  // all (i,j), 1 <= i != j <= 5
  CHECK(res.nu != 0);
  // bordered shape: lambda ... lambda 1 | 0 ... mu | nu, recorded 1-indexed
  REQUIRE(res.galois_row.size() == 6);
  int s = 2;
  for (int j = s + 1; j <= 2 * s - 1; ++j) CHECK(res.galois_row[size_t(j)] == 0);
  CHECK(res.galois_row[5] == res.nu);
  CHECK(res.family.size() == size_t(20 * 2));
  std::string js = eng.to_json(res);
  CHECK_NOTHROW(SteinbergEngine::replay(su.rep, js));
}
