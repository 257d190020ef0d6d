#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>

#include "nscover/steinberg.hpp"

using namespace nscover;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

// exit codes: 0 ok, 2 usage/parse, 3 parameter bounds, 4 check failure,
// 5 internal error
enum ExitCode { kOk = 0, kUsage = 2, kBounds = 3, kFailed = 4, kInternal = 5 };

struct Config {
  int r = 2, h = 2, k = 2;
  std::string v_table;  // custom exponent table, "a1=(1,0),b1=(0,1)"
  std::string word;
  int alpha = 0, beta = 1;
  bool varrho = false;
  bool json = false;
  std::string out;
  std::string suite;
  std::string replay;
  unsigned seed = 12345;
  int trials = 20;
  int depth = 6;
};

void check_bounds(const Config& c, bool need_hk) {
  if (c.r < 2) throw std::out_of_range("--r must be >= 2");
  if (c.h < 1 || c.k < 1) throw std::out_of_range("--h and --k must be >= 1");
  if (need_hk && c.h != c.k) throw std::out_of_range("this command requires --h equal to --k");
}

CoverSpec make_spec(const SurfacePresentation& pres, const Config& c) {
  if (c.v_table.empty()) return CoverSpec::standard(pres, c.h, c.k);
  CoverSpec spec;
  spec.h = c.h;
  spec.k = c.k;
  spec.table.assign(size_t(pres.gens()), GElem{});
  std::map<std::string, int> names;
  for (int i = 1; i <= c.r; ++i) {
    names["a" + std::to_string(i)] = pres.a(i);
    names["b" + std::to_string(i)] = pres.b(i);
  }
  names["c"] = pres.c();
  size_t pos = 0;
  const std::string& t = c.v_table;
  while (pos < t.size()) {
    size_t eq = t.find('=', pos);
    if (eq == std::string::npos) throw std::invalid_argument("--v: expected name=(x,y)");
    std::string name = t.substr(pos, eq - pos);
    auto it = names.find(name);
    if (it == names.end()) throw std::invalid_argument("--v: unknown generator '" + name + "'");
    size_t close = t.find(')', eq);
    if (t[eq + 1] != '(' || close == std::string::npos)
      throw std::invalid_argument("--v: expected name=(x,y)");
    std::string body = t.substr(eq + 2, close - eq - 2);
    size_t comma = body.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--v: expected two components");
    long x = std::stol(body.substr(0, comma)), y = std::stol(body.substr(comma + 1));
    spec.table[size_t(it->second)] = spec.reduce(x, y);
    pos = close + 1;
    if (pos < t.size() && t[pos] == ',') ++pos;
  }
  if (!spec.surjective()) throw std::invalid_argument("--v: the table is not onto Z/h x Z/k");
  return spec;
}

ordered_json cyclo_json(const Cyclo& z) {
  ordered_json j;
  j["m"] = z.ctx()->m();
  ordered_json coeffs = ordered_json::array();
  for (const Rational& c : z.coeffs()) coeffs.push_back(c.get_str());
  j["coeffs"] = std::move(coeffs);
  return j;
}

ordered_json matrix_json(const CMat& M, int alpha, int beta, const std::string& basis) {
  ordered_json j;
  j["label"] = {alpha, beta};
  j["basis"] = basis;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < M.rows(); ++i)
    for (int jj = 0; jj < M.cols(); ++jj) entries.push_back(cyclo_json(M.at(i, jj)));
  j["entries"] = std::move(entries);
  return j;
}

std::string matrix_text(const CMat& M) {
  std::string out;
  for (int i = 0; i < M.rows(); ++i) {
    out += "[ ";
    for (int j = 0; j < M.cols(); ++j) {
      out += M.at(i, j).str();
      if (j + 1 < M.cols()) out += ", ";
    }
    out += " ]\n";
  }
  return out;
}

ordered_json config_json(const Config& c, const std::string& command) {
  ordered_json j;
  j["command"] = command;
  j["r"] = c.r;
  j["h"] = c.h;
  j["k"] = c.k;
  if (!c.v_table.empty()) j["v"] = c.v_table;
  if (!c.word.empty()) j["word"] = c.word;
  if (!c.suite.empty()) j["suite"] = c.suite;
  j["seed"] = c.seed;
  j["depth"] = c.depth;
  return j;
}

void emit(const Config& c, const ordered_json& report, const std::string& fallback_text) {
  std::string text = c.json ? report.dump(2) + "\n" : fallback_text;
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + c.out);
    f << (c.json ? report.dump(2) + "\n" : fallback_text);
  } else {
    std::cout << text;
  }
}

struct Session {
  SurfacePresentation pres;
  CoverSpec spec;
  HomologyModel model;
  Catalog cat;
  Representation rep;
  explicit Session(const Config& c)
      : pres(c.r),
        spec(make_spec(pres, c)),
        model(pres, spec),
        cat(pres, spec),
        rep(model, cat) {}
};

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

struct SuiteReport {
  ordered_json results = ordered_json::array();
  bool ok = true;
  std::string text;
  void add(const std::string& name, bool pass, const std::string& details = "") {
    ok = ok && pass;
    ordered_json r;
    r["name"] = name;
    r["status"] = pass ? "pass" : "fail";
    if (!details.empty()) r["details"] = details;
    results.push_back(std::move(r));
    text += (pass ? "ok   " : "FAIL ") + name + (details.empty() ? "" : "  (" + details + ")") +
            "\n";
  }
};

CMat E1(const CycloContext* ctx, int n, int i, int j, const Cyclo& z) {
  return CMat::elementary(ctx, n, i - 1, j - 1, z);
}
CMat E1(const CycloContext* ctx, int n, int i, int j, long m = 1) {
  return E1(ctx, n, i, j, Cyclo::from_int(ctx, m));
}

void suite_paper_formulas(Session& su, SuiteReport& rep) {
  const CycloContext* ctx = su.model.ctx();
  int r = su.pres.r, k = su.spec.k, s = r - 1, n = 2 * s + 1;
  Cyclo zeta = su.model.zeta();
  for (int i = 1; i <= s - 1; ++i)
    rep.add("varrho(R" + std::to_string(i + 1) + ") = E_{i,i+s}",
            su.rep.varrho(aw("R" + std::to_string(i + 1))) == E1(ctx, n, i, i + s));
  rep.add("varrho(R" + std::to_string(s + 1) + ") = E_{s,2s} E_{2s+1,2s}^-1",
          su.rep.varrho(aw("R" + std::to_string(s + 1))) ==
              E1(ctx, n, s, 2 * s) * E1(ctx, n, 2 * s + 1, 2 * s, -1));
  for (int i = 1; i <= s; ++i)
    rep.add("varrho(S" + std::to_string(i + 1) + ") = E_{i+s,i}^-1",
            su.rep.varrho(aw("S" + std::to_string(i + 1))) == E1(ctx, n, i + s, i, -1));
  for (int i = 1; i <= s - 2; ++i)
    rep.add("varrho(T" + std::to_string(i + 1) + ") four-factor product",
            su.rep.varrho(aw("T" + std::to_string(i + 1))) ==
                E1(ctx, n, i, i + s) * E1(ctx, n, i + 1, i + 1 + s) *
                    E1(ctx, n, i, i + 1 + s, -1) * E1(ctx, n, i + 1, i + s, -1));
  if (r >= 3)
    rep.add("varrho(T" + std::to_string(s) + ") six-factor product",
            su.rep.varrho(aw("T" + std::to_string(s))) ==
                E1(ctx, n, s - 1, 2 * s - 1) * E1(ctx, n, s, 2 * s) *
                    E1(ctx, n, s - 1, 2 * s, -1) * E1(ctx, n, s, 2 * s - 1, -1) *
                    E1(ctx, n, 2 * s + 1, 2 * s - 1) * E1(ctx, n, 2 * s + 1, 2 * s, -1));
  CMat Ds = CMat::identity(ctx, n);
  Ds.at(s - 1, s - 1) = -Cyclo::one(ctx);
  rep.add("varrho(Y) = D_s", su.rep.varrho(aw("Y")) == Ds);

  Cyclo z1 = Cyclo::from_int(ctx, 2 * k) * (Cyclo::one(ctx) - zeta).inv();
  Cyclo z2 = Cyclo::zero(ctx);
  for (int j = 1; j <= k; ++j)
    z2 += Cyclo::from_int(ctx, j) * Cyclo::root_of_unity(ctx, (j - 1) * (ctx->m() / k));
  z2 = Cyclo::from_int(ctx, -2) * z2;
  rep.add("z = 2k(1-zeta)^-1 = -2(1+2zeta+...+k zeta^{k-1})", z1 == z2);
  RepData dV = su.rep.evaluate(aw("V"));
  rep.add("rho^{0,1}(V) = E_{1,r}(k) E_{g-1,r}(z)",
          su.rep.rho(0, 1, dV) == E1(ctx, n, 1, r, Cyclo::from_int(ctx, k)) *
                                      E1(ctx, n, 2 * s + 1, r, z1));
  if (r >= 3)
    rep.add("varrho(V) = E_{1,r}(k) E_{g-1,r}(z)",
            su.rep.varrho(dV) ==
                E1(ctx, n, 1, r, Cyclo::from_int(ctx, k)) * E1(ctx, n, 2 * s + 1, r, z1));
  else
    rep.add("varrho(V) = E_{1,r}(k) E_{g-1,r}(z - k)  [r = 2 conjugation shift]",
            su.rep.varrho(dV) == E1(ctx, n, 1, r, Cyclo::from_int(ctx, k)) *
                                     E1(ctx, n, 2 * s + 1, r, z1 - Cyclo::from_int(ctx, k)));
  rep.add("V in Gamma^0", su.rep.gamma_alpha(dV, 0));

  CMat Wm = CMat::identity(ctx, n);
  for (int j = 1; j <= s - 1; ++j) Wm.at(s - 1, j - 1) = Cyclo::from_int(ctx, -2);
  Wm.at(s - 1, s - 1) = -zeta;
  Wm.at(s - 1, 2 * s - 1) = Cyclo::one(ctx) + zeta;
  Wm.at(s - 1, 2 * s) = Cyclo::one(ctx) - zeta;
  rep.add("varrho(W) bordered matrix", su.rep.varrho(aw("W")) == Wm);

  rep.add("varrho([W,R2^-1]) = E_{s,s+1}(2)",
          su.rep.varrho(aw_commutator(aw("W"), aw("R2", -1))) == E1(ctx, n, s, s + 1, 2));
  rep.add("varrho([R2,W^-1]) = E_{s,s+1}(2 zeta^-1)",
          su.rep.varrho(aw_commutator(aw("R2"), aw("W", -1))) ==
              E1(ctx, n, s, s + 1, Cyclo::from_int(ctx, 2) * zeta.inv()));
}

void suite_identities(Session& su, SuiteReport& rep, unsigned seed, int trials) {
  std::mt19937 rng(seed);
  int k = su.spec.k;
  for (int t = 0; t < trials; ++t) {
    AutoWord w = random_gamma_word(su.pres.r, rng, 3);
    Endo phi = su.cat.evaluate(w);
    for (long ell = 1; ell < k; ++ell) {
      if (std::gcd(ell, long(k)) != 1) continue;
      Representation::Report r = su.rep.verify_identities(phi, ell);
      std::string details;
      if (!r.ok)
        for (const auto& line : r.lines) details += line + "; ";
      rep.add("S23/S24/S25 trial " + std::to_string(t) + " ell=" + std::to_string(ell), r.ok,
              details);
    }
  }
}

void suite_functoriality(Session& su, SuiteReport& rep, unsigned seed, int trials) {
  std::mt19937 rng(seed);
  int h = su.spec.h, k = su.spec.k;
  for (int t = 0; t < trials; ++t) {
    AutoWord u = random_gamma_word(su.pres.r, rng, 3);
    AutoWord v = random_gamma_word(su.pres.r, rng, 3);
    RepData du = su.rep.evaluate(u), dv = su.rep.evaluate(v);
    RepData duv = su.rep.rep_data(compose(su.cat.evaluate(u), su.cat.evaluate(v)));
    bool ok = su.rep.in_gamma(du);
    for (int a = 0; a < h && ok; ++a)
      for (int b = 0; b < k && ok; ++b) {
        if (a == 0 && b == 0) continue;
        CMat m = su.rep.rho(a, b, duv);
        ok = ok && m == su.rep.rho(a, b, du) * su.rep.rho(a, b, dv);
        for (int i = 0; i < m.rows() && ok; ++i)
          for (int j = 0; j < m.cols() && ok; ++j) ok = m.at(i, j).is_integral();
        ok = ok && m.det().norm() * m.det().norm() == 1;
      }
    rep.add("functoriality/integrality trial " + std::to_string(t), ok);
  }
  int scal_idx = 0;
  for (const char* text : {"a1", "b1 c", "a2 b1^-1 a1"}) {
    Word w = Word::parse(su.pres.alph, text);
    RepData d = su.rep.rep_data(Endo::inner(w, su.pres.gens()));
    bool ok = true;
    for (int a = 0; a < h && ok; ++a)
      for (int b = 0; b < k && ok; ++b) {
        if (a == 0 && b == 0) continue;
        CMat m = su.rep.rho(a, b, d);
        Cyclo scal = m.at(0, 0);
        ok = ok && m == CMat::identity(su.model.ctx(), m.rows()).scaled(scal);
        Cyclo p = Cyclo::one(su.model.ctx());
        for (int e = 0; e < h * k; ++e) p *= scal;
        ok = ok && p.is_one();
      }
    rep.add("inner automorphism scalar " + std::to_string(scal_idx++), ok);
  }
}

int cmd_model(const Config& c) {
  check_bounds(c, false);
  SurfacePresentation pres(c.r);
  CoverSpec spec = make_spec(pres, c);
  HomologyModel model(pres, spec);
  ordered_json report;
  report["config"] = config_json(c, "model");
  report["results"] = ordered_json::array();
  ordered_json details = ordered_json::parse(model.to_json());
  report["results"].push_back({{"name", "model"}, {"status", "pass"}, {"details", details}});
  report["versions"] = {{"nscover", kVersion}};
  std::string text = "dim H_1 = " + std::to_string(model.dim()) + "\nbasis:";
  for (const auto& nme : model.coord_names()) text += " " + nme;
  text += "\n";
  emit(c, report, text);
  return kOk;
}

int cmd_matrix(const Config& c) {
  check_bounds(c, false);
  Session su(c);
  AutoWord w = su.cat.parse(c.word);
  RepData d = su.rep.evaluate(w);
  CMat M = c.varrho ? su.rep.varrho(d) : su.rep.rho(c.alpha, c.beta, d);
  ordered_json report;
  report["config"] = config_json(c, "matrix");
  report["config"]["alpha"] = c.alpha;
  report["config"]["beta"] = c.beta;
  report["config"]["varrho"] = c.varrho;
  report["results"] = ordered_json::array();
  report["results"].push_back(
      {{"name", "matrix"},
       {"status", "pass"},
       {"details", matrix_json(M, c.alpha, c.beta, c.varrho ? "varrho" : "paper")}});
  report["versions"] = {{"nscover", kVersion}};
  emit(c, report, matrix_text(M));
  return kOk;
}

int cmd_verify(const Config& c) {
  bool need_hk = c.suite == "paper-formulas" || c.suite == "identities";
  check_bounds(c, need_hk);
  SuiteReport sr;
  if (c.suite == "structure") {
    SurfacePresentation pres(c.r);
    CoverSpec spec = make_spec(pres, c);
    HomologyModel model(pres, spec);
    auto r = model.verify_structure();
    std::string details;
    for (const auto& line : r.lines) details += line + "; ";
    sr.add("structure profile", r.ok, details);
  } else if (c.suite == "paper-formulas") {
    Session su(c);
    suite_paper_formulas(su, sr);
  } else if (c.suite == "identities") {
    Session su(c);
    suite_identities(su, sr, c.seed, c.trials);
  } else if (c.suite == "random-functoriality") {
    Session su(c);
    suite_functoriality(su, sr, c.seed, c.trials);
  } else {
    throw CLI::ValidationError("--suite", "unknown suite '" + c.suite + "'");
  }
  ordered_json report;
  report["config"] = config_json(c, "verify");
  report["results"] = sr.results;
  report["versions"] = {{"nscover", kVersion}};
  emit(c, report, sr.text + (sr.ok ? "PASS\n" : "FAIL\n"));
  return sr.ok ? kOk : kFailed;
}

int cmd_certify(const Config& c) {
  if (!c.replay.empty()) {
    std::ifstream f(c.replay, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + c.replay);
    std::string js((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    nlohmann::json j = nlohmann::json::parse(js);
    Config rc = c;
    rc.r = j.at("config").at("r").get<int>();
    rc.k = j.at("config").at("k").get<int>();
    rc.h = rc.k;
    check_bounds(rc, true);
    Session su(rc);
    SteinbergEngine::replay(su.rep, js);
    std::cout << "replay ok: " << c.replay << "\n";
    return kOk;
  }
  Config rc = c;
  rc.h = rc.k;
  check_bounds(rc, true);
  if (rc.k < 2) throw std::out_of_range("certify requires --k >= 2");
  Session su(rc);
  SteinbergEngine eng(su.rep);
  SteinbergEngine::Result res = eng.run();
  std::string js = eng.to_json(res);
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + c.out);
    f << js << "\n";
  }
  std::string text = "table " + std::string(res.table_complete ? "complete" : "INCOMPLETE") +
                     " (" + std::to_string(res.table.size()) + " assertions)\n";
  for (const auto& [i, j] : res.pending)
    text += "pending A_(" + std::to_string(i) + "," + std::to_string(j) + ")\n";
  text += "nu = " + res.nu.get_str() + ", n = " + res.n.get_str() + ", family witnesses = " +
          std::to_string(res.family.size()) + "\n";
  if (c.out.empty() && c.json)
    std::cout << js << "\n";
  else
    std::cout << text;
  return res.table_complete ? kOk : kFailed;
}

int cmd_orientation(const Config& c) {
  check_bounds(c, false);
  SurfacePresentation pres(c.r);
  OrientationSystem ori(pres);
  Catalog cat(pres, CoverSpec::standard(pres, 2, 2));
  std::vector<Endo> gens;
  for (const std::string& nme : cat.names()) gens.push_back(cat.get(nme).endo);
  auto P = ori.duality_intertwiner(gens);

  // Lemma 2.6 checks: p_star images lie in the orientation-character kernel,
  // and p_star of the orientable relator is the identity in pi
  CoverSpec w1 = CoverSpec::orientation(pres);
  bool kernel_ok = true;
  Word image;
  for (int i = 0; i < 2 * c.r; ++i) {
    Word pa = p_star(pres, 2 * i), pb = p_star(pres, 2 * i + 1);
    kernel_ok = kernel_ok && w1.in_kernel(pa) && w1.in_kernel(pb);
    image.push_word(commutator(pa, pb));
  }
  bool relator_ok = is_identity(pres, image, c.depth).proven_identity();

  SuiteReport sr;
  sr.add("dim H^+ = dim H^- = g", ori.model().dim() == 4 * c.r);
  sr.add("duality intertwiner exists over the catalog", P.has_value());
  sr.add("p_star images in orientation-character kernel", kernel_ok);
  sr.add("p_star(relator) = 1 certified", relator_ok);
  ordered_json report;
  report["config"] = config_json(c, "orientation");
  report["results"] = sr.results;
  report["versions"] = {{"nscover", kVersion}};
  emit(c, report, sr.text + (sr.ok ? "PASS\n" : "FAIL\n"));
  return sr.ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covering-space representations of mapping class groups of N_{2r+1}"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* sub, bool with_hk) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--r", c.r, "number of handle pairs (surface N_{2r+1})");
    if (with_hk) {
      sub->add_option("--h", c.h, "order of the first cyclic factor");
      sub->add_option("--k", c.k, "order of the second cyclic factor");
      sub->add_option("--v", c.v_table, "custom exponent table, e.g. \"a1=(1,0),b1=(0,1)\"");
    }
    sub->add_flag("--json", c.json, "emit the JSON report");
    sub->add_option("--out", c.out, "write the report to a file");
    sub->add_option("--seed", c.seed, "seed for randomized suites");
    sub->add_option("--depth", c.depth, "word-problem search depth");
  };

  CLI::App* model = app.add_subcommand("model", "homology model: dimension and basis");
  add_common(model, true);

  CLI::App* matrix = app.add_subcommand("matrix", "evaluate an automorphism word");
  add_common(matrix, true);
  matrix->add_option("--alpha", c.alpha, "character component alpha");
  matrix->add_option("--beta", c.beta, "character component beta");
  matrix->add_option("--word", c.word, "automorphism word, e.g. \"Y R2^-1 W\"")->required();
  matrix->add_flag("--varrho", c.varrho, "conjugated basis of the (0,1) block");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, true);
  verify->add_option("--suite", c.suite,
                     "paper-formulas | identities | random-functoriality | structure")
      ->required();
  verify->add_option("--trials", c.trials, "number of randomized trials");

  CLI::App* certify = app.add_subcommand("certify", "elementary-matrix certificate engine");
  certify->set_help_flag("--help", "print help");
  certify->add_option("--r", c.r, "number of handle pairs");
  certify->add_option("--k", c.k, "order of both cyclic factors (h = k)");
  certify->add_option("--out", c.out, "write the certificate JSON to a file");
  certify->add_option("--replay", c.replay, "re-verify a certificate file from scratch");
  certify->add_flag("--json", c.json, "print the certificate JSON to stdout");

  CLI::App* orientation = app.add_subcommand("orientation", "orientation cover and rho^+/rho^-");
  add_common(orientation, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (model->parsed()) return cmd_model(c);
    if (matrix->parsed()) return cmd_matrix(c);
    if (verify->parsed()) return cmd_verify(c);
    if (certify->parsed()) return cmd_certify(c);
    if (orientation->parsed()) return cmd_orientation(c);
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBounds;
  } catch (const std::logic_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
