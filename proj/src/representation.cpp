#include "nscover/representation.hpp"

#include <numeric>
#include <random>

namespace nscover {

namespace {

CMat kernel_eigenspace(const HomologyModel& model, int alpha, int beta) {
  const CycloContext* ctx = model.ctx();
  int dim = model.dim();
  const CoverSpec& spec = model.spec();
  Cyclo za = Cyclo::root_of_unity(ctx, long(((alpha % spec.h) + spec.h) % spec.h) *
                                           (ctx->m() / spec.h));
  Cyclo eb = Cyclo::root_of_unity(ctx, long(((beta % spec.k) + spec.k) % spec.k) *
                                           (ctx->m() / spec.k));
  CMat S(ctx, 2 * dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      S.at(i, j) = model.deck(1).at(i, j) - (i == j ? za : Cyclo::zero(ctx));
      S.at(dim + i, j) = model.deck(2).at(i, j) - (i == j ? eb : Cyclo::zero(ctx));
    }
  return kernel_basis(S);
}

}  // namespace

Representation::Representation(const HomologyModel& model, Catalog& catalog)
    : model_(model), cat_(catalog) {
  const CoverSpec& spec = model_.spec();
  bases_.resize(size_t(spec.order()));
  for (int l = 0; l < spec.order(); ++l) {
    GElem e = spec.element(l);
    if (model_.standard_mode() && !(e.x == 0 && e.y == 0))
      bases_[size_t(l)] = model_.eigenbasis(e.x, e.y);
    else
      bases_[size_t(l)] = kernel_eigenspace(model_, e.x, e.y);
  }
  // pin the basis order against S32: varrho(S_2) must be E_{1+s,1}^{-1}
  if (model_.standard_mode() && spec.h == spec.k && spec.k >= 2) {
    int s = model_.pres().r - 1;
    CMat want = CMat::elementary(model_.ctx(), 2 * s + 1, s, 0,
                                 -Cyclo::one(model_.ctx()));
    if (varrho(rep_data(cat_.get("S2").endo)) != want)
      throw std::logic_error("eigenbasis order disagrees with S32 at S_2");
  }
}

InducedMap Representation::induced(const Endo& phi) const {
  auto chi = preserves_U(model_.pres(), model_.spec(), phi);
  if (!chi) throw std::invalid_argument("automorphism does not preserve U");
  int dim = model_.dim();
  CMat M(model_.ctx(), dim, dim);
  for (int j = 0; j < dim; ++j) {
    std::vector<Rational> cls = model_.q_map(phi.apply(model_.coord_words()[size_t(j)]));
    for (int i = 0; i < dim; ++i) M.at(i, j) = Cyclo(model_.ctx(), cls[size_t(i)]);
  }
  return {std::move(M), chi->first, chi->second};
}

RepData Representation::rep_data(const Endo& phi) const {
  InducedMap ind = induced(phi);
  const int nl = model_.spec().order();
  RepData d;
  d.perm.assign(size_t(nl), -1);
  d.block.resize(size_t(nl));
  for (int l = 0; l < nl; ++l) {
    CMat image = ind.M * bases_[size_t(l)];
    for (int off = 0; off < nl; ++off) {
      int cand = (l + off) % nl;
      if (bases_[size_t(cand)].cols() != bases_[size_t(l)].cols()) continue;
      auto X = solve(bases_[size_t(cand)], image);
      if (X) {
        d.perm[size_t(l)] = cand;
        d.block[size_t(l)] = std::move(*X);
        break;
      }
    }
    if (d.perm[size_t(l)] < 0)
      throw std::logic_error("induced map does not permute the eigenspaces");
  }
  return d;
}

RepData Representation::rep_identity() const {
  const int nl = model_.spec().order();
  RepData d;
  d.perm.resize(size_t(nl));
  std::iota(d.perm.begin(), d.perm.end(), 0);
  for (int l = 0; l < nl; ++l)
    d.block.push_back(CMat::identity(model_.ctx(), bases_[size_t(l)].cols()));
  return d;
}

RepData Representation::rep_mul(const RepData& a, const RepData& b) const {
  const int nl = model_.spec().order();
  RepData d;
  d.perm.resize(size_t(nl));
  d.block.resize(size_t(nl));
  for (int l = 0; l < nl; ++l) {
    int mid = b.perm[size_t(l)];
    d.perm[size_t(l)] = a.perm[size_t(mid)];
    d.block[size_t(l)] = a.block[size_t(mid)] * b.block[size_t(l)];
  }
  return d;
}

RepData Representation::rep_pow(const RepData& d, long e) const {
  RepData base = d;
  if (e < 0) {
    const int nl = model_.spec().order();
    RepData inv;
    inv.perm.assign(size_t(nl), 0);
    inv.block.resize(size_t(nl));
    for (int l = 0; l < nl; ++l) {
      int lp = d.perm[size_t(l)];
      inv.perm[size_t(lp)] = l;
      inv.block[size_t(lp)] = d.block[size_t(l)].inverse();
    }
    base = std::move(inv);
    e = -e;
  }
  RepData acc = rep_identity();
  while (e) {
    if (e & 1) acc = rep_mul(acc, base);
    base = rep_mul(base, base);
    e >>= 1;
  }
  return acc;
}

RepData Representation::evaluate(const AutoWord& w) const {
  RepData acc = rep_identity();
  for (const AutoFactor& f : w) {
    auto it = cache_.find(f.name);
    if (it == cache_.end()) it = cache_.emplace(f.name, rep_data(cat_.get(f.name).endo)).first;
    acc = rep_mul(acc, rep_pow(it->second, f.exp));
  }
  return acc;
}

bool Representation::in_gamma(const RepData& d) const {
  for (size_t l = 0; l < d.perm.size(); ++l)
    if (d.perm[l] != int(l)) return false;
  return true;
}

CMat Representation::rho(int alpha, int beta, const RepData& d) const {
  int lab = label(alpha, beta);
  if (d.perm[size_t(lab)] != lab)
    throw std::invalid_argument("map moves the eigenspace; rho is undefined");
  return d.block[size_t(lab)];
}

CMat Representation::varrho(const RepData& d) const {
  int n = block_size(label(0, 1));
  int s = model_.pres().r - 1;
  CMat E = CMat::elementary(model_.ctx(), n, 2 * s, s - 1, Cyclo::one(model_.ctx()));
  return E.inverse() * rho(0, 1, d) * E;
}

std::vector<CMat> Representation::rho_product(const RepData& d) const {
  const CoverSpec& spec = model_.spec();
  if (spec.h != spec.k) throw std::invalid_argument("rho product needs h = k");
  std::vector<CMat> out;
  for (int a = 0; a < spec.k; ++a) out.push_back(rho(a, 1, d));
  return out;
}

bool Representation::is_concentrated(const RepData& d, int alpha) const {
  const CoverSpec& spec = model_.spec();
  if (spec.h != spec.k) throw std::invalid_argument("concentration needs h = k");
  if (!in_gamma(d)) return false;
  alpha = ((alpha % spec.k) + spec.k) % spec.k;
  for (int delta = 0; delta < spec.k; ++delta)
    if (delta != alpha && !rho(delta, 1, d).is_identity()) return false;
  return true;
}

bool Representation::gamma_alpha(const RepData& d, int alpha) const {
  if (!is_concentrated(d, alpha)) return false;
  const CoverSpec& spec = model_.spec();
  for (int a = 0; a < spec.h; ++a)
    for (int b = 0; b < spec.k; ++b) {
      if (a == 0 && b == 0) continue;
      if (!rho(a, b, d).det().is_one()) return false;
    }
  return true;
}

Representation::Report Representation::verify_identities(const Endo& phi, long ell) const {
  Report rep;
  const CoverSpec& spec = model_.spec();
  if (std::gcd(ell, long(model_.ctx()->m())) != 1)
    throw std::invalid_argument("Galois exponent must be coprime to the conductor");
  RepData d = rep_data(phi);
  if (!in_gamma(d)) throw std::invalid_argument("phi is not in Gamma(v)");
  const NamedAuto& s1 = cat_.get("S1");
  const NamedAuto& r1 = cat_.get("R1");
  RepData ds = rep_data(compose(s1.inv, compose(phi, s1.endo)));
  RepData dr = rep_data(compose(r1.inv, compose(phi, r1.endo)));
  for (int a = 0; a < spec.h; ++a)
    for (int b = 0; b < spec.k; ++b) {
      if (a == 0 && b == 0) continue;
      std::string lab = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      if (rho(a, b, ds) == rho(a + b, b, d))
        rep.pass("S23 at " + lab);
      else
        rep.fail("S23 at " + lab);
      if (rho(a, b, dr) == rho(a, b - a, d))
        rep.pass("S24 at " + lab);
      else
        rep.fail("S24 at " + lab);
      if (rho(a, b, d).galois(ell) == rho(int(ell) * a, int(ell) * b, d))
        rep.pass("S25 at " + lab + " ell=" + std::to_string(ell));
      else
        rep.fail("S25 at " + lab + " ell=" + std::to_string(ell));
    }
  return rep;
}

OrientationSystem::OrientationSystem(const SurfacePresentation& pres)
    : pres_(pres), model_(pres, CoverSpec::orientation(pres)) {
  basis_plus_ = kernel_eigenspace(model_, 0, 0);
  basis_minus_ = kernel_eigenspace(model_, 1, 0);
}

OrientationReps OrientationSystem::reps(const Endo& phi) const {
  int dim = model_.dim();
  CMat M(model_.ctx(), dim, dim);
  for (int j = 0; j < dim; ++j) {
    std::vector<Rational> cls = model_.q_map(phi.apply(model_.coord_words()[size_t(j)]));
    for (int i = 0; i < dim; ++i) M.at(i, j) = Cyclo(model_.ctx(), cls[size_t(i)]);
  }
  auto plus = solve(basis_plus_, M * basis_plus_);
  auto minus = solve(basis_minus_, M * basis_minus_);
  if (!plus || !minus) throw std::logic_error("induced map does not respect the H^+/H^- split");
  return {std::move(*plus), std::move(*minus)};
}

std::optional<CMat> OrientationSystem::duality_intertwiner(const std::vector<Endo>& phis) const {
  const CycloContext* ctx = model_.ctx();
  int g = basis_plus_.cols();
  if (basis_minus_.cols() != g) return std::nullopt;
  CMat A(ctx, int(phis.size()) * g * g, g * g);
  int row0 = 0;
  for (const Endo& phi : phis) {
    OrientationReps r = reps(phi);
    CMat Q = r.plus.transpose().inverse();
    // minus * P - P * Q = 0, vectorized row by row of P
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        int row = row0 + i * g + j;
        for (int l = 0; l < g; ++l) {
          A.at(row, l * g + j) += r.minus.at(i, l);
          A.at(row, i * g + l) -= Q.at(l, j);
        }
      }
    row0 += g * g;
  }
  CMat K = kernel_basis(A);
  auto unvec = [&](const CMat& v) {
    CMat P(ctx, g, g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) P.at(i, j) = v.at(i * g + j, 0);
    return P;
  };
  for (int c = 0; c < K.cols(); ++c) {
    CMat P = unvec(K.col(c));
    if (!P.det().is_zero()) return P;
  }
  // generic small combinations
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 200 && K.cols() > 0; ++trial) {
    CMat v(ctx, K.rows(), 1);
    for (int c = 0; c < K.cols(); ++c) {
      Cyclo w = Cyclo::from_int(ctx, coef(rng));
      for (int i = 0; i < K.rows(); ++i) v.at(i, 0) += K.at(i, c) * w;
    }
    CMat P = unvec(v);
    if (!P.det().is_zero()) return P;
  }
  return std::nullopt;
}

}  // namespace nscover
