#include "nscover/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace nscover {

namespace {

// Quotient of integer polynomials, remainder must be zero.
std::vector<Integer> exact_div(const std::vector<Integer>& num, const std::vector<Integer>& den) {
  std::vector<Integer> rem = num;
  std::vector<Integer> quo(num.size() - den.size() + 1, Integer(0));
  for (int d = int(rem.size()) - 1; d >= int(den.size()) - 1; --d) {
    Integer lead = rem[size_t(d)];
    if (lead == 0) continue;
    int shift = d - int(den.size()) + 1;
    Integer q;
    mpz_divexact(q.get_mpz_t(), lead.get_mpz_t(), den.back().get_mpz_t());
    quo[size_t(shift)] = q;
    for (size_t i = 0; i < den.size(); ++i) rem[size_t(shift) + i] -= q * den[i];
  }
  for (const Integer& r : rem)
    if (r != 0) throw std::logic_error("non-exact polynomial division");
  return quo;
}

std::vector<Integer> cyclotomic_poly(int m) {
  // (X^m - 1) divided by Phi_d for every proper divisor d of m.
  std::vector<Integer> p(size_t(m) + 1, Integer(0));
  p[0] = -1;
  p[size_t(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = exact_div(p, cyclotomic_poly(d));
  return p;
}

}  // namespace

CycloContext::CycloContext(int m) : m_(m) {
  if (m < 1) throw std::invalid_argument("conductor must be positive");
  phi_ = cyclotomic_poly(m);
  degree_ = int(phi_.size()) - 1;
  int top = std::max(2 * degree_ - 1, m + 1);
  powers_.resize(size_t(top));
  for (int e = 0; e < top; ++e) {
    auto& v = powers_[size_t(e)];
    v.assign(size_t(degree_), Rational(0));
    if (e < degree_) {
      v[size_t(e)] = 1;
    } else {
      // zeta^e = zeta * zeta^(e-1), then reduce the top coefficient by Phi.
      const auto& prev = powers_[size_t(e - 1)];
      Rational top_coeff = prev[size_t(degree_ - 1)];
      for (int i = degree_ - 1; i > 0; --i) v[size_t(i)] = prev[size_t(i - 1)];
      for (int i = 0; i < degree_; ++i) v[size_t(i)] -= top_coeff * Rational(phi_[size_t(i)]);
    }
  }
}

const CycloContext* CycloContext::get(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, std::make_unique<CycloContext>(m)).first;
  return it->second.get();
}

Cyclo::Cyclo(const CycloContext* ctx, std::vector<Rational> coeffs) : ctx_(ctx), c_(std::move(coeffs)) {
  if (int(c_.size()) != ctx->degree()) throw std::invalid_argument("coefficient vector length mismatch");
  for (auto& r : c_) r.canonicalize();
}

Cyclo Cyclo::root_of_unity(const CycloContext* ctx, long a) {
  long m = ctx->m();
  a %= m;
  if (a < 0) a += m;
  Cyclo out(ctx);
  out.c_ = ctx->power(int(a));
  return out;
}

bool Cyclo::is_zero() const {
  for (const auto& r : c_)
    if (r != 0) return false;
  return true;
}

bool Cyclo::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyclo::is_integral() const {
  for (const auto& r : c_)
    if (r.get_den() != 1) return false;
  return true;
}

Cyclo Cyclo::operator+(const Cyclo& rhs) const {
  check_ctx(rhs);
  Cyclo out(ctx_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] + rhs.c_[i];
  return out;
}

Cyclo Cyclo::operator-(const Cyclo& rhs) const {
  check_ctx(rhs);
  Cyclo out(ctx_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] - rhs.c_[i];
  return out;
}

Cyclo Cyclo::operator-() const {
  Cyclo out(ctx_);
  for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = -c_[i];
  return out;
}

Cyclo Cyclo::operator*(const Cyclo& rhs) const {
  check_ctx(rhs);
  int deg = ctx_->degree();
  std::vector<Rational> full(size_t(2 * deg - 1), Rational(0));
  for (int i = 0; i < deg; ++i) {
    if (c_[size_t(i)] == 0) continue;
    for (int j = 0; j < deg; ++j) {
      if (rhs.c_[size_t(j)] == 0) continue;
      full[size_t(i + j)] += c_[size_t(i)] * rhs.c_[size_t(j)];
    }
  }
  Cyclo out(ctx_);
  for (int e = 0; e < 2 * deg - 1; ++e) {
    if (full[size_t(e)] == 0) continue;
    const auto& pw = ctx_->power(e);
    for (int i = 0; i < deg; ++i) out.c_[size_t(i)] += full[size_t(e)] * pw[size_t(i)];
  }
  return out;
}

namespace {
using Poly = std::vector<Rational>;  // coefficient of X^i at index i

int pdeg(const Poly& p) {
  for (int i = int(p.size()) - 1; i >= 0; --i)
    if (p[size_t(i)] != 0) return i;
  return -1;
}

// r = a - q*b, returns q; plain polynomial division over Q.
Poly pdivmod(Poly a, const Poly& b, Poly* rem) {
  int db = pdeg(b);
  Poly q(a.size(), Rational(0));
  for (int d = pdeg(a); d >= db; d = pdeg(a)) {
    Rational f = a[size_t(d)] / b[size_t(db)];
    q[size_t(d - db)] = f;
    for (int i = 0; i <= db; ++i) a[size_t(d - db + i)] -= f * b[size_t(i)];
  }
  *rem = a;
  return q;
}
}  // namespace

Cyclo Cyclo::inv() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta_m)");
  int deg = ctx_->degree();
  // Extended Euclid for gcd(f, Phi_m) = 1 in Q[X].
  Poly r0(size_t(deg + 1), Rational(0));
  for (int i = 0; i <= deg; ++i) r0[size_t(i)] = Rational(ctx_->phi()[size_t(i)]);
  Poly r1(c_.begin(), c_.end());
  r1.resize(size_t(deg + 1), Rational(0));
  Poly s0(size_t(deg + 1), Rational(0));               // coefficient of f in r0
  Poly s1(size_t(deg + 1), Rational(0));
  s1[0] = 1;
  while (true) {
    int d1 = pdeg(r1);
    if (d1 == 0) break;
    if (d1 < 0) throw std::logic_error("Phi_m not coprime to nonzero element");
    Poly rem;
    Poly q = pdivmod(r0, r1, &rem);
    Poly snew(size_t(deg + 1), Rational(0));
    for (int i = 0; i <= deg; ++i) {
      snew[size_t(i)] = s0[size_t(i)];
      if (q[size_t(i)] == 0) continue;
      for (int j = 0; i + j <= deg; ++j) snew[size_t(i + j)] -= q[size_t(i)] * s1[size_t(j)];
    }
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = snew;
  }
  Rational unit = r1[0];
  Cyclo out(ctx_);
  for (int i = 0; i < deg; ++i) out.c_[size_t(i)] = s1[size_t(i)] / unit;
  return out;
}

bool Cyclo::operator==(const Cyclo& rhs) const {
  check_ctx(rhs);
  return c_ == rhs.c_;
}

Cyclo Cyclo::galois(long l) const {
  long m = ctx_->m();
  l %= m;
  if (l < 0) l += m;
  if (std::gcd(l, m) != 1) throw std::invalid_argument("galois exponent not coprime to conductor");
  Cyclo out(ctx_);
  for (int i = 0; i < ctx_->degree(); ++i) {
    if (c_[size_t(i)] == 0) continue;
    const auto& pw = ctx_->power(int((long(i) * l) % m));
    for (int j = 0; j < ctx_->degree(); ++j) out.c_[size_t(j)] += c_[size_t(i)] * pw[size_t(j)];
  }
  return out;
}

Rational Cyclo::norm() const {
  Cyclo prod = Cyclo::one(ctx_);
  for (long l = 1; l <= ctx_->m(); ++l)
    if (std::gcd(l, long(ctx_->m())) == 1) prod *= galois(l);
  if (!prod.is_rational()) throw std::logic_error("norm is not rational");
  return prod.rational_part();
}

Cyclo Cyclo::embed(const CycloContext* bigger) const {
  if (bigger == ctx_) return *this;
  if (bigger->m() % ctx_->m() != 0) throw std::invalid_argument("embed needs divisible conductors");
  long step = bigger->m() / ctx_->m();
  Cyclo out(bigger);
  for (int i = 0; i < ctx_->degree(); ++i) {
    if (c_[size_t(i)] == 0) continue;
    const auto& pw = bigger->power(int((long(i) * step) % bigger->m()));
    for (int j = 0; j < bigger->degree(); ++j) out.c_[size_t(j)] += c_[size_t(i)] * pw[size_t(j)];
  }
  return out;
}

std::string Cyclo::str() const {
  std::ostringstream out;
  bool any = false;
  for (int i = 0; i < ctx_->degree(); ++i) {
    if (c_[size_t(i)] == 0) continue;
    if (any) out << " + ";
    out << c_[size_t(i)].get_str();
    if (i > 0) out << "*z^" << i;
    any = true;
  }
  if (!any) out << "0";
  return out.str();
}

}  // namespace nscover
