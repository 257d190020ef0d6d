#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nscover {

using Rational = mpq_class;
using Integer = mpz_class;

/// Q(zeta_m) presented as Q[X]/(Phi_m), elements in the power basis.
class CycloContext {
 public:
  explicit CycloContext(int m);

  int m() const { return m_; }
  int degree() const { return degree_; }
  const std::vector<Integer>& phi() const { return phi_; }

  // zeta_m^e in the power basis, for 0 <= e < 2*degree-1 (used during reduction).
  const std::vector<Rational>& power(int e) const { return powers_[size_t(e)]; }

  /// Shared per-conductor instances.
  static const CycloContext* get(int m);

 private:
  int m_;
  int degree_;
  std::vector<Integer> phi_;  // monic, coefficient of X^i at index i
  std::vector<std::vector<Rational>> powers_;
};

/// Exact element of Q(zeta_m).
class Cyclo {
 public:
  Cyclo() : ctx_(CycloContext::get(1)), c_(1) {}
  explicit Cyclo(const CycloContext* ctx) : ctx_(ctx), c_(size_t(ctx->degree())) {}
  Cyclo(const CycloContext* ctx, const Rational& r) : Cyclo(ctx) { c_[0] = r; }
  Cyclo(const CycloContext* ctx, std::vector<Rational> coeffs);

  static Cyclo zero(const CycloContext* ctx) { return Cyclo(ctx); }
  static Cyclo one(const CycloContext* ctx) { return Cyclo(ctx, Rational(1)); }
  static Cyclo from_int(const CycloContext* ctx, long v) { return Cyclo(ctx, Rational(v)); }
  /// zeta_m^a, exponent taken mod m.
  static Cyclo root_of_unity(const CycloContext* ctx, long a);

  const CycloContext* ctx() const { return ctx_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  bool is_integral() const;
  Rational rational_part() const { return c_[0]; }

  Cyclo operator+(const Cyclo& rhs) const;
  Cyclo operator-(const Cyclo& rhs) const;
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& rhs) const;
  Cyclo inv() const;
  Cyclo operator/(const Cyclo& rhs) const { return *this * rhs.inv(); }
  bool operator==(const Cyclo& rhs) const;
  bool operator!=(const Cyclo& rhs) const { return !(*this == rhs); }

  Cyclo& operator+=(const Cyclo& rhs) { return *this = *this + rhs; }
  Cyclo& operator-=(const Cyclo& rhs) { return *this = *this - rhs; }
  Cyclo& operator*=(const Cyclo& rhs) { return *this = *this * rhs; }

  /// Galois automorphism zeta_m -> zeta_m^l, gcd(l, m) = 1.
  Cyclo galois(long l) const;
  /// Product of all Galois conjugates (a rational).
  Rational norm() const;

  /// Map into Q(zeta_m') for m | m'.
  Cyclo embed(const CycloContext* bigger) const;

  std::string str() const;  // "p/q" polynomial text like "1 + 2*z^1"

 private:
  void check_ctx(const Cyclo& rhs) const {
    if (ctx_ != rhs.ctx_) throw std::invalid_argument("cyclotomic context mismatch");
  }
  const CycloContext* ctx_;
  std::vector<Rational> c_;  // length degree
};

}  // namespace nscover
