#include "locfin/scalar.hpp"

#include <ostream>

#include "locfin/error.hpp"

namespace locfin {

namespace {

bool is_prime_number(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t mod_reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorCode::FieldMismatch, what); }

}  // namespace

FieldDescriptor FieldDescriptor::prime(std::uint32_t p) {
  if (!is_prime_number(p)) mismatch("characteristic " + std::to_string(p) + " is not prime");
  return FieldDescriptor(p);
}

std::string FieldDescriptor::to_string() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(p_);
}

Scalar Scalar::make_residue(std::uint32_t p, std::int64_t v) { return Scalar(Rep(Residue{mod_reduce(v, p), p})); }

Scalar Scalar::from_int(FieldDescriptor f, std::int64_t v) {
  if (f.is_rational()) return Scalar(Rep(Rational(v)));
  return make_residue(f.characteristic(), v);
}

Scalar Scalar::from_bigint(FieldDescriptor f, const BigInt& v) {
  if (f.is_rational()) return Scalar(Rep(Rational(v)));
  BigInt r = v % f.characteristic();
  if (r < 0) r += f.characteristic();
  return make_residue(f.characteristic(), r.convert_to<std::int64_t>());
}

Scalar Scalar::from_fraction(FieldDescriptor f, const BigInt& num, const BigInt& den) {
  Scalar d = from_bigint(f, den);
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  return from_bigint(f, num) / d;
}

Scalar Scalar::from_rational(const Rational& q) { return Scalar(Rep(q)); }

Scalar Scalar::parse(FieldDescriptor f, const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return from_bigint(f, BigInt(text));
    return from_fraction(f, BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) throw;
    throw Error(ErrorCode::MalformedPresentation, "cannot parse scalar '" + text + "'");
  }
}

bool Scalar::is_zero() const noexcept {
  if (const auto* l = std::get_if<Literal>(&rep_)) return l->v == 0;
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->v == 0;
  return std::get<Rational>(rep_) == 0;
}

bool Scalar::is_one() const noexcept {
  if (const auto* l = std::get_if<Literal>(&rep_)) return l->v == 1;
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->v == 1;
  return std::get<Rational>(rep_) == 1;
}

std::optional<FieldDescriptor> Scalar::field() const noexcept {
  if (std::holds_alternative<Literal>(rep_)) return std::nullopt;
  if (const auto* r = std::get_if<Residue>(&rep_)) return FieldDescriptor::prime(r->p);
  return FieldDescriptor::rationals();
}

Scalar Scalar::in(FieldDescriptor f) const {
  if (const auto* l = std::get_if<Literal>(&rep_)) return from_int(f, l->v);
  if (!(*field() == f)) mismatch(field()->to_string() + " value used as " + f.to_string());
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (const auto* l = std::get_if<Literal>(&rep_)) {
    if (l->v == 1 || l->v == -1) return *this;
    mismatch("inverse of an untagged literal");
  }
  if (const auto* r = std::get_if<Residue>(&rep_)) return Scalar(Rep(Residue{mod_pow(r->v, r->p - 2, r->p), r->p}));
  return Scalar(Rep(Rational(1) / std::get<Rational>(rep_)));
}

std::string Scalar::to_string() const {
  if (const auto* l = std::get_if<Literal>(&rep_)) return std::to_string(l->v);
  if (const auto* r = std::get_if<Residue>(&rep_)) return std::to_string(r->v);
  const auto& q = std::get<Rational>(rep_);
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::uint32_t Scalar::residue() const {
  if (const auto* r = std::get_if<Residue>(&rep_)) return r->v;
  mismatch("not a prime field element");
}

Rational Scalar::rational() const {
  if (const auto* l = std::get_if<Literal>(&rep_)) return Rational(l->v);
  if (const auto* q = std::get_if<Rational>(&rep_)) return *q;
  mismatch("not a rational");
}

struct ScalarAccess {
  using Literal = Scalar::Literal;
  using Residue = Scalar::Residue;
  using Rep = Scalar::Rep;

  static Scalar make(Rep r) { return Scalar(std::move(r)); }
  static const Rep& rep(const Scalar& s) { return s.rep_; }

  // Brings both operands into one field and calls the matching handler.
  template <typename LitOp, typename ResOp, typename RatOp>
  static auto dispatch(const Scalar& a, const Scalar& b, LitOp lit, ResOp res, RatOp rat) {
    const auto* al = std::get_if<Literal>(&a.rep_);
    const auto* bl = std::get_if<Literal>(&b.rep_);
    if (al && bl) return lit(al->v, bl->v);
    const auto* ar = std::get_if<Residue>(&a.rep_);
    const auto* br = std::get_if<Residue>(&b.rep_);
    if (ar || br) {
      std::uint32_t p = ar ? ar->p : br->p;
      if ((ar && br && ar->p != br->p) || std::holds_alternative<Rational>(a.rep_) ||
          std::holds_alternative<Rational>(b.rep_)) {
        mismatch("operands from different fields");
      }
      std::uint32_t x = ar ? ar->v : mod_reduce(al->v, p);
      std::uint32_t y = br ? br->v : mod_reduce(bl->v, p);
      return res(std::uint64_t{x}, std::uint64_t{y}, p);
    }
    const Rational x = al ? Rational(al->v) : std::get<Rational>(a.rep_);
    const Rational y = bl ? Rational(bl->v) : std::get<Rational>(b.rep_);
    return rat(x, y);
  }
};

namespace {

using Access = ScalarAccess;

Scalar residue(std::uint64_t v, std::uint32_t p) {
  return Access::make(Access::Residue{static_cast<std::uint32_t>(v % p), p});
}

Scalar literal(std::int64_t v) { return Access::make(Access::Literal{v}); }

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return Access::dispatch(
      a, b,
      [](std::int64_t x, std::int64_t y) {
        std::int64_t out = 0;
        if (__builtin_add_overflow(x, y, &out)) mismatch("untagged literal overflow");
        return literal(out);
      },
      [](std::uint64_t x, std::uint64_t y, std::uint32_t p) { return residue(x + y, p); },
      [](const Rational& x, const Rational& y) { return Scalar::from_rational(x + y); });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return Access::dispatch(
      a, b,
      [](std::int64_t x, std::int64_t y) {
        std::int64_t out = 0;
        if (__builtin_mul_overflow(x, y, &out)) mismatch("untagged literal overflow");
        return literal(out);
      },
      [](std::uint64_t x, std::uint64_t y, std::uint32_t p) { return residue(x * y, p); },
      [](const Rational& x, const Rational& y) { return Scalar::from_rational(x * y); });
}

Scalar operator-(const Scalar& a) {
  const auto& rep = Access::rep(a);
  if (const auto* l = std::get_if<Access::Literal>(&rep)) return literal(-l->v);
  if (const auto* r = std::get_if<Access::Residue>(&rep)) return residue(r->p - r->v, r->p);
  return Scalar::from_rational(-std::get<Rational>(rep));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  const auto* al = std::get_if<Access::Literal>(&Access::rep(a));
  const auto* bl = std::get_if<Access::Literal>(&Access::rep(b));
  if (al && bl) {
    if (al->v % bl->v != 0) mismatch("inexact division of untagged literals");
    return literal(al->v / bl->v);
  }
  if (bl) {
    // a is tagged; tag the divisor with the same field.
    return a * b.in(*a.field()).inverse();
  }
  return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  return Access::dispatch(
      a, b, [](std::int64_t x, std::int64_t y) { return x == y; },
      [](std::uint64_t x, std::uint64_t y, std::uint32_t) { return x == y; },
      [](const Rational& x, const Rational& y) { return x == y; });
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace locfin
