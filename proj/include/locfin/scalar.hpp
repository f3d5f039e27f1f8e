#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace locfin {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Either Q or F_p for a prime p.
class FieldDescriptor {
 public:
  FieldDescriptor() = default;

  static FieldDescriptor rationals() { return FieldDescriptor(); }
  /// Throws FieldMismatch if p is not prime.
  static FieldDescriptor prime(std::uint32_t p);

  bool is_rational() const noexcept { return p_ == 0; }
  bool is_prime() const noexcept { return p_ != 0; }
  /// 0 for Q.
  std::uint32_t characteristic() const noexcept { return p_; }
  std::string to_string() const;

  friend bool operator==(FieldDescriptor a, FieldDescriptor b) noexcept { return a.p_ == b.p_; }

 private:
  explicit FieldDescriptor(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// Exact element of Q or F_p.
///
/// Besides tagged field elements there is an untagged integer literal. It is
/// what Eigen produces for Scalar(0) and Scalar(1), and it behaves as the
/// image of that integer in whichever field it meets.
class Scalar {
 public:
  Scalar() noexcept : rep_(Literal{0}) {}
  Scalar(int v) noexcept : rep_(Literal{v}) {}  // NOLINT: Eigen needs the implicit form

  static Scalar zero(FieldDescriptor f) { return from_int(f, 0); }
  static Scalar one(FieldDescriptor f) { return from_int(f, 1); }
  static Scalar from_int(FieldDescriptor f, std::int64_t v);
  static Scalar from_bigint(FieldDescriptor f, const BigInt& v);
  /// num/den in f. Throws DivisionByZero if den is zero in f.
  static Scalar from_fraction(FieldDescriptor f, const BigInt& num, const BigInt& den);
  static Scalar from_rational(const Rational& q);
  /// Accepts "a", "-a" or "a/b". Over F_p the fraction is reduced mod p.
  static Scalar parse(FieldDescriptor f, const std::string& text);

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// nullopt for an untagged literal.
  std::optional<FieldDescriptor> field() const noexcept;
  /// Tag an untagged literal with f; check an already tagged value against f.
  Scalar in(FieldDescriptor f) const;

  Scalar inverse() const;

  /// "num/den" for Q (plain "num" for integers), decimal residue for F_p.
  std::string to_string() const;
  /// Residue for F_p values; throws FieldMismatch otherwise.
  std::uint32_t residue() const;
  /// Rational value; throws FieldMismatch for F_p values.
  Rational rational() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  /// Equality of field elements. Throws FieldMismatch across distinct fields.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  struct Literal {
    std::int64_t v;
  };
  struct Residue {
    std::uint32_t v;
    std::uint32_t p;
  };
  using Rep = std::variant<Literal, Residue, Rational>;

  explicit Scalar(Rep r) : rep_(std::move(r)) {}
  static Scalar make_residue(std::uint32_t p, std::int64_t v);
  friend struct ScalarAccess;

  Rep rep_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Eigen's generic code occasionally asks for these.
inline const Scalar& conj(const Scalar& x) { return x; }
inline const Scalar& real(const Scalar& x) { return x; }
inline Scalar imag(const Scalar&) { return Scalar(0); }
inline Scalar abs2(const Scalar& x) { return x * x; }

}  // namespace locfin

namespace Eigen {

template <>
struct NumTraits<locfin::Scalar> : GenericNumTraits<locfin::Scalar> {
  using Real = locfin::Scalar;
  using NonInteger = locfin::Scalar;
  using Nested = locfin::Scalar;
  using Literal = locfin::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(0); }
  static Real lowest() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
