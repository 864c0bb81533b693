#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace greenrel {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class FieldKind { Prime, GF4, Rational };

/// Scalar domain descriptor: GF(p) for prime p, the four-element field
/// GF(4) = GF(2)[x]/(x^2+x+1), or the exact rationals.
class FieldSpec {
 public:
  static FieldSpec prime(std::int64_t p);  // throws unless p is prime
  static FieldSpec gf2() { return prime(2); }
  static FieldSpec gf3() { return prime(3); }
  static FieldSpec gf4() { return FieldSpec(FieldKind::GF4, 4); }
  static FieldSpec gf5() { return prime(5); }
  static FieldSpec rational() { return FieldSpec(FieldKind::Rational, 0); }

  /// Accepts the tokens gf2, gf3, gf4, gf5, gfp:<p>, q.
  static FieldSpec parse(const std::string& token);

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ != FieldKind::Rational; }
  std::int64_t modulus() const;  // Prime fields only
  std::int64_t order() const;    // finite fields only
  std::string token() const;

  bool operator==(const FieldSpec&) const = default;

 private:
  FieldSpec(FieldKind kind, std::int64_t p) : kind_(kind), p_(p) {}

  FieldKind kind_;
  std::int64_t p_;  // modulus for Prime, 4 for GF4, 0 for Rational
};

/// One field element in canonical form. Finite fields store a code
/// (residue 0..p-1, or the GF(4) encoding 0,1,2,3 for 0,1,w,w+1);
/// rationals are kept in lowest terms with positive denominator.
class FieldElement {
 public:
  static FieldElement zero(const FieldSpec& spec);
  static FieldElement one(const FieldSpec& spec);
  /// Canonical code of a finite-field element (0 <= code < order).
  static FieldElement from_code(const FieldSpec& spec, std::int64_t code);
  /// Image of an integer in the field (reduced mod p; mod 2 for GF(4)).
  static FieldElement from_integer(const FieldSpec& spec, std::int64_t value);
  static FieldElement from_rational(BigInt numerator, BigInt denominator);
  /// Parses the textual form used by the matrix file format.
  static FieldElement parse(const FieldSpec& spec, const std::string& literal);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const;
  bool is_one() const;
  std::int64_t code() const;      // finite fields only
  const BigRat& rational() const; // rational field only
  std::string str() const;

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator/(const FieldElement& rhs) const;  // throws on rhs == 0
  FieldElement operator-() const;
  FieldElement inverse() const;  // throws on zero

  bool operator==(const FieldElement& rhs) const;
  bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

 private:
  explicit FieldElement(const FieldSpec& spec) : spec_(spec) {}

  FieldSpec spec_;
  std::int64_t code_ = 0;  // finite fields
  BigRat rat_;             // rationals
};

/// All q elements of a finite field in ascending encoding order, zero first.
std::vector<FieldElement> enumerate_field(const FieldSpec& spec);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::int64_t n);

}  // namespace greenrel
