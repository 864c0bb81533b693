#include "greenrel/field.hpp"

#include <stdexcept>

namespace greenrel {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Extended Euclid: inverse of a mod p, 0 < a < p.
std::int64_t invmod(std::int64_t a, std::int64_t p) {
  std::int64_t old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  std::int64_t inv = old_s % p;
  return inv < 0 ? inv + p : inv;
}

// GF(4) multiplication table, encoding 0,1,w,w+1 with w^2 = w+1.
constexpr int kGf4Mul[4][4] = {
    {0, 0, 0, 0},
    {0, 1, 2, 3},
    {0, 2, 3, 1},
    {0, 3, 1, 2},
};
constexpr int kGf4Inv[4] = {0, 1, 3, 2};

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == (u64)n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == (u64)n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
  return FieldSpec(FieldKind::Prime, p);
}

FieldSpec FieldSpec::parse(const std::string& token) {
  if (token == "q") return rational();
  if (token == "gf4") return gf4();
  if (token == "gf2") return gf2();
  if (token == "gf3") return gf3();
  if (token == "gf5") return gf5();
  if (token.rfind("gfp:", 0) == 0) {
    std::int64_t p = 0;
    try {
      p = std::stoll(token.substr(4));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad field token: " + token);
    }
    return prime(p);
  }
  throw std::invalid_argument("unknown field token: " + token);
}

std::int64_t FieldSpec::modulus() const {
  if (kind_ != FieldKind::Prime)
    throw std::domain_error("modulus: not a prime field");
  return p_;
}

std::int64_t FieldSpec::order() const {
  if (kind_ == FieldKind::Rational)
    throw std::domain_error("order: field is infinite");
  return p_;
}

std::string FieldSpec::token() const {
  switch (kind_) {
    case FieldKind::GF4:
      return "gf4";
    case FieldKind::Rational:
      return "q";
    case FieldKind::Prime:
      if (p_ == 2) return "gf2";
      if (p_ == 3) return "gf3";
      if (p_ == 5) return "gf5";
      return "gfp:" + std::to_string(p_);
  }
  throw std::logic_error("unreachable");
}

FieldElement FieldElement::zero(const FieldSpec& spec) {
  FieldElement e(spec);
  return e;
}

FieldElement FieldElement::one(const FieldSpec& spec) {
  FieldElement e(spec);
  if (spec.kind() == FieldKind::Rational)
    e.rat_ = 1;
  else
    e.code_ = 1;
  return e;
}

FieldElement FieldElement::from_code(const FieldSpec& spec, std::int64_t code) {
  if (!spec.is_finite()) throw std::domain_error("from_code: infinite field");
  if (code < 0 || code >= spec.order())
    throw std::invalid_argument("element code out of range");
  FieldElement e(spec);
  e.code_ = code;
  return e;
}

FieldElement FieldElement::from_integer(const FieldSpec& spec,
                                        std::int64_t value) {
  FieldElement e(spec);
  switch (spec.kind()) {
    case FieldKind::Prime: {
      std::int64_t p = spec.modulus();
      std::int64_t r = value % p;
      e.code_ = r < 0 ? r + p : r;
      break;
    }
    case FieldKind::GF4:
      e.code_ = ((value % 2) + 2) % 2;  // integers land in the prime subfield
      break;
    case FieldKind::Rational:
      e.rat_ = value;
      break;
  }
  return e;
}

FieldElement FieldElement::from_rational(BigInt numerator, BigInt denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  FieldElement e(FieldSpec::rational());
  e.rat_ = BigRat(std::move(numerator), std::move(denominator));
  return e;
}

FieldElement FieldElement::parse(const FieldSpec& spec,
                                 const std::string& literal) {
  try {
    if (spec.kind() == FieldKind::Rational) {
      auto slash = literal.find('/');
      if (slash == std::string::npos) return from_rational(BigInt(literal), 1);
      return from_rational(BigInt(literal.substr(0, slash)),
                           BigInt(literal.substr(slash + 1)));
    }
    std::int64_t v = std::stoll(literal);
    if (spec.kind() == FieldKind::GF4) {
      if (v < 0 || v > 3)
        throw std::invalid_argument("gf4 literal out of range");
      return from_code(spec, v);
    }
    return from_integer(spec, v);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad element literal: " + literal);
  }
}

bool FieldElement::is_zero() const {
  return spec_.is_finite() ? code_ == 0 : rat_.is_zero();
}

bool FieldElement::is_one() const {
  return spec_.is_finite() ? code_ == 1 : rat_ == 1;
}

std::int64_t FieldElement::code() const {
  if (!spec_.is_finite()) throw std::domain_error("code: infinite field");
  return code_;
}

const BigRat& FieldElement::rational() const {
  if (spec_.is_finite()) throw std::domain_error("rational: finite field");
  return rat_;
}

std::string FieldElement::str() const {
  if (spec_.is_finite()) return std::to_string(code_);
  if (denominator(rat_) == 1) return numerator(rat_).str();
  return numerator(rat_).str() + "/" + denominator(rat_).str();
}

namespace {
void check_same_spec(const FieldElement& a, const FieldElement& b) {
  if (!(a.spec() == b.spec()))
    throw std::invalid_argument("field spec mismatch");
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  check_same_spec(*this, rhs);
  FieldElement e(spec_);
  switch (spec_.kind()) {
    case FieldKind::Prime:
      e.code_ = static_cast<std::int64_t>(
          ((u64)code_ + (u64)rhs.code_) % (u64)spec_.modulus());
      break;
    case FieldKind::GF4:
      e.code_ = code_ ^ rhs.code_;
      break;
    case FieldKind::Rational:
      e.rat_ = rat_ + rhs.rat_;
      break;
  }
  return e;
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  return *this + (-rhs);
}

FieldElement FieldElement::operator-() const {
  FieldElement e(spec_);
  switch (spec_.kind()) {
    case FieldKind::Prime:
      e.code_ = code_ == 0 ? 0 : spec_.modulus() - code_;
      break;
    case FieldKind::GF4:
      e.code_ = code_;  // characteristic 2
      break;
    case FieldKind::Rational:
      e.rat_ = -rat_;
      break;
  }
  return e;
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  check_same_spec(*this, rhs);
  FieldElement e(spec_);
  switch (spec_.kind()) {
    case FieldKind::Prime:
      e.code_ = static_cast<std::int64_t>(
          mulmod((u64)code_, (u64)rhs.code_, (u64)spec_.modulus()));
      break;
    case FieldKind::GF4:
      e.code_ = kGf4Mul[code_][rhs.code_];
      break;
    case FieldKind::Rational:
      e.rat_ = rat_ * rhs.rat_;
      break;
  }
  return e;
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
  return *this * rhs.inverse();
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  FieldElement e(spec_);
  switch (spec_.kind()) {
    case FieldKind::Prime:
      e.code_ = invmod(code_, spec_.modulus());
      break;
    case FieldKind::GF4:
      e.code_ = kGf4Inv[code_];
      break;
    case FieldKind::Rational:
      e.rat_ = 1 / rat_;
      break;
  }
  return e;
}

bool FieldElement::operator==(const FieldElement& rhs) const {
  if (!(spec_ == rhs.spec_)) return false;
  return spec_.is_finite() ? code_ == rhs.code_ : rat_ == rhs.rat_;
}

std::vector<FieldElement> enumerate_field(const FieldSpec& spec) {
  if (!spec.is_finite())
    throw std::domain_error("enumerate_field: field is infinite");
  std::vector<FieldElement> out;
  out.reserve(spec.order());
  for (std::int64_t c = 0; c < spec.order(); ++c)
    out.push_back(FieldElement::from_code(spec, c));
  return out;
}

}  // namespace greenrel
