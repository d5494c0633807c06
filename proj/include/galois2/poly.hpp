#pragma once

#include "galois2/arith.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace galois2 {

// Integer-coefficient polynomial, lowest degree first.  Immutable value;
// trailing zero coefficients are stripped on construction.
class IntPoly {
 public:
  IntPoly() = default;  // zero polynomial
  explicit IntPoly(std::vector<BigInt> coeffs);

  static IntPoly monomial(BigInt coeff, int degree);
  // Accepts a coefficient list "[-2,0,0,1]" (lowest first) or a human
  // form like "x^3-2", "x^2 + 2*x + 1".
  static IntPoly from_string(const std::string& text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const BigInt& coeff(int i) const;  // zero beyond the degree
  const BigInt& leading() const;
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  BigInt operator()(const BigInt& x) const;  // Horner, exact
  IntPoly derivative() const;
  IntPoly shifted(const BigInt& c) const;  // f(x + c)

  // Quotient and remainder; divisor must be monic so the result stays in Z[x].
  std::pair<IntPoly, IntPoly> divmod(const IntPoly& divisor) const;

  std::string str() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a);
  bool operator==(const IntPoly&) const = default;

 private:
  std::vector<BigInt> coeffs_;
};

BigInt evaluate(const IntPoly& f, const BigInt& x);

// Res(f, g) over Z, fraction-free subresultant PRS.
BigInt resultant(const IntPoly& f, const IntPoly& g);

// (-1)^{d(d-1)/2} Res(f, f') for monic f of degree d >= 2; for split f this
// equals prod_{i<j} (alpha_i - alpha_j)^2.
BigInt discriminant(const IntPoly& f);

// deg gcd(f, f') == 0, for deg f >= 1.
bool is_squarefree(const IntPoly& f);

struct IrreducibilityVerdict {
  enum class Kind { Proven, Disproven, Unknown };
  Kind kind = Kind::Unknown;
  std::string witness;                   // replayable description
  std::optional<BigInt> witness_prime;   // set for a mod-p proof
  std::optional<IntPoly> factor;         // set for Disproven

  bool proven() const { return kind == Kind::Proven; }
  bool disproven() const { return kind == Kind::Disproven; }
};

// Sound one-sided test for monic f: rational-root exclusion decides
// deg <= 3; degree >= 4 looks for an odd prime p <= 1000, p not dividing
// disc(f), with f mod p irreducible.  Unknown is an acceptable outcome.
IrreducibilityVerdict irreducibility_witness(const IntPoly& f,
                                             const FactorBudget& budget = {});

}  // namespace galois2
