#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galois2 {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Raised when an answer would have to rest on an unverified guess
// (primality beyond the deterministic witness range, factoring budget
// exhausted).  Callers are expected to abstain, not to degrade.
class FactorizationIncomplete : public std::runtime_error {
 public:
  FactorizationIncomplete(std::string what, BigInt cofactor)
      : std::runtime_error(std::move(what)), cofactor_(std::move(cofactor)) {}
  const BigInt& cofactor() const { return cofactor_; }

 private:
  BigInt cofactor_;
};

class InputRangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PrimePower {
  BigInt p;
  unsigned exp = 0;
  bool operator==(const PrimePower&) const = default;
};

// unit * prod p^exp with primes strictly increasing and exponents >= 1.
struct PrimeFactorization {
  int unit = 1;  // +1 or -1
  std::vector<PrimePower> factors;

  BigInt value() const;
  unsigned exponent_of(const BigInt& p) const;  // 0 when p absent
  std::string str() const;
  bool operator==(const PrimeFactorization&) const = default;
};

struct FactorBudget {
  std::uint64_t trial_bound = 1'000'000;     // trial division by p <= trial_bound
  std::uint64_t rho_iterations = 4'000'000;  // total Brent steps across all splits
};

// Deterministic Miller-Rabin (first 13 prime witnesses), valid for all
// n < 3.317e24.  Inputs at or above that bound throw InputRangeError:
// a certificate must never rest on a probable prime.
bool is_prime(const BigInt& n);

// Complete factorization of n != 0, or FactorizationIncomplete once the
// budget runs out.  Never returns a silently wrong answer.
PrimeFactorization factor(const BigInt& n, const FactorBudget& budget = {});

// Exact p-adic valuation; x must be nonzero and p prime.
int vp(const BigInt& x, const BigInt& p);
int vp(const BigRational& x, const BigInt& p);

// All positive divisors, ascending; nullopt when there are more than limit.
std::optional<std::vector<BigInt>> divisors(const PrimeFactorization& fact,
                                            std::size_t limit = 1u << 20);

BigInt parse_bigint(const std::string& text);

}  // namespace galois2
