#include "galois2/arith.hpp"

#include <algorithm>
#include <cctype>

namespace galois2 {

namespace {

// Sorenson & Webster: the first 13 primes are a deterministic witness set
// below 3,317,044,064,679,887,385,961,981.
const BigInt kIsPrimeBound("3317044064679887385961981");
constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool miller_rabin_u64(std::uint64_t n) {
  // n odd, >= 3
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool miller_rabin_big(const BigInt& n) {
  BigInt d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t wa : kWitnesses) {
    BigInt a = BigInt(wa) % n;
    if (a == 0) continue;
    BigInt x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Floor of the k-th root, Newton iteration.
BigInt iroot(const BigInt& n, unsigned k) {
  if (n <= 1 || k == 1) return n;
  BigInt x = BigInt(1) << (static_cast<unsigned>(boost::multiprecision::msb(n)) / k + 1);
  while (true) {
    // x' = ((k-1)x + n / x^(k-1)) / k
    BigInt xk1 = 1;
    for (unsigned i = 0; i + 1 < k; ++i) xk1 *= x;
    BigInt y = ((k - 1) * x + n / xk1) / k;
    if (y >= x) break;
    x = y;
  }
  return x;
}

// Brent's cycle-finding variant of Pollard rho.  Deterministic parameter
// schedule; consumes steps from *budget.  Returns a nontrivial factor or 0.
BigInt rho_brent(const BigInt& n, std::uint64_t* budget) {
  for (std::uint64_t c = 1; *budget > 0; ++c) {
    BigInt y = 2, q = 1, d = 1, x = 0, ys = 0;
    std::uint64_t r = 1;
    const std::uint64_t batch = 128;
    while (d == 1 && *budget > 0) {
      x = y;
      for (std::uint64_t i = 0; i < r && *budget > 0; ++i) {
        y = (y * y + c) % n;
        --*budget;
      }
      std::uint64_t k = 0;
      while (k < r && d == 1 && *budget > 0) {
        ys = y;
        std::uint64_t lim = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < lim && *budget > 0; ++i) {
          y = (y * y + c) % n;
          BigInt diff = x > y ? x - y : y - x;
          q = (q * diff) % n;
          --*budget;
        }
        d = boost::multiprecision::gcd(q, n);
        k += lim;
      }
      r *= 2;
    }
    if (d == n) {
      // backtrack one step at a time
      do {
        ys = (ys * ys + c) % n;
        BigInt diff = x > ys ? x - ys : ys - x;
        d = boost::multiprecision::gcd(diff, n);
      } while (d == 1);
    }
    if (d != 1 && d != n) return d;
    // d == n even after backtracking: retry with the next c
  }
  return 0;
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n >= kIsPrimeBound)
    throw InputRangeError("is_prime: input exceeds the deterministic witness range");
  if (n < 2) return false;
  if (n < 4) return true;
  if ((n & 1) == 0) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max())
    return miller_rabin_u64(n.convert_to<std::uint64_t>());
  return miller_rabin_big(n);
}

PrimeFactorization factor(const BigInt& n, const FactorBudget& budget) {
  if (n == 0) throw std::invalid_argument("factor: n must be nonzero");
  PrimeFactorization out;
  out.unit = n < 0 ? -1 : 1;
  BigInt m = boost::multiprecision::abs(n);

  auto push = [&out](const BigInt& p, unsigned e) { out.factors.push_back({p, e}); };

  // trial division: 2, 3, then 6k +/- 1
  for (BigInt p : {BigInt(2), BigInt(3)}) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) push(p, e);
  }
  BigInt p = 5;
  int step = 2;  // alternates 5,7,11,13,...
  while (p <= budget.trial_bound && p * p <= m) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) push(p, e);
    p += step;
    step = 6 - step;
  }
  if (m > 1 && p * p > m) {
    // no prime factor below sqrt(m) remains, so m is prime
    push(m, 1);
    m = 1;
  }

  // split remaining cofactors with rho; primality is only ever asserted
  // inside the deterministic Miller-Rabin range
  std::uint64_t steps = budget.rho_iterations;
  std::vector<BigInt> pending;
  if (m > 1) pending.push_back(m);
  while (!pending.empty()) {
    BigInt c = pending.back();
    pending.pop_back();
    if (c < kIsPrimeBound && is_prime(c)) {
      push(c, 1);
      continue;
    }
    bool split = false;
    for (unsigned k = 2; (BigInt(1) << k) <= c; ++k) {
      BigInt r = iroot(c, k);
      BigInt rk = 1;
      for (unsigned i = 0; i < k; ++i) rk *= r;
      if (rk == c) {
        for (unsigned i = 0; i < k; ++i) pending.push_back(r);
        split = true;
        break;
      }
      if (r < 2) break;
    }
    if (split) continue;
    BigInt d = rho_brent(c, &steps);
    if (d == 0) {
      BigInt cof = c;
      for (const BigInt& q : pending) cof *= q;
      throw FactorizationIncomplete(
          "factor: budget exhausted with composite cofactor " + cof.str(), cof);
    }
    pending.push_back(d);
    pending.push_back(c / d);
  }

  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  std::vector<PrimePower> merged;
  for (const PrimePower& f : out.factors) {
    if (!merged.empty() && merged.back().p == f.p)
      merged.back().exp += f.exp;
    else
      merged.push_back(f);
  }
  out.factors = std::move(merged);
  return out;
}

int vp(const BigInt& x, const BigInt& p) {
  if (x == 0) throw std::invalid_argument("vp: x must be nonzero");
  if (p < 2) throw std::invalid_argument("vp: p must be prime");
  BigInt m = boost::multiprecision::abs(x);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int vp(const BigRational& x, const BigInt& p) {
  if (x == 0) throw std::invalid_argument("vp: x must be nonzero");
  return vp(boost::multiprecision::numerator(x), p) -
         vp(boost::multiprecision::denominator(x), p);
}

BigInt PrimeFactorization::value() const {
  BigInt v = unit;
  for (const PrimePower& f : factors)
    for (unsigned i = 0; i < f.exp; ++i) v *= f.p;
  return v;
}

unsigned PrimeFactorization::exponent_of(const BigInt& p) const {
  for (const PrimePower& f : factors)
    if (f.p == p) return f.exp;
  return 0;
}

std::string PrimeFactorization::str() const {
  std::string s = unit < 0 ? "-1" : "+1";
  for (const PrimePower& f : factors) {
    s += " * " + f.p.str();
    if (f.exp > 1) s += "^" + std::to_string(f.exp);
  }
  return s;
}

std::optional<std::vector<BigInt>> divisors(const PrimeFactorization& fact,
                                            std::size_t limit) {
  std::size_t count = 1;
  for (const PrimePower& f : fact.factors) {
    if (count > limit / (f.exp + 1)) return std::nullopt;
    count *= f.exp + 1;
  }
  std::vector<BigInt> out{BigInt(1)};
  for (const PrimePower& f : fact.factors) {
    std::size_t n = out.size();
    BigInt pe = 1;
    for (unsigned e = 1; e <= f.exp; ++e) {
      pe *= f.p;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size())
    throw std::invalid_argument("parse_bigint: empty integer '" + text + "'");
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("parse_bigint: bad integer '" + text + "'");
  return BigInt(text);
}

}  // namespace galois2
