#include "galois2/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace galois2 {

namespace {

void strip(std::vector<BigInt>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

const BigInt kZero = 0;

BigInt content(const IntPoly& f) {
  BigInt c = 0;
  for (const BigInt& a : f.coeffs()) c = boost::multiprecision::gcd(c, a);
  return c;  // nonnegative
}

IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return f;
  BigInt c = content(f);
  std::vector<BigInt> out;
  out.reserve(f.coeffs().size());
  for (const BigInt& a : f.coeffs()) out.push_back(a / c);
  return IntPoly(std::move(out));
}

BigInt ipow(BigInt base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a == q*b + R with deg R < deg b.
IntPoly prem(const IntPoly& a, const IntPoly& b) {
  const BigInt& d = b.leading();
  int e = a.degree() - b.degree() + 1;
  std::vector<BigInt> r = a.coeffs();
  int steps = 0;
  while (static_cast<int>(r.size()) - 1 >= b.degree() && !r.empty()) {
    int dr = static_cast<int>(r.size()) - 1;
    BigInt lead = r.back();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= d;
    int off = dr - b.degree();
    for (int i = 0; i <= b.degree(); ++i) r[off + i] -= lead * b.coeff(i);
    strip(r);
    ++steps;
  }
  BigInt scale = ipow(d, e - steps);
  for (BigInt& x : r) x *= scale;
  return IntPoly(std::move(r));
}

// Primitive PRS gcd (up to sign/content), enough to read off the gcd degree
// and to exhibit a nontrivial common factor.
IntPoly gcd_primitive(IntPoly a, IntPoly b) {
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = primitive_part(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && a.leading() < 0) a = -a;
  return a;
}

// ---- arithmetic in F_p[x] for small p (witness search only) ----

using FpPoly = std::vector<std::uint64_t>;  // lowest first, entries < p

void fp_strip(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_reduce(const IntPoly& f, std::uint64_t p) {
  FpPoly out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    BigInt r = f.coeff(static_cast<int>(i)) % p;
    if (r < 0) r += p;
    out[i] = r.convert_to<std::uint64_t>();
  }
  fp_strip(out);
  return out;
}

// a*b mod (m, p); m monic
FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  std::size_t dm = m.size() - 1;
  for (std::size_t k = c.size(); k-- > dm;) {
    std::uint64_t lead = c[k];
    if (lead == 0) continue;
    c[k] = 0;
    for (std::size_t i = 0; i < dm; ++i)
      c[k - dm + i] = (c[k - dm + i] + (p - 1) * lead % p * m[i]) % p;
  }
  c.resize(dm);
  fp_strip(c);
  return c;
}

// x^e mod (m, p)
FpPoly fp_xpow(BigInt e, const FpPoly& m, std::uint64_t p) {
  FpPoly result{1};
  FpPoly base{0, 1};
  if (m.size() <= 2) base = fp_mulmod(base, {1}, m, p);
  while (e > 0) {
    if ((e & 1) != 0) result = fp_mulmod(result, base, m, p);
    base = fp_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  // p prime, a != 0
  std::uint64_t r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  while (!b.empty()) {
    // a mod b
    std::uint64_t inv = fp_inv(b.back(), p);
    while (a.size() >= b.size()) {
      std::uint64_t lead = a.back() * inv % p;
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[off + i] = (a[off + i] + (p - 1) * lead % p * b[i]) % p;
      fp_strip(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// f monic mod p, squarefree mod p: irreducible iff no irreducible factor of
// degree <= d/2, tested by gcd(x^(p^k) - x, f) for k = 1..d/2.
bool fp_irreducible(const FpPoly& f, std::uint64_t p) {
  int d = static_cast<int>(f.size()) - 1;
  for (int k = 1; 2 * k <= d; ++k) {
    BigInt e = ipow(BigInt(p), k);
    FpPoly r = fp_xpow(e, f, p);
    // r - x
    if (r.size() < 2) r.resize(2, 0);
    r[1] = (r[1] + p - 1) % p;
    fp_strip(r);
    FpPoly g = fp_gcd(f, r, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  strip(coeffs_);
}

IntPoly IntPoly::monomial(BigInt coeff, int degree) {
  std::vector<BigInt> c(degree + 1, 0);
  c[degree] = std::move(coeff);
  return IntPoly(std::move(c));
}

const BigInt& IntPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[i];
}

const BigInt& IntPoly::leading() const {
  if (coeffs_.empty()) return kZero;
  return coeffs_.back();
}

BigInt IntPoly::operator()(const BigInt& x) const {
  BigInt r = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
  return r;
}

IntPoly IntPoly::derivative() const {
  std::vector<BigInt> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * i);
  return IntPoly(std::move(out));
}

IntPoly IntPoly::shifted(const BigInt& c) const {
  // Horner: fold in one coefficient, multiply by (x + c)
  IntPoly res;
  const IntPoly xc(std::vector<BigInt>{c, 1});
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    res = res * xc + IntPoly(std::vector<BigInt>{coeffs_[i]});
  return res;
}

std::pair<IntPoly, IntPoly> IntPoly::divmod(const IntPoly& divisor) const {
  if (!divisor.is_monic())
    throw std::invalid_argument("divmod: divisor must be monic");
  std::vector<BigInt> r = coeffs_;
  std::vector<BigInt> q(std::max<int>(degree() - divisor.degree() + 1, 0), 0);
  while (static_cast<int>(r.size()) - 1 >= divisor.degree() && !r.empty()) {
    int dr = static_cast<int>(r.size()) - 1;
    BigInt lead = r.back();
    int off = dr - divisor.degree();
    q[off] = lead;
    for (int i = 0; i <= divisor.degree(); ++i) r[off + i] -= lead * divisor.coeff(i);
    strip(r);
  }
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator-(const IntPoly& a) {
  std::vector<BigInt> out = a.coeffs_;
  for (BigInt& x : out) x = -x;
  return IntPoly(std::move(out));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(out));
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? "-" : "+");
    }
    BigInt mag = boost::multiprecision::abs(c);
    if (i == 0) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str();
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPoly IntPoly::from_string(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("polynomial: empty input");

  if (s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("polynomial: missing ']'");
    std::vector<BigInt> coeffs;
    std::string body = s.substr(1, s.size() - 2);
    if (!body.empty()) {
      std::size_t pos = 0;
      while (pos <= body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - pos);
        coeffs.push_back(parse_bigint(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    return IntPoly(std::move(coeffs));
  }

  constexpr int kMaxDegree = 4096;
  std::vector<BigInt> coeffs;
  auto add_term = [&](const BigInt& c, int deg) {
    if (deg > kMaxDegree) throw std::invalid_argument("polynomial: degree too large");
    if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1, 0);
    coeffs[deg] += c;
  };

  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("polynomial: dangling sign");
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      digits.push_back(s[i++]);
    BigInt coeff = digits.empty() ? BigInt(1) : BigInt(digits);
    coeff *= sign;
    if (i < s.size() && s[i] == '*') ++i;
    int deg = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          e.push_back(s[i++]);
        if (e.empty()) throw std::invalid_argument("polynomial: missing exponent");
        long val = std::stol(e);
        if (val > kMaxDegree) throw std::invalid_argument("polynomial: degree too large");
        deg = static_cast<int>(val);
      }
    } else if (digits.empty()) {
      throw std::invalid_argument("polynomial: bad term near position " +
                                  std::to_string(i));
    }
    add_term(coeff, deg);
  }
  return IntPoly(std::move(coeffs));
}

BigInt evaluate(const IntPoly& f, const BigInt& x) { return f(x); }

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  IntPoly a = f, b = g;
  int s = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    std::swap(a, b);
  }
  BigInt ca = content(a), cb = content(b);
  BigInt t = ipow(ca, b.degree()) * ipow(cb, a.degree());
  a = primitive_part(a);
  b = primitive_part(b);
  if (b.degree() == 0) return s * t * ipow(b.leading(), a.degree());

  // fraction-free subresultant PRS (Cohen, Alg. 3.3.7)
  BigInt gg = 1, h = 1;
  while (true) {
    int delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    IntPoly r = prem(a, b);
    if (r.is_zero()) return 0;  // nontrivial common factor
    BigInt div = gg * ipow(h, delta);
    std::vector<BigInt> rc = r.coeffs();
    for (BigInt& x : rc) x /= div;
    a = std::move(b);
    b = IntPoly(std::move(rc));
    gg = a.leading();
    if (delta > 0) h = ipow(gg, delta) / ipow(h, delta - 1);
    if (b.degree() <= 0) break;
  }
  // deg b == 0 here, deg a >= 1
  BigInt z = ipow(b.leading(), a.degree()) / ipow(h, a.degree() - 1);
  return s * t * z;
}

BigInt discriminant(const IntPoly& f) {
  if (!f.is_monic() || f.degree() < 2)
    throw std::invalid_argument("discriminant: f must be monic of degree >= 2");
  int d = f.degree();
  BigInt r = resultant(f, f.derivative());
  return (d * (d - 1) / 2) % 2 == 0 ? r : -r;
}

bool is_squarefree(const IntPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("is_squarefree: deg f >= 1 required");
  return gcd_primitive(f, f.derivative()).degree() == 0;
}

IrreducibilityVerdict irreducibility_witness(const IntPoly& f,
                                             const FactorBudget& budget) {
  if (!f.is_monic() || f.degree() < 1)
    throw std::invalid_argument("irreducibility_witness: f must be monic, deg >= 1");
  IrreducibilityVerdict v;
  int d = f.degree();
  if (d == 1) {
    v.kind = IrreducibilityVerdict::Kind::Proven;
    v.witness = "degree 1";
    return v;
  }

  // rational root scan: integer roots of a monic f divide f(0)
  if (f(0) == 0) {
    v.kind = IrreducibilityVerdict::Kind::Disproven;
    v.factor = IntPoly(std::vector<BigInt>{0, 1});
    v.witness = "root 0";
    return v;
  }
  bool roots_exhausted = false;
  BigInt cauchy = 1;
  for (const BigInt& c : f.coeffs())
    cauchy = std::max(cauchy, BigInt(boost::multiprecision::abs(c)));
  cauchy += 1;
  try {
    PrimeFactorization f0 = factor(f(0), budget);
    if (auto divs = divisors(f0)) {
      roots_exhausted = true;
      for (const BigInt& r : *divs) {
        if (r > cauchy) break;
        for (const BigInt& root : {r, BigInt(-r)}) {
          if (f(root) == 0) {
            v.kind = IrreducibilityVerdict::Kind::Disproven;
            v.factor = IntPoly(std::vector<BigInt>{-root, 1});
            v.witness = "root " + root.str();
            return v;
          }
        }
      }
    }
  } catch (const FactorizationIncomplete&) {
    // root set not exhausted; fall through to the mod-p search
  }

  if (d <= 3) {
    if (roots_exhausted) {
      v.kind = IrreducibilityVerdict::Kind::Proven;
      v.witness = "no rational root; degree <= 3";
    }
    return v;
  }

  BigInt disc = discriminant(f);
  if (disc == 0) {
    IntPoly g = gcd_primitive(f, f.derivative());
    v.kind = IrreducibilityVerdict::Kind::Disproven;
    v.factor = g;
    v.witness = "repeated factor";
    return v;
  }
  for (std::uint64_t p = 3; p <= 1000; p += 2) {
    bool prime = true;
    for (std::uint64_t q = 3; q * q <= p; q += 2)
      if (p % q == 0) {
        prime = false;
        break;
      }
    if (!prime || disc % p == 0) continue;
    if (fp_irreducible(fp_reduce(f, p), p)) {
      v.kind = IrreducibilityVerdict::Kind::Proven;
      v.witness = "irreducible modulo " + std::to_string(p);
      v.witness_prime = BigInt(p);
      return v;
    }
  }
  return v;  // Unknown
}

}  // namespace galois2
