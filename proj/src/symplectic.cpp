#include "galois2/symplectic.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

namespace galois2 {

namespace {

void check_genus_dim(int g) {
  if (g < 1 || g > 12) throw std::invalid_argument("genus out of range");
}

// J mod 2: ones exactly at (i, g+i) and (g+i, i)
inline int j2(int g, int r, int c) { return (c == r + g || r == c + g) ? 1 : 0; }

}  // namespace

ModMatrix::ModMatrix(int n, Level e) : n_(n), e_(e), a_(n * n, 0) {
  if (n < 1 || n > 64) throw std::invalid_argument("matrix dimension out of range");
}

ModMatrix ModMatrix::identity(int n, Level e) {
  ModMatrix m(n, e);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
  if (n_ != o.n_ || !(e_ == o.e_)) throw std::invalid_argument("matrix shape mismatch");
  ModMatrix r(n_, e_);
  const std::uint32_t msk = mask();
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      std::uint32_t aik = a_[i * n_ + k];
      if (aik == 0) continue;
      for (int j = 0; j < n_; ++j)
        r.a_[i * n_ + j] = (r.a_[i * n_ + j] + aik * o.a_[k * n_ + j]) & msk;
    }
  return r;
}

ModMatrix ModMatrix::operator+(const ModMatrix& o) const {
  if (n_ != o.n_ || !(e_ == o.e_)) throw std::invalid_argument("matrix shape mismatch");
  ModMatrix r(n_, e_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) & mask();
  return r;
}

ModMatrix ModMatrix::operator-(const ModMatrix& o) const {
  if (n_ != o.n_ || !(e_ == o.e_)) throw std::invalid_argument("matrix shape mismatch");
  ModMatrix r(n_, e_);
  for (std::size_t i = 0; i < a_.size(); ++i)
    r.a_[i] = (a_[i] + e_.modulus() - o.a_[i]) & mask();
  return r;
}

ModMatrix ModMatrix::pow(BigInt k) const {
  if (k < 0) throw std::invalid_argument("ModMatrix::pow: negative exponent");
  ModMatrix result = identity(n_, e_);
  ModMatrix base = *this;
  while (k > 0) {
    if ((k & 1) != 0) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix r(n_, e_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.a_[j * n_ + i] = a_[i * n_ + j];
  return r;
}

ModMatrix ModMatrix::reduced(Level to) const {
  if (to.e > e_.e) throw std::invalid_argument("cannot raise a matrix modulus");
  ModMatrix r(n_, to);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] & r.mask();
  return r;
}

std::string ModMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? ";" : "") << "[";
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "] mod 2^" << e_.e;
  return os.str();
}

ModMatrix gram_matrix(const GramForm& form, Level e) {
  int n = 2 * form.g;
  ModMatrix j(n, e);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int v = form.entry(r, c);
      if (v == 1) j.set(r, c, 1);
      if (v == -1) j.set(r, c, e.modulus() - 1);
    }
  return j;
}

bool is_symplectic(const ModMatrix& m, int g) {
  if (m.n() != 2 * g) return false;
  ModMatrix j = gram_matrix(GramForm{g}, m.level());
  return m.transpose() * j * m == j;
}

SpAlgElemF2::SpAlgElemF2(int g, std::vector<std::uint8_t> entries)
    : g_(g), a_(std::move(entries)) {
  check_genus_dim(g);
  int n = 2 * g;
  if (static_cast<int>(a_.size()) != n * n)
    throw std::invalid_argument("SpAlgElemF2: wrong entry count");
  for (std::uint8_t& x : a_) x &= 1;
  // t^T J + J t == 0 mod 2
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int s = 0;
      for (int k = 0; k < n; ++k)
        s ^= (a_[k * n + r] & j2(g, k, c)) ^ (j2(g, r, k) & a_[k * n + c]);
      if (s) throw std::invalid_argument("SpAlgElemF2: not in sp_2g(F2)");
    }
}

SpAlgElemF2 SpAlgElemF2::from_matrix(int g, const ModMatrix& m) {
  std::vector<std::uint8_t> e(m.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = m.entries()[i] & 1;
  return SpAlgElemF2(g, std::move(e));
}

SpAlgElemF2 SpAlgElemF2::zero(int g) {
  return SpAlgElemF2(g, std::vector<std::uint8_t>(4 * g * g, 0));
}

bool SpAlgElemF2::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::uint8_t x) { return x == 0; });
}

SpAlgElemF2 SpAlgElemF2::operator+(const SpAlgElemF2& o) const {
  if (g_ != o.g_) throw std::invalid_argument("genus mismatch");
  std::vector<std::uint8_t> e(a_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a_[i] ^ o.a_[i];
  return SpAlgElemF2(g_, std::move(e));
}

SpAlgElemF2 SpAlgElemF2::operator*(const SpAlgElemF2& o) const {
  if (g_ != o.g_) throw std::invalid_argument("genus mismatch");
  int nn = n();
  std::vector<std::uint8_t> e(a_.size(), 0);
  for (int i = 0; i < nn; ++i)
    for (int k = 0; k < nn; ++k) {
      if (!a_[i * nn + k]) continue;
      for (int j = 0; j < nn; ++j) e[i * nn + j] ^= o.a_[k * nn + j];
    }
  // a product of algebra elements need not be in sp; bypass validation
  SpAlgElemF2 r = zero(g_);
  r.a_ = std::move(e);
  return r;
}

SpAlgElemF2 SpAlgElemF2::commutator(const SpAlgElemF2& o) const {
  SpAlgElemF2 st = *this * o, ts = o * *this;
  std::vector<std::uint8_t> e(a_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = st.a_[i] ^ ts.a_[i];
  return SpAlgElemF2(g_, std::move(e));  // validated: [sp, sp] lies in sp
}

std::vector<std::uint8_t> SpAlgElemF2::apply(const std::vector<std::uint8_t>& v) const {
  int nn = n();
  if (static_cast<int>(v.size()) != nn) throw std::invalid_argument("vector size");
  std::vector<std::uint8_t> out(nn, 0);
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) out[i] ^= a_[i * nn + j] & v[j];
  return out;
}

ModMatrix SpAlgElemF2::lift(Level e) const {
  ModMatrix m(n(), e);
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) m.set(i, j, a_[i * n() + j]);
  return m;
}

SpMatrix::SpMatrix(int g, ModMatrix m) : g_(g), mat_(std::move(m)) {
  check_genus_dim(g);
  if (mat_.n() != 2 * g) throw std::invalid_argument("SpMatrix: wrong dimension");
  if (!is_symplectic(mat_, g))
    throw std::invalid_argument("SpMatrix: M^T J M != J at the given modulus");
}

SpMatrix SpMatrix::identity(int g, Level e) {
  return SpMatrix(g, ModMatrix::identity(2 * g, e), Trusted{});
}

SpMatrix SpMatrix::minus_identity(int g, Level e) {
  ModMatrix m(2 * g, e);
  for (int i = 0; i < 2 * g; ++i) m.set(i, i, e.modulus() - 1);
  return SpMatrix(g, std::move(m), Trusted{});
}

SpMatrix SpMatrix::operator*(const SpMatrix& o) const {
  if (g_ != o.g_) throw std::invalid_argument("genus mismatch");
  return SpMatrix(g_, mat_ * o.mat_, Trusted{});
}

SpMatrix SpMatrix::inverse() const {
  ModMatrix j = gram_matrix(GramForm{g_}, level());
  ModMatrix zero(2 * g_, level());
  return SpMatrix(g_, zero - (j * mat_.transpose() * j), Trusted{});
}

SpMatrix SpMatrix::pow(const BigInt& k) const {
  if (k < 0) return inverse().pow(-k);
  return SpMatrix(g_, mat_.pow(k), Trusted{});
}

SpMatrix SpMatrix::reduced(Level to) const {
  return SpMatrix(g_, mat_.reduced(to), Trusted{});
}

std::vector<std::uint32_t> class_vector(const HomClassF2& c) {
  std::vector<std::uint32_t> v(2 * c.g);
  for (int i = 0; i < 2 * c.g; ++i) v[i] = c.bit(i);
  return v;
}

SpMatrix transvection(const std::vector<std::uint32_t>& c, const GramForm& form,
                      Level e) {
  return transvection_power(c, form, e, 1);
}

SpMatrix transvection_power(const std::vector<std::uint32_t>& c,
                            const GramForm& form, Level e, const BigInt& k) {
  int g = form.g, n = 2 * g;
  if (static_cast<int>(c.size()) != n)
    throw std::invalid_argument("transvection: vector has wrong length");
  const std::uint32_t mod = e.modulus(), msk = mod - 1;
  BigInt kr = k % mod;
  if (kr < 0) kr += mod;
  std::uint32_t kk = kr.convert_to<std::uint32_t>();
  // (Jc)_s = -c_{s+g} for s < g, c_{s-g} for s >= g
  std::vector<std::uint32_t> jc(n);
  for (int s = 0; s < g; ++s) jc[s] = (mod - (c[s + g] & msk)) & msk;
  for (int s = g; s < n; ++s) jc[s] = c[s - g] & msk;
  // T^k = 1 + k c (Jc)^T, exactly, since (c (Jc)^T)^2 = <c,c> c (Jc)^T = 0
  ModMatrix m = ModMatrix::identity(n, e);
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col)
      m.set(r, col, m.at(r, col) + kk * (c[r] & msk) % mod * jc[col]);
  return SpMatrix(g, std::move(m));
}

int congruence_level(const SpMatrix& m) {
  int e = m.level().e;
  int best = e;
  int n = m.mat().n();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::uint32_t x = (m.mat().at(r, c) + (r == c ? m.level().modulus() - 1 : 0)) &
                        (m.level().modulus() - 1);
      if (x != 0) best = std::min(best, std::countr_zero(x));
    }
  return best;
}

SpAlgElemF2 layer_log(const SpMatrix& m, int k) {
  if (k < 1 || m.level().e < k + 1)
    throw std::invalid_argument("layer_log: need 1 <= k and e >= k+1");
  if (congruence_level(m) < k)
    throw std::invalid_argument("layer_log: matrix is not in Gamma(2^k)");
  int n = m.mat().n();
  std::vector<std::uint8_t> t(n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::uint32_t x = (m.mat().at(r, c) + (r == c ? m.level().modulus() - 1 : 0)) &
                        (m.level().modulus() - 1);
      t[r * n + c] = static_cast<std::uint8_t>((x >> k) & 1);
    }
  return SpAlgElemF2(m.g(), std::move(t));
}

std::vector<SpAlgElemF2> sp_f2_basis(int g) {
  check_genus_dim(g);
  // X in sp iff JX is symmetric over F2; so {J * Y : Y symmetric basis}
  int n = 2 * g;
  std::vector<SpAlgElemF2> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // X = J2 * Y for the symmetric generator Y = E_ii or E_ij + E_ji
      std::vector<std::uint8_t> y(n * n, 0);
      y[i * n + j] = 1;
      y[j * n + i] = 1;  // no-op when i == j
      std::vector<std::uint8_t> x(n * n, 0);
      for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k)
          if (j2(g, r, k))
            for (int c = 0; c < n; ++c) x[r * n + c] ^= y[k * n + c];
      basis.emplace_back(g, std::move(x));
    }
  if (static_cast<int>(basis.size()) != 2 * g * g + g)
    throw std::logic_error("sp basis has wrong size");
  return basis;
}

SpMatrix hensel_lift(const SpMatrix& m) {
  Level up(m.level().e + 1);
  int g = m.g(), n = 2 * g;
  ModMatrix s(n, up);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) s.set(r, c, m.mat().at(r, c));
  ModMatrix j = gram_matrix(GramForm{g}, up);
  ModMatrix defect = s.transpose() * j * s - j;  // == 0 mod 2^e by assumption
  const int e = m.level().e;
  // E = defect / 2^e mod 2 is symmetric with zero diagonal; W = J * upper(E)
  // corrects: (S(1+2^e W))^T J (S(1+2^e W)) == J mod 2^{e+1}
  std::vector<std::uint8_t> upper(n * n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::uint32_t x = defect.at(r, c);
      if ((x & ((up.modulus() >> 1) - 1)) != 0)
        throw std::logic_error("hensel_lift: input not symplectic");
      int bit = (x >> e) & 1;
      if (r == c && bit) throw std::logic_error("hensel_lift: defect has odd diagonal");
      if (r < c) upper[r * n + c] = static_cast<std::uint8_t>(bit);
    }
  ModMatrix w(n, up);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int v = 0;
      for (int k = 0; k < n; ++k) v ^= j2(g, r, k) & upper[k * n + c];
      w.set(r, c, v);
    }
  ModMatrix corr = ModMatrix::identity(n, up);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      corr.set(r, c, corr.at(r, c) + (w.at(r, c) << e));
  return SpMatrix(g, s * corr);  // validating constructor
}

std::vector<SpMatrix> congruence_subgroup_set(int g, int N, Level e,
                                              std::uint64_t cap) {
  if (N < 1 || e.e <= N) throw std::invalid_argument("need 1 <= N < e");
  int dim = 2 * g * g + g, layers = e.e - N;
  if (dim * layers >= 63 || (1ull << (dim * layers)) > cap)
    throw CapExceeded("congruence subgroup too large to materialize",
                      dim * layers >= 63 ? ~0ull : 1ull << (dim * layers));
  std::vector<SpAlgElemF2> basis = sp_f2_basis(g);

  std::vector<SpMatrix> cur{SpMatrix::identity(g, e)};
  for (int k = N; k < e.e; ++k) {
    // layer-k representatives 1 + 2^k t, lifted to modulus 2^e
    std::vector<SpMatrix> reps;
    for (std::uint64_t maskbits = 0; maskbits < (1ull << dim); ++maskbits) {
      SpAlgElemF2 t = SpAlgElemF2::zero(g);
      for (int b = 0; b < dim; ++b)
        if ((maskbits >> b) & 1) t = t + basis[b];
      ModMatrix m = ModMatrix::identity(2 * g, Level(k + 1));
      for (int r = 0; r < 2 * g; ++r)
        for (int c = 0; c < 2 * g; ++c)
          m.set(r, c, m.at(r, c) + (static_cast<std::uint32_t>(t.at(r, c)) << k));
      SpMatrix rep(g, std::move(m));
      while (rep.level().e < e.e) rep = hensel_lift(rep);
      reps.push_back(std::move(rep));
    }
    std::vector<SpMatrix> next;
    next.reserve(cur.size() * reps.size());
    for (const SpMatrix& x : cur)
      for (const SpMatrix& r : reps) next.push_back(x * r);
    cur = std::move(next);
  }
  return cur;
}

std::vector<SpMatrix> congruence_subgroup_brute(int g, int N, Level e) {
  if (N < 1 || e.e <= N) throw std::invalid_argument("need 1 <= N < e");
  int n = 2 * g, cells = n * n, bits_per = e.e - N;
  if (cells * bits_per > 26)
    throw CapExceeded("brute-force enumeration too large", ~0ull);
  std::vector<SpMatrix> out;
  for (std::uint64_t x = 0; x < (1ull << (cells * bits_per)); ++x) {
    ModMatrix m = ModMatrix::identity(n, e);
    for (int cell = 0; cell < cells; ++cell) {
      std::uint32_t v = (x >> (cell * bits_per)) & ((1u << bits_per) - 1);
      int r = cell / n, c = cell % n;
      m.set(r, c, m.at(r, c) + (v << N));
    }
    if (is_symplectic(m, g)) out.emplace_back(g, std::move(m));
  }
  return out;
}

SubgroupTable SubgroupTable::generate(const std::vector<SpMatrix>& gens,
                                      std::uint64_t cap) {
  if (gens.empty()) throw std::invalid_argument("generate: no generators");
  int g = gens[0].g();
  Level e = gens[0].level();
  for (const SpMatrix& m : gens)
    if (m.g() != g || !(m.level() == e))
      throw std::invalid_argument("generate: mixed genus or modulus");

  SubgroupTable table(g, e);
  table.gens_ = gens;
  int bits = 4 * g * g * e.e;
  table.packed_ = bits <= 64;

  std::vector<SpMatrix> step = gens;
  for (const SpMatrix& m : gens) step.push_back(m.inverse());

  std::deque<SpMatrix> frontier;
  auto insert = [&table](const SpMatrix& m) {
    return table.packed_ ? table.keys64_.insert(table.pack(m)).second
                         : table.keys_str_.insert(table.pack_str(m)).second;
  };
  SpMatrix id = SpMatrix::identity(g, e);
  insert(id);
  frontier.push_back(id);
  std::uint64_t count = 1;
  while (!frontier.empty()) {
    SpMatrix cur = std::move(frontier.front());
    frontier.pop_front();
    for (const SpMatrix& s : step) {
      SpMatrix nxt = cur * s;
      if (insert(nxt)) {
        if (++count > cap)
          throw CapExceeded("subgroup enumeration exceeded the cap", count);
        frontier.push_back(std::move(nxt));
      }
    }
  }
  table.order_ = count;
  return table;
}

std::uint64_t SubgroupTable::pack(const SpMatrix& m) const {
  std::uint64_t key = 0;
  int shift = 0;
  for (std::uint32_t v : m.mat().entries()) {
    key |= static_cast<std::uint64_t>(v) << shift;
    shift += e_.e;
  }
  return key;
}

std::string SubgroupTable::pack_str(const SpMatrix& m) const {
  std::string key;
  key.reserve(m.mat().entries().size() * 2);
  for (std::uint32_t v : m.mat().entries()) {
    key.push_back(static_cast<char>(v & 0xff));
    key.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  return key;
}

SpMatrix SubgroupTable::unpack(std::uint64_t key) const {
  ModMatrix m(2 * g_, e_);
  for (int r = 0; r < 2 * g_; ++r)
    for (int c = 0; c < 2 * g_; ++c) {
      m.set(r, c, static_cast<std::uint32_t>(key & (e_.modulus() - 1)));
      key >>= e_.e;
    }
  return SpMatrix(g_, std::move(m));
}

SpMatrix SubgroupTable::unpack_str(const std::string& key) const {
  ModMatrix m(2 * g_, e_);
  std::size_t idx = 0;
  for (int r = 0; r < 2 * g_; ++r)
    for (int c = 0; c < 2 * g_; ++c) {
      std::uint32_t v = static_cast<std::uint8_t>(key[idx]) |
                        (static_cast<std::uint32_t>(static_cast<std::uint8_t>(key[idx + 1])) << 8);
      idx += 2;
      m.set(r, c, v);
    }
  return SpMatrix(g_, std::move(m));
}

bool SubgroupTable::contains(const SpMatrix& m) const {
  if (m.g() != g_ || !(m.level() == e_))
    throw std::invalid_argument("contains: genus or modulus mismatch");
  return packed_ ? keys64_.count(pack(m)) > 0 : keys_str_.count(pack_str(m)) > 0;
}

void SubgroupTable::for_each(const std::function<void(const SpMatrix&)>& fn) const {
  if (packed_)
    for (std::uint64_t k : keys64_) fn(unpack(k));
  else
    for (const std::string& k : keys_str_) fn(unpack_str(k));
}

namespace {

// rank over F2 of flattened 2g x 2g matrices
int f2_rank(const std::vector<SpAlgElemF2>& elems) {
  if (elems.empty()) return 0;
  std::size_t nbits = elems[0].entries().size();
  std::size_t words = (nbits + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  for (const SpAlgElemF2& t : elems) {
    std::vector<std::uint64_t> row(words, 0);
    for (std::size_t i = 0; i < nbits; ++i)
      if (t.entries()[i]) row[i / 64] |= 1ull << (i % 64);
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (std::size_t bitpos = 0; bitpos < nbits; ++bitpos) {
    std::size_t w = bitpos / 64;
    std::uint64_t b = 1ull << (bitpos % 64);
    int pivot = -1;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r][w] & b) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && (rows[r][w] & b))
        for (std::size_t i = 0; i < words; ++i) rows[r][i] ^= rows[rank][i];
    ++rank;
  }
  return rank;
}

SpAlgElemF2 transvection_log_f2(const HomClassF2& c) {
  // T_c - 1 over F2: t[r][s] = c_r (Jc)_s
  int g = c.g, n = 2 * g;
  std::vector<std::uint8_t> jc(n), t(n * n);
  for (int s = 0; s < g; ++s) jc[s] = static_cast<std::uint8_t>(c.bit(s + g));
  for (int s = g; s < n; ++s) jc[s] = static_cast<std::uint8_t>(c.bit(s - g));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) t[r * n + s] = c.bit(r) & jc[s];
  return SpAlgElemF2(g, std::move(t));
}

}  // namespace

SpBasisReport sp_basis_certify(int g, const std::vector<HomClassF2>& c_classes) {
  check_genus_dim(g);
  if (static_cast<int>(c_classes.size()) != 2 * g)
    throw std::invalid_argument("sp_basis_certify: need 2g classes");
  SpBasisReport rep;
  rep.g = g;
  rep.dimension = 2 * g * g + g;

  std::vector<SpAlgElemF2> ts;
  for (const HomClassF2& c : c_classes) {
    if (c.g != g) throw std::invalid_argument("sp_basis_certify: genus mismatch");
    ts.push_back(transvection_log_f2(c));
  }
  std::vector<SpAlgElemF2> elems = ts;
  for (int i = 0; i < 2 * g; ++i)
    for (int j = i + 1; j < 2 * g; ++j) elems.push_back(ts[i].commutator(ts[j]));
  rep.rank = f2_rank(elems);
  rep.pass = (rep.rank == rep.dimension);

  if (g == 1) {
    // rewrite t1, t2, [t1,t2] in the (c1, c2) coordinate system
    std::uint8_t p[4] = {static_cast<std::uint8_t>(c_classes[0].bit(0)),
                         static_cast<std::uint8_t>(c_classes[1].bit(0)),
                         static_cast<std::uint8_t>(c_classes[0].bit(1)),
                         static_cast<std::uint8_t>(c_classes[1].bit(1))};
    std::uint8_t det = (p[0] & p[3]) ^ (p[1] & p[2]);
    if (!det) throw std::invalid_argument("c-classes do not form a basis");
    std::uint8_t pinv[4] = {p[3], p[1], p[2], p[0]};  // adjugate == inverse over F2
    std::vector<SpAlgElemF2> trio{ts[0], ts[1], ts[0].commutator(ts[1])};
    const std::array<std::array<std::uint8_t, 4>, 3> expect{
        {{0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 1}}};
    for (std::size_t idx = 0; idx < trio.size(); ++idx) {
      const auto& t = trio[idx].entries();
      std::array<std::uint8_t, 4> conj{};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          std::uint8_t v = 0;
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l)
              v ^= pinv[r * 2 + k] & t[k * 2 + l] & p[l * 2 + c];
          conj[r * 2 + c] = v;
        }
      rep.base_case.push_back(conj);
      if (conj != expect[idx]) rep.base_case_match = false;
    }
  }
  return rep;
}

namespace {

// stream all of Gamma(2^N) mod 2^e as products of lifted layer representatives
void for_each_congruence_element(int g, int N, Level e,
                                 const std::function<void(const SpMatrix&)>& fn,
                                 std::uint64_t cap) {
  int dim = 2 * g * g + g, layers = e.e - N;
  if (layers < 1) throw std::invalid_argument("need N < e");
  if (dim >= 26 || static_cast<std::uint64_t>(dim) * layers >= 63 ||
      (1ull << (dim * layers)) > cap)
    throw CapExceeded("congruence subgroup too large to stream",
                      dim * static_cast<std::uint64_t>(layers) >= 63
                          ? ~0ull
                          : 1ull << (dim * layers));
  std::vector<SpAlgElemF2> basis = sp_f2_basis(g);
  std::vector<std::vector<SpMatrix>> reps(layers);
  for (int k = N; k < e.e; ++k) {
    for (std::uint64_t maskbits = 0; maskbits < (1ull << dim); ++maskbits) {
      SpAlgElemF2 t = SpAlgElemF2::zero(g);
      for (int b = 0; b < dim; ++b)
        if ((maskbits >> b) & 1) t = t + basis[b];
      ModMatrix m = ModMatrix::identity(2 * g, Level(k + 1));
      for (int r = 0; r < 2 * g; ++r)
        for (int c = 0; c < 2 * g; ++c)
          m.set(r, c, m.at(r, c) + (static_cast<std::uint32_t>(t.at(r, c)) << k));
      SpMatrix rep(g, std::move(m));
      while (rep.level().e < e.e) rep = hensel_lift(rep);
      reps[k - N].push_back(std::move(rep));
    }
  }
  std::function<void(int, const SpMatrix&)> rec = [&](int li, const SpMatrix& cur) {
    if (li == layers) {
      fn(cur);
      return;
    }
    for (const SpMatrix& r : reps[li]) rec(li + 1, cur * r);
  };
  rec(0, SpMatrix::identity(g, e));
}

}  // namespace

Prop32Report prop32_certify(int g, int n, int nprime, int extra_layers,
                            std::uint64_t cap) {
  if (n < 1 || nprime < 1 || extra_layers < 1)
    throw std::invalid_argument("prop32_certify: need n, n', layers >= 1");
  Prop32Report rep;
  rep.g = g;
  rep.n = n;
  rep.nprime = nprime;
  rep.extra_layers = extra_layers;
  rep.N = n + std::max(n, nprime);
  rep.e = rep.N + extra_layers;
  Level e(rep.e);  // throws InputRangeError when out of range

  GramForm form{g};
  std::vector<SpMatrix> gens;
  for (int i = 1; i <= 2 * g; ++i) {
    BigInt exponent = BigInt(1) << (i == 2 * g ? nprime : n);
    gens.push_back(
        transvection_power(class_vector(c_class(i, g)), form, e, exponent));
  }
  SubgroupTable table = SubgroupTable::generate(gens, cap);
  rep.order = table.order();

  bool contained = true;
  std::uint64_t gamma_size = 0;
  for_each_congruence_element(
      g, rep.N, e,
      [&](const SpMatrix& m) {
        ++gamma_size;
        if (!table.contains(m)) contained = false;
      },
      cap);
  rep.gamma_size = gamma_size;
  rep.contained = contained;
  for (const SpMatrix& gen : gens)
    if (congruence_level(gen) < rep.N) rep.strict = true;
  rep.pass = rep.contained && rep.strict;
  return rep;
}

Prop34Report prop34_certify(int n, int extra_layers, std::uint64_t cap) {
  if (n < 1 || extra_layers < 1)
    throw std::invalid_argument("prop34_certify: need n, layers >= 1");
  Prop34Report rep;
  rep.n = n;
  rep.extra_layers = extra_layers;
  rep.e = n + extra_layers;
  Level e(rep.e);
  const int g = 1;
  GramForm form{g};
  BigInt exponent = BigInt(1) << n;
  std::vector<std::vector<std::uint32_t>> cs = {
      class_vector(c_class(1, g)), class_vector(c_class(2, g)),
      class_vector(HomClassF2::a(1, g))};  // c3 == a1 mod 2
  std::vector<SpMatrix> gens;
  for (const auto& c : cs) gens.push_back(transvection_power(c, form, e, exponent));
  SubgroupTable table = SubgroupTable::generate(gens, cap);
  rep.order = table.order();
  rep.expected = 1ull << (3 * extra_layers);  // (2g^2+g) = 3 per layer

  // every generator lies in Gamma(2^n), so the group does; equality holds
  // iff the enumerated Gamma(2^n) mod 2^e sits inside it with matching order
  bool contained = true;
  std::uint64_t gamma_size = 0;
  for_each_congruence_element(
      g, n, e,
      [&](const SpMatrix& m) {
        ++gamma_size;
        if (!table.contains(m)) contained = false;
      },
      cap);
  rep.equal = contained && gamma_size == rep.expected && table.order() == gamma_size;
  return rep;
}

}  // namespace galois2
