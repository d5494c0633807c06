#pragma once

#include "galois2/homology.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace galois2 {

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string what, std::uint64_t attempted)
      : std::runtime_error(std::move(what)), attempted_(attempted) {}
  std::uint64_t attempted() const { return attempted_; }

 private:
  std::uint64_t attempted_;
};

// Exponent e of the working modulus 2^e.
struct Level {
  int e = 1;
  static constexpr int kMax = 12;

  explicit Level(int exponent) : e(exponent) {
    if (e < 1 || e > kMax) throw InputRangeError("level exponent out of range");
  }
  std::uint32_t modulus() const { return 1u << e; }
  bool operator==(const Level&) const = default;
};

// Standard symplectic Gram form in basis order (a_1..a_g, b_1..b_g):
// <a_i, b_i> = -1, <b_i, a_i> = +1, all other basis pairings 0.
struct GramForm {
  int g = 1;
  int entry(int r, int c) const {
    if (r < g && c == r + g) return -1;
    if (r >= g && c == r - g) return 1;
    return 0;
  }
};

// Plain square matrix over Z/2^e, row-major.  The arithmetic workhorse;
// no symplectic condition imposed.
class ModMatrix {
 public:
  ModMatrix(int n, Level e);
  static ModMatrix identity(int n, Level e);

  int n() const { return n_; }
  Level level() const { return e_; }
  std::uint32_t mask() const { return e_.modulus() - 1; }
  std::uint32_t at(int r, int c) const { return a_[r * n_ + c]; }
  void set(int r, int c, std::uint32_t v) { a_[r * n_ + c] = v & mask(); }
  const std::vector<std::uint32_t>& entries() const { return a_; }

  ModMatrix operator*(const ModMatrix& o) const;
  ModMatrix operator+(const ModMatrix& o) const;
  ModMatrix operator-(const ModMatrix& o) const;
  ModMatrix pow(BigInt k) const;  // k >= 0
  ModMatrix transpose() const;
  ModMatrix reduced(Level to) const;  // to.e <= e
  bool operator==(const ModMatrix&) const = default;
  std::string str() const;

 private:
  int n_;
  Level e_;
  std::vector<std::uint32_t> a_;
};

ModMatrix gram_matrix(const GramForm& form, Level e);  // J mod 2^e
bool is_symplectic(const ModMatrix& m, int g);         // M^T J M == J mod 2^e

// Element of sp_2g(F2): t with t^T J + J t == 0 mod 2.  Checked on build.
class SpAlgElemF2 {
 public:
  SpAlgElemF2(int g, std::vector<std::uint8_t> entries);
  static SpAlgElemF2 from_matrix(int g, const ModMatrix& m);  // reduce mod 2
  static SpAlgElemF2 zero(int g);

  int g() const { return g_; }
  int n() const { return 2 * g_; }
  std::uint8_t at(int r, int c) const { return a_[r * n() + c]; }
  const std::vector<std::uint8_t>& entries() const { return a_; }
  bool is_zero() const;

  SpAlgElemF2 operator+(const SpAlgElemF2& o) const;
  SpAlgElemF2 operator*(const SpAlgElemF2& o) const;  // plain product mod 2
  SpAlgElemF2 commutator(const SpAlgElemF2& o) const;
  std::vector<std::uint8_t> apply(const std::vector<std::uint8_t>& v) const;
  ModMatrix lift(Level e) const;  // entries 0/1 mod 2^e
  bool operator==(const SpAlgElemF2&) const = default;

 private:
  int g_;
  std::vector<std::uint8_t> a_;
};

// Symplectic matrix over Z/2^e; M^T J M == J is checked at construction.
class SpMatrix {
 public:
  SpMatrix(int g, ModMatrix m);  // validates
  static SpMatrix identity(int g, Level e);
  static SpMatrix minus_identity(int g, Level e);

  int g() const { return g_; }
  Level level() const { return mat_.level(); }
  const ModMatrix& mat() const { return mat_; }

  SpMatrix operator*(const SpMatrix& o) const;  // trusted, no recheck
  SpMatrix inverse() const;                     // -J M^T J
  SpMatrix pow(const BigInt& k) const;          // any integer k
  SpMatrix reduced(Level to) const;
  bool operator==(const SpMatrix&) const = default;
  std::string str() const { return mat_.str(); }

 private:
  struct Trusted {};
  SpMatrix(int g, ModMatrix m, Trusted) : g_(g), mat_(std::move(m)) {}
  int g_;
  ModMatrix mat_;
};

// T_c = 1 + c (Jc)^T over Z/2^e: v -> v + <v, c> c.  T_c^k = 1 + k c (Jc)^T.
SpMatrix transvection(const std::vector<std::uint32_t>& c, const GramForm& form,
                      Level e);
SpMatrix transvection_power(const std::vector<std::uint32_t>& c,
                            const GramForm& form, Level e, const BigInt& k);
std::vector<std::uint32_t> class_vector(const HomClassF2& c);  // 0/1 lift

// Largest k <= e with M == 1 mod 2^k.
int congruence_level(const SpMatrix& m);

// (M - 1)/2^k mod 2 for M == 1 mod 2^k, k >= 1, e >= k+1.
SpAlgElemF2 layer_log(const SpMatrix& m, int k);

// F2-basis of sp_2g(F2) (dimension 2g^2 + g), by kernel computation.
std::vector<SpAlgElemF2> sp_f2_basis(int g);

// All of {M in Sp(Z/2^e) : M == 1 mod 2^N}, built layer by layer from
// Hensel-lifted representatives; size 2^{(2g^2+g)(e-N)}, verified.
std::vector<SpMatrix> congruence_subgroup_set(int g, int N, Level e,
                                              std::uint64_t cap = 1u << 22);

// Same set by brute force: filter 1 + 2^N X over all X mod 2^{e-N}.
// Only feasible for tiny parameters; serves as an independent oracle.
std::vector<SpMatrix> congruence_subgroup_brute(int g, int N, Level e);

// One symplectic lift of m to the next modulus (Newton correction).
SpMatrix hensel_lift(const SpMatrix& m);

inline constexpr std::uint64_t kDefaultCap = 1ull << 22;

// BFS closure of gens and their inverses.  Canonical key: the row-major
// entry sequence at the table's modulus, bit-packed.
class SubgroupTable {
 public:
  static SubgroupTable generate(const std::vector<SpMatrix>& gens,
                                std::uint64_t cap = kDefaultCap);

  std::uint64_t order() const { return order_; }
  int g() const { return g_; }
  Level level() const { return e_; }
  bool contains(const SpMatrix& m) const;
  void for_each(const std::function<void(const SpMatrix&)>& fn) const;
  const std::vector<SpMatrix>& generators() const { return gens_; }

 private:
  SubgroupTable(int g, Level e) : g_(g), e_(e) {}
  int g_;
  Level e_;
  std::uint64_t order_ = 0;
  bool packed_ = true;
  std::unordered_set<std::uint64_t> keys64_;
  std::unordered_set<std::string> keys_str_;
  std::vector<SpMatrix> gens_;

  std::uint64_t pack(const SpMatrix& m) const;
  std::string pack_str(const SpMatrix& m) const;
  SpMatrix unpack(std::uint64_t key) const;
  SpMatrix unpack_str(const std::string& key) const;
};

inline SubgroupTable generate_subgroup(const std::vector<SpMatrix>& gens,
                                       std::uint64_t cap = kDefaultCap) {
  return SubgroupTable::generate(gens, cap);
}

struct SpBasisReport {
  int g = 0;
  int rank = 0;
  int dimension = 0;  // 2g^2 + g
  bool pass = false;
  // genus 1 only: t1, t2, [t1,t2] written in the (c1, c2) coordinates
  std::vector<std::array<std::uint8_t, 4>> base_case;
  bool base_case_match = true;
};

// Rank over F2 of {t_i} u {[t_i, t_j]} inside sp_2g(F2), t_i = T_{c_i} - 1.
SpBasisReport sp_basis_certify(int g, const std::vector<HomClassF2>& c_classes);

struct Prop32Report {
  int g = 0, n = 0, nprime = 0, extra_layers = 0;
  int N = 0, e = 0;
  std::uint64_t order = 0;           // |G mod 2^e|
  std::uint64_t gamma_size = 0;      // |Gamma(2^N) mod 2^e|
  bool contained = false;            // Gamma(2^N) mod 2^e subset of G
  bool strict = false;               // some generator outside Gamma(2^N)
  bool pass = false;
};

// G = <T_{c_1}^{2^n}, ..., T_{c_{2g-1}}^{2^n}, T_{c_{2g}}^{2^n'}> mod 2^e,
// e = N + extra_layers, N = n + max(n, n'); checks Gamma(2^N) mod 2^e <= G.
Prop32Report prop32_certify(int g, int n, int nprime, int extra_layers,
                            std::uint64_t cap = kDefaultCap);

struct Prop34Report {
  int n = 0, extra_layers = 0, e = 0;
  std::uint64_t order = 0;     // |<T_{c1}^{2^n}, T_{c2}^{2^n}, T_{c3}^{2^n}>|
  std::uint64_t expected = 0;  // |Gamma(2^n) mod 2^e| = 2^{3*extra_layers}
  bool equal = false;
};

// Genus 1, c_3 == a_1 mod 2: the three transvection powers generate the full
// image of Gamma(2^n) mod 2^{n + extra_layers}.
Prop34Report prop34_certify(int n, int extra_layers,
                            std::uint64_t cap = kDefaultCap);

}  // namespace galois2
