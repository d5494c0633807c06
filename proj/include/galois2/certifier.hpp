#pragma once

#include "galois2/homology.hpp"
#include "galois2/poly.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace galois2 {

// y^2 = f(x)(x - lambda), f irreducible monic
struct IrredPlusLambda {
  IntPoly f;
  BigInt lambda;
};
// y^2 = f(x)(x - lambda)(x - lambda')
struct IrredPlusTwoLambdas {
  IntPoly f;
  BigInt lambda;
  BigInt lambda2;
};
// y^2 = prod (x - alpha_i), distinguished root last
struct SplitRoots {
  std::vector<BigInt> roots;
};
using CurveSpec = std::variant<IrredPlusLambda, IrredPlusTwoLambdas, SplitRoots>;

struct Witness {
  BigInt p;        // the witness prime
  unsigned m = 0;  // exact multiplicity in the required quantity
  int v2m = 0;     // v_2(m)
  bool operator==(const Witness&) const = default;
};

enum class CertStatus { Certified, CertifiedConditional, NotCertified };

// Containment claim: the hypotheses hold, so the 2-adic Galois image
// satisfies G_2 cap Sp(T_2(J)) > Gamma(2^level_exponent), strictly.
struct Certificate {
  CertStatus status = CertStatus::NotCertified;
  std::string theorem;   // "1.1" | "1.2" | "4.1"
  std::optional<int> d;  // degree of f; empty for split models
  int d_prime = 0;       // curve degree
  int genus = 0;
  std::vector<Witness> witnesses;
  int level_exponent = 0;
  bool openness = false;
  std::optional<BigInt> index_bound;
  std::vector<std::string> conditional_reasons;
  std::string reason;  // NotCertified reason tag
  std::vector<std::string> notes;

  bool certified() const { return status == CertStatus::Certified; }
  std::string status_string() const;  // "NotCertified(UnitValue)" etc.
};

Certificate certify_thm1(const IntPoly& f, const BigInt& lambda,
                         const FactorBudget& budget = {});
Certificate certify_thm2(const IntPoly& f, const BigInt& lambda,
                         const BigInt& lambda2, const FactorBudget& budget = {});
Certificate certify_split(const std::vector<BigInt>& roots,
                          const FactorBudget& budget = {});
Certificate certify(const CurveSpec& curve, const FactorBudget& budget = {});

// Re-derives every witness from scratch (primality, divisibility,
// exclusions, multiplicities, level arithmetic).  nullopt = sound.
std::optional<std::string> replay_failure(const Certificate& cert,
                                          const CurveSpec& curve,
                                          const FactorBudget& budget = {});

// 2^{(2n+1)(2g^2+g) - (n+1)(d'-1)}; nullopt when the exponent is negative.
std::optional<BigInt> index_bound(int n, int g, int d_prime);

// f(lambda) lies in Sigma * (Q^x)^s, where Sigma is generated by +-1 and the
// primes of 2*disc(f): every prime p with p !| 2*disc(f) must have
// v_p(f(lambda)) == 0 mod s (and == 0 outright when s == 1).
bool sigma_class(const IntPoly& f, const BigInt& lambda, unsigned s,
                 const FactorBudget& budget = {});

enum class ScanOutcome { Certified, SigmaObstructed, UnitValue, Degenerate, Abstained };

struct ScanEntry {
  BigInt lambda;
  ScanOutcome outcome = ScanOutcome::Abstained;
  std::optional<int> level_exponent;  // set for Certified
};

struct ScanReport {
  IntPoly f;
  BigInt lo, hi;
  std::vector<ScanEntry> entries;
  std::uint64_t certified = 0, sigma_obstructed = 0, unit_value = 0,
                degenerate = 0, abstained = 0;
  std::vector<BigInt> non_certified;  // every lambda without a certificate
  std::vector<std::string> notes;
};

// certify_thm1 at every integer lambda in [lo, hi]; abstentions are recorded
// per lambda, never abort the scan.
ScanReport scan(const IntPoly& f, const BigInt& lo, const BigInt& hi,
                const FactorBudget& budget = {});

std::string scan_outcome_name(ScanOutcome o);

nlohmann::ordered_json certificate_json(const Certificate& cert);
nlohmann::ordered_json scan_report_json(const ScanReport& report);

}  // namespace galois2
