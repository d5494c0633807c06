#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "galois2/certifier.hpp"

#include <random>
#include <set>

using namespace galois2;

namespace {
const IntPoly kCubic = IntPoly::from_string("x^3-2");
const IntPoly kQuartic = IntPoly::from_string("x^4+x+1");
}  // namespace

TEST_CASE("certify_thm1: (x^3-2, 3) gets Gamma(4) via the degree-3 rule") {
  Certificate c = certify_thm1(kCubic, 3);
  CHECK(c.status == CertStatus::Certified);
  CHECK(c.theorem == "1.1");
  REQUIRE(c.witnesses.size() == 1);
  CHECK(c.witnesses[0] == Witness{5, 2, 1});
  CHECK(c.level_exponent == 2);  // min(2*1+2, 1+1)
  CHECK(c.d_prime == 4);
  CHECK(c.genus == 1);
  CHECK(c.openness);
  CHECK(replay_failure(c, IrredPlusLambda{kCubic, 3}) == std::nullopt);
}

TEST_CASE("certify_thm1: unit value and sigma obstruction") {
  Certificate c = certify_thm1(kCubic, 1);
  CHECK(c.status == CertStatus::NotCertified);
  CHECK(c.reason == "UnitValue");
  // f(2) = 6 = 2*3, both divide 2*disc = -216
  c = certify_thm1(kCubic, 2);
  CHECK(c.reason == "AllPrimesDivide2Delta");
}

TEST_CASE("certify_thm1: (x^4+x+1, 2) gets Gamma(4)") {
  Certificate c = certify_thm1(kQuartic, 2);
  CHECK(c.status == CertStatus::Certified);
  REQUIRE(c.witnesses.size() == 1);
  CHECK(c.witnesses[0] == Witness{19, 1, 0});
  CHECK(c.level_exponent == 2);
  CHECK(c.d_prime == 5);
  CHECK(c.genus == 2);
  CHECK(replay_failure(c, IrredPlusLambda{kQuartic, 2}) == std::nullopt);
}

TEST_CASE("certify_thm1: reducible input is rejected with the factor") {
  Certificate c = certify_thm1(IntPoly::from_string("x^2-1") *
                                   IntPoly::from_string("x^2+x+1"),
                               5);
  CHECK(c.status == CertStatus::NotCertified);
  CHECK(c.reason == "Reducible");
}

TEST_CASE("certify_thm1: precondition violations are input errors") {
  CHECK_THROWS_AS(certify_thm1(IntPoly::from_string("x^2+2x+1"), 3),
                  std::invalid_argument);  // not squarefree
  CHECK_THROWS_AS(certify_thm1(IntPoly::from_string("2x^2+1"), 3),
                  std::invalid_argument);  // not monic
  CHECK_THROWS_AS(certify_thm1(IntPoly::from_string("x^3-7x^2+6x"), 6),
                  std::invalid_argument);  // f(lambda) = 0
}

TEST_CASE("certify_thm2: (x^3-2, 3, 10) gets Gamma(16)") {
  Certificate c = certify_thm2(kCubic, 3, 10);
  CHECK(c.status == CertStatus::Certified);
  CHECK(c.theorem == "1.2");
  REQUIRE(c.witnesses.size() == 2);
  CHECK(c.witnesses[0] == Witness{5, 2, 1});
  CHECK(c.witnesses[1] == Witness{7, 1, 0});
  CHECK(c.level_exponent == 4);
  CHECK(c.d_prime == 5);
  CHECK(replay_failure(c, IrredPlusTwoLambdas{kCubic, 3, 10}) == std::nullopt);
}

TEST_CASE("certify_thm2: (x^2+1, 2, -1) uses the degree-2 rule") {
  IntPoly f = IntPoly::from_string("x^2+1");
  Certificate c = certify_thm2(f, 2, -1);
  CHECK(c.status == CertStatus::Certified);
  REQUIRE(c.witnesses.size() == 2);
  CHECK(c.witnesses[0] == Witness{5, 1, 0});
  CHECK(c.witnesses[1] == Witness{3, 1, 0});
  CHECK(c.level_exponent == 1);  // max(0,0) + 1
  CHECK(replay_failure(c, IrredPlusTwoLambdas{f, 2, -1}) == std::nullopt);
}

TEST_CASE("certify_thm2: odd degree takes the mixed-valuation route") {
  // f(5) = 123 = 3*41 with 3 | 2*disc, so p = 41, m = 1, v2(m) = 0;
  // lambda - lambda' = 49, p' = 7, m' = 2, v2(m') = 1 > 0 and d = 3 is odd:
  // k = v2(m) + v2(m') + 2 = 3
  Certificate c = certify_thm2(kCubic, 5, -44);
  REQUIRE(c.status == CertStatus::Certified);
  CHECK(c.witnesses[0] == Witness{41, 1, 0});
  CHECK(c.witnesses[1] == Witness{7, 2, 1});
  CHECK(c.level_exponent == 3);
  CHECK_FALSE(c.index_bound.has_value());  // v2(m) != v2(m')
  CHECK(replay_failure(c, IrredPlusTwoLambdas{kCubic, 5, -44}) == std::nullopt);
}

TEST_CASE("certify_thm2: even degree pins the level to 2*v2(m) + 2") {
  // d = 4: f(2) = 19, m = 1; lambda - lambda' = 9 gives p' = 3, m' = 2, but
  // the even-degree rule ignores v2(m') > v2(m)
  Certificate c = certify_thm2(kQuartic, 2, -7);
  REQUIRE(c.status == CertStatus::Certified);
  CHECK(c.witnesses[0] == Witness{19, 1, 0});
  CHECK(c.witnesses[1] == Witness{3, 2, 1});
  CHECK(c.level_exponent == 2);
  CHECK(replay_failure(c, IrredPlusTwoLambdas{kQuartic, 2, -7}) == std::nullopt);
}

TEST_CASE("certify_thm2: missing difference prime") {
  // lambda - lambda' = -5, but 5 | f(3) = 25
  Certificate c = certify_thm2(kCubic, 3, 8);
  CHECK(c.status == CertStatus::NotCertified);
  CHECK(c.reason == "NoPrimeForDifference");
}

TEST_CASE("certify_split: the Legendre curve at lambda = 6") {
  Certificate c = certify_split({0, 1, 6});
  CHECK(c.status == CertStatus::Certified);
  CHECK(c.theorem == "4.1");
  REQUIRE(c.witnesses.size() == 2);
  CHECK(c.witnesses[0] == Witness{3, 1, 0});
  CHECK(c.witnesses[1] == Witness{5, 1, 0});
  CHECK(c.level_exponent == 2);
  CHECK(c.d_prime == 3);
  CHECK(c.genus == 1);
  CHECK(replay_failure(c, SplitRoots{{0, 1, 6}}) == std::nullopt);
}

TEST_CASE("certify_split: no assignment when a difference has no odd prime") {
  Certificate c = certify_split({0, 1, 2});
  CHECK(c.status == CertStatus::NotCertified);
  CHECK(c.reason == "NoAssignment");
}

TEST_CASE("certify_split: (0, 1, 30) picks the smallest primes") {
  Certificate c = certify_split({0, 1, 30});
  CHECK(c.status == CertStatus::Certified);
  REQUIRE(c.witnesses.size() == 2);
  CHECK(c.witnesses[0] == Witness{3, 1, 0});
  CHECK(c.witnesses[1] == Witness{29, 1, 0});
  CHECK(c.level_exponent == 2);
  CHECK(replay_failure(c, SplitRoots{{0, 1, 30}}) == std::nullopt);
}

TEST_CASE("certify_split: (0, 1, lambda) with squarefree odd parts gives Gamma(4)") {
  // lambda and lambda - 1 with squarefree odd coprime parts: all v2(m_i) = 0
  for (int lambda : {6, 12, 14, 22, 30, 34}) {
    Certificate c = certify_split({0, 1, lambda});
    REQUIRE(c.status == CertStatus::Certified);
    CHECK(c.level_exponent == 2);
    CHECK(replay_failure(c, SplitRoots{{0, 1, BigInt(lambda)}}) == std::nullopt);
  }
}

TEST_CASE("index_bound: worked values") {
  CHECK(index_bound(0, 1, 3) == BigInt(2));
  CHECK(index_bound(0, 2, 5) == BigInt(64));
  CHECK(index_bound(1, 1, 3) == BigInt(32));
  // negative exponent: 3*(0+1)... (2*0+1)*3 - (0+1)*4 = -1
  CHECK(index_bound(0, 1, 5) == std::nullopt);
}

TEST_CASE("sigma_class: worked examples") {
  CHECK(sigma_class(kCubic, 2, 1));        // 6 = 2*3, all inside 2*disc
  CHECK_FALSE(sigma_class(kCubic, 3, 4));  // v5(25) = 2 != 0 mod 4
  CHECK(sigma_class(kCubic, 3, 2));        // 2 == 0 mod 2
  CHECK_FALSE(sigma_class(kCubic, 3, 1));  // 5 lies outside Sigma
  CHECK(sigma_class(kCubic, 1, 1));        // unit value
}

TEST_CASE("scan: x^3-2 over [-50, 50]") {
  ScanReport rep = scan(kCubic, -50, 50);
  CHECK(rep.entries.size() == 101);
  CHECK(rep.certified + rep.sigma_obstructed + rep.unit_value + rep.degenerate +
            rep.abstained ==
        101);
  auto has = [&rep](int lambda) {
    for (const BigInt& l : rep.non_certified)
      if (l == lambda) return true;
    return false;
  };
  CHECK(has(0));
  CHECK(has(1));
  CHECK(has(2));
  CHECK(rep.abstained == 0);
  CHECK(rep.degenerate == 0);

  // classifier consistency both ways
  for (const ScanEntry& e : rep.entries) {
    bool obstructed = e.outcome == ScanOutcome::SigmaObstructed ||
                      e.outcome == ScanOutcome::UnitValue;
    CHECK(obstructed == sigma_class(kCubic, e.lambda, 1));
  }
}

TEST_CASE("scan: x^2+1 over [0, 10]") {
  ScanReport rep = scan(IntPoly::from_string("x^2+1"), 0, 10);
  CHECK(rep.entries[0].outcome == ScanOutcome::UnitValue);   // f(0) = 1
  CHECK(rep.entries[1].outcome == ScanOutcome::SigmaObstructed);  // f(1) = 2 | 2*disc
  CHECK(rep.entries[2].outcome == ScanOutcome::Certified);   // f(2) = 5
}

TEST_CASE("scan: empty range gives zero counts") {
  ScanReport rep = scan(kCubic, 5, 4);
  CHECK(rep.entries.empty());
  CHECK(rep.certified == 0);
  CHECK(rep.non_certified.empty());
}

TEST_CASE("scan: level minimality over qualifying witnesses") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> ld(-60, 60);
  BigInt two_delta = 2 * discriminant(kCubic);
  for (int trial = 0; trial < 40; ++trial) {
    BigInt lambda = ld(rng);
    BigInt value = kCubic(lambda);
    if (value == 0 || value == 1 || value == -1) continue;
    Certificate c = certify_thm1(kCubic, lambda);
    if (c.status == CertStatus::NotCertified) continue;
    int best = 1 << 30;
    for (const PrimePower& pp : factor(value).factors) {
      if (two_delta % pp.p == 0) continue;
      int v2m = vp(BigInt(pp.exp), 2);
      best = std::min(best, std::min(2 * v2m + 2, v2m + 1));  // d = 3
    }
    CHECK(c.level_exponent == best);
  }
}

TEST_CASE("split witness selection minimizes the level over all assignments") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> rd(-60, 60), size_d(3, 6);
  int done = 0;
  while (done < 30) {
    std::set<int> chosen;
    int d_prime = size_d(rng);
    while (static_cast<int>(chosen.size()) < d_prime) chosen.insert(rd(rng));
    std::vector<BigInt> roots(chosen.begin(), chosen.end());
    Certificate c = certify_split(roots);
    ++done;
    if (c.status != CertStatus::Certified) continue;

    // independent oracle: enumerate every admissible prime per position and
    // take the best level over all combinations
    std::vector<std::vector<Witness>> cands(d_prime - 1);
    for (int i = 0; i + 1 < d_prime; ++i) {
      for (const PrimePower& pp : factor(roots.back() - roots[i]).factors) {
        if (pp.p == 2) continue;
        bool clean = true;
        for (int j = 0; j < d_prime && clean; ++j)
          for (int k = j + 1; k < d_prime && clean; ++k) {
            if (j == i && k == d_prime - 1) continue;
            if ((roots[j] - roots[k]) % pp.p == 0) clean = false;
          }
        if (clean) cands[i].push_back({pp.p, pp.exp, vp(BigInt(pp.exp), 2)});
      }
      REQUIRE(!cands[i].empty());
    }
    int best = 1 << 30;
    std::vector<std::size_t> pick(d_prime - 1, 0);
    while (true) {
      int n = 0;
      for (int i = 0; i + 2 < d_prime; ++i)
        n = std::max(n, cands[i][pick[i]].v2m);
      int nprime = cands[d_prime - 2][pick[d_prime - 2]].v2m;
      int k = (nprime <= n || d_prime % 2 == 0) ? 2 * n + 2 : n + nprime + 2;
      if (d_prime == 4) k = std::min(k, std::max(n, nprime) + 1);
      best = std::min(best, k);
      int pos = 0;
      while (pos < d_prime - 1 && ++pick[pos] == cands[pos].size())
        pick[pos++] = 0;
      if (pos == d_prime - 1) break;
    }
    CHECK(c.level_exponent == best);
  }
}

TEST_CASE("thm2 witness pair minimizes the level over all candidate pairs") {
  std::mt19937_64 rng(72);
  std::uniform_int_distribution<int> ld(-40, 40);
  BigInt two_delta = 2 * discriminant(kCubic);
  int done = 0;
  while (done < 30) {
    BigInt a = ld(rng), b = ld(rng);
    if (a == b || kCubic(a) == 0 || kCubic(b) == 0) continue;
    BigInt value = kCubic(a);
    if (value == 1 || value == -1) continue;
    ++done;
    Certificate c = certify_thm2(kCubic, a, b);
    if (c.status != CertStatus::Certified) continue;
    BigInt diff = a - b;
    int best = 1 << 30;
    for (const PrimePower& pp : factor(value).factors) {
      if (diff % pp.p == 0 || two_delta % pp.p == 0) continue;
      for (const PrimePower& qq : factor(diff).factors) {
        if (value % qq.p == 0 || two_delta % qq.p == 0) continue;
        int v2m = vp(BigInt(pp.exp), 2), v2mp = vp(BigInt(qq.exp), 2);
        int k = (v2mp <= v2m || kCubic.degree() % 2 == 0) ? 2 * v2m + 2
                                                          : v2m + v2mp + 2;
        best = std::min(best, k);
      }
    }
    CHECK(c.level_exponent == best);
  }
}

TEST_CASE("shift compatibility: witness multiplicities survive the moebius shift") {
  std::vector<BigInt> roots{0, 1, 6};
  Certificate c = certify_split(roots);
  REQUIRE(c.status == CertStatus::Certified);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const Witness& w = c.witnesses[i];
    MoebiusShiftResult shift = moebius_shift(roots, w.p);
    REQUIRE(shift.ok);
    CHECK(shift.valuations_preserved);
    CHECK(vp(shift.shifted.back() - shift.shifted[i], w.p) == 0);
    // the shifted model shows the same multiplicity at the witness prime
    CHECK(vp(shift.shifted[roots.size() - 1] - shift.shifted[i], w.p) ==
          static_cast<int>(w.m));
  }
}

TEST_CASE("certificate JSON round-trips byte-identically") {
  for (const Certificate& c :
       {certify_thm1(kCubic, 3), certify_thm1(kCubic, 1), certify_thm2(kCubic, 3, 10),
        certify_split({0, 1, 6})}) {
    std::string once = certificate_json(c).dump(2);
    std::string twice = nlohmann::ordered_json::parse(once).dump(2);
    CHECK(once == twice);
  }
  ScanReport rep = scan(kCubic, -5, 5);
  std::string once = scan_report_json(rep).dump(2);
  CHECK(nlohmann::ordered_json::parse(once).dump(2) == once);
}

TEST_CASE("certificates abstain rather than guess under a tiny budget") {
  // f(lambda) needs a real factorization; starve the budget
  FactorBudget tiny;
  tiny.trial_bound = 3;
  tiny.rho_iterations = 2;
  BigInt p("10000000000000000051"), q("10000000000000000087");
  // x^2 - p*q has f(0) = -p*q; irreducibility scan abstains, then the
  // factorization of f(1) = 1 - p*q abstains too
  IntPoly f(std::vector<BigInt>{-p * q, 0, 1});
  CHECK_THROWS_AS(certify_thm1(f, 1, tiny), FactorizationIncomplete);
}

TEST_CASE("scan records abstentions per lambda without aborting") {
  BigInt p("10000000000000000051"), q("10000000000000000087");
  IntPoly f(std::vector<BigInt>{-p * q, 0, 1});  // x^2 - pq, irreducibility unknown
  FactorBudget tiny;
  tiny.trial_bound = 50;
  tiny.rho_iterations = 2;
  ScanReport rep = scan(f, 1, 4, tiny);
  CHECK(rep.entries.size() == 4);
  CHECK(rep.abstained == 4);  // every f(lambda) is a hard semiprime-sized value
  CHECK(rep.non_certified.size() == 4);
  CHECK(!rep.notes.empty());  // conditional: irreducibility undecided
}

TEST_CASE("replay rejects a tampered certificate") {
  Certificate c = certify_thm1(kCubic, 3);
  Certificate bad = c;
  bad.witnesses[0].m = 3;
  CHECK(replay_failure(bad, IrredPlusLambda{kCubic, 3}).has_value());
  bad = c;
  bad.level_exponent = 5;
  CHECK(replay_failure(bad, IrredPlusLambda{kCubic, 3}).has_value());
  bad = c;
  bad.witnesses[0].p = 3;  // divides 2*disc
  CHECK(replay_failure(bad, IrredPlusLambda{kCubic, 3}).has_value());
}
