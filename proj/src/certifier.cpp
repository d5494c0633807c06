#include "galois2/certifier.hpp"

#include <algorithm>

namespace galois2 {

namespace {

struct LevelChoice {
  int k = 0;
  std::string note;
};

// Theorem 1.1 levels: 2^{2 v2(m) + 2}, improved to 2^{v2(m)+1} when d = 3.
LevelChoice thm1_level(int v2m, int d) {
  LevelChoice out;
  out.k = 2 * v2m + 2;
  if (d == 3 && v2m + 1 < out.k) {
    out.k = v2m + 1;
    out.note = "degree-3 rule applied";
  }
  return out;
}

// Theorem 1.2 levels; "d = 2g" means d even (curve degree d' = d + 2).
LevelChoice thm2_level(int v2m, int v2mp, int d) {
  LevelChoice out;
  out.k = (v2mp <= v2m || d % 2 == 0) ? 2 * v2m + 2 : v2m + v2mp + 2;
  if (d == 2) {
    int alt = std::max(v2m, v2mp) + 1;
    if (alt < out.k) {
      out.k = alt;
      out.note = "degree-2 rule applied";
    }
  }
  return out;
}

// Split-model levels; n over the first d'-2 witnesses, n' for the last.
LevelChoice split_level(int n, int nprime, int d_prime) {
  LevelChoice out;
  out.k = (nprime <= n || d_prime % 2 == 0) ? 2 * n + 2 : n + nprime + 2;
  if (d_prime == 4) {
    int alt = std::max(n, nprime) + 1;
    if (alt < out.k) {
      out.k = alt;
      out.note = "degree-4 rule applied";
    }
  }
  return out;
}

void attach_index_bound(Certificate& cert) {
  if (cert.witnesses.empty()) return;
  int n = cert.witnesses.front().v2m;
  for (const Witness& w : cert.witnesses)
    if (w.v2m != n) return;  // the bound is stated only for n = n'
  if (auto b = index_bound(n, cert.genus, cert.d_prime)) {
    cert.index_bound = *b;
    cert.notes.push_back("index bound attached (uniform v2(m) = " +
                         std::to_string(n) + ")");
  }
}

void require_thm_inputs(const IntPoly& f) {
  if (!f.is_monic() || f.degree() < 2)
    throw std::invalid_argument("f must be monic of degree >= 2");
  if (!is_squarefree(f)) throw std::invalid_argument("f must be squarefree");
}

Certificate certify_thm1_impl(const IntPoly& f, const BigInt& lambda,
                              const IrreducibilityVerdict& verdict,
                              const FactorBudget& budget) {
  int d = f.degree();
  Certificate cert;
  cert.theorem = "1.1";
  cert.d = d;
  cert.d_prime = d + 1;
  cert.genus = (cert.d_prime - 1) / 2;

  if (verdict.disproven()) {
    cert.reason = "Reducible";
    cert.notes.push_back("factor found: " + verdict.factor->str());
    return cert;
  }

  BigInt value = f(lambda);
  if (value == 0) throw std::invalid_argument("certify_thm1: f(lambda) = 0");
  if (value == 1 || value == -1) {
    cert.reason = "UnitValue";
    return cert;
  }
  BigInt two_delta = 2 * discriminant(f);
  PrimeFactorization fact = factor(value, budget);

  std::optional<Witness> best;
  std::string best_note;
  for (const PrimePower& pp : fact.factors) {
    if (two_delta % pp.p == 0) continue;
    Witness w{pp.p, pp.exp, vp(BigInt(pp.exp), 2)};
    LevelChoice lc = thm1_level(w.v2m, d);
    if (!best || lc.k < thm1_level(best->v2m, d).k ||
        (lc.k == thm1_level(best->v2m, d).k && w.p < best->p)) {
      best = w;
      best_note = lc.note;
    }
  }
  if (!best) {
    cert.reason = "AllPrimesDivide2Delta";
    return cert;
  }
  cert.witnesses = {*best};
  cert.level_exponent = thm1_level(best->v2m, d).k;
  if (!best_note.empty()) cert.notes.push_back(best_note);
  cert.openness = true;
  attach_index_bound(cert);
  if (verdict.proven()) {
    cert.status = CertStatus::Certified;
    cert.notes.push_back("irreducibility: " + verdict.witness);
  } else {
    cert.status = CertStatus::CertifiedConditional;
    cert.conditional_reasons.push_back("IrreducibilityUnknown");
  }
  return cert;
}

}  // namespace

std::string Certificate::status_string() const {
  switch (status) {
    case CertStatus::Certified:
      return "Certified";
    case CertStatus::CertifiedConditional: {
      std::string s = "CertifiedConditional(";
      for (std::size_t i = 0; i < conditional_reasons.size(); ++i)
        s += (i ? "," : "") + conditional_reasons[i];
      return s + ")";
    }
    case CertStatus::NotCertified:
      return "NotCertified(" + reason + ")";
  }
  return "NotCertified()";
}

Certificate certify_thm1(const IntPoly& f, const BigInt& lambda,
                         const FactorBudget& budget) {
  require_thm_inputs(f);
  if (f(lambda) == 0) throw std::invalid_argument("certify_thm1: f(lambda) = 0");
  return certify_thm1_impl(f, lambda, irreducibility_witness(f, budget), budget);
}

Certificate certify_thm2(const IntPoly& f, const BigInt& lambda,
                         const BigInt& lambda2, const FactorBudget& budget) {
  require_thm_inputs(f);
  if (lambda == lambda2)
    throw std::invalid_argument("certify_thm2: lambda and lambda' must differ");
  if (f(lambda) == 0 || f(lambda2) == 0)
    throw std::invalid_argument("certify_thm2: lambda may not be a root of f");

  int d = f.degree();
  Certificate cert;
  cert.theorem = "1.2";
  cert.d = d;
  cert.d_prime = d + 2;
  cert.genus = (cert.d_prime - 1) / 2;

  IrreducibilityVerdict verdict = irreducibility_witness(f, budget);
  if (verdict.disproven()) {
    cert.reason = "Reducible";
    cert.notes.push_back("factor found: " + verdict.factor->str());
    return cert;
  }

  BigInt value = f(lambda);
  BigInt diff = lambda - lambda2;
  if (value == 1 || value == -1) {
    cert.reason = "UnitValue";
    return cert;
  }
  BigInt two_delta = 2 * discriminant(f);
  PrimeFactorization fact_value = factor(value, budget);
  PrimeFactorization fact_diff = factor(diff, budget);

  std::vector<Witness> cand_p, cand_pp;
  for (const PrimePower& pp : fact_value.factors)
    if (diff % pp.p != 0 && two_delta % pp.p != 0)
      cand_p.push_back({pp.p, pp.exp, vp(BigInt(pp.exp), 2)});
  for (const PrimePower& pp : fact_diff.factors)
    if (value % pp.p != 0 && two_delta % pp.p != 0)
      cand_pp.push_back({pp.p, pp.exp, vp(BigInt(pp.exp), 2)});
  if (cand_pp.empty()) {
    cert.reason = "NoPrimeForDifference";
    return cert;
  }
  if (cand_p.empty()) {
    cert.reason = "NoPrimeForFLambda";
    return cert;
  }

  std::optional<std::pair<Witness, Witness>> best;
  LevelChoice best_lc;
  for (const Witness& w : cand_p)
    for (const Witness& wp : cand_pp) {
      LevelChoice lc = thm2_level(w.v2m, wp.v2m, d);
      bool better = !best || lc.k < best_lc.k ||
                    (lc.k == best_lc.k &&
                     std::tie(w.p, wp.p) < std::tie(best->first.p, best->second.p));
      if (better) {
        best = {w, wp};
        best_lc = lc;
      }
    }
  cert.witnesses = {best->first, best->second};
  cert.level_exponent = best_lc.k;
  if (!best_lc.note.empty()) cert.notes.push_back(best_lc.note);
  cert.openness = true;
  attach_index_bound(cert);
  if (verdict.proven()) {
    cert.status = CertStatus::Certified;
    cert.notes.push_back("irreducibility: " + verdict.witness);
  } else {
    cert.status = CertStatus::CertifiedConditional;
    cert.conditional_reasons.push_back("IrreducibilityUnknown");
  }
  return cert;
}

Certificate certify_split(const std::vector<BigInt>& roots,
                          const FactorBudget& budget) {
  int d_prime = static_cast<int>(roots.size());
  if (d_prime < 3) throw std::invalid_argument("certify_split: need >= 3 roots");
  for (int i = 0; i < d_prime; ++i)
    for (int j = i + 1; j < d_prime; ++j)
      if (roots[i] == roots[j])
        throw std::invalid_argument("certify_split: roots must be distinct");

  Certificate cert;
  cert.theorem = "4.1";
  cert.d_prime = d_prime;
  cert.genus = (d_prime - 1) / 2;

  const BigInt& target = roots.back();
  for (int i = 0; i + 1 < d_prime; ++i) {
    BigInt diff = target - roots[i];
    PrimeFactorization fact = factor(diff, budget);
    std::optional<Witness> best;
    for (const PrimePower& pp : fact.factors) {
      if (pp.p == 2) continue;
      // p must identify {alpha_i, alpha_d'} uniquely: it divides no other
      // pairwise difference
      bool clean = true;
      for (int j = 0; j < d_prime && clean; ++j)
        for (int k = j + 1; k < d_prime && clean; ++k) {
          if (j == i && k == d_prime - 1) continue;
          if ((roots[j] - roots[k]) % pp.p == 0) clean = false;
        }
      if (!clean) continue;
      Witness w{pp.p, pp.exp, vp(BigInt(pp.exp), 2)};
      if (!best || w.v2m < best->v2m || (w.v2m == best->v2m && w.p < best->p))
        best = w;
    }
    if (!best) {
      cert.reason = "NoAssignment";
      cert.witnesses.clear();
      cert.notes.push_back("no admissible prime for root " + roots[i].str());
      return cert;
    }
    cert.witnesses.push_back(*best);
  }

  int n = 0;
  for (int i = 0; i + 2 < d_prime; ++i) n = std::max(n, cert.witnesses[i].v2m);
  int nprime = cert.witnesses[d_prime - 2].v2m;
  LevelChoice lc = split_level(n, nprime, d_prime);
  cert.level_exponent = lc.k;
  if (!lc.note.empty()) cert.notes.push_back(lc.note);
  cert.openness = true;
  attach_index_bound(cert);
  cert.status = CertStatus::Certified;
  return cert;
}

Certificate certify(const CurveSpec& curve, const FactorBudget& budget) {
  return std::visit(
      [&budget](const auto& c) -> Certificate {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IrredPlusLambda>)
          return certify_thm1(c.f, c.lambda, budget);
        else if constexpr (std::is_same_v<T, IrredPlusTwoLambdas>)
          return certify_thm2(c.f, c.lambda, c.lambda2, budget);
        else
          return certify_split(c.roots, budget);
      },
      curve);
}

std::optional<std::string> replay_failure(const Certificate& cert,
                                          const CurveSpec& curve,
                                          const FactorBudget&) {
  if (cert.status == CertStatus::NotCertified) return std::nullopt;

  auto check_witness = [](const Witness& w, const BigInt& divided,
                          const std::vector<BigInt>& excluded) -> std::optional<std::string> {
    if (w.m < 1) return "witness multiplicity below 1";
    if (!is_prime(w.p)) return "witness " + w.p.str() + " is not prime";
    if (vp(divided, w.p) != static_cast<int>(w.m))
      return "multiplicity of " + w.p.str() + " does not replay";
    if (w.v2m != vp(BigInt(w.m), 2)) return "v2(m) does not replay";
    for (const BigInt& x : excluded)
      if (x % w.p == 0) return "witness " + w.p.str() + " divides an excluded quantity";
    return std::nullopt;
  };

  if (const auto* c = std::get_if<IrredPlusLambda>(&curve)) {
    if (cert.witnesses.size() != 1) return "expected one witness";
    BigInt two_delta = 2 * discriminant(c->f);
    if (auto err = check_witness(cert.witnesses[0], c->f(c->lambda), {two_delta}))
      return err;
    if (cert.level_exponent != thm1_level(cert.witnesses[0].v2m, c->f.degree()).k)
      return "level exponent does not replay";
    if (cert.d_prime != c->f.degree() + 1) return "curve degree mismatch";
  } else if (const auto* c2 = std::get_if<IrredPlusTwoLambdas>(&curve)) {
    if (cert.witnesses.size() != 2) return "expected two witnesses";
    BigInt two_delta = 2 * discriminant(c2->f);
    BigInt value = c2->f(c2->lambda), diff = c2->lambda - c2->lambda2;
    if (auto err = check_witness(cert.witnesses[0], value, {diff, two_delta}))
      return err;
    if (auto err = check_witness(cert.witnesses[1], diff, {value, two_delta}))
      return err;
    if (cert.level_exponent !=
        thm2_level(cert.witnesses[0].v2m, cert.witnesses[1].v2m, c2->f.degree()).k)
      return "level exponent does not replay";
    if (cert.d_prime != c2->f.degree() + 2) return "curve degree mismatch";
  } else if (const auto* cs = std::get_if<SplitRoots>(&curve)) {
    int d_prime = static_cast<int>(cs->roots.size());
    if (static_cast<int>(cert.witnesses.size()) != d_prime - 1)
      return "expected d'-1 witnesses";
    const BigInt& targ = cs->roots.back();
    for (int i = 0; i + 1 < d_prime; ++i) {
      const Witness& w = cert.witnesses[i];
      if (w.p == 2) return "witness prime 2 is not allowed";
      std::vector<BigInt> excluded;
      for (int j = 0; j < d_prime; ++j)
        for (int k = j + 1; k < d_prime; ++k) {
          if (j == i && k == d_prime - 1) continue;
          excluded.push_back(cs->roots[j] - cs->roots[k]);
        }
      if (auto err = check_witness(w, targ - cs->roots[i], excluded)) return err;
    }
    int n = 0;
    for (int i = 0; i + 2 < d_prime; ++i) n = std::max(n, cert.witnesses[i].v2m);
    int nprime = cert.witnesses[d_prime - 2].v2m;
    if (cert.level_exponent != split_level(n, nprime, d_prime).k)
      return "level exponent does not replay";
  }

  if (cert.index_bound) {
    int n = cert.witnesses.front().v2m;
    for (const Witness& w : cert.witnesses)
      if (w.v2m != n) return "index bound attached with non-uniform v2(m)";
    auto b = index_bound(n, cert.genus, cert.d_prime);
    if (!b || *b != *cert.index_bound) return "index bound does not replay";
  }
  return std::nullopt;
}

std::optional<BigInt> index_bound(int n, int g, int d_prime) {
  if (n < 0 || g < 1 || d_prime < 3)
    throw std::invalid_argument("index_bound: bad arguments");
  long exponent = static_cast<long>(2 * n + 1) * (2 * g * g + g) -
                  static_cast<long>(n + 1) * (d_prime - 1);
  if (exponent < 0) return std::nullopt;
  return BigInt(1) << exponent;
}

bool sigma_class(const IntPoly& f, const BigInt& lambda, unsigned s,
                 const FactorBudget& budget) {
  if (s < 1) throw std::invalid_argument("sigma_class: s >= 1 required");
  BigInt value = f(lambda);
  if (value == 0) throw std::invalid_argument("sigma_class: f(lambda) = 0");
  if (value == 1 || value == -1) return true;
  BigInt two_delta = 2 * discriminant(f);
  PrimeFactorization fact = factor(value, budget);
  for (const PrimePower& pp : fact.factors) {
    if (two_delta % pp.p == 0) continue;
    // s == 1 asks for membership in Sigma itself: no prime outside 2*Delta
    if (s == 1 || pp.exp % s != 0) return false;
  }
  return true;
}

ScanReport scan(const IntPoly& f, const BigInt& lo, const BigInt& hi,
                const FactorBudget& budget) {
  require_thm_inputs(f);
  ScanReport rep;
  rep.f = f;
  rep.lo = lo;
  rep.hi = hi;
  IrreducibilityVerdict verdict = irreducibility_witness(f, budget);
  if (verdict.disproven())
    throw std::invalid_argument("scan: f is reducible (" + verdict.factor->str() + ")");
  if (!verdict.proven())
    rep.notes.push_back("irreducibility unknown; certificates are conditional");

  for (BigInt lam = lo; lam <= hi; ++lam) {
    ScanEntry entry;
    entry.lambda = lam;
    if (f(lam) == 0) {
      entry.outcome = ScanOutcome::Degenerate;
      ++rep.degenerate;
    } else {
      try {
        Certificate cert = certify_thm1_impl(f, lam, verdict, budget);
        if (cert.status != CertStatus::NotCertified) {
          entry.outcome = ScanOutcome::Certified;
          entry.level_exponent = cert.level_exponent;
          ++rep.certified;
        } else if (cert.reason == "UnitValue") {
          entry.outcome = ScanOutcome::UnitValue;
          ++rep.unit_value;
        } else {
          entry.outcome = ScanOutcome::SigmaObstructed;
          ++rep.sigma_obstructed;
        }
      } catch (const FactorizationIncomplete&) {
        entry.outcome = ScanOutcome::Abstained;
        ++rep.abstained;
      }
    }
    if (entry.outcome != ScanOutcome::Certified) rep.non_certified.push_back(lam);
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

std::string scan_outcome_name(ScanOutcome o) {
  switch (o) {
    case ScanOutcome::Certified: return "Certified";
    case ScanOutcome::SigmaObstructed: return "SigmaObstructed";
    case ScanOutcome::UnitValue: return "UnitValue";
    case ScanOutcome::Degenerate: return "Degenerate";
    case ScanOutcome::Abstained: return "Abstained";
  }
  return "?";
}

nlohmann::ordered_json certificate_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["status"] = cert.status_string();
  j["theorem"] = cert.theorem;
  if (cert.d)
    j["d"] = *cert.d;
  else
    j["d"] = nullptr;
  j["d_prime"] = cert.d_prime;
  j["genus"] = cert.genus;
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const Witness& w : cert.witnesses)
    ws.push_back({{"p", w.p.str()}, {"m", w.m}, {"v2m", w.v2m}});
  j["witnesses"] = ws;
  j["level_exponent"] = cert.level_exponent;
  if (cert.level_exponent > 62)
    throw std::logic_error("level exponent out of serializable range");
  j["gamma_level"] = std::uint64_t(1) << cert.level_exponent;
  j["openness"] = cert.openness;
  if (cert.index_bound)
    j["index_bound"] = cert.index_bound->str();
  else
    j["index_bound"] = nullptr;
  j["conditional_reasons"] = cert.conditional_reasons;
  j["notes"] = cert.notes;
  return j;
}

nlohmann::ordered_json scan_report_json(const ScanReport& rep) {
  nlohmann::ordered_json j;
  j["f"] = rep.f.str();
  j["from"] = rep.lo.str();
  j["to"] = rep.hi.str();
  j["counts"] = {{"certified", rep.certified},
                 {"sigma_obstructed", rep.sigma_obstructed},
                 {"unit_value", rep.unit_value},
                 {"degenerate", rep.degenerate},
                 {"abstained", rep.abstained}};
  nlohmann::ordered_json nc = nlohmann::ordered_json::array();
  for (const BigInt& l : rep.non_certified) nc.push_back(l.str());
  j["non_certified"] = nc;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const ScanEntry& e : rep.entries) {
    nlohmann::ordered_json je;
    je["lambda"] = e.lambda.str();
    je["outcome"] = scan_outcome_name(e.outcome);
    if (e.level_exponent) je["level_exponent"] = *e.level_exponent;
    entries.push_back(je);
  }
  j["entries"] = entries;
  j["notes"] = rep.notes;
  return j;
}

}  // namespace galois2
