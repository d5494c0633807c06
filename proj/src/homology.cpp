#include "galois2/homology.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace galois2 {

namespace {

constexpr int kMaxGenus = 14;  // labels fit a uint32 with room to spare

void check_genus(int g) {
  if (g < 1 || g > kMaxGenus) throw std::invalid_argument("genus out of range");
}

}  // namespace

HomClassF2 HomClassF2::a(int i, int g) {
  check_genus(g);
  if (i < 1 || i > g) throw std::invalid_argument("basis index out of range");
  return {g, 1u << (i - 1)};
}

HomClassF2 HomClassF2::b(int i, int g) {
  check_genus(g);
  if (i < 1 || i > g) throw std::invalid_argument("basis index out of range");
  return {g, 1u << (g + i - 1)};
}

HomClassF2 HomClassF2::operator+(const HomClassF2& o) const {
  if (g != o.g) throw std::invalid_argument("genus mismatch");
  return {g, coords ^ o.coords};
}

std::string HomClassF2::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 1; i <= g; ++i)
    if (bit(i - 1)) {
      os << (first ? "" : "+") << "a" << i;
      first = false;
    }
  for (int i = 1; i <= g; ++i)
    if (bit(g + i - 1)) {
      os << (first ? "" : "+") << "b" << i;
      first = false;
    }
  return first ? "0" : os.str();
}

EvenPartition EvenPartition::from_labels(int g, const std::vector<int>& labels) {
  check_genus(g);
  std::uint32_t part = 0;
  for (int l : labels) {
    if (l < 1 || l > 2 * g + 2) throw std::invalid_argument("label out of range");
    part ^= 1u << (l - 1);
  }
  if (std::popcount(part) % 2 != 0)
    throw std::invalid_argument("partition must have even cardinality");
  // normalize to the half avoiding label 2g+2
  if (part >> (2 * g + 1) & 1) part ^= (1u << (2 * g + 2)) - 1;
  return {g, part};
}

int EvenPartition::size() const { return std::popcount(part); }

EvenPartition EvenPartition::operator^(const EvenPartition& o) const {
  if (g != o.g) throw std::invalid_argument("genus mismatch");
  std::uint32_t p = part ^ o.part;
  if (p >> (2 * g + 1) & 1) p ^= (1u << (2 * g + 2)) - 1;
  return {g, p};
}

std::string EvenPartition::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int l = 1; l <= 2 * g + 2; ++l)
    if (contains(l)) {
      os << (first ? "" : ",") << l;
      first = false;
    }
  os << "}";
  return os.str();
}

EvenPartition basis_partition(BasisKind kind, int i, int g) {
  check_genus(g);
  if (i < 1 || i > g) throw std::invalid_argument("basis index out of range");
  std::vector<int> labels;
  if (kind == BasisKind::a) {
    labels = {2 * i - 1, 2 * i};
  } else {
    for (int l = 2 * i; l <= 2 * g + 1; ++l) labels.push_back(l);
  }
  return EvenPartition::from_labels(g, labels);
}

HomClassF2 partition_to_class(const EvenPartition& p) {
  int g = p.g;
  check_genus(g);
  // columns: A_1..A_g, B_1..B_g over the 2g+2 label coordinates; reduce to
  // echelon form, tagging each working column with its combination of the
  // original basis columns, then peel the target off greedily
  int cols = 2 * g;
  std::vector<std::uint32_t> col(cols), tag(cols);
  for (int i = 1; i <= g; ++i) {
    col[i - 1] = basis_partition(BasisKind::a, i, g).part;
    col[g + i - 1] = basis_partition(BasisKind::b, i, g).part;
  }
  for (int c = 0; c < cols; ++c) tag[c] = 1u << c;

  std::vector<int> lead_of_row(2 * g + 2, -1);  // row -> reduced column index
  for (int c = 0; c < cols; ++c) {
    while (col[c] != 0) {
      int r = std::countr_zero(col[c]);
      int other = lead_of_row[r];
      if (other < 0) {
        lead_of_row[r] = c;
        break;
      }
      col[c] ^= col[other];
      tag[c] ^= tag[other];
    }
  }

  std::uint32_t target = p.part, solution = 0;
  while (target != 0) {
    int r = std::countr_zero(target);
    int c = lead_of_row[r];
    if (c < 0) throw std::logic_error("even partition outside the A/B span");
    target ^= col[c];
    solution ^= tag[c];
  }
  return {g, solution};
}

HomClassF2 c_class(int i, int g) {
  check_genus(g);
  if (i < 1 || i > 2 * g) throw std::invalid_argument("c-class index out of range");
  return partition_to_class(EvenPartition::from_labels(g, {i, 2 * g + 1}));
}

std::optional<HomClassF2> c_class_printed(int i, int g) {
  check_genus(g);
  if (i < 1 || i > 2 * g) throw std::invalid_argument("c-class index out of range");
  int lo = (i % 2 == 1) ? (i + 1) / 2 : i / 2 + 1;
  if (lo < 1 || lo > g) return std::nullopt;
  HomClassF2 out{g, 0};
  for (int j = lo; j <= g; ++j) out = out + HomClassF2::a(j, g);
  out = out + HomClassF2::b(lo, g);
  return out;
}

int pairing_f2(const HomClassF2& u, const HomClassF2& v) {
  if (u.g != v.g) throw std::invalid_argument("genus mismatch");
  int s = 0;
  for (int i = 0; i < u.g; ++i)
    s ^= (u.bit(i) & v.bit(u.g + i)) ^ (u.bit(u.g + i) & v.bit(i));
  return s;
}

MoebiusShiftResult moebius_shift(const std::vector<BigInt>& roots, const BigInt& p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j]) throw std::invalid_argument("roots must be distinct");

  MoebiusShiftResult out;
  // forbidden residues: 0 and every root
  std::vector<BigInt> forbidden{0};
  for (const BigInt& r : roots) {
    BigInt m = r % p;
    if (m < 0) m += p;
    forbidden.push_back(m);
  }
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  if (static_cast<BigInt>(forbidden.size()) == p) {
    out.detail = "no shift point available: all residues mod p are excluded";
    return out;
  }
  BigInt beta = 1;
  while (std::binary_search(forbidden.begin(), forbidden.end(), beta % p)) ++beta;

  out.ok = true;
  out.beta = beta;
  for (const BigInt& r : roots)
    out.shifted.emplace_back(BigRational(BigInt(r * beta)) /
                             BigRational(BigInt(beta - r)));
  // the map x -> x*beta/(beta - x) sends infinity to -beta, and
  // -beta - a'_j = -beta^2/(beta - a_j) is a unit for every j
  out.shifted.emplace_back(BigRational(BigInt(-beta)));

  out.valuations_preserved = true;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      int before = vp(BigRational(roots[i] - roots[j]), p);
      int after = vp(out.shifted[i] - out.shifted[j], p);
      if (before != after) out.valuations_preserved = false;
    }
  out.new_point_unit = true;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (vp(out.shifted.back() - out.shifted[i], p) != 0) out.new_point_unit = false;
  return out;
}

CClassReport cclass_verify(int g) {
  check_genus(g);
  CClassReport rep;
  rep.g = g;
  std::vector<HomClassF2> cs;
  for (int i = 1; i <= 2 * g; ++i) cs.push_back(c_class(i, g));
  for (const HomClassF2& c : cs) rep.oracle_classes.push_back(c.str());

  rep.pairings_all_one = true;
  for (int i = 0; i < 2 * g; ++i)
    for (int j = 0; j < 2 * g; ++j)
      if (i != j && pairing_f2(cs[i], cs[j]) != 1) rep.pairings_all_one = false;

  // rank over F2 of the 2g coordinate vectors
  std::vector<std::uint32_t> rowsv;
  for (const HomClassF2& c : cs) rowsv.push_back(c.coords);
  int rank = 0;
  for (int bitpos = 0; bitpos < 2 * g; ++bitpos) {
    int pivot = -1;
    for (std::size_t r = rank; r < rowsv.size(); ++r)
      if ((rowsv[r] >> bitpos) & 1) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0) continue;
    std::swap(rowsv[rank], rowsv[pivot]);
    for (std::size_t r = 0; r < rowsv.size(); ++r)
      if (static_cast<int>(r) != rank && ((rowsv[r] >> bitpos) & 1))
        rowsv[r] ^= rowsv[rank];
    ++rank;
  }
  rep.classes_form_basis = (rank == 2 * g);

  rep.odd_printed_matches = true;
  rep.even_printed_matches = true;
  for (int i = 1; i <= 2 * g; ++i) {
    auto printed = c_class_printed(i, g);
    if (i % 2 == 1) {
      if (!printed || !(*printed == cs[i - 1])) rep.odd_printed_matches = false;
    } else if (!printed) {
      rep.even_printed_undefined.push_back(i);
    } else if (!(*printed == cs[i - 1])) {
      rep.even_printed_matches = false;
    }
  }
  rep.pass = rep.pairings_all_one && rep.classes_form_basis && rep.odd_printed_matches;
  return rep;
}

}  // namespace galois2
