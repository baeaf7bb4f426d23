#include "bucklab/buck.hpp"

#include <set>
#include <string>

#include "bucklab/errors.hpp"

namespace bucklab {

Rational buck_upper(const EventuallyPeriodicSet& s) {
  return Rational(Integer(static_cast<unsigned long>(s.residues().size())),
                  Integer(static_cast<unsigned long>(s.modulus())));
}

Rational buck_lower(const EventuallyPeriodicSet& s) {
  // Conjugate form 1 - b*(N \ S); the complement keeps exactly the other
  // residue classes, so this agrees with buck_upper.
  const EventuallyPeriodicSet rest = complement(s);
  return Rational(1) - buck_upper(rest);
}

namespace {

std::string relation(const Rational& a, const char* op, const Rational& b) {
  return a.to_string() + " " + op + " " + b.to_string();
}

}  // namespace

Report check_axioms(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b, std::uint64_t k,
                    std::uint64_t h) {
  Report r;
  r.title = "density axioms";
  const Rational one(1);
  const Rational ba = buck_upper(a);
  const Rational bb = buck_upper(b);
  const Rational bn = buck_upper(EventuallyPeriodicSet::naturals());
  r.value("b*(S1)", ba.to_string());
  r.value("b*(S2)", bb.to_string());

  r.check("normalization b*(N) = 1", bn == one, bn.to_string());
  r.check("normalization b*(S1) <= 1", ba <= one, relation(ba, "<=", one));
  r.check("normalization b*(S2) <= 1", bb <= one, relation(bb, "<=", one));

  const EventuallyPeriodicSet meet = intersect(a, b);
  const EventuallyPeriodicSet join = unite(a, b);
  const Rational bmeet = buck_upper(meet);
  const Rational bjoin = buck_upper(join);
  r.value("b*(S1 ∩ S2)", bmeet.to_string());
  r.value("b*(S1 ∪ S2)", bjoin.to_string());
  r.check("monotone b*(S1 ∩ S2) <= b*(S1)", bmeet <= ba, relation(bmeet, "<=", ba));
  r.check("monotone b*(S1) <= b*(S1 ∪ S2)", ba <= bjoin, relation(ba, "<=", bjoin));
  r.check("monotone b*(S2) <= b*(S1 ∪ S2)", bb <= bjoin, relation(bb, "<=", bjoin));

  r.check("subadditive b*(S1 ∪ S2) <= b*(S1) + b*(S2)", bjoin <= ba + bb,
          relation(bjoin, "<=", ba + bb) + (bjoin < ba + bb ? " (strict)" : ""));

  if (k == 0) {
    r.check("scaling k >= 1", false, "k = 0");
  } else {
    const Rational kk(Integer(static_cast<unsigned long>(k)));
    const Rational sa = buck_upper(affine(a, k, h));
    const Rational sb = buck_upper(affine(b, k, h));
    r.value("b*(k*S1 + h)", sa.to_string());
    r.value("b*(k*S2 + h)", sb.to_string());
    r.check("scaling b*(k*S1 + h) = b*(S1)/k", sa == ba / kk, relation(sa, "=", ba / kk));
    r.check("scaling b*(k*S2 + h) = b*(S2)/k", sb == bb / kk, relation(sb, "=", bb / kk));
  }

  const Rational la = one - buck_upper(complement(a));
  const Rational lb = one - buck_upper(complement(b));
  r.check("conjugacy b_*(S1) = b*(S1)", la == ba, relation(la, "=", ba));
  r.check("conjugacy b_*(S2) = b*(S2)", lb == bb, relation(lb, "=", bb));
  return r;
}

AdditivityResult additivity_disjoint(const EventuallyPeriodicSet& x, const EventuallyPeriodicSet& y,
                                     const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  if (!a.is_progression_union() || !b.is_progression_union()) {
    throw ContractViolation("covers must be finite unions of arithmetic progressions");
  }
  if (!is_subset(x, a)) throw ContractViolation("X is not contained in its cover A");
  if (!is_subset(y, b)) throw ContractViolation("Y is not contained in its cover B");
  const EventuallyPeriodicSet overlap = intersect(a, b);
  if (!overlap.is_empty()) {
    throw ContractViolation("covers are not disjoint: A ∩ B = " + overlap.to_string());
  }

  const EventuallyPeriodicSet xy = unite(x, y);
  AdditivityResult out{buck_upper(xy), buck_lower(xy), {}};
  const Rational ux = buck_upper(x);
  const Rational uy = buck_upper(y);
  const Rational lx = buck_lower(x);
  const Rational ly = buck_lower(y);
  out.report.title = "disjoint-cover additivity";
  out.report.value("b*(X ∪ Y)", out.upper.to_string());
  out.report.value("b_*(X ∪ Y)", out.lower.to_string());
  out.report.check("b*(X ∪ Y) = b*(X) + b*(Y)", out.upper == ux + uy,
                   relation(out.upper, "=", ux) + " + " + uy.to_string());
  out.report.check("b_*(X ∪ Y) = b_*(X) + b_*(Y)", out.lower == lx + ly,
                   relation(out.lower, "=", lx) + " + " + ly.to_string());
  return out;
}

ResidueProfile sums_of_two_squares_residues() {
  return [](std::uint64_t m) {
    if (m == 0) throw ContractViolation("modulus must be positive");
    if (m > (std::uint64_t{1} << 26)) throw CapacityExceeded("residue profile modulus too large");
    std::set<std::uint64_t> squares;
    for (std::uint64_t x = 0; x < m; ++x) squares.insert(x * x % m);
    Bitmap out(m);
    for (std::uint64_t s : squares) {
      for (std::uint64_t t : squares) out.set((s + t) % m);
    }
    return out;
  };
}

Rational modulus_cover_bound(const ResidueProfile& profile, std::uint64_t modulus) {
  if (modulus == 0) throw ContractViolation("modulus must be positive");
  const Bitmap attained = profile(modulus);
  return Rational(Integer(static_cast<unsigned long>(attained.count())),
                  Integer(static_cast<unsigned long>(modulus)));
}

}  // namespace bucklab
