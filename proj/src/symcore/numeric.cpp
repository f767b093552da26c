#include "psslab/symcore/numeric.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "psslab/symcore/normal_form.hpp"

namespace psslab::sym {

namespace {

using cplx = std::complex<double>;

cplx lookup(const Assignment& a, const std::string& name) {
  auto it = a.find(name);
  if (it == a.end()) throw MissingAtom("no value for atom '" + name + "'");
  return it->second;
}

cplx ipow(cplx base, int n) {
  if (n < 0) {
    if (std::abs(base) < kPoleThreshold) throw PoleError("division by a value near zero");
    return 1.0 / ipow(base, -n);
  }
  cplx result(1.0, 0.0);
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

cplx sample_point(std::mt19937_64& rng, double inner, double outer) {
  std::uniform_real_distribution<double> radius(inner, outer);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(radius(rng), angle(rng));
}

}  // namespace

cplx eval_numeric(const Expr& e, const Assignment& a) {
  switch (e.kind()) {
    case Expr::Kind::Const: return e.value().to_complex();
    case Expr::Kind::X: return lookup(a, "x");
    case Expr::Kind::T: return lookup(a, "t");
    case Expr::Kind::Jet: return lookup(a, e.jet_coord().name());
    case Expr::Kind::Param: return lookup(a, e.param_name());
    case Expr::Kind::Add: {
      cplx s(0.0, 0.0);
      for (const auto& op : e.operands()) s += eval_numeric(op, a);
      return s;
    }
    case Expr::Kind::Mul: {
      cplx p(1.0, 0.0);
      for (const auto& op : e.operands()) p *= eval_numeric(op, a);
      return p;
    }
    case Expr::Kind::Pow: return ipow(eval_numeric(e.operands()[0], a), e.exponent());
    case Expr::Kind::Func: {
      cplx v = eval_numeric(e.operands()[0], a);
      switch (e.func()) {
        case Func::Sin: return std::sin(v);
        case Func::Cos: return std::cos(v);
        case Func::Exp: return std::exp(v);
      }
    }
  }
  return {};
}

Assignment random_assignment(const Expr& e, std::uint64_t seed, double inner, double outer) {
  std::mt19937_64 rng(seed);
  Assignment a;
  for (const auto& name : atom_names(e)) a[name] = sample_point(rng, inner, outer);
  return a;
}

bool is_zero(const Expr& e, const ZeroTestOptions& opt) {
  bool exact = to_ratfunc(e).is_zero();
  bool opaque = has_opaque_atoms(e);
  std::mt19937_64 rng(opt.seed);
  auto names = atom_names(e);

  // Scale for the tolerance: the summed magnitudes of the top-level terms, so
  // cancellation among large terms is judged relative to their size.
  auto magnitude = [&](const Assignment& a) {
    if (e.kind() != Expr::Kind::Add) return std::abs(eval_numeric(e, a));
    double m = 0.0;
    for (const auto& term : e.operands()) m += std::abs(eval_numeric(term, a));
    return m;
  };

  for (int round = 0; round < opt.rounds; ++round) {
    bool all_small = true;     // within tolerance of zero, absolute floor 1
    bool all_relative = true;  // within tolerance relative to the term sizes
    bool pole = false;
    for (int p = 0; p < opt.points && !pole; ++p) {
      Assignment a;
      for (const auto& name : names) a[name] = sample_point(rng, opt.annulus_inner, opt.annulus_outer);
      try {
        double value = std::abs(eval_numeric(e, a));
        double mag = magnitude(a);
        if (!std::isfinite(value) || !std::isfinite(mag)) {
          pole = true;
        } else {
          if (value >= opt.tolerance * std::max(1.0, mag)) all_small = false;
          if (value >= opt.tolerance * mag) all_relative = false;
        }
      } catch (const PoleError&) {
        pole = true;
      }
    }
    if (pole) continue;
    if (exact && !all_small) {
      throw CertificateMismatch("normal form is zero but numeric certificate is not: " + e.str());
    }
    if (!exact && all_relative && !opaque) {
      throw CertificateMismatch("numeric certificate is zero but normal form is not: " + e.str());
    }
    return exact || (opaque && all_relative);
  }
  throw ZeroTestInconclusive("zero test hit poles in every round: " + e.str());
}

}  // namespace psslab::sym
