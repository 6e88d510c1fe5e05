#pragma once

// Square-zero extensions R = S (+) J of chart rings. The multiplication
//   (s, j)(s', j') = (ss', s j' + s' j + eps(ss' - NF(ss')))
// is twisted by an S-linear eps : I_S -> J on the defining ideal of S, so
// the cocycle eps(ss' - NF(ss')) is symmetric and J^2 = 0 holds by
// construction. eps is stored by its values on the defining generators.

#include <optional>
#include <string>
#include <vector>

#include "logalg/cotangent.hpp"

namespace logalg {

struct SqzElement {
  Vec s;  // normal form in S
  Vec j;  // reduced in J
};

class SquareZeroRing {
 public:
  SquareZeroRing() = default;
  // eps[l] is the value on S.defining_ideal()[l].
  SquareZeroRing(Algebra S, ModulePresentation J, std::vector<Vec> eps);
  // R -> R/J for an ideal J of R with J^2 = 0 (InvalidArgument otherwise).
  static SquareZeroRing from_quotient(const Algebra& R, const std::vector<Vec>& J);

  const Algebra& base() const { return s_; }
  const ModulePresentation& J() const { return j_; }
  const std::vector<Vec>& eps() const { return eps_; }
  // The ring it was cut out of, when built by from_quotient.
  const std::optional<Algebra>& carrier() const { return carrier_; }
  const std::vector<Vec>& carrier_ideal() const { return carrier_ideal_; }

  Vec epsilon(const Vec& h) const;
  Vec cocycle(const Vec& a, const Vec& b) const;
  // eps kills the syzygies of the defining ideal.
  bool is_well_defined() const;
  bool is_split() const;

  SqzElement element(const Vec& s, const Vec& j = {}) const;
  SqzElement zero() const { return {}; }
  SqzElement one() const;
  SqzElement exp(const Vec& xi) const { return element(s_.ring().constant(1), xi); }
  SqzElement add(const SqzElement& a, const SqzElement& b) const;
  SqzElement sub(const SqzElement& a, const SqzElement& b) const;
  SqzElement mul(const SqzElement& a, const SqzElement& b) const;
  SqzElement pow(const SqzElement& a, std::int64_t n) const;
  // p in k[x] evaluated at the given images of the variables.
  SqzElement evaluate(const Vec& p, const std::vector<SqzElement>& images) const;
  // Lifts (x_i, 0) of the variables of S.
  std::vector<SqzElement> variables() const;
  SqzElement monomial(const Exponent& e) const;
  bool equal(const SqzElement& a, const SqzElement& b) const;
  bool is_unit(const SqzElement& a) const { return s_.is_unit(a.s); }
  std::string to_string(const SqzElement& a) const;

 private:
  Algebra s_;
  ModulePresentation j_;
  std::vector<Vec> eps_;
  std::optional<Algebra> carrier_;
  std::vector<Vec> carrier_ideal_;
};

// k-basis of a module that is finite dimensional over k (standard monomials).
struct KBasis {
  ModulePresentation module;
  std::vector<Vec> basis;
  std::vector<Scalar> coords(const Vec& v) const;
  std::size_t dim() const { return basis.size(); }
};
// TooLarge past limits().max_enumeration.
KBasis k_basis(const ModulePresentation& m);

struct LogSquareZero {
  SquareZeroRing ring;
  ChartPreLogRing base;         // (S, Q)
  MonoidPresentation P;
  MonoidHom pi_flat;            // P -> Q
  std::vector<SqzElement> alpha;  // chart of R on the generators of P

  // Chart lifts the chart of S and respects the relations of P.
  void validate() const;
};

LogSquareZero trivial_extension(const ChartPreLogRing& x, const ModulePresentation& j);
// Chart of S lifted to R by alpha(q_j) = (x^phi(q_j), 0) + (0, delta_j).
LogSquareZero lift_chart(const SquareZeroRing& ring, const ChartPreLogRing& base,
                         std::vector<Vec> delta = {});

struct StrictExactReport {
  bool ok = false;
  std::string certificate;
  std::string witness;
};
StrictExactReport verify_strict_exact(const LogSquareZero& e);

struct ExpSquares {
  AbelianSquare left;   // J -> R^x over 1 -> S^x
  AbelianSquare right;  // R^x -> P^gp over S^x -> Q^gp
  bool left_cartesian = false, left_cocartesian = false;
  bool right_cartesian = false, right_cocartesian = false;
  std::size_t j_dim = 0;
  bool all() const {
    return left_cartesian && left_cocartesian && right_cartesian && right_cocartesian;
  }
};
ExpSquares exp_square(const LogSquareZero& e);

enum class ClassifyRoute { Presentation, RingArithmetic };

// A 1-cochain on the log cotangent complex of (k, 0) -> (S, Q) with values
// in J, i.e. a derivation into J[1].
struct ExtensionClass {
  PreLogMorphism structure;
  ModulePresentation J;
  std::vector<Vec> eps;    // on the defining generators of S
  std::vector<Vec> delta;  // on the chart generators of Q
  std::vector<Vec> cochain;  // on C1 of rognes_pushout(structure)
};

ExtensionClass classify(const LogSquareZero& e, ClassifyRoute route = ClassifyRoute::Presentation);
bool is_cocycle(const ExtensionClass& c);
// The difference is a coboundary after evaluating at the point.
bool same_class_at(const ExtensionClass& a, const ExtensionClass& b, const std::vector<Scalar>& pt);
// Adds the coboundary of eta : C0 -> J.
ExtensionClass add_coboundary(const ExtensionClass& c, const std::vector<Vec>& eta);
LogSquareZero reconstruct(const ExtensionClass& c);

struct EquivalenceCertificate {
  bool ring = false;    // identity on S (+) J is a ring isomorphism
  bool monoid = false;  // identity on the chart, compatible with alpha
  bool carrier = true;  // carrier of a -> ring of b certified, when a has one
  bool ok() const { return ring && monoid && carrier; }
};
EquivalenceCertificate certify_equivalent(const LogSquareZero& a, const LogSquareZero& b);

enum class LiftMode { Etale, Smooth };
enum class LiftVerdict { UniqueLift, LiftExistsNotUnique, NoLift };
const char* to_string(LiftVerdict v);

struct LiftResult {
  LiftVerdict verdict = LiftVerdict::NoLift;
  std::size_t solution_dim = 0;  // dimension of the space of lifts
  std::vector<Scalar> obstruction;
  bool passes(LiftMode mode) const {
    return mode == LiftMode::Etale ? verdict == LiftVerdict::UniqueLift
                                   : verdict != LiftVerdict::NoLift;
  }
};

// The square (A,M) -> (R,P), (B,N) -g-> (S,Q) with the base map lifting g f
// through the chart of R. Needs a polynomial base with a free chart monoid.
LiftResult lifting_test(const PreLogMorphism& f, const PreLogMorphism& g, const LogSquareZero& e);

}  // namespace logalg
