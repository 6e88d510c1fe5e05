#pragma once

// Discrete pre-log rings in chart form. The ring is k[Q]/I for a finitely
// presented monoid Q and an ideal I, the pre-log structure is a monoid
// map phi: P -> Q, and alpha(p) is the class of the monomial x^phi(p).

#include <memory>
#include <string>
#include <vector>

#include "logalg/monoid.hpp"
#include "logalg/poly.hpp"

namespace logalg {

class Algebra {
 public:
  Algebra();
  Algebra(Field k, MonoidPresentation q, std::vector<Vec> ideal = {});

  // k itself: the monoid algebra of the trivial monoid.
  static Algebra ground(Field k);

  const Field& field() const { return k_; }
  const MonoidPresentation& monoid() const { return q_; }
  const std::vector<Vec>& ideal() const { return ideal_; }
  // Polynomial ring on the generators of Q.
  const PolyRing& ring() const { return ring_; }
  std::size_t nvars() const { return q_.ngens(); }

  // Binomials of Q followed by the extra ideal.
  std::vector<Vec> defining_ideal() const;
  const GroebnerBasis& gb() const;
  Vec reduce(const Vec& p) const;
  bool equal(const Vec& a, const Vec& b) const;
  bool is_zero_ring() const;
  // u generates the unit ideal.
  bool is_unit(const Vec& u) const;
  Vec monomial(const Exponent& q) const { return ring_.monomial(q); }
  // Generators x_j that are units in the ring.
  std::vector<std::size_t> unit_generators() const;

  // Same algebra over another field (coefficients reduced).
  Algebra over(const Field& k) const;

  bool is_point(const std::vector<Scalar>& pt) const;
  // Points with every coordinate 0 or 1; the unit point comes first when valid.
  std::vector<std::vector<Scalar>> points() const;

  std::string to_string() const;

 private:
  struct Cache;
  Field k_;
  MonoidPresentation q_;
  std::vector<Vec> ideal_;
  PolyRing ring_;
  std::shared_ptr<Cache> cache_;
};

// Monomial ring map k[Q]/I -> k[Q']/I' given by a monoid map Q -> Q'.
Vec map_element(const MonoidHom& ring_part, const Algebra& source, const Algebra& target,
                const Vec& p);
// The monoid map respects Q's relations and sends I into I'.
bool is_ring_map(const MonoidHom& ring_part, const Algebra& source, const Algebra& target);

struct ChartPreLogRing {
  Algebra ring;
  MonoidPresentation P;
  MonoidHom phi;           // P -> ring.monoid()
  bool unit_tag = false;   // P carries the formal k^x factor (a log chart)

  Vec alpha(const Exponent& p) const { return ring.monomial(phi.apply(p)); }
  void validate() const;
  std::string to_string() const;
};

// (A, {0})
ChartPreLogRing trivial_chart(const Algebra& a);
// (k[P], P, id)
ChartPreLogRing free_chart(const Field& k, const MonoidPresentation& p);

struct PreLogMorphism {
  ChartPreLogRing source, target;
  MonoidHom ring_part;    // Q -> Q'
  MonoidHom monoid_part;  // P -> P'

  Vec map(const Vec& p) const {
    return map_element(ring_part, source.ring, target.ring, p);
  }
  // Ring map well defined and phi' o monoid_part = ring_part o phi.
  void validate() const;
};

PreLogMorphism identity_morphism(const ChartPreLogRing& x);
PreLogMorphism compose(const PreLogMorphism& g, const PreLogMorphism& f);  // g after f
// Both charts and both components over another field.
ChartPreLogRing over(const ChartPreLogRing& x, const Field& k);
PreLogMorphism over(const PreLogMorphism& f, const Field& k);

struct UnitPreimage {
  std::vector<std::size_t> generators;  // generators of P mapped to units
  MonoidHom inclusion;                  // F -> P
};
UnitPreimage alpha_preimage_units(const ChartPreLogRing& x);

struct Logification {
  ChartPreLogRing log_chart;          // P' = P + U amalgamated over F, tagged
  MonoidPresentation characteristic;  // sharp quotient of P'
  MonoidHom to_characteristic;        // P' -> characteristic
  bool already_log = false;
};
Logification logify(const ChartPreLogRing& x);
// char(l) -> char(logify(l.log_chart)), induced by the first pushout leg.
MonoidHom relogification_map(const Logification& l);

ChartPreLogRing trivial_locus(const ChartPreLogRing& x);

ChartPreLogRing inverse_image(const MonoidHom& ring_part, const Algebra& target,
                              const ChartPreLogRing& x);
ChartPreLogRing direct_image(const MonoidHom& ring_part, const Algebra& source,
                             const ChartPreLogRing& y);

// Induced map of characteristics char(f^* M) -> char(N).
MonoidHom characteristic_map(const PreLogMorphism& f);
bool is_strict(const PreLogMorphism& f);

// Pushout of pre-log rings: S = B (x)_A R with monoid N + P over M.
struct PreLogPushout {
  ChartPreLogRing object;
  PreLogMorphism from_first, from_second;  // B -> S, R -> S
};
PreLogPushout pushout(const PreLogMorphism& f, const PreLogMorphism& g);

}  // namespace logalg
