#pragma once

#include <string>
#include <vector>

#include "qp/rational.hpp"

namespace qp {

/// Picard lattice of a surface with a chosen basis: intersection form,
/// canonical class, and enough of a tag to apply per-surface ampleness rules.
struct SurfaceLattice {
  enum class Kind { P2, Hirzebruch, P2xP2, Blowup, Custom };

  Kind kind{Kind::Custom};
  int n{0};  // Hirzebruch parameter
  std::string name;
  std::vector<std::string> basis;
  std::vector<std::vector<Rat>> gram;
  std::vector<Rat> canonical;
  bool a1_datum{false};  // records a quotient A_1 point resolved by this model

  int rank() const { return static_cast<int>(basis.size()); }
};

SurfaceLattice lattice_p2();
/// Basis (S0, F): the section of self-intersection -n and the fiber.
SurfaceLattice lattice_hirzebruch(int n);
/// F2 resolution of the weighted plane, with the A_1 point recorded.
SurfaceLattice lattice_p112();
/// Ambient bidegree classes (H1, H2); used for complete-intersection bookkeeping.
SurfaceLattice lattice_p2xp2();

struct DivisorClass {
  const SurfaceLattice* lat{nullptr};
  std::vector<Rat> c;
};

DivisorClass divisor(const SurfaceLattice& S, std::vector<Rat> coeffs);
/// S_inf = S0 + n F on a Hirzebruch lattice.
DivisorClass hirzebruch_s_inf(const SurfaceLattice& S);

Rat intersect(const DivisorClass& a, const DivisorClass& b);
DivisorClass canonical_class(const SurfaceLattice& S);

/// Arithmetic genus D.(K + D)/2 + 1.
Rat adjunction_genus(const DivisorClass& D);

struct DoubleCoverCanonical {
  DivisorClass half_class;  // K_S + L downstairs; the canonical pulls back from it
  Rat volume;               // 2 (K_S + L)^2
};
/// Double cover branched over a divisor in |2L|.
DoubleCoverCanonical double_cover_canonical(const SurfaceLattice& S, const DivisorClass& L);

bool is_ample(const DivisorClass& D);

/// Pullback along the degree-2 quotient F_n -> F_{2n} on (S0, F) coordinates.
DivisorClass quotient_pullback(const SurfaceLattice& f2n, const SurfaceLattice& fn,
                               const DivisorClass& D);

/// Blowup of k points; incidence[i][j] is the multiplicity of the curve
/// representing basis class j at point i.
struct Blowup {
  SurfaceLattice lattice;
  const SurfaceLattice* base{nullptr};
  std::vector<std::vector<int>> incidence;

  DivisorClass total_transform(const DivisorClass& D) const;
  DivisorClass proper_transform(const DivisorClass& D) const;
  DivisorClass exceptional(int i) const;
};
Blowup blowup(const SurfaceLattice& S, int k, std::vector<std::vector<int>> incidence);

/// Pushforward past contracting pairwise-disjoint (-1)-classes:
/// push(D) = D + sum (D.C_i) C_i, represented inside the ambient lattice
/// (the image of push is the orthogonal complement of the contracted span).
struct ContractionResult {
  DivisorClass pushed;
  std::vector<Rat> multiplicities;  // of the image at the i-th contracted point
};
ContractionResult contract_and_push(const std::vector<DivisorClass>& contracted,
                                    const DivisorClass& D);

/// Canonical class (-3,-3) + sum of multidegrees of a complete intersection in
/// the product of two planes; (0,0) is the K3-type case.
DivisorClass ci_canonical(const SurfaceLattice& p2xp2,
                          const std::vector<std::pair<int, int>>& multidegrees);

enum class SingularityFlag { PossiblyCanonical, NotCanonical };
/// Sufficient criterion for a double cover of a smooth surface: a branch point
/// of multiplicity >= 4 forces a non-canonical singularity upstairs.
SingularityFlag canonical_singularity_flag(int branch_multiplicity);

/// Full computation for the n-th member of the Hirzebruch family: quotient
/// pullback of the branch class, cover volume, branch genus and ampleness,
/// then blowup / double contraction down to the plane.
struct FnFamilyReport {
  int n{0};
  Rat cover_volume;        // 2 (K + 4 S_inf)^2
  Rat branch_genus;        // genus of the branch curve 8 S_inf
  bool halfclass_ample{false};
  Rat plane_degree;        // degree of the plane image of the branch curve
  Rat plane_multiplicity;  // its multiplicity at the image of S0
  SingularityFlag flag{SingularityFlag::PossiblyCanonical};
};
FnFamilyReport fn_family_report(int n);

}  // namespace qp
