#pragma once

#include <array>
#include <optional>

#include "chowdiag/chernclass.hpp"
#include "chowdiag/quiverrep.hpp"

namespace chowdiag {

// Names the projective module attached to a resolution entry: a path-algebra
// idempotent summand Se_v, a graded twist S(-n), or an idempotent summand
// of the three-variable algebra with commuting relations.
struct ProjectiveTag {
    enum class Kind { PathIdempotent, GradedTwist, RelationAlgebraIdempotent };
    Kind kind;
    long long value;  // vertex index, or the twist magnitude n of S(-n)

    static ProjectiveTag path_idempotent(std::size_t vertex) {
        return {Kind::PathIdempotent, static_cast<long long>(vertex)};
    }
    static ProjectiveTag graded_twist(long long n) { return {Kind::GradedTwist, n}; }
    static ProjectiveTag relation_idempotent(long long vertex) {
        return {Kind::RelationAlgebraIdempotent, vertex};
    }
};

bool operator==(const ProjectiveTag& a, const ProjectiveTag& b);

// Dimension of Hom(P(from), P(to)) between tagged projectives.  Each
// provider knows one tag kind; mixing kinds is a ProviderMismatch.
class HomDimProvider {
  public:
    static HomDimProvider acyclic_path_count(Quiver q);
    static HomDimProvider graded_binary();
    static HomDimProvider symmetric_triple_quiver();
    static HomDimProvider explicit_table(ProjectiveTag::Kind kind,
                                         std::vector<std::vector<long long>> dims);

    long long dim_hom(const ProjectiveTag& from, const ProjectiveTag& to) const;

  private:
    enum class Mode { PathCount, Graded, Triple, Table };
    HomDimProvider(Mode mode, ProjectiveTag::Kind kind) : mode_(mode), kind_(kind) {}

    Mode mode_;
    ProjectiveTag::Kind kind_;
    std::optional<Quiver> quiver_;
    std::vector<std::vector<long long>> table_;
};

// One projective summand P tensor E of a term of a universal resolution.
struct ResolutionEntry {
    ProjectiveTag tag;
    BundleClass bundle;
};

// Terms of a finite universal resolution, rows indexed by homological
// degree 0..r.  Every bundle is genuine (rank >= 0) over one shared ring.
struct UniversalResolution {
    std::vector<std::vector<ResolutionEntry>> rows;
};

// the shared base ring of a nonempty resolution
RingPtr resolution_ring(const UniversalResolution& res);

// Two-row resolution attached to an acyclic quiver: row 0 holds
// (Se_i, U_i) per vertex, row 1 holds (Se_{ha}, U_{ta}) per arrow.
// u is indexed like q.vertices().
UniversalResolution quiver_resolution(const Quiver& q,
                                      const std::vector<BundleClass>& u);

// Three-row resolution attached to a two-variable Hilbert function t:
// for each n with t_n > 0, row 0 gains (S(-n), A_n), row 1 gains
// (S(-n-1), A_n) twice, row 2 gains (S(-n-2), A_n).  a is indexed like t
// and rank a_n must equal t_n.
UniversalResolution gt_resolution(const std::vector<long long>& t,
                                  const std::vector<BundleClass>& a);

// Sheaf-moduli data on the projective plane: rank r, first Chern class c1,
// Euler characteristic chi, and the weight parameter m.
class P2Config {
  public:
    P2Config(long long r, long long c1, long long chi, long long m);

    long long r() const { return r_; }
    long long c1() const { return c1_; }
    long long chi() const { return chi_; }
    long long m() const { return m_; }
    long long n() const { return -chi_ + r_ + c1_; }
    // dimension vector and weight in vertex order "2", "1", "0"
    std::array<long long, 3> alpha() const;
    std::array<long long, 3> theta() const;

  private:
    long long r_, c1_, chi_, m_;
};

// the triple-arrow quiver with vertices "2", "1", "0" and arrows
// x1,y1,z1: 2 -> 1 and x2,y2,z2: 1 -> 0
Quiver p2_quiver();

// expected dimension of the sheaf-moduli space for cfg (the relations
// contribute three tail-2/head-0 terms to the Euler form)
long long p2_moduli_dimension(const P2Config& cfg);

// Three-row resolution for the plane configuration: row 0 holds
// (S e-bar_i, U_i), row 1 one entry per arrow, row 2 three copies of
// (S e-bar_0, U_2).  u is indexed in vertex order "2", "1", "0" and
// rank u_i must equal alpha_i.
UniversalResolution p2_resolution(const P2Config& cfg,
                                  const std::vector<BundleClass>& u);

struct LComplexEntry {
    int p;
    BundleClass cls;
};

// The K-theory classes of the two-sided complex: for each p, the sum over
// entry pairs in rows i and i' = i + p of Hom(P, P') copies of
// hom_bundle(p1* E, p2* E').  The square must have both factors equal to
// the resolution's base ring.
std::vector<LComplexEntry> build_L_complex(const UniversalResolution& res,
                                           const HomDimProvider& provider,
                                           const ProductRing& square);

// alternating rank sum of the complex, with sign (-1)^{p+1}
long long virtual_rank(const UniversalResolution& res,
                       const HomDimProvider& provider);

// top Chern class (in degree dim M = top degree of the base ring) of the
// alternating sum of the L classes
RingElement diagonal_class(const UniversalResolution& res,
                           const HomDimProvider& provider,
                           const ProductRing& square);

// tensor every bundle of the resolution by the line class with first
// Chern class c1 (the normalization ambiguity of a universal family)
UniversalResolution twist_resolution(const UniversalResolution& res,
                                     const RingElement& c1);

// Ready-made diagonal pipelines for the test spaces.
struct DiagonalRun {
    RingPtr base;
    ProductRing square;
    UniversalResolution resolution;
    HomDimProvider provider;
};

// projective n-space via the (n+1)-arrow Kronecker quiver, U = (O, O(1))
DiagonalRun diagonal_setup_pn(int n);
// Gr(2,4) via the 4-arrow Kronecker quiver, U = (O, tautological quotient)
DiagonalRun diagonal_setup_grassmannian();
// structural pipeline over a point base ring (rank bookkeeping only)
DiagonalRun diagonal_setup_gt(const std::vector<long long>& t);
DiagonalRun diagonal_setup_p2(const P2Config& cfg);

}  // namespace chowdiag
